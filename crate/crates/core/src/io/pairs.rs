use std::collections::BTreeMap;
use std::io::{Read, Write};

use super::{fmt_f64, record_line, FormatError};
use crate::data::DataMatrix;

const HEADER: &str = "i,j,worse,better";

/// Reads a `i,j,worse,better` file. `n` defaults to the largest index seen.
pub fn parse_pairs<R: Read>(
    reader: R,
    n_override: Option<usize>,
) -> Result<DataMatrix, FormatError> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(reader);
    let mut records = csv.records();
    match records.next() {
        Some(header) => {
            let header = header?;
            let found: Vec<&str> = header.iter().collect();
            if found != HEADER.split(',').collect::<Vec<_>>() {
                return Err(FormatError::BadHeader {
                    line: record_line(&header),
                    expected: HEADER,
                    found: found.join(","),
                });
            }
        }
        None => {
            return Err(FormatError::BadHeader {
                line: 1,
                expected: HEADER,
                found: String::new(),
            })
        }
    }

    let mut rows = BTreeMap::new();
    let mut max_index = 0;
    for record in records {
        let record = record?;
        let line = record_line(&record);
        if record.len() != 4 {
            return Err(FormatError::BadRecord {
                line,
                detail: format!("expected 4 fields, found {}", record.len()),
            });
        }
        let index = |k: usize| -> Result<usize, FormatError> {
            record[k]
                .parse::<usize>()
                .ok()
                .filter(|&v| v >= 1)
                .ok_or_else(|| FormatError::BadIndex {
                    line,
                    detail: format!("`{}` is not a 1-based item index", &record[k]),
                })
        };
        let number = |k: usize| -> Result<f64, FormatError> {
            record[k]
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| FormatError::BadNumber {
                    line,
                    value: record[k].to_string(),
                })
        };
        let (i, j) = (index(0)?, index(1)?);
        if i >= j {
            return Err(FormatError::BadIndex {
                line,
                detail: format!("pair ({i}, {j}) must satisfy i < j"),
            });
        }
        let (worse, better) = (number(2)?, number(3)?);
        if worse < 0.0 || better < 0.0 {
            return Err(FormatError::NegativeCount { line });
        }
        if rows.insert((i, j), (worse, better)).is_some() {
            return Err(FormatError::DuplicatePair { i, j, line });
        }
        max_index = max_index.max(j);
    }

    let n = match n_override {
        Some(n) if n < max_index => {
            return Err(FormatError::BadIndex {
                line: 0,
                detail: format!("index {max_index} exceeds --n {n}"),
            })
        }
        Some(n) => n,
        None => max_index,
    };
    let mut d = DataMatrix::new(n);
    for ((i, j), (worse, better)) in rows {
        d.insert(i - 1, j - 1, worse, better)?;
    }
    Ok(d)
}

pub fn write_pairs<W: Write>(mut writer: W, d: &DataMatrix) -> std::io::Result<()> {
    writeln!(writer, "{HEADER}")?;
    for ((i, j), o) in d.pairs() {
        writeln!(
            writer,
            "{},{},{},{}",
            i + 1,
            j + 1,
            fmt_f64(o.worse),
            fmt_f64(o.better)
        )?;
    }
    Ok(())
}
