use std::io::{Read, Write};

use super::{fmt_f64, record_line, FormatError};
use crate::pcm::Ipcm;

/// Relative tolerance on `a_ij * a_ji = 1` when loading a matrix.
pub const DEFAULT_RECIPROCITY_TOL: f64 = 1e-9;

/// Reads a square grid of ratios with `*` for missing entries.
pub fn parse_pcm<R: Read>(reader: R) -> Result<Ipcm, FormatError> {
    parse_pcm_with_tol(reader, DEFAULT_RECIPROCITY_TOL)
}

/// Like [`parse_pcm`] with an explicit reciprocity tolerance. Cells may be
/// decimals or fractions such as `1/0.779`; the upper-triangle value is kept
/// and its exact reciprocal stored below the diagonal.
pub fn parse_pcm_with_tol<R: Read>(reader: R, tol: f64) -> Result<Ipcm, FormatError> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(reader);
    let mut grid: Vec<Vec<Option<f64>>> = Vec::new();
    let mut width = None;
    for record in csv.records() {
        let record = record?;
        let line = record_line(&record);
        let n = *width.get_or_insert(record.len());
        if record.len() != n {
            return Err(FormatError::NotSquare {
                line,
                expected: n,
                found: record.len(),
            });
        }
        let row = record
            .iter()
            .map(|cell| {
                parse_cell(cell).ok_or_else(|| FormatError::BadNumber {
                    line,
                    value: cell.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        grid.push(row);
    }
    let n = grid.len();
    if width.is_some_and(|w| w != n) {
        return Err(FormatError::NotSquare {
            line: n as u64,
            expected: width.unwrap_or(0),
            found: n,
        });
    }

    let mut a = Ipcm::new(n);
    // both triangles are read at once, so index rather than iterate
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        if grid[i][i] != Some(1.0) {
            return Err(FormatError::BadDiagonal { i: i + 1 });
        }
        for j in i + 1..n {
            match (grid[i][j], grid[j][i]) {
                (None, None) => {}
                (Some(upper), Some(lower)) => {
                    for (r, c, v) in [(i, j, upper), (j, i, lower)] {
                        if v <= 0.0 {
                            return Err(FormatError::NonPositiveEntry { i: r + 1, j: c + 1 });
                        }
                    }
                    if (upper * lower - 1.0).abs() > tol {
                        return Err(FormatError::NotReciprocal { i: i + 1, j: j + 1 });
                    }
                    a.set(i, j, upper)?;
                }
                _ => return Err(FormatError::NotReciprocal { i: i + 1, j: j + 1 }),
            }
        }
    }
    Ok(a)
}

fn parse_cell(cell: &str) -> Option<Option<f64>> {
    if cell == "*" {
        return Some(None);
    }
    let value = match cell.split_once('/') {
        Some((num, den)) => num.trim().parse::<f64>().ok()? / den.trim().parse::<f64>().ok()?,
        None => cell.parse::<f64>().ok()?,
    };
    value.is_finite().then_some(Some(value))
}

pub fn write_pcm<W: Write>(mut writer: W, a: &Ipcm) -> std::io::Result<()> {
    for row in a.rows() {
        let cells: Vec<String> = row
            .into_iter()
            .map(|c| c.map_or_else(|| "*".to_string(), fmt_f64))
            .collect();
        writeln!(writer, "{}", cells.join(","))?;
    }
    Ok(())
}
