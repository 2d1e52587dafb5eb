//! File formats and report builders behind the command-line tool.
//!
//! All files are UTF-8 CSV with dot decimals. Item indices are 1-based in
//! files and 0-based in memory.

mod graphs_json;
mod pairs;
mod pcm;
mod rank;
mod report;
mod results;

pub use graphs_json::{graph_records, GraphRecord};
pub use pairs::{parse_pairs, write_pairs};
pub use pcm::{parse_pcm, parse_pcm_with_tol, write_pcm, DEFAULT_RECIPROCITY_TOL};
pub use rank::{rank_report, Method, RankInput, RankReport};
pub use report::{report, Figure, ReportTable};
pub use results::{read_results, write_results, ResultRow};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: expected header `{expected}`, found `{found}`")]
    BadHeader {
        line: u64,
        expected: &'static str,
        found: String,
    },
    #[error("line {line}: duplicate pair ({i}, {j})")]
    DuplicatePair { i: usize, j: usize, line: u64 },
    #[error("line {line}: negative comparison amount")]
    NegativeCount { line: u64 },
    #[error("line {line}: cannot parse `{value}` as a number")]
    BadNumber { line: u64, value: String },
    #[error("line {line}: {detail}")]
    BadIndex { line: u64, detail: String },
    #[error("line {line}: expected {expected} cells, found {found}")]
    NotSquare {
        line: u64,
        expected: usize,
        found: usize,
    },
    #[error("entries ({i}, {j}) and ({j}, {i}) are not reciprocal")]
    NotReciprocal { i: usize, j: usize },
    #[error("diagonal entry ({i}, {i}) must be 1")]
    BadDiagonal { i: usize },
    #[error("entry ({i}, {j}) must be positive")]
    NonPositiveEntry { i: usize, j: usize },
    #[error("line {line}: {detail}")]
    BadRecord { line: u64, detail: String },
    #[error("results do not contain {0}")]
    MissingSlice(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Model(#[from] crate::error::Error),
}

pub(crate) fn record_line(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

/// Shortest decimal that parses back to the same `f64`.
pub(crate) fn fmt_f64(x: f64) -> String {
    format!("{x}")
}
