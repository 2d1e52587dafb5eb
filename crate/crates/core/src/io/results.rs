use serde::{Deserialize, Serialize};
use std::io::{Read, Write};

use super::FormatError;
use crate::model::ModelKind;
use crate::simulation::{Measure, SimulationSummary};

/// One `(graph, measure)` cell of a simulation summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub n: usize,
    pub perturb: f64,
    pub model: ModelKind,
    pub graph_id: usize,
    pub edges: usize,
    /// Hex form of the canonical edge bitstring.
    pub canonical_code: String,
    pub measure: Measure,
    pub mean: f64,
    pub stddev: f64,
    pub num_sims: usize,
    /// Replications that did not contribute to this cell.
    pub excluded: usize,
}

impl ResultRow {
    pub fn rows(summary: &SimulationSummary) -> Vec<ResultRow> {
        let config = &summary.config;
        summary
            .graphs
            .iter()
            .flat_map(|g| {
                Measure::ALL.into_iter().map(move |measure| {
                    let stat = g.stat(measure);
                    ResultRow {
                        n: config.n,
                        perturb: config.perturb,
                        model: config.model,
                        graph_id: g.class.id,
                        edges: g.class.edge_count,
                        canonical_code: g.class.code.to_hex(),
                        measure,
                        mean: stat.mean,
                        stddev: stat.stddev,
                        num_sims: config.num_sims,
                        excluded: config.num_sims - stat.count,
                    }
                })
            })
            .collect()
    }
}

pub fn write_results<W: Write>(writer: W, summary: &SimulationSummary) -> Result<(), FormatError> {
    let mut csv = csv::Writer::from_writer(writer);
    for row in ResultRow::rows(summary) {
        csv.serialize(row)?;
    }
    csv.flush()?;
    Ok(())
}

pub fn read_results<R: Read>(reader: R) -> Result<Vec<ResultRow>, FormatError> {
    let mut csv = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    Ok(csv.deserialize().collect::<Result<Vec<ResultRow>, _>>()?)
}
