use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graphs::{properties, GraphClass, GraphProperties};

/// Catalog entry emitted by `graphs enumerate`; edges are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub id: usize,
    pub label: String,
    pub n: usize,
    pub edge_count: usize,
    pub canonical_code: String,
    pub bitstring: String,
    pub edges: Vec<(usize, usize)>,
    pub properties: GraphProperties,
}

pub fn graph_records(classes: &[GraphClass]) -> Result<Vec<GraphRecord>> {
    classes
        .iter()
        .map(|c| {
            let g = c.graph();
            Ok(GraphRecord {
                id: c.id,
                label: c.label(),
                n: c.n,
                edge_count: c.edge_count,
                canonical_code: c.code.to_hex(),
                bitstring: c.code.bitstring(),
                edges: g.edges().map(|(i, j)| (i + 1, j + 1)).collect(),
                properties: properties(&g)?,
            })
        })
        .collect()
}
