use serde::{Deserialize, Serialize};

use super::canonical::{canonical_code, encode, pair_count, CanonicalCode, PermutationTable};
use crate::error::{Error, Result};
use crate::graph::ComparisonGraph;

/// Largest vertex count accepted by [`enumerate_connected`].
pub const MAX_ENUMERATION_VERTICES: usize = 6;

/// Isomorphism class of connected comparison graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphClass {
    /// 1-based ordinal in the catalog sorted by `(edge_count, code)`.
    pub id: usize,
    pub n: usize,
    pub edge_count: usize,
    pub code: CanonicalCode,
}

impl GraphClass {
    /// Class of an arbitrary connected graph; `id` is 0 outside a catalog.
    pub fn of(g: &ComparisonGraph) -> Result<Self> {
        if !g.is_connected() {
            return Err(Error::DisconnectedGraph);
        }
        let code = canonical_code(g)?;
        Ok(Self {
            id: 0,
            n: g.n(),
            edge_count: g.edge_count(),
            code,
        })
    }

    pub fn label(&self) -> String {
        format!("g{}", self.id)
    }

    /// The canonical member graph.
    pub fn graph(&self) -> ComparisonGraph {
        self.code.graph()
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count == pair_count(self.n)
    }
}

/// All connected graphs on `n` vertices up to isomorphism, sorted by edge
/// count and canonical code, with ids `1, 2, ...` in that order.
pub fn enumerate_connected(n: usize) -> Result<Vec<GraphClass>> {
    if !(2..=MAX_ENUMERATION_VERTICES).contains(&n) {
        return Err(Error::InvalidInput(format!(
            "enumeration supports 2..={MAX_ENUMERATION_VERTICES} vertices, got {n}"
        )));
    }
    let pairs = pair_count(n);
    let table = PermutationTable::new(n);
    let mut seen = vec![false; 1 << pairs];
    let mut codes = Vec::new();
    for mask in 0u64..(1 << pairs) {
        if seen[mask as usize] {
            continue;
        }
        // mark the whole orbit; its minimum is the canonical code
        let mut min = mask;
        for image in table.images(mask) {
            seen[image as usize] = true;
            min = min.min(image);
        }
        let code = CanonicalCode::from_bits(n, min);
        if code.graph().is_connected() {
            codes.push(code);
        }
    }
    codes.sort_by_key(|c| (c.edge_count(), *c));
    Ok(codes
        .into_iter()
        .enumerate()
        .map(|(k, code)| GraphClass {
            id: k + 1,
            n,
            edge_count: code.edge_count(),
            code,
        })
        .collect())
}

/// Whether adding one edge to a member of `a` yields a member of `b`.
pub fn single_edge_extensions(a: &GraphClass, b: &GraphClass) -> bool {
    if a.n != b.n || b.edge_count != a.edge_count + 1 {
        return false;
    }
    let g = a.graph();
    let table = PermutationTable::new(a.n);
    let base = encode(&g);
    (0..pair_count(a.n)).any(|bit| {
        base >> bit & 1 == 0 && table.images(base | 1 << bit).min() == Some(b.code.bits())
    })
}
