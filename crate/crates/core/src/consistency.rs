//! Binary consistency tests and the existence condition of the MLE.

use serde::{Deserialize, Serialize};

use crate::data::DataMatrix;
use crate::error::{Error, Result};
use crate::graph::ComparisonGraph;
use crate::pcm::{pcm_from_data, Ipcm};

/// Default tolerance on `|ln(cycle product)|`.
pub const DEFAULT_CONSISTENCY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub consistent: bool,
    /// Largest `|ln(product of ratios)|` over the fundamental cycles.
    pub max_cycle_deviation: f64,
    /// Cycle attaining the maximum deviation, as a closed vertex sequence
    /// (first vertex repeated at the end). `None` when consistent.
    pub witness: Option<Vec<usize>>,
}

/// Checks that every cycle product of `a_ij` equals one.
///
/// Only the fundamental cycles of the BFS tree rooted at item 0 are
/// examined; every other cycle product is a product of these.
pub fn pcm_consistency(a: &Ipcm, tol: f64) -> Result<ConsistencyReport> {
    let graph = a.representing_graph();
    let log_ratio = |i: usize, j: usize| a.get(i, j).expect("edge of the graph").ln();
    cycle_check(&graph, log_ratio, tol)
}

/// Consistency of `D` on its comparison set `I` through `h_ij = better / worse`.
pub fn data_consistency(d: &DataMatrix, tol: f64) -> Result<ConsistencyReport> {
    pcm_consistency(&pcm_from_data(d), tol)
}

fn cycle_check<F>(graph: &ComparisonGraph, log_ratio: F, tol: f64) -> Result<ConsistencyReport>
where
    F: Fn(usize, usize) -> f64,
{
    let n = graph.n();
    if n == 0 || !graph.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let tree = graph.bfs_tree(0);
    // potential[v] = ln w_v - ln w_0 along the tree, from a_ij = w_i / w_j
    let mut potential = vec![0.0; n];
    for &v in &tree.order[1..] {
        let p = tree.parent[v].expect("non-root vertex");
        potential[v] = potential[p] - log_ratio(p, v);
    }
    let mut worst = 0.0;
    let mut witness = None;
    for (i, j) in graph.edges() {
        if tree.is_tree_edge(i, j) {
            continue;
        }
        // ln a_ij + ln(product of tree ratios j -> i)
        let deviation = (log_ratio(i, j) - (potential[i] - potential[j])).abs();
        if deviation > worst {
            worst = deviation;
            let mut cycle = tree.path(j, i);
            cycle.push(j);
            witness = Some(cycle);
        }
    }
    let consistent = worst <= tol;
    Ok(ConsistencyReport {
        consistent,
        max_cycle_deviation: worst,
        witness: if consistent { None } else { witness },
    })
}

/// Strong connectivity of the directed graph with `i -> j` when `i` was
/// better than `j` at least once (and `j -> i` when worse).
pub fn ford_condition(d: &DataMatrix) -> bool {
    let n = d.n();
    if n <= 1 {
        return true;
    }
    let mut forward = vec![Vec::new(); n];
    let mut backward = vec![Vec::new(); n];
    for ((i, j), o) in d.pairs() {
        if o.better > 0.0 {
            forward[i].push(j);
            backward[j].push(i);
        }
        if o.worse > 0.0 {
            forward[j].push(i);
            backward[i].push(j);
        }
    }
    reaches_all(&forward) && reaches_all(&backward)
}

fn reaches_all(adj: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count == adj.len()
}
