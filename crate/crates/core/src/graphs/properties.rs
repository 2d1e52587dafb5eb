use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::ComparisonGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphProperties {
    /// Vertex degrees, largest first.
    pub degree_sequence: Vec<usize>,
    pub is_regular: bool,
    pub is_bipartite: bool,
    pub is_star: bool,
    pub is_spanning_tree: bool,
    pub diameter: usize,
}

/// Structural properties of a connected graph.
pub fn properties(g: &ComparisonGraph) -> Result<GraphProperties> {
    let n = g.n();
    if n == 0 || !g.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let mut degree_sequence = g.degrees();
    degree_sequence.sort_unstable_by(|a, b| b.cmp(a));
    let is_regular = degree_sequence.windows(2).all(|w| w[0] == w[1]);
    let is_spanning_tree = g.edge_count() + 1 == n;
    let is_star = is_spanning_tree && n >= 2 && degree_sequence[0] == n - 1;

    let adj = g.adjacency();
    let mut diameter = 0;
    let mut colour = vec![None; n];
    let mut is_bipartite = true;
    for source in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        diameter = diameter.max(dist.iter().copied().max().unwrap_or(0));
        if source == 0 {
            for v in 0..n {
                colour[v] = Some(dist[v] % 2);
            }
        }
    }
    for (i, j) in g.edges() {
        if colour[i] == colour[j] {
            is_bipartite = false;
        }
    }
    Ok(GraphProperties {
        degree_sequence,
        is_regular,
        is_bipartite,
        is_star,
        is_spanning_tree,
        diameter,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_on_six() {
        let g = ComparisonGraph::from_edges(6, (1..6).map(|v| (0, v))).unwrap();
        let p = properties(&g).unwrap();
        assert_eq!(p.degree_sequence, vec![5, 1, 1, 1, 1, 1]);
        assert_eq!(p.diameter, 2);
        assert!(p.is_spanning_tree && p.is_star && p.is_bipartite && !p.is_regular);
    }

    #[test]
    fn k4() {
        let p = properties(&ComparisonGraph::complete(4)).unwrap();
        assert!(p.is_regular && !p.is_bipartite && !p.is_star);
        assert_eq!(p.degree_sequence, vec![3; 4]);
        assert_eq!(p.diameter, 1);
    }

    #[test]
    fn six_cycle() {
        let g = ComparisonGraph::from_edges(6, (0..6).map(|v| (v, (v + 1) % 6))).unwrap();
        let p = properties(&g).unwrap();
        assert!(p.is_regular && p.is_bipartite && !p.is_spanning_tree);
        assert_eq!(p.degree_sequence, vec![2; 6]);
        assert_eq!(p.diameter, 3);
    }

    #[test]
    fn odd_cycle_not_bipartite() {
        let g = ComparisonGraph::from_edges(5, (0..5).map(|v| (v, (v + 1) % 5))).unwrap();
        assert!(!properties(&g).unwrap().is_bipartite);
    }

    #[test]
    fn disconnected() {
        let g = ComparisonGraph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(properties(&g), Err(Error::DisconnectedGraph));
    }
}
