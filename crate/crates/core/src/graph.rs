use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// Undirected simple graph on vertices `0..n`; edges stored as `(i, j)` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComparisonGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl ComparisonGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Self { n, edges }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n);
        for (i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<bool> {
        if i == j {
            return Err(Error::InvalidInput(format!("self-loop on vertex {i}")));
        }
        if i >= self.n || j >= self.n {
            return Err(Error::InvalidInput(format!(
                "edge ({i}, {j}) out of range for {} vertices",
                self.n
            )));
        }
        Ok(self.edges.insert((i.min(j), i.max(j))))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// Sorted neighbour lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(i, j) in &self.edges {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        self.bfs_tree(0).order.len() == self.n
    }

    /// Breadth-first tree from `root`, visiting neighbours lowest index first.
    pub fn bfs_tree(&self, root: usize) -> BfsTree {
        let adj = self.adjacency();
        let mut parent = vec![None; self.n];
        let mut depth = vec![0usize; self.n];
        let mut seen = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some(v);
                    depth[u] = depth[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        BfsTree {
            parent,
            depth,
            order,
        }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let edges = self
            .edges
            .iter()
            .map(|&(i, j)| {
                let (a, b) = (perm[i], perm[j]);
                (a.min(b), a.max(b))
            })
            .collect();
        Self { n: self.n, edges }
    }
}

/// Spanning tree of the component containing the BFS root.
#[derive(Debug, Clone)]
pub struct BfsTree {
    pub parent: Vec<Option<usize>>,
    pub depth: Vec<usize>,
    /// Vertices in visiting order; shorter than `n` when the graph is disconnected.
    pub order: Vec<usize>,
}

impl BfsTree {
    pub fn is_tree_edge(&self, i: usize, j: usize) -> bool {
        self.parent[i] == Some(j) || self.parent[j] == Some(i)
    }

    /// Tree path from `a` to `b`, both endpoints included.
    pub fn path(&self, a: usize, b: usize) -> Vec<usize> {
        let (mut x, mut y) = (a, b);
        let mut left = vec![x];
        let mut right = vec![y];
        while x != y {
            if self.depth[x] >= self.depth[y] {
                x = self.parent[x].expect("vertex outside the tree");
                left.push(x);
            } else {
                y = self.parent[y].expect("vertex outside the tree");
                right.push(y);
            }
        }
        right.pop();
        left.extend(right.into_iter().rev());
        left
    }
}
