use serde::{Deserialize, Serialize};

use crate::data::DataMatrix;
use crate::error::{Error, Result};
use crate::graph::ComparisonGraph;
use crate::vectors::WeightVector;

/// Positive reciprocal (possibly incomplete) pairwise comparison matrix.
///
/// Both `a_ij` and `a_ji = 1 / a_ij` are stored, so reciprocity holds by
/// construction. The diagonal is fixed at one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ipcm {
    n: usize,
    cells: Vec<Option<f64>>,
}

impl Ipcm {
    /// Matrix with only the diagonal known.
    pub fn new(n: usize) -> Self {
        let mut cells = vec![None; n * n];
        for i in 0..n {
            cells[i * n + i] = Some(1.0);
        }
        Self { n, cells }
    }

    /// Consistent complete matrix `a_ij = w_i / w_j`.
    pub fn from_weights(w: &WeightVector) -> Self {
        let n = w.len();
        let mut a = Self::new(n);
        for i in 0..n {
            for j in i + 1..n {
                a.set(i, j, w[i] / w[j]).expect("positive weights");
            }
        }
        a
    }

    /// Sets `a_ij = value` and `a_ji = 1 / value`.
    pub fn set(&mut self, i: usize, j: usize, value: f64) -> Result<()> {
        if i == j || i >= self.n || j >= self.n {
            return Err(Error::InvalidInput(format!(
                "cell ({i}, {j}) invalid for a {0}x{0} matrix",
                self.n
            )));
        }
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::InvalidInput(format!(
                "matrix entries must be positive and finite, got {value}"
            )));
        }
        self.cells[i * self.n + j] = Some(value);
        self.cells[j * self.n + i] = Some(1.0 / value);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        self.cells[i * self.n + j]
    }

    /// Known off-diagonal pairs `(i, j, a_ij)` with `i < j`, lexicographic.
    pub fn known_pairs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| {
            (i + 1..self.n).filter_map(move |j| self.get(i, j).map(|a| (i, j, a)))
        })
    }

    pub fn is_complete(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }

    /// Undirected graph with an edge per known comparison.
    pub fn representing_graph(&self) -> ComparisonGraph {
        ComparisonGraph::from_edges(self.n, self.known_pairs().map(|(i, j, _)| (i, j)))
            .expect("indices within range")
    }

    /// Relabels item `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut out = Self::new(self.n);
        for (i, j, a) in self.known_pairs() {
            out.set(perm[i], perm[j], a).expect("valid entry");
        }
        out
    }

    /// Dense rows with `None` for missing entries.
    pub fn rows(&self) -> Vec<Vec<Option<f64>>> {
        self.cells
            .chunks(self.n.max(1))
            .map(<[_]>::to_vec)
            .collect()
    }
}

/// Matrix of ratios `better / worse`; pairs with a zero side are left out.
pub fn pcm_from_data(d: &DataMatrix) -> Ipcm {
    let mut a = Ipcm::new(d.n());
    for ((i, j), o) in d.pairs() {
        if o.both_positive() {
            a.set(i, j, o.ratio()).expect("ratio of positive amounts");
        }
    }
    a
}
