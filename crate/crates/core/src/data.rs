use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::ComparisonGraph;
use crate::model::ModelKind;
use crate::vectors::ExpectedValueVector;

/// Outcome amounts of one compared pair `(i, j)`, `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairOutcome {
    /// Amount of "i worse than j".
    pub worse: f64,
    /// Amount of "i better than j".
    pub better: f64,
}

impl PairOutcome {
    pub fn total(&self) -> f64 {
        self.worse + self.better
    }

    pub fn both_positive(&self) -> bool {
        self.worse > 0.0 && self.better > 0.0
    }

    /// `better / worse`, the preference ratio of `i` over `j`.
    pub fn ratio(&self) -> f64 {
        self.better / self.worse
    }
}

/// Paired-comparison data `D_{i,j,k}` stored for `i < j` only; the mirrored
/// entries `D_{j,i,1} = D_{i,j,2}` are implicit. Amounts are real-valued.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DataMatrix {
    n: usize,
    entries: BTreeMap<(usize, usize), PairOutcome>,
}

impl DataMatrix {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            entries: BTreeMap::new(),
        }
    }

    /// Records `worse`/`better` amounts for item `i` against item `j`.
    /// A pair given as `i > j` is stored mirrored.
    pub fn insert(&mut self, i: usize, j: usize, worse: f64, better: f64) -> Result<()> {
        if i == j || i >= self.n || j >= self.n {
            return Err(Error::InvalidInput(format!(
                "pair ({i}, {j}) invalid for {} items",
                self.n
            )));
        }
        for v in [worse, better] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidInput(format!(
                    "comparison amounts must be finite and non-negative, got {v}"
                )));
            }
        }
        let (key, outcome) = if i < j {
            ((i, j), PairOutcome { worse, better })
        } else {
            (
                (j, i),
                PairOutcome {
                    worse: better,
                    better: worse,
                },
            )
        };
        self.entries.insert(key, outcome);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Option<PairOutcome> {
        if i < j {
            self.entries.get(&(i, j)).copied()
        } else {
            self.entries.get(&(j, i)).map(|o| PairOutcome {
                worse: o.better,
                better: o.worse,
            })
        }
    }

    /// Stored pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), PairOutcome)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    pub fn pair_count(&self) -> usize {
        self.entries.len()
    }

    /// Graph of the comparison set `I`: pairs with both amounts positive.
    pub fn comparison_graph(&self) -> ComparisonGraph {
        let mut g = ComparisonGraph::empty(self.n);
        for (&(i, j), o) in &self.entries {
            if o.both_positive() {
                g.add_edge(i, j).expect("stored pairs are valid");
            }
        }
        g
    }

    /// Keeps only the pairs that are edges of `graph`.
    pub fn restricted(&self, graph: &ComparisonGraph) -> Self {
        let entries = self
            .entries
            .iter()
            .filter(|(&(i, j), _)| graph.has_edge(i, j))
            .map(|(k, v)| (*k, *v))
            .collect();
        Self { n: self.n, entries }
    }

    pub fn scaled(&self, c: f64) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|(k, o)| {
                (
                    *k,
                    PairOutcome {
                        worse: o.worse * c,
                        better: o.better * c,
                    },
                )
            })
            .collect();
        Self { n: self.n, entries }
    }

    /// Relabels item `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut out = Self::new(self.n);
        for (&(i, j), o) in &self.entries {
            out.insert(perm[i], perm[j], o.worse, o.better)
                .expect("permutation of valid data");
        }
        out
    }
}

/// Exact outcome probabilities on the edges of `graph`:
/// `worse = F(m_j - m_i)`, `better = F(m_i - m_j)`.
pub fn exact_probabilities(
    m: &ExpectedValueVector,
    graph: &ComparisonGraph,
    model: ModelKind,
) -> Result<DataMatrix> {
    if m.len() != graph.n() {
        return Err(Error::DimensionMismatch {
            expected: graph.n(),
            found: m.len(),
        });
    }
    let mut d = DataMatrix::new(graph.n());
    for (i, j) in graph.edges() {
        let diff = m[i] - m[j];
        d.entries.insert(
            (i, j),
            PairOutcome {
                worse: model.cdf(-diff),
                better: model.cdf(diff),
            },
        );
    }
    Ok(d)
}
