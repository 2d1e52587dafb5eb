//! Inputs shared by the benchmarks.

use paircomp::{
    exact_probabilities, ComparisonGraph, DataMatrix, ExpectedValueVector, Ipcm, ModelKind,
};

const PROBABILITIES: [(usize, usize, f64); 6] = [
    (0, 1, 0.562),
    (0, 2, 0.679),
    (0, 3, 0.852),
    (1, 2, 0.622),
    (1, 3, 0.818),
    (2, 3, 0.531),
];

const RATIOS: [(usize, usize, f64); 6] = [
    (0, 1, 0.779),
    (0, 2, 0.472),
    (0, 3, 0.174),
    (1, 2, 0.607),
    (1, 3, 0.223),
    (2, 3, 0.883),
];

/// Four-item outcome probabilities; `incomplete` drops pairs (1,2) and (1,3).
pub fn probabilities(incomplete: bool) -> DataMatrix {
    let mut d = DataMatrix::new(4);
    for &(i, j, worse) in &PROBABILITIES {
        if !incomplete || i == 0 || (i, j) == (2, 3) {
            d.insert(i, j, worse, 1.0 - worse).unwrap();
        }
    }
    d
}

/// Ratio matrix of [`probabilities`] at three decimals.
pub fn ratios(incomplete: bool) -> Ipcm {
    let mut a = Ipcm::new(4);
    for &(i, j, v) in &RATIOS {
        if !incomplete || i == 0 || (i, j) == (2, 3) {
            a.set(i, j, v).unwrap();
        }
    }
    a
}

/// Exact logistic probabilities for `n` evenly spread items on a path.
pub fn path_data(n: usize) -> DataMatrix {
    let m = ExpectedValueVector::gauged((0..n).map(|k| 0.3 * k as f64).collect()).unwrap();
    let path = ComparisonGraph::from_edges(n, (1..n).map(|k| (k - 1, k))).unwrap();
    exact_probabilities(&m, &path, ModelKind::Logistic).unwrap()
}
