#![allow(dead_code)]

use paircomp::{ComparisonGraph, DataMatrix, ExpectedValueVector};
use rand::seq::SliceRandom;
use rand::Rng;

/// First coordinate 0, the rest uniform in `[-spread, spread]`.
pub fn random_m<R: Rng>(rng: &mut R, n: usize, spread: f64) -> ExpectedValueVector {
    let mut m = vec![0.0; n];
    for v in &mut m[1..] {
        *v = rng.random_range(-spread..=spread);
    }
    ExpectedValueVector::gauged(m).unwrap()
}

pub fn random_perm<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// Random spanning tree plus each remaining pair with a random probability.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize) -> ComparisonGraph {
    let order = random_perm(rng, n);
    let mut g = ComparisonGraph::empty(n);
    for k in 1..n {
        let parent = order[rng.random_range(0..k)];
        g.add_edge(order[k], parent).unwrap();
    }
    let density: f64 = rng.random();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < density {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    assert!(g.is_connected());
    g
}

/// Integer counts in `1..=max` on both sides of every edge.
pub fn random_counts<R: Rng>(rng: &mut R, g: &ComparisonGraph, max: u32) -> DataMatrix {
    let mut d = DataMatrix::new(g.n());
    for (i, j) in g.edges() {
        let worse = rng.random_range(1..=max) as f64;
        let better = rng.random_range(1..=max) as f64;
        d.insert(i, j, worse, better).unwrap();
    }
    d
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
