use serde::{Deserialize, Serialize};

use super::llsm::llsm;
use crate::error::{Error, Result};
use crate::pcm::Ipcm;
use crate::vectors::WeightVector;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmOptions {
    /// Max-norm change of the normalized iterate that stops power iteration.
    pub eigen_tol: f64,
    /// Completion stops once a full sweep starts with every
    /// `|d lambda_max / d t|` below this.
    pub completion_tol: f64,
    /// Cap on power iterations and on completion sweeps.
    pub max_iter: usize,
}

impl Default for EmOptions {
    fn default() -> Self {
        Self {
            eigen_tol: 1e-12,
            completion_tol: 1e-10,
            max_iter: 100_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmResult {
    pub weights: WeightVector,
    /// Principal eigenvalue of the matrix (of its optimal completion when incomplete).
    pub lambda_max: f64,
}

/// Eigenvector method with default tolerances.
pub fn em(a: &Ipcm) -> Result<EmResult> {
    em_with(a, &EmOptions::default())
}

/// Principal right eigenvector of a complete matrix, or of the completion
/// minimizing `lambda_max` when entries are missing.
///
/// Missing entries are parametrized as `exp(t)` and the convex function
/// `t -> lambda_max` is minimized by cyclic coordinate descent, starting from
/// the completion implied by the logarithmic least squares weights. Each
/// coordinate step solves `d lambda_max / d t_k = 0`.
pub fn em_with(a: &Ipcm, opts: &EmOptions) -> Result<EmResult> {
    let n = a.n();
    if n == 0 || !a.representing_graph().is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let mut dense = vec![1.0; n * n];
    let mut missing = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            match a.get(i, j) {
                Some(v) => {
                    dense[i * n + j] = v;
                    dense[j * n + i] = 1.0 / v;
                }
                None => missing.push((i, j)),
            }
        }
    }
    if missing.is_empty() {
        let (lambda_max, v) = perron(&dense, n, &vec![1.0; n], opts)?;
        return Ok(EmResult {
            weights: WeightVector::normalized(v)?,
            lambda_max,
        });
    }

    let start = llsm(a)?;
    let mut completion = Completion {
        n,
        dense,
        missing,
        right: start.as_slice().to_vec(),
        left: start.as_slice().iter().map(|w| 1.0 / w).collect(),
        opts: *opts,
    };
    let mut t: Vec<f64> = completion
        .missing
        .iter()
        .map(|&(i, j)| (start[i] / start[j]).ln())
        .collect();
    let mut sweeps = 0;
    loop {
        sweeps += 1;
        let mut largest = 0.0f64;
        for k in 0..t.len() {
            largest = largest.max(completion.minimize_coordinate(&mut t, k)?);
        }
        if largest < opts.completion_tol {
            break;
        }
        if sweeps >= opts.max_iter {
            return Err(Error::NoConvergence { iterations: sweeps });
        }
    }
    completion.apply(&t);
    let (lambda_max, v) = perron(&completion.dense, n, &completion.right, opts)?;
    Ok(EmResult {
        weights: WeightVector::normalized(v)?,
        lambda_max,
    })
}

struct Completion {
    n: usize,
    dense: Vec<f64>,
    missing: Vec<(usize, usize)>,
    /// Last right and left eigenvectors, reused as warm starts.
    right: Vec<f64>,
    left: Vec<f64>,
    opts: EmOptions,
}

impl Completion {
    fn apply(&mut self, t: &[f64]) {
        for (&(i, j), &x) in self.missing.iter().zip(t) {
            self.dense[i * self.n + j] = x.exp();
            self.dense[j * self.n + i] = (-x).exp();
        }
    }

    /// `d lambda_max / d t_k` at `t`, from the left and right Perron vectors.
    fn slope(&mut self, t: &[f64], k: usize) -> Result<f64> {
        self.apply(t);
        let n = self.n;
        let (_, v) = perron(&self.dense, n, &self.right, &self.opts)?;
        let transposed: Vec<f64> = (0..n * n)
            .map(|e| self.dense[(e % n) * n + e / n])
            .collect();
        let (_, u) = perron(&transposed, n, &self.left, &self.opts)?;
        let (i, j) = self.missing[k];
        let (a_ij, a_ji) = (self.dense[i * n + j], self.dense[j * n + i]);
        let dot: f64 = u.iter().zip(&v).map(|(x, y)| x * y).sum();
        let slope = (u[i] * v[j] * a_ij - u[j] * v[i] * a_ji) / dot;
        self.right = v;
        self.left = u;
        Ok(slope)
    }

    fn slope_with(&mut self, t: &mut [f64], k: usize, x: f64) -> Result<f64> {
        let keep = t[k];
        t[k] = x;
        let slope = self.slope(t, k);
        t[k] = keep;
        slope
    }

    /// Moves coordinate `k` to the zero of its derivative, which is
    /// increasing because `lambda_max` is convex in `t`. Returns the
    /// derivative magnitude found at the starting point.
    fn minimize_coordinate(&mut self, t: &mut [f64], k: usize) -> Result<f64> {
        let x0 = t[k];
        let g0 = self.slope(t, k)?;
        if g0 == 0.0 {
            return Ok(0.0);
        }
        let direction = -g0.signum();
        let (mut a, mut ga) = (x0, g0);
        let mut step = 0.5;
        let (mut b, mut gb);
        loop {
            b = a + direction * step;
            gb = self.slope_with(t, k, b)?;
            if gb.signum() != g0.signum() {
                break;
            }
            if step > 1e3 {
                return Err(Error::NoConvergence { iterations: 0 });
            }
            (a, ga) = (b, gb);
            step *= 2.0;
        }
        // Illinois regula falsi on the sign change between a and b
        let mut side = 0;
        for _ in 0..200 {
            if (b - a).abs() <= 1e-14 * (1.0 + a.abs()) {
                break;
            }
            let x = (a * gb - b * ga) / (gb - ga);
            let gx = self.slope_with(t, k, x)?;
            if gx == 0.0 {
                (a, b) = (x, x);
                break;
            }
            if gx.signum() == gb.signum() {
                (b, gb) = (x, gx);
                if side == -1 {
                    ga *= 0.5;
                }
                side = -1;
            } else {
                (a, ga) = (x, gx);
                if side == 1 {
                    gb *= 0.5;
                }
                side = 1;
            }
        }
        t[k] = if ga.abs() < gb.abs() { a } else { b };
        Ok(g0.abs())
    }
}

/// Perron eigenpair of a positive `n x n` row-major matrix by power
/// iteration; the eigenvector is normalized to sum one.
fn perron(matrix: &[f64], n: usize, start: &[f64], opts: &EmOptions) -> Result<(f64, Vec<f64>)> {
    let total: f64 = start.iter().sum();
    let mut v: Vec<f64> = start.iter().map(|x| x / total).collect();
    let mut next = vec![0.0; n];
    for _ in 0..opts.max_iter {
        for (i, out) in next.iter_mut().enumerate() {
            let row = &matrix[i * n..(i + 1) * n];
            *out = row.iter().zip(&v).map(|(a, x)| a * x).sum();
        }
        // sum(v) == 1, so sum(A v) is the Rayleigh-type estimate of lambda
        let lambda: f64 = next.iter().sum();
        let mut change = 0.0f64;
        for (x, y) in v.iter_mut().zip(&next) {
            let y = y / lambda;
            change = change.max((y - *x).abs());
            *x = y;
        }
        if change <= opts.eigen_tol {
            return Ok((lambda, v));
        }
    }
    Err(Error::NoConvergence {
        iterations: opts.max_iter,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testdata;

    fn assert_close(w: &WeightVector, expected: &[f64], tol: f64) {
        for (a, b) in w.as_slice().iter().zip(expected) {
            assert!((a - b).abs() <= tol, "{w:?} vs {expected:?}");
        }
    }

    #[test]
    fn complete_inconsistent_example() {
        let r = em(&testdata::complete_pcm()).unwrap();
        assert_close(&r.weights, &[0.103, 0.132, 0.279, 0.485], 1e-3);
        assert!(r.lambda_max > 4.0);
    }

    #[test]
    fn incomplete_inconsistent_example() {
        let r = em(&testdata::incomplete_pcm()).unwrap();
        assert_close(&r.weights, &[0.107, 0.134, 0.302, 0.458], 1e-3);
    }

    #[test]
    fn all_ones_matrix() {
        let r = em(&Ipcm::from_weights(&WeightVector::uniform(4))).unwrap();
        assert_close(&r.weights, &[0.25; 4], 1e-15);
        assert!((r.lambda_max - 4.0).abs() < 1e-12);
    }

    #[test]
    fn incomplete_consistent_recovers_weights() {
        let w = WeightVector::normalized(vec![5.0, 1.0, 3.0, 2.0, 4.0]).unwrap();
        let full = Ipcm::from_weights(&w);
        let mut a = Ipcm::new(5);
        for (i, j) in [(0, 1), (1, 2), (2, 3), (3, 4)] {
            a.set(i, j, full.get(i, j).unwrap()).unwrap();
        }
        let r = em(&a).unwrap();
        assert_close(&r.weights, w.as_slice(), 1e-9);
        assert!((r.lambda_max - 5.0).abs() < 1e-9);
    }

    #[test]
    fn completion_lowers_lambda() {
        // any fixed completion has lambda_max at least the optimum
        let a = testdata::incomplete_pcm();
        let optimum = em(&a).unwrap().lambda_max;
        for guess in [0.3, 1.0, 2.5] {
            let mut b = a.clone();
            b.set(1, 2, guess).unwrap();
            b.set(1, 3, guess * 0.5).unwrap();
            assert!(em(&b).unwrap().lambda_max >= optimum - 1e-10);
        }
    }

    #[test]
    fn disconnected() {
        let mut a = Ipcm::new(4);
        a.set(0, 1, 2.0).unwrap();
        a.set(2, 3, 2.0).unwrap();
        assert_eq!(em(&a), Err(Error::DisconnectedGraph));
    }
}
