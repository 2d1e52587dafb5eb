use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::consistency::ford_condition;
use crate::data::DataMatrix;
use crate::error::{Error, Result};
use crate::model::ModelKind;
use crate::vectors::ExpectedValueVector;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MleOptions {
    /// Stop once the max-norm parameter change of an iteration falls below this.
    pub tol: f64,
    /// Iteration cap, applied separately to the minorize-maximize stage and
    /// to the Newton stage.
    pub max_iter: usize,
    /// Record the log-likelihood after every iteration in [`MleResult::trace`].
    pub track_loglik: bool,
}

impl Default for MleOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: 100_000,
            track_loglik: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MleResult {
    pub m: ExpectedValueVector,
    pub loglik: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Log-likelihood per iteration, starting with the initial point; empty
    /// unless requested through [`MleOptions::track_loglik`].
    pub trace: Vec<f64>,
}

/// `sum over pairs of worse * ln F(m_j - m_i) + better * ln F(m_i - m_j)`.
pub fn log_likelihood(d: &DataMatrix, m: &[f64], model: ModelKind) -> f64 {
    d.pairs()
        .map(|((i, j), o)| {
            let x = m[i] - m[j];
            let mut term = 0.0;
            if o.worse > 0.0 {
                term += o.worse * model.ln_cdf(-x);
            }
            if o.better > 0.0 {
                term += o.better * model.ln_cdf(x);
            }
            term
        })
        .sum()
}

/// Gradient of [`log_likelihood`] with respect to every coordinate of `m`.
pub fn log_likelihood_gradient(d: &DataMatrix, m: &[f64], model: ModelKind) -> Vec<f64> {
    let mut grad = vec![0.0; d.n()];
    for ((i, j), o) in d.pairs() {
        let x = m[i] - m[j];
        let slope = o.better * model.d_ln_cdf(x) - o.worse * model.d_ln_cdf(-x);
        grad[i] += slope;
        grad[j] -= slope;
    }
    grad
}

/// Maximum likelihood estimate with default options.
pub fn bt_mle(d: &DataMatrix, model: ModelKind) -> Result<MleResult> {
    bt_mle_with(d, model, &MleOptions::default())
}

/// Maximum likelihood estimate of `m` in the gauge `m_0 = 0`.
///
/// The logistic model uses the minorize-maximize fixed point on
/// `pi = exp(m)` followed by Newton refinement; the normal model uses damped
/// Newton ascent from zero.
pub fn bt_mle_with(d: &DataMatrix, model: ModelKind, opts: &MleOptions) -> Result<MleResult> {
    if d.n() == 0 || !ford_condition(d) {
        return Err(Error::FordViolation);
    }
    if d.n() == 1 {
        return Ok(MleResult {
            m: ExpectedValueVector::zeros(1),
            loglik: 0.0,
            iterations: 0,
            converged: true,
            trace: Vec::new(),
        });
    }
    match model {
        ModelKind::Logistic => {
            let mm = minorize_maximize(d, opts)?;
            // a few Newton steps remove what is left of the slow linear tail,
            // or finish the job when the iteration cap was hit
            let polished = newton(d, model, opts, mm.m.into_vec(), mm.trace)?;
            Ok(MleResult {
                iterations: mm.iterations + polished.iterations,
                ..polished
            })
        }
        ModelKind::Normal => {
            let n = d.n();
            newton(d, model, opts, vec![0.0; n], Vec::new())
        }
    }
}

fn gradient_norm(d: &DataMatrix, m: &[f64], model: ModelKind) -> f64 {
    log_likelihood_gradient(d, m, model)[1..]
        .iter()
        .map(|g| g * g)
        .sum::<f64>()
        .sqrt()
}

fn minorize_maximize(d: &DataMatrix, opts: &MleOptions) -> Result<MleResult> {
    let n = d.n();
    // neighbours[i] = (j, total amount of the pair)
    let mut neighbours: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    let mut wins = vec![0.0; n];
    for ((i, j), o) in d.pairs() {
        let total = o.total();
        if total > 0.0 {
            neighbours[i].push((j, total));
            neighbours[j].push((i, total));
        }
        wins[i] += o.better;
        wins[j] += o.worse;
    }

    let mut pi = vec![1.0; n];
    let mut m = vec![0.0; n];
    let mut trace = Vec::new();
    if opts.track_loglik {
        trace.push(log_likelihood(d, &m, ModelKind::Logistic));
    }
    for iteration in 1..=opts.max_iter {
        for i in 0..n {
            let denom: f64 = neighbours[i]
                .iter()
                .map(|&(j, total)| total / (pi[i] + pi[j]))
                .sum();
            pi[i] = wins[i] / denom;
        }
        let base = pi[0];
        let mut change = 0.0f64;
        for (p, mi) in pi.iter_mut().zip(m.iter_mut()) {
            *p /= base;
            let next = p.ln();
            change = change.max((next - *mi).abs());
            *mi = next;
        }
        if opts.track_loglik {
            trace.push(log_likelihood(d, &m, ModelKind::Logistic));
        }
        if change < opts.tol {
            return Ok(MleResult {
                loglik: log_likelihood(d, &m, ModelKind::Logistic),
                m: ExpectedValueVector::gauged(m)?,
                iterations: iteration,
                converged: true,
                trace,
            });
        }
    }
    // the last iterate still seeds Newton, which has the final say
    Ok(MleResult {
        loglik: log_likelihood(d, &m, ModelKind::Logistic),
        m: ExpectedValueVector::gauged(m)?,
        iterations: opts.max_iter,
        converged: false,
        trace,
    })
}

fn newton(
    d: &DataMatrix,
    model: ModelKind,
    opts: &MleOptions,
    mut m: Vec<f64>,
    mut trace: Vec<f64>,
) -> Result<MleResult> {
    let n = d.n();
    let mut loglik = log_likelihood(d, &m, model);
    if opts.track_loglik && trace.is_empty() {
        trace.push(loglik);
    }
    for iteration in 1..=opts.max_iter {
        // reduced system over m_1..m_{n-1}
        let grad = log_likelihood_gradient(d, &m, model);
        let mut neg_hessian = DMatrix::<f64>::zeros(n - 1, n - 1);
        for ((i, j), o) in d.pairs() {
            let x = m[i] - m[j];
            let curvature = -(o.better * model.d2_ln_cdf(x) + o.worse * model.d2_ln_cdf(-x));
            if i > 0 {
                neg_hessian[(i - 1, i - 1)] += curvature;
            }
            if j > 0 {
                neg_hessian[(j - 1, j - 1)] += curvature;
            }
            if i > 0 && j > 0 {
                neg_hessian[(i - 1, j - 1)] -= curvature;
                neg_hessian[(j - 1, i - 1)] -= curvature;
            }
        }
        let g = DVector::from_column_slice(&grad[1..]);
        if g.amax() == 0.0 {
            return Ok(MleResult {
                m: ExpectedValueVector::gauged(m)?,
                loglik,
                iterations: iteration - 1,
                converged: true,
                trace,
            });
        }
        let step = neg_hessian
            .cholesky()
            .ok_or(Error::NoConvergence {
                iterations: iteration,
            })?
            .solve(&g);
        let slope = g.dot(&step);

        let mut alpha = 1.0;
        let mut candidate = m.clone();
        let accepted = loop {
            for k in 1..n {
                candidate[k] = m[k] + alpha * step[k - 1];
            }
            let value = log_likelihood(d, &candidate, model);
            if value >= loglik + 1e-4 * alpha * slope {
                break Some(value);
            }
            // near the optimum the likelihood change drowns in rounding;
            // fall back to the gradient norm there
            let noise = 8.0 * f64::EPSILON * loglik.abs().max(1.0);
            if alpha == 1.0
                && value >= loglik - noise
                && gradient_norm(d, &candidate, model) < g.norm()
            {
                break Some(value);
            }
            alpha *= 0.5;
            if alpha < 1e-12 {
                break None;
            }
        };
        let change = alpha * step.amax();
        // no acceptable step at machine precision means we are at the optimum
        if let Some(value) = accepted {
            m.copy_from_slice(&candidate);
            loglik = value;
        }
        if opts.track_loglik {
            trace.push(loglik);
        }
        if change < opts.tol || accepted.is_none() {
            return Ok(MleResult {
                m: ExpectedValueVector::gauged(m)?,
                loglik,
                iterations: iteration,
                converged: true,
                trace,
            });
        }
    }
    Err(Error::NoConvergence {
        iterations: opts.max_iter,
    })
}
