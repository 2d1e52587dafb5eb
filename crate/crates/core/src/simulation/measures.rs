use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::vectors::{ExpectedValueVector, WeightVector};

/// Differences below this are ties when ranking expected values.
pub const RANK_TIE_TOL: f64 = 1e-9;
/// Standard deviations below this make the Pearson coefficient undefined.
pub const ZERO_VARIANCE_TOL: f64 = 1e-9;

/// The six similarity measures between a complete-data and an
/// incomplete-data estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    EuM,
    EuW,
    PeM,
    PeW,
    Rho,
    Tau,
}

impl Measure {
    pub const ALL: [Measure; 6] = [
        Measure::EuM,
        Measure::EuW,
        Measure::PeM,
        Measure::PeW,
        Measure::Rho,
        Measure::Tau,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::EuM => "eu_m",
            Measure::EuW => "eu_w",
            Measure::PeM => "pe_m",
            Measure::PeW => "pe_w",
            Measure::Rho => "rho",
            Measure::Tau => "tau",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Distances improve downwards, correlations upwards.
    pub fn lower_is_better(self) -> bool {
        matches!(self, Measure::EuM | Measure::EuW)
    }

    /// Whether `a` is a strictly better value than `b` for this measure.
    pub fn better(self, a: f64, b: f64) -> bool {
        if self.lower_is_better() {
            a < b
        } else {
            a > b
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown measure `{s}`"))
    }
}

/// Similarity of one incomplete-data estimate to the complete-data one.
/// The Pearson coefficients are `None` when either vector is constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureSet {
    pub eu_m: f64,
    pub eu_w: f64,
    pub pe_m: Option<f64>,
    pub pe_w: Option<f64>,
    pub spearman_rho: f64,
    pub kendall_tau: f64,
}

impl MeasureSet {
    pub fn get(&self, measure: Measure) -> Option<f64> {
        match measure {
            Measure::EuM => Some(self.eu_m),
            Measure::EuW => Some(self.eu_w),
            Measure::PeM => self.pe_m,
            Measure::PeW => self.pe_w,
            Measure::Rho => Some(self.spearman_rho),
            Measure::Tau => Some(self.kendall_tau),
        }
    }
}

pub fn similarity(
    m_complete: &ExpectedValueVector,
    w_complete: &WeightVector,
    m_incomplete: &ExpectedValueVector,
    w_incomplete: &WeightVector,
) -> MeasureSet {
    let (mk, mi) = (m_complete.as_slice(), m_incomplete.as_slice());
    let (wk, wi) = (w_complete.as_slice(), w_incomplete.as_slice());
    MeasureSet {
        eu_m: euclidean(mk, mi),
        eu_w: euclidean(wk, wi),
        pe_m: pearson(mk, mi),
        pe_w: pearson(wk, wi),
        spearman_rho: spearman(mk, mi),
        kendall_tau: kendall(mk, mi),
    }
}

pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Pearson correlation with population moments, clamped to `[-1, 1]`.
pub fn pearson(a: &[f64], b: &[f64]) -> Option<f64> {
    let n = a.len() as f64;
    let mean_a = a.iter().sum::<f64>() / n;
    let mean_b = b.iter().sum::<f64>() / n;
    let (mut cov, mut var_a, mut var_b) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - mean_a, y - mean_b);
        cov += dx * dy;
        var_a += dx * dx;
        var_b += dy * dy;
    }
    if (var_a / n).sqrt() < ZERO_VARIANCE_TOL || (var_b / n).sqrt() < ZERO_VARIANCE_TOL {
        return None;
    }
    // sqrt(v * v) == v exactly, so identical inputs give exactly 1
    Some((cov / (var_a * var_b).sqrt()).clamp(-1.0, 1.0))
}

/// `1 - 6 sum d_i^2 / (n (n^2 - 1))` on average ranks.
pub fn spearman(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let (ra, rb) = (average_ranks(a), average_ranks(b));
    let d2: f64 = ra.iter().zip(&rb).map(|(x, y)| (x - y).powi(2)).sum();
    1.0 - 6.0 * d2 / (n * (n * n - 1.0))
}

/// `2 / (n (n - 1)) * sum_{i<j} sign(a_i - a_j) sign(b_i - b_j)`; tied pairs add zero.
pub fn kendall(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len();
    let mut sum = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            sum += tie_sign(a[i] - a[j]) * tie_sign(b[i] - b[j]);
        }
    }
    2.0 * sum / (n * (n - 1)) as f64
}

fn tie_sign(x: f64) -> f64 {
    if x.abs() <= RANK_TIE_TOL {
        0.0
    } else {
        x.signum()
    }
}

/// 1-based ascending ranks; runs of values within [`RANK_TIE_TOL`] of their
/// neighbour share the average rank.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&x, &y| values[x].total_cmp(&values[y]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] - values[order[end - 1]] <= RANK_TIE_TOL {
            end += 1;
        }
        let rank = (start + end + 1) as f64 / 2.0;
        for &k in &order[start..end] {
            ranks[k] = rank;
        }
        start = end;
    }
    ranks
}
