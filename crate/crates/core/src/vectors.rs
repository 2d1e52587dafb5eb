use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Priority vector: strictly positive components summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    /// Scales strictly positive finite values so that they sum to one.
    pub fn normalized(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput("empty weight vector".into()));
        }
        if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::InvalidInput(format!(
                "weights must be positive and finite, got {bad}"
            )));
        }
        let sum: f64 = values.iter().sum();
        Ok(Self(values.into_iter().map(|v| v / sum).collect()))
    }

    /// `w_i = exp(m_i) / sum_j exp(m_j)`.
    pub fn from_expected_values(m: &ExpectedValueVector) -> Self {
        let max = m.0.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let exps: Vec<f64> = m.0.iter().map(|v| (v - max).exp()).collect();
        let sum: f64 = exps.iter().sum();
        Self(exps.into_iter().map(|v| v / sum).collect())
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Relabels items: component `i` moves to position `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self(permute_values(&self.0, perm))
    }
}

impl std::ops::Index<usize> for WeightVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Log-scale merit vector in the gauge `m[0] == 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExpectedValueVector(Vec<f64>);

impl ExpectedValueVector {
    /// Shifts `values` so that the first coordinate is exactly zero.
    pub fn gauged(values: Vec<f64>) -> Result<Self> {
        let Some(&first) = values.first() else {
            return Err(Error::InvalidInput("empty expected value vector".into()));
        };
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("expected values must be finite".into()));
        }
        let mut out: Vec<f64> = values.into_iter().map(|v| v - first).collect();
        out[0] = 0.0;
        Ok(Self(out))
    }

    /// `m_i = ln w_i - ln w_0`.
    pub fn from_weights(w: &WeightVector) -> Self {
        let base = w.0[0].ln();
        let mut out: Vec<f64> = w.0.iter().map(|v| v.ln() - base).collect();
        out[0] = 0.0;
        Self(out)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Relabels items and restores the gauge on the new first item.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self::gauged(permute_values(&self.0, perm)).expect("finite by construction")
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<usize> for ExpectedValueVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

pub(crate) fn permute_values(values: &[f64], perm: &[usize]) -> Vec<f64> {
    assert_eq!(values.len(), perm.len(), "permutation length mismatch");
    let mut out = vec![0.0; values.len()];
    for (i, &p) in perm.iter().enumerate() {
        out[p] = values[i];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_from_known_m() {
        let ln2 = 2f64.ln();
        let m = ExpectedValueVector::gauged(vec![0.0, -ln2, -ln2, 0.0]).unwrap();
        let w = WeightVector::from_expected_values(&m);
        let expected = [1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0];
        for (a, b) in w.as_slice().iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
        let back = ExpectedValueVector::from_weights(&w);
        assert!(back.max_abs_diff(&m) < 1e-14);
    }

    #[test]
    fn uniform_weights_give_zero_m() {
        let m = ExpectedValueVector::from_weights(&WeightVector::uniform(5));
        assert!(m.as_slice().iter().all(|v| *v == 0.0));
        let w = WeightVector::from_expected_values(&ExpectedValueVector::zeros(3));
        assert!(w.as_slice().iter().all(|v| (v - 1.0 / 3.0).abs() < 1e-15));
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(WeightVector::normalized(vec![1.0, 0.0]).is_err());
        assert!(WeightVector::normalized(vec![]).is_err());
        assert!(WeightVector::normalized(vec![1.0, f64::NAN]).is_err());
        assert!(ExpectedValueVector::gauged(vec![]).is_err());
    }

    #[test]
    fn gauge_is_exact() {
        let m = ExpectedValueVector::gauged(vec![0.3, 1.1, -0.2]).unwrap();
        assert_eq!(m[0], 0.0);
        let p = m.permuted(&[2, 0, 1]);
        assert_eq!(p[0], 0.0);
        assert!((p[1] - (m[2] - m[1])).abs() < 1e-14);
    }
}
