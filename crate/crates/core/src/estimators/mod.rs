//! Evaluation methods: logarithmic least squares, the eigenvector method and
//! maximum likelihood for the Bradley-Terry and Thurstone models.

mod em;
mod llsm;
mod mle;

pub use em::{em, em_with, EmOptions, EmResult};
pub use llsm::llsm;
pub use mle::{
    bt_mle, bt_mle_with, log_likelihood, log_likelihood_gradient, MleOptions, MleResult,
};

use crate::vectors::{ExpectedValueVector, WeightVector};

/// `w_i = exp(m_i) / sum_j exp(m_j)`.
pub fn weights_from_m(m: &ExpectedValueVector) -> WeightVector {
    WeightVector::from_expected_values(m)
}

/// `m_i = ln w_i - ln w_1`.
pub fn m_from_weights(w: &WeightVector) -> ExpectedValueVector {
    ExpectedValueVector::from_weights(w)
}
