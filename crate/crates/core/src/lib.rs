//! Evaluation of (possibly incomplete) paired-comparison data.
//!
//! Comparison data come in two representations: a [`DataMatrix`] of outcome
//! amounts per pair, and a pairwise comparison matrix [`Ipcm`] of preference
//! ratios. Three estimators are provided: logarithmic least squares
//! ([`llsm`]), the eigenvector method ([`em`]) and maximum likelihood under
//! the Bradley-Terry or Thurstone model ([`bt_mle`]). The [`graphs`] module
//! catalogs connected comparison structures up to isomorphism and
//! [`simulation`] runs the Monte-Carlo experiment that ranks those structures
//! by how much of the complete-data estimate they retrieve.

pub mod consistency;
pub mod data;
pub mod error;
pub mod estimators;
pub mod graph;
pub mod graphs;
pub mod io;
pub mod model;
pub mod pcm;
pub mod simulation;
pub mod vectors;

#[cfg(test)]
mod testdata;

pub use consistency::{
    data_consistency, ford_condition, pcm_consistency, ConsistencyReport, DEFAULT_CONSISTENCY_TOL,
};
pub use data::{exact_probabilities, DataMatrix, PairOutcome};
pub use error::{Error, Result};
pub use estimators::{
    bt_mle, bt_mle_with, em, em_with, llsm, log_likelihood, log_likelihood_gradient,
    m_from_weights, weights_from_m, EmOptions, EmResult, MleOptions, MleResult,
};
pub use graph::ComparisonGraph;
pub use graphs::{GraphClass, GraphProperties};
pub use model::ModelKind;
pub use pcm::{pcm_from_data, Ipcm};
pub use simulation::{MeasureSet, SimulationConfig, SimulationSummary};
pub use vectors::{ExpectedValueVector, WeightVector};
