//! Monte-Carlo measurement of how much of the complete-data estimate each
//! connected comparison structure retrieves.
//!
//! One replication draws a random priority vector, builds the exact outcome
//! probabilities of every pair, perturbs them, fits the complete data, then
//! fits the data restricted to one canonical member of every graph class and
//! compares the two estimates with six similarity measures.

mod measures;
mod perturb;

pub use measures::{
    average_ranks, euclidean, kendall, pearson, similarity, spearman, Measure, MeasureSet,
    RANK_TIE_TOL, ZERO_VARIANCE_TOL,
};
pub use perturb::{draw_initial_weights, perturb_data};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::data::exact_probabilities;
use crate::error::{Error, Result};
use crate::estimators::{bt_mle_with, m_from_weights, weights_from_m, MleOptions};
use crate::graph::ComparisonGraph;
use crate::graphs::{enumerate_connected, GraphClass};
use crate::model::ModelKind;

/// Replications evaluated in parallel before being folded in order.
const CHUNK: usize = 1024;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    /// Number of compared items, 4 to 6.
    pub n: usize,
    /// Half-width of the uniform perturbation, in `[0, 1)`.
    pub perturb: f64,
    pub num_sims: usize,
    pub seed: u64,
    pub model: ModelKind,
    /// Perturbed probabilities are kept inside `(epsilon, 1 - epsilon)`.
    pub epsilon: f64,
    pub mle: MleOptions,
}

impl SimulationConfig {
    pub fn new(n: usize, perturb: f64, num_sims: usize, seed: u64) -> Self {
        Self {
            n,
            perturb,
            num_sims,
            seed,
            model: ModelKind::Logistic,
            epsilon: 1e-6,
            mle: MleOptions::default(),
        }
    }

    pub fn with_model(mut self, model: ModelKind) -> Self {
        self.model = model;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(4..=6).contains(&self.n) {
            return Err(Error::InvalidInput(format!(
                "simulation supports 4 to 6 items, got {}",
                self.n
            )));
        }
        if !(0.0..1.0).contains(&self.perturb) {
            return Err(Error::InvalidInput(format!(
                "perturbation must lie in [0, 1), got {}",
                self.perturb
            )));
        }
        if self.num_sims == 0 {
            return Err(Error::InvalidInput(
                "at least one replication is required".into(),
            ));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 0.5) {
            return Err(Error::InvalidInput(format!(
                "epsilon must lie in (0, 0.5), got {}",
                self.epsilon
            )));
        }
        Ok(())
    }
}

/// Mean and sample standard deviation of one measure over the replications
/// where it was defined.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct MeasureStats {
    pub mean: f64,
    pub stddev: f64,
    pub count: usize,
    #[serde(skip)]
    m2: f64,
}

impl MeasureStats {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
        self.stddev = if self.count > 1 {
            (self.m2 / (self.count - 1) as f64).max(0.0).sqrt()
        } else {
            0.0
        };
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub class: GraphClass,
    /// Indexed by [`Measure::index`].
    pub stats: [MeasureStats; 6],
    /// Replications in which the fit on this structure failed to converge.
    pub excluded: usize,
}

impl GraphSummary {
    pub fn stat(&self, measure: Measure) -> &MeasureStats {
        &self.stats[measure.index()]
    }

    pub fn mean(&self, measure: Measure) -> f64 {
        self.stat(measure).mean
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationSummary {
    pub config: SimulationConfig,
    pub graphs: Vec<GraphSummary>,
    /// Replications dropped entirely because the complete-data fit failed.
    pub excluded_replications: usize,
}

impl SimulationSummary {
    pub fn graph(&self, id: usize) -> Option<&GraphSummary> {
        self.graphs.iter().find(|g| g.class.id == id)
    }

    pub fn with_edges(&self, edges: usize) -> impl Iterator<Item = &GraphSummary> + '_ {
        self.graphs
            .iter()
            .filter(move |g| g.class.edge_count == edges)
    }
}

/// Runs the experiment.
pub fn run(config: &SimulationConfig) -> Result<SimulationSummary> {
    run_with_progress(config, |_, _| {})
}

/// Runs the experiment, reporting `(done, total)` replications after every
/// chunk. The result does not depend on the number of worker threads.
pub fn run_with_progress<P>(config: &SimulationConfig, mut progress: P) -> Result<SimulationSummary>
where
    P: FnMut(usize, usize),
{
    config.validate()?;
    let classes = enumerate_connected(config.n)?;
    let members: Vec<ComparisonGraph> = classes.iter().map(GraphClass::graph).collect();
    let mut graphs: Vec<GraphSummary> = classes
        .into_iter()
        .map(|class| GraphSummary {
            class,
            stats: [MeasureStats::default(); 6],
            excluded: 0,
        })
        .collect();
    let mut excluded_replications = 0;

    let mut done = 0;
    while done < config.num_sims {
        let end = (done + CHUNK).min(config.num_sims);
        let outcomes: Vec<Option<Vec<Option<MeasureSet>>>> = (done..end)
            .into_par_iter()
            .map(|r| replicate(config, &members, r as u64))
            .collect::<Result<_>>()?;
        for outcome in outcomes {
            let Some(per_graph) = outcome else {
                excluded_replications += 1;
                continue;
            };
            for (summary, measures) in graphs.iter_mut().zip(per_graph) {
                let Some(measures) = measures else {
                    summary.excluded += 1;
                    continue;
                };
                for measure in Measure::ALL {
                    if let Some(value) = measures.get(measure) {
                        check_range(measure, value)?;
                        summary.stats[measure.index()].push(value);
                    }
                }
            }
        }
        done = end;
        progress(done, config.num_sims);
    }
    Ok(SimulationSummary {
        config: config.clone(),
        graphs,
        excluded_replications,
    })
}

/// One replication on its own random stream. `Ok(None)` when the
/// complete-data fit does not converge; per-graph `None` when that graph's
/// fit does not converge.
fn replicate(
    config: &SimulationConfig,
    members: &[ComparisonGraph],
    replication: u64,
) -> Result<Option<Vec<Option<MeasureSet>>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(replication);

    let w0 = draw_initial_weights(&mut rng, config.n);
    let m0 = m_from_weights(&w0);
    let complete = ComparisonGraph::complete(config.n);
    let exact = exact_probabilities(&m0, &complete, config.model)?;
    let data = perturb_data(&exact, config.perturb, &mut rng, config.epsilon)?;

    let fit_k = match bt_mle_with(&data, config.model, &config.mle) {
        Ok(fit) => fit,
        Err(Error::NoConvergence { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let w_k = weights_from_m(&fit_k.m);

    let mut per_graph = Vec::with_capacity(members.len());
    for member in members {
        if member.edge_count() == complete.edge_count() {
            per_graph.push(Some(similarity(&fit_k.m, &w_k, &fit_k.m, &w_k)));
            continue;
        }
        match bt_mle_with(&data.restricted(member), config.model, &config.mle) {
            Ok(fit) => {
                let w = weights_from_m(&fit.m);
                per_graph.push(Some(similarity(&fit_k.m, &w_k, &fit.m, &w)));
            }
            Err(Error::NoConvergence { .. }) => per_graph.push(None),
            Err(e) => return Err(e),
        }
    }
    Ok(Some(per_graph))
}

fn check_range(measure: Measure, value: f64) -> Result<()> {
    let ok = match measure {
        Measure::EuM => value >= 0.0,
        Measure::EuW => (0.0..=2f64.sqrt()).contains(&value),
        _ => (-1.0..=1.0).contains(&value),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "{measure} value {value} out of range"
        )))
    }
}

/// Central-limit bound `u * sigma / sqrt(N)` on the simulation error at
/// reliability `1 - alpha`, where `Phi(u) = 1 - alpha / 2`.
pub fn error_bound(num_sims: usize, alpha: f64, sigma: f64) -> f64 {
    assert!(num_sims >= 1, "at least one replication");
    assert!(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
    assert!(sigma > 0.0, "sigma must be positive");
    let u = Normal::standard().inverse_cdf(1.0 - alpha / 2.0);
    u * sigma / (num_sims as f64).sqrt()
}
