use serde::Serialize;
use std::fmt;
use std::str::FromStr;

use super::FormatError;
use crate::consistency::{data_consistency, ford_condition, pcm_consistency, ConsistencyReport};
use crate::data::DataMatrix;
use crate::error::Error;
use crate::estimators::{bt_mle, em, llsm, weights_from_m};
use crate::model::ModelKind;
use crate::pcm::{pcm_from_data, Ipcm};
use crate::simulation::average_ranks;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Llsm,
    Em,
    Bt,
    Thurstone,
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "llsm" => Ok(Method::Llsm),
            "em" => Ok(Method::Em),
            "bt" => Ok(Method::Bt),
            "thurstone" => Ok(Method::Thurstone),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Llsm => "llsm",
            Method::Em => "em",
            Method::Bt => "bt",
            Method::Thurstone => "thurstone",
        })
    }
}

#[derive(Debug, Clone)]
pub enum RankInput {
    Pairs(DataMatrix),
    Pcm(Ipcm),
}

/// Everything `paircomp rank` reports for one input.
#[derive(Debug, Clone, Serialize)]
pub struct RankReport {
    pub method: Method,
    pub n: usize,
    pub weights: Vec<f64>,
    /// Expected values, for the likelihood methods.
    pub m: Option<Vec<f64>>,
    /// 1 = largest weight; ties share the average rank.
    pub ranks: Vec<f64>,
    pub lambda_max: Option<f64>,
    pub loglik: Option<f64>,
    pub iterations: Option<usize>,
    pub connected: bool,
    /// Strong connectivity of the win graph; only defined for pairs input.
    pub ford_condition: Option<bool>,
    /// `None` when the comparison graph is disconnected.
    pub consistency: Option<ConsistencyReport>,
}

/// Evaluates `input` with `method`, with consistency checked at `tol`.
pub fn rank_report(input: &RankInput, method: Method, tol: f64) -> Result<RankReport, FormatError> {
    let (n, connected, ford, consistency) = match input {
        RankInput::Pairs(d) => (
            d.n(),
            d.n() > 0 && d.comparison_graph().is_connected(),
            Some(ford_condition(d)),
            data_consistency(d, tol).ok(),
        ),
        RankInput::Pcm(a) => (
            a.n(),
            a.n() > 0 && a.representing_graph().is_connected(),
            None,
            pcm_consistency(a, tol).ok(),
        ),
    };

    let mut report = RankReport {
        method,
        n,
        weights: Vec::new(),
        m: None,
        ranks: Vec::new(),
        lambda_max: None,
        loglik: None,
        iterations: None,
        connected,
        ford_condition: ford,
        consistency,
    };

    match method {
        Method::Llsm | Method::Em => {
            let converted;
            let a = match input {
                RankInput::Pcm(a) => a,
                RankInput::Pairs(d) => {
                    converted = pcm_from_data(d);
                    &converted
                }
            };
            if method == Method::Llsm {
                report.weights = llsm(a)?.into_vec();
            } else {
                let fit = em(a)?;
                report.lambda_max = Some(fit.lambda_max);
                report.weights = fit.weights.into_vec();
            }
        }
        Method::Bt | Method::Thurstone => {
            let RankInput::Pairs(d) = input else {
                return Err(
                    Error::InvalidInput(format!("method {method} needs pairs input")).into(),
                );
            };
            let model = if method == Method::Bt {
                ModelKind::Logistic
            } else {
                ModelKind::Normal
            };
            let fit = bt_mle(d, model)?;
            report.weights = weights_from_m(&fit.m).into_vec();
            report.loglik = Some(fit.loglik);
            report.iterations = Some(fit.iterations);
            report.m = Some(fit.m.into_vec());
        }
    }
    let negated: Vec<f64> = report.weights.iter().map(|w| -w).collect();
    report.ranks = average_ranks(&negated);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consistency::DEFAULT_CONSISTENCY_TOL;
    use crate::testdata;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn bt_on_probabilities() {
        let input = RankInput::Pairs(testdata::modified_probabilities());
        let r = rank_report(&input, Method::Bt, DEFAULT_CONSISTENCY_TOL).unwrap();
        assert!(close(&r.weights, &[0.109, 0.140, 0.284, 0.466], 1e-3));
        assert_eq!(r.ranks, [4.0, 3.0, 2.0, 1.0]);
        assert_eq!(r.ford_condition, Some(true));
        assert!(r.loglik.is_some() && r.m.is_some() && r.lambda_max.is_none());
        assert!(!r.consistency.unwrap().consistent);
    }

    #[test]
    fn llsm_and_em_on_pcm() {
        let input = RankInput::Pcm(testdata::complete_pcm());
        let r = rank_report(&input, Method::Llsm, DEFAULT_CONSISTENCY_TOL).unwrap();
        assert!(close(&r.weights, &[0.105, 0.135, 0.276, 0.484], 1e-3));
        assert_eq!(r.ford_condition, None);
        let r = rank_report(&input, Method::Em, DEFAULT_CONSISTENCY_TOL).unwrap();
        assert!(r.lambda_max.unwrap() >= 4.0);
    }

    #[test]
    fn tied_weights_share_rank() {
        let input = RankInput::Pairs(testdata::consistent_counts());
        let r = rank_report(&input, Method::Bt, DEFAULT_CONSISTENCY_TOL).unwrap();
        assert_eq!(r.ranks, [1.5, 3.5, 3.5, 1.5]);
        assert!(r.consistency.unwrap().consistent);
    }

    #[test]
    fn precondition_failures() {
        let input = RankInput::Pcm(testdata::complete_pcm());
        assert!(matches!(
            rank_report(&input, Method::Thurstone, DEFAULT_CONSISTENCY_TOL),
            Err(FormatError::Model(Error::InvalidInput(_)))
        ));
        let mut d = DataMatrix::new(3);
        d.insert(0, 1, 1.0, 2.0).unwrap();
        let r = rank_report(&RankInput::Pairs(d), Method::Bt, DEFAULT_CONSISTENCY_TOL);
        assert!(matches!(r, Err(FormatError::Model(Error::FordViolation))));
    }
}
