//! Paired-comparison models: the outcome probability of "i better than j"
//! is `F(m_i - m_j)` for a symmetric c.d.f. `F`.

use libm::erfc;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

/// Below this argument the normal c.d.f. is evaluated through its asymptotic
/// tail expansion instead of `erfc`.
const NORMAL_TAIL: f64 = -30.0;

/// Selects the c.d.f. `F` of the comparison model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    /// Bradley-Terry: `F(x) = 1 / (1 + exp(-x))`.
    #[default]
    Logistic,
    /// Thurstone: `F` is the standard normal c.d.f.
    Normal,
}

impl ModelKind {
    pub fn cdf(self, x: f64) -> f64 {
        match self {
            ModelKind::Logistic => logistic(x),
            ModelKind::Normal => 0.5 * erfc(-x / SQRT_2),
        }
    }

    /// `ln F(x)`, finite for every finite `x`.
    pub fn ln_cdf(self, x: f64) -> f64 {
        match self {
            ModelKind::Logistic => -softplus(-x),
            ModelKind::Normal => {
                if x >= NORMAL_TAIL {
                    (0.5 * erfc(-x / SQRT_2)).ln()
                } else {
                    // ln Phi(x) ~ ln phi(x) - ln(-x) + ln(1 - 1/x^2 + 3/x^4)
                    let x2 = x * x;
                    -0.5 * x2 - 0.5 * (2.0 * PI).ln() - (-x).ln()
                        + (1.0 - 1.0 / x2 + 3.0 / (x2 * x2)).ln()
                }
            }
        }
    }

    /// `d/dx ln F(x) = f(x) / F(x)`.
    pub fn d_ln_cdf(self, x: f64) -> f64 {
        match self {
            ModelKind::Logistic => logistic(-x),
            ModelKind::Normal => normal_mills(x),
        }
    }

    /// `d^2/dx^2 ln F(x)`; strictly negative for both models.
    pub fn d2_ln_cdf(self, x: f64) -> f64 {
        match self {
            ModelKind::Logistic => {
                let p = logistic(x);
                -p * (1.0 - p)
            }
            ModelKind::Normal => {
                let g = normal_mills(x);
                -g * (x + g)
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Logistic => "logistic",
            ModelKind::Normal => "normal",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "logistic" | "bt" | "bradley-terry" => Ok(ModelKind::Logistic),
            "normal" | "thurstone" => Ok(ModelKind::Normal),
            other => Err(format!(
                "unknown model `{other}` (expected logistic or normal)"
            )),
        }
    }
}

fn logistic(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// `ln(1 + exp(x))` without overflow.
fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// Inverse Mills ratio `phi(x) / Phi(x)`.
fn normal_mills(x: f64) -> f64 {
    if x >= NORMAL_TAIL {
        let density = (-0.5 * x * x).exp() / (2.0 * PI).sqrt();
        density / (0.5 * erfc(-x / SQRT_2))
    } else {
        // continued-fraction tail: phi/Phi ~ -x / (1 - 1/x^2 + 3/x^4)
        let x2 = x * x;
        -x / (1.0 - 1.0 / x2 + 3.0 / (x2 * x2))
    }
}
