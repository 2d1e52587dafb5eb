use rand::Rng;

use crate::data::DataMatrix;
use crate::error::{Error, Result};
use crate::vectors::WeightVector;

/// `n` independent uniform integers from 1 to 9, normalized to sum one.
pub fn draw_initial_weights<R: Rng + ?Sized>(rng: &mut R, n: usize) -> WeightVector {
    let draws = (0..n)
        .map(|_| f64::from(rng.random_range(1u8..=9)))
        .collect();
    WeightVector::normalized(draws).expect("draws are positive")
}

/// Adds independent uniform noise on `[-level, level]` to every `worse`
/// probability and sets `better = 1 - worse`.
///
/// Offsets that would leave `(epsilon, 1 - epsilon)` are redrawn, pairs are
/// visited in lexicographic order.
pub fn perturb_data<R: Rng + ?Sized>(
    d: &DataMatrix,
    level: f64,
    rng: &mut R,
    epsilon: f64,
) -> Result<DataMatrix> {
    if !(0.0..1.0).contains(&level) {
        return Err(Error::InvalidInput(format!(
            "perturbation must lie in [0, 1), got {level}"
        )));
    }
    if level == 0.0 {
        return Ok(d.clone());
    }
    let mut out = DataMatrix::new(d.n());
    for ((i, j), o) in d.pairs() {
        let p = o.worse;
        // the admissible offsets must have positive measure
        if !(p + level > epsilon && p - level < 1.0 - epsilon) {
            return Err(Error::InvalidInput(format!(
                "probability {p} of pair ({i}, {j}) cannot be perturbed into ({epsilon}, {})",
                1.0 - epsilon
            )));
        }
        let perturbed = loop {
            let candidate = p + rng.random_range(-level..=level);
            if candidate > epsilon && candidate < 1.0 - epsilon {
                break candidate;
            }
        };
        out.insert(i, j, perturbed, 1.0 - perturbed)?;
    }
    Ok(out)
}
