use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::pcm::Ipcm;
use crate::vectors::WeightVector;

/// Logarithmic least squares weights of a (possibly incomplete) matrix.
///
/// Minimizes `sum over known (i, j) of (ln a_ij - ln w_i + ln w_j)^2` by
/// solving the graph-Laplacian normal equations `L y = r` with `y_0 = 0`.
pub fn llsm(a: &Ipcm) -> Result<WeightVector> {
    let n = a.n();
    let graph = a.representing_graph();
    if n == 0 || !graph.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    if n == 1 {
        return Ok(WeightVector::uniform(1));
    }
    // unknowns y_1..y_{n-1}; row/column k stands for vertex k + 1
    let mut lap = DMatrix::<f64>::zeros(n - 1, n - 1);
    let mut rhs = DVector::<f64>::zeros(n - 1);
    for (i, j, value) in a.known_pairs() {
        let r = value.ln();
        if i > 0 {
            lap[(i - 1, i - 1)] += 1.0;
            rhs[i - 1] += r;
        }
        if j > 0 {
            lap[(j - 1, j - 1)] += 1.0;
            rhs[j - 1] -= r;
        }
        if i > 0 && j > 0 {
            lap[(i - 1, j - 1)] -= 1.0;
            lap[(j - 1, i - 1)] -= 1.0;
        }
    }
    let y = lap.cholesky().ok_or(Error::DisconnectedGraph)?.solve(&rhs);
    let mut values = Vec::with_capacity(n);
    values.push(1.0);
    values.extend(y.iter().map(|v| v.exp()));
    WeightVector::normalized(values)
}
