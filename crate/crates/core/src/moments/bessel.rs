use nalgebra::{DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::solver::gram_matrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselReport {
    /// Largest ‖(∫u e^{iω_k t})_k‖ / ‖u‖ seen over the trials.
    pub estimate: f64,
    /// √λ_max(G), the supremum of the same ratio over the whole span.
    pub span_bound: f64,
    pub trials: usize,
}

/// Monte-Carlo lower estimate of the Bessel constant C(T).
///
/// Trial signals are u = Σ c_j e^{-iω_j t} with random complex c, for which
/// the moment vector is Gc and ‖u‖² = c*Gc. The estimate never certifies an
/// upper bound; `span_bound` is the exact supremum over the trial span.
pub fn bessel_diagnostic<R: Rng + ?Sized>(
    frequencies: &[f64],
    horizon: f64,
    trials: usize,
    rng: &mut R,
) -> Result<BesselReport> {
    if frequencies.is_empty() || trials == 0 {
        return Err(Error::invalid("Bessel diagnostic needs frequencies and trials"));
    }
    if !(horizon > 0.0) {
        return Err(Error::invalid(format!("horizon must be positive, got {horizon}")));
    }
    let n = frequencies.len();
    let gram = gram_matrix(frequencies, horizon);
    let mut best = 0.0f64;
    for _ in 0..trials {
        let c = DVector::from_fn(n, |_, _| {
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        let gc = &gram * &c;
        let energy = c.dotc(&gc).re;
        if energy > 0.0 {
            best = best.max((gc.norm_squared() / energy).sqrt());
        }
    }
    let top = SymmetricEigen::new(gram)
        .eigenvalues
        .iter()
        .copied()
        .fold(0.0f64, f64::max);
    Ok(BesselReport {
        estimate: best,
        span_bound: top.sqrt(),
        trials,
    })
}
