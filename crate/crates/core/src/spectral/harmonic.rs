use std::f64::consts::PI;

use num_complex::Complex64;

use super::{Domain, IndexSet, ModelKind, SpectralBasis};
use crate::potentials::LowerBoundWeight;
use crate::propagator::NormKind;

/// Quantum harmonic oscillator -Δ + x² on ℝ: λ_k = 2k + 1, φ_k the Hermite functions.
#[derive(Debug, Clone, Copy, Default)]
pub struct Harmonic;

/// Normalized Hermite functions φ_0..=φ_kmax at `x`.
///
/// Runs the three-term recurrence on the normalized functions themselves,
/// φ_{k+1} = x√(2/(k+1)) φ_k - √(k/(k+1)) φ_{k-1}, which stays bounded where
/// the Hermite polynomials overflow.
pub fn hermite_functions(kmax: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(kmax + 1);
    let phi0 = PI.powf(-0.25) * (-0.5 * x * x).exp();
    out.push(phi0);
    if kmax == 0 {
        return out;
    }
    out.push(std::f64::consts::SQRT_2 * x * phi0);
    for k in 1..kmax {
        let kf = k as f64;
        let next = x * (2.0 / (kf + 1.0)).sqrt() * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

pub fn hermite_function(k: usize, x: f64) -> f64 {
    hermite_functions(k, x)[k]
}

impl SpectralBasis for Harmonic {
    fn name(&self) -> &'static str {
        "harmonic"
    }

    fn kind(&self) -> ModelKind {
        ModelKind::Harmonic
    }

    fn index_set(&self) -> IndexSet {
        IndexSet::NonnegativeIntegers
    }

    fn domain(&self) -> Domain {
        Domain::RealLine
    }

    fn real_eigenfunctions(&self) -> bool {
        true
    }

    fn eigenvalue_at(&self, k: i64) -> f64 {
        2.0 * k as f64 + 1.0
    }

    fn eigenfunction_at(&self, k: i64, x: f64) -> Complex64 {
        Complex64::new(hermite_function(k as usize, x), 0.0)
    }

    fn eigenfunctions_at(&self, indices: &[i64], x: f64) -> Vec<Complex64> {
        let kmax = indices.iter().copied().max().unwrap_or(0) as usize;
        let all = hermite_functions(kmax, x);
        indices
            .iter()
            .map(|&k| Complex64::new(all[k as usize], 0.0))
            .collect()
    }

    fn h1_norm(&self) -> NormKind {
        NormKind::H1h
    }

    fn lower_bound_weight(&self) -> LowerBoundWeight {
        LowerBoundWeight::InverseSqrtLambda
    }
}
