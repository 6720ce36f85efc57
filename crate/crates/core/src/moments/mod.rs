//! Trigonometric moment problems over symmetrized frequency families.

mod bessel;
mod problem;
mod solver;

use num_complex::Complex64;

pub use bessel::{bessel_diagnostic, BesselReport};
pub use problem::{symmetrize, MomentProblem, SymmetricProblem, FREQUENCY_TOL};
pub use solver::{
    condition_number, gram_condition, gram_matrix, solve, MomentSolution, MomentSolver, Tikhonov,
};

use crate::propagator::ControlSignal;

/// ∫₀^T u(s) e^{iωs} ds for each ω, from the sampled control.
pub fn moments(u: &ControlSignal, frequencies: &[f64]) -> Vec<Complex64> {
    u.moments(frequencies)
}
