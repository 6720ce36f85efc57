//! Reference potentials used across tests, the CLI and the acceptance suite.

use super::PiecewisePotential;
use crate::spectral::Domain;

/// μ = 1_[0,1/2] + 1_[1/4,3/4] on (0, 1).
pub fn dirichlet_indicators() -> PiecewisePotential {
    PiecewisePotential::indicators(&[(0.0, 0.5, 1.0), (0.25, 0.75, 1.0)])
        .expect("valid indicator sum")
}

/// μ = x·1_[0,1/2] on (0, 1).
pub fn periodic_ramp() -> PiecewisePotential {
    PiecewisePotential::new(vec![0.5], vec![vec![0.0, 1.0], vec![]], Domain::UnitInterval)
        .expect("valid ramp")
}

/// μ = 1_[1/3,2/3] on (0, 1).
pub fn middle_third() -> PiecewisePotential {
    PiecewisePotential::indicators(&[(1.0 / 3.0, 2.0 / 3.0, 1.0)]).expect("valid indicator")
}

/// μ = 1_[0,r] with r = √2 - 1.
pub fn irrational_step() -> PiecewisePotential {
    PiecewisePotential::indicators(&[(0.0, std::f64::consts::SQRT_2 - 1.0, 1.0)])
        .expect("valid indicator")
}

/// μ = 1_[a,∞) on the real line.
pub fn half_line(a: f64) -> PiecewisePotential {
    PiecewisePotential::step(a).expect("finite breakpoint")
}
