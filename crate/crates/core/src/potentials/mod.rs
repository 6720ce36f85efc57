//! Piecewise polynomial control potentials and their spectral coefficients.

mod coefficients;
pub mod examples;
mod hermite;
mod obstruction;
mod piecewise;

pub use coefficients::{
    harmonic_window, inner_product, inner_product_with, verify_lower_bound, CoefficientCache,
    CoefficientEntry, CoefficientRow, CoefficientTable, LowerBoundCheck, LowerBoundWeight, Method,
    DEFAULT_BOUND_THRESHOLD,
};
pub use hermite::{
    half_line_coefficient, harmonic_coefficient_identity, hermite_bound_scan, BoundEntry,
    BoundScan, HalfLineIdentity,
};
pub use obstruction::{neumann_obstruction_scan, ObstructionReport};
pub use piecewise::PiecewisePotential;
