//! Truncated Galerkin simulation of the bilinear Schrödinger equation.

mod control;
mod coupling;
mod linearized;
mod norms;
mod state;
mod strang;

use serde::{Deserialize, Serialize};

pub use control::{exp_integral, ControlSignal, ExpSum, ExpTerm};
pub use coupling::CouplingMatrix;
pub use linearized::propagate_linearized;
pub use norms::NormKind;
pub use state::StateVector;
pub use strang::{Propagator, TangentPair};

use crate::error::Result;

/// Long-format trajectory row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRow {
    pub t: f64,
    pub k: i64,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormRow {
    pub t: f64,
    pub l2: f64,
    pub h1: f64,
}

pub fn trajectory_rows(trajectory: &[(f64, StateVector)]) -> Vec<TrajectoryRow> {
    trajectory
        .iter()
        .flat_map(|(t, psi)| {
            psi.indices()
                .iter()
                .zip(psi.coefficients().iter())
                .map(move |(&k, c)| TrajectoryRow {
                    t: *t,
                    k,
                    re: c.re,
                    im: c.im,
                })
        })
        .collect()
}

pub fn norm_rows(trajectory: &[(f64, StateVector)], h1: NormKind) -> Result<Vec<NormRow>> {
    trajectory
        .iter()
        .map(|(t, psi)| {
            Ok(NormRow {
                t: *t,
                l2: psi.l2_norm(),
                h1: psi.norm(h1)?,
            })
        })
        .collect()
}
