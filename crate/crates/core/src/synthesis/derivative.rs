use serde::{Deserialize, Serialize};

use super::tangent::project_tangent;
use crate::error::{Error, Result};
use crate::propagator::{ControlSignal, Propagator, StateVector};

pub const DERIVATIVE_EPSILONS: [f64; 3] = [1e-2, 1e-3, 1e-4];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivativeCheck {
    pub epsilons: Vec<f64>,
    pub errors: Vec<f64>,
    /// Least-squares slope of log e(ε) against log ε; absent when every error is zero.
    pub slope: Option<f64>,
}

/// e(ε) = ‖Ψ(u+εv) - Ψ(u) - ε·P ξ(T)‖ with Ψ(u) = P ψ(T; u) started at φ_l.
pub fn endpoint_derivative_check(
    prop: &Propagator,
    u: &ControlSignal,
    v: &ControlSignal,
    l: i64,
    epsilons: &[f64],
) -> Result<DerivativeCheck> {
    if epsilons.len() < 2 {
        return Err(Error::invalid("slope fit needs at least two step sizes"));
    }
    let model = prop.model();
    let n = prop.len();
    let t = u.horizon();
    let norm = model.h1_norm();
    let psi0 = StateVector::basis(model, n, l)?;
    let pair = prop.evolve_tangent(&psi0, &StateVector::zeros(model, n), u, v)?;
    let base = project_tangent(&pair.state, l, t)?;
    let dxi = project_tangent(&pair.tangent, l, t)?;
    let mut errors = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let moved = prop.evolve(&psi0, &u.add(&v.scale(eps))?)?;
        let e = project_tangent(&moved, l, t)?
            .sub(&base)?
            .sub(&dxi.scale(eps.into()))?
            .norm(norm)?;
        errors.push(e);
    }
    let slope = if errors.iter().all(|&e| e == 0.0) {
        None
    } else {
        let pts: Vec<(f64, f64)> = epsilons
            .iter()
            .zip(&errors)
            .filter(|(_, &e)| e > 0.0)
            .map(|(&x, &e)| (x.ln(), e.ln()))
            .collect();
        let m = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        (sxx > 0.0).then(|| sxy / sxx)
    };
    Ok(DerivativeCheck {
        epsilons: epsilons.to_vec(),
        errors,
        slope,
    })
}
