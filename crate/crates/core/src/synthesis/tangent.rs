use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::moments::{MomentProblem, MomentSolver};
use crate::propagator::{ControlSignal, Propagator, StateVector};

/// Removes Re⟨ψ, φ_l(T)⟩·φ_l(T), the real-orthogonal projection onto the
/// tangent space of the unit sphere at the eigensolution φ_l(T).
pub fn project_tangent(psi: &StateVector, l: i64, horizon: f64) -> Result<StateVector> {
    let lambda = psi.model().eigenvalue(l)?;
    let pos = psi
        .position(l)
        .ok_or_else(|| Error::domain(format!("index {l} is outside the state window")))?;
    let mut out = psi.clone();
    let phase = Complex64::from_polar(1.0, lambda * horizon);
    let c = out.coefficients()[pos];
    out.coefficients_mut()[pos] = c - (c * phase).re * phase.conj();
    Ok(out)
}

/// Coupling coefficients below this magnitude make a mode uncontrollable.
pub const DEFECT_THRESHOLD: f64 = 1e-12;

/// Control v whose linearized response around φ_l reaches `target` on the K
/// lowest modes at time T.
///
/// Builds the moment targets x_k = i e^{iλ_kT}⟨target, φ_k⟩ / ⟨μφ_l, φ_k⟩
/// at frequencies λ_k - λ_l and solves them with `solver`, whose step count
/// must match the grid later used for propagation.
pub fn linearized_control(
    target: &StateVector,
    prop: &Propagator,
    l: i64,
    horizon: f64,
    k_window: usize,
    solver: &MomentSolver,
) -> Result<ControlSignal> {
    let model = prop.model();
    let window = model.window(k_window);
    if window.len() > prop.len() {
        return Err(Error::invalid(format!(
            "moment window K={k_window} exceeds the truncation N={}",
            prop.len()
        )));
    }
    if !window.contains(&l) {
        return Err(Error::invalid(format!("mode {l} is not in the moment window")));
    }
    let lambda_l = model.eigenvalue(l)?;
    let column = prop.coupling().column(l)?;
    let mut freqs = Vec::with_capacity(window.len());
    let mut targets = Vec::with_capacity(window.len());
    for &k in &window {
        let pos = prop.indices().binary_search(&k).expect("window inside truncation");
        let b = column[pos];
        if b.norm() <= DEFECT_THRESHOLD {
            return Err(Error::ControllabilityDefect {
                k,
                magnitude: b.norm(),
            });
        }
        let lambda_k = prop.eigenvalues()[pos];
        let c = target.coefficient(k).unwrap_or_default();
        freqs.push(lambda_k - lambda_l);
        targets.push(Complex64::new(0.0, 1.0) * Complex64::from_polar(1.0, lambda_k * horizon) * c / b);
    }
    if targets.iter().all(|x| x.norm() == 0.0) {
        return ControlSignal::zero(horizon, solver.steps);
    }
    let problem = MomentProblem::new(horizon, freqs, targets)?;
    Ok(solver.solve(&problem)?.control)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::SpectralModel;

    #[test]
    fn eigensolution_projects_to_zero() {
        let d = SpectralModel::dirichlet();
        let t = 0.37;
        let psi = StateVector::eigensolution(&d, 6, 2, t).unwrap();
        let p = project_tangent(&psi, 2, t).unwrap();
        assert!(p.l2_norm() < 1e-15);
        let i_psi = psi.scale(Complex64::new(0.0, 1.0));
        let q = project_tangent(&i_psi, 2, t).unwrap();
        assert!(q.sub(&i_psi).unwrap().l2_norm() < 1e-15);
    }
}
