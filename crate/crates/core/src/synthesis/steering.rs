use serde::{Deserialize, Serialize};

use super::tangent::{linearized_control, project_tangent};
use crate::error::{Error, Result};
use crate::moments::MomentSolver;
use crate::propagator::{ControlSignal, Propagator, StateVector};

const UNIT_TOL: f64 = 1e-12;

/// Steer ψ₀ ≈ φ_l to ψ₁ ≈ φ_l(T) in time T.
#[derive(Debug, Clone)]
pub struct SteeringProblem {
    pub l: i64,
    pub horizon: f64,
    pub psi0: StateVector,
    pub psi1: StateVector,
    /// Stop once the windowed residual drops below this, in the model's H¹ norm.
    pub tolerance: f64,
    pub max_iters: usize,
    /// Time steps of every control and propagation.
    pub steps: usize,
}

impl SteeringProblem {
    /// Checks unit norms and that both states lie within `radius` (model H¹
    /// norm) of φ_l and φ_l(T).
    pub fn validate(&self, radius: f64) -> Result<()> {
        for (name, psi) in [("psi0", &self.psi0), ("psi1", &self.psi1)] {
            let n = psi.l2_norm();
            if (n - 1.0).abs() > UNIT_TOL {
                return Err(Error::invalid(format!("{name} has L2 norm {n}, expected 1")));
            }
        }
        let model = self.psi0.model();
        let n = self.psi0.len();
        let norm = model.h1_norm();
        let d0 = self.psi0.sub(&StateVector::basis(model, n, self.l)?)?.norm(norm)?;
        let d1 = self
            .psi1
            .sub(&StateVector::eigensolution(model, n, self.l, self.horizon)?)?
            .norm(norm)?;
        if d0 > radius || d1 > radius {
            return Err(Error::invalid(format!(
                "states are {d0:.3e} and {d1:.3e} away from the eigensolution, beyond radius {radius:.3e}"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SteeringReport {
    pub iterations: Vec<usize>,
    /// Projected residual on the K controlled modes, model H¹ norm.
    pub residual_h1: Vec<f64>,
    pub control_l2_norm: f64,
    pub converged: bool,
    pub final_error: f64,
    /// H¹ norm of ψ₁ - ψ(T) outside the controlled window.
    pub tail_residual_h1: f64,
    /// ‖ψ(T)‖_{L²} for the returned control.
    pub final_l2_norm: f64,
}

/// Quasi-Newton iteration uⁿ⁺¹ = uⁿ + vⁿ with the linearization frozen at φ_l.
///
/// Only the K lowest modes are steered, so the residual is measured on that
/// window; the remainder is reported as `tail_residual_h1`. Growth of the
/// residual on two consecutive iterations aborts with the history.
pub fn steer(
    problem: &SteeringProblem,
    prop: &Propagator,
    k_window: usize,
) -> Result<(ControlSignal, SteeringReport)> {
    let model = prop.model();
    if 2 * k_window > prop.len() {
        return Err(Error::invalid(format!(
            "moment window K={k_window} must be at most N/2 = {}",
            prop.len() / 2
        )));
    }
    let window = model.window(k_window);
    let norm = model.h1_norm();
    let solver = MomentSolver::with_steps(problem.steps);
    let mut u = ControlSignal::zero(problem.horizon, problem.steps)?;
    let mut history = Vec::new();
    let mut converged = false;
    let mut last_state;
    let mut last_diff;
    let mut it = 0;
    loop {
        last_state = prop.evolve(&problem.psi0, &u)?;
        last_diff = problem.psi1.sub(&last_state)?;
        let r = project_tangent(&last_diff.restrict(&window), problem.l, problem.horizon)?;
        let res = r.norm(norm)?;
        history.push(res);
        if res <= problem.tolerance {
            converged = true;
            break;
        }
        let n = history.len();
        if n >= 3 && history[n - 1] > history[n - 2] && history[n - 2] > history[n - 3] {
            return Err(Error::NonConvergence { history });
        }
        if it == problem.max_iters {
            break;
        }
        let v = linearized_control(&r, prop, problem.l, problem.horizon, k_window, &solver)?;
        u = u.add(&v)?;
        it += 1;
    }
    let tail = last_diff.sub(&last_diff.restrict(&window))?.norm(norm)?;
    let report = SteeringReport {
        iterations: (0..history.len()).collect(),
        final_error: *history.last().expect("at least one iterate"),
        residual_h1: history,
        control_l2_norm: u.l2_norm(),
        converged,
        tail_residual_h1: tail,
        final_l2_norm: last_state.l2_norm(),
    };
    Ok((u, report))
}
