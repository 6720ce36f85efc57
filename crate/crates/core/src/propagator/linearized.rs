use num_complex::Complex64;

use super::{ControlSignal, Propagator, StateVector};
use crate::error::{Error, Result};

/// ξ(T) for the linearization of the flow around the eigensolution φ_l(t)
/// (or around the trajectory of `u_base` from φ_l), with ξ(0) = 0.
///
/// Around u_base ≡ 0 the homogeneous flow is diagonal, so each mode is
/// ξ_k(T) = -i e^{-iλ_kT} ⟨μφ_l, φ_k⟩ ∫₀^T e^{i(λ_k-λ_l)s} v(s) ds and the
/// integral is taken with exact phases. Otherwise the Strang tangent scheme
/// of [`Propagator::evolve_tangent`] is used.
pub fn propagate_linearized(
    prop: &Propagator,
    v: &ControlSignal,
    l: i64,
    u_base: Option<&ControlSignal>,
) -> Result<StateVector> {
    let model = prop.model();
    let n = prop.len();
    match u_base {
        Some(u) if !u.is_zero() => {
            let psi0 = StateVector::basis(model, n, l)?;
            let xi0 = StateVector::zeros(model, n);
            Ok(prop.evolve_tangent(&psi0, &xi0, u, v)?.tangent)
        }
        _ => {
            let lambda_l = model.eigenvalue(l)?;
            let column = prop.coupling().column(l)?;
            let freqs: Vec<f64> = prop.eigenvalues().iter().map(|&lk| lk - lambda_l).collect();
            let moments = v.exact_moments(&freqs);
            let t = v.horizon();
            let coeffs: Vec<Complex64> = prop
                .eigenvalues()
                .iter()
                .zip(column.iter())
                .zip(&moments)
                .map(|((&lk, &b), &m)| Complex64::new(0.0, -1.0) * Complex64::from_polar(1.0, -lk * t) * b * m)
                .collect();
            if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
                return Err(Error::Numeric {
                    step: v.steps(),
                    message: "non-finite linearized state".into(),
                });
            }
            StateVector::from_coefficients(model, coeffs)
        }
    }
}
