//! Seeded random data shared by the dynamics commands.

use bqc_core::moments::MomentProblem;
use bqc_core::propagator::StateVector;
use bqc_core::spectral::SpectralModel;
use bqc_core::synthesis::project_tangent;
use num_complex::Complex64;
use rand::Rng;

fn uniform<R: Rng>(rng: &mut R) -> f64 {
    rng.random_range(-1.0..1.0)
}

/// Targets decaying like 1/(1+|k-l|)² on the transition frequencies of the
/// K lowest modes, real at k = l.
pub fn moment_problem<R: Rng>(
    model: &SpectralModel,
    l: i64,
    k: usize,
    horizon: f64,
    rng: &mut R,
) -> anyhow::Result<MomentProblem> {
    let lambda_l = model.eigenvalue(l)?;
    let mut freqs = Vec::with_capacity(k);
    let mut targets = Vec::with_capacity(k);
    for j in model.window(k) {
        freqs.push(model.eigenvalue(j)? - lambda_l);
        let decay = 1.0 / (1.0 + (j - l).abs() as f64).powi(2);
        let re = uniform(rng) * decay;
        let im = if j == l { 0.0 } else { uniform(rng) * decay };
        targets.push(Complex64::new(re, im));
    }
    Ok(MomentProblem::new(horizon, freqs, targets)?)
}

/// Random tangent vector at φ_l(T) on the K lowest modes with the given
/// size in the model's H¹ norm.
pub fn tangent_perturbation<R: Rng>(
    model: &SpectralModel,
    n: usize,
    k: usize,
    l: i64,
    horizon: f64,
    size: f64,
    rng: &mut R,
) -> anyhow::Result<StateVector> {
    let raw: Vec<Complex64> = (0..n).map(|_| Complex64::new(uniform(rng), uniform(rng))).collect();
    let raw = StateVector::from_coefficients(model, raw)?.restrict(&model.window(k));
    let p = project_tangent(&raw, l, horizon)?;
    let norm = p.norm(model.h1_norm())?;
    Ok(p.scale(Complex64::new(size / norm, 0.0)))
}
