use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Find u with ∫₀^T u(s) e^{iω_k s} ds = x_k for every k.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentProblem {
    pub horizon: f64,
    pub frequencies: Vec<f64>,
    pub targets: Vec<Complex64>,
}

/// Relative tolerance under which two frequencies count as equal.
pub const FREQUENCY_TOL: f64 = 1e-10;

fn freq_tol(frequencies: &[f64]) -> f64 {
    FREQUENCY_TOL * frequencies.iter().fold(1.0f64, |m, w| m.max(w.abs()))
}

impl MomentProblem {
    pub fn new(horizon: f64, frequencies: Vec<f64>, targets: Vec<Complex64>) -> Result<Self> {
        if !(horizon > 0.0) || !horizon.is_finite() {
            return Err(Error::invalid(format!("horizon must be positive, got {horizon}")));
        }
        if frequencies.len() != targets.len() {
            return Err(Error::invalid(format!(
                "{} frequencies but {} targets",
                frequencies.len(),
                targets.len()
            )));
        }
        if frequencies.is_empty() {
            return Err(Error::invalid("moment problem without frequencies"));
        }
        if frequencies.iter().any(|w| !w.is_finite())
            || targets.iter().any(|x| !x.re.is_finite() || !x.im.is_finite())
        {
            return Err(Error::invalid("non-finite frequency or target"));
        }
        Ok(Self {
            horizon,
            frequencies,
            targets,
        })
    }

    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    pub fn zero_index(&self) -> Option<usize> {
        let tol = freq_tol(&self.frequencies);
        self.frequencies.iter().position(|w| w.abs() <= tol)
    }
}

/// The problem over {0, ±ω_k} with y(-ω) = conj(y(ω)).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetricProblem {
    pub horizon: f64,
    /// Ascending, so entry i and entry len-1-i are mirror images.
    pub frequencies: Vec<f64>,
    pub targets: Vec<Complex64>,
}

impl SymmetricProblem {
    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }
}

/// Reflects every frequency through zero with the conjugate target.
///
/// Fails when the reflected family is not pairwise distinct (ω_j = ±ω_k for
/// j ≠ k) or when a zero-frequency target is not real.
pub fn symmetrize(problem: &MomentProblem) -> Result<SymmetricProblem> {
    let tol = freq_tol(&problem.frequencies);
    let scale = problem.targets.iter().fold(0.0f64, |m, x| m.max(x.norm()));
    let mut pairs: Vec<(f64, Complex64, usize)> = Vec::with_capacity(2 * problem.len());
    for (i, (&w, &x)) in problem.frequencies.iter().zip(&problem.targets).enumerate() {
        if w.abs() <= tol {
            if x.im.abs() > FREQUENCY_TOL * scale {
                return Err(Error::Degeneracy(format!(
                    "target at zero frequency must be real, got {x}"
                )));
            }
            pairs.push((0.0, Complex64::new(x.re, 0.0), i));
        } else {
            pairs.push((w, x, i));
            pairs.push((-w, x.conj(), i));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    for p in pairs.windows(2) {
        if p[1].0 - p[0].0 <= tol {
            let (a, b) = (problem.frequencies[p[0].2], problem.frequencies[p[1].2]);
            return Err(Error::Degeneracy(format!(
                "frequencies {a} and {b} collide after reflection (ω_j = ±ω_k)"
            )));
        }
    }
    Ok(SymmetricProblem {
        horizon: problem.horizon,
        frequencies: pairs.iter().map(|p| p.0).collect(),
        targets: pairs.iter().map(|p| p.1).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn reflection_without_zero() {
        let p = MomentProblem::new(7.0, vec![1.0], vec![Complex64::new(0.0, 1.0)]).unwrap();
        let s = symmetrize(&p).unwrap();
        assert_eq!(s.frequencies, vec![-1.0, 1.0]);
        assert_eq!(s.targets, vec![Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0)]);
    }

    #[test]
    fn dirichlet_merged_set() {
        let pi2 = PI * PI;
        let w = vec![0.0, 3.0 * pi2, 8.0 * pi2];
        let p = MomentProblem::new(1.0, w, vec![Complex64::new(1.0, 0.0); 3]).unwrap();
        let s = symmetrize(&p).unwrap();
        assert_eq!(s.frequencies, vec![-8.0 * pi2, -3.0 * pi2, 0.0, 3.0 * pi2, 8.0 * pi2]);
    }

    #[test]
    fn complex_zero_target_is_degenerate() {
        let p = MomentProblem::new(1.0, vec![0.0, 2.0], vec![Complex64::new(1.0, 0.5), Complex64::new(1.0, 0.0)])
            .unwrap();
        assert!(matches!(symmetrize(&p), Err(Error::Degeneracy(_))));
    }

    #[test]
    fn mirror_collision_is_degenerate() {
        let p = MomentProblem::new(1.0, vec![2.0, -2.0], vec![Complex64::new(1.0, 0.0); 2]).unwrap();
        assert!(matches!(symmetrize(&p), Err(Error::Degeneracy(_))));
        let p = MomentProblem::new(1.0, vec![2.0, 2.0], vec![Complex64::new(1.0, 0.0); 2]).unwrap();
        assert!(matches!(symmetrize(&p), Err(Error::Degeneracy(_))));
    }
}
