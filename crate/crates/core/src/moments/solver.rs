use nalgebra::{Cholesky, DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::problem::{symmetrize, MomentProblem};
use crate::error::{Error, Result};
use crate::propagator::{exp_integral, ControlSignal, ExpSum, ExpTerm};

/// G[m][j] = ∫₀^T e^{i(μ_m - μ_j)s} ds, the Gram matrix of the family e^{-iμ_j t}.
pub fn gram_matrix(frequencies: &[f64], horizon: f64) -> DMatrix<Complex64> {
    let n = frequencies.len();
    let rows: Vec<Vec<Complex64>> = frequencies
        .par_iter()
        .map(|&wm| {
            frequencies
                .iter()
                .map(|&wj| exp_integral(wm - wj, horizon))
                .collect()
        })
        .collect();
    DMatrix::from_fn(n, n, |m, j| rows[m][j])
}

fn extreme_eigenvalues(gram: &DMatrix<Complex64>) -> (f64, f64) {
    let eig = SymmetricEigen::new(gram.clone());
    let max = eig.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    (min, max)
}

/// λ_max/λ_min of the Gram matrix; infinite when it is singular.
pub fn condition_number(gram: &DMatrix<Complex64>) -> f64 {
    let (min, max) = extreme_eigenvalues(gram);
    if min <= 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Condition number of the Gram matrix over the given frequencies.
pub fn gram_condition(frequencies: &[f64], horizon: f64) -> f64 {
    condition_number(&gram_matrix(frequencies, horizon))
}

/// Opt-in diagonal regularization G + αI.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tikhonov {
    /// Defaults to 1e-10·trace(G) when absent.
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentSolver {
    pub condition_cap: f64,
    pub tikhonov: Option<Tikhonov>,
    /// Time steps of the sampled control.
    pub steps: usize,
}

impl Default for MomentSolver {
    fn default() -> Self {
        Self {
            condition_cap: 1e12,
            tikhonov: None,
            steps: 4096,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentSolution {
    pub horizon: f64,
    pub control: ControlSignal,
    /// Original frequencies, in input order.
    pub frequencies: Vec<f64>,
    pub targets: Vec<Complex64>,
    /// Merged symmetric frequencies μ_j.
    pub merged_frequencies: Vec<f64>,
    /// u(t) = Σ_j c_j e^{-iμ_j t}
    pub coefficients: Vec<Complex64>,
    /// Moments of the returned control minus targets, per original frequency.
    pub residuals: Vec<Complex64>,
    pub residual_max: f64,
    pub gram_condition: f64,
    /// Regularization actually applied, if any.
    pub alpha: Option<f64>,
}

impl MomentSolver {
    pub fn with_steps(steps: usize) -> Self {
        Self {
            steps,
            ..Self::default()
        }
    }

    /// Least-norm real control reproducing the moments.
    pub fn solve(&self, problem: &MomentProblem) -> Result<MomentSolution> {
        if self.steps == 0 {
            return Err(Error::invalid("moment solver needs at least one time step"));
        }
        let sym = symmetrize(problem)?;
        let t = problem.horizon;
        let n = sym.len();
        let mut gram = gram_matrix(&sym.frequencies, t);
        let condition = condition_number(&gram);
        let mut alpha = None;
        if !(condition <= self.condition_cap) {
            match self.tikhonov {
                None => {
                    return Err(Error::IllConditioned {
                        condition,
                        cap: self.condition_cap,
                    })
                }
                Some(tk) => {
                    let trace: f64 = gram.diagonal().iter().map(|z| z.re).sum();
                    let a = tk.alpha.unwrap_or(1e-10 * trace);
                    for i in 0..n {
                        gram[(i, i)] += Complex64::new(a, 0.0);
                    }
                    alpha = Some(a);
                }
            }
        }

        let y = DVector::from_vec(sym.targets.clone());
        let chol = Cholesky::new(gram.clone()).ok_or(Error::NotPositiveDefinite)?;
        let mut c = chol.solve(&y);
        let r = &y - &gram * &c;
        c += chol.solve(&r);

        // u real ⇔ c(-μ) = conj(c(μ)); mirror pairs sit at i and n-1-i
        let raw = c.clone();
        for i in 0..n {
            c[i] = 0.5 * (raw[i] + raw[n - 1 - i].conj());
        }

        let sum = ExpSum::new(
            sym.frequencies
                .iter()
                .zip(c.iter())
                .map(|(&mu, &amp)| ExpTerm { freq: -mu, amp })
                .collect(),
        );
        let control = ControlSignal::from_exp_sum(t, self.steps, sum)?;
        let achieved = control.exact_moments(&problem.frequencies);
        let residuals: Vec<Complex64> = achieved
            .iter()
            .zip(&problem.targets)
            .map(|(a, x)| a - x)
            .collect();
        let residual_max = residuals.iter().fold(0.0f64, |m, r| m.max(r.norm()));
        Ok(MomentSolution {
            horizon: t,
            control,
            frequencies: problem.frequencies.clone(),
            targets: problem.targets.clone(),
            merged_frequencies: sym.frequencies,
            coefficients: c.iter().copied().collect(),
            residuals,
            residual_max,
            gram_condition: condition,
            alpha,
        })
    }
}

/// Solves with the default solver.
pub fn solve(problem: &MomentProblem) -> Result<MomentSolution> {
    MomentSolver::default().solve(problem)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_targets_give_zero_control() {
        let p = MomentProblem::new(1.0, vec![0.0, 3.0, 7.0], vec![Complex64::new(0.0, 0.0); 3]).unwrap();
        let s = solve(&p).unwrap();
        assert!(s.control.samples().iter().all(|&u| u == 0.0));
        assert_eq!(s.residual_max, 0.0);
    }

    #[test]
    fn single_zero_frequency() {
        let p = MomentProblem::new(2.0, vec![0.0], vec![Complex64::new(3.0, 0.0)]).unwrap();
        let s = solve(&p).unwrap();
        assert!(s.control.samples().iter().all(|&u| (u - 1.5).abs() < 1e-14));
    }

    #[test]
    fn gram_is_hermitian_with_horizon_diagonal() {
        let g = gram_matrix(&[-4.0, 0.0, 1.5, 9.0], 0.8);
        for m in 0..4 {
            assert!((g[(m, m)] - Complex64::new(0.8, 0.0)).norm() < 1e-15);
            for j in 0..4 {
                assert!((g[(m, j)] - g[(j, m)].conj()).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn ill_conditioning_is_reported_unless_regularized() {
        let p = MomentProblem::new(
            1.0,
            vec![1.0, 1.0 + 1e-7],
            vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
        )
        .unwrap();
        assert!(matches!(solve(&p), Err(Error::IllConditioned { .. })));
        let solver = MomentSolver {
            tikhonov: Some(Tikhonov { alpha: None }),
            ..MomentSolver::default()
        };
        let s = solver.solve(&p).unwrap();
        assert!(s.alpha.unwrap() > 0.0);
        assert!(s.residual_max.is_finite());
    }
}
