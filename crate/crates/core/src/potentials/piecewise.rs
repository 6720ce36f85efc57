use std::hash::{Hash, Hasher};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::Domain;

/// A potential that is polynomial between breakpoints and may jump across them.
///
/// `pieces[0]` lives left of the first breakpoint, `pieces[i]` on
/// `[breakpoints[i-1], breakpoints[i])`. Coefficients are in ascending degree
/// of the global coordinate `x`; an empty list is the zero polynomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewisePotential {
    breakpoints: Vec<f64>,
    pieces: Vec<Vec<f64>>,
    domain: Domain,
}

impl PiecewisePotential {
    pub fn new(breakpoints: Vec<f64>, pieces: Vec<Vec<f64>>, domain: Domain) -> Result<Self> {
        if pieces.len() != breakpoints.len() + 1 {
            return Err(Error::Potential(format!(
                "{} breakpoints need {} pieces, got {}",
                breakpoints.len(),
                breakpoints.len() + 1,
                pieces.len()
            )));
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Potential(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        for &a in &breakpoints {
            let interior = match domain {
                Domain::UnitInterval => a > 0.0 && a < 1.0,
                Domain::RealLine => a.is_finite(),
            };
            if !interior {
                return Err(Error::Potential(format!(
                    "breakpoint {a} is not interior to the domain"
                )));
            }
        }
        if pieces.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::Potential("non-finite polynomial coefficient".into()));
        }
        if domain == Domain::RealLine {
            let outer = [pieces.first(), pieces.last()];
            if outer.into_iter().flatten().any(|p| degree(p) > 0) {
                return Err(Error::Potential(
                    "on the real line the unbounded outer pieces must be constant".into(),
                ));
            }
        }
        Ok(Self {
            breakpoints,
            pieces,
            domain,
        })
    }

    pub fn zero(domain: Domain) -> Self {
        Self {
            breakpoints: Vec::new(),
            pieces: vec![Vec::new()],
            domain,
        }
    }

    pub fn constant(value: f64, domain: Domain) -> Result<Self> {
        Self::new(Vec::new(), vec![vec![value]], domain)
    }

    /// Sum of `weight · 1_[a,b]` indicators on the unit interval.
    pub fn indicators(parts: &[(f64, f64, f64)]) -> Result<Self> {
        let mut cuts: Vec<f64> = parts
            .iter()
            .flat_map(|&(a, b, _)| [a, b])
            .filter(|&x| x > 0.0 && x < 1.0)
            .collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut edges = vec![0.0];
        edges.extend(&cuts);
        edges.push(1.0);
        let pieces = edges
            .windows(2)
            .map(|w| {
                let mid = 0.5 * (w[0] + w[1]);
                let v: f64 = parts
                    .iter()
                    .filter(|&&(a, b, _)| a <= mid && mid <= b)
                    .map(|&(_, _, c)| c)
                    .sum();
                vec![v]
            })
            .collect();
        Self::new(cuts, pieces, Domain::UnitInterval)
    }

    /// The step 1_{[a, ∞)} on the real line.
    pub fn step(a: f64) -> Result<Self> {
        Self::new(vec![a], vec![vec![0.0], vec![1.0]], Domain::RealLine)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Vec<f64>] {
        &self.pieces
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().flatten().all(|&c| c == 0.0)
    }

    pub fn value(&self, x: f64) -> f64 {
        let idx = self.breakpoints.partition_point(|&a| a <= x);
        eval_poly(&self.pieces[idx], x)
    }

    /// Pieces clipped to `[lo, hi]`, as `(a, b, coefficients)` with zero pieces dropped.
    pub fn segments(&self, lo: f64, hi: f64) -> Vec<(f64, f64, &[f64])> {
        let mut out = Vec::new();
        for (i, coeffs) in self.pieces.iter().enumerate() {
            let a = if i == 0 { lo } else { self.breakpoints[i - 1].max(lo) };
            let b = if i == self.breakpoints.len() {
                hi
            } else {
                self.breakpoints[i].min(hi)
            };
            if b > a && coeffs.iter().any(|&c| c != 0.0) {
                out.push((a, b, coeffs.as_slice()));
            }
        }
        out
    }

    /// Stable content hash used as a cache key.
    pub fn content_hash(&self) -> u64 {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.domain.hash(&mut h);
        for a in &self.breakpoints {
            a.to_bits().hash(&mut h);
        }
        for p in &self.pieces {
            p.len().hash(&mut h);
            for c in p {
                c.to_bits().hash(&mut h);
            }
        }
        h.finish()
    }
}

fn degree(p: &[f64]) -> usize {
    p.iter().rposition(|&c| c != 0.0).unwrap_or(0)
}

pub(crate) fn eval_poly(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// e^{iπνx} with the phase reduced modulo 2π before evaluation.
pub(crate) fn cis_pi(nu: f64, x: f64) -> Complex64 {
    let turns = (nu * x).rem_euclid(2.0);
    let (s, c) = (std::f64::consts::PI * turns).sin_cos();
    Complex64::new(c, s)
}

/// ∫_a^b p(x) e^{iπνx} dx in closed form.
///
/// For ν ≠ 0 uses the antiderivative
/// e^{iαx} Σ_j (-1)^j p^{(j)}(x) / (iα)^{j+1} with α = πν.
pub(crate) fn poly_exp_integral(p: &[f64], nu: f64, a: f64, b: f64) -> Complex64 {
    if p.is_empty() || a == b {
        return Complex64::new(0.0, 0.0);
    }
    if nu == 0.0 {
        let prim = |x: f64| {
            p.iter()
                .enumerate()
                .rev()
                .fold(0.0, |acc, (n, &c)| acc * x + c / (n as f64 + 1.0))
                * x
        };
        return Complex64::new(prim(b) - prim(a), 0.0);
    }
    let ia = Complex64::new(0.0, std::f64::consts::PI * nu);
    let antiderivative = |x: f64| {
        let mut deriv = p.to_vec();
        let mut sum = Complex64::new(0.0, 0.0);
        let mut denom = ia;
        let mut sign = 1.0;
        while !deriv.is_empty() {
            sum += sign * eval_poly(&deriv, x) / denom;
            deriv = deriv
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, &c)| n as f64 * c)
                .collect();
            denom *= ia;
            sign = -sign;
        }
        cis_pi(nu, x) * sum
    };
    antiderivative(b) - antiderivative(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate_adaptive, AdaptiveOptions};

    #[test]
    fn validation() {
        let d = Domain::UnitInterval;
        assert!(PiecewisePotential::new(vec![0.5], vec![vec![1.0]], d).is_err());
        assert!(PiecewisePotential::new(vec![0.6, 0.5], vec![vec![]; 3], d).is_err());
        assert!(PiecewisePotential::new(vec![1.0], vec![vec![]; 2], d).is_err());
        assert!(PiecewisePotential::new(vec![0.0], vec![vec![], vec![1.0, 2.0]], Domain::RealLine).is_err());
        assert!(PiecewisePotential::step(0.3).is_ok());
    }

    #[test]
    fn indicator_sum() {
        let mu = PiecewisePotential::indicators(&[(0.0, 0.5, 1.0), (0.25, 0.75, 1.0)]).unwrap();
        assert_eq!(mu.breakpoints(), &[0.25, 0.5, 0.75]);
        assert_eq!(mu.value(0.1), 1.0);
        assert_eq!(mu.value(0.3), 2.0);
        assert_eq!(mu.value(0.6), 1.0);
        assert_eq!(mu.value(0.9), 0.0);
    }

    #[test]
    fn closed_form_matches_quadrature() {
        let p = [0.3, -1.2, 2.0, 0.7];
        for nu in [0.0, 3.0, -17.5, 250.0] {
            let exact = poly_exp_integral(&p, nu, 0.1, 0.8);
            let alpha = std::f64::consts::PI * nu;
            let quad = integrate_adaptive(
                |x| eval_poly(&p, x) * Complex64::from_polar(1.0, alpha * x),
                0.1,
                0.8,
                AdaptiveOptions::default(),
            )
            .unwrap();
            assert!((exact - quad).norm() < 1e-13, "nu={nu}");
        }
    }
}
