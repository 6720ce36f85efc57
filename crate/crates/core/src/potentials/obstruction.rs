use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::coefficients::inner_product_with;
use super::{Method, PiecewisePotential};
use crate::error::{Error, Result};
use crate::spectral::{Domain, SpectralModel};

/// Weighted Neumann coefficients (k+1)|⟨μ, φ_k⟩| for k = 1..=K.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub window: i64,
    pub weighted: Vec<f64>,
    pub running_min: Vec<f64>,
    /// Indices whose weighted coefficient is at most `zero_threshold`.
    pub zeros: Vec<i64>,
    pub zero_threshold: f64,
    /// Indices where the running minimum strictly drops.
    pub record_lows: Vec<(i64, f64)>,
}

impl ObstructionReport {
    pub fn first_value(&self) -> f64 {
        self.weighted[0]
    }

    pub fn final_min(&self) -> f64 {
        *self.running_min.last().expect("nonempty scan")
    }

    pub fn weighted_at(&self, k: i64) -> Option<f64> {
        usize::try_from(k - 1).ok().and_then(|i| self.weighted.get(i).copied())
    }
}

/// Scans (k+1)|⟨μφ_0, φ_k⟩| on the Neumann basis; φ_0 = 1, so this is (k+1)|⟨μ, φ_k⟩|.
///
/// A running minimum that keeps falling exhibits the failure of any lower
/// bound C/(k+1). The scan is evidence over a window, never a certificate.
pub fn neumann_obstruction_scan(
    mu: &PiecewisePotential,
    window: i64,
    zero_threshold: f64,
) -> Result<ObstructionReport> {
    if mu.domain() != Domain::UnitInterval {
        return Err(Error::Potential(
            "obstruction scan needs a potential on the unit interval".into(),
        ));
    }
    if window < 1 {
        return Err(Error::invalid(format!("scan window must be >= 1, got {window}")));
    }
    let model = SpectralModel::neumann();
    let weighted = (1..=window)
        .into_par_iter()
        .map(|k| {
            let c = inner_product_with(mu, &model, 0, k, Method::ClosedForm)?;
            Ok((k + 1) as f64 * c.norm())
        })
        .collect::<Result<Vec<f64>>>()?;

    let mut running_min = Vec::with_capacity(weighted.len());
    let mut record_lows = Vec::new();
    let mut current = f64::INFINITY;
    for (i, &w) in weighted.iter().enumerate() {
        if w < current {
            current = w;
            record_lows.push((i as i64 + 1, w));
        }
        running_min.push(current);
    }
    let zeros = weighted
        .iter()
        .enumerate()
        .filter(|(_, &w)| w <= zero_threshold)
        .map(|(i, _)| i as i64 + 1)
        .collect();
    Ok(ObstructionReport {
        window,
        weighted,
        running_min,
        zeros,
        zero_threshold,
        record_lows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::examples;
    use std::f64::consts::{PI, SQRT_2};

    #[test]
    fn middle_third_matches_closed_form() {
        let r = neumann_obstruction_scan(&examples::middle_third(), 300, 1e-12).unwrap();
        for k in 1..=300i64 {
            let kf = k as f64;
            let exact = SQRT_2 * ((2.0 * kf * PI / 3.0).sin() - (kf * PI / 3.0).sin()) / (kf * PI);
            let got = r.weighted_at(k).unwrap();
            assert!((got - (kf + 1.0) * exact.abs()).abs() < 1e-12, "k={k}");
        }
        assert!(r.zeros.iter().all(|&k| k % 3 == 0 || k % 2 == 1));
        assert!((3..=300).step_by(3).all(|k| r.zeros.contains(&k)));
    }

    #[test]
    fn constant_potential_is_orthogonal() {
        let mu = PiecewisePotential::constant(1.0, Domain::UnitInterval).unwrap();
        let r = neumann_obstruction_scan(&mu, 10, 1e-12).unwrap();
        assert!(r.weighted.iter().all(|&w| w < 1e-14));
    }

    #[test]
    fn rejects_real_line() {
        assert!(neumann_obstruction_scan(&examples::half_line(0.0), 5, 1e-12).is_err());
    }
}
