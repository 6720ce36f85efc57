//! Checks specific to the harmonic oscillator with μ = 1_[a,∞).

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use super::coefficients::inner_product_with;
use super::{examples, Method};
use crate::error::{Error, Result};
use crate::spectral::{hermite_function, hermite_functions, SpectralModel};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfLineIdentity {
    pub a: f64,
    pub k: i64,
    /// ∫_a^∞ φ_k φ_0 by quadrature.
    pub lhs: f64,
    /// φ_{k-1}(a) / (2√(k√π)).
    pub rhs: f64,
    pub abs_error: f64,
    /// φ_{k-1}(a) φ_0(a) / √(2k), obtained by integrating the ladder relation.
    pub rhs_corrected: f64,
    pub corrected_error: f64,
}

/// Compares ∫_a^∞ φ_k φ_0 with its closed forms.
pub fn harmonic_coefficient_identity(a: f64, k: i64) -> Result<HalfLineIdentity> {
    if k < 1 {
        return Err(Error::invalid(format!("identity needs k >= 1, got {k}")));
    }
    if !a.is_finite() {
        return Err(Error::invalid(format!("breakpoint must be finite, got {a}")));
    }
    let lhs = inner_product_with(
        &examples::half_line(a),
        &SpectralModel::harmonic(),
        k,
        0,
        Method::Quadrature,
    )?
    .re;
    let prev = hermite_function(k as usize - 1, a);
    let kf = k as f64;
    let rhs = prev / (2.0 * (kf * PI.sqrt()).sqrt());
    let rhs_corrected = prev * hermite_function(0, a) / (2.0 * kf).sqrt();
    Ok(HalfLineIdentity {
        a,
        k,
        lhs,
        rhs,
        abs_error: (lhs - rhs).abs(),
        rhs_corrected,
        corrected_error: (lhs - rhs_corrected).abs(),
    })
}

/// Exact ⟨μφ_0, φ_k⟩ for μ = 1_[a,∞), used as an oracle.
pub fn half_line_coefficient(a: f64, k: i64) -> f64 {
    if k == 0 {
        // ∫_a^∞ φ_0² = erfc(a)/2
        return 0.5 * erfc(a);
    }
    hermite_function(k as usize - 1, a) * hermite_function(0, a) / (2.0 * k as f64).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub k: i64,
    /// max_{|x| ≤ window} |φ_k(x)| k^{1/4}
    pub compact: f64,
    /// max over the whole classically allowed region and beyond.
    pub global: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundScan {
    pub window: f64,
    pub entries: Vec<BoundEntry>,
    pub compact_max: f64,
    pub compact_min: f64,
    /// compact_max / compact_min
    pub spread: f64,
    pub global_max: f64,
}

impl BoundScan {
    pub fn stable(&self, tolerance: f64) -> bool {
        self.spread <= tolerance
    }
}

/// Sup norms of k^{1/4}φ_k on a grid, for k in `ks`.
///
/// On a fixed compact window the weighted sup settles to a constant. Over the
/// whole line it keeps creeping up near the turning point, so `global` is
/// reported for information only.
pub fn hermite_bound_scan(ks: &[i64], window: f64, points: usize) -> Result<BoundScan> {
    if ks.is_empty() || ks.iter().any(|&k| k < 1) {
        return Err(Error::invalid("bound scan needs indices k >= 1"));
    }
    if !(window > 0.0) || points < 2 {
        return Err(Error::invalid("bound scan needs a positive window and >= 2 points"));
    }
    let kmax = *ks.iter().max().expect("nonempty") as usize;
    let reach = (2.0 * kmax as f64 + 1.0).sqrt() + 4.0;
    let outer = reach.max(window);
    let global_points = ((2.0 * outer / 0.002) as usize).max(points);

    let sup = |half: f64, n: usize| -> Vec<f64> {
        (0..n)
            .into_par_iter()
            .map(|i| {
                let x = -half + 2.0 * half * i as f64 / (n - 1) as f64;
                hermite_functions(kmax, x)
            })
            .reduce(
                || vec![0.0; kmax + 1],
                |mut acc, v| {
                    for (m, x) in acc.iter_mut().zip(v) {
                        *m = m.max(x.abs());
                    }
                    acc
                },
            )
    };
    let compact = sup(window, points);
    let global = sup(outer, global_points);

    let entries: Vec<BoundEntry> = ks
        .iter()
        .map(|&k| {
            let w = (k as f64).powf(0.25);
            BoundEntry {
                k,
                compact: compact[k as usize] * w,
                global: global[k as usize] * w,
            }
        })
        .collect();
    let compact_max = entries.iter().map(|e| e.compact).fold(0.0, f64::max);
    let compact_min = entries.iter().map(|e| e.compact).fold(f64::INFINITY, f64::min);
    let global_max = entries.iter().map(|e| e.global).fold(0.0, f64::max);
    Ok(BoundScan {
        window,
        entries,
        compact_max,
        compact_min,
        spread: compact_max / compact_min,
        global_max,
    })
}
