//! Arithmetic conditions on the spectrum: Dirichlet resonance and the gap
//! structure of the symmetrized transition frequencies.

use serde::{Deserialize, Serialize};

use super::SpectralModel;
use crate::error::{Error, Result};

/// Outcome of the Dirichlet non-resonance check j² - l² ≠ l² - k².
///
/// A pass only covers the window `1..=window`; it is necessary at that scale,
/// not a proof for every pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResonanceReport {
    pub l: i64,
    pub window: i64,
    pub holds: bool,
    /// Violating pairs (j, k), reported once each with j > k.
    pub violations: Vec<(i64, i64)>,
}

fn isqrt(n: i64) -> i64 {
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Checks j² + k² ≠ 2l² for all j, k ∈ {1..K} \ {l}.
pub fn check_resonance(l: i64, window: i64) -> Result<ResonanceReport> {
    if l < 1 {
        return Err(Error::invalid(format!("resonance check needs l >= 1, got {l}")));
    }
    if window < l {
        return Err(Error::invalid(format!(
            "resonance window K={window} must be at least l={l}"
        )));
    }
    let target = 2 * l * l;
    let mut violations = Vec::new();
    for k in 1..=window {
        if k == l {
            continue;
        }
        let rest = target - k * k;
        if rest <= 0 {
            continue;
        }
        let j = isqrt(rest);
        if j * j == rest && j > k && j <= window && j != l {
            violations.push((j, k));
        }
    }
    violations.sort_unstable();
    Ok(ResonanceReport {
        l,
        window,
        holds: violations.is_empty(),
        violations,
    })
}

/// Gap structure of the merged sequence {0, ±(λ_k - λ_l)}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub l: i64,
    pub window: i64,
    /// Number of merged frequencies, duplicates included.
    pub count: usize,
    pub min_gap: f64,
    /// Minimum gap left after discarding the `excluded` smallest ones.
    pub gamma_estimate: f64,
    pub excluded: usize,
    pub distinct: bool,
    /// Empirical min over consecutive gaps of gap / |position from zero|.
    /// A fit, never a certified constant.
    pub growth_constant: f64,
}

/// Builds ν^l over |k| ≤ `window` and reports its gaps.
///
/// Frequencies closer than `1e-12 · max|ν|` count as coincident.
pub fn gap_analysis(model: &SpectralModel, l: i64, window: i64) -> Result<GapReport> {
    model.check_index(l)?;
    if window < 2 {
        return Err(Error::invalid(format!("gap window must be >= 2, got {window}")));
    }
    let lambda_l = model.eigenvalue(l)?;
    let mut nu = vec![0.0];
    for k in model.index_set().up_to(window) {
        if k == l {
            continue;
        }
        let w = model.eigenvalue(k)? - lambda_l;
        nu.push(w);
        nu.push(-w);
    }
    nu.sort_by(f64::total_cmp);

    let scale = nu.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let tol = 1e-12 * scale;
    let gaps: Vec<f64> = nu.windows(2).map(|p| p[1] - p[0]).collect();
    let min_gap = gaps.iter().copied().fold(f64::INFINITY, f64::min);

    let zero_pos = nu
        .iter()
        .position(|&v| v == 0.0)
        .expect("zero is always present");
    let growth_constant = gaps
        .iter()
        .enumerate()
        .map(|(i, &g)| {
            // gap between positions i and i+1; its signed index is the upper end
            let pos = (i + 1) as i64 - zero_pos as i64;
            let k = if pos > 0 { pos } else { pos - 1 };
            g / k.unsigned_abs() as f64
        })
        .fold(f64::INFINITY, f64::min);

    let excluded = 2 * (window as f64).sqrt().ceil() as usize;
    let mut sorted = gaps.clone();
    sorted.sort_by(f64::total_cmp);
    let gamma_estimate = sorted
        .get(excluded)
        .copied()
        .unwrap_or(f64::NAN);

    Ok(GapReport {
        l,
        window,
        count: nu.len(),
        min_gap: min_gap.max(0.0),
        gamma_estimate,
        excluded,
        distinct: min_gap > tol,
        growth_constant,
    })
}
