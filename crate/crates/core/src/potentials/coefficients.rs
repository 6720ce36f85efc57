use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::piecewise::{eval_poly, poly_exp_integral, PiecewisePotential};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_adaptive, AdaptiveOptions};
use crate::spectral::{hermite_functions, Domain, SpectralModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Quadrature,
}

/// Weight w(k) in a lower bound |⟨μφ_l, φ_k⟩| ≥ C·w(k).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerBoundWeight {
    /// C / k
    InverseK,
    /// C / (|k| + 1)
    InverseKPlus1,
    /// C / √λ_k
    InverseSqrtLambda,
}

impl LowerBoundWeight {
    /// 1 / w(k), the factor that turns |coefficient| into a bound constant.
    pub fn inverse(self, k: i64, eigenvalue: f64) -> f64 {
        match self {
            LowerBoundWeight::InverseK => (k.unsigned_abs() as f64).max(1.0),
            LowerBoundWeight::InverseKPlus1 => k.unsigned_abs() as f64 + 1.0,
            LowerBoundWeight::InverseSqrtLambda => eigenvalue.abs().sqrt(),
        }
    }
}

/// Half-width of the integration window for Hermite products.
pub fn harmonic_window(mu: &PiecewisePotential, max_index: i64) -> f64 {
    let far = mu
        .breakpoints()
        .iter()
        .fold(0.0f64, |m, a| m.max(a.abs()));
    12f64
        .max(far + 12.0)
        .max((2.0 * max_index as f64 + 1.0).sqrt() + 10.0)
}

fn check_domain(mu: &PiecewisePotential, model: &SpectralModel) -> Result<()> {
    if mu.domain() != model.domain() {
        return Err(Error::Potential(format!(
            "potential lives on {:?} but the {} model on {:?}",
            mu.domain(),
            model.name(),
            model.domain()
        )));
    }
    Ok(())
}

/// ⟨μφ_l, φ_k⟩ = ∫ μ φ_l conj(φ_k), in closed form when the model has a
/// trigonometric product expansion and by adaptive quadrature otherwise.
pub fn inner_product(
    mu: &PiecewisePotential,
    model: &SpectralModel,
    l: i64,
    k: i64,
) -> Result<Complex64> {
    let method = if model.product_expansion(l, k).is_some() {
        Method::ClosedForm
    } else {
        Method::Quadrature
    };
    inner_product_with(mu, model, l, k, method)
}

pub fn inner_product_with(
    mu: &PiecewisePotential,
    model: &SpectralModel,
    l: i64,
    k: i64,
    method: Method,
) -> Result<Complex64> {
    model.check_index(l)?;
    model.check_index(k)?;
    check_domain(mu, model)?;
    if mu.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let value = match method {
        Method::ClosedForm => closed_form(mu, model, l, k)?,
        Method::Quadrature => quadrature(mu, model, l, k)?,
    };
    if model.real_eigenfunctions() {
        Ok(Complex64::new(value.re, 0.0))
    } else {
        Ok(value)
    }
}

fn closed_form(mu: &PiecewisePotential, model: &SpectralModel, l: i64, k: i64) -> Result<Complex64> {
    let terms = model.product_expansion(l, k).ok_or_else(|| {
        Error::invalid(format!("the {} model has no closed-form coefficients", model.name()))
    })?;
    let mut sum = Complex64::new(0.0, 0.0);
    for (a, b, poly) in mu.segments(0.0, 1.0) {
        for t in &terms {
            sum += t.weight * poly_exp_integral(poly, t.freq_pi, a, b);
        }
    }
    Ok(sum)
}

fn quadrature(mu: &PiecewisePotential, model: &SpectralModel, l: i64, k: i64) -> Result<Complex64> {
    let opts = AdaptiveOptions::default();
    let mut sum = Complex64::new(0.0, 0.0);
    match model.domain() {
        Domain::UnitInterval => {
            for (a, b, poly) in mu.segments(0.0, 1.0) {
                sum += integrate_adaptive(
                    |x| {
                        let f = model.basis().eigenfunctions_at(&[l, k], x);
                        eval_poly(poly, x) * f[0] * f[1].conj()
                    },
                    a,
                    b,
                    opts,
                )?;
            }
        }
        Domain::RealLine => {
            let x_max = harmonic_window(mu, l.max(k));
            let top = l.max(k) as usize;
            for (a, b, poly) in mu.segments(-x_max, x_max) {
                let mut cuts = vec![a];
                if a < 0.0 && b > 0.0 {
                    cuts.push(0.0);
                }
                cuts.push(b);
                for w in cuts.windows(2) {
                    sum += integrate_adaptive(
                        |x| {
                            let h = hermite_functions(top, x);
                            Complex64::new(eval_poly(poly, x) * h[l as usize] * h[k as usize], 0.0)
                        },
                        w[0],
                        w[1],
                        opts,
                    )?;
                }
            }
        }
    }
    Ok(sum)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientEntry {
    pub k: i64,
    pub value: Complex64,
    pub eigenvalue: f64,
}

/// ⟨μφ_l, φ_k⟩ over a contiguous index window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTable {
    pub l: i64,
    pub model: String,
    pub method: Method,
    pub entries: Vec<CoefficientEntry>,
}

/// One CSV row of a coefficient table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRow {
    pub k: i64,
    pub re: f64,
    pub im: f64,
    pub abs: f64,
    pub weighted_abs: f64,
}

impl CoefficientTable {
    pub fn build(
        mu: &PiecewisePotential,
        model: &SpectralModel,
        l: i64,
        indices: &[i64],
        method: Method,
    ) -> Result<Self> {
        model.check_index(l)?;
        let entries = indices
            .par_iter()
            .map(|&k| {
                Ok(CoefficientEntry {
                    k,
                    value: inner_product_with(mu, model, l, k, method)?,
                    eigenvalue: model.eigenvalue(k)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            l,
            model: model.name().to_string(),
            method,
            entries,
        })
    }

    /// Closed form where available, quadrature otherwise.
    pub fn build_auto(
        mu: &PiecewisePotential,
        model: &SpectralModel,
        l: i64,
        indices: &[i64],
    ) -> Result<Self> {
        let method = if model.product_expansion(l, l).is_some() {
            Method::ClosedForm
        } else {
            Method::Quadrature
        };
        Self::build(mu, model, l, indices, method)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, k: i64) -> Option<Complex64> {
        self.entries.iter().find(|e| e.k == k).map(|e| e.value)
    }

    pub fn rows(&self, weight: LowerBoundWeight) -> Vec<CoefficientRow> {
        self.entries
            .iter()
            .map(|e| CoefficientRow {
                k: e.k,
                re: e.value.re,
                im: e.value.im,
                abs: e.value.norm(),
                weighted_abs: e.value.norm() * weight.inverse(e.k, e.eigenvalue),
            })
            .collect()
    }
}

pub const DEFAULT_BOUND_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundCheck {
    pub passed: bool,
    pub worst_constant: f64,
    pub argmin: i64,
}

/// Smallest |⟨μφ_l, φ_k⟩|/w(k) over the table; passes when it exceeds `threshold`.
pub fn verify_lower_bound(
    table: &CoefficientTable,
    weight: LowerBoundWeight,
    threshold: f64,
) -> Result<LowerBoundCheck> {
    let worst = table
        .entries
        .iter()
        .map(|e| (e.k, e.value.norm() * weight.inverse(e.k, e.eigenvalue)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or_else(|| Error::invalid("lower-bound check on an empty table"))?;
    Ok(LowerBoundCheck {
        passed: worst.1 > threshold,
        worst_constant: worst.1,
        argmin: worst.0,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct CacheKey {
    potential: u64,
    model: String,
    drift: u64,
    l: i64,
    method: Method,
    indices: Vec<i64>,
}

/// Shared cache of coefficient tables keyed by potential content and model.
#[derive(Debug, Default)]
pub struct CoefficientCache {
    tables: RwLock<HashMap<CacheKey, Arc<CoefficientTable>>>,
}

impl CoefficientCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get_or_build(
        &self,
        mu: &PiecewisePotential,
        model: &SpectralModel,
        l: i64,
        indices: &[i64],
        method: Method,
    ) -> Result<Arc<CoefficientTable>> {
        let key = CacheKey {
            potential: mu.content_hash(),
            model: model.name().to_string(),
            drift: model.drift().to_bits(),
            l,
            method,
            indices: indices.to_vec(),
        };
        if let Some(t) = self.tables.read().expect("cache lock").get(&key) {
            return Ok(Arc::clone(t));
        }
        let table = Arc::new(CoefficientTable::build(mu, model, l, indices, method)?);
        let mut guard = self.tables.write().expect("cache lock");
        Ok(Arc::clone(guard.entry(key).or_insert(table)))
    }

    pub fn len(&self) -> usize {
        self.tables.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
