use std::f64::consts::PI;

use num_complex::Complex64;

use super::{Domain, IndexSet, ModelKind, SpectralBasis, TrigTerm};
use crate::error::{Error, Result};
use crate::potentials::LowerBoundWeight;
use crate::propagator::NormKind;

/// Periodic Laplacian with a constant magnetic drift, H = -Δ + u₀P with P = i∂ₓ.
///
/// Eigenpairs: λ_k = 4π²k² - 2πu₀k, φ_k = e^{2ikπx}, k ∈ ℤ. For u₀ ∉ 2πℚ the
/// spectrum is simple; the caller is trusted on irrationality, only finite
/// windows are ever checked.
#[derive(Debug, Clone, Copy)]
pub struct PeriodicMagnetic {
    drift: f64,
}

impl PeriodicMagnetic {
    pub fn new(drift: f64) -> Result<Self> {
        if !drift.is_finite() {
            return Err(Error::invalid(format!("drift must be finite, got {drift}")));
        }
        Ok(Self { drift })
    }
}

impl SpectralBasis for PeriodicMagnetic {
    fn name(&self) -> &'static str {
        "periodic"
    }

    fn kind(&self) -> ModelKind {
        ModelKind::PeriodicMagnetic
    }

    fn index_set(&self) -> IndexSet {
        IndexSet::AllIntegers
    }

    fn domain(&self) -> Domain {
        Domain::UnitInterval
    }

    fn drift(&self) -> f64 {
        self.drift
    }

    fn eigenvalue_at(&self, k: i64) -> f64 {
        let k = k as f64;
        4.0 * PI * PI * k * k - 2.0 * PI * self.drift * k
    }

    fn eigenfunction_at(&self, k: i64, x: f64) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI * k as f64 * x)
    }

    fn product_expansion(&self, l: i64, k: i64) -> Option<Vec<TrigTerm>> {
        Some(vec![TrigTerm::new(1.0, 2.0 * (l - k) as f64)])
    }

    fn h1_norm(&self) -> NormKind {
        NormKind::H1p
    }

    fn lower_bound_weight(&self) -> LowerBoundWeight {
        LowerBoundWeight::InverseKPlus1
    }
}
