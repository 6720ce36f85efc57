use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use super::{Domain, IndexSet, ModelKind, SpectralBasis, TrigTerm};
use crate::potentials::LowerBoundWeight;
use crate::propagator::NormKind;

/// Dirichlet Laplacian on (0, 1): λ_k = k²π², φ_k = √2 sin(kπx), k ≥ 1.
#[derive(Debug, Clone, Copy, Default)]
pub struct Dirichlet;

impl SpectralBasis for Dirichlet {
    fn name(&self) -> &'static str {
        "dirichlet"
    }

    fn kind(&self) -> ModelKind {
        ModelKind::Dirichlet
    }

    fn index_set(&self) -> IndexSet {
        IndexSet::PositiveIntegers
    }

    fn domain(&self) -> Domain {
        Domain::UnitInterval
    }

    fn real_eigenfunctions(&self) -> bool {
        true
    }

    fn eigenvalue_at(&self, k: i64) -> f64 {
        let k = k as f64;
        k * k * PI * PI
    }

    fn eigenfunction_at(&self, k: i64, x: f64) -> Complex64 {
        Complex64::new(SQRT_2 * (k as f64 * PI * x).sin(), 0.0)
    }

    // 2 sin(lπx) sin(kπx) = cos((l-k)πx) - cos((l+k)πx)
    fn product_expansion(&self, l: i64, k: i64) -> Option<Vec<TrigTerm>> {
        let d = (l - k) as f64;
        let s = (l + k) as f64;
        Some(vec![
            TrigTerm::new(0.5, d),
            TrigTerm::new(0.5, -d),
            TrigTerm::new(-0.5, s),
            TrigTerm::new(-0.5, -s),
        ])
    }

    fn h1_norm(&self) -> NormKind {
        NormKind::H10
    }

    fn lower_bound_weight(&self) -> LowerBoundWeight {
        LowerBoundWeight::InverseK
    }
}
