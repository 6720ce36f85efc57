use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use super::{Domain, IndexSet, ModelKind, SpectralBasis, TrigTerm};
use crate::potentials::LowerBoundWeight;
use crate::propagator::NormKind;

/// Neumann Laplacian on (0, 1): λ_k = k²π², φ_0 = 1, φ_k = √2 cos(kπx).
#[derive(Debug, Clone, Copy, Default)]
pub struct Neumann;

impl SpectralBasis for Neumann {
    fn name(&self) -> &'static str {
        "neumann"
    }

    fn kind(&self) -> ModelKind {
        ModelKind::Neumann
    }

    fn index_set(&self) -> IndexSet {
        IndexSet::NonnegativeIntegers
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
        if k == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(SQRT_2 * (k as f64 * PI * x).cos(), 0.0)
        }
    }

    fn product_expansion(&self, l: i64, k: i64) -> Option<Vec<TrigTerm>> {
        let terms = match (l, k) {
            (0, 0) => vec![TrigTerm::new(1.0, 0.0)],
            (0, m) | (m, 0) => {
                let f = m as f64;
                vec![TrigTerm::new(0.5 * SQRT_2, f), TrigTerm::new(0.5 * SQRT_2, -f)]
            }
            _ => {
                // 2 cos(lπx) cos(kπx) = cos((l-k)πx) + cos((l+k)πx)
                let d = (l - k) as f64;
                let s = (l + k) as f64;
                vec![
                    TrigTerm::new(0.5, d),
                    TrigTerm::new(0.5, -d),
                    TrigTerm::new(0.5, s),
                    TrigTerm::new(0.5, -s),
                ]
            }
        };
        Some(terms)
    }

    fn h1_norm(&self) -> NormKind {
        NormKind::H1Neumann
    }

    fn lower_bound_weight(&self) -> LowerBoundWeight {
        LowerBoundWeight::InverseKPlus1
    }
}
