use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::potentials::{harmonic_window, inner_product, PiecewisePotential};
use crate::quadrature::GaussLegendre;
use crate::spectral::{hermite_functions, Domain, SpectralModel};

const HERMITIAN_TOL: f64 = 1e-12;

/// Galerkin matrix of multiplication by μ on the N lowest modes.
///
/// `matrix[(j, k)] = ⟨μφ_k, φ_j⟩`, so that (Bc)_j = ⟨μψ, φ_j⟩ for c_k = ⟨ψ, φ_k⟩.
#[derive(Debug, Clone)]
pub struct CouplingMatrix {
    indices: Vec<i64>,
    matrix: DMatrix<Complex64>,
}

impl CouplingMatrix {
    pub fn build(model: &SpectralModel, mu: &PiecewisePotential, n: usize) -> Result<Self> {
        let indices = model.window(n);
        let matrix = match model.domain() {
            Domain::UnitInterval => {
                let rows = indices
                    .par_iter()
                    .map(|&j| {
                        indices
                            .iter()
                            .map(|&k| inner_product(mu, model, k, j))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                DMatrix::from_fn(n, n, |r, c| rows[r][c])
            }
            Domain::RealLine => hermite_gram(mu, &indices)?,
        };
        Self::from_matrix(indices, matrix)
    }

    /// Validates hermiticity and stores the exactly Hermitian part.
    pub fn from_matrix(indices: Vec<i64>, matrix: DMatrix<Complex64>) -> Result<Self> {
        if matrix.nrows() != indices.len() || matrix.ncols() != indices.len() {
            return Err(Error::Model(format!(
                "coupling matrix is {}x{} for {} modes",
                matrix.nrows(),
                matrix.ncols(),
                indices.len()
            )));
        }
        let adjoint = matrix.adjoint();
        let scale = matrix.iter().fold(1.0f64, |m, z| m.max(z.norm()));
        let defect = (&matrix - &adjoint).iter().fold(0.0f64, |m, z| m.max(z.norm()));
        if defect > HERMITIAN_TOL * scale {
            return Err(Error::Model(format!(
                "coupling matrix is not Hermitian: max |B - B*| = {defect:.3e}"
            )));
        }
        let matrix = (&matrix + &adjoint) * Complex64::new(0.5, 0.0);
        Ok(Self { indices, matrix })
    }

    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// ⟨μφ_l, φ_j⟩ for every retained j.
    pub fn column(&self, l: i64) -> Result<DVector<Complex64>> {
        let pos = self
            .indices
            .binary_search(&l)
            .map_err(|_| Error::domain(format!("index {l} is outside the coupling window")))?;
        Ok(self.matrix.column(pos).into_owned())
    }
}

/// ∫ μ φ_j φ_k over the real line by a composite Gauss–Legendre rule.
fn hermite_gram(mu: &PiecewisePotential, indices: &[i64]) -> Result<DMatrix<Complex64>> {
    let n = indices.len();
    let top = *indices.last().unwrap_or(&0);
    let x_max = harmonic_window(mu, top);
    let rule = GaussLegendre::new(24);
    let mut nodes = Vec::new();
    for (a, b, poly) in mu.segments(-x_max, x_max) {
        let panels = ((b - a) / 0.25).ceil().max(1.0) as usize;
        let width = (b - a) / panels as f64;
        for p in 0..panels {
            let lo = a + p as f64 * width;
            for (x, w) in rule.mapped(lo, lo + width) {
                let m = poly.iter().rev().fold(0.0, |acc, &c| acc * x + c);
                nodes.push((x, w * m));
            }
        }
    }
    let mut phi = DMatrix::<f64>::zeros(nodes.len(), n);
    let mut weighted = DMatrix::<f64>::zeros(nodes.len(), n);
    for (r, &(x, w)) in nodes.iter().enumerate() {
        let h = hermite_functions(top as usize, x);
        for (c, &k) in indices.iter().enumerate() {
            phi[(r, c)] = h[k as usize];
            weighted[(r, c)] = w * h[k as usize];
        }
    }
    let gram = phi.transpose() * weighted;
    if gram.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric {
            step: 0,
            message: "non-finite Hermite coupling entry".into(),
        });
    }
    Ok(gram.map(|v| Complex64::new(v, 0.0)))
}
