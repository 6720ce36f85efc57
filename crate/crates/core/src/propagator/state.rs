use nalgebra::DVector;
use num_complex::Complex64;

use super::NormKind;
use crate::error::{Error, Result};
use crate::spectral::SpectralModel;

/// Truncated coefficient sequence c_k = ⟨ψ, φ_k⟩ over the lowest N modes.
#[derive(Debug, Clone)]
pub struct StateVector {
    model: SpectralModel,
    indices: Vec<i64>,
    coefficients: DVector<Complex64>,
}

impl StateVector {
    pub fn zeros(model: &SpectralModel, n: usize) -> Self {
        Self {
            model: model.clone(),
            indices: model.window(n),
            coefficients: DVector::zeros(n),
        }
    }

    /// The eigenfunction φ_k in an N-mode truncation.
    pub fn basis(model: &SpectralModel, n: usize, k: i64) -> Result<Self> {
        let mut s = Self::zeros(model, n);
        let pos = s.position(k).ok_or_else(|| {
            Error::domain(format!("index {k} is not among the {n} lowest {} modes", model.name()))
        })?;
        s.coefficients[pos] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    /// The eigensolution e^{-iλ_l t} φ_l.
    pub fn eigensolution(model: &SpectralModel, n: usize, l: i64, t: f64) -> Result<Self> {
        let mut s = Self::basis(model, n, l)?;
        s.free_evolve(t);
        Ok(s)
    }

    pub fn from_coefficients(model: &SpectralModel, coefficients: Vec<Complex64>) -> Result<Self> {
        if coefficients.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Numeric {
                step: 0,
                message: "non-finite state coefficient".into(),
            });
        }
        Ok(Self {
            model: model.clone(),
            indices: model.window(coefficients.len()),
            coefficients: DVector::from_vec(coefficients),
        })
    }

    pub(crate) fn from_vector(model: &SpectralModel, indices: &[i64], v: DVector<Complex64>) -> Self {
        Self {
            model: model.clone(),
            indices: indices.to_vec(),
            coefficients: v,
        }
    }

    pub fn model(&self) -> &SpectralModel {
        &self.model
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    pub fn coefficients(&self) -> &DVector<Complex64> {
        &self.coefficients
    }

    pub fn coefficients_mut(&mut self) -> &mut DVector<Complex64> {
        &mut self.coefficients
    }

    pub fn position(&self, k: i64) -> Option<usize> {
        self.indices.binary_search(&k).ok()
    }

    pub fn coefficient(&self, k: i64) -> Option<Complex64> {
        self.position(k).map(|p| self.coefficients[p])
    }

    pub fn l2_norm(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn norm(&self, kind: NormKind) -> Result<f64> {
        let mut sum = 0.0;
        for (&k, c) in self.indices.iter().zip(self.coefficients.iter()) {
            let w = kind.weight(k)?;
            sum += w * w * c.norm_sqr();
        }
        Ok(sum.sqrt())
    }

    /// ⟨self, other⟩ = Σ c_k conj(d_k).
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_compatible(other)?;
        Ok(self
            .coefficients
            .iter()
            .zip(other.coefficients.iter())
            .map(|(a, b)| a * b.conj())
            .sum())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.indices != other.indices || self.model.name() != other.model.name() {
            return Err(Error::Model(format!(
                "incompatible states: {} modes of {} vs {} modes of {}",
                self.len(),
                self.model.name(),
                other.len(),
                other.model.name()
            )));
        }
        Ok(())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self::from_vector(&self.model, &self.indices, &self.coefficients - &other.coefficients))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self::from_vector(&self.model, &self.indices, &self.coefficients + &other.coefficients))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::from_vector(&self.model, &self.indices, &self.coefficients * factor)
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.l2_norm();
        if n == 0.0 {
            return Err(Error::invalid("cannot normalize the zero state"));
        }
        Ok(self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    /// Applies the free flow e^{-iΛt}.
    pub fn free_evolve(&mut self, t: f64) {
        for (c, &k) in self.coefficients.iter_mut().zip(&self.indices) {
            let lambda = self.model.basis().eigenvalue_at(k);
            *c *= Complex64::from_polar(1.0, -lambda * t);
        }
    }

    /// Keeps only the modes in `keep`, zeroing the rest.
    pub fn restrict(&self, keep: &[i64]) -> Self {
        let mut out = self.clone();
        for (c, k) in out.coefficients.iter_mut().zip(&self.indices) {
            if !keep.contains(k) {
                *c = Complex64::new(0.0, 0.0);
            }
        }
        out
    }
}
