//! Spectral models of the free Hamiltonian.
//!
//! Each boundary model implements [`SpectralBasis`] and is registered by name
//! in a [`ModelRegistry`], so configuration files and the CLI pick a model at
//! runtime. [`SpectralModel`] is the cheap, cloneable handle the rest of the
//! crate passes around.

mod conditions;
mod dirichlet;
mod harmonic;
mod neumann;
mod periodic;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potentials::LowerBoundWeight;
use crate::propagator::NormKind;

pub use conditions::{check_resonance, gap_analysis, GapReport, ResonanceReport};
pub use dirichlet::Dirichlet;
pub use harmonic::{hermite_function, hermite_functions, Harmonic};
pub use neumann::Neumann;
pub use periodic::PeriodicMagnetic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Dirichlet,
    PeriodicMagnetic,
    Neumann,
    Harmonic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexSet {
    /// k ≥ 1
    PositiveIntegers,
    /// k ≥ 0
    NonnegativeIntegers,
    /// k ∈ ℤ
    AllIntegers,
}

impl IndexSet {
    pub fn contains(self, k: i64) -> bool {
        match self {
            IndexSet::PositiveIntegers => k >= 1,
            IndexSet::NonnegativeIntegers => k >= 0,
            IndexSet::AllIntegers => true,
        }
    }

    /// The `n` lowest modes in ascending index order.
    ///
    /// For ℤ the modes are taken by increasing |k|, positive first on ties,
    /// so `window(5)` is `[-2, -1, 0, 1, 2]` and `window(4)` is `[-1, 0, 1, 2]`.
    pub fn window(self, n: usize) -> Vec<i64> {
        match self {
            IndexSet::PositiveIntegers => (1..=n as i64).collect(),
            IndexSet::NonnegativeIntegers => (0..n as i64).collect(),
            IndexSet::AllIntegers => {
                let mut out: Vec<i64> = (0..n as i64)
                    .map(|i| if i % 2 == 1 { (i + 1) / 2 } else { -(i / 2) })
                    .collect();
                out.sort_unstable();
                out
            }
        }
    }

    /// Indices with |k| ≤ `bound` (k ≥ 1 or k ≥ 0 for one-sided sets).
    pub fn up_to(self, bound: i64) -> Vec<i64> {
        match self {
            IndexSet::PositiveIntegers => (1..=bound).collect(),
            IndexSet::NonnegativeIntegers => (0..=bound).collect(),
            IndexSet::AllIntegers => (-bound..=bound).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    /// The interval (0, 1).
    UnitInterval,
    RealLine,
}

/// One term `weight · e^{iπ·freq_pi·x}` of a trigonometric expansion.
///
/// Frequencies are kept in units of π so phases can be reduced exactly
/// before the trigonometric call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigTerm {
    pub weight: Complex64,
    pub freq_pi: f64,
}

impl TrigTerm {
    pub fn new(weight: f64, freq_pi: f64) -> Self {
        Self {
            weight: Complex64::new(weight, 0.0),
            freq_pi,
        }
    }
}

/// Eigenpairs and norms of one boundary model.
pub trait SpectralBasis: Send + Sync + fmt::Debug {
    fn name(&self) -> &'static str;

    fn kind(&self) -> ModelKind;

    fn index_set(&self) -> IndexSet;

    fn domain(&self) -> Domain;

    /// Magnetic drift u₀; zero for models without a momentum term.
    fn drift(&self) -> f64 {
        0.0
    }

    /// Closed-form eigenvalue; `k` is already known to be in the index set.
    fn eigenvalue_at(&self, k: i64) -> f64;

    /// Eigenfunction value; `k` and `x` are already validated.
    fn eigenfunction_at(&self, k: i64, x: f64) -> Complex64;

    /// Values of several eigenfunctions at one point. Models with a
    /// recurrence override this to share work across indices.
    fn eigenfunctions_at(&self, indices: &[i64], x: f64) -> Vec<Complex64> {
        indices
            .iter()
            .map(|&k| self.eigenfunction_at(k, x))
            .collect()
    }

    /// Whether every eigenfunction is real-valued.
    fn real_eigenfunctions(&self) -> bool {
        false
    }

    /// Expansion of φ_l(x)·conj(φ_k(x)) into exponentials, when one exists.
    fn product_expansion(&self, _l: i64, _k: i64) -> Option<Vec<TrigTerm>> {
        None
    }

    /// The model's H¹-type norm.
    fn h1_norm(&self) -> NormKind;

    /// Weight used for the coupling lower-bound hypothesis of this model.
    fn lower_bound_weight(&self) -> LowerBoundWeight;
}

/// Shared handle to a registered spectral model.
#[derive(Clone)]
pub struct SpectralModel(Arc<dyn SpectralBasis>);

impl fmt::Debug for SpectralModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl SpectralModel {
    pub fn new(basis: impl SpectralBasis + 'static) -> Self {
        Self(Arc::new(basis))
    }

    pub fn dirichlet() -> Self {
        Self::new(Dirichlet)
    }

    pub fn neumann() -> Self {
        Self::new(Neumann)
    }

    pub fn harmonic() -> Self {
        Self::new(Harmonic)
    }

    pub fn periodic(drift: f64) -> Result<Self> {
        Ok(Self::new(PeriodicMagnetic::new(drift)?))
    }

    pub fn basis(&self) -> &dyn SpectralBasis {
        self.0.as_ref()
    }

    pub fn name(&self) -> &'static str {
        self.0.name()
    }

    pub fn kind(&self) -> ModelKind {
        self.0.kind()
    }

    pub fn index_set(&self) -> IndexSet {
        self.0.index_set()
    }

    pub fn domain(&self) -> Domain {
        self.0.domain()
    }

    pub fn drift(&self) -> f64 {
        self.0.drift()
    }

    pub fn h1_norm(&self) -> NormKind {
        self.0.h1_norm()
    }

    pub fn lower_bound_weight(&self) -> LowerBoundWeight {
        self.0.lower_bound_weight()
    }

    pub fn window(&self, n: usize) -> Vec<i64> {
        self.index_set().window(n)
    }

    pub fn check_index(&self, k: i64) -> Result<()> {
        if self.index_set().contains(k) {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "index {k} is outside the index set of the {} model",
                self.name()
            )))
        }
    }

    fn check_point(&self, x: f64) -> Result<()> {
        let ok = match self.domain() {
            Domain::UnitInterval => (0.0..=1.0).contains(&x),
            Domain::RealLine => x.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "point {x} is outside the spatial domain of the {} model",
                self.name()
            )))
        }
    }

    pub fn eigenvalue(&self, k: i64) -> Result<f64> {
        self.check_index(k)?;
        Ok(self.0.eigenvalue_at(k))
    }

    pub fn eigenvalues(&self, indices: &[i64]) -> Result<Vec<f64>> {
        indices.iter().map(|&k| self.eigenvalue(k)).collect()
    }

    pub fn eigenfunction_value(&self, k: i64, x: f64) -> Result<Complex64> {
        self.check_index(k)?;
        self.check_point(x)?;
        Ok(self.0.eigenfunction_at(k, x))
    }

    pub fn eigenfunction_values(&self, indices: &[i64], x: f64) -> Result<Vec<Complex64>> {
        for &k in indices {
            self.check_index(k)?;
        }
        self.check_point(x)?;
        Ok(self.0.eigenfunctions_at(indices, x))
    }

    pub fn real_eigenfunctions(&self) -> bool {
        self.0.real_eigenfunctions()
    }

    pub fn product_expansion(&self, l: i64, k: i64) -> Option<Vec<TrigTerm>> {
        self.0.product_expansion(l, k)
    }
}

/// Parameters a model factory may consume.
#[derive(Debug, Clone, Copy, Default)]
pub struct ModelParams {
    pub drift: f64,
}

pub type ModelFactory = fn(&ModelParams) -> Result<SpectralModel>;

/// Name → factory table for spectral models.
#[derive(Clone)]
pub struct ModelRegistry {
    factories: BTreeMap<String, ModelFactory>,
}

impl fmt::Debug for ModelRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.factories.keys()).finish()
    }
}

impl Default for ModelRegistry {
    fn default() -> Self {
        let mut registry = Self::empty();
        registry.register("dirichlet", |_| Ok(SpectralModel::dirichlet()));
        registry.register("periodic", |p| SpectralModel::periodic(p.drift));
        registry.register("periodic_magnetic", |p| SpectralModel::periodic(p.drift));
        registry.register("neumann", |_| Ok(SpectralModel::neumann()));
        registry.register("harmonic", |_| Ok(SpectralModel::harmonic()));
        registry
    }
}

impl ModelRegistry {
    pub fn empty() -> Self {
        Self {
            factories: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, name: &str, factory: ModelFactory) {
        self.factories.insert(name.to_ascii_lowercase(), factory);
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.factories.keys().map(String::as_str)
    }

    pub fn build(&self, name: &str, params: &ModelParams) -> Result<SpectralModel> {
        let factory = self
            .factories
            .get(&name.to_ascii_lowercase())
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown model '{name}'; known models: {}",
                    self.names().collect::<Vec<_>>().join(", ")
                ))
            })?;
        factory(params)
    }
}
