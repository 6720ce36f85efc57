use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use super::{ControlSignal, CouplingMatrix, StateVector};
use crate::error::{Error, Result};
use crate::potentials::PiecewisePotential;
use crate::spectral::SpectralModel;

/// Strang-split propagator for i∂ₜc = (Λ + u(t)B)c on N modes.
///
/// One step is e^{-iΛh/2} e^{-iūhB} e^{-iΛh/2} with ū the control at the
/// step midpoint; e^{-iūhB} goes through the eigendecomposition B = VβV*.
#[derive(Debug, Clone)]
pub struct Propagator {
    model: SpectralModel,
    indices: Vec<i64>,
    lambda: Vec<f64>,
    coupling: CouplingMatrix,
    vectors: DMatrix<Complex64>,
    vectors_adj: DMatrix<Complex64>,
    beta: Vec<f64>,
}

/// A state with its linearized companion ξ.
#[derive(Debug, Clone)]
pub struct TangentPair {
    pub state: StateVector,
    pub tangent: StateVector,
}

impl Propagator {
    pub fn new(model: &SpectralModel, mu: &PiecewisePotential, n: usize) -> Result<Self> {
        Self::from_coupling(model, CouplingMatrix::build(model, mu, n)?)
    }

    pub fn from_coupling(model: &SpectralModel, coupling: CouplingMatrix) -> Result<Self> {
        let indices = coupling.indices().to_vec();
        if indices != model.window(indices.len()) {
            return Err(Error::Model("coupling window does not match the model".into()));
        }
        let lambda = model.eigenvalues(&indices)?;
        let eig = SymmetricEigen::new(coupling.matrix().clone());
        let vectors = eig.eigenvectors;
        Ok(Self {
            model: model.clone(),
            indices,
            lambda,
            vectors_adj: vectors.adjoint(),
            vectors,
            beta: eig.eigenvalues.iter().copied().collect(),
            coupling,
        })
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

    pub fn eigenvalues(&self) -> &[f64] {
        &self.lambda
    }

    pub fn coupling(&self) -> &CouplingMatrix {
        &self.coupling
    }

    fn check_state(&self, psi: &StateVector) -> Result<()> {
        if psi.indices() != self.indices.as_slice() || psi.model().name() != self.model.name() {
            return Err(Error::Model(format!(
                "state has {} {} modes, propagator has {} {} modes",
                psi.len(),
                psi.model().name(),
                self.len(),
                self.model.name()
            )));
        }
        Ok(())
    }

    fn half_phase(&self, c: &mut DVector<Complex64>, h: f64) {
        for (z, &l) in c.iter_mut().zip(&self.lambda) {
            *z *= Complex64::from_polar(1.0, -0.5 * l * h);
        }
    }

    /// e^{-iūhB} c
    fn coupling_exp(&self, c: &DVector<Complex64>, ubar: f64, h: f64) -> DVector<Complex64> {
        let mut w = &self.vectors_adj * c;
        for (z, &b) in w.iter_mut().zip(&self.beta) {
            *z *= Complex64::from_polar(1.0, -ubar * h * b);
        }
        &self.vectors * w
    }

    fn step(&self, c: &mut DVector<Complex64>, ubar: f64, h: f64) {
        self.half_phase(c, h);
        if ubar != 0.0 {
            *c = self.coupling_exp(c, ubar, h);
        }
        self.half_phase(c, h);
    }

    fn check_finite(c: &DVector<Complex64>, step: usize) -> Result<()> {
        if c.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Numeric {
                step,
                message: "state became non-finite".into(),
            });
        }
        Ok(())
    }

    /// ψ(T) for the control `u`.
    pub fn evolve(&self, psi0: &StateVector, u: &ControlSignal) -> Result<StateVector> {
        self.check_state(psi0)?;
        let h = u.dt();
        let mut c = psi0.coefficients().clone();
        for n in 0..u.steps() {
            self.step(&mut c, u.midpoint(n), h);
            Self::check_finite(&c, n + 1)?;
        }
        Ok(StateVector::from_vector(&self.model, &self.indices, c))
    }

    /// States at every `stride`-th grid time, always including t = T.
    pub fn trajectory(
        &self,
        psi0: &StateVector,
        u: &ControlSignal,
        stride: usize,
    ) -> Result<Vec<(f64, StateVector)>> {
        self.check_state(psi0)?;
        let stride = stride.max(1);
        let h = u.dt();
        let mut c = psi0.coefficients().clone();
        let mut out = vec![(0.0, psi0.clone())];
        for n in 0..u.steps() {
            self.step(&mut c, u.midpoint(n), h);
            Self::check_finite(&c, n + 1)?;
            if (n + 1) % stride == 0 || n + 1 == u.steps() {
                out.push((
                    u.time(n + 1),
                    StateVector::from_vector(&self.model, &self.indices, c.clone()),
                ));
            }
        }
        Ok(out)
    }

    /// Undoes [`Propagator::evolve`]: runs the inverse steps from T back to 0.
    pub fn backward(&self, psi_t: &StateVector, u: &ControlSignal) -> Result<StateVector> {
        self.check_state(psi_t)?;
        let h = u.dt();
        let mut c = psi_t.coefficients().clone();
        for n in (0..u.steps()).rev() {
            self.step(&mut c, u.midpoint(n), -h);
            Self::check_finite(&c, n)?;
        }
        Ok(StateVector::from_vector(&self.model, &self.indices, c))
    }

    /// ψ(T; u) together with the exact derivative of the discrete flow in
    /// direction `v`, started from ξ(0) = `xi0`.
    pub fn evolve_tangent(
        &self,
        psi0: &StateVector,
        xi0: &StateVector,
        u: &ControlSignal,
        v: &ControlSignal,
    ) -> Result<TangentPair> {
        self.check_state(psi0)?;
        self.check_state(xi0)?;
        if u.steps() != v.steps() || u.horizon() != v.horizon() {
            return Err(Error::invalid("base and direction controls must share a grid"));
        }
        let h = u.dt();
        let mut c = psi0.coefficients().clone();
        let mut xi = xi0.coefficients().clone();
        let minus_ih = Complex64::new(0.0, -h);
        for n in 0..u.steps() {
            let ubar = u.midpoint(n);
            let vbar = v.midpoint(n);
            self.half_phase(&mut c, h);
            self.half_phase(&mut xi, h);
            // in the eigenbasis of B: ξ ← e^{-iūhβ}(ξ - i h v̄ β c)
            let cw = &self.vectors_adj * &c;
            let mut xw = &self.vectors_adj * &xi;
            let mut cw2 = cw.clone();
            for ((x, z), &b) in xw.iter_mut().zip(cw2.iter_mut()).zip(&self.beta) {
                let rot = Complex64::from_polar(1.0, -ubar * h * b);
                *x = rot * (*x + minus_ih * vbar * b * *z);
                *z *= rot;
            }
            c = &self.vectors * cw2;
            xi = &self.vectors * xw;
            self.half_phase(&mut c, h);
            self.half_phase(&mut xi, h);
            Self::check_finite(&xi, n + 1)?;
        }
        Ok(TangentPair {
            state: StateVector::from_vector(&self.model, &self.indices, c),
            tangent: StateVector::from_vector(&self.model, &self.indices, xi),
        })
    }
}
