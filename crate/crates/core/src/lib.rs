//! Numerical toolkit for bilinear control of Schrödinger equations on spectral bases.

pub mod config;
pub mod error;
pub mod io;
pub mod moments;
pub mod potentials;
pub mod propagator;
pub mod quadrature;
pub mod spectral;
pub mod synthesis;

pub use config::ExperimentConfig;
pub use error::{Error, Result};
