//! JSON experiment configuration.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::potentials::{examples, PiecewisePotential};
use crate::spectral::{Domain, ModelParams, ModelRegistry, SpectralModel};

/// Environment variable that overrides `output_dir`.
pub const OUTPUT_DIR_ENV: &str = "BQC_OUTPUT_DIR";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    /// Registered model name: dirichlet, periodic, neumann, harmonic.
    pub kind: String,
    #[serde(default)]
    pub drift: f64,
    pub l: i64,
}

impl Default for ModelSpec {
    fn default() -> Self {
        Self {
            kind: "dirichlet".into(),
            drift: 0.0,
            l: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialSpec {
    Piecewise {
        breakpoints: Vec<f64>,
        pieces: Vec<Vec<f64>>,
        domain: Domain,
    },
    /// Σ weight·1_[a,b] on (0, 1), each part written [a, b, weight].
    Indicators { parts: Vec<[f64; 3]> },
    /// 1_[a,∞) on the real line.
    HalfLine { a: f64 },
    /// dirichlet_indicators, periodic_ramp, middle_third, irrational_step
    Preset { name: String },
}

impl Default for PotentialSpec {
    fn default() -> Self {
        PotentialSpec::Preset {
            name: "dirichlet_indicators".into(),
        }
    }
}

impl PotentialSpec {
    pub fn build(&self) -> Result<PiecewisePotential> {
        match self {
            PotentialSpec::Piecewise {
                breakpoints,
                pieces,
                domain,
            } => PiecewisePotential::new(breakpoints.clone(), pieces.clone(), *domain),
            PotentialSpec::Indicators { parts } => PiecewisePotential::indicators(
                &parts.iter().map(|p| (p[0], p[1], p[2])).collect::<Vec<_>>(),
            ),
            PotentialSpec::HalfLine { a } => PiecewisePotential::step(*a),
            PotentialSpec::Preset { name } => match name.as_str() {
                "dirichlet_indicators" => Ok(examples::dirichlet_indicators()),
                "periodic_ramp" => Ok(examples::periodic_ramp()),
                "middle_third" => Ok(examples::middle_third()),
                "irrational_step" => Ok(examples::irrational_step()),
                other => Err(Error::Config(format!("unknown potential preset '{other}'"))),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Numerics {
    /// Simulation truncation N.
    pub n: usize,
    /// Time steps per horizon.
    pub steps: usize,
    /// Moment / coefficient window K.
    pub k: usize,
    pub tolerance: f64,
    pub max_iters: usize,
    pub condition_cap: f64,
    pub tikhonov: bool,
    pub bound_threshold: f64,
}

impl Default for Numerics {
    fn default() -> Self {
        Self {
            n: 128,
            steps: 4096,
            k: 20,
            tolerance: 1e-8,
            max_iters: 6,
            condition_cap: 1e12,
            tikhonov: false,
            bound_threshold: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Task {
    pub horizon: f64,
    /// Size of the random tangent perturbation of the target.
    pub delta: f64,
    pub seed: u64,
    pub trials: usize,
    /// Index bound for spectrum, gap, resonance and scan tables.
    pub window: i64,
    /// Number of trajectory samples written by `simulate` (every n-th step).
    pub stride: usize,
    /// Constant control used by `simulate`.
    pub control: f64,
}

impl Default for Task {
    fn default() -> Self {
        Self {
            horizon: 1.0,
            delta: 1e-2,
            seed: 0,
            trials: 200,
            window: 200,
            stride: 64,
            control: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub model: ModelSpec,
    #[serde(default)]
    pub potential: PotentialSpec,
    #[serde(default)]
    pub numerics: Numerics,
    #[serde(default)]
    pub task: Task,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("bqc-output")
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            model: ModelSpec::default(),
            potential: PotentialSpec::default(),
            numerics: Numerics::default(),
            task: Task::default(),
            output_dir: default_output_dir(),
        }
    }
}

impl ExperimentConfig {
    /// Parses and validates a JSON document; errors name the offending key and line.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let config: Self = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            Error::Config(format!(
                "at '{path}' (line {}, column {}): {inner}",
                inner.line(),
                inner.column()
            ))
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let n = &self.numerics;
        let t = &self.task;
        let check = |ok: bool, msg: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::Config(msg.to_string()))
            }
        };
        check((2..=1024).contains(&n.n), "numerics.n must lie in 2..=1024")?;
        check((1..=10_000_000).contains(&n.steps), "numerics.steps must lie in 1..=10^7")?;
        check(n.k >= 1, "numerics.k must be positive")?;
        check(n.tolerance > 0.0, "numerics.tolerance must be positive")?;
        check(n.condition_cap > 1.0, "numerics.condition_cap must exceed 1")?;
        check(n.bound_threshold >= 0.0, "numerics.bound_threshold must be nonnegative")?;
        check(t.horizon > 0.0 && t.horizon.is_finite(), "task.horizon must be positive")?;
        check(t.delta > 0.0 && t.delta < 1.0, "task.delta must lie in (0, 1)")?;
        check(t.trials >= 1, "task.trials must be positive")?;
        check(t.window >= 1, "task.window must be positive")?;
        check(self.model.drift.is_finite(), "model.drift must be finite")?;
        let model = self.model()?;
        model
            .check_index(self.model.l)
            .map_err(|e| Error::Config(format!("model.l: {e}")))?;
        let mu = self.potential()?;
        check(
            mu.domain() == model.domain(),
            "potential domain does not match the model domain",
        )?;
        Ok(())
    }

    pub fn model(&self) -> Result<SpectralModel> {
        ModelRegistry::default().build(
            &self.model.kind,
            &ModelParams {
                drift: self.model.drift,
            },
        )
    }

    pub fn potential(&self) -> Result<PiecewisePotential> {
        self.potential.build()
    }

    /// SHA-256 of the canonical JSON serialization, ignoring `output_dir`.
    pub fn hash(&self) -> String {
        let mut keyed = self.clone();
        keyed.output_dir = PathBuf::new();
        let canonical = serde_json::to_vec(&keyed).expect("config serializes");
        hex::encode(Sha256::digest(&canonical))
    }

    /// `output_dir`, unless the environment overrides it.
    pub fn output_dir(&self) -> PathBuf {
        std::env::var_os(OUTPUT_DIR_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| self.output_dir.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_is_an_error() {
        assert!(matches!(ExperimentConfig::from_json(""), Err(Error::Config(_))));
    }

    #[test]
    fn unknown_keys_are_rejected_with_path() {
        let err = ExperimentConfig::from_json(r#"{"numerics": {"n": 64, "bogus": 1}}"#).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("bogus") && msg.contains("numerics"), "{msg}");
    }

    #[test]
    fn defaults_round_trip_and_hash_is_stable() {
        let c = ExperimentConfig::from_json("{}").unwrap();
        assert_eq!(c, ExperimentConfig::default());
        let again = ExperimentConfig::from_json(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(c.hash(), again.hash());
        assert_eq!(c.hash().len(), 64);
    }

    #[test]
    fn potential_specs() {
        let c = ExperimentConfig::from_json(
            r#"{"model": {"kind": "harmonic", "l": 0}, "potential": {"type": "half_line", "a": 0.3}}"#,
        )
        .unwrap();
        assert_eq!(c.potential().unwrap().breakpoints(), &[0.3]);
        assert!(ExperimentConfig::from_json(r#"{"potential": {"type": "preset", "name": "nope"}}"#).is_err());
        assert!(ExperimentConfig::from_json(r#"{"model": {"kind": "dirichlet", "l": 0}}"#).is_err());
    }
}
