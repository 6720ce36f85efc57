//! One [`Command`] per CLI verb, looked up by name in a [`Registry`].

mod dynamics;
mod sampling;
mod tables;

use std::collections::BTreeMap;
use std::path::PathBuf;

use bqc_core::potentials::PiecewisePotential;
use bqc_core::spectral::SpectralModel;
use bqc_core::ExperimentConfig;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub struct Context {
    pub config: ExperimentConfig,
    pub hash: String,
    pub out: PathBuf,
}

impl Context {
    pub fn new(config: ExperimentConfig, out: PathBuf) -> Self {
        let hash = config.hash();
        Self { config, hash, out }
    }

    pub fn model(&self) -> anyhow::Result<SpectralModel> {
        Ok(self.config.model()?)
    }

    pub fn potential(&self) -> anyhow::Result<PiecewisePotential> {
        Ok(self.config.potential()?)
    }

    /// The single seeded generator of a run.
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.config.task.seed)
    }

    fn path(&self, name: &str) -> PathBuf {
        self.out.join(name)
    }

    pub fn write_csv<T: Serialize>(&self, name: &str, rows: &[T]) -> anyhow::Result<PathBuf> {
        let path = self.path(name);
        bqc_core::io::write_csv(&path, &self.hash, rows)?;
        Ok(path)
    }

    pub fn write_json<T: Serialize>(&self, name: &str, value: &T) -> anyhow::Result<PathBuf> {
        let path = self.path(name);
        bqc_core::io::write_json(&path, value)?;
        Ok(path)
    }

    /// Writes `body` with the config hash merged into its fields.
    pub fn write_report<T: Serialize>(&self, name: &str, body: T) -> anyhow::Result<PathBuf> {
        self.write_json(name, &bqc_core::io::Stamped::new(body, &self.hash))
    }
}

pub struct Outcome {
    pub message: String,
    pub artifacts: Vec<PathBuf>,
}

impl Outcome {
    fn new(message: impl Into<String>, artifacts: Vec<PathBuf>) -> Self {
        Self {
            message: message.into(),
            artifacts,
        }
    }
}

pub trait Command: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn run(&self, ctx: &Context) -> anyhow::Result<Outcome>;
}

pub struct Registry {
    commands: BTreeMap<&'static str, Box<dyn Command>>,
}

impl Registry {
    pub fn empty() -> Self {
        Self {
            commands: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, command: Box<dyn Command>) {
        self.commands.insert(command.name(), command);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Command> {
        self.commands.get(name).map(|c| c.as_ref())
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.commands.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Command> {
        self.commands.values().map(|c| c.as_ref())
    }
}

impl Default for Registry {
    fn default() -> Self {
        let mut r = Self::empty();
        tables::register(&mut r);
        dynamics::register(&mut r);
        r
    }
}

pub fn verb_help() -> String {
    let registry = Registry::default();
    let mut s = String::from("Commands:\n");
    for c in registry.iter() {
        s.push_str(&format!("  {:<18}{}\n", c.name(), c.summary()));
    }
    s
}
