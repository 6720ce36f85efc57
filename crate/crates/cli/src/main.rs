use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context as _};
use bqc_core::ExperimentConfig;
use clap::Parser;

mod commands;

use commands::{Context, Registry};

/// Experiments on bilinear Schrödinger control in a truncated spectral basis.
#[derive(Debug, Parser)]
#[command(name = "bqc", version, after_help = commands::verb_help())]
struct Cli {
    /// Command to run (see the list below).
    verb: String,
    /// JSON experiment configuration; defaults are used when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Reference mode l.
    #[arg(long)]
    l: Option<i64>,
    /// Moment window and table index bound.
    #[arg(long = "K", value_name = "K")]
    k: Option<usize>,
    /// Simulation truncation.
    #[arg(long = "N", value_name = "N")]
    n: Option<usize>,
    /// Time horizon.
    #[arg(long = "T", value_name = "T")]
    t: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory; wins over the config and the environment.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Cli {
    fn config(&self) -> anyhow::Result<ExperimentConfig> {
        let mut config = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        if let Some(l) = self.l {
            config.model.l = l;
        }
        if let Some(k) = self.k {
            config.numerics.k = k;
            config.task.window = i64::try_from(k).context("--K is too large")?;
        }
        if let Some(n) = self.n {
            config.numerics.n = n;
        }
        if let Some(t) = self.t {
            config.task.horizon = t;
        }
        if let Some(seed) = self.seed {
            config.task.seed = seed;
        }
        config.validate()?;
        Ok(config)
    }
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let registry = Registry::default();
    let Some(command) = registry.get(&cli.verb) else {
        bail!(
            "unknown command '{}'; available: {}",
            cli.verb,
            registry.names().collect::<Vec<_>>().join(", ")
        );
    };
    let config = cli.config()?;
    let out = cli.out.clone().unwrap_or_else(|| config.output_dir());
    let ctx = Context::new(config, out);
    let outcome = command.run(&ctx)?;
    println!("{}", outcome.message);
    println!("config_hash: {}", ctx.hash);
    for path in &outcome.artifacts {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
