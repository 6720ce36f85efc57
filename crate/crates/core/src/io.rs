//! CSV and JSON artifacts. Every artifact carries the hash of the config that produced it.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moments::MomentSolution;
use crate::synthesis::SteeringReport;

const HASH_PREFIX: &str = "# config_hash: ";

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    Ok(BufWriter::new(File::create(path)?))
}

/// Writes `rows` as CSV after a `# config_hash: ...` comment line.
pub fn write_csv<T: Serialize>(path: &Path, config_hash: &str, rows: &[T]) -> Result<()> {
    let mut out = create(path)?;
    writeln!(out, "{HASH_PREFIX}{config_hash}")?;
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a CSV written by [`write_csv`], returning the embedded hash and rows.
pub fn read_csv<T: DeserializeOwned>(path: &Path) -> Result<(Option<String>, Vec<T>)> {
    let mut first = String::new();
    BufReader::new(File::open(path)?).read_line(&mut first)?;
    let hash = first
        .trim_end()
        .strip_prefix(HASH_PREFIX)
        .map(str::to_string);
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(path)?;
    let rows = r.deserialize().collect::<std::result::Result<Vec<T>, _>>()?;
    Ok((hash, rows))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut out = create(path)?;
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_reader(BufReader::new(File::open(path)?))?)
}

/// JSON form of a moment problem and its solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentDocument {
    #[serde(rename = "T")]
    pub horizon: f64,
    pub frequencies: Vec<f64>,
    pub targets_re: Vec<f64>,
    pub targets_im: Vec<f64>,
    pub merged_frequencies: Vec<f64>,
    pub coefficients_re: Vec<f64>,
    pub coefficients_im: Vec<f64>,
    pub gram_condition: f64,
    pub residual_max: f64,
    pub config_hash: String,
}

impl MomentDocument {
    pub fn new(solution: &MomentSolution, config_hash: &str) -> Self {
        let split = |v: &[Complex64]| -> (Vec<f64>, Vec<f64>) {
            (v.iter().map(|z| z.re).collect(), v.iter().map(|z| z.im).collect())
        };
        let (targets_re, targets_im) = split(&solution.targets);
        let (coefficients_re, coefficients_im) = split(&solution.coefficients);
        Self {
            horizon: solution.horizon,
            frequencies: solution.frequencies.clone(),
            targets_re,
            targets_im,
            merged_frequencies: solution.merged_frequencies.clone(),
            coefficients_re,
            coefficients_im,
            gram_condition: solution.gram_condition,
            residual_max: solution.residual_max,
            config_hash: config_hash.to_string(),
        }
    }

    pub fn coefficients(&self) -> Result<Vec<Complex64>> {
        if self.coefficients_re.len() != self.coefficients_im.len() {
            return Err(Error::invalid("coefficient arrays differ in length"));
        }
        Ok(self
            .coefficients_re
            .iter()
            .zip(&self.coefficients_im)
            .map(|(&re, &im)| Complex64::new(re, im))
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SteeringDocument {
    #[serde(flatten)]
    pub report: SteeringReport,
    pub config_hash: String,
}

/// Any serializable report with the producing config hash alongside its fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stamped<T> {
    #[serde(flatten)]
    pub body: T,
    pub config_hash: String,
}

impl<T> Stamped<T> {
    pub fn new(body: T, config_hash: &str) -> Self {
        Self {
            body,
            config_hash: config_hash.to_string(),
        }
    }
}
