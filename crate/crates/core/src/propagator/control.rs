use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;

/// ∫₀^T e^{ids} ds, written as e^{idT/2}·T·sinc(dT/2) so it stays accurate as d → 0.
pub fn exp_integral(d: f64, t: f64) -> Complex64 {
    let x = 0.5 * d * t;
    let sinc = if x.abs() < 1e-4 {
        1.0 - x * x / 6.0 + x.powi(4) / 120.0
    } else {
        x.sin() / x
    };
    Complex64::from_polar(t * sinc, x)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpTerm {
    pub freq: f64,
    pub amp: Complex64,
}

/// Σ_j a_j e^{i f_j t}; real-valued when the terms come in conjugate pairs.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ExpSum {
    pub terms: Vec<ExpTerm>,
}

impl ExpSum {
    pub fn new(terms: Vec<ExpTerm>) -> Self {
        Self { terms }
    }

    /// a·cos(ft) + b·sin(ft) as a conjugate pair.
    pub fn cos_sin(freq: f64, a: f64, b: f64) -> Self {
        Self::new(vec![
            ExpTerm {
                freq,
                amp: Complex64::new(0.5 * a, -0.5 * b),
            },
            ExpTerm {
                freq: -freq,
                amp: Complex64::new(0.5 * a, 0.5 * b),
            },
        ])
    }

    pub fn value(&self, t: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|term| term.amp * Complex64::from_polar(1.0, term.freq * t))
            .sum()
    }

    /// ∫₀^T Re(Σ) e^{iωs} ds in closed form.
    pub fn moment(&self, omega: f64, horizon: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|term| {
                0.5 * (term.amp * exp_integral(term.freq + omega, horizon)
                    + term.amp.conj() * exp_integral(omega - term.freq, horizon))
            })
            .sum()
    }
}

/// Real control on the uniform grid t_n = nT/steps, n = 0..=steps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControlSignal {
    horizon: f64,
    samples: Vec<f64>,
    parametric: Option<ExpSum>,
}

const PANEL_DEGREE: usize = 8;

impl ControlSignal {
    pub fn from_samples(horizon: f64, samples: Vec<f64>) -> Result<Self> {
        if !(horizon > 0.0) || !horizon.is_finite() {
            return Err(Error::invalid(format!("horizon must be positive, got {horizon}")));
        }
        if samples.len() < 2 {
            return Err(Error::invalid("a control needs at least one time step"));
        }
        if samples.iter().any(|s| !s.is_finite()) {
            return Err(Error::invalid("control samples must be finite"));
        }
        Ok(Self {
            horizon,
            samples,
            parametric: None,
        })
    }

    pub fn zero(horizon: f64, steps: usize) -> Result<Self> {
        Self::constant(horizon, steps, 0.0)
    }

    pub fn constant(horizon: f64, steps: usize, value: f64) -> Result<Self> {
        Self::from_samples(horizon, vec![value; steps + 1])
    }

    pub fn from_fn(horizon: f64, steps: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let h = horizon / steps.max(1) as f64;
        Self::from_samples(horizon, (0..=steps).map(|n| f(n as f64 * h)).collect())
    }

    /// Samples the real part of an exponential sum and keeps the sum itself.
    pub fn from_exp_sum(horizon: f64, steps: usize, sum: ExpSum) -> Result<Self> {
        let mut signal = Self::from_fn(horizon, steps, |t| sum.value(t).re)?;
        signal.parametric = Some(sum);
        Ok(signal)
    }

    /// Σ_j a_j cos(f_j t) + b_j sin(f_j t) with f_j uniform in [0, max_freq]
    /// and standard normal a_j, b_j scaled by `amplitude`.
    pub fn random_band_limited<R: Rng + ?Sized>(
        horizon: f64,
        steps: usize,
        modes: usize,
        max_freq: f64,
        amplitude: f64,
        rng: &mut R,
    ) -> Result<Self> {
        let mut terms = Vec::with_capacity(2 * modes);
        for _ in 0..modes {
            let f = rng.random_range(0.0..=max_freq);
            let a: f64 = rng.sample(StandardNormal);
            let b: f64 = rng.sample(StandardNormal);
            terms.extend(ExpSum::cos_sin(f, amplitude * a, amplitude * b).terms);
        }
        Self::from_exp_sum(horizon, steps, ExpSum::new(terms))
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn steps(&self) -> usize {
        self.samples.len() - 1
    }

    pub fn dt(&self) -> f64 {
        self.horizon / self.steps() as f64
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn parametric(&self) -> Option<&ExpSum> {
        self.parametric.as_ref()
    }

    pub fn without_parametric(&self) -> Self {
        Self {
            parametric: None,
            ..self.clone()
        }
    }

    pub fn time(&self, n: usize) -> f64 {
        n as f64 * self.dt()
    }

    pub fn is_zero(&self) -> bool {
        self.samples.iter().all(|&s| s == 0.0)
            && self
                .parametric
                .as_ref()
                .is_none_or(|p| p.terms.iter().all(|t| t.amp == Complex64::new(0.0, 0.0)))
    }

    /// Control value at the midpoint of step n.
    pub fn midpoint(&self, n: usize) -> f64 {
        match &self.parametric {
            Some(p) => p.value(self.time(n) + 0.5 * self.dt()).re,
            None => 0.5 * (self.samples[n] + self.samples[n + 1]),
        }
    }

    /// Largest imaginary part of the parametric form on the grid; 0 without one.
    pub fn max_imag(&self) -> f64 {
        match &self.parametric {
            Some(p) => (0..=self.steps())
                .map(|n| p.value(self.time(n)).im.abs())
                .fold(0.0, f64::max),
            None => 0.0,
        }
    }

    fn check_grid(&self, other: &Self) -> Result<()> {
        if self.samples.len() != other.samples.len() || self.horizon != other.horizon {
            return Err(Error::invalid(format!(
                "controls live on different grids: ({}, {}) vs ({}, {})",
                self.horizon,
                self.steps(),
                other.horizon,
                other.steps()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_grid(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a + b)
            .collect();
        let parametric = match (&self.parametric, &other.parametric) {
            (Some(a), Some(b)) => {
                let mut terms = a.terms.clone();
                terms.extend_from_slice(&b.terms);
                Some(ExpSum::new(terms))
            }
            _ => None,
        };
        Ok(Self {
            horizon: self.horizon,
            samples,
            parametric,
        })
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            horizon: self.horizon,
            samples: self.samples.iter().map(|s| s * factor).collect(),
            parametric: self.parametric.as_ref().map(|p| {
                ExpSum::new(
                    p.terms
                        .iter()
                        .map(|t| ExpTerm {
                            freq: t.freq,
                            amp: t.amp * factor,
                        })
                        .collect(),
                )
            }),
        }
    }

    /// t ↦ u(T - t)
    pub fn reversed(&self) -> Self {
        let horizon = self.horizon;
        Self {
            horizon,
            samples: self.samples.iter().rev().copied().collect(),
            parametric: self.parametric.as_ref().map(|p| {
                ExpSum::new(
                    p.terms
                        .iter()
                        .map(|t| ExpTerm {
                            freq: -t.freq,
                            amp: t.amp * Complex64::from_polar(1.0, t.freq * horizon),
                        })
                        .collect(),
                )
            }),
        }
    }

    /// Gauss–Legendre nodes, weights and control values covering [0, T].
    ///
    /// The samples are interpolated by degree-8 Lagrange polynomials on
    /// consecutive panels; `phase_rate` (the largest |ω| the values will be
    /// multiplied against) sets the node count per panel.
    fn panel_nodes(&self, phase_rate: f64) -> Vec<(f64, f64, f64)> {
        let steps = self.steps();
        let h = self.dt();
        let mut out = Vec::new();
        let mut start = 0;
        while start < steps {
            let p = PANEL_DEGREE.min(steps - start);
            let width = p as f64 * h;
            let nq = p + 4 + (0.75 * phase_rate * width).ceil() as usize;
            let rule = GaussLegendre::new(nq);
            let t0 = start as f64 * h;
            let bary: Vec<f64> = (0..=p)
                .map(|i| {
                    let binom = binomial(p, i);
                    if i % 2 == 0 {
                        binom
                    } else {
                        -binom
                    }
                })
                .collect();
            for (x, w) in rule.mapped(t0, t0 + width) {
                let s = (x - t0) / h;
                let mut num = 0.0;
                let mut den = 0.0;
                let mut exact = None;
                for i in 0..=p {
                    let d = s - i as f64;
                    if d == 0.0 {
                        exact = Some(self.samples[start + i]);
                        break;
                    }
                    let c = bary[i] / d;
                    num += c * self.samples[start + i];
                    den += c;
                }
                out.push((x, w, exact.unwrap_or(num / den)));
            }
            start += p;
        }
        out
    }

    /// ∫₀^T u(s) e^{iωs} ds per frequency from the sampled grid.
    pub fn moments(&self, frequencies: &[f64]) -> Vec<Complex64> {
        let rate = frequencies.iter().fold(0.0f64, |m, w| m.max(w.abs()));
        let nodes = self.panel_nodes(rate);
        frequencies
            .iter()
            .map(|&omega| {
                nodes
                    .iter()
                    .map(|&(x, w, u)| Complex64::from_polar(w * u, omega * x))
                    .sum()
            })
            .collect()
    }

    /// Moments from the parametric form when present, otherwise from samples.
    pub fn exact_moments(&self, frequencies: &[f64]) -> Vec<Complex64> {
        match &self.parametric {
            Some(p) => frequencies
                .iter()
                .map(|&w| p.moment(w, self.horizon))
                .collect(),
            None => self.moments(frequencies),
        }
    }

    /// ‖u‖_{L²(0,T)}
    pub fn l2_norm(&self) -> f64 {
        let sq: f64 = match &self.parametric {
            Some(p) => self
                .panel_nodes(0.0)
                .iter()
                .map(|&(x, w, _)| w * p.value(x).re.powi(2))
                .sum(),
            None => self
                .panel_nodes(0.0)
                .iter()
                .map(|&(_, w, u)| w * u * u)
                .sum(),
        };
        sq.sqrt()
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
