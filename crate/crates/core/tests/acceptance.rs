//! Acceptance suite. Each criterion prints one PASS/FAIL line; any failure
//! or runtime overrun makes the process exit nonzero.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bqc_core::moments::{gram_condition, solve, symmetrize, MomentProblem};
use bqc_core::potentials::{
    examples, harmonic_coefficient_identity, hermite_bound_scan, inner_product, neumann_obstruction_scan,
    PiecewisePotential, DEFAULT_BOUND_THRESHOLD,
};
use bqc_core::propagator::{propagate_linearized, ControlSignal, Propagator, StateVector};
use bqc_core::quadrature::GaussLegendre;
use bqc_core::spectral::{check_resonance, gap_analysis, SpectralModel};
use bqc_core::synthesis::{endpoint_derivative_check, project_tangent, steer, SteeringProblem, DERIVATIVE_EPSILONS};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ac1() -> Outcome {
    let models = [
        SpectralModel::dirichlet(),
        SpectralModel::neumann(),
        SpectralModel::harmonic(),
        SpectralModel::periodic(1.0).map_err(err)?,
    ];
    let mut worst = 0.0f64;
    for m in &models {
        for &k in &m.window(500) {
            let kf = k as f64;
            let want = match m.name() {
                "dirichlet" | "neumann" => kf * kf * PI * PI,
                "harmonic" => 2.0 * kf + 1.0,
                _ => 4.0 * PI * PI * kf * kf - 2.0 * PI * kf,
            };
            let got = m.eigenvalue(k).map_err(err)?;
            let rel = if want == 0.0 { got.abs() } else { ((got - want) / want).abs() };
            worst = worst.max(rel);
        }
    }
    ensure(worst <= 1e-14, || format!("worst relative error {worst:e}"))?;
    Ok(format!("worst relative error {worst:e} over 4 models x 500 modes"))
}

fn ac2() -> Outcome {
    let d = SpectralModel::dirichlet();
    let mu = examples::dirichlet_indicators();
    let rule = GaussLegendre::new(40);
    // independent integration: composite Gauss-Legendre aligned with the breakpoints
    let integrate = |k: i64| -> f64 {
        let mut s = 0.0;
        for seg in 0..60 {
            let a = 0.75 * seg as f64 / 60.0;
            let b = 0.75 * (seg + 1) as f64 / 60.0;
            for (x, w) in rule.mapped(a, b) {
                s += w * mu.value(x) * 2.0 * (PI * x).sin() * (k as f64 * PI * x).sin();
            }
        }
        s.abs()
    };
    let mut worst = 0.0f64;
    for k in 1..=200i64 {
        let kf = k as f64;
        let even = (2.0 * (-1f64).powi(k as i32) * kf / (-PI + 4.0 * kf * kf * PI)).abs();
        let got = integrate(2 * k);
        worst = worst.max((got - 2.0 * even).abs() / (2.0 * even));
        let lib = inner_product(&mu, &d, 1, 2 * k).map_err(err)?.norm();
        worst = worst.max((lib - 2.0 * even).abs() / (2.0 * even));
        if k >= 2 {
            let half = kf * PI / 2.0;
            let odd = ((kf * half.cos() + (1.0 - kf) * half.sin()) / (2.0 * kf * (kf - 1.0) * PI)).abs();
            let got = integrate(2 * k - 1);
            worst = worst.max((got - 2.0 * odd).abs() / (2.0 * odd));
        }
    }
    let odd_at_one = (1.0 * (PI / 2.0).cos() + 0.0 * (PI / 2.0).sin()) / (2.0 * 1.0 * 0.0 * PI);
    let k1_flag = !odd_at_one.is_finite() && inner_product(&mu, &d, 1, 1).map_err(err)?.norm().is_finite();
    let p = SpectralModel::periodic(1.0).map_err(err)?;
    let ramp = examples::periodic_ramp();
    for k in (-200i64..=200).filter(|&k| k != 0) {
        let kf = k as f64;
        let want = Complex64::new((-1f64).powi((k + 1) as i32) + 1.0, -kf * PI).norm() / (4.0 * kf * kf * PI * PI);
        let mut s = Complex64::new(0.0, 0.0);
        for seg in 0..40 {
            let a = 0.5 * seg as f64 / 40.0;
            let b = 0.5 * (seg + 1) as f64 / 40.0;
            for (x, w) in rule.mapped(a, b) {
                s += w * ramp.value(x) * Complex64::from_polar(1.0, -2.0 * PI * kf * x);
            }
        }
        worst = worst.max((s.norm() - want).abs() / want);
        let lib = inner_product(&ramp, &p, 0, k).map_err(err)?.norm();
        worst = worst.max((lib - want).abs() / want);
    }
    ensure(worst <= 1e-10, || format!("worst relative error {worst:e}"))?;
    ensure(k1_flag, || "odd family should be singular at k=1".into())?;
    Ok(format!(
        "worst relative error {worst:e}; closed-form Dirichlet families equal half the normalized coefficient; odd family singular at k=1 (flagged)"
    ))
}

fn ac3() -> Outcome {
    for l in [1, 2, 3, 4, 6, 7, 8, 9] {
        let r = check_resonance(l, 200).map_err(err)?;
        ensure(r.holds, || format!("l={l} reported resonant: {:?}", r.violations))?;
    }
    let r = check_resonance(5, 200).map_err(err)?;
    ensure(!r.holds && r.violations.first() == Some(&(7, 1)), || format!("l=5: {:?}", r.violations))?;
    Ok(format!("l=5 witness (7,1), {} violations in total", r.violations.len()))
}

fn ac4() -> Outcome {
    let mut min = f64::INFINITY;
    for drift in [1.0, 2f64.sqrt()] {
        let m = SpectralModel::periodic(drift).map_err(err)?;
        for l in [0, 1] {
            let r = gap_analysis(&m, l, 100).map_err(err)?;
            ensure(r.distinct && r.min_gap > 0.0, || format!("drift {drift} l {l}: {r:?}"))?;
            min = min.min(r.min_gap);
        }
    }
    let free = SpectralModel::periodic(0.0).map_err(err)?;
    for l in [0, 1] {
        ensure(!gap_analysis(&free, l, 100).map_err(err)?.distinct, || format!("u0=0 l={l} not flagged"))?;
    }
    Ok(format!("min gap {min:.4} with drift; duplicates detected without"))
}

fn ac5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst_norm = 0.0f64;
    let mut worst_back = 0.0f64;
    let cases = [
        (SpectralModel::dirichlet(), examples::dirichlet_indicators(), 1),
        (SpectralModel::periodic(1.0).map_err(err)?, examples::periodic_ramp(), 0),
        (SpectralModel::neumann(), examples::irrational_step(), 0),
        (SpectralModel::harmonic(), PiecewisePotential::step(0.3).map_err(err)?, 0),
    ];
    for (model, mu, l) in cases {
        let prop = Propagator::new(&model, &mu, 128).map_err(err)?;
        let psi0 = StateVector::basis(&model, 128, l).map_err(err)?;
        for _ in 0..2 {
            let u = ControlSignal::random_band_limited(1.0, 4096, 6, 40.0, 1.0, &mut rng).map_err(err)?;
            let traj = prop.trajectory(&psi0, &u, 16).map_err(err)?;
            for (_, s) in &traj {
                worst_norm = worst_norm.max((s.l2_norm() - 1.0).abs());
            }
            let back = prop.backward(&traj.last().unwrap().1, &u).map_err(err)?;
            worst_back = worst_back.max(back.sub(&psi0).map_err(err)?.l2_norm());
        }
    }
    ensure(worst_norm <= 1e-10 && worst_back <= 1e-8, || {
        format!("norm drift {worst_norm:e}, round trip {worst_back:e}")
    })?;
    Ok(format!("norm drift {worst_norm:e}, round trip {worst_back:e}"))
}

/// ∫₀^T v(s) e^{iωs} ds on the parametric form with resolved panels.
fn oracle_moment(v: &ControlSignal, omega: f64) -> Complex64 {
    let sum = v.parametric().expect("parametric control");
    let t = v.horizon();
    let fastest = sum.terms.iter().map(|x| x.freq.abs()).fold(0.0, f64::max) + omega.abs();
    let panels = ((fastest * t / PI).ceil() as usize).max(16) * 2;
    let rule = GaussLegendre::new(20);
    (0..panels)
        .map(|p| {
            let a = t * p as f64 / panels as f64;
            let b = t * (p + 1) as f64 / panels as f64;
            rule.integrate(a, b, |s| sum.value(s) * Complex64::from_polar(1.0, omega * s))
        })
        .sum()
}

fn ac6() -> Outcome {
    let d = SpectralModel::dirichlet();
    let mu = examples::dirichlet_indicators();
    let prop = Propagator::new(&d, &mu, 20).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let l1 = d.eigenvalue(1).map_err(err)?;
    let t = 1.0;
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let v = ControlSignal::random_band_limited(t, 4096, 5, 60.0, 1.0, &mut rng).map_err(err)?;
        let xi = propagate_linearized(&prop, &v, 1, None).map_err(err)?;
        for k in 1..=20i64 {
            let lk = d.eigenvalue(k).map_err(err)?;
            let b = inner_product(&mu, &d, 1, k).map_err(err)?;
            let want = Complex64::new(0.0, -1.0) * Complex64::from_polar(1.0, -lk * t) * b * oracle_moment(&v, lk - l1);
            worst = worst.max((xi.coefficient(k).unwrap() - want).norm());
        }
    }
    ensure(worst <= 1e-8, || format!("worst coefficient error {worst:e}"))?;
    Ok(format!("worst coefficient error {worst:e} over 5 controls x 20 modes"))
}

fn random_targets(model: &SpectralModel, l: i64, k: usize, t: f64, rng: &mut ChaCha8Rng) -> Result<MomentProblem, String> {
    let lambda_l = model.eigenvalue(l).map_err(err)?;
    let window = model.window(k);
    let freqs: Vec<f64> = window.iter().map(|&j| model.eigenvalue(j).unwrap() - lambda_l).collect();
    let targets = window
        .iter()
        .map(|&j| {
            let decay = 1.0 / (1.0 + (j - l).abs() as f64).powi(2);
            let re = rng.random_range(-1.0..1.0) * decay;
            let im = if j == l { 0.0 } else { rng.random_range(-1.0..1.0) * decay };
            Complex64::new(re, im)
        })
        .collect();
    MomentProblem::new(t, freqs, targets).map_err(err)
}

fn ac7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cases = [
        (SpectralModel::dirichlet(), 1, 0.5),
        (SpectralModel::periodic(1.0).map_err(err)?, 0, 0.5),
        (SpectralModel::harmonic(), 0, 1.05 * PI),
    ];
    let mut worst = 0.0f64;
    for (model, l, t) in &cases {
        for k in [10, 20, 30] {
            let problem = random_targets(model, *l, k, *t, &mut rng)?;
            let sol = solve(&problem).map_err(err)?;
            let scale = problem.targets.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            let misfit = problem
                .frequencies
                .iter()
                .zip(&problem.targets)
                .map(|(&w, x)| (oracle_moment(&sol.control, w) - x).norm_sqr())
                .sum::<f64>()
                .sqrt();
            worst = worst.max(misfit / scale);
        }
    }
    ensure(worst <= 1e-8, || format!("worst relative misfit {worst:e}"))?;
    let h = SpectralModel::harmonic();
    let cond = |t: f64| -> Result<f64, String> {
        let p = random_targets(&h, 0, 40, t, &mut ChaCha8Rng::seed_from_u64(0))?;
        Ok(gram_condition(&symmetrize(&p).map_err(err)?.frequencies, t))
    };
    let (below, above) = (cond(0.9 * PI)?, cond(1.2 * PI)?);
    ensure(below >= 10.0 * above, || format!("condition {below:e} at 0.9pi vs {above:e} at 1.2pi"))?;
    Ok(format!(
        "worst relative misfit {worst:e}; harmonic K=40 condition {below:.2e} (0.9pi) vs {above:.2e} (1.2pi)"
    ))
}

fn ac8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let cases = [
        (SpectralModel::dirichlet(), examples::dirichlet_indicators(), 1, 32),
        (SpectralModel::periodic(1.0).map_err(err)?, examples::periodic_ramp(), 0, 33),
        (SpectralModel::neumann(), examples::irrational_step(), 0, 32),
        (SpectralModel::harmonic(), PiecewisePotential::step(0.3).map_err(err)?, 0, 32),
    ];
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for (model, mu, l, n) in cases {
        let prop = Propagator::new(&model, &mu, n).map_err(err)?;
        for _ in 0..5 {
            let u = ControlSignal::random_band_limited(0.5, 2048, 4, 40.0, 1.0, &mut rng).map_err(err)?;
            let v = ControlSignal::random_band_limited(0.5, 2048, 4, 40.0, 1.0, &mut rng).map_err(err)?;
            let check = endpoint_derivative_check(&prop, &u, &v, l, &DERIVATIVE_EPSILONS).map_err(err)?;
            let slope = check.slope.ok_or("zero errors")?;
            lo = lo.min(slope);
            hi = hi.max(slope);
            ensure((1.8..=2.2).contains(&slope), || format!("{} slope {slope} ({check:?})", model.name()))?;
        }
    }
    Ok(format!("slopes in [{lo:.3}, {hi:.3}] over 4 models x 5 pairs"))
}

fn steering_run(prop: &Propagator, l: i64, seed: u64) -> Result<Vec<f64>, String> {
    let model = prop.model();
    let n = prop.len();
    let t = 0.4;
    let window = model.window(20);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let raw = StateVector::from_coefficients(model, raw).map_err(err)?.restrict(&window);
    let eta = project_tangent(&raw, l, t).map_err(err)?;
    let eta = eta.scale(Complex64::new(1e-2 / eta.norm(model.h1_norm()).map_err(err)?, 0.0));
    let phi_t = StateVector::eigensolution(model, n, l, t).map_err(err)?;
    let problem = SteeringProblem {
        l,
        horizon: t,
        psi0: StateVector::basis(model, n, l).map_err(err)?,
        psi1: phi_t.add(&eta).map_err(err)?.normalized().map_err(err)?,
        tolerance: 1e-8,
        max_iters: 6,
        steps: 4096,
    };
    problem.validate(2e-2).map_err(err)?;
    let (_, report) = steer(&problem, prop, 20).map_err(err)?;
    let h = &report.residual_h1;
    let contracting = h.windows(2).all(|w| w[1] * 10.0 <= w[0]);
    ensure(report.converged && contracting && h.len() <= 7, || {
        format!("{} seed {seed}: history {h:?}", model.name())
    })?;
    ensure((report.final_l2_norm - 1.0).abs() <= 1e-10, || format!("final norm {}", report.final_l2_norm))?;
    Ok(report.residual_h1)
}

fn ac9() -> Outcome {
    let d = SpectralModel::dirichlet();
    let p = SpectralModel::periodic(1.0).map_err(err)?;
    let props = [
        (Propagator::new(&d, &examples::dirichlet_indicators(), 64).map_err(err)?, 1),
        (Propagator::new(&p, &examples::periodic_ramp(), 64).map_err(err)?, 0),
    ];
    let mut worst_ratio = 0.0f64;
    let mut max_iters = 0;
    for (prop, l) in &props {
        for seed in 0..10 {
            let h = steering_run(prop, *l, seed)?;
            max_iters = max_iters.max(h.len() - 1);
            for w in h.windows(2) {
                worst_ratio = worst_ratio.max(w[1] / w[0]);
            }
        }
    }
    Ok(format!(
        "20 runs converged in <= {max_iters} iterations, worst per-step ratio {worst_ratio:.2e}"
    ))
}

fn ac10() -> Outcome {
    let third = neumann_obstruction_scan(&examples::middle_third(), 5000, DEFAULT_BOUND_THRESHOLD).map_err(err)?;
    for k in (3..=5000).step_by(3) {
        ensure(third.zeros.contains(&k), || format!("middle third: k={k} not a zero"))?;
    }
    let irr = neumann_obstruction_scan(&examples::irrational_step(), 100_000, DEFAULT_BOUND_THRESHOLD).map_err(err)?;
    let ratio = irr.final_min() / irr.first_value();
    ensure(ratio < 0.1, || format!("running minimum ratio {ratio:.3}"))?;
    Ok(format!(
        "{} zeros at multiples of 3 up to 5000; irrational running minimum at {:.3e} of the k=1 value",
        5000 / 3,
        ratio
    ))
}

fn ac11() -> Outcome {
    let mut stated = 0.0f64;
    let mut corrected = 0.0f64;
    for a in [0.0, 0.3, 1.0] {
        for k in 1..=50 {
            let r = harmonic_coefficient_identity(a, k).map_err(err)?;
            stated = stated.max(r.abs_error);
            corrected = corrected.max(r.corrected_error);
        }
    }
    let ks: Vec<i64> = (10..=500).step_by(10).collect();
    let scan = hermite_bound_scan(&ks, 2.0, 4001).map_err(err)?;
    let detail = format!(
        "closed-form identity: max error {stated:.3e}; with the factor sqrt(2)exp(-a^2/2) restored: {corrected:.3e}; bound spread {:.3} on |x|<=2",
        scan.spread
    );
    ensure(scan.stable(1.1), || format!("bound constant unstable: {detail}"))?;
    ensure(stated <= 1e-8, || detail.clone())?;
    Ok(detail)
}

type Criterion = (&'static str, &'static str, fn() -> Outcome, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("AC1", "spectral exactness", ac1, Duration::from_secs(1)),
        ("AC2", "coefficient formulas", ac2, Duration::from_secs(5)),
        ("AC3", "resonance oracle", ac3, Duration::from_secs(1)),
        ("AC4", "Zeeman splitting", ac4, Duration::from_secs(1)),
        ("AC5", "unitarity and reversibility", ac5, Duration::from_secs(10)),
        ("AC6", "linearized closed form", ac6, Duration::from_secs(10)),
        ("AC7", "moment round trip", ac7, Duration::from_secs(10)),
        ("AC8", "endpoint map derivative", ac8, Duration::from_secs(30)),
        ("AC9", "local exact controllability", ac9, Duration::from_secs(300)),
        ("AC10", "Neumann obstruction", ac10, Duration::from_secs(30)),
        ("AC11", "harmonic identities", ac11, Duration::from_secs(30)),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, f, limit) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(d) if elapsed > limit => Err(format!("runtime {elapsed:.2?} exceeds {limit:?}; {d}")),
            o => o,
        };
        match outcome {
            Ok(d) => println!("PASS {id} {name} [{elapsed:.2?}] {d}"),
            Err(d) => {
                failed += 1;
                println!("FAIL {id} {name} [{elapsed:.2?}] {d}");
            }
        }
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
