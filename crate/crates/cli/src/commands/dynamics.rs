//! Propagation, moment solves, steering and the derivative check.

use bqc_core::moments::{MomentSolver, Tikhonov};
use bqc_core::propagator::{norm_rows, trajectory_rows, ControlSignal, Propagator, StateVector};
use bqc_core::synthesis::{endpoint_derivative_check, steer, SteeringProblem, DERIVATIVE_EPSILONS};
use bqc_core::io::{MomentDocument, SteeringDocument};
use serde::Serialize;

use super::{sampling, Command, Context, Outcome, Registry};

pub fn register(r: &mut Registry) {
    r.register(Box::new(Simulate));
    r.register(Box::new(MomentsSolve));
    r.register(Box::new(Steer));
    r.register(Box::new(DerivativeCheck));
}

#[derive(Serialize)]
struct ControlRow {
    t: f64,
    u: f64,
}

fn control_rows(u: &ControlSignal) -> Vec<ControlRow> {
    u.samples()
        .iter()
        .enumerate()
        .map(|(n, &v)| ControlRow { t: u.time(n), u: v })
        .collect()
}

fn propagator(ctx: &Context) -> anyhow::Result<Propagator> {
    Ok(Propagator::new(&ctx.model()?, &ctx.potential()?, ctx.config.numerics.n)?)
}

struct Simulate;

impl Command for Simulate {
    fn name(&self) -> &'static str {
        "simulate"
    }

    fn summary(&self) -> &'static str {
        "trajectory from phi_l under the constant task.control"
    }

    fn run(&self, ctx: &Context) -> anyhow::Result<Outcome> {
        let model = ctx.model()?;
        let prop = propagator(ctx)?;
        let cfg = &ctx.config;
        let psi0 = StateVector::basis(&model, prop.len(), cfg.model.l)?;
        let u = ControlSignal::constant(cfg.task.horizon, cfg.numerics.steps, cfg.task.control)?;
        let traj = prop.trajectory(&psi0, &u, cfg.task.stride)?;
        let norms = norm_rows(&traj, model.h1_norm())?;
        let drift = norms.iter().map(|r| (r.l2 - 1.0).abs()).fold(0.0, f64::max);
        let artifacts = vec![
            ctx.write_csv("trajectory.csv", &trajectory_rows(&traj))?,
            ctx.write_csv("norms.csv", &norms)?,
        ];
        Ok(Outcome::new(
            format!("{} snapshots, max L2 norm drift {drift:.3e}", traj.len()),
            artifacts,
        ))
    }
}

fn solver(ctx: &Context) -> MomentSolver {
    let n = &ctx.config.numerics;
    MomentSolver {
        condition_cap: n.condition_cap,
        tikhonov: n.tikhonov.then_some(Tikhonov { alpha: None }),
        ..MomentSolver::with_steps(n.steps)
    }
}

struct MomentsSolve;

impl Command for MomentsSolve {
    fn name(&self) -> &'static str {
        "moments-solve"
    }

    fn summary(&self) -> &'static str {
        "least-norm control for seeded random moment targets"
    }

    fn run(&self, ctx: &Context) -> anyhow::Result<Outcome> {
        let cfg = &ctx.config;
        let model = ctx.model()?;
        let problem = sampling::moment_problem(&model, cfg.model.l, cfg.numerics.k, cfg.task.horizon, &mut ctx.rng())?;
        let sol = solver(ctx).solve(&problem)?;
        let msg = format!(
            "{} moments, Gram condition {:.3e}, max residual {:.3e}",
            problem.len(),
            sol.gram_condition,
            sol.residual_max
        );
        let artifacts = vec![
            ctx.write_json("moments.json", &MomentDocument::new(&sol, &ctx.hash))?,
            ctx.write_csv("control.csv", &control_rows(&sol.control))?,
        ];
        Ok(Outcome::new(msg, artifacts))
    }
}

struct Steer;

impl Command for Steer {
    fn name(&self) -> &'static str {
        "steer"
    }

    fn summary(&self) -> &'static str {
        "Newton steering from phi_l to a seeded perturbation of phi_l(T)"
    }

    fn run(&self, ctx: &Context) -> anyhow::Result<Outcome> {
        let cfg = &ctx.config;
        let model = ctx.model()?;
        let prop = propagator(ctx)?;
        let (n, l, t) = (prop.len(), cfg.model.l, cfg.task.horizon);
        let eta = sampling::tangent_perturbation(&model, n, cfg.numerics.k, l, t, cfg.task.delta, &mut ctx.rng())?;
        let psi1 = StateVector::eigensolution(&model, n, l, t)?.add(&eta)?.normalized()?;
        let problem = SteeringProblem {
            l,
            horizon: t,
            psi0: StateVector::basis(&model, n, l)?,
            psi1,
            tolerance: cfg.numerics.tolerance,
            max_iters: cfg.numerics.max_iters,
            steps: cfg.numerics.steps,
        };
        problem.validate(2.0 * cfg.task.delta)?;
        let (u, report) = steer(&problem, &prop, cfg.numerics.k)?;
        let msg = format!(
            "{} after {} iterations, residual {:.3e}, control norm {:.3e}",
            if report.converged { "converged" } else { "stopped" },
            report.iterations.len() - 1,
            report.final_error,
            report.control_l2_norm
        );
        let doc = SteeringDocument {
            report,
            config_hash: ctx.hash.clone(),
        };
        let artifacts = vec![
            ctx.write_json("steering.json", &doc)?,
            ctx.write_csv("control.csv", &control_rows(&u))?,
        ];
        Ok(Outcome::new(msg, artifacts))
    }
}

struct DerivativeCheck;

impl Command for DerivativeCheck {
    fn name(&self) -> &'static str {
        "derivative-check"
    }

    fn summary(&self) -> &'static str {
        "finite-difference slope of the endpoint map at a seeded random control"
    }

    fn run(&self, ctx: &Context) -> anyhow::Result<Outcome> {
        let cfg = &ctx.config;
        let prop = propagator(ctx)?;
        let mut rng = ctx.rng();
        let (t, steps) = (cfg.task.horizon, cfg.numerics.steps);
        let u = ControlSignal::random_band_limited(t, steps, 4, 40.0, 1.0, &mut rng)?;
        let v = ControlSignal::random_band_limited(t, steps, 4, 40.0, 1.0, &mut rng)?;
        let check = endpoint_derivative_check(&prop, &u, &v, cfg.model.l, &DERIVATIVE_EPSILONS)?;
        let msg = match check.slope {
            Some(s) => format!("log-log slope {s:.4}"),
            None => "all errors vanish".to_string(),
        };
        let path = ctx.write_report("derivative.json", check)?;
        Ok(Outcome::new(msg, vec![path]))
    }
}
