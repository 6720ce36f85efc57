//! Spectral and coefficient tables.

use anyhow::{bail, ensure};
use bqc_core::config::PotentialSpec;
use bqc_core::potentials::{
    harmonic_coefficient_identity, hermite_bound_scan, neumann_obstruction_scan, verify_lower_bound,
    CoefficientTable, LowerBoundWeight,
};
use bqc_core::spectral::{check_resonance, gap_analysis, ModelKind};
use serde::Serialize;

use super::{Command, Context, Outcome, Registry};

pub fn register(r: &mut Registry) {
    r.register(Box::new(Spectrum));
    r.register(Box::new(Gaps));
    r.register(Box::new(Resonance));
    r.register(Box::new(Coeffs));
    r.register(Box::new(BoundCheck));
    r.register(Box::new(ObstructionScan));
    r.register(Box::new(HermiteCheck));
}

#[derive(Serialize)]
struct EigenRow {
    k: i64,
    eigenvalue: f64,
}

struct Spectrum;

impl Command for Spectrum {
    fn name(&self) -> &'static str {
        "spectrum"
    }

    fn summary(&self) -> &'static str {
        "eigenvalue table up to the index window"
    }

    fn run(&self, ctx: &Context) -> anyhow::Result<Outcome> {
        let model = ctx.model()?;
        let rows = model
            .index_set()
            .up_to(ctx.config.task.window)
            .into_iter()
            .map(|k| Ok(EigenRow { k, eigenvalue: model.eigenvalue(k)? }))
            .collect::<anyhow::Result<Vec<_>>>()?;
        let path = ctx.write_csv("spectrum.csv", &rows)?;
        Ok(Outcome::new(format!("{} eigenvalues of the {} model", rows.len(), model.name()), vec![path]))
    }
}

struct Gaps;

impl Command for Gaps {
    fn name(&self) -> &'static str {
        "gaps"
    }

    fn summary(&self) -> &'static str {
        "gap structure of the symmetrized transition frequencies"
    }

    fn run(&self, ctx: &Context) -> anyhow::Result<Outcome> {
        let model = ctx.model()?;
        let report = gap_analysis(&model, ctx.config.model.l, ctx.config.task.window)?;
        let msg = format!(
            "{} frequencies, min gap {:.6e}, pairwise distinct: {}",
            report.count, report.min_gap, report.distinct
        );
        let path = ctx.write_report("gaps.json", report)?;
        Ok(Outcome::new(msg, vec![path]))
    }
}

struct Resonance;

impl Command for Resonance {
    fn name(&self) -> &'static str {
        "resonance"
    }

    fn summary(&self) -> &'static str {
        "Dirichlet non-resonance check j^2 + k^2 != 2 l^2 over the window"
    }

    fn run(&self, ctx: &Context) -> anyhow::Result<Outcome> {
        let report = check_resonance(ctx.config.model.l, ctx.config.task.window)?;
        let msg = if report.holds {
            format!("l={} K={}: no resonant pair", report.l, report.window)
        } else {
            let pairs: Vec<String> = report.violations.iter().map(|(j, k)| format!("({j},{k})")).collect();
            format!("l={} K={}: resonance violated by {}", report.l, report.window, pairs.join(" "))
        };
        let path = ctx.write_report("resonance.json", report)?;
        Ok(Outcome::new(msg, vec![path]))
    }
}

fn table(ctx: &Context) -> anyhow::Result<(CoefficientTable, LowerBoundWeight)> {
    let model = ctx.model()?;
    let mu = ctx.potential()?;
    let indices = model.index_set().up_to(ctx.config.task.window);
    let table = CoefficientTable::build_auto(&mu, &model, ctx.config.model.l, &indices)?;
    Ok((table, model.lower_bound_weight()))
}

struct Coeffs;

impl Command for Coeffs {
    fn name(&self) -> &'static str {
        "coeffs"
    }

    fn summary(&self) -> &'static str {
        "coupling coefficients <mu phi_l, phi_k> as CSV"
    }

    fn run(&self, ctx: &Context) -> anyhow::Result<Outcome> {
        let (table, weight) = table(ctx)?;
        let rows = table.rows(weight);
        let path = ctx.write_csv("coeffs.csv", &rows)?;
        Ok(Outcome::new(format!("{} coefficients ({:?})", rows.len(), table.method), vec![path]))
    }
}

struct BoundCheck;

impl Command for BoundCheck {
    fn name(&self) -> &'static str {
        "bound-check"
    }

    fn summary(&self) -> &'static str {
        "empirical lower bound |<mu phi_l, phi_k>| >= C w(k) over the window"
    }

    fn run(&self, ctx: &Context) -> anyhow::Result<Outcome> {
        let (table, weight) = table(ctx)?;
        let check = verify_lower_bound(&table, weight, ctx.config.numerics.bound_threshold)?;
        let msg = format!(
            "bound {}: worst constant {:.6e} at k={}",
            if check.passed { "holds" } else { "fails" },
            check.worst_constant,
            check.argmin
        );
        let path = ctx.write_report("bound_check.json", check)?;
        Ok(Outcome::new(msg, vec![path]))
    }
}

struct ObstructionScan;

impl Command for ObstructionScan {
    fn name(&self) -> &'static str {
        "obstruction-scan"
    }

    fn summary(&self) -> &'static str {
        "Neumann decay scan of (k+1)|<mu, phi_k>|"
    }

    fn run(&self, ctx: &Context) -> anyhow::Result<Outcome> {
        let model = ctx.model()?;
        ensure!(model.kind() == ModelKind::Neumann, "obstruction-scan needs the neumann model");
        let report = neumann_obstruction_scan(
            &ctx.potential()?,
            ctx.config.task.window,
            ctx.config.numerics.bound_threshold,
        )?;
        let msg = format!(
            "{} zeros; running minimum {:.6e} against first value {:.6e}",
            report.zeros.len(),
            report.final_min(),
            report.first_value()
        );
        let path = ctx.write_report("obstruction.json", report)?;
        Ok(Outcome::new(msg, vec![path]))
    }
}

#[derive(Serialize)]
struct BoundSummary {
    window: f64,
    compact_max: f64,
    compact_min: f64,
    spread: f64,
    global_max: f64,
    max_identity_error: f64,
    max_corrected_error: f64,
}

struct HermiteCheck;

impl Command for HermiteCheck {
    fn name(&self) -> &'static str {
        "hermite-check"
    }

    fn summary(&self) -> &'static str {
        "half-line coefficient identity and the k^(1/4) Hermite bound"
    }

    fn run(&self, ctx: &Context) -> anyhow::Result<Outcome> {
        let PotentialSpec::HalfLine { a } = ctx.config.potential else {
            bail!("hermite-check needs a half_line potential");
        };
        let window = ctx.config.task.window;
        let identity = (1..=window)
            .map(|k| harmonic_coefficient_identity(a, k))
            .collect::<Result<Vec<_>, _>>()?;
        let ks: Vec<i64> = (1..=window / 10).map(|i| 10 * i).collect();
        ensure!(!ks.is_empty(), "hermite-check needs a window of at least 10");
        let scan = hermite_bound_scan(&ks, 2.0, 4001)?;
        let max = |f: fn(&bqc_core::potentials::HalfLineIdentity) -> f64| identity.iter().map(f).fold(0.0, f64::max);
        let summary = BoundSummary {
            window: scan.window,
            compact_max: scan.compact_max,
            compact_min: scan.compact_min,
            spread: scan.spread,
            global_max: scan.global_max,
            max_identity_error: max(|r| r.abs_error),
            max_corrected_error: max(|r| r.corrected_error),
        };
        let msg = format!(
            "a={a}: closed-form identity error {:.3e}, corrected {:.3e}; bound spread {:.3}",
            summary.max_identity_error, summary.max_corrected_error, summary.spread
        );
        let artifacts = vec![
            ctx.write_csv("hermite_identity.csv", &identity)?,
            ctx.write_csv("hermite_bound.csv", &scan.entries)?,
            ctx.write_report("hermite_check.json", summary)?,
        ];
        Ok(Outcome::new(msg, artifacts))
    }
}
