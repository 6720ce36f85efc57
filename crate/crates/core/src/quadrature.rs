//! Gauss–Legendre rules and adaptive panel integration.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            // Tricomi initial guess, refined by Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped affinely onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> Complex64>(&self, a: f64, b: f64, mut f: F) -> Complex64 {
        self.mapped(a, b).map(|(x, w)| f(x) * w).sum()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Settings for [`integrate_adaptive`].
#[derive(Debug, Clone, Copy)]
pub struct AdaptiveOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum bisection depth of a single panel.
    pub max_depth: u32,
    pub order: usize,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-14,
            rel_tol: 1e-13,
            max_depth: 40,
            order: 20,
        }
    }
}

/// Adaptive bisection with a fixed Gauss–Legendre rule per panel.
///
/// The tolerance is fixed from the first whole-interval estimate and shrinks
/// by 1/√2 per level. A panel is accepted when the rule on the panel and the
/// sum over its halves agree within tolerance or within the roundoff floor of
/// the panel. Exceeding `max_depth` reports the last two estimates.
pub fn integrate_adaptive<F>(f: F, a: f64, b: f64, opts: AdaptiveOptions) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let rule = GaussLegendre::new(opts.order);
    let (whole, _) = panel(&rule, a, b, &f);
    let tol = opts.abs_tol.max(opts.rel_tol * whole.norm());
    refine(&f, &rule, a, b, whole, tol, opts.max_depth, 0)
}

fn panel<F: Fn(f64) -> Complex64>(rule: &GaussLegendre, a: f64, b: f64, f: &F) -> (Complex64, f64) {
    rule.mapped(a, b).fold((Complex64::new(0.0, 0.0), 0.0), |(s, m), (x, w)| {
        let v = f(x);
        (s + v * w, m + w.abs() * v.norm())
    })
}

#[allow(clippy::too_many_arguments)]
fn refine<F>(
    f: &F,
    rule: &GaussLegendre,
    a: f64,
    b: f64,
    whole: Complex64,
    tol: f64,
    max_depth: u32,
    depth: u32,
) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    let mid = 0.5 * (a + b);
    let (left, ml) = panel(rule, a, mid, f);
    let (right, mr) = panel(rule, mid, b, f);
    let split = left + right;
    let diff = (split - whole).norm();
    if diff <= tol.max(64.0 * f64::EPSILON * (ml + mr)) {
        return Ok(split);
    }
    if depth >= max_depth {
        return Err(Error::Quadrature {
            a,
            b,
            last: format!("{split}"),
            previous: format!("{whole}"),
        });
    }
    let tighter = tol * std::f64::consts::FRAC_1_SQRT_2;
    Ok(refine(f, rule, a, mid, left, tighter, max_depth, depth + 1)?
        + refine(f, rule, mid, b, right, tighter, max_depth, depth + 1)?)
}
