use std::f64::consts::PI;

use bqc_core::potentials::{
    examples, harmonic_coefficient_identity, hermite_bound_scan, inner_product, inner_product_with,
    neumann_obstruction_scan, verify_lower_bound, CoefficientTable, LowerBoundWeight, Method,
    PiecewisePotential, DEFAULT_BOUND_THRESHOLD,
};
use bqc_core::spectral::{Domain, SpectralModel};
use num_complex::Complex64;
use proptest::prelude::*;

// |⟨φ_2k, μφ_1⟩| and |⟨φ_{2k-1}, μφ_1⟩| as closed-form families in the
// unnormalized sine basis; the normalized coefficient is twice these.
fn even_family(k: f64) -> f64 {
    (2.0 * (-1f64).powi(k as i32) * k / (-PI + 4.0 * k * k * PI)).abs()
}

fn odd_family(k: f64) -> f64 {
    ((k * (k * PI / 2.0).cos() + (1.0 - k) * (k * PI / 2.0).sin()) / (2.0 * k * (k - 1.0) * PI)).abs()
}

#[test]
fn dirichlet_example_families() {
    let model = SpectralModel::dirichlet();
    let mu = examples::dirichlet_indicators();
    for k in 1..=200i64 {
        let kf = k as f64;
        let even = inner_product(&mu, &model, 1, 2 * k).unwrap().norm();
        let want = 2.0 * even_family(kf);
        assert!((even - want).abs() <= 1e-10 * want, "even k={k}: {even} vs {want}");
        if k >= 2 {
            let odd = inner_product(&mu, &model, 1, 2 * k - 1).unwrap().norm();
            let want = 2.0 * odd_family(kf);
            assert!((odd - want).abs() <= 1e-10 * want, "odd k={k}: {odd} vs {want}");
        }
    }
    // the odd family is singular at k = 1 while the coefficient itself is finite
    assert!(!odd_family(1.0).is_finite());
    assert!(inner_product(&mu, &model, 1, 1).unwrap().norm().is_finite());
}

#[test]
fn periodic_example_family() {
    let model = SpectralModel::periodic(1.0).unwrap();
    let mu = examples::periodic_ramp();
    for k in (-200i64..=200).filter(|&k| k != 0) {
        let kf = k as f64;
        let want = Complex64::new((-1f64).powi((k + 1) as i32) + 1.0, -kf * PI).norm() / (4.0 * kf * kf * PI * PI);
        let got = inner_product(&mu, &model, 0, k).unwrap().norm();
        assert!((got - want).abs() <= 1e-10 * want, "k={k}");
    }
}

#[test]
fn closed_form_agrees_with_quadrature() {
    let cases = [
        (SpectralModel::dirichlet(), examples::dirichlet_indicators(), 1),
        (SpectralModel::periodic(1.0).unwrap(), examples::periodic_ramp(), 0),
        (SpectralModel::neumann(), examples::middle_third(), 0),
        (SpectralModel::neumann(), examples::irrational_step(), 2),
    ];
    for (model, mu, l) in cases {
        let idx: Vec<i64> = model.index_set().up_to(100);
        let a = CoefficientTable::build(&mu, &model, l, &idx, Method::ClosedForm).unwrap();
        let b = CoefficientTable::build(&mu, &model, l, &idx, Method::Quadrature).unwrap();
        for (x, y) in a.entries.iter().zip(&b.entries) {
            assert!((x.value - y.value).norm() < 1e-10, "{} k={}", model.name(), x.k);
        }
    }
}

#[test]
fn dirichlet_and_neumann_tables_are_real() {
    for (model, mu) in [
        (SpectralModel::dirichlet(), examples::dirichlet_indicators()),
        (SpectralModel::neumann(), examples::middle_third()),
    ] {
        let l = model.window(1)[0];
        let t = CoefficientTable::build_auto(&mu, &model, l, &model.window(50)).unwrap();
        assert!(t.entries.iter().all(|e| e.value.im == 0.0));
    }
}

#[test]
fn lower_bounds_on_examples() {
    let d = SpectralModel::dirichlet();
    let t = CoefficientTable::build_auto(&examples::dirichlet_indicators(), &d, 1, &d.index_set().up_to(200)).unwrap();
    let r = verify_lower_bound(&t, LowerBoundWeight::InverseK, DEFAULT_BOUND_THRESHOLD).unwrap();
    // oracle: min over both families of k·|coefficient|
    let mut oracle = f64::INFINITY;
    for k in 1..=200i64 {
        let c = t.get(k).unwrap().norm();
        oracle = oracle.min(k as f64 * c);
    }
    assert!(r.passed);
    assert!((r.worst_constant - oracle).abs() < 1e-15);

    let p = SpectralModel::periodic(1.0).unwrap();
    let t = CoefficientTable::build_auto(&examples::periodic_ramp(), &p, 0, &p.index_set().up_to(200)).unwrap();
    let r = verify_lower_bound(&t, LowerBoundWeight::InverseKPlus1, DEFAULT_BOUND_THRESHOLD).unwrap();
    assert!(r.passed && r.worst_constant > 0.01);
}

#[test]
fn neumann_middle_third_zeros() {
    let r = neumann_obstruction_scan(&examples::middle_third(), 5000, DEFAULT_BOUND_THRESHOLD).unwrap();
    for k in (3..=5000).step_by(3) {
        assert!(r.zeros.contains(&k), "k={k} weighted={}", r.weighted_at(k).unwrap());
    }
    assert_eq!(r.final_min(), r.running_min.iter().copied().fold(f64::INFINITY, f64::min));
    assert!(r.final_min() <= DEFAULT_BOUND_THRESHOLD);
}

#[test]
fn neumann_irrational_decay() {
    let r = neumann_obstruction_scan(&examples::irrational_step(), 100_000, DEFAULT_BOUND_THRESHOLD).unwrap();
    assert!(r.final_min() < 0.1 * r.first_value());
    assert!(r.record_lows.len() > 3);
    assert!(r.record_lows.windows(2).all(|w| w[1].1 < w[0].1));
}

#[test]
fn harmonic_identity_cases() {
    let r = harmonic_coefficient_identity(0.0, 1).unwrap();
    assert!((r.rhs - 1.0 / (2.0 * PI.sqrt())).abs() < 1e-15);
    for (a, k) in [(0.0, 1), (1.0, 5), (0.3, 12)] {
        let r = harmonic_coefficient_identity(a, k).unwrap();
        assert!(r.corrected_error < 1e-10);
    }
    let far = harmonic_coefficient_identity(12.0, 1).unwrap();
    assert!(far.lhs.abs() < 1e-10 && far.rhs.abs() < 1e-10);
    assert!(harmonic_coefficient_identity(0.0, 0).is_err());
}

#[test]
fn hermite_bound_is_stable_on_compact_window() {
    let ks: Vec<i64> = (10..=500).step_by(10).collect();
    let scan = hermite_bound_scan(&ks, 2.0, 4001).unwrap();
    assert!(scan.stable(1.1), "{}", scan.spread);
    assert!(scan.global_max >= scan.compact_max);
}

#[test]
fn harmonic_quadrature_converges_for_high_modes() {
    let h = SpectralModel::harmonic();
    let mu = examples::half_line(0.3);
    let v = inner_product_with(&mu, &h, 150, 149, Method::Quadrature).unwrap();
    assert!(v.re.is_finite());
    let closed = inner_product_with(&mu, &h, 0, 0, Method::Quadrature).unwrap();
    assert!((closed.re - bqc_core::potentials::half_line_coefficient(0.3, 0)).abs() < 1e-13);
}

proptest! {
    #[test]
    fn periodic_conjugate_symmetry(l in -30i64..30, k in -30i64..30, a in 0.05f64..0.95, c0 in -2.0f64..2.0, c1 in -2.0f64..2.0) {
        let model = SpectralModel::periodic(0.7).unwrap();
        let mu = PiecewisePotential::new(vec![a], vec![vec![c0, c1], vec![c1]], Domain::UnitInterval).unwrap();
        let lk = inner_product(&mu, &model, l, k).unwrap();
        let kl = inner_product(&mu, &model, k, l).unwrap();
        prop_assert!((lk - kl.conj()).norm() < 1e-13);
    }
}
