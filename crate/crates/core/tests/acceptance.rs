//! Acceptance gate. Each test covers one numbered criterion, asserts it at
//! its stated tolerance, and prints a pass line (run with `--nocapture` to
//! see them).
//!
//! Closed-form values are checked to 1e-12, extremal-function evaluations to
//! 1e-9, and the verification scans run the full 200 x 64 x 64 grid plus 1e6
//! random samples per class.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use toeplitz_sharp_core::bounds::{self, BoundOutcome, BoundReport, Quantity, Side};
use toeplitz_sharp_core::classes::{
    self, canonical_generators, extremal, CtcBase, ExtremalId, FamilySpec, SamplePoint,
    DEFAULT_ORDER,
};
use toeplitz_sharp_core::oracle::{self, OracleError, ScanConfig};
use toeplitz_sharp_core::toeplitz::{self, ToeplitzSpec};

const CLOSED_FORM_TOL: f64 = 1e-12;
const EXTREMAL_TOL: f64 = 1e-9;

fn pass(criterion: &str, detail: &str) {
    println!("criterion {criterion}: PASS ({detail})");
}

fn lower_starlike(b1: f64, b2: f64) -> BoundReport {
    match bounds::t31_lower_starlike(b1, b2).unwrap() {
        BoundOutcome::Applicable(r) => r,
        BoundOutcome::Inapplicable(na) => panic!("unexpectedly inapplicable: {}", na.reason),
    }
}

fn upper_starlike(b1: f64, b2: f64) -> BoundReport {
    match bounds::t31_upper_starlike(b1, b2).unwrap() {
        BoundOutcome::Applicable(r) => r,
        BoundOutcome::Inapplicable(na) => panic!("unexpectedly inapplicable: {}", na.reason),
    }
}

fn phi(name: &str, params: &[(&str, f64)]) -> classes::MindaGenerator {
    classes::phi_named(name, params, DEFAULT_ORDER).unwrap()
}

fn base(name: &str) -> CtcBase {
    CtcBase::named(name, DEFAULT_ORDER).unwrap()
}

fn a2a3_of(f: &toeplitz_sharp_core::TruncatedSeries) -> (Complex64, Complex64) {
    (f.coeff(2), f.coeff(3))
}

#[test]
fn criterion_1_upper_bounds_reproduce() {
    let whole = upper_starlike(2.0, 2.0);
    assert!((whole.value - 8.0).abs() < CLOSED_FORM_TOL);

    let half = phi("order", &[("a", 0.5)]);
    assert!((half.b1() - 1.0).abs() < CLOSED_FORM_TOL);
    assert!((half.b2() - 1.0).abs() < CLOSED_FORM_TOL);
    assert!((upper_starlike(half.b1(), half.b2()).value - 1.0).abs() < CLOSED_FORM_TOL);

    let sin = phi("sin", &[]);
    assert!((upper_starlike(sin.b1(), sin.b2()).value - 1.0).abs() < CLOSED_FORM_TOL);

    let convex = bounds::t31_upper_convex(2.0, 2.0).unwrap();
    assert!((convex.report().unwrap().value - 1.0).abs() < CLOSED_FORM_TOL);

    pass("1", "T31 upper: S*=8, S*(1/2)=1, sin=1, convex=1");
}

#[test]
fn criterion_2_starlike_lower_bounds_reproduce() {
    let cases: Vec<(classes::MindaGenerator, f64, &str)> = vec![
        (phi("janowski", &[("A", 1.0), ("B", -1.0)]), -1.0, "S*"),
        (phi("order", &[("a", 0.5)]), 0.0, "S*(1/2)"),
        (phi("sigmoid", &[]), 35.0 / 64.0, "sigmoid"),
        (phi("sin", &[]), -0.25, "sin"),
        (phi("nephroid", &[]), -0.25, "nephroid"),
        (phi("lemniscate", &[]), 135.0 / 256.0, "lemniscate"),
        (
            phi("parabolic", &[]),
            1.0 - 64.0 * (19.0 * PI.powi(4) - 24.0 * PI * PI - 432.0) / (9.0 * PI.powi(8)),
            "parabolic",
        ),
    ];
    for (generator, expected, label) in cases {
        let report = lower_starlike(generator.b1(), generator.b2());
        assert!(
            (report.value - expected).abs() < CLOSED_FORM_TOL,
            "{label}: got {}, expected {expected}",
            report.value
        );
    }
    pass(
        "2",
        "T31 lower: S*, S*(1/2), sigmoid, sin/nephroid, lemniscate, parabolic",
    );
}

#[test]
fn criterion_3_convex_lower_bound_reproduces() {
    let report = bounds::t31_lower_convex(2.0, 2.0).unwrap();
    assert!(report.report().unwrap().value.abs() < CLOSED_FORM_TOL);
    pass("3", "convex T31 lower: C = 0");
}

#[test]
fn criterion_4_t21_ranges_reproduce() {
    let cases: Vec<(f64, f64, &str)> = vec![
        (
            phi("parabolic", &[]).b1(),
            1.0 - 64.0 / PI.powi(4),
            "parabolic",
        ),
        (phi("sigmoid", &[]).b1(), 0.75, "sigmoid"),
    ];
    for (b1, expected_lower, label) in cases {
        let (lo, hi) = bounds::t21_starlike(b1).unwrap();
        assert!(
            (lo.value - expected_lower).abs() < CLOSED_FORM_TOL,
            "{label}"
        );
        assert_eq!(hi.value, 1.0, "{label}");
    }

    let ctc_cases: Vec<(&str, f64)> = vec![
        ("f1-base", -1.25),
        ("f4-base", -1.25),
        ("f2-base", 0.0),
        ("f3-base", -3.0),
    ];
    for (name, expected_lower) in ctc_cases {
        let g = base(name);
        let outcomes = bounds::t_bounds_ctc(g.b2().norm(), g.b3().norm()).unwrap();
        let lo = outcomes[0].report().unwrap();
        let hi = outcomes[1].report().unwrap();
        assert!(
            (lo.value - expected_lower).abs() < CLOSED_FORM_TOL,
            "{name}"
        );
        assert_eq!(hi.value, 1.0, "{name}");
    }
    pass("4", "T21 ranges: parabolic, sigmoid, F1-F4");
}

#[test]
fn criterion_5_ctc_t31_bounds_reproduce() {
    let cases: Vec<(&str, f64)> = vec![
        ("f1-base", 11.0 / 9.0),
        ("f2-base", 1.0),
        ("f3-base", 8.0),
        ("f4-base", 1.0),
    ];
    for (name, expected) in cases {
        let g = base(name);
        let outcomes = bounds::t_bounds_ctc(g.b2().norm(), g.b3().norm()).unwrap();
        let t31 = outcomes[2].report().unwrap();
        assert!(
            (t31.value - expected).abs() < CLOSED_FORM_TOL,
            "{name}: got {}, expected {expected}",
            t31.value
        );
    }
    pass("5", "ctc T31: F1=11/9, F2=1, F3=8, F4=1");
}

#[test]
fn criterion_6_t22_bounds_attained_by_f7() {
    let cases: Vec<(&str, f64)> = vec![
        ("f1-base", 181.0 / 36.0),
        ("f2-base", 2.0),
        ("f3-base", 13.0),
        ("f4-base", 145.0 / 36.0),
        ("id", 13.0 / 9.0),
    ];
    for (name, expected) in cases {
        let g = base(name);
        let outcomes = bounds::t_bounds_ctc(g.b2().norm(), g.b3().norm()).unwrap();
        let t22 = outcomes[3].report().unwrap();
        assert!(
            (t22.value - expected).abs() < CLOSED_FORM_TOL,
            "{name} bound"
        );

        let family = FamilySpec::CloseToConvex(g);
        let f7 = extremal(ExtremalId::F7, &family).unwrap();
        let (a2, a3) = a2a3_of(&f7);
        assert!(
            (toeplitz::abs_det_t22(a2, a3) - expected).abs() < EXTREMAL_TOL,
            "{name}: f7 does not attain {expected}"
        );
    }
    pass(
        "6",
        "|T22|: F1=181/36, F2=2, F3=13, F4=145/36, R=13/9, all attained by f7",
    );
}

#[test]
fn criterion_7_sharpness_suite() {
    // Starlike: f1 attains both the non-trivial T31 upper value and G(4);
    // f2 attains G(0) = 1 - B1^2/4. Convex: f3 attains G(4), f4 attains
    // G(0) = 1 - B1^2/36.
    for generator in canonical_generators(DEFAULT_ORDER) {
        let (b1, b2) = (generator.b1(), generator.b2());
        let starlike = FamilySpec::Starlike(generator.clone());
        let convex = FamilySpec::Convex(generator.clone());
        let name = generator.name().to_string();

        let f1 = extremal(ExtremalId::F1, &starlike).unwrap();
        let (a2, a3) = a2a3_of(&f1);
        let det = toeplitz::det_t31(a2, a3);
        let g4 = bounds::starlike_lower_g4(b1, b2);
        let ub = bounds::starlike_t31_upper_value(b1, b2);
        assert!(
            (det - g4).abs() < EXTREMAL_TOL,
            "{name}: det T31(f1) vs G(4)"
        );
        assert!(
            (det - ub).abs() < EXTREMAL_TOL,
            "{name}: det T31(f1) vs upper value"
        );
        assert!(
            (toeplitz::det_t21(a2) - (1.0 - b1 * b1)).abs() < EXTREMAL_TOL,
            "{name}: f1 T21"
        );

        let f2 = extremal(ExtremalId::F2, &starlike).unwrap();
        let (a2, a3) = a2a3_of(&f2);
        assert!(
            (toeplitz::det_t31(a2, a3) - bounds::starlike_lower_g0(b1)).abs() < EXTREMAL_TOL,
            "{name}: det T31(f2) vs G(0)"
        );
        assert!(
            (toeplitz::det_t21(a2) - 1.0).abs() < EXTREMAL_TOL,
            "{name}: f2 T21"
        );

        let f3 = extremal(ExtremalId::F3, &convex).unwrap();
        let (a2, a3) = a2a3_of(&f3);
        assert!(
            (toeplitz::det_t31(a2, a3) - bounds::convex_lower_g4(b1, b2)).abs() < EXTREMAL_TOL,
            "{name}: det T31(f3) vs convex G(4)"
        );
        assert!(
            (toeplitz::det_t21(a2) - (1.0 - b1 * b1 / 4.0)).abs() < EXTREMAL_TOL,
            "{name}: f3 T21"
        );

        let f4 = extremal(ExtremalId::F4, &convex).unwrap();
        let (a2, a3) = a2a3_of(&f4);
        assert!(
            (toeplitz::det_t31(a2, a3) - bounds::convex_lower_g0(b1)).abs() < EXTREMAL_TOL,
            "{name}: det T31(f4) vs convex G(0)"
        );
    }

    // Close-to-convex: f5 attains the T21 lower bound for every base and the
    // T31 value whenever that case is the non-trivial one.
    for name in CtcBase::base_names() {
        let g = base(name);
        let outcomes = bounds::t_bounds_ctc(g.b2().norm(), g.b3().norm()).unwrap();
        let family = FamilySpec::CloseToConvex(g);
        let f5 = extremal(ExtremalId::F5, &family).unwrap();
        let (a2, a3) = a2a3_of(&f5);

        let t21_lower = outcomes[0].report().unwrap().value;
        assert!(
            (toeplitz::det_t21(a2) - t21_lower).abs() < EXTREMAL_TOL,
            "{name}: f5 vs T21 lower"
        );
        let t31 = outcomes[2].report().unwrap();
        if t31.case == "box-max>1" {
            assert!(
                (toeplitz::det_t31(a2, a3) - t31.value).abs() < EXTREMAL_TOL,
                "{name}: f5 vs T31 upper"
            );
        }
    }
    pass("7", "f1..f5 attain their bounds across the registry");
}

#[test]
fn criterion_8_property_suite() {
    // Zero oracle violations for every registry class at full resolution.
    let cfg = ScanConfig::default();
    assert_eq!(cfg.grid_p1, 200);
    assert_eq!(cfg.grid_zeta_radius, 64);
    assert_eq!(cfg.grid_zeta_phase, 64);
    assert_eq!(cfg.random_samples, 1_000_000);

    let mut scanned = 0usize;
    let mut skipped = 0usize;
    let mut families: Vec<FamilySpec> = Vec::new();
    for generator in canonical_generators(DEFAULT_ORDER) {
        families.push(FamilySpec::Starlike(generator.clone()));
        families.push(FamilySpec::Convex(generator));
    }
    for name in CtcBase::base_names() {
        families.push(FamilySpec::CloseToConvex(base(name)));
    }

    for family in &families {
        match oracle::verify_family(family, &cfg) {
            Ok((outcomes, report)) => {
                scanned += 1;
                assert_eq!(report.violations_total, 0, "{}: violations", report.family);
                let find = |q: Quantity, s: Side| {
                    outcomes
                        .iter()
                        .filter_map(|o| o.report())
                        .find(|r| r.quantity == q && r.side == s)
                        .cloned()
                };
                if let Some(lo) = find(Quantity::T31, Side::Lower) {
                    assert!(
                        report.emp_min >= lo.value - 1e-9,
                        "{}: emp_min",
                        report.family
                    );
                    if lo.sharp {
                        assert!(
                            report.emp_min - lo.value <= 5e-3,
                            "{}: sharp lower bound not approached (gap {})",
                            report.family,
                            report.emp_min - lo.value
                        );
                    }
                }
                if let Some(hi) = find(Quantity::T31, Side::Upper) {
                    if hi.preconditions.iter().all(|p| p.ok) {
                        assert!(
                            report.emp_max <= hi.value + 1e-9,
                            "{}: emp_max",
                            report.family
                        );
                    }
                }
            }
            Err(OracleError::Inapplicable { .. }) => skipped += 1,
            Err(e) => panic!("scan failed: {e}"),
        }
    }
    // 8 starlike + 6 convex + 5 ctc; order(1/2) and parabolic fail the
    // convex lower-bound hypothesis B1^2 >= 2 B2.
    assert_eq!(scanned, 19, "expected 19 applicable scans");
    assert_eq!(skipped, 2, "expected 2 skipped convex scans");

    // Rotation invariance of det T_{m,1} on 1e4 random draws.
    let mut rng = ChaCha12Rng::seed_from_u64(8);
    for _ in 0..10_000 {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for _ in 0..4 {
            coeffs.push(Complex64::new(
                3.0 * rng.gen::<f64>() - 1.5,
                3.0 * rng.gen::<f64>() - 1.5,
            ));
        }
        let theta = 2.0 * PI * rng.gen::<f64>();
        let rotated: Vec<Complex64> = coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a * Complex64::new(0.0, theta * i as f64).exp())
            .collect();
        for m in 2..=5usize {
            let d = toeplitz::det_general(&ToeplitzSpec::new(m, 1, coeffs.clone()).unwrap());
            let dr = toeplitz::det_general(&ToeplitzSpec::new(m, 1, rotated.clone()).unwrap());
            assert!((d - dr).norm() <= 1e-10);
        }

        // General determinant vs closed forms at 1e-12.
        let (a2, a3) = (coeffs[1], coeffs[2]);
        let t21 = toeplitz::det_general(&ToeplitzSpec::new(2, 1, coeffs.clone()).unwrap());
        assert!((t21.re - toeplitz::det_t21(a2)).abs() < 1e-12);
        let t31 = toeplitz::det_general(&ToeplitzSpec::new(3, 1, coeffs.clone()).unwrap());
        assert!((t31.re - toeplitz::det_t31(a2, a3)).abs() < 1e-12);
        let t22 = toeplitz::det_general(&ToeplitzSpec::new(2, 2, coeffs.clone()).unwrap());
        assert!((t22 - toeplitz::det_t22(a2, a3)).norm() < 1e-12);
    }

    // Dispatch vs direct minimization on a 100 x 100 applicable grid.
    let n = 100;
    for i in 0..n {
        let b1 = 2.0 * (i as f64 + 1.0) / n as f64;
        for j in 0..n {
            let b2 = -2.0 + 4.0 * j as f64 / (n - 1) as f64;
            if b1 * b1 < b2 {
                continue;
            }
            if let BoundOutcome::Applicable(rep) = bounds::t31_lower_starlike(b1, b2).unwrap() {
                let (_, gmin) = oracle::minimize_g_direct(b1, b2);
                assert!((rep.value - gmin).abs() < 1e-12, "B1={b1} B2={b2}");
            }
        }
    }

    // Coefficient-body image: |p2| <= 2 everywhere.
    for _ in 0..1_000_000u32 {
        let p1 = 2.0 * rng.gen::<f64>();
        let r = rng.gen::<f64>().sqrt();
        let phase = 2.0 * PI * rng.gen::<f64>();
        let s = SamplePoint {
            p1,
            zeta: Complex64::new(r * phase.cos(), r * phase.sin()),
        };
        assert!(s.p2().norm() <= 2.0 + 1e-12);
    }

    pass(
        "8",
        "19 clean scans, rotation invariance, dispatch == direct minimization, |p2| <= 2",
    );
}

#[test]
fn criterion_9_deterministic_reproducibility() {
    let cfg = ScanConfig {
        grid_p1: 50,
        grid_zeta_radius: 16,
        grid_zeta_phase: 16,
        random_samples: 100_000,
        seed: 12345,
        tolerance: 1e-9,
    };
    let family = FamilySpec::Starlike(phi("sin", &[]));
    let (outcomes_a, report_a) = oracle::verify_family(&family, &cfg).unwrap();
    let (outcomes_b, report_b) = oracle::verify_family(&family, &cfg).unwrap();
    let a = serde_json::to_string(&(outcomes_a, report_a)).unwrap();
    let b = serde_json::to_string(&(outcomes_b, report_b)).unwrap();
    assert_eq!(
        a, b,
        "reports must be byte-identical for identical seed/config"
    );
    pass("9", "byte-identical JSON for identical seed/config");
}
