#![allow(clippy::excessive_precision)]

use std::sync::Arc;

use proptest::prelude::*;
use rmt_tw::specfun::airy_ai;
use rmt_tw::tw::painleve::{DEFAULT_S_MAX, DEFAULT_S_MIN, DEFAULT_TOL, GRID_STEP};
use rmt_tw::tw::{
    default_solution, fredholm_f2, load_or_solve, solve_hastings_mcleod, PainleveSolution,
};
use rmt_tw::{TwCdf, TwKind};

// (s, q, q') for the Hastings–McLeod solution, 50-digit mpmath Taylor
// integration of the Painlevé II equation started on the Airy tail.
const HM_TABLE: [(f64, f64, f64); 14] = [
    (4.0, 0.00095156389893065876187, -0.0019586412549620923085),
    (2.0, 0.034928149264595719589, -0.053110086787895976096),
    (1.0, 0.13564354350447159394, -0.16055871475984102453),
    (0.0, 0.36706155154807842775, -0.29537210544755005456),
    (-1.0, 0.68806036460511808165, -0.32319461366918249353),
    (-2.0, 0.98339134972780534358, -0.26310931141617436022),
    (-3.0, 1.2179531462532537233, -0.21022824898163312497),
    (-4.0, 1.411176929362393977, -0.17890232996761865991),
    (-5.0, 1.5794870878470080389, -0.15899137786918178604),
    (-6.0, 1.7310249588317786964, -0.14477828425728858699),
    (-7.0, 1.8701372759107146373, -0.13388196756870760467),
    (-8.0, 1.9995071978114653417, -0.12515576647817780585),
    (-9.0, 2.1209542684663290347, -0.1179536182701024476),
    (-10.0, 2.2357871694464086983, -0.11187399837995525554),
];

// TW1 quantiles with their probabilities rounded to two digits.
const TW1_PAIRS: [(f64, f64); 9] = [
    (-3.90, 0.01),
    (-3.18, 0.05),
    (-2.78, 0.10),
    (-1.91, 0.30),
    (-1.27, 0.50),
    (-0.59, 0.70),
    (0.45, 0.90),
    (0.98, 0.95),
    (2.02, 0.99),
];

fn q_at(sol: &PainleveSolution, s: f64) -> f64 {
    sol.eval(s).q
}

#[test]
fn hastings_mcleod_matches_oracle() {
    let sol = default_solution();
    for (s, q, qp) in HM_TABLE {
        let v = sol.eval(s);
        assert!(
            (v.q - q).abs() <= 1e-8 * q.abs().max(1e-3),
            "q({s}) = {} vs {q}",
            v.q
        );
        assert!(
            (v.qprime - qp).abs() <= 1e-7 * qp.abs().max(1e-3),
            "q'({s}) = {} vs {qp}",
            v.qprime
        );
    }
}

#[test]
fn q_at_zero() {
    assert!((q_at(&default_solution(), 0.0) - 0.3670615515).abs() <= 1e-6);
}

#[test]
fn q_follows_airy_on_the_right() {
    let sol = default_solution();
    let s = sol.upper();
    assert_eq!(q_at(&sol, s), airy_ai(s).unwrap());
    let ratio = q_at(&sol, 6.0) / airy_ai(6.0).unwrap();
    assert!((ratio - 1.0).abs() < 1e-6);
}

#[test]
fn q_follows_square_root_law_on_the_left() {
    let q = q_at(&default_solution(), -6.0);
    let ratio = q * q / 3.0;
    assert!((ratio - 1.0).abs() <= 0.02, "{ratio}");
}

#[test]
fn q_is_positive_on_the_grid() {
    let sol = default_solution();
    assert!(sol.q.iter().all(|&q| q > 0.0));
}

#[test]
fn q_satisfies_painleve_ii_at_interior_nodes() {
    let sol = default_solution();
    let (g, q) = (&sol.grid, &sol.q);
    let h = GRID_STEP;
    let mut worst: f64 = 0.0;
    for i in 2..q.len() - 2 {
        let d2 = (-q[i - 2] + 16.0 * q[i - 1] - 30.0 * q[i] + 16.0 * q[i + 1] - q[i + 2])
            / (12.0 * h * h);
        worst = worst.max((d2 - g[i] * q[i] - 2.0 * q[i].powi(3)).abs());
    }
    assert!(worst <= 1e-7, "worst residual {worst:e}");
}

#[test]
fn solver_preconditions() {
    assert!(solve_hastings_mcleod(-5.0, 8.0, 1e-10).is_err());
    assert!(solve_hastings_mcleod(-10.0, 4.0, 1e-10).is_err());
    assert!(solve_hastings_mcleod(-10.0, 8.0, 1e-3).is_err());
    assert!(solve_hastings_mcleod(-10.0, 8.0, 1e-11).is_ok());
}

#[test]
fn tw1_matches_reference_pairs() {
    let tw1 = TwCdf::with_default(TwKind::Tw1);
    for (s, p) in TW1_PAIRS {
        let f = tw1.cdf(s);
        assert!((f - p).abs() <= 0.01, "F1({s}) = {f}");
    }
}

#[test]
fn tw1_median_and_upper_quantile() {
    let tw1 = TwCdf::with_default(TwKind::Tw1);
    assert!((tw1.cdf(-1.27) - 0.50).abs() <= 0.005);
    assert!((tw1.cdf(0.98) - 0.95).abs() <= 0.005);
    let q = tw1.quantile(0.95).unwrap();
    assert!((q - 0.98).abs() <= 0.01, "{q}");
}

#[test]
fn quantile_round_trip() {
    for which in [TwKind::Tw1, TwKind::Tw2] {
        let tw = TwCdf::with_default(which);
        for i in 1..100 {
            let p = i as f64 / 100.0;
            let s = tw.quantile(p).unwrap();
            assert!((tw.cdf(s) - p).abs() <= 1e-8, "{which} p={p}");
        }
    }
    let tw = TwCdf::with_default(TwKind::Tw2);
    assert!(tw.quantile(0.0).is_err() && tw.quantile(1.0).is_err());
}

#[test]
fn limits_at_the_domain_ends() {
    for which in [TwKind::Tw1, TwKind::Tw2] {
        let tw = TwCdf::with_default(which);
        assert!(tw.cdf(DEFAULT_S_MIN) <= 1e-6);
        assert!(tw.cdf(DEFAULT_S_MAX) >= 1.0 - 1e-6);
        assert_eq!(tw.cdf(-50.0), 0.0);
        assert_eq!(tw.cdf(50.0), 1.0);
    }
}

#[test]
fn cdfs_are_monotone_and_ordered() {
    let (tw1, tw2) = (
        TwCdf::with_default(TwKind::Tw1),
        TwCdf::with_default(TwKind::Tw2),
    );
    let mut prev = (0.0, 0.0);
    for i in 0..=1800 {
        let s = -10.0 + i as f64 / 100.0;
        let cur = (tw1.cdf(s), tw2.cdf(s));
        assert!(cur.0 >= prev.0 && cur.1 >= prev.1, "s={s}");
        prev = cur;
        assert!(tw1.pdf(s) >= 0.0 && tw2.pdf(s) >= 0.0);
    }
}

#[test]
fn pdf_integrates_the_cdf() {
    let tw = TwCdf::with_default(TwKind::Tw1);
    let (a, b) = (-3.0, 1.0);
    let rule = rmt_tw::quad::GaussLegendre::new(64);
    let mass = rule.integrate(a, b, |s| tw.pdf(s));
    assert!((mass - (tw.cdf(b) - tw.cdf(a))).abs() < 1e-8);
}

#[test]
fn f1_squared_identity() {
    // F1² = F2 · exp(−I1)
    let sol = default_solution();
    let (tw1, tw2) = (
        TwCdf::new(TwKind::Tw1, Arc::clone(&sol)),
        TwCdf::new(TwKind::Tw2, Arc::clone(&sol)),
    );
    for i in 0..=60 {
        let s = -8.0 + 0.25 * i as f64;
        let i1 = sol.eval(s).i1;
        let lhs = tw1.cdf(s).powi(2);
        let rhs = tw2.cdf(s) * (-i1).exp();
        assert!((lhs / rhs - 1.0).abs() <= 1e-10, "s={s}");
    }
}

#[test]
fn fredholm_examples() {
    assert!((fredholm_f2(6.0, 64).unwrap() - 1.0).abs() <= 1e-6);
    let tw2 = TwCdf::with_default(TwKind::Tw2);
    assert!((fredholm_f2(-1.27, 128).unwrap() - tw2.cdf(-1.27)).abs() <= 1e-6);
    assert!(fredholm_f2(7.0, 64).is_err());
    assert!(fredholm_f2(0.0, 100).is_err());
}

#[test]
fn fredholm_agrees_with_painleve_on_grid() {
    let tw2 = TwCdf::with_default(TwKind::Tw2);
    for i in 0..=52 {
        let s = -8.0 + 0.25 * i as f64;
        let d = fredholm_f2(s, 256).unwrap();
        assert!(
            (d - tw2.cdf(s)).abs() <= 1e-6,
            "s={s}: {d} vs {}",
            tw2.cdf(s)
        );
    }
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let first = load_or_solve(dir.path(), DEFAULT_S_MIN, DEFAULT_S_MAX, DEFAULT_TOL).unwrap();
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let second = load_or_solve(dir.path(), DEFAULT_S_MIN, DEFAULT_S_MAX, DEFAULT_TOL).unwrap();
    assert_eq!(first.grid.len(), second.grid.len());
    for (a, b) in first.q.iter().zip(&second.q) {
        assert_eq!(a, b);
    }
    let path = files[0].as_ref().unwrap().path();
    std::fs::write(&path, "garbage\n").unwrap();
    assert!(PainleveSolution::read_csv(&path).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fredholm_is_monotone(s in -8.0f64..5.0, ds in 0.01f64..1.0) {
        let a = fredholm_f2(s, 128).unwrap();
        let b = fredholm_f2(s + ds, 128).unwrap();
        prop_assert!(b >= a - 1e-9);
    }

    #[test]
    fn cdf_values_are_probabilities(s in -20.0f64..20.0) {
        for which in [TwKind::Tw1, TwKind::Tw2] {
            let f = rmt_tw::tw::cdf(which, s);
            prop_assert!((0.0..=1.0).contains(&f));
        }
    }
}
