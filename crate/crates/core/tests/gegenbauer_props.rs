mod common;

use common::{gegenbauer_explicit, gegenbauer_explicit_mass};
use hpot::gegenbauer::*;
use hpot::Error;
use proptest::prelude::*;

fn gp(l: f64, k: usize) -> GegenbauerParams {
    GegenbauerParams::new(l, k).unwrap()
}

proptest! {
    #[test]
    fn recurrence_matches_explicit_sum(l in 0.25f64..3.0, k in 0usize..25, t in -1.0f64..=1.0) {
        let a = gegenbauer_eval(gp(l, k), t).unwrap();
        let b = gegenbauer_explicit(l, k, t);
        let scale = gegenbauer_at_one(gp(l, k)) + gegenbauer_explicit_mass(l, k, t);
        prop_assert!((a - b).abs() <= 1e-13 * scale, "{a} vs {b}");
    }

    #[test]
    fn bounded_by_value_at_one(l in 0.1f64..4.0, k in 0usize..60, t in -1.0f64..=1.0) {
        let v = gegenbauer_eval(gp(l, k), t).unwrap();
        prop_assert!(v.abs() <= gegenbauer_at_one(gp(l, k)) * (1.0 + 1e-12));
    }

    #[test]
    fn parity(l in 0.1f64..4.0, k in 0usize..40, t in 0.0f64..=1.0) {
        let a = gegenbauer_eval(gp(l, k), t).unwrap();
        let b = gegenbauer_eval(gp(l, k), -t).unwrap();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((a - sign * b).abs() <= 1e-13 * gegenbauer_at_one(gp(l, k)));
    }

    #[test]
    fn partial_sums_converge(l in 0.25f64..2.5, t in -1.0f64..=1.0, r in -0.6f64..0.6) {
        let s = generating_partial_sum(l, t, r, 120).unwrap();
        let f = generating_function(l, t, r);
        prop_assert!((s - f).abs() <= 1e-11 * (1.0 - r.abs()).powf(-2.0 * l));
    }

    #[test]
    fn lipschitz_bound(n in 3usize..=6, k in 1usize..25, t in -1.0f64..=1.0, s in -1.0f64..=1.0) {
        let lam = (n as f64 - 2.0) / 2.0;
        let lhs = (gegenbauer_eval(gp(lam, k), t).unwrap() - gegenbauer_eval(gp(lam, k), s).unwrap()).abs();
        let c = (n as f64 - 2.0) * gegenbauer_at_one(gp(n as f64 / 2.0, k - 1));
        prop_assert!(lhs <= c * (t - s).abs() * (1.0 + 1e-12) + 1e-13 * gegenbauer_at_one(gp(lam, k)));
    }
}

#[test]
fn value_at_one_matches_log_gamma_route() {
    // Degrees above the product cutoff use log-gamma; both must agree near the switch.
    for l in [0.5, 1.0, 1.5, 2.5] {
        for k in [60usize, 64, 65, 70, 200] {
            let at1 = gegenbauer_at_one(gp(l, k));
            let rec = gegenbauer_eval(gp(l, k), 1.0).unwrap();
            assert!((at1 - rec).abs() <= 1e-11 * at1, "l={l} k={k}: {at1} vs {rec}");
        }
    }
}

#[test]
fn domain_checks() {
    assert!(matches!(GegenbauerParams::new(0.0, 3), Err(Error::Domain(_))));
    assert!(matches!(GegenbauerParams::new(1.0, MAX_DEGREE + 1), Err(Error::Domain(_))));
    assert!(matches!(gegenbauer_eval(gp(1.0, 2), 1.5), Err(Error::Domain(_))));
    assert!(matches!(generating_partial_sum(1.0, 0.0, 1.0, 5), Err(Error::Domain(_))));
    assert_eq!(generating_partial_sum(1.5, 0.0, 0.0, 0).unwrap(), 1.0);
}

#[test]
fn iterator_agrees_with_eval() {
    let vals: Vec<f64> = GegenbauerIter::new(1.25, 0.4).take(12).collect();
    for (k, v) in vals.iter().enumerate() {
        assert_eq!(*v, gegenbauer_eval(gp(1.25, k), 0.4).unwrap());
    }
}
