mod common;

use common::*;
use hpot::exceptional::*;
use hpot::{AtomicMeasure, Error, Point};
use proptest::prelude::*;

fn pt(c: &[f64]) -> Point {
    Point::new(c.to_vec()).unwrap()
}

fn measure_from(n: usize, list: &[(Vec<f64>, f64)]) -> AtomicMeasure {
    let pairs: Vec<(&[f64], f64)> = list.iter().map(|(p, w)| (p.as_slice(), *w)).collect();
    AtomicMeasure::from_pairs(n, &pairs).unwrap()
}

fn atoms(n: usize) -> impl Strategy<Value = Vec<(Vec<f64>, f64)>> {
    prop::collection::vec((prop::collection::vec(-6.0f64..6.0, n), 0.05f64..2.0), 1..6)
}

/// Supremum over a dense radius grid plus every atom distance, straight from the definition.
fn brute_maximal(list: &[(Vec<f64>, f64)], beta: f64, x: &[f64]) -> f64 {
    let mut radii: Vec<f64> = list.iter().map(|(p, _)| dist(p, x)).collect();
    radii.extend((0..400).map(|i| 1e-3 * 1.03f64.powi(i)));
    radii
        .iter()
        .filter(|r| **r > 0.0)
        .map(|&r| {
            let mass: f64 = list.iter().filter(|(p, _)| dist(p, x) <= r).map(|(_, w)| w).sum();
            mass / r.powf(beta)
        })
        .fold(0.0, f64::max)
}

proptest! {
    #[test]
    fn maximal_function_matches_definition(list in atoms(3), x in prop::collection::vec(-8.0f64..8.0, 3), beta in 0.1f64..3.0) {
        let mu = measure_from(3, &list);
        let m = maximal_function(&mu, beta, &pt(&x)).unwrap();
        prop_assume!(!m.is_infinite());
        let brute = brute_maximal(&list, beta, &x);
        prop_assert!((m.to_f64() - brute).abs() <= 1e-12 * brute);
    }

    #[test]
    fn adding_an_atom_never_decreases(list in atoms(3), extra in prop::collection::vec(-6.0f64..6.0, 3), w in 0.01f64..1.0, x in prop::collection::vec(-8.0f64..8.0, 3), beta in 0.0f64..3.0) {
        let mu = measure_from(3, &list);
        let bigger = mu.with_atom(pt(&extra), w).unwrap();
        let a = maximal_function(&mu, beta, &pt(&x)).unwrap().to_f64();
        let b = maximal_function(&bigger, beta, &pt(&x)).unwrap().to_f64();
        prop_assert!(b >= a);
    }

    #[test]
    fn exact_scaling(list in atoms(4), x in prop::collection::vec(-8.0f64..8.0, 4), beta in 0.1f64..3.0, t in 0.1f64..10.0) {
        // Mass scaling is linear; spatial dilation by 2 divides by 2^β.
        let mu = measure_from(4, &list);
        let x = pt(&x);
        let base = maximal_function(&mu, beta, &x).unwrap();
        prop_assume!(!base.is_infinite());
        let base = base.to_f64();
        let heavier = maximal_function(&mu.scaled(t).unwrap(), beta, &x).unwrap().to_f64();
        prop_assert!((heavier - t * base).abs() <= 1e-13 * t * base);
        let dilated: Vec<_> = list.iter().map(|(p, w)| (p.iter().map(|c| 2.0 * c).collect(), *w)).collect();
        let d = maximal_function(&measure_from(4, &dilated), beta, &x.scaled(2.0)).unwrap().to_f64();
        prop_assert!((d - base / 2f64.powf(beta)).abs() <= 1e-13 * base);
    }
}

#[test]
fn covering_contract_across_orders() {
    let mut r = rng(77);
    let mut checked = 0;
    for n in [3usize, 4] {
        let list: Vec<(Vec<f64>, f64)> = (0..4)
            .map(|_| {
                let dir = random_unit(&mut r, n);
                let rad: f64 = rand::Rng::gen_range(&mut r, 2.0..7.0);
                (dir.iter().map(|c| c * rad).collect(), rand::Rng::gen_range(&mut r, 0.2..1.0))
            })
            .collect();
        let mu = measure_from(n, &list);
        let delta = if n == 3 { 0.1 } else { 0.25 };
        for beta in [0.5, 1.0, 2.0, n as f64 - 1.0, n as f64] {
            let lambda = 1.5 * MaximalQuery::min_lambda(beta, &mu);
            let q = MaximalQuery::new(beta, lambda).unwrap();
            let cov = vitali_covering(&mu, &q, 1..=2, delta).unwrap();
            assert!(cov.weighted_sum <= cov.bound, "n={n} β={beta}: {} > {}", cov.weighted_sum, cov.bound);
            for k in 1..=2 {
                for x in sample_shell_members(&mu, &q, k, delta).unwrap() {
                    assert!(cov.covers(&x), "n={n} β={beta}: {:?} uncovered", x.coords());
                    assert!(exceptional_membership(&mu, &q, &x).unwrap());
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100, "only {checked} members sampled");
}

#[test]
fn members_exceed_threshold_and_lie_in_shell() {
    let mu = AtomicMeasure::from_pairs(3, &[(&[3.0, 0.0, 1.0], 1.0)]).unwrap();
    let q = MaximalQuery::new(1.0, 5.0).unwrap();
    let members = sample_shell_members(&mu, &q, 1, 0.05).unwrap();
    assert!(!members.is_empty());
    for x in &members {
        let r = x.norm();
        assert!((2.0..4.0).contains(&r));
        assert!(maximal_function(&mu, 1.0, x).unwrap().to_f64() > 5.0 / r);
    }
}

#[test]
fn rejected_parameters() {
    let mu = AtomicMeasure::from_pairs(3, &[(&[3.0, 0.0, 1.0], 1.0)]).unwrap();
    assert!(matches!(MaximalQuery::new(-1.0, 1.0), Err(Error::Domain(_))));
    assert!(matches!(MaximalQuery::new(1.0, 0.0), Err(Error::Domain(_))));
    let q = MaximalQuery::new(1.0, 4.0).unwrap();
    assert!(matches!(vitali_covering(&mu, &q, 1..=1, 0.1), Err(Error::Domain(_))));
    assert!(GrowthParams::dirichlet(3.5, 0, 3).is_err());
    assert!(GrowthParams::subharmonic(2.0, 0).is_err());
    let at = maximal_function(&mu, 1.0, &pt(&[3.0, 0.0, 1.0])).unwrap();
    assert!(at.is_infinite());
    assert_eq!(maximal_function(&mu, 0.0, &pt(&[3.0, 0.0, 1.0])).unwrap().to_f64(), 1.0);
}

#[test]
fn growth_ratio_matches_formula() {
    let g = GrowthParams::dirichlet(0.5, 2, 3).unwrap();
    let x = pt(&[1.0, 2.0, 0.5]);
    let r = growth_ratio(|p| Ok(p.norm().powi(3)), &x, &g).unwrap();
    let expect = x.norm().powi(3) / (0.5f64.powf(0.5) * x.norm().powf(2.5));
    assert!((r - expect).abs() <= 1e-14 * expect);
}
