//! Maximal functions of atomic measures, the dyadic Vitali covering of the
//! set where the maximal function is large, and growth-ratio scans.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{self, Ball, Point};
use crate::measures::AtomicMeasure;

/// `M(dμ)(x) = sup_r μ(B̄(x, r)) / r^β`. Infinite when `β > 0` and `x` carries an atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MaximalValue {
    Finite(f64),
    Infinite,
}

impl MaximalValue {
    pub fn is_infinite(&self) -> bool {
        matches!(self, MaximalValue::Infinite)
    }

    pub fn exceeds(&self, threshold: f64) -> bool {
        match *self {
            MaximalValue::Finite(v) => v > threshold,
            MaximalValue::Infinite => true,
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            MaximalValue::Finite(v) => v,
            MaximalValue::Infinite => f64::INFINITY,
        }
    }
}

/// Order `β` and threshold `λ` of the set `E(λ) = {|x| >= 2 : M(dμ)(x) > λ / |x|^β}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaximalQuery {
    pub beta: f64,
    pub lambda: f64,
}

impl MaximalQuery {
    pub fn new(beta: f64, lambda: f64) -> Result<Self> {
        if !(beta >= 0.0 && beta.is_finite()) {
            return Err(Error::domain(format!("beta must be finite and >= 0, got {beta}")));
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::domain(format!("lambda must be positive, got {lambda}")));
        }
        Ok(MaximalQuery { beta, lambda })
    }

    /// Smallest `λ` for which the covering bound applies: `5^β μ(R^n)`.
    pub fn min_lambda(beta: f64, mu: &AtomicMeasure) -> f64 {
        5f64.powf(beta) * mu.total_mass()
    }
}

/// Atom distances from `x` in increasing order with cumulative masses.
/// Returns the mass sitting exactly at `x` separately.
fn cumulative_profile(mu: &AtomicMeasure, x: &Point) -> (f64, Vec<(f64, f64)>) {
    let mut at_x = 0.0;
    let mut d: Vec<(f64, f64)> = Vec::with_capacity(mu.atoms().len());
    for a in mu.atoms() {
        let r = geometry::distance(x.coords(), a.point.coords());
        if r == 0.0 {
            at_x += a.mass;
        } else {
            d.push((r, a.mass));
        }
    }
    d.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut acc = at_x;
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(d.len());
    for (r, m) in d {
        acc += m;
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 = acc,
            _ => out.push((r, acc)),
        }
    }
    (at_x, out)
}

pub fn maximal_function(mu: &AtomicMeasure, beta: f64, x: &Point) -> Result<MaximalValue> {
    x.check_dim(mu.dimension())?;
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::domain(format!("beta must be finite and >= 0, got {beta}")));
    }
    if beta == 0.0 {
        return Ok(MaximalValue::Finite(mu.total_mass()));
    }
    let (at_x, profile) = cumulative_profile(mu, x);
    if at_x > 0.0 {
        return Ok(MaximalValue::Infinite);
    }
    let best = profile
        .iter()
        .map(|&(r, mass)| mass / r.powf(beta))
        .fold(0.0, f64::max);
    Ok(MaximalValue::Finite(best))
}

/// `x ∈ E(λ)`.
pub fn exceptional_membership(mu: &AtomicMeasure, q: &MaximalQuery, x: &Point) -> Result<bool> {
    let nx = x.norm();
    if nx < 2.0 {
        x.check_dim(mu.dimension())?;
        return Ok(false);
    }
    Ok(maximal_function(mu, q.beta, x)?.exceeds(q.lambda / nx.powf(q.beta)))
}

/// Smallest radius `r` with `μ(B̄(x, r)) > λ (r/|x|)^β`, if any.
fn witness_radius(mu: &AtomicMeasure, q: &MaximalQuery, x: &Point) -> Option<f64> {
    let nx = x.norm();
    let (at_x, profile) = cumulative_profile(mu, x);
    if at_x > 0.0 && q.beta > 0.0 {
        // Every r below r0 witnesses; take half of it, capped by the nearest other atom.
        let r0 = nx * (at_x / q.lambda).powf(1.0 / q.beta);
        let mut r = 0.5 * r0;
        if let Some(&(d, _)) = profile.first() {
            r = r.min(0.5 * d);
        }
        return Some(r);
    }
    profile
        .into_iter()
        .find(|&(r, mass)| mass > q.lambda * (r / nx).powf(q.beta))
        .map(|(r, _)| r)
}

/// Members of `E(λ)` on the grid `spacing · Z^n` inside `{2^k <= |x| < 2^{k+1}}`,
/// with spacing `grid_delta · 2^k`.
pub fn sample_shell_members(
    mu: &AtomicMeasure,
    q: &MaximalQuery,
    k: i32,
    grid_delta: f64,
) -> Result<Vec<Point>> {
    Ok(shell_candidates(mu, q, k, grid_delta)?
        .into_iter()
        .map(|(x, _)| x)
        .collect())
}

fn shell_candidates(
    mu: &AtomicMeasure,
    q: &MaximalQuery,
    k: i32,
    grid_delta: f64,
) -> Result<Vec<(Point, f64)>> {
    if !(grid_delta > 0.0 && grid_delta.is_finite()) {
        return Err(Error::domain(format!("grid_delta must be positive, got {grid_delta}")));
    }
    let n = mu.dimension();
    let inner = 2f64.powi(k);
    let outer = 2.0 * inner;
    let spacing = grid_delta * inner;
    let reach = (outer / spacing).ceil() as i64;
    let side = (2 * reach + 1) as u64;
    let total = side.checked_pow(n as u32).filter(|t| *t <= 200_000_000).ok_or_else(|| {
        Error::InvalidInput(format!("grid for shell {k} is too fine (grid_delta = {grid_delta})"))
    })?;

    let mut out = Vec::new();
    let mut idx = vec![-reach; n];
    let mut coords = vec![0.0; n];
    for _ in 0..total {
        for (c, &j) in coords.iter_mut().zip(&idx) {
            *c = j as f64 * spacing;
        }
        let r = geometry::norm(&coords);
        if r >= inner && r < outer && r >= 2.0 {
            let x = Point::new(coords.clone())?;
            if exceptional_membership(mu, q, &x)? {
                if let Some(rad) = witness_radius(mu, q, &x) {
                    out.push((x, rad));
                }
            }
        }
        for j in idx.iter_mut() {
            *j += 1;
            if *j <= reach {
                break;
            }
            *j = -reach;
        }
    }
    Ok(out)
}

/// Inflated Vitali balls covering the sampled part of `E(λ)` and their certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoveringResult {
    pub balls: Vec<Ball>,
    /// `Σ (ρ_j / |x_j|)^β` over the emitted balls.
    pub weighted_sum: f64,
    /// `3 μ(R^n) 5^β / λ`.
    pub bound: f64,
}

impl CoveringResult {
    pub fn covers(&self, x: &Point) -> bool {
        self.balls.iter().any(|b| b.contains(x))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("covering serializes")
    }
}

/// Greedy disjoint selection in decreasing-radius order, inflated by 5.
fn select(mut cands: Vec<(Point, f64)>) -> Vec<Ball> {
    cands.sort_by(|a, b| b.1.total_cmp(&a.1));
    let mut chosen: Vec<(Point, f64)> = Vec::new();
    for (x, r) in cands {
        let disjoint = chosen
            .iter()
            .all(|(c, rc)| geometry::distance(x.coords(), c.coords()) > r + rc);
        if disjoint {
            chosen.push((x, r));
        }
    }
    chosen
        .into_iter()
        .map(|(c, r)| Ball::new(c, 5.0 * r).expect("witness radii are positive"))
        .collect()
}

pub fn vitali_covering(
    mu: &AtomicMeasure,
    q: &MaximalQuery,
    shells: std::ops::RangeInclusive<i32>,
    grid_delta: f64,
) -> Result<CoveringResult> {
    let need = MaximalQuery::min_lambda(q.beta, mu);
    if q.lambda < need {
        return Err(Error::domain(format!(
            "lambda = {} is below 5^beta * mass = {need}",
            q.lambda
        )));
    }
    let shells: Vec<i32> = shells.collect();
    let per_shell: Vec<Vec<Ball>> = shells
        .par_iter()
        .map(|&k| shell_candidates(mu, q, k, grid_delta).map(select))
        .collect::<Result<_>>()?;
    let balls: Vec<Ball> = per_shell.into_iter().flatten().collect();
    let weighted_sum = balls
        .iter()
        .map(|b| (b.radius / b.center.norm()).powf(q.beta))
        .sum();
    Ok(CoveringResult {
        balls,
        weighted_sum,
        bound: 3.0 * mu.total_mass() * 5f64.powf(q.beta) / q.lambda,
    })
}

/// Exponents of a growth scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthParams {
    pub alpha: f64,
    pub m: usize,
}

impl GrowthParams {
    /// Poisson-integral scans: `0 < α <= n`.
    pub fn dirichlet(alpha: f64, m: usize, n: usize) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= n as f64) {
            return Err(Error::domain(format!("alpha must lie in (0, {n}], got {alpha}")));
        }
        Ok(GrowthParams { alpha, m })
    }

    /// Scans of `v + h`: `0 < α < 2`.
    pub fn subharmonic(alpha: f64, m: usize) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 2.0) {
            return Err(Error::domain(format!("alpha must lie in (0, 2), got {alpha}")));
        }
        Ok(GrowthParams { alpha, m })
    }
}

/// `|u(x)| / (x_n^{1-α} |x|^{m+α})`.
pub fn growth_ratio<F>(u_eval: F, x: &Point, g: &GrowthParams) -> Result<f64>
where
    F: Fn(&Point) -> Result<f64>,
{
    x.require_interior()?;
    let u = u_eval(x)?.abs();
    if u == 0.0 {
        return Ok(0.0);
    }
    let log = u.ln() - (1.0 - g.alpha) * x.height().ln() - (g.m as f64 + g.alpha) * x.norm().ln();
    Ok(log.exp())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub ray_index: usize,
    pub radius: f64,
    pub ratio: f64,
    #[serde(rename = "in_G")]
    pub in_g: bool,
}

/// Growth ratios at `radius · ray` for every ray and radius, ray-major.
pub fn growth_scan<F>(
    u_eval: F,
    rays: &[Point],
    radii: &[f64],
    g: &GrowthParams,
    covering: Option<&CoveringResult>,
) -> Result<Vec<GrowthRow>>
where
    F: Fn(&Point) -> Result<f64> + Sync,
{
    if radii.windows(2).any(|w| w[1] <= w[0]) || radii.iter().any(|r| !(*r > 0.0)) {
        return Err(Error::domain("radii must be positive and increasing"));
    }
    for ray in rays {
        ray.require_interior()?;
        if (ray.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::domain("rays must be unit vectors"));
        }
    }
    let jobs: Vec<(usize, f64)> = (0..rays.len())
        .flat_map(|i| radii.iter().map(move |&r| (i, r)))
        .collect();
    jobs.par_iter()
        .map(|&(i, r)| {
            let x = rays[i].scaled(r);
            Ok(GrowthRow {
                ray_index: i,
                radius: r,
                ratio: growth_ratio(&u_eval, &x, g)?,
                in_g: covering.is_some_and(|c| c.covers(&x)),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> Point {
        Point::new(c.to_vec()).unwrap()
    }

    fn origin_atom() -> AtomicMeasure {
        AtomicMeasure::from_pairs(3, &[(&[0.0, 0.0, 0.0], 1.0)]).unwrap()
    }

    #[test]
    fn maximal_function_examples() {
        let mu = origin_atom();
        assert_eq!(
            maximal_function(&mu, 2.0, &p(&[0.0, 0.0, 4.0])).unwrap(),
            MaximalValue::Finite(0.0625)
        );
        assert_eq!(
            maximal_function(&mu, 0.0, &p(&[3.0, 1.0, 1.0])).unwrap(),
            MaximalValue::Finite(1.0)
        );
        assert!(maximal_function(&mu, 1.0, &p(&[0.0, 0.0, 0.0]))
            .unwrap()
            .is_infinite());
    }

    #[test]
    fn maximal_function_uses_cumulative_mass() {
        let mu = AtomicMeasure::from_pairs(3, &[(&[0.0, 0.0, 1.0], 1.0), (&[0.0, 0.0, 2.0], 3.0)])
            .unwrap();
        // r = 1: 1/1; r = 2: 4/4 = 1; β = 1: max(1, 4/2) = 2.
        let x = p(&[0.0, 0.0, 0.0]);
        assert_eq!(maximal_function(&mu, 1.0, &x).unwrap(), MaximalValue::Finite(2.0));
    }

    #[test]
    fn origin_atom_has_empty_exceptional_set() {
        let mu = origin_atom();
        for beta in [0.5, 1.0, 2.0, 3.0] {
            let q = MaximalQuery::new(beta, 5f64.powf(beta)).unwrap();
            for x in [p(&[2.0, 0.0, 0.0]), p(&[0.0, 5.0, 7.0]), p(&[-3.0, 1.0, 0.5])] {
                assert!(!exceptional_membership(&mu, &q, &x).unwrap());
            }
            let cov = vitali_covering(&mu, &q, 1..=3, 0.25).unwrap();
            assert!(cov.balls.is_empty());
            assert_eq!(cov.weighted_sum, 0.0);
        }
        let q = MaximalQuery::new(1.0, 1e-9).unwrap();
        assert!(!exceptional_membership(&mu, &q, &p(&[1.9, 0.0, 0.0])).unwrap());
    }

    #[test]
    fn apollonius_covering() {
        let mu = AtomicMeasure::from_pairs(3, &[(&[0.0, 0.0, 4.0], 1.0)]).unwrap();
        let q = MaximalQuery::new(2.0, 25.0).unwrap();
        let cov = vitali_covering(&mu, &q, 1..=3, 0.05).unwrap();
        assert_eq!(cov.bound, 3.0);
        assert!(!cov.balls.is_empty());
        assert!(cov.weighted_sum <= cov.bound);
        for k in 1..=3 {
            for x in sample_shell_members(&mu, &q, k, 0.05).unwrap() {
                let nx = x.norm();
                assert!(nx > 5.0 * x.distance(&p(&[0.0, 0.0, 4.0])).unwrap());
                assert!(cov.covers(&x));
            }
        }
    }

    #[test]
    fn covering_refuses_small_lambda() {
        let q = MaximalQuery::new(1.0, 4.9).unwrap();
        assert!(matches!(
            vitali_covering(&origin_atom(), &q, 1..=2, 0.5),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn covering_json_shape() {
        let cov = CoveringResult {
            balls: vec![Ball::new(p(&[0.0, 0.0, 3.0]), 0.5).unwrap()],
            weighted_sum: 0.25,
            bound: 3.0,
        };
        assert_eq!(
            cov.to_json(),
            r#"{"balls":[{"center":[0.0,0.0,3.0],"radius":0.5}],"weighted_sum":0.25,"bound":3.0}"#
        );
    }

    #[test]
    fn growth_ratio_examples() {
        use crate::kernels::{poisson, KernelConfig};
        use crate::geometry::BoundaryPoint;
        let cfg = KernelConfig::new(3, 1).unwrap();
        let o = BoundaryPoint::new(vec![0.0, 0.0]).unwrap();
        let v = |x: &Point| poisson(&cfg, x, &o);
        let g = GrowthParams::dirichlet(1.0, 1, 3).unwrap();
        let r = growth_ratio(v, &p(&[0.0, 0.0, 2.0]), &g).unwrap();
        assert!((r - 1.0 / (32.0 * std::f64::consts::PI)).abs() < 1e-15);
        let r2 = growth_ratio(v, &p(&[0.0, 0.0, 4.0]), &g).unwrap();
        assert!((r / r2 - 16.0).abs() < 1e-12);
        assert_eq!(growth_ratio(|_: &Point| Ok(0.0), &p(&[1.0, 1.0, 1.0]), &g).unwrap(), 0.0);
        assert!(growth_ratio(v, &p(&[1.0, 1.0, 0.0]), &g).is_err());
    }

    #[test]
    fn growth_params_ranges() {
        assert!(GrowthParams::dirichlet(3.0, 0, 3).is_ok());
        assert!(GrowthParams::dirichlet(3.5, 0, 3).is_err());
        assert!(GrowthParams::dirichlet(0.0, 0, 3).is_err());
        assert!(GrowthParams::subharmonic(1.99, 2).is_ok());
        assert!(GrowthParams::subharmonic(2.0, 2).is_err());
    }

    #[test]
    fn scan_flags_covered_points() {
        let cov = CoveringResult {
            balls: vec![Ball::new(p(&[0.0, 0.0, 8.0]), 1.0).unwrap()],
            weighted_sum: 0.0,
            bound: 0.0,
        };
        let rays = [p(&[0.0, 0.0, 1.0]), p(&[0.6, 0.0, 0.8])];
        let g = GrowthParams::subharmonic(1.0, 0).unwrap();
        let rows = growth_scan(|_: &Point| Ok(0.0), &rays, &[4.0, 8.0], &g, Some(&cov)).unwrap();
        let flags: Vec<bool> = rows.iter().map(|r| r.in_g).collect();
        assert_eq!(flags, vec![false, true, false, false]);
        assert!(rows.iter().all(|r| r.ratio == 0.0));
        assert!(growth_scan(|_: &Point| Ok(0.0), &rays, &[8.0, 4.0], &g, None).is_err());
    }
}
