//! Boundary data `f` on `R^{n-1}` and positive atomic measures `μ` on the
//! closed half-space, with their integrability checks
//!
//! ```text
//! ∫ |f(y')| / (1 + |y'|^{n+m}) dy' < ∞        ∫ y_n / (1 + |y|^{n+m}) dμ(y) < ∞
//! ```
//!
//! Both types are read from JSON; schema violations are reported with the
//! path of the offending field.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{norm, BoundaryPoint, Point};
use crate::kernels::{surface_area, KernelConfig};
use crate::quadrature::GaussLegendre;

/// Relative size of the neglected tail in radial integrals.
const TAIL_REL_TOL: f64 = 1e-10;
const MAX_RADIUS: f64 = 1e40;

/// A point mass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Atom<P> {
    pub point: P,
    pub mass: f64,
}

/// Finite positive atomic measure in `R^n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AtomicMeasure {
    dimension: usize,
    atoms: Vec<Atom<Point>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMeasure {
    dimension: usize,
    atoms: Vec<Atom<Vec<f64>>>,
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.into(),
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        schema(path, e.into_inner().to_string())
    })
}

fn check_coords(path: &str, coords: &[f64], len: usize) -> Result<()> {
    if coords.len() != len {
        return Err(schema(
            path,
            format!("expected {len} coordinates, found {}", coords.len()),
        ));
    }
    if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
        return Err(schema(format!("{path}[{i}]"), "coordinate is not finite"));
    }
    Ok(())
}

impl AtomicMeasure {
    /// Builds a measure; masses must be positive and finite, points of dimension `dimension`.
    pub fn new(dimension: usize, atoms: Vec<Atom<Point>>) -> Result<Self> {
        if dimension < 3 {
            return Err(Error::InvalidDimension(dimension));
        }
        for (i, a) in atoms.iter().enumerate() {
            if a.point.dim() != dimension {
                return Err(schema(
                    format!("atoms[{i}].point"),
                    format!(
                        "expected {dimension} coordinates, found {}",
                        a.point.dim()
                    ),
                ));
            }
            if !(a.mass > 0.0 && a.mass.is_finite()) {
                return Err(schema(
                    format!("atoms[{i}].mass"),
                    format!("mass must be positive and finite, got {}", a.mass),
                ));
            }
        }
        Ok(AtomicMeasure { dimension, atoms })
    }

    pub fn empty(dimension: usize) -> Result<Self> {
        Self::new(dimension, Vec::new())
    }

    /// Convenience constructor from `(coords, mass)` pairs.
    pub fn from_pairs(dimension: usize, pairs: &[(&[f64], f64)]) -> Result<Self> {
        let atoms = pairs
            .iter()
            .map(|(c, mass)| {
                Ok(Atom {
                    point: Point::new(c.to_vec())?,
                    mass: *mass,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dimension, atoms)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawMeasure = parse_json(text)?;
        if raw.dimension < 3 {
            return Err(schema("dimension", "dimension must be at least 3"));
        }
        let mut atoms = Vec::with_capacity(raw.atoms.len());
        for (i, a) in raw.atoms.into_iter().enumerate() {
            let path = format!("atoms[{i}].point");
            check_coords(&path, &a.point, raw.dimension)?;
            atoms.push(Atom {
                point: Point::new(a.point)?,
                mass: a.mass,
            });
        }
        Self::new(raw.dimension, atoms)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("measure serializes")
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn atoms(&self) -> &[Atom<Point>] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.mass).sum()
    }

    /// Same atoms with every mass multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.dimension,
            self.atoms
                .iter()
                .map(|a| Atom {
                    point: a.point.clone(),
                    mass: a.mass * factor,
                })
                .collect(),
        )
    }

    pub fn with_atom(&self, point: Point, mass: f64) -> Result<Self> {
        let mut atoms = self.atoms.clone();
        atoms.push(Atom { point, mass });
        Self::new(self.dimension, atoms)
    }

    /// Error if some atom lies below the boundary plane.
    pub fn require_closed_half_space(&self) -> Result<()> {
        match self.atoms.iter().position(|a| a.point.height() < 0.0) {
            None => Ok(()),
            Some(i) => Err(schema(
                format!("atoms[{i}].point"),
                "atom lies outside the closed upper half-space",
            )),
        }
    }
}

/// Closed-form radial boundary data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", content = "params", rename_all = "snake_case")]
pub enum Family {
    /// `f(y') = (1 + |y'|^2)^{s/2}`.
    PowerGrowth { s: f64 },
    /// `f(y') = c exp(-|y'|^2 / (2σ^2))`.
    GaussianBump { c: f64, sigma: f64 },
    /// `f(y') = 1` for `|y'| <= radius`, zero outside.
    IndicatorBall { radius: f64 },
}

impl Family {
    fn validate(&self) -> Result<()> {
        let bad = |p: &str, msg: &str| Err(schema(format!("family.params.{p}"), msg));
        match *self {
            Family::PowerGrowth { s } if !s.is_finite() => bad("s", "exponent must be finite"),
            Family::GaussianBump { c, .. } if !c.is_finite() => {
                bad("c", "amplitude must be finite")
            }
            Family::GaussianBump { sigma, .. } if !(sigma > 0.0 && sigma.is_finite()) => {
                bad("sigma", "sigma must be positive")
            }
            Family::IndicatorBall { radius } if !(radius > 0.0 && radius.is_finite()) => {
                bad("radius", "radius must be positive")
            }
            _ => Ok(()),
        }
    }

    /// `f` as a function of `r = |y'|`.
    pub fn profile(&self, r: f64) -> f64 {
        match *self {
            Family::PowerGrowth { s } => (1.0 + r * r).powf(s / 2.0),
            Family::GaussianBump { c, sigma } => c * (-(r * r) / (2.0 * sigma * sigma)).exp(),
            Family::IndicatorBall { radius } => {
                if r <= radius {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// Length scale below which the profile must be resolved, and the radius
    /// beyond which that resolution is no longer needed.
    pub(crate) fn feature(&self) -> (f64, f64) {
        match *self {
            Family::PowerGrowth { .. } => (0.5, 2.0),
            Family::GaussianBump { sigma, .. } => (0.5 * sigma, 9.0 * sigma),
            Family::IndicatorBall { radius } => (radius.min(1.0), radius),
        }
    }

    /// Radius at which the profile jumps, if any.
    pub(crate) fn jump(&self) -> Option<f64> {
        match *self {
            Family::IndicatorBall { radius } => Some(radius),
            _ => None,
        }
    }

    /// Upper bound of `∫_{|y'| >= r0} |f(y')| |y'|^{-q} dy'` over `R^{d}`, `d = n - 1`,
    /// for `r0 >= 1`. Infinite when the integral diverges.
    pub(crate) fn tail_bound(&self, n: usize, q: f64, r0: f64) -> f64 {
        debug_assert!(r0 >= 1.0);
        let area = surface_area(n - 1);
        let k = (n - 2) as f64;
        match *self {
            Family::PowerGrowth { s } => {
                // For r >= 1: (1 + r^2)^{s/2} <= 2^{max(s,0)/2} r^s.
                let exponent = k + s - q;
                if exponent >= -1.0 {
                    return f64::INFINITY;
                }
                area * 2f64.powf(s.max(0.0) / 2.0) * r0.powf(exponent + 1.0) / -(exponent + 1.0)
            }
            Family::GaussianBump { c, sigma } => {
                // ∫_R^∞ r^k e^{-r^2/2σ^2} dr <= σ^2 R^{k-1} e^{-R^2/2σ^2} / (1 - (k-1)σ^2/R^2).
                let s2 = sigma * sigma;
                let denom = 1.0 - (k - 1.0) * s2 / (r0 * r0);
                if denom <= 0.0 {
                    return f64::INFINITY;
                }
                c.abs() * area * r0.powf(-q) * s2 * r0.powf(k - 1.0) * (-(r0 * r0) / (2.0 * s2)).exp()
                    / denom
            }
            Family::IndicatorBall { radius } => {
                if r0 >= radius {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
        }
    }
}

/// Boundary data `f`: either finitely many weighted points of `R^{n-1}` or a closed-form family.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryData {
    Atoms {
        dimension: usize,
        atoms: Vec<Atom<BoundaryPoint>>,
    },
    Family {
        dimension: usize,
        family: Family,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum RawKind {
    Atoms,
    Family,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBoundary {
    dimension: usize,
    kind: RawKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    atoms: Option<Vec<Atom<Vec<f64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    family: Option<Family>,
}

impl BoundaryData {
    /// Atoms on `R^{n-1}`. Masses may have either sign but must be finite.
    pub fn atoms(dimension: usize, atoms: Vec<Atom<BoundaryPoint>>) -> Result<Self> {
        if dimension < 3 {
            return Err(Error::InvalidDimension(dimension));
        }
        for (i, a) in atoms.iter().enumerate() {
            if a.point.ambient_dim() != dimension {
                return Err(schema(
                    format!("atoms[{i}].point"),
                    format!(
                        "expected {} coordinates, found {}",
                        dimension - 1,
                        a.point.coords().len()
                    ),
                ));
            }
            if !a.mass.is_finite() {
                return Err(schema(format!("atoms[{i}].mass"), "mass must be finite"));
            }
        }
        Ok(BoundaryData::Atoms { dimension, atoms })
    }

    pub fn from_pairs(dimension: usize, pairs: &[(&[f64], f64)]) -> Result<Self> {
        let atoms = pairs
            .iter()
            .map(|(c, mass)| {
                Ok(Atom {
                    point: BoundaryPoint::new(c.to_vec())?,
                    mass: *mass,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::atoms(dimension, atoms)
    }

    pub fn zero(dimension: usize) -> Result<Self> {
        Self::atoms(dimension, Vec::new())
    }

    pub fn family(dimension: usize, family: Family) -> Result<Self> {
        if dimension < 3 {
            return Err(Error::InvalidDimension(dimension));
        }
        family.validate()?;
        Ok(BoundaryData::Family { dimension, family })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawBoundary = parse_json(text)?;
        if raw.dimension < 3 {
            return Err(schema("dimension", "dimension must be at least 3"));
        }
        match raw.kind {
            RawKind::Atoms => {
                if raw.family.is_some() {
                    return Err(schema("family", "not allowed when kind is \"atoms\""));
                }
                let list = raw
                    .atoms
                    .ok_or_else(|| schema("atoms", "required when kind is \"atoms\""))?;
                let mut atoms = Vec::with_capacity(list.len());
                for (i, a) in list.into_iter().enumerate() {
                    check_coords(&format!("atoms[{i}].point"), &a.point, raw.dimension - 1)?;
                    atoms.push(Atom {
                        point: BoundaryPoint::new(a.point)?,
                        mass: a.mass,
                    });
                }
                Self::atoms(raw.dimension, atoms)
            }
            RawKind::Family => {
                if raw.atoms.is_some() {
                    return Err(schema("atoms", "not allowed when kind is \"family\""));
                }
                let family = raw
                    .family
                    .ok_or_else(|| schema("family", "required when kind is \"family\""))?;
                Self::family(raw.dimension, family)
            }
        }
    }

    pub fn to_json(&self) -> String {
        let raw = match self {
            BoundaryData::Atoms { dimension, atoms } => RawBoundary {
                dimension: *dimension,
                kind: RawKind::Atoms,
                atoms: Some(
                    atoms
                        .iter()
                        .map(|a| Atom {
                            point: a.point.coords().to_vec(),
                            mass: a.mass,
                        })
                        .collect(),
                ),
                family: None,
            },
            BoundaryData::Family { dimension, family } => RawBoundary {
                dimension: *dimension,
                kind: RawKind::Family,
                atoms: None,
                family: Some(*family),
            },
        };
        serde_json::to_string(&raw).expect("boundary data serializes")
    }

    pub fn dimension(&self) -> usize {
        match self {
            BoundaryData::Atoms { dimension, .. } | BoundaryData::Family { dimension, .. } => {
                *dimension
            }
        }
    }

    /// `f(y')` for family data; `None` for atoms.
    pub fn value_at(&self, yp: &[f64]) -> Option<f64> {
        match self {
            BoundaryData::Family { family, .. } => Some(family.profile(norm(yp))),
            BoundaryData::Atoms { .. } => None,
        }
    }

    /// Largest `|y'|` carrying data, when bounded.
    pub fn support_radius(&self) -> Option<f64> {
        match self {
            BoundaryData::Atoms { atoms, .. } => {
                Some(atoms.iter().map(|a| a.point.norm()).fold(0.0, f64::max))
            }
            BoundaryData::Family {
                family: Family::IndicatorBall { radius },
                ..
            } => Some(*radius),
            BoundaryData::Family { .. } => None,
        }
    }
}

/// Which integrability requirement a [`ConditionReport`] refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// `∫ |f(y')| / (1 + |y'|^{n+m}) dy' < ∞` for boundary data.
    BoundaryIntegrability,
    /// `∫ y_n / (1 + |y|^{n+m}) dμ(y) < ∞` for measures on `H`.
    MeasureIntegrability,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::BoundaryIntegrability => f.write_str("boundary_integrability"),
            Condition::MeasureIntegrability => f.write_str("measure_integrability"),
        }
    }
}

/// Outcome of an integrability check. `value` is `None` when the integral diverges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub condition: Condition,
    pub value: Option<f64>,
    pub satisfied: bool,
}

impl ConditionReport {
    fn finite(condition: Condition, value: f64) -> Self {
        ConditionReport {
            condition,
            value: Some(value),
            satisfied: true,
        }
    }

    fn divergent(condition: Condition) -> Self {
        ConditionReport {
            condition,
            value: None,
            satisfied: false,
        }
    }

    /// `Err(ConditionViolated)` unless satisfied.
    pub fn require(self) -> Result<Self> {
        if self.satisfied {
            Ok(self)
        } else {
            Err(Error::ConditionViolated(Box::new(self)))
        }
    }
}

fn check_dims(found: usize, cfg: &KernelConfig) -> Result<()> {
    if found == cfg.n() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: cfg.n(),
            found,
        })
    }
}

/// Evaluates `∫ |f(y')| / (1 + |y'|^{n+m}) dy'`.
///
/// Atoms give a finite sum. Families are integrated radially; power growth
/// `(1 + |y'|^2)^{s/2}` is integrable exactly when `s < m + 1`.
pub fn check_boundary_condition(f: &BoundaryData, cfg: &KernelConfig) -> Result<ConditionReport> {
    check_dims(f.dimension(), cfg)?;
    let n = cfg.n();
    let q = (n + cfg.m()) as f64;
    let cond = Condition::BoundaryIntegrability;
    match f {
        BoundaryData::Atoms { atoms, .. } => {
            let value = atoms
                .iter()
                .map(|a| a.mass.abs() / (1.0 + a.point.norm().powf(q)))
                .sum();
            Ok(ConditionReport::finite(cond, value))
        }
        BoundaryData::Family { family, .. } => {
            if let Family::PowerGrowth { s } = family {
                if *s >= cfg.m() as f64 + 1.0 {
                    return Ok(ConditionReport::divergent(cond));
                }
            }
            let area = surface_area(n - 1);
            let integrand = |r: f64| area * r.powi(n as i32 - 2) * family.profile(r).abs() / (1.0 + r.powf(q));
            let value = integrate_radial(integrand, family, |r0| family.tail_bound(n, q, r0));
            Ok(ConditionReport::finite(cond, value))
        }
    }
}

/// `∫_0^∞ g(r) dr` for a radial integrand shaped by `family`, truncated once
/// `tail(R)` drops below `TAIL_REL_TOL` of the accumulated integral.
fn integrate_radial(
    g: impl Fn(f64) -> f64,
    family: &Family,
    tail: impl Fn(f64) -> f64,
) -> f64 {
    let rule = GaussLegendre::new(24);
    let (width, reach) = family.feature();
    let mut edges = vec![0.0];
    let mut r = 0.0;
    while r < reach {
        r = (r + width).min(reach);
        edges.push(r);
    }
    if let Some(j) = family.jump() {
        if !edges.iter().any(|e| (e - j).abs() < 1e-15 * j) {
            edges.push(j);
            edges.sort_by(|a, b| a.total_cmp(b));
        }
    }
    let mut sum = 0.0;
    for w in edges.windows(2) {
        sum += rule.integrate(w[0], w[1], &g);
    }
    let mut r = edges.last().copied().unwrap_or(0.0).max(1.0);
    if r > *edges.last().unwrap() {
        sum += rule.integrate(*edges.last().unwrap(), r, &g);
    }
    while tail(r) > TAIL_REL_TOL * sum.abs() && r < MAX_RADIUS {
        sum += rule.integrate(r, 2.0 * r, &g);
        r *= 2.0;
    }
    sum
}

/// Evaluates `Σ mass_i (y_n)_i / (1 + |y_i|^{n+m})`, always finite for atomic measures.
pub fn check_measure_condition(mu: &AtomicMeasure, cfg: &KernelConfig) -> Result<ConditionReport> {
    check_dims(mu.dimension(), cfg)?;
    mu.require_closed_half_space()?;
    let q = (cfg.n() + cfg.m()) as f64;
    let value = mu
        .atoms()
        .iter()
        .map(|a| a.mass * a.point.height() / (1.0 + a.point.norm().powf(q)))
        .sum();
    Ok(ConditionReport::finite(Condition::MeasureIntegrability, value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn measure_condition_examples() {
        let cfg = KernelConfig::new(3, 1).unwrap();
        let mu = AtomicMeasure::from_pairs(3, &[(&[0.0, 0.0, 1.0], 1.0)]).unwrap();
        let rep = check_measure_condition(&mu, &cfg).unwrap();
        assert_eq!(rep.value, Some(0.5));
        assert!(rep.satisfied);
        let boundary = AtomicMeasure::from_pairs(3, &[(&[3.0, 0.0, 0.0], 2.0)]).unwrap();
        assert_eq!(check_measure_condition(&boundary, &cfg).unwrap().value, Some(0.0));
        let empty = AtomicMeasure::empty(3).unwrap();
        let rep = check_measure_condition(&empty, &cfg).unwrap();
        assert_eq!((rep.value, rep.satisfied), (Some(0.0), true));
        let below = AtomicMeasure::from_pairs(3, &[(&[0.0, 0.0, -1.0], 1.0)]).unwrap();
        assert!(matches!(
            check_measure_condition(&below, &cfg),
            Err(Error::Schema { .. })
        ));
    }

    #[test]
    fn power_growth_edge_is_rejected() {
        let cfg = KernelConfig::new(3, 1).unwrap();
        let f = BoundaryData::family(3, Family::PowerGrowth { s: 2.0 }).unwrap();
        let rep = check_boundary_condition(&f, &cfg).unwrap();
        assert!(!rep.satisfied);
        assert_eq!(rep.value, None);
        assert!(matches!(rep.require(), Err(Error::ConditionViolated(_))));
    }

    #[test]
    fn power_growth_zero_closed_form() {
        let cfg = KernelConfig::new(3, 1).unwrap();
        let f = BoundaryData::family(3, Family::PowerGrowth { s: 0.0 }).unwrap();
        let v = check_boundary_condition(&f, &cfg).unwrap().value.unwrap();
        assert!((v - PI * PI / 2.0).abs() < 1e-8, "{v}");
    }

    #[test]
    fn indicator_closed_form() {
        // n = 3, m = 0: 2π ∫_0^R r/(1 + r^3) dr, checked against a fine Simpson rule.
        let cfg = KernelConfig::new(3, 0).unwrap();
        let f = BoundaryData::family(3, Family::IndicatorBall { radius: 2.5 }).unwrap();
        let v = check_boundary_condition(&f, &cfg).unwrap().value.unwrap();
        let steps = 200_000;
        let h = 2.5 / steps as f64;
        let g = |r: f64| 2.0 * PI * r / (1.0 + r * r * r);
        let mut s = g(0.0) + g(2.5);
        for i in 1..steps {
            s += g(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        assert!((v - s * h / 3.0).abs() < 1e-10, "{v}");
    }

    #[test]
    fn atomic_boundary_condition_is_a_sum() {
        let cfg = KernelConfig::new(3, 1).unwrap();
        let f = BoundaryData::from_pairs(3, &[(&[1.0, 0.0], 2.0), (&[0.0, 0.0], -1.0)]).unwrap();
        let rep = check_boundary_condition(&f, &cfg).unwrap();
        assert_eq!(rep.value, Some(2.0 / 2.0 + 1.0));
    }

    #[test]
    fn measure_json_round_trip_and_paths() {
        let text = r#"{"dimension": 3, "atoms": [{"point": [0, 0, 1], "mass": 2.5}]}"#;
        let mu = AtomicMeasure::from_json(text).unwrap();
        assert_eq!(mu.total_mass(), 2.5);
        assert_eq!(AtomicMeasure::from_json(&mu.to_json()).unwrap(), mu);

        let err = AtomicMeasure::from_json(
            r#"{"dimension": 3, "atoms": [{"point": [0, 0, 1], "mass": 1}, {"point": [0, 1], "mass": 1}]}"#,
        )
        .unwrap_err();
        match err {
            Error::Schema { path, .. } => assert_eq!(path, "atoms[1].point"),
            other => panic!("unexpected {other:?}"),
        }
        let err = AtomicMeasure::from_json(
            r#"{"dimension": 3, "atoms": [{"point": [0, 0, 1], "mass": "x"}]}"#,
        )
        .unwrap_err();
        match err {
            Error::Schema { path, .. } => assert_eq!(path, "atoms[0].mass"),
            other => panic!("unexpected {other:?}"),
        }
        let err = AtomicMeasure::from_json(
            r#"{"dimension": 3, "atoms": [{"point": [0, 0, 1], "mass": -1}]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Schema { ref path, .. } if path == "atoms[0].mass"));
    }

    #[test]
    fn boundary_json_forms() {
        let f = BoundaryData::from_json(
            r#"{"dimension": 3, "kind": "family", "family": {"id": "gaussian_bump", "params": {"c": 1.0, "sigma": 0.5}}}"#,
        )
        .unwrap();
        assert_eq!(
            f,
            BoundaryData::family(3, Family::GaussianBump { c: 1.0, sigma: 0.5 }).unwrap()
        );
        assert_eq!(BoundaryData::from_json(&f.to_json()).unwrap(), f);

        let a = BoundaryData::from_json(
            r#"{"dimension": 4, "kind": "atoms", "atoms": [{"point": [0, 0, 0.5], "mass": 1}]}"#,
        )
        .unwrap();
        assert_eq!(BoundaryData::from_json(&a.to_json()).unwrap(), a);

        let err = BoundaryData::from_json(
            r#"{"dimension": 3, "kind": "family", "family": {"id": "sawtooth", "params": {}}}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Schema { ref path, .. } if path.starts_with("family")), "{err:?}");
        let err = BoundaryData::from_json(
            r#"{"dimension": 3, "kind": "family", "family": {"id": "gaussian_bump", "params": {"c": 1.0, "sigma": -1}}}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Schema { ref path, .. } if path == "family.params.sigma"));
        let err = BoundaryData::from_json(r#"{"dimension": 3, "kind": "atoms"}"#).unwrap_err();
        assert!(matches!(err, Error::Schema { ref path, .. } if path == "atoms"));
    }
}
