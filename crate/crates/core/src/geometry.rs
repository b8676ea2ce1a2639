//! Points of the upper half-space `H = {x : x_n > 0}` and of its boundary `R^{n-1}`.
//!
//! Every object carries its own dimension and binary operations validate it.
//! Norms are computed with max-abs scaling so that coordinates up to ~1e150
//! can be squared without overflow.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Euclidean norm of a slice, scaled to avoid overflow/underflow.
pub fn norm(v: &[f64]) -> f64 {
    let scale = v.iter().fold(0.0_f64, |acc, c| acc.max(c.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let sum: f64 = v.iter().map(|c| (c / scale) * (c / scale)).sum();
    scale * sum.sqrt()
}

/// `|a - b|` for equal-length slices.
pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let scale = a
        .iter()
        .zip(b)
        .fold(0.0_f64, |acc, (x, y)| acc.max((x - y).abs()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let sum: f64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| {
            let d = (x - y) / scale;
            d * d
        })
        .sum();
    scale * sum.sqrt()
}

/// `|a - b*|` where `b*` is the reflection of `b` across the boundary plane.
pub(crate) fn distance_to_reflection(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let n = a.len();
    let diff = |i: usize| {
        if i + 1 == n {
            a[i] + b[i]
        } else {
            a[i] - b[i]
        }
    };
    let scale = (0..n).fold(0.0_f64, |acc, i| acc.max(diff(i).abs()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let sum: f64 = (0..n)
        .map(|i| {
            let d = diff(i) / scale;
            d * d
        })
        .sum();
    scale * sum.sqrt()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A point of `R^n` (n >= 3). The last coordinate is the height `x_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 3 {
            return Err(Error::InvalidDimension(coords.len()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "point coordinates must be finite: {coords:?}"
            )));
        }
        Ok(Point { coords })
    }

    /// The point `(y', 0)` on the boundary plane.
    pub fn on_boundary(yp: &BoundaryPoint) -> Self {
        let mut coords = yp.coords.clone();
        coords.push(0.0);
        Point { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Height `x_n`.
    pub fn height(&self) -> f64 {
        self.coords[self.coords.len() - 1]
    }

    /// Tangential part `x'`.
    pub fn tangential(&self) -> &[f64] {
        &self.coords[..self.coords.len() - 1]
    }

    pub fn norm(&self) -> f64 {
        norm(&self.coords)
    }

    pub fn in_half_space(&self) -> bool {
        self.height() > 0.0
    }

    /// Error unless `x_n > 0`.
    pub fn require_interior(&self) -> Result<()> {
        if self.in_half_space() {
            Ok(())
        } else {
            Err(Error::NotInHalfSpace(self.height()))
        }
    }

    pub fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: n,
                found: self.dim(),
            })
        }
    }

    /// Reflection across the boundary plane: `(x', x_n) -> (x', -x_n)`.
    pub fn reflect(&self) -> Point {
        let mut coords = self.coords.clone();
        let last = coords.len() - 1;
        coords[last] = -coords[last];
        Point { coords }
    }

    pub fn distance(&self, other: &Point) -> Result<f64> {
        other.check_dim(self.dim())?;
        Ok(distance(&self.coords, &other.coords))
    }

    pub fn dot(&self, other: &Point) -> Result<f64> {
        other.check_dim(self.dim())?;
        Ok(dot(&self.coords, &other.coords))
    }

    pub fn scaled(&self, factor: f64) -> Point {
        Point {
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Point::new(coords)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.coords
    }
}

/// A point `y'` of the boundary `R^{n-1}` (so `n - 1 >= 2`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct BoundaryPoint {
    coords: Vec<f64>,
}

impl BoundaryPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidDimension(coords.len() + 1));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "boundary coordinates must be finite: {coords:?}"
            )));
        }
        Ok(BoundaryPoint { coords })
    }

    /// Dimension of the ambient space, i.e. `len + 1`.
    pub fn ambient_dim(&self) -> usize {
        self.coords.len() + 1
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn norm(&self) -> f64 {
        norm(&self.coords)
    }

    pub fn embed(&self) -> Point {
        Point::on_boundary(self)
    }
}

impl TryFrom<Vec<f64>> for BoundaryPoint {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        BoundaryPoint::new(coords)
    }
}

impl From<BoundaryPoint> for Vec<f64> {
    fn from(p: BoundaryPoint) -> Self {
        p.coords
    }
}

/// Open ball `B(center, radius)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "ball radius must be positive and finite, got {radius}"
            )));
        }
        Ok(Ball { center, radius })
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.dim() == self.center.dim() && distance(p.coords(), self.center.coords()) < self.radius
    }
}

/// Reflection across `∂H`.
pub fn reflect(p: &Point) -> Point {
    p.reflect()
}

/// Returns `(|x - y|, |x - y*|)`.
///
/// For `x_n, y_n >= 0` the two satisfy `d_star^2 - d^2 = 4 x_n y_n`.
pub fn kelvin_distances(x: &Point, y: &Point) -> Result<(f64, f64)> {
    y.check_dim(x.dim())?;
    Ok((
        distance(x.coords(), y.coords()),
        distance_to_reflection(x.coords(), y.coords()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> Point {
        Point::new(c.to_vec()).unwrap()
    }

    #[test]
    fn reflect_flips_last_coordinate() {
        assert_eq!(reflect(&p(&[1.0, 2.0, 3.0])), p(&[1.0, 2.0, -3.0]));
        let fixed = reflect(&p(&[1.0, 2.0, 0.0]));
        assert_eq!(fixed.coords()[..2], [1.0, 2.0]);
        assert_eq!(fixed.height(), 0.0);
    }

    #[test]
    fn kelvin_distances_examples() {
        let (d, ds) = kelvin_distances(&p(&[0.0, 0.0, 1.0]), &p(&[0.0, 0.0, 2.0])).unwrap();
        assert_eq!((d, ds), (1.0, 3.0));
        let x = p(&[0.3, -1.2, 0.7]);
        let (d, ds) = kelvin_distances(&x, &x).unwrap();
        assert_eq!(d, 0.0);
        assert!((ds - 1.4).abs() < 1e-15);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let err = kelvin_distances(&p(&[0.0, 0.0, 1.0]), &p(&[0.0, 0.0, 0.0, 1.0])).unwrap_err();
        assert!(matches!(
            err,
            Error::DimensionMismatch {
                expected: 3,
                found: 4
            }
        ));
    }

    #[test]
    fn low_dimensions_are_rejected() {
        assert!(matches!(
            Point::new(vec![1.0, 2.0]),
            Err(Error::InvalidDimension(2))
        ));
        assert!(BoundaryPoint::new(vec![1.0]).is_err());
        assert!(Point::new(vec![0.0, f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn norm_survives_huge_coordinates() {
        let x = p(&[3e150, 0.0, 4e150]);
        assert!((x.norm() / 5e150 - 1.0).abs() < 1e-15);
        let tiny = p(&[3e-170, 0.0, 4e-170]);
        assert!((tiny.norm() / 5e-170 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn ball_radius_must_be_positive() {
        assert!(Ball::new(p(&[0.0, 0.0, 1.0]), 0.0).is_err());
        let b = Ball::new(p(&[0.0, 0.0, 1.0]), 0.5).unwrap();
        assert!(b.contains(&p(&[0.0, 0.1, 1.2])));
        assert!(!b.contains(&p(&[0.0, 0.0, 1.5])));
    }

    #[test]
    fn point_json_is_a_plain_array() {
        let x: Point = serde_json::from_str("[1.0, 2.0, 3.0]").unwrap();
        assert_eq!(serde_json::to_string(&x).unwrap(), "[1.0,2.0,3.0]");
        assert!(serde_json::from_str::<Point>("[1.0, 2.0]").is_err());
    }
}
