//! Quadrature building blocks: Gauss-Legendre rules, product grids on spheres
//! and hemispheres, and Halton low-discrepancy points.

use std::f64::consts::PI;

/// Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// `n`-point rule, exact for polynomials of degree `2n - 1`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
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
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights mapped to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (mid + half * x, half * w))
    }

    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A direction on the unit sphere together with its quadrature weight.
#[derive(Debug, Clone)]
pub struct Direction {
    pub unit: Vec<f64>,
    pub weight: f64,
}

/// Product rule on the unit sphere `S^{d-1} ⊂ R^d`, `d >= 2`.
///
/// Hyperspherical coordinates: each polar angle uses a `polar`-point
/// Gauss-Legendre rule on `[0, π]` with its `sin^j` Jacobian, the azimuth a
/// uniform `azimuth`-point trapezoid. Weights sum to the sphere's area. The
/// first polar angle is measured from the last coordinate axis.
pub fn sphere_grid(d: usize, polar: usize, azimuth: usize) -> Vec<Direction> {
    grid(d, polar, azimuth, PI)
}

/// Like [`sphere_grid`] but restricted to the open upper hemisphere (last coordinate > 0).
pub fn hemisphere_grid(d: usize, polar: usize, azimuth: usize) -> Vec<Direction> {
    grid(d, polar, azimuth, PI / 2.0)
}

fn grid(d: usize, polar: usize, azimuth: usize, first_max: f64) -> Vec<Direction> {
    assert!(d >= 2, "sphere grids need d >= 2");
    if d == 2 {
        let step = 2.0 * PI / azimuth as f64;
        // Offset by half a step so no node lands exactly on an axis.
        return (0..azimuth)
            .map(|j| {
                let th = (j as f64 + 0.5) * step;
                Direction {
                    unit: vec![th.cos(), th.sin()],
                    weight: step,
                }
            })
            .filter(|dir| first_max >= PI || dir.unit[1] > 0.0)
            .collect();
    }
    let inner = grid(d - 1, polar, azimuth, PI);
    let rule = GaussLegendre::new(polar);
    let mut out = Vec::with_capacity(inner.len() * polar);
    for (phi, w) in rule.mapped(0.0, first_max) {
        let (sin, cos) = phi.sin_cos();
        let jac = w * sin.powi(d as i32 - 2);
        for dir in &inner {
            let mut unit: Vec<f64> = dir.unit.iter().map(|u| u * sin).collect();
            unit.push(cos);
            out.push(Direction {
                unit,
                weight: jac * dir.weight,
            });
        }
    }
    out
}

/// Van der Corput radical inverse of `i` in `base`.
pub fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += f * (i % base) as f64;
        i /= base;
        f *= inv;
    }
    r
}

const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// The `index`-th Halton point in `[0, 1)^dim` (`dim <= 8`).
pub fn halton(index: u64, dim: usize) -> Vec<f64> {
    assert!(dim <= PRIMES.len(), "Halton sequence supports up to 8 dimensions");
    PRIMES[..dim]
        .iter()
        .map(|&b| radical_inverse(index, b))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::surface_area;

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        let rule = GaussLegendre::new(8);
        let v = rule.integrate(0.0, 2.0, |x| x.powi(15));
        assert!((v - 2f64.powi(16) / 16.0).abs() < 1e-10);
        let w: f64 = rule.mapped(-1.0, 1.0).map(|(_, w)| w).sum();
        assert!((w - 2.0).abs() < 1e-14);
    }

    #[test]
    fn gauss_legendre_odd_order_has_center_node() {
        let rule = GaussLegendre::new(5);
        assert_eq!(rule.len(), 5);
        assert!(rule.nodes[2].abs() < 1e-15);
        assert!((rule.weights[2] - 128.0 / 225.0).abs() < 1e-14);
    }

    #[test]
    fn sphere_weights_sum_to_area() {
        for d in 2..=5 {
            let total: f64 = sphere_grid(d, 12, 24).iter().map(|g| g.weight).sum();
            assert!((total / surface_area(d) - 1.0).abs() < 1e-12, "d = {d}");
            let half: f64 = hemisphere_grid(d, 12, 24).iter().map(|g| g.weight).sum();
            assert!((half / surface_area(d) - 0.5).abs() < 1e-12, "d = {d}");
        }
    }

    #[test]
    fn sphere_nodes_are_unit_vectors() {
        for g in sphere_grid(4, 5, 8) {
            let r: f64 = g.unit.iter().map(|u| u * u).sum();
            assert!((r - 1.0).abs() < 1e-14);
        }
        assert!(hemisphere_grid(3, 5, 8).iter().all(|g| g.unit[2] > 0.0));
    }

    #[test]
    fn sphere_grid_integrates_quadratics() {
        // ∫_{S^2} z^2 = 4π/3.
        let v: f64 = sphere_grid(3, 16, 20)
            .iter()
            .map(|g| g.weight * g.unit[2] * g.unit[2])
            .sum();
        assert!((v - 4.0 * PI / 3.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn halton_first_points() {
        assert_eq!(halton(1, 2), vec![0.5, 1.0 / 3.0]);
        assert_eq!(halton(2, 2), vec![0.25, 2.0 / 3.0]);
        assert_eq!(radical_inverse(0, 5), 0.0);
    }
}
