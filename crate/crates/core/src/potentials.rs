//! Poisson integrals `v(x) = ∫ P_m(x, y') f(y') dy'`, Green potentials
//! `h(x) = ∫ G_m(x, y) dμ(y)` and their sum `u = v + h`.
//!
//! Atomic sources are summed exactly. Family data are integrated in polar
//! coordinates centred at the foot `x'` of the evaluation point, where the
//! Poisson kernel is radial: Gauss-Legendre panels graded geometrically from
//! the height `x_n` outwards, split wherever a ray crosses a sphere on which
//! the integrand jumps, times a product grid on the sphere of directions.
//! Integration stops once the analytic tail bound falls below the requested
//! fraction of `∫ |P_m f|`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{self, BoundaryPoint, Point};
use crate::kernels::{self, KernelConfig};
use crate::measures::{
    check_boundary_condition, check_measure_condition, AtomicMeasure, BoundaryData, Family,
};
use crate::quadrature::{sphere_grid, Direction, GaussLegendre};

/// Heights below this are flagged: family quadrature degrades as the kernel peaks.
pub const NEAR_BOUNDARY_HEIGHT: f64 = 1e-6;

const MAX_RADIUS: f64 = 1e40;

/// Resolution of the polar quadrature used for family boundary data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    /// Gauss-Legendre nodes per radial panel.
    pub radial_nodes: usize,
    /// Nodes per polar angle of the direction grid (unused for `n = 3`).
    pub polar_nodes: usize,
    /// Azimuthal trapezoid nodes of the direction grid.
    pub azimuth_nodes: usize,
    /// Allowed tail bound relative to `∫ |P_m f|`.
    pub tail_rel_tol: f64,
}

impl QuadratureOptions {
    pub fn for_dimension(n: usize) -> Self {
        let (polar_nodes, azimuth_nodes) = match n {
            3 => (1, 128),
            4 => (24, 48),
            _ => (12, 24),
        };
        QuadratureOptions {
            radial_nodes: 16,
            polar_nodes,
            azimuth_nodes,
            tail_rel_tol: 1e-8,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Dirichlet,
    Green,
    Superposition,
}

#[derive(Debug, Clone)]
enum Source {
    Boundary(BoundaryData),
    Measure(AtomicMeasure),
    Both(BoundaryData, AtomicMeasure),
}

/// A potential ready for evaluation. Construction enforces the integrability
/// condition of its source, so an existing field is always well defined.
#[derive(Debug, Clone)]
pub struct PotentialField {
    cfg: KernelConfig,
    source: Source,
    quad: QuadratureOptions,
    directions: Vec<Direction>,
}

/// One evaluation with its metadata.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    /// Set when `x_n` is below [`NEAR_BOUNDARY_HEIGHT`].
    pub near_boundary: bool,
}

fn directions_for(n: usize, quad: &QuadratureOptions) -> Vec<Direction> {
    sphere_grid(n - 1, quad.polar_nodes, quad.azimuth_nodes)
}

impl PotentialField {
    /// Poisson integral of `f` with the modified kernel `P_m`.
    pub fn dirichlet(cfg: KernelConfig, f: BoundaryData) -> Result<Self> {
        check_boundary_condition(&f, &cfg)?.require()?;
        Ok(Self::build(cfg, Source::Boundary(f)))
    }

    /// Green potential of `μ` with the modified kernel `G_m`.
    pub fn green(cfg: KernelConfig, mu: AtomicMeasure) -> Result<Self> {
        check_measure_condition(&mu, &cfg)?.require()?;
        Ok(Self::build(cfg, Source::Measure(mu)))
    }

    /// `u = v + h`.
    pub fn superposition(cfg: KernelConfig, f: BoundaryData, mu: AtomicMeasure) -> Result<Self> {
        check_boundary_condition(&f, &cfg)?.require()?;
        check_measure_condition(&mu, &cfg)?.require()?;
        Ok(Self::build(cfg, Source::Both(f, mu)))
    }

    fn build(cfg: KernelConfig, source: Source) -> Self {
        let quad = QuadratureOptions::for_dimension(cfg.n());
        PotentialField {
            cfg,
            source,
            quad,
            directions: directions_for(cfg.n(), &quad),
        }
    }

    pub fn with_quadrature(mut self, quad: QuadratureOptions) -> Self {
        self.directions = directions_for(self.cfg.n(), &quad);
        self.quad = quad;
        self
    }

    pub fn config(&self) -> &KernelConfig {
        &self.cfg
    }

    pub fn kind(&self) -> FieldKind {
        match self.source {
            Source::Boundary(_) => FieldKind::Dirichlet,
            Source::Measure(_) => FieldKind::Green,
            Source::Both(..) => FieldKind::Superposition,
        }
    }

    pub fn boundary_data(&self) -> Option<&BoundaryData> {
        match &self.source {
            Source::Boundary(f) | Source::Both(f, _) => Some(f),
            Source::Measure(_) => None,
        }
    }

    pub fn measure(&self) -> Option<&AtomicMeasure> {
        match &self.source {
            Source::Measure(mu) | Source::Both(_, mu) => Some(mu),
            Source::Boundary(_) => None,
        }
    }

    /// Value of the field at `x ∈ H`.
    pub fn eval(&self, x: &Point) -> Result<f64> {
        x.check_dim(self.cfg.n())?;
        x.require_interior()?;
        let v = match self.boundary_data() {
            Some(f) => self.dirichlet_part(f, x)?,
            None => 0.0,
        };
        let h = match self.measure() {
            Some(mu) => self.green_part(mu, x)?,
            None => 0.0,
        };
        Ok(v + h)
    }

    pub fn evaluate(&self, x: &Point) -> Result<Evaluation> {
        Ok(Evaluation {
            value: self.eval(x)?,
            near_boundary: x.height() < NEAR_BOUNDARY_HEIGHT,
        })
    }

    /// Evaluates every point, in parallel, preserving input order.
    pub fn eval_batch(&self, points: &[Point]) -> Result<Vec<Evaluation>> {
        points.par_iter().map(|x| self.evaluate(x)).collect()
    }

    fn dirichlet_part(&self, f: &BoundaryData, x: &Point) -> Result<f64> {
        match f {
            BoundaryData::Atoms { atoms, .. } => Ok(atoms
                .iter()
                .map(|a| a.mass * kernels::modified_poisson_raw(&self.cfg, x.coords(), a.point.coords()))
                .sum()),
            BoundaryData::Family { family, .. } => Ok(self.family_integral(family, x.coords())),
        }
    }

    fn green_part(&self, mu: &AtomicMeasure, x: &Point) -> Result<f64> {
        let mut sum = 0.0;
        for a in mu.atoms() {
            if a.point == *x {
                return Err(Error::singular(
                    "Green potential evaluated at an atom of the measure",
                ));
            }
            sum += a.mass * kernels::modified_green_raw(&self.cfg, x.coords(), a.point.coords());
        }
        Ok(sum)
    }

    fn family_integral(&self, family: &Family, x: &[f64]) -> f64 {
        let cfg = &self.cfg;
        let n = cfg.n();
        let d = n - 1;
        let m = cfg.m();
        let xp = &x[..d];
        let xn = x[d];
        let nx = geometry::norm(x);
        let nxp = geometry::norm(xp);
        let rule = GaussLegendre::new(self.quad.radial_nodes);
        let (width, reach) = family.feature();

        let mut jumps = Vec::with_capacity(2);
        if m > 0 {
            jumps.push(1.0);
        }
        if let Some(j) = family.jump() {
            jumps.push(j);
        }

        // |P_m(x, y')| <= tail_coeff / |y'|^{n+m} once |y'| >= max(1, 2|x|).
        let tail_coeff = 2f64.powi((m + n + 1) as i32) * xn * nx.powi(m as i32) / cfg.omega_n();
        let q = (n + m) as f64;

        let mut y = vec![0.0; d];
        let mut sum = 0.0;
        let mut abs_sum = 0.0;
        let mut breaks: Vec<f64> = Vec::new();
        let (mut lo, mut hi) = (0.0, xn);
        loop {
            for dir in &self.directions {
                let theta = &dir.unit;
                breaks.clear();
                breaks.push(lo);
                breaks.push(hi);
                for &radius in &jumps {
                    for root in ray_sphere_crossings(xp, theta, radius) {
                        if root > lo && root < hi {
                            breaks.push(root);
                        }
                    }
                }
                breaks.sort_by(|a, b| a.total_cmp(b));
                for w in breaks.windows(2) {
                    let (a, b) = (w[0], w[1]);
                    let pieces = if segment_distance_to_origin(xp, theta, a, b) < reach {
                        ((b - a) / width).ceil().max(1.0) as usize
                    } else {
                        1
                    };
                    let step = (b - a) / pieces as f64;
                    for p in 0..pieces {
                        let pa = a + p as f64 * step;
                        let pb = if p + 1 == pieces { b } else { pa + step };
                        for (r, wr) in rule.mapped(pa, pb) {
                            for i in 0..d {
                                y[i] = xp[i] + r * theta[i];
                            }
                            let fy = family.profile(geometry::norm(&y));
                            if fy == 0.0 {
                                continue;
                            }
                            let k = kernels::modified_poisson_raw(cfg, x, &y);
                            let val = k * fy * r.powi(d as i32 - 1) * wr * dir.weight;
                            sum += val;
                            abs_sum += val.abs();
                        }
                    }
                }
            }
            // Beyond this shell every y' has |y'| >= hi - |x'|.
            let r0 = hi - nxp;
            if r0 >= 1.0_f64.max(2.0 * nx) {
                let bound = tail_coeff * family.tail_bound(n, q, r0);
                if bound <= self.quad.tail_rel_tol * abs_sum || bound < 1e-300 {
                    break;
                }
            }
            if hi > MAX_RADIUS {
                break;
            }
            lo = hi;
            hi *= 2.0;
        }
        sum
    }
}

/// Positive `ρ` with `|origin_offset + ρ θ| = radius`.
fn ray_sphere_crossings(offset: &[f64], theta: &[f64], radius: f64) -> impl Iterator<Item = f64> {
    let b = geometry::dot(offset, theta);
    let c = geometry::dot(offset, offset) - radius * radius;
    let disc = b * b - c;
    let roots = if disc > 0.0 {
        let sq = disc.sqrt();
        [-b - sq, -b + sq]
    } else {
        [f64::NAN, f64::NAN]
    };
    roots.into_iter().filter(|r| *r > 0.0)
}

/// `min_{ρ ∈ [a, b]} |offset + ρ θ|` for a unit vector `θ`.
fn segment_distance_to_origin(offset: &[f64], theta: &[f64], a: f64, b: f64) -> f64 {
    let rho = (-geometry::dot(offset, theta)).clamp(a, b);
    let sq: f64 = offset
        .iter()
        .zip(theta)
        .map(|(o, t)| {
            let v = o + rho * t;
            v * v
        })
        .sum();
    sq.sqrt()
}

/// `v(x) = ∫ P_m(x, y') f(y') dy'`.
pub fn eval_dirichlet(field: &PotentialField, x: &Point) -> Result<f64> {
    let f = field
        .boundary_data()
        .ok_or_else(|| Error::InvalidInput("field has no boundary data".into()))?;
    x.check_dim(field.cfg.n())?;
    x.require_interior()?;
    field.dirichlet_part(f, x)
}

/// `h(x) = Σ G_m(x, y_i) mass_i`.
pub fn eval_green_potential(field: &PotentialField, x: &Point) -> Result<f64> {
    let mu = field
        .measure()
        .ok_or_else(|| Error::InvalidInput("field has no measure".into()))?;
    x.check_dim(field.cfg.n())?;
    x.require_interior()?;
    field.green_part(mu, x)
}

/// `u(x) = v(x) + h(x)` for a Dirichlet field and a Green field sharing a configuration.
pub fn eval_superposition(vf: &PotentialField, hf: &PotentialField, x: &Point) -> Result<f64> {
    if vf.cfg != hf.cfg {
        return Err(Error::InvalidInput(format!(
            "kernel configurations differ: (n={}, m={}) vs (n={}, m={})",
            vf.cfg.n(),
            vf.cfg.m(),
            hf.cfg.n(),
            hf.cfg.m()
        )));
    }
    Ok(eval_dirichlet(vf, x)? + eval_green_potential(hf, x)?)
}

/// Values `v((x', t))` along the vertical through `x'` for each height `t`.
pub fn boundary_limit_probe(
    field: &PotentialField,
    xp: &BoundaryPoint,
    heights: &[f64],
) -> Result<Vec<(f64, f64)>> {
    if field.kind() != FieldKind::Dirichlet {
        return Err(Error::InvalidInput(
            "boundary probes need a Dirichlet field".into(),
        ));
    }
    heights
        .iter()
        .map(|&t| {
            let mut c = xp.coords().to_vec();
            c.push(t);
            let x = Point::new(c)?;
            Ok((t, eval_dirichlet(field, &x)?))
        })
        .collect()
}
