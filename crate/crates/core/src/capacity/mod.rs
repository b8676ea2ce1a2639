//! Discretised capacities `C(E; F)` and the dyadic thinness series.
//!
//! The infimum over nonnegative densities `g` on `F` is replaced by a linear
//! program on quadrature nodes of `F`: minimise `Σ w_i g_i` subject to
//! `Σ_i w_i K(x_j, y_i) g_i >= 1` at every sample `x_j` of `E`.

pub mod lp;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{self, Point};
use crate::kernels::KernelConfig;
use crate::quadrature::{halton, hemisphere_grid, sphere_grid, GaussLegendre};

pub use lp::{lp_solve, LPInstance, LpSolution};

const LP_TOL: f64 = 1e-10;

/// Which capacity: nodes on `∂H` with kernel `|x - (y', 0)|^{-n}` (minimal
/// thinness) or nodes in `H` with kernel `|x - y|^{1-n}` (rarefiedness).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CapacityKind {
    Boundary,
    Halfspace,
}

impl CapacityKind {
    /// `n` for boundary capacities, `n - 1` for half-space ones.
    pub fn kernel_exponent(self, n: usize) -> i32 {
        match self {
            CapacityKind::Boundary => n as i32,
            CapacityKind::Halfspace => n as i32 - 1,
        }
    }
}

/// A weighted quadrature node of the window `F`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FNode {
    pub point: Vec<f64>,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapacityProblem {
    pub kind: CapacityKind,
    pub cfg: KernelConfig,
    pub e_samples: Vec<Point>,
    pub f_nodes: Vec<FNode>,
    /// Radius of the patch of `E` each sample stands for. When set, the
    /// half-space kernel is capped at its average over such a patch, so that
    /// refining `f_nodes` cannot exploit the gaps between samples.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_radius: Option<f64>,
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.into(),
    }
}

impl CapacityProblem {
    pub fn new(
        kind: CapacityKind,
        cfg: KernelConfig,
        e_samples: Vec<Point>,
        f_nodes: Vec<FNode>,
    ) -> Result<Self> {
        let p = CapacityProblem {
            kind,
            cfg,
            e_samples,
            f_nodes,
            sample_radius: None,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let p: CapacityProblem = serde_path_to_error::deserialize(de)
            .map_err(|e| schema(e.path().to_string(), e.inner().to_string()))?;
        p.validate()?;
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("capacity problem serializes")
    }

    fn validate(&self) -> Result<()> {
        let n = self.cfg.n();
        if self.e_samples.is_empty() {
            return Err(schema("e_samples", "at least one sample is required"));
        }
        if self.f_nodes.is_empty() {
            return Err(schema("f_nodes", "at least one node is required"));
        }
        for (j, x) in self.e_samples.iter().enumerate() {
            if x.dim() != n || !x.in_half_space() {
                return Err(schema(
                    format!("e_samples[{j}]"),
                    format!("expected a point of H in dimension {n}"),
                ));
            }
        }
        let node_len = match self.kind {
            CapacityKind::Boundary => n - 1,
            CapacityKind::Halfspace => n,
        };
        for (i, node) in self.f_nodes.iter().enumerate() {
            if node.point.len() != node_len || node.point.iter().any(|v| !v.is_finite()) {
                return Err(schema(
                    format!("f_nodes[{i}].point"),
                    format!("expected {node_len} finite coordinates"),
                ));
            }
            if self.kind == CapacityKind::Halfspace && !(node.point[n - 1] > 0.0) {
                return Err(schema(format!("f_nodes[{i}].point"), "node must lie in H"));
            }
            if !(node.weight > 0.0 && node.weight.is_finite()) {
                return Err(schema(format!("f_nodes[{i}].weight"), "weight must be positive"));
            }
        }
        if let Some(s) = self.sample_radius {
            if !(s > 0.0 && s.is_finite()) {
                return Err(schema("sample_radius", "radius must be positive"));
            }
        }
        Ok(())
    }

    /// Same problem with each sample standing for a patch of radius `radius`.
    pub fn with_sample_radius(mut self, radius: f64) -> Result<Self> {
        self.sample_radius = Some(radius);
        self.validate()?;
        Ok(self)
    }

    fn kernel(&self, x: &[f64], node: &[f64]) -> Result<f64> {
        let d = match self.kind {
            CapacityKind::Boundary => crate::kernels::boundary_distance(x, node),
            CapacityKind::Halfspace => {
                let d = geometry::distance(x, node);
                match self.sample_radius {
                    // The mean of |z|^{1-n} over a ball of radius s is n s^{1-n}.
                    Some(s) => {
                        let n = self.cfg.n() as f64;
                        d.max(s * n.powf(-1.0 / (n - 1.0)))
                    }
                    None => d,
                }
            }
        };
        if d == 0.0 {
            return Err(Error::singular("capacity sample coincides with a node"));
        }
        Ok(d.powi(-self.kind.kernel_exponent(self.cfg.n())))
    }

    pub fn lp_instance(&self) -> Result<LPInstance> {
        let c: Vec<f64> = self.f_nodes.iter().map(|f| f.weight).collect();
        let a = self
            .e_samples
            .iter()
            .map(|x| {
                self.f_nodes
                    .iter()
                    .map(|f| Ok(f.weight * self.kernel(x.coords(), &f.point)?))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        LPInstance::new(c, a)
    }

    pub fn solve(&self) -> Result<LpSolution> {
        lp_solve(&self.lp_instance()?, LP_TOL)
    }

    pub fn capacity(&self) -> Result<f64> {
        Ok(self.solve()?.value)
    }
}

pub fn capacity(problem: &CapacityProblem) -> Result<f64> {
    problem.capacity()
}

/// Membership predicate for the sets fed to [`thinness_series`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SetSpec {
    Empty,
    /// All of `H`.
    All,
    /// `{x : angle(x, axis) <= half_angle}` with apex at the origin.
    Cone { axis: Vec<f64>, half_angle: f64 },
    /// Open ball.
    Ball { center: Vec<f64>, radius: f64 },
    Union { sets: Vec<SetSpec> },
}

impl SetSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let s: SetSpec = serde_path_to_error::deserialize(de)
            .map_err(|e| schema(e.path().to_string(), e.inner().to_string()))?;
        Ok(s)
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            SetSpec::Empty | SetSpec::All => Ok(()),
            SetSpec::Cone { axis, half_angle } => {
                if axis.len() != n || !(geometry::norm(axis) > 0.0) {
                    return Err(schema("axis", format!("expected a nonzero vector of length {n}")));
                }
                if !(*half_angle >= 0.0 && *half_angle <= std::f64::consts::PI) {
                    return Err(schema("half_angle", "angle must lie in [0, π]"));
                }
                Ok(())
            }
            SetSpec::Ball { center, radius } => {
                if center.len() != n {
                    return Err(schema("center", format!("expected length {n}")));
                }
                if !(*radius > 0.0) {
                    return Err(schema("radius", "radius must be positive"));
                }
                Ok(())
            }
            SetSpec::Union { sets } => sets.iter().try_for_each(|s| s.validate(n)),
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            SetSpec::Empty => false,
            SetSpec::All => true,
            SetSpec::Cone { axis, half_angle } => {
                let nx = geometry::norm(x);
                if nx == 0.0 {
                    return true;
                }
                let cos = (geometry::dot(x, axis) / (nx * geometry::norm(axis))).clamp(-1.0, 1.0);
                cos.acos() <= *half_angle
            }
            SetSpec::Ball { center, radius } => geometry::distance(x, center) < *radius,
            SetSpec::Union { sets } => sets.iter().any(|s| s.contains(x)),
        }
    }
}

/// Sampling and quadrature resolution for each dyadic shell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThinnessOptions {
    /// Halton points drawn in the box around each shell before filtering.
    pub e_candidates: usize,
    /// Gauss-Legendre nodes on each of the three dyadic radial panels of `F_i`.
    pub radial_nodes: usize,
    pub polar_nodes: usize,
    pub azimuth_nodes: usize,
}

impl Default for ThinnessOptions {
    fn default() -> Self {
        ThinnessOptions {
            e_candidates: 256,
            radial_nodes: 16,
            polar_nodes: 16,
            azimuth_nodes: 64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThinnessTerm {
    pub i: u32,
    pub capacity: f64,
    pub weight: f64,
    pub product: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThinnessReport {
    pub terms: Vec<ThinnessTerm>,
    pub partial_sum: f64,
    pub i_max: u32,
    #[serde(skip)]
    pub resolution: Option<ThinnessOptions>,
}

impl ThinnessReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn nonzero_terms(&self) -> usize {
        self.terms.iter().filter(|t| t.product > 0.0).count()
    }
}

pub const MAX_SHELL: u32 = 20;

/// Unit-scale shell samples `z` with `1 <= |z| < 2`, `z_n > 0`, `2^i z ∈ set`.
fn shell_samples(set: &SetSpec, n: usize, i: u32, count: usize) -> Vec<Point> {
    let scale = 2f64.powi(i as i32);
    let mut out = Vec::new();
    let mut x = vec![0.0; n];
    for idx in 1..=count as u64 {
        let u = halton(idx, n);
        for k in 0..n - 1 {
            x[k] = 4.0 * u[k] - 2.0;
        }
        x[n - 1] = 2.0 * u[n - 1];
        let r = geometry::norm(&x);
        if x[n - 1] <= 0.0 || !(1.0..2.0).contains(&r) {
            continue;
        }
        let real: Vec<f64> = x.iter().map(|v| v * scale).collect();
        if set.contains(&real) {
            out.push(Point::new(x.clone()).expect("finite sample"));
        }
    }
    out
}

/// Radius of the ball whose volume is the share of the sampling box held by one candidate.
fn sample_spacing(n: usize, candidates: usize, omega_n: f64) -> f64 {
    let box_volume = 2f64.powi(2 * n as i32 - 1);
    (box_volume / candidates.max(1) as f64 * n as f64 / omega_n).powf(1.0 / n as f64)
}

/// Unit-scale nodes of `{1 < |y| < 8}` on `∂H` or in `H`.
pub(crate) fn window_nodes(kind: CapacityKind, n: usize, opts: &ThinnessOptions) -> Vec<FNode> {
    let (dim, dirs) = match kind {
        CapacityKind::Boundary => (n - 1, sphere_grid(n - 1, opts.polar_nodes, opts.azimuth_nodes)),
        CapacityKind::Halfspace => (n, hemisphere_grid(n, opts.polar_nodes, opts.azimuth_nodes)),
    };
    let rule = GaussLegendre::new(opts.radial_nodes);
    let mut nodes = Vec::new();
    for (a, b) in [(1.0, 2.0), (2.0, 4.0), (4.0, 8.0)] {
        for (r, wr) in rule.mapped(a, b) {
            let jac = wr * f64::powi(r, dim as i32 - 1);
            for d in &dirs {
                nodes.push(FNode {
                    point: d.unit.iter().map(|u| r * u).collect(),
                    weight: jac * d.weight,
                });
            }
        }
    }
    nodes
}

/// Partial sums of `Σ_i 2^{-in} C(E_i; F_i)` (boundary) or
/// `Σ_i 2^{-i(n-1)} C(E_i; F_i)` (half-space) for `1 <= i <= i_max`.
///
/// Each shell is solved at unit scale: both the capacity and its weight are
/// homogeneous under `x -> 2^i x`, so the product equals the unit-scale capacity.
pub fn thinness_series(
    set: &SetSpec,
    kind: CapacityKind,
    n: usize,
    i_max: u32,
    opts: &ThinnessOptions,
) -> Result<ThinnessReport> {
    let cfg = KernelConfig::new(n, 0)?;
    set.validate(n)?;
    if i_max > MAX_SHELL {
        return Err(Error::domain(format!("i_max must be at most {MAX_SHELL}, got {i_max}")));
    }
    let nodes = window_nodes(kind, n, opts);
    let sample_radius = match kind {
        CapacityKind::Boundary => None,
        CapacityKind::Halfspace => Some(sample_spacing(n, opts.e_candidates, cfg.omega_n())),
    };
    let exponent = match kind {
        CapacityKind::Boundary => n as i32,
        CapacityKind::Halfspace => n as i32 - 1,
    };
    let terms = (1..=i_max)
        .into_par_iter()
        .map(|i| {
            let samples = shell_samples(set, n, i, opts.e_candidates);
            let weight = 2f64.powi(-(i as i32) * exponent);
            if samples.is_empty() {
                return Ok(ThinnessTerm { i, capacity: 0.0, weight, product: 0.0 });
            }
            let unit = CapacityProblem {
                kind,
                cfg,
                e_samples: samples,
                f_nodes: nodes.clone(),
                sample_radius,
            }
            .capacity()?;
            Ok(ThinnessTerm {
                i,
                capacity: unit / weight,
                weight,
                product: unit,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let partial_sum = terms.iter().map(|t| t.product).sum();
    Ok(ThinnessReport {
        terms,
        partial_sum,
        i_max,
        resolution: Some(*opts),
    })
}
