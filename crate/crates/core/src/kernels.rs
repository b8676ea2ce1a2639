//! Fundamental solution, Green function and Poisson kernel of the upper
//! half-space, together with their modified versions in which the first
//! terms of the Gegenbauer expansion are subtracted for sources with `|y| > 1`.
//!
//! Sign convention: `E(x) = -r_n |x|^{2-n}`, so `G <= 0` on `H × H` and
//! `P = -∂G/∂y_n` at `y_n = 0` is positive.
//!
//! When `|x| <= |y| / 2` the modified kernels are summed directly as the
//! Gegenbauer tail `Σ_{k >= m}` instead of "kernel minus head", which keeps
//! full relative accuracy for far sources.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gegenbauer::{self, GegenbauerIter};
use crate::geometry::{self, BoundaryPoint, Point};

/// Surface area `ω_d` of the unit sphere in `R^d` (`ω_2 = 2π`, `ω_3 = 4π`).
pub fn surface_area(d: usize) -> f64 {
    assert!(d >= 1, "sphere area needs d >= 1");
    let (mut area, mut k) = if d % 2 == 1 { (2.0, 1) } else { (2.0 * PI, 2) };
    while k < d {
        area *= 2.0 * PI / k as f64;
        k += 2;
    }
    area
}

/// Dimension `n`, modification order `m` and the derived constants `ω_n`, `r_n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawConfig", into = "RawConfig")]
pub struct KernelConfig {
    n: usize,
    m: usize,
    omega_n: f64,
    r_n: f64,
}

#[derive(Serialize, Deserialize)]
struct RawConfig {
    n: usize,
    m: usize,
}

impl TryFrom<RawConfig> for KernelConfig {
    type Error = Error;

    fn try_from(raw: RawConfig) -> Result<Self> {
        KernelConfig::new(raw.n, raw.m)
    }
}

impl From<KernelConfig> for RawConfig {
    fn from(cfg: KernelConfig) -> Self {
        RawConfig { n: cfg.n, m: cfg.m }
    }
}

impl KernelConfig {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidDimension(n));
        }
        if m >= gegenbauer::MAX_DEGREE {
            return Err(Error::domain(format!(
                "modification order {m} exceeds the Gegenbauer degree cap"
            )));
        }
        let omega_n = surface_area(n);
        Ok(KernelConfig {
            n,
            m,
            omega_n,
            r_n: 1.0 / ((n - 2) as f64 * omega_n),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn omega_n(&self) -> f64 {
        self.omega_n
    }

    pub fn r_n(&self) -> f64 {
        self.r_n
    }

    /// Same dimension, different modification order.
    pub fn with_m(&self, m: usize) -> Result<Self> {
        KernelConfig::new(self.n, m)
    }

    /// `λ = (n-2)/2`, the Gegenbauer order in the expansion of `E`.
    fn lambda_e(&self) -> f64 {
        (self.n as f64 - 2.0) / 2.0
    }

    /// `λ = n/2`, the Gegenbauer order in the expansion of `P`.
    fn lambda_p(&self) -> f64 {
        self.n as f64 / 2.0
    }

    fn check(&self, x: &Point) -> Result<()> {
        x.check_dim(self.n)
    }
}

fn require_closure(x: &Point) -> Result<()> {
    if x.height() >= 0.0 {
        Ok(())
    } else {
        Err(Error::NotInHalfSpace(x.height()))
    }
}

/// Cosine of the angle between `x` and `y`, with the convention `t = 0` when `x = 0`.
fn cosine(dot: f64, norm_x: f64, norm_y: f64) -> f64 {
    if norm_x == 0.0 || norm_y == 0.0 {
        0.0
    } else {
        (dot / norm_x / norm_y).clamp(-1.0, 1.0)
    }
}

/// `Σ_{k < order} C_k^λ(t) s^k`.
fn series_head(lambda: f64, t: f64, s: f64, order: usize) -> f64 {
    let mut power = 1.0;
    let mut sum = 0.0;
    for c in GegenbauerIter::new(lambda, t).take(order) {
        sum += c * power;
        power *= s;
    }
    sum
}

/// `E(x) = -r_n |x|^{2-n}`.
pub fn fundamental(cfg: &KernelConfig, x: &Point) -> Result<f64> {
    cfg.check(x)?;
    let r = x.norm();
    if r == 0.0 {
        return Err(Error::singular("E is singular at the origin"));
    }
    Ok(-cfg.r_n * r.powi(2 - cfg.n as i32))
}

/// `G(x, y) = E(x - y) - E(x - y*)` on raw coordinates, `x != y`, heights >= 0.
pub(crate) fn green_raw(cfg: &KernelConfig, x: &[f64], y: &[f64]) -> f64 {
    let n = cfg.n;
    let d = geometry::distance(x, y);
    let d_star = geometry::distance_to_reflection(x, y);
    // (d*/d)^2 = 1 + q with q = 4 x_n y_n / d^2.
    let q = 4.0 * (x[n - 1] / d) * (y[n - 1] / d);
    let half = (n as f64 - 2.0) / 2.0;
    -cfg.r_n * d_star.powi(2 - n as i32) * (half * q.ln_1p()).exp_m1()
}

/// Green function of `H`: `G(x, y) = E(x - y) - E(x - y*)`.
pub fn green(cfg: &KernelConfig, x: &Point, y: &Point) -> Result<f64> {
    cfg.check(x)?;
    cfg.check(y)?;
    require_closure(x)?;
    require_closure(y)?;
    if x == y {
        return Err(Error::singular("G(x, y) is singular at x = y"));
    }
    Ok(green_raw(cfg, x.coords(), y.coords()))
}

/// `P(x, y') = 2 x_n / (ω_n |x - (y', 0)|^n)` on raw coordinates.
pub(crate) fn poisson_raw(cfg: &KernelConfig, x: &[f64], yp: &[f64]) -> f64 {
    let n = cfg.n;
    let d = boundary_distance(x, yp);
    2.0 * x[n - 1] / cfg.omega_n * d.powi(-(n as i32))
}

/// `|x - (y', 0)|`.
pub(crate) fn boundary_distance(x: &[f64], yp: &[f64]) -> f64 {
    let n = x.len();
    let scale = x[..n - 1]
        .iter()
        .zip(yp)
        .fold(x[n - 1].abs(), |acc, (a, b)| acc.max((a - b).abs()));
    if scale == 0.0 {
        return 0.0;
    }
    let mut sum = (x[n - 1] / scale).powi(2);
    for (a, b) in x[..n - 1].iter().zip(yp) {
        let t = (a - b) / scale;
        sum += t * t;
    }
    scale * sum.sqrt()
}

fn check_poisson_args(cfg: &KernelConfig, x: &Point, yp: &BoundaryPoint) -> Result<()> {
    cfg.check(x)?;
    if yp.ambient_dim() != cfg.n {
        return Err(Error::DimensionMismatch {
            expected: cfg.n,
            found: yp.ambient_dim(),
        });
    }
    if x.height() == 0.0 && x.tangential() == yp.coords() {
        return Err(Error::singular("P(x, y') is singular at x = (y', 0)"));
    }
    x.require_interior()
}

/// Poisson kernel of `H`.
pub fn poisson(cfg: &KernelConfig, x: &Point, yp: &BoundaryPoint) -> Result<f64> {
    check_poisson_args(cfg, x, yp)?;
    Ok(poisson_raw(cfg, x.coords(), yp.coords()))
}

/// `E_order(x - y)` on raw coordinates; `x != y` unless the tail route applies.
pub(crate) fn modified_fundamental_raw(
    cfg: &KernelConfig,
    order: usize,
    x: &[f64],
    y: &[f64],
) -> f64 {
    let n = cfg.n as i32;
    let ny = geometry::norm(y);
    let plain = || -cfg.r_n * geometry::distance(x, y).powi(2 - n);
    if order == 0 || ny <= 1.0 {
        return plain();
    }
    let nx = geometry::norm(x);
    let s = nx / ny;
    let t = cosine(geometry::dot(x, y), nx, ny);
    let lambda = cfg.lambda_e();
    let scale = cfg.r_n * ny.powi(2 - n);
    if s <= 0.5 {
        -scale * gegenbauer::series_tail(lambda, t, s, order)
    } else {
        plain() + scale * series_head(lambda, t, s, order)
    }
}

/// Modified fundamental solution `E_m(x - y)` with `m` taken from `cfg`.
///
/// For `|y| <= 1` this is `E(x - y)`; otherwise the first `m` terms of the
/// Gegenbauer expansion of `E(x - y)` in powers of `|x| / |y|` are removed.
pub fn modified_fundamental(cfg: &KernelConfig, x: &Point, y: &Point) -> Result<f64> {
    cfg.check(x)?;
    cfg.check(y)?;
    if x == y {
        return Err(Error::singular("E_m(x - y) is singular at x = y"));
    }
    Ok(modified_fundamental_raw(cfg, cfg.m, x.coords(), y.coords()))
}

/// `G_m(x, y) = E_{m+1}(x - y) - E_{m+1}(x - y*)` on raw coordinates.
pub(crate) fn modified_green_raw(cfg: &KernelConfig, x: &[f64], y: &[f64]) -> f64 {
    let n = cfg.n as i32;
    let ny = geometry::norm(y);
    if ny <= 1.0 {
        return green_raw(cfg, x, y);
    }
    let order = cfg.m + 1;
    let nx = geometry::norm(x);
    let s = nx / ny;
    let dot = geometry::dot(x, y);
    let last = x.len() - 1;
    let dot_star = dot - 2.0 * x[last] * y[last];
    let t = cosine(dot, nx, ny);
    let t_star = cosine(dot_star, nx, ny);
    let lambda = cfg.lambda_e();
    let scale = cfg.r_n * ny.powi(2 - n);
    if s <= 0.5 {
        -scale
            * (gegenbauer::series_tail(lambda, t, s, order)
                - gegenbauer::series_tail(lambda, t_star, s, order))
    } else {
        green_raw(cfg, x, y)
            + scale * (series_head(lambda, t, s, order) - series_head(lambda, t_star, s, order))
    }
}

/// Modified Green function `G_m`. Equals `G` whenever `|y| <= 1` and vanishes for `y ∈ ∂H`.
pub fn modified_green(cfg: &KernelConfig, x: &Point, y: &Point) -> Result<f64> {
    cfg.check(x)?;
    cfg.check(y)?;
    require_closure(x)?;
    require_closure(y)?;
    if x == y {
        return Err(Error::singular("G_m(x, y) is singular at x = y"));
    }
    Ok(modified_green_raw(cfg, x.coords(), y.coords()))
}

/// `P_m(x, y')` on raw coordinates, `x_n > 0`.
pub(crate) fn modified_poisson_raw(cfg: &KernelConfig, x: &[f64], yp: &[f64]) -> f64 {
    let n = cfg.n;
    let nyp = geometry::norm(yp);
    if cfg.m == 0 || nyp <= 1.0 {
        return poisson_raw(cfg, x, yp);
    }
    let nx = geometry::norm(x);
    let s = nx / nyp;
    let t = cosine(geometry::dot(&x[..n - 1], yp), nx, nyp);
    let lambda = cfg.lambda_p();
    let scale = 2.0 * x[n - 1] / cfg.omega_n * nyp.powi(-(n as i32));
    if s <= 0.5 {
        scale * gegenbauer::series_tail(lambda, t, s, cfg.m)
    } else {
        poisson_raw(cfg, x, yp) - scale * series_head(lambda, t, s, cfg.m)
    }
}

/// Modified Poisson kernel `P_m`. May be negative for `|y'| > 1`.
pub fn modified_poisson(cfg: &KernelConfig, x: &Point, yp: &BoundaryPoint) -> Result<f64> {
    check_poisson_args(cfg, x, yp)?;
    Ok(modified_poisson_raw(cfg, x.coords(), yp.coords()))
}

/// Quantities for the three classical estimates of `|G(x, y)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenBounds {
    /// `|G(x, y)|`.
    pub green_abs: f64,
    /// `r_n / |x - y|^{n-2}`.
    pub near_bound: f64,
    /// `2 x_n y_n / (ω_n |x - y|^n)`.
    pub far_bound: f64,
    /// `|G| |x - y|^{n-2} |x - y*|^2 / (x_n y_n)`, bounded by a dimensional constant.
    pub kelvin_ratio: f64,
}

pub fn green_bound_report(cfg: &KernelConfig, x: &Point, y: &Point) -> Result<GreenBounds> {
    cfg.check(x)?;
    cfg.check(y)?;
    x.require_interior()?;
    y.require_interior()?;
    if x == y {
        return Err(Error::singular("G(x, y) is singular at x = y"));
    }
    let n = cfg.n as i32;
    let (d, d_star) = geometry::kelvin_distances(x, y)?;
    let g = green_raw(cfg, x.coords(), y.coords()).abs();
    let (xn, yn) = (x.height(), y.height());
    Ok(GreenBounds {
        green_abs: g,
        near_bound: cfg.r_n * d.powi(2 - n),
        far_bound: 2.0 * xn * yn / cfg.omega_n * d.powi(-n),
        kelvin_ratio: g * d.powi(n - 2) * d_star * d_star / (xn * yn),
    })
}

/// Supremum of `kelvin_ratio` over `H × H`, from the exact one-parameter reduction
/// `kelvin_ratio = 4 r_n (1 - u^{(n-2)/2}) / (1 - u)` with `u = |x-y|^2 / |x-y*|^2 ∈ (0, 1)`.
pub fn kelvin_ratio_bound(cfg: &KernelConfig) -> f64 {
    let half = (cfg.n as f64 - 2.0) / 2.0;
    // (1 - u^a)/(1 - u) is decreasing in u for a < 1 and increasing for a > 1;
    // its limits are 1 (u -> 0) and a (u -> 1).
    4.0 * cfg.r_n * half.max(1.0)
}
