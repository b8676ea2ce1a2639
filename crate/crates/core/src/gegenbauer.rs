//! Ultraspherical (Gegenbauer) polynomials `C_k^λ(t)`.
//!
//! `C_k^λ(t)` is the coefficient of `r^k` in `(1 - 2tr + r^2)^{-λ}`. Values are
//! produced by the three-term recurrence
//!
//! ```text
//! C_0 = 1,  C_1 = 2λt,  k C_k = 2(k + λ - 1) t C_{k-1} - (k + 2λ - 2) C_{k-2}
//! ```
//!
//! which is stable for `|t| <= 1`.

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// Largest degree accepted by the evaluators.
pub const MAX_DEGREE: usize = 500;

/// Order `λ > 0` and degree `k` of a Gegenbauer polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GegenbauerParams {
    lambda: f64,
    k: usize,
}

impl GegenbauerParams {
    pub fn new(lambda: f64, k: usize) -> Result<Self> {
        check_lambda(lambda)?;
        if k > MAX_DEGREE {
            return Err(Error::domain(format!(
                "Gegenbauer degree {k} exceeds the cap {MAX_DEGREE}"
            )));
        }
        Ok(GegenbauerParams { lambda, k })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn degree(&self) -> usize {
        self.k
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "Gegenbauer order must be positive, got {lambda}"
        )))
    }
}

fn check_t(t: f64) -> Result<()> {
    if t.abs() <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "Gegenbauer argument must lie in [-1, 1], got {t}"
        )))
    }
}

/// Successive values `C_0^λ(t), C_1^λ(t), ...` by the three-term recurrence.
///
/// No range checks; callers validate `λ` and `t`.
#[derive(Debug, Clone)]
pub struct GegenbauerIter {
    lambda: f64,
    t: f64,
    k: usize,
    prev: f64,
    cur: f64,
}

impl GegenbauerIter {
    pub fn new(lambda: f64, t: f64) -> Self {
        GegenbauerIter {
            lambda,
            t,
            k: 0,
            prev: 0.0,
            cur: 1.0,
        }
    }
}

impl Iterator for GegenbauerIter {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let out = self.cur;
        let k = (self.k + 1) as f64;
        let lam = self.lambda;
        let next = if self.k == 0 {
            2.0 * lam * self.t
        } else {
            (2.0 * (k + lam - 1.0) * self.t * self.cur - (k + 2.0 * lam - 2.0) * self.prev) / k
        };
        self.prev = self.cur;
        self.cur = next;
        self.k += 1;
        Some(out)
    }
}

/// `C_k^λ(t)` for `|t| <= 1`.
pub fn gegenbauer_eval(params: GegenbauerParams, t: f64) -> Result<f64> {
    check_t(t)?;
    Ok(eval_unchecked(params.lambda, params.k, t))
}

pub(crate) fn eval_unchecked(lambda: f64, k: usize, t: f64) -> f64 {
    GegenbauerIter::new(lambda, t)
        .nth(k)
        .expect("iterator is infinite")
}

/// `C_k^λ(1) = Γ(2λ + k) / (Γ(2λ) Γ(k + 1))`, the maximum of `|C_k^λ|` on `[-1, 1]`.
///
/// Low degrees use the product `Π_{j=1}^{k} (2λ + j - 1) / j`, which is exact
/// for integer values; higher ones go through log-gamma.
pub fn gegenbauer_at_one(params: GegenbauerParams) -> f64 {
    let two_l = 2.0 * params.lambda;
    if params.k <= 64 {
        let p = (1..=params.k).fold(1.0, |acc, j| acc * (two_l + j as f64 - 1.0) / j as f64);
        if p.is_finite() {
            return p;
        }
    }
    let k = params.k as f64;
    (ln_gamma(two_l + k) - ln_gamma(two_l) - ln_gamma(k + 1.0)).exp()
}

/// `Σ_{k=0}^{K} C_k^λ(t) r^k`, the truncated generating function.
pub fn generating_partial_sum(lambda: f64, t: f64, r: f64, terms: usize) -> Result<f64> {
    check_lambda(lambda)?;
    check_t(t)?;
    if r.abs() >= 1.0 {
        return Err(Error::domain(format!(
            "generating-function radius must satisfy |r| < 1, got {r}"
        )));
    }
    let mut power = 1.0;
    let mut sum = 0.0;
    for c in GegenbauerIter::new(lambda, t).take(terms + 1) {
        sum += c * power;
        power *= r;
    }
    Ok(sum)
}

/// Closed form `(1 - 2tr + r^2)^{-λ}` of the generating function.
pub fn generating_function(lambda: f64, t: f64, r: f64) -> f64 {
    (1.0 - 2.0 * t * r + r * r).powf(-lambda)
}

/// Tail `Σ_{k >= from} C_k^λ(t) s^k` for `0 <= s <= 1/2`.
///
/// Terms are summed until the next one falls below `1e-14` of the running sum
/// (at least a few terms past `from`), capped at degree 400.
pub(crate) fn series_tail(lambda: f64, t: f64, s: f64, from: usize) -> f64 {
    const CAP: usize = 400;
    const REL: f64 = 1e-14;
    debug_assert!((0.0..=0.5).contains(&s));
    if s == 0.0 {
        return if from == 0 { 1.0 } else { 0.0 };
    }
    let mut power = s.powi(from as i32);
    let mut sum = 0.0;
    // A bound on the remaining terms: |C_k| <= C_k(1), and C_k(1) s^k decays
    // geometrically once k is past 2λ.
    let mut bound_at_one = 1.0_f64;
    for (k, c) in GegenbauerIter::new(lambda, t).enumerate().take(CAP + 1) {
        if k >= from {
            let term = c * power;
            sum += term;
            power *= s;
            let bound = bound_at_one * power;
            if k >= from + 2 && bound <= REL * sum.abs().max(f64::MIN_POSITIVE) {
                break;
            }
            if power == 0.0 {
                break;
            }
        }
        let kf = k as f64;
        bound_at_one *= (2.0 * lambda + kf) / (kf + 1.0);
    }
    sum
}
