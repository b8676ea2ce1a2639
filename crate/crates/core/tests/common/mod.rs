//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `ω_n` from the Gamma function: `2 π^{n/2} / Γ(n/2)`.
pub fn omega(n: usize) -> f64 {
    2.0 * PI.powf(n as f64 / 2.0) / statrs::function::gamma::gamma(n as f64 / 2.0)
}

pub fn r_n(n: usize) -> f64 {
    1.0 / ((n as f64 - 2.0) * omega(n))
}

/// Explicit sum `Σ_j (-1)^j (λ)_{k-j} / (j! (k-2j)!) (2t)^{k-2j}`.
pub fn gegenbauer_explicit(lambda: f64, k: usize, t: f64) -> f64 {
    explicit_terms(lambda, k, t).iter().sum()
}

/// Sum of term magnitudes; bounds the rounding error of the explicit sum.
pub fn gegenbauer_explicit_mass(lambda: f64, k: usize, t: f64) -> f64 {
    explicit_terms(lambda, k, t).iter().map(|v| v.abs()).sum()
}

fn explicit_terms(lambda: f64, k: usize, t: f64) -> Vec<f64> {
    let mut terms = Vec::with_capacity(k / 2 + 1);
    for j in 0..=k / 2 {
        let mut poch = 1.0;
        for i in 0..k - j {
            poch *= lambda + i as f64;
        }
        let mut denom = 1.0;
        for i in 1..=j {
            denom *= i as f64;
        }
        for i in 1..=k - 2 * j {
            denom *= i as f64;
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        terms.push(sign * poch / denom * (2.0 * t).powi((k - 2 * j) as i32));
    }
    terms
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum::<f64>().sqrt()
}

fn cosine(x: &[f64], y: &[f64]) -> f64 {
    let nx = norm(x);
    if nx == 0.0 {
        return 0.0;
    }
    let d: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    (d / (nx * norm(y))).clamp(-1.0, 1.0)
}

pub fn e_oracle(n: usize, z: &[f64]) -> f64 {
    -r_n(n) * norm(z).powf(2.0 - n as f64)
}

/// `E_m(x - y)` straight from the piecewise definition.
pub fn em_oracle(n: usize, m: usize, x: &[f64], y: &[f64]) -> f64 {
    let diff: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    let mut v = e_oracle(n, &diff);
    let ny = norm(y);
    if ny > 1.0 {
        let t = cosine(x, y);
        let lam = (n as f64 - 2.0) / 2.0;
        for k in 0..m {
            v += r_n(n) * norm(x).powi(k as i32) * gegenbauer_explicit(lam, k, t)
                / ny.powf(n as f64 - 2.0 + k as f64);
        }
    }
    v
}

pub fn gm_oracle(n: usize, m: usize, x: &[f64], y: &[f64]) -> f64 {
    let mut ys = y.to_vec();
    ys[n - 1] = -ys[n - 1];
    em_oracle(n, m + 1, x, y) - em_oracle(n, m + 1, x, &ys)
}

pub fn p_oracle(n: usize, x: &[f64], yp: &[f64]) -> f64 {
    let mut y = yp.to_vec();
    y.push(0.0);
    2.0 * x[n - 1] / (omega(n) * dist(x, &y).powi(n as i32))
}

pub fn pm_oracle(n: usize, m: usize, x: &[f64], yp: &[f64]) -> f64 {
    let mut v = p_oracle(n, x, yp);
    let ny = norm(yp);
    if ny > 1.0 {
        let mut y = yp.to_vec();
        y.push(0.0);
        let t = cosine(x, &y);
        for k in 0..m {
            v -= 2.0 * x[n - 1] * norm(x).powi(k as i32) * gegenbauer_explicit(n as f64 / 2.0, k, t)
                / (omega(n) * ny.powi((n + k) as i32));
        }
    }
    v
}

/// Normalised finite-difference Laplacian residual `h² |Δ_h u(x)| / max_stencil |u|`,
/// with the fourth-order central stencil along each axis.
pub fn fd_residual(u: impl Fn(&[f64]) -> f64, x: &[f64], h: f64) -> f64 {
    let c = u(x);
    let mut acc = -30.0 * x.len() as f64 * c;
    let mut big = c.abs();
    let mut p = x.to_vec();
    for i in 0..x.len() {
        for (s, w) in [(h, 16.0), (-h, 16.0), (2.0 * h, -1.0), (-2.0 * h, -1.0)] {
            p[i] = x[i] + s;
            let v = u(&p);
            acc += w * v;
            big = big.max(v.abs());
        }
        p[i] = x[i];
    }
    if big == 0.0 {
        0.0
    } else {
        acc.abs() / (12.0 * big)
    }
}

/// Step `1e-2 · dist` to the nearest singularity, kept small enough that the
/// stencil stays inside `H`.
pub fn fd_step(dist_to_singularity: f64, height: f64) -> f64 {
    (1e-2 * dist_to_singularity).min(0.4 * height)
}

/// Solves a square system by Gaussian elimination with partial pivoting.
fn solve_square(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Some(x)
}

/// `min c·g s.t. A g >= 1, g >= 0` by enumerating every basic feasible point.
pub fn lp_vertex_oracle(c: &[f64], a: &[Vec<f64>]) -> Option<f64> {
    let k = c.len();
    let m = a.len();
    // Constraint i < m: row i tight; i >= m: g_{i-m} = 0.
    let total = m + k;
    let mut best: Option<f64> = None;
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let mut rows = Vec::with_capacity(k);
        let mut rhs = Vec::with_capacity(k);
        for &s in &subset {
            if s < m {
                rows.push(a[s].clone());
                rhs.push(1.0);
            } else {
                let mut e = vec![0.0; k];
                e[s - m] = 1.0;
                rows.push(e);
                rhs.push(0.0);
            }
        }
        if let Some(g) = solve_square(rows, rhs) {
            let feasible = g.iter().all(|v| *v >= -1e-10)
                && a.iter().all(|row| row.iter().zip(&g).map(|(p, q)| p * q).sum::<f64>() >= 1.0 - 1e-10);
            if feasible {
                let val: f64 = c.iter().zip(&g).map(|(p, q)| p * q).sum();
                best = Some(best.map_or(val, |b: f64| b.min(val)));
            }
        }
        // Next k-subset of 0..total in lexicographic order.
        let mut i = k;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if subset[i] < total - k + i {
                break;
            }
        }
        subset[i] += 1;
        for j in i + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

/// A random covering LP with strictly positive objective and at least one
/// positive entry per row.
pub fn random_lp(rng: &mut impl Rng, rows: usize, cols: usize) -> (Vec<f64>, Vec<Vec<f64>>) {
    let c: Vec<f64> = (0..cols).map(|_| rng.gen_range(0.1..3.0)).collect();
    let a: Vec<Vec<f64>> = (0..rows)
        .map(|_| {
            let mut row: Vec<f64> = (0..cols)
                .map(|_| if rng.gen_bool(0.3) { 0.0 } else { rng.gen_range(0.0..2.0) })
                .collect();
            let j = rng.gen_range(0..cols);
            row[j] = rng.gen_range(0.5..2.0);
            row
        })
        .collect();
    (c, a)
}

/// A point of `H` with tangential coordinates in `[-w, w]` and height in `[lo, hi]`.
pub fn random_interior(rng: &mut impl Rng, n: usize, w: f64, lo: f64, hi: f64) -> Vec<f64> {
    let mut x: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(-w..w)).collect();
    x.push(rng.gen_range(lo..hi));
    x
}

/// A uniformly random unit vector of `R^d`.
pub fn random_unit(rng: &mut impl Rng, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r = norm(&v);
        if r > 1e-3 && r <= 1.0 {
            return v.iter().map(|a| a / r).collect();
        }
    }
}
