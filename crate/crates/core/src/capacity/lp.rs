//! Dense simplex for covering programs `min c·g  s.t.  A g >= 1,  g >= 0`
//! with `c >= 0` and `A >= 0`.
//!
//! With surplus variables as the starting basis every reduced cost is a cost
//! `c_i >= 0`, so the dual simplex method needs no phase one. The dual
//! multipliers are read off the final reduced costs of the surplus columns.

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-12;
const MAX_DEGENERATE_DANTZIG: usize = 50;
const FEAS_EPS: f64 = 1e-12;

/// A covering LP. `a` is stored row-major, one row per constraint.
#[derive(Debug, Clone, PartialEq)]
pub struct LPInstance {
    pub c: Vec<f64>,
    pub a: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    /// Primal minimiser, feasible to within the requested tolerance.
    pub g: Vec<f64>,
    /// `c · g`.
    pub value: f64,
    /// Optimal dual multipliers, one per constraint. `Σ w` is a lower bound on the optimum.
    pub dual: Vec<f64>,
}

impl LpSolution {
    pub fn dual_value(&self) -> f64 {
        self.dual.iter().sum()
    }
}

impl LPInstance {
    pub fn new(c: Vec<f64>, a: Vec<Vec<f64>>) -> Result<Self> {
        let lp = LPInstance { c, a };
        lp.validate()?;
        Ok(lp)
    }

    pub fn rows(&self) -> usize {
        self.a.len()
    }

    pub fn cols(&self) -> usize {
        self.c.len()
    }

    fn validate(&self) -> Result<()> {
        let k = self.c.len();
        if k == 0 {
            return Err(Error::InvalidInput("LP has no variables".into()));
        }
        if self.c.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::InvalidInput("objective must be finite and nonnegative".into()));
        }
        for (j, row) in self.a.iter().enumerate() {
            if row.len() != k {
                return Err(Error::DimensionMismatch { expected: k, found: row.len() });
            }
            if row.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
                return Err(Error::InvalidInput(format!(
                    "constraint row {j} must be finite and nonnegative"
                )));
            }
        }
        Ok(())
    }

    /// Row-wise `A g`.
    pub fn apply(&self, g: &[f64]) -> Vec<f64> {
        self.a
            .iter()
            .map(|row| row.iter().zip(g).map(|(a, x)| a * x).sum())
            .collect()
    }
}

/// Solves the covering LP. `tol` bounds the constraint shortfall of the returned `g`.
pub fn lp_solve(lp: &LPInstance, tol: f64) -> Result<LpSolution> {
    lp.validate()?;
    if !(tol > 0.0) {
        return Err(Error::domain("LP tolerance must be positive"));
    }
    let k = lp.cols();
    for (j, row) in lp.a.iter().enumerate() {
        if row.iter().all(|v| *v == 0.0) {
            return Err(Error::Infeasible(j));
        }
    }

    // Free variables (c_i = 0) satisfy every row they touch at no cost.
    let mut g = vec![0.0f64; k];
    let mut dual = vec![0.0; lp.rows()];
    let mut rest: Vec<usize> = Vec::new();
    for (j, row) in lp.a.iter().enumerate() {
        let free = (0..k).filter(|&i| lp.c[i] == 0.0 && row[i] > 0.0);
        let mut covered = false;
        for i in free {
            g[i] = g[i].max(1.0 / row[i]);
            covered = true;
        }
        if !covered {
            rest.push(j);
        }
    }
    let priced: Vec<usize> = (0..k).filter(|&i| lp.c[i] > 0.0).collect();

    if !rest.is_empty() {
        // Columns rescaled so every cost is one: h_i = c_i g_i.
        let rows: Vec<Vec<f64>> = rest
            .iter()
            .map(|&j| priced.iter().map(|&i| lp.a[j][i] / lp.c[i]).collect())
            .collect();
        let (h, w) = solve_unit_cost(&rows)?;
        for (&i, hi) in priced.iter().zip(&h) {
            g[i] = hi / lp.c[i];
        }
        for (&j, wj) in rest.iter().zip(w) {
            dual[j] = wj;
        }
    }

    // Restore exact feasibility when round-off leaves a row slightly short.
    let worst = lp.apply(&g).into_iter().fold(f64::INFINITY, f64::min);
    if worst < 1.0 {
        if worst < 1.0 - tol.max(1e-6) {
            return Err(Error::domain(format!(
                "simplex lost feasibility (min row activity {worst})"
            )));
        }
        for v in &mut g {
            *v /= worst;
        }
    }
    let value = lp.c.iter().zip(&g).map(|(c, x)| c * x).sum();
    Ok(LpSolution { g, value, dual })
}

/// `min Σ h  s.t.  B h >= 1,  h >= 0` by the dual simplex method. Returns `(h, w)`.
///
/// The tableau has one row per constraint, so many columns stay cheap.
fn solve_unit_cost(b: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<f64>)> {
    let m = b.len();
    let k = b[0].len();
    for (j, row) in b.iter().enumerate() {
        if row.iter().all(|v| *v == 0.0) {
            return Err(Error::Infeasible(j));
        }
    }
    // Rows -B h + s = -1 with surplus basis s; unit costs keep it dual feasible.
    let width = k + m + 1;
    let mut t = vec![0.0; m * width];
    for (j, brow) in b.iter().enumerate() {
        let row = &mut t[j * width..(j + 1) * width];
        for (x, v) in row.iter_mut().zip(brow) {
            *x = -v;
        }
        row[k + j] = 1.0;
        row[width - 1] = -1.0;
    }
    let mut obj = vec![0.0f64; width];
    for v in obj.iter_mut().take(k) {
        *v = 1.0;
    }
    let mut basis: Vec<usize> = (k..k + m).collect();

    let mut degenerate = 0usize;
    let max_iter = 50 * (m + k) + 1000;
    for _ in 0..max_iter {
        let bland = degenerate > MAX_DEGENERATE_DANTZIG;
        let rhs = |r: usize| t[r * width + width - 1];
        let infeasible = (0..m).filter(|&r| rhs(r) < -FEAS_EPS);
        let leaving = if bland {
            infeasible.min_by_key(|&r| basis[r])
        } else {
            infeasible.min_by(|&x, &y| rhs(x).total_cmp(&rhs(y)))
        };
        let Some(r) = leaving else {
            let mut h = vec![0.0; k];
            for (row, &bv) in basis.iter().enumerate() {
                if bv < k {
                    h[bv] = rhs(row).max(0.0);
                }
            }
            let w: Vec<f64> = (0..m).map(|j| obj[k + j].max(0.0)).collect();
            return Ok((h, w));
        };
        let prow = &t[r * width..(r + 1) * width - 1];
        let mut entering: Option<(usize, f64)> = None;
        for (c, &a) in prow.iter().enumerate() {
            if a < -PIVOT_EPS {
                let ratio = obj[c].max(0.0) / -a;
                // Strict comparison keeps the smallest index among ties.
                if entering.is_none_or(|(_, best)| ratio < best - 1e-15 * best.max(1.0)) {
                    entering = Some((c, ratio));
                }
            }
        }
        // Every row of B has a positive entry, so some column always qualifies.
        let (e, ratio) = entering.ok_or_else(|| Error::domain("dual simplex found no pivot column"))?;
        degenerate = if ratio <= 0.0 { degenerate + 1 } else { 0 };
        pivot(&mut t, &mut obj, width, r, e);
        basis[r] = e;
    }
    Err(Error::domain("simplex iteration limit reached"))
}

fn pivot(t: &mut [f64], obj: &mut [f64], width: usize, r: usize, c: usize) {
    let p = t[r * width + c];
    for v in &mut t[r * width..(r + 1) * width] {
        *v /= p;
    }
    let (before, rest) = t.split_at_mut(r * width);
    let (prow, after) = rest.split_at_mut(width);
    for row in before.chunks_mut(width).chain(after.chunks_mut(width)) {
        let f = row[c];
        if f != 0.0 {
            for (x, y) in row.iter_mut().zip(prow.iter()) {
                *x -= f * y;
            }
        }
    }
    let f = obj[c];
    if f != 0.0 {
        for (x, y) in obj.iter_mut().zip(prow.iter()) {
            *x -= f * y;
        }
    }
}
