//! Dense two-phase simplex with Bland's rule.

use crate::error::{Error, Result};
use crate::linalg::{dot, solve, Matrix, Vector};

const PIVOT_TOL: f64 = 1e-9;
const MAX_PIVOTS: usize = 50_000;

/// `min cᵀx` subject to `eq` rows (`a·x = b`), `le` rows (`a·x ≤ b`) and
/// sign constraints `x_j ≥ 0` where `nonneg[j]`.
#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    pub nvars: usize,
    pub nonneg: Vec<bool>,
    pub eq: Vec<(Vector, f64)>,
    pub le: Vec<(Vector, f64)>,
}

impl LinearProgram {
    pub fn new(nvars: usize) -> Self {
        LinearProgram { nvars, nonneg: vec![false; nvars], eq: Vec::new(), le: Vec::new() }
    }

    /// Append a fresh variable (zero coefficient in existing rows) and
    /// return its index.
    pub fn add_var(&mut self, nonneg: bool) -> usize {
        for (a, _) in self.eq.iter_mut().chain(self.le.iter_mut()) {
            a.push(0.0);
        }
        self.nonneg.push(nonneg);
        self.nvars += 1;
        self.nvars - 1
    }

    pub fn add_eq(&mut self, a: Vector, b: f64) {
        debug_assert_eq!(a.len(), self.nvars);
        self.eq.push((a, b));
    }

    pub fn add_le(&mut self, a: Vector, b: f64) {
        debug_assert_eq!(a.len(), self.nvars);
        self.le.push((a, b));
    }

    /// Largest violation of the constraints at `x`.
    pub fn violation(&self, x: &[f64]) -> f64 {
        let mut v: f64 = 0.0;
        for (a, b) in &self.eq {
            v = v.max((dot(a, x) - b).abs());
        }
        for (a, b) in &self.le {
            v = v.max(dot(a, x) - b);
        }
        for (xj, &nn) in x.iter().zip(&self.nonneg) {
            if nn {
                v = v.max(-xj);
            }
        }
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum LpStatus {
    Optimal,
    Unbounded,
    Infeasible,
}

#[derive(Clone, Debug)]
pub struct LpResult {
    pub status: LpStatus,
    pub value: f64,
    pub point: Vector,
    /// `bᵀy` for the dual vector of the final basis; equals `value` at an
    /// optimum up to rounding.
    pub dual_bound: f64,
}

struct Tableau {
    m: usize,
    w: usize,
    t: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn at(&self, i: usize, j: usize) -> f64 {
        self.t[i * self.w + j]
    }

    fn rhs(&self, i: usize) -> f64 {
        self.t[i * self.w + self.w - 1]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.w;
        let p = self.t[r * w + c];
        for j in 0..w {
            self.t[r * w + j] /= p;
        }
        let (before, rest) = self.t.split_at_mut(r * w);
        let (prow, after) = rest.split_at_mut(w);
        for row in before.chunks_mut(w).chain(after.chunks_mut(w)) {
            let f = row[c];
            if f != 0.0 {
                for (x, pr) in row.iter_mut().zip(prow.iter()) {
                    *x -= f * pr;
                }
                row[c] = 0.0;
            }
        }
        self.basis[r] = c;
    }

    fn remove_row(&mut self, r: usize) {
        let w = self.w;
        self.t.drain(r * w..(r + 1) * w);
        self.basis.remove(r);
        self.m -= 1;
    }

    /// Primal simplex on the columns marked `allowed`. Returns false when
    /// the objective is unbounded below.
    fn run(&mut self, cost: &[f64], allowed: &[bool]) -> Result<bool> {
        let ncols = self.w - 1;
        let cscale = cost.iter().fold(1.0f64, |m, c| m.max(c.abs()));
        let rc_tol = 1e-11 * cscale;
        for _ in 0..MAX_PIVOTS {
            let mut entering = None;
            for j in 0..ncols {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut d = cost[j];
                for i in 0..self.m {
                    let a = self.at(i, j);
                    if a != 0.0 {
                        d -= cost[self.basis[i]] * a;
                    }
                }
                if d < -rc_tol {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { return Ok(true) };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.m {
                let a = self.at(i, c);
                if a > PIVOT_TOL {
                    let ratio = self.rhs(i).max(0.0) / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((bi, br)) => {
                            let tie = (ratio - br).abs() <= 1e-12 * (1.0 + br.abs());
                            if ratio < br && !tie || tie && self.basis[i] < self.basis[bi] {
                                Some((i, ratio))
                            } else {
                                Some((bi, br))
                            }
                        }
                    };
                }
            }
            match leave {
                None => return Ok(false),
                Some((r, _)) => self.pivot(r, c),
            }
        }
        Err(Error::NonConvergence("simplex pivot limit reached".into()))
    }
}

/// Solve `min cᵀx` over the program.
pub fn lp_minimize(c: &[f64], lp: &LinearProgram) -> Result<LpResult> {
    if c.len() != lp.nvars {
        return Err(Error::DimensionMismatch { expected: lp.nvars, got: c.len() });
    }
    // standard-form columns: split free variables, then slacks
    let mut colmap: Vec<(usize, f64)> = Vec::new();
    for j in 0..lp.nvars {
        colmap.push((j, 1.0));
        if !lp.nonneg[j] {
            colmap.push((j, -1.0));
        }
    }
    let nstruct = colmap.len();
    let m = lp.eq.len() + lp.le.len();
    let nslack = lp.le.len();
    let ncols_real = nstruct + nslack;
    let ncols = ncols_real + m;
    let w = ncols + 1;

    let mut a_std = Matrix::zeros(m, ncols_real);
    let mut b_std = vec![0.0; m];
    let rows = lp.eq.iter().chain(lp.le.iter()).enumerate();
    for (i, (a, b)) in rows {
        for (k, &(j, s)) in colmap.iter().enumerate() {
            a_std[(i, k)] = s * a[j];
        }
        if i >= lp.eq.len() {
            a_std[(i, nstruct + i - lp.eq.len())] = 1.0;
        }
        b_std[i] = *b;
        if b_std[i] < 0.0 {
            b_std[i] = -b_std[i];
            for k in 0..ncols_real {
                a_std[(i, k)] = -a_std[(i, k)];
            }
        }
    }
    let mut cost = vec![0.0; ncols];
    for (k, &(j, s)) in colmap.iter().enumerate() {
        cost[k] = s * c[j];
    }

    let mut tab = Tableau { m, w, t: vec![0.0; m * w], basis: (ncols_real..ncols).collect() };
    for i in 0..m {
        for k in 0..ncols_real {
            tab.t[i * w + k] = a_std[(i, k)];
        }
        tab.t[i * w + ncols_real + i] = 1.0;
        tab.t[i * w + w - 1] = b_std[i];
    }
    let mut row_ids: Vec<usize> = (0..m).collect();

    // phase 1
    let mut cost1 = vec![0.0; ncols];
    for c1 in cost1.iter_mut().skip(ncols_real) {
        *c1 = 1.0;
    }
    let all = vec![true; ncols];
    tab.run(&cost1, &all)?;
    let infeas: f64 = (0..tab.m)
        .filter(|&i| tab.basis[i] >= ncols_real)
        .map(|i| tab.rhs(i))
        .sum();
    let bscale = 1.0 + b_std.iter().fold(0.0f64, |s, x| s.max(x.abs()));
    if infeas > 1e-9 * bscale {
        return Ok(LpResult {
            status: LpStatus::Infeasible,
            value: f64::INFINITY,
            point: vec![0.0; lp.nvars],
            dual_bound: f64::INFINITY,
        });
    }
    // drive zero-level artificials out, dropping redundant rows
    let mut i = 0;
    while i < tab.m {
        if tab.basis[i] >= ncols_real {
            let col = (0..ncols_real)
                .filter(|&j| !tab.basis.contains(&j))
                .find(|&j| tab.at(i, j).abs() > PIVOT_TOL);
            match col {
                Some(j) => tab.pivot(i, j),
                None => {
                    tab.remove_row(i);
                    row_ids.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    // phase 2
    let mut allowed = vec![true; ncols];
    for a in allowed.iter_mut().skip(ncols_real) {
        *a = false;
    }
    let bounded = tab.run(&cost, &allowed)?;
    let mut z = vec![0.0; ncols_real];
    for i in 0..tab.m {
        if tab.basis[i] < ncols_real {
            z[tab.basis[i]] = tab.rhs(i).max(0.0);
        }
    }
    let mut x = vec![0.0; lp.nvars];
    for (k, &(j, s)) in colmap.iter().enumerate() {
        x[j] += s * z[k];
    }
    if !bounded {
        return Ok(LpResult {
            status: LpStatus::Unbounded,
            value: f64::NEG_INFINITY,
            point: x,
            dual_bound: f64::NEG_INFINITY,
        });
    }
    let value = dot(c, &x);
    let dual_bound = dual_bound(&a_std, &b_std, &cost, &tab.basis, &row_ids).unwrap_or(value);
    Ok(LpResult { status: LpStatus::Optimal, value, point: x, dual_bound })
}

fn dual_bound(
    a: &Matrix,
    b: &[f64],
    cost: &[f64],
    basis: &[usize],
    rows: &[usize],
) -> Option<f64> {
    let k = rows.len();
    if k == 0 {
        return Some(0.0);
    }
    let mut bt = Matrix::zeros(k, k);
    for (ci, &col) in basis.iter().enumerate() {
        for (ri, &row) in rows.iter().enumerate() {
            bt[(ci, ri)] = a[(row, col)];
        }
    }
    let cb: Vec<f64> = basis.iter().map(|&j| cost[j]).collect();
    let y = solve(&bt, &cb)?;
    Some(rows.iter().zip(&y).map(|(&r, yi)| b[r] * yi).sum())
}
