//! Extended formulations `Q = {E w + e : w ∈ W}` with `W` given by linear
//! constraints, closed under the combinators.

use crate::linalg::{Matrix, Vector};
use crate::solvers::lp::LinearProgram;

#[derive(Clone, Debug)]
pub struct PolyForm {
    pub lp: LinearProgram,
    pub embed: Matrix,
    pub offset: Vector,
}

fn widen(rows: &[(Vector, f64)], before: usize, after: usize) -> Vec<(Vector, f64)> {
    rows.iter()
        .map(|(a, b)| {
            let mut r = vec![0.0; before];
            r.extend_from_slice(a);
            r.extend(std::iter::repeat_n(0.0, after));
            (r, *b)
        })
        .collect()
}

impl PolyForm {
    pub fn dim(&self) -> usize {
        self.embed.rows
    }

    pub fn nvars(&self) -> usize {
        self.lp.nvars
    }

    pub fn point(&self, w: &[f64]) -> Vector {
        crate::linalg::add(&self.embed.mul_vec(w), &self.offset)
    }

    pub fn translate(mut self, shift: &[f64]) -> PolyForm {
        self.offset = crate::linalg::add(&self.offset, shift);
        self
    }

    /// Image under `x ↦ M x + o`.
    pub fn affine(self, m: &Matrix, o: &[f64]) -> PolyForm {
        let offset = crate::linalg::add(&m.mul_vec(&self.offset), o);
        PolyForm { lp: self.lp, embed: m.mul(&self.embed), offset }
    }

    fn stack(a: &PolyForm, b: &PolyForm) -> LinearProgram {
        let (na, nb) = (a.nvars(), b.nvars());
        let mut lp = LinearProgram::new(na + nb);
        lp.nonneg = a.lp.nonneg.iter().chain(&b.lp.nonneg).cloned().collect();
        lp.eq = widen(&a.lp.eq, 0, nb);
        lp.eq.extend(widen(&b.lp.eq, na, 0));
        lp.le = widen(&a.lp.le, 0, nb);
        lp.le.extend(widen(&b.lp.le, na, 0));
        lp
    }

    pub fn product(a: &PolyForm, b: &PolyForm) -> PolyForm {
        let (na, nb) = (a.nvars(), b.nvars());
        let (da, db) = (a.dim(), b.dim());
        let mut embed = Matrix::zeros(da + db, na + nb);
        for i in 0..da {
            for j in 0..na {
                embed[(i, j)] = a.embed[(i, j)];
            }
        }
        for i in 0..db {
            for j in 0..nb {
                embed[(da + i, na + j)] = b.embed[(i, j)];
            }
        }
        let offset = a.offset.iter().chain(&b.offset).cloned().collect();
        PolyForm { lp: Self::stack(a, b), embed, offset }
    }

    pub fn intersection(a: &PolyForm, b: &PolyForm) -> PolyForm {
        let (na, nb) = (a.nvars(), b.nvars());
        let n = a.dim();
        let mut lp = Self::stack(a, b);
        for i in 0..n {
            let mut row = a.embed.row(i).to_vec();
            row.extend(b.embed.row(i).iter().map(|v| -v));
            lp.add_eq(row, b.offset[i] - a.offset[i]);
        }
        let mut embed = Matrix::zeros(n, na + nb);
        for i in 0..n {
            for j in 0..na {
                embed[(i, j)] = a.embed[(i, j)];
            }
        }
        PolyForm { lp, embed, offset: a.offset.clone() }
    }

    /// `{(t·y, off + h·t) : y ∈ base, t ∈ [0,1]}` for a bounded base, by
    /// homogenizing its constraints with the new variable `t`.
    pub fn suspension(base: &PolyForm, off: f64, h: f64) -> PolyForm {
        let nw = base.nvars();
        let n = base.dim();
        let mut lp = LinearProgram::new(nw + 1);
        lp.nonneg = base.lp.nonneg.clone();
        lp.nonneg.push(true);
        for (a, b) in &base.lp.eq {
            let mut r = a.clone();
            r.push(-b);
            lp.add_eq(r, 0.0);
        }
        for (a, b) in &base.lp.le {
            let mut r = a.clone();
            r.push(-b);
            lp.add_le(r, 0.0);
        }
        let mut cap = vec![0.0; nw + 1];
        cap[nw] = 1.0;
        lp.add_le(cap, 1.0);
        let mut embed = Matrix::zeros(n + 1, nw + 1);
        for i in 0..n {
            for j in 0..nw {
                embed[(i, j)] = base.embed[(i, j)];
            }
            embed[(i, nw)] = base.offset[i];
        }
        embed[(n, nw)] = h;
        let mut offset = vec![0.0; n + 1];
        offset[n] = off;
        PolyForm { lp, embed, offset }
    }
}
