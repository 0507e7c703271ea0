use crate::error::{Error, Result};
use crate::linalg::{add, axpy, check_dim, dot, norm, scale, sub, LinearMap, Matrix, Vector};
use crate::solvers::lp::{lp_minimize, LinearProgram, LpStatus};
use crate::solvers::qp::{project_active_set, wolfe_min_norm};

use super::polyform::PolyForm;

const PROJECTION_ITERS: usize = 10_000;
const MAX_FACET_DIM: usize = 4;
const MAX_FACET_VERTICES: usize = 24;
const MAX_ZONOTOPE_SUBSETS: usize = 5000;

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Advance `idx` to the next increasing `idx.len()`-subset of `0..k`.
fn next_combination(idx: &mut [usize], k: usize) -> bool {
    let m = idx.len();
    let mut i = m;
    while i > 0 {
        i -= 1;
        if idx[i] < k - m + i {
            idx[i] += 1;
            for j in (i + 1)..m {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// `{x : Ax ≤ b}`.
#[derive(Clone, Debug)]
pub struct HPolytope {
    a: Matrix,
    b: Vector,
    row_norms: Vec<f64>,
    point: Vector,
    chebyshev_radius: f64,
    lower: Vector,
    upper: Vector,
}

impl HPolytope {
    pub fn new(a: Matrix, b: Vector) -> Result<Self> {
        check_dim(a.rows, b.len())?;
        if !a.is_finite() || !crate::linalg::is_finite(&b) {
            return Err(Error::InvalidInput("polytope data must be finite".into()));
        }
        let n = a.cols;
        let row_norms: Vec<f64> = (0..a.rows).map(|i| norm(a.row(i))).collect();
        if row_norms.contains(&0.0) {
            return Err(Error::InvalidInput("zero constraint row".into()));
        }
        // Chebyshev centre, radius capped at 1 so unbounded sets stay finite
        let mut lp = LinearProgram::new(n + 1);
        lp.nonneg[n] = true;
        for i in 0..a.rows {
            let mut row = a.row(i).to_vec();
            row.push(row_norms[i]);
            lp.add_le(row, b[i]);
        }
        let mut cap = vec![0.0; n + 1];
        cap[n] = 1.0;
        lp.add_le(cap, 1.0);
        let mut c = vec![0.0; n + 1];
        c[n] = -1.0;
        let res = lp_minimize(&c, &lp)?;
        if res.status != LpStatus::Optimal {
            return Err(Error::InvalidInput("H-polytope is empty".into()));
        }
        let point = res.point[..n].to_vec();
        let chebyshev_radius = res.point[n];
        let mut lower = vec![f64::NEG_INFINITY; n];
        let mut upper = vec![f64::INFINITY; n];
        let base = Self::lp_of(&a, &b);
        for j in 0..n {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            let lo = lp_minimize(&e, &base)?;
            if lo.status == LpStatus::Optimal {
                lower[j] = lo.value;
            }
            e[j] = -1.0;
            let hi = lp_minimize(&e, &base)?;
            if hi.status == LpStatus::Optimal {
                upper[j] = -hi.value;
            }
        }
        Ok(HPolytope { a, b, row_norms, point, chebyshev_radius, lower, upper })
    }

    pub fn from_rows(a: &[Vector], b: Vector) -> Result<Self> {
        HPolytope::new(Matrix::from_rows(a)?, b)
    }

    /// `[lo, hi]^n`
    pub fn cube(n: usize, lo: f64, hi: f64) -> Result<Self> {
        HPolytope::boxed(&vec![lo; n], &vec![hi; n])
    }

    /// The axis box `[lo, hi]`.
    pub fn boxed(lo: &[f64], hi: &[f64]) -> Result<Self> {
        check_dim(lo.len(), hi.len())?;
        let n = lo.len();
        let mut rows = Vec::new();
        let mut b = Vec::new();
        for j in 0..n {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            rows.push(e.clone());
            b.push(hi[j]);
            e[j] = -1.0;
            rows.push(e);
            b.push(-lo[j]);
        }
        HPolytope::from_rows(&rows, b)
    }

    fn lp_of(a: &Matrix, b: &[f64]) -> LinearProgram {
        let mut lp = LinearProgram::new(a.cols);
        for i in 0..a.rows {
            lp.add_le(a.row(i).to_vec(), b[i]);
        }
        lp
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.a.cols
    }

    pub fn point(&self) -> &[f64] {
        &self.point
    }

    /// Radius of the largest inscribed ball (capped at 1); zero flags an
    /// affinely degenerate polytope.
    pub fn chebyshev_radius(&self) -> f64 {
        self.chebyshev_radius
    }

    pub fn violation(&self, x: &[f64]) -> f64 {
        (0..self.a.rows)
            .map(|i| (dot(self.a.row(i), x) - self.b[i]) / self.row_norms[i])
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn nearest(&self, p: &[f64]) -> Result<Vector> {
        if self.violation(p) <= 0.0 {
            return Ok(p.to_vec());
        }
        let rows = self.a.row_vecs();
        project_active_set(&rows, &self.b, p, &self.point, PROJECTION_ITERS)
    }

    pub fn support(&self, d: &[f64]) -> Option<(f64, Vector)> {
        let res = lp_minimize(&scale(d, -1.0), &Self::lp_of(&self.a, &self.b)).ok()?;
        (res.status == LpStatus::Optimal).then(|| (-res.value, res.point))
    }

    pub fn bounding_box(&self) -> (Vector, Vector) {
        (self.lower.clone(), self.upper.clone())
    }

    pub fn poly_form(&self) -> PolyForm {
        let n = self.dim();
        PolyForm { lp: Self::lp_of(&self.a, &self.b), embed: Matrix::identity(n), offset: vec![0.0; n] }
    }

    pub fn translate(&self, w: &[f64]) -> Result<HPolytope> {
        let b = (0..self.a.rows).map(|i| self.b[i] + dot(self.a.row(i), w)).collect();
        HPolytope::new(self.a.clone(), b)
    }
}

/// Convex hull of finitely many points.
#[derive(Clone, Debug)]
pub struct VPolytope {
    vertices: Vec<Vector>,
    facets: Option<HPolytope>,
}

impl VPolytope {
    pub fn new(vertices: Vec<Vector>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::InvalidInput("V-polytope needs a vertex".into()));
        };
        let n = first.len();
        if n == 0 {
            return Err(Error::InvalidInput("dimension must be at least one".into()));
        }
        for v in &vertices {
            check_dim(n, v.len())?;
            if !crate::linalg::is_finite(v) {
                return Err(Error::InvalidInput("vertices must be finite".into()));
            }
        }
        let mut v = VPolytope { vertices, facets: None };
        if n <= MAX_FACET_DIM && v.vertices.len() <= MAX_FACET_VERTICES && v.affine_rank() == n {
            v.facets = v.to_hpolytope().ok();
        }
        Ok(v)
    }

    /// Facet description, kept when the hull is full-dimensional and small.
    pub fn facets(&self) -> Option<&HPolytope> {
        self.facets.as_ref()
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn centroid(&self) -> Vector {
        let k = self.vertices.len() as f64;
        let mut c = vec![0.0; self.dim()];
        for v in &self.vertices {
            c = axpy(&c, 1.0 / k, v);
        }
        c
    }

    pub fn violation(&self, x: &[f64]) -> f64 {
        match &self.facets {
            Some(h) => h.violation(x),
            None => self.violation_lp(x),
        }
    }

    /// Max-norm distance from `x` to the hull, via LP.
    pub fn violation_lp(&self, x: &[f64]) -> f64 {
        let k = self.vertices.len();
        let n = self.dim();
        let mut lp = LinearProgram::new(k + 1);
        lp.nonneg = vec![true; k + 1];
        let mut ones = vec![1.0; k];
        ones.push(0.0);
        lp.add_eq(ones, 1.0);
        for i in 0..n {
            let mut row: Vector = self.vertices.iter().map(|v| v[i]).collect();
            row.push(-1.0);
            lp.add_le(row.clone(), x[i]);
            let mut neg: Vector = row.iter().map(|r| -r).collect();
            neg[k] = -1.0;
            lp.add_le(neg, -x[i]);
        }
        let mut c = vec![0.0; k + 1];
        c[k] = 1.0;
        match lp_minimize(&c, &lp) {
            Ok(r) if r.status == LpStatus::Optimal => r.value,
            _ => f64::INFINITY,
        }
    }

    fn lmo(&self, d: &[f64]) -> Vector {
        self.vertices
            .iter()
            .min_by(|a, b| dot(d, a).total_cmp(&dot(d, b)))
            .expect("nonempty")
            .clone()
    }

    pub fn nearest(&self, p: &[f64]) -> Result<Vector> {
        let shifted: Vec<Vector> = self.vertices.iter().map(|v| sub(v, p)).collect();
        let lmo = |d: &[f64]| -> Result<Vector> {
            Ok(shifted
                .iter()
                .min_by(|a, b| dot(d, a).total_cmp(&dot(d, b)))
                .expect("nonempty")
                .clone())
        };
        let start = lmo(&sub(&self.centroid(), p))?;
        let z = wolfe_min_norm(lmo, start, PROJECTION_ITERS)?;
        Ok(add(&z, p))
    }

    pub fn support(&self, d: &[f64]) -> (f64, Vector) {
        let v = self.lmo(&scale(d, -1.0));
        (dot(d, &v), v)
    }

    pub fn bounding_box(&self) -> (Vector, Vector) {
        let n = self.dim();
        let mut lo = vec![f64::INFINITY; n];
        let mut hi = vec![f64::NEG_INFINITY; n];
        for v in &self.vertices {
            for i in 0..n {
                lo[i] = lo[i].min(v[i]);
                hi[i] = hi[i].max(v[i]);
            }
        }
        (lo, hi)
    }

    pub fn poly_form(&self) -> PolyForm {
        let k = self.vertices.len();
        let mut lp = LinearProgram::new(k);
        lp.nonneg = vec![true; k];
        lp.add_eq(vec![1.0; k], 1.0);
        PolyForm { lp, embed: Matrix::from_cols(&self.vertices, self.dim()), offset: vec![0.0; self.dim()] }
    }

    /// Affine rank of the vertex set.
    pub fn affine_rank(&self) -> usize {
        let v0 = &self.vertices[0];
        let diffs: Vec<Vector> = self.vertices[1..].iter().map(|v| sub(v, v0)).collect();
        if diffs.is_empty() {
            return 0;
        }
        match Matrix::from_rows(&diffs).and_then(LinearMap::new) {
            Ok(m) => m.rank(),
            Err(_) => 0,
        }
    }

    /// Facet description by brute-force enumeration of vertex subsets.
    /// Requires a full-dimensional hull.
    pub fn to_hpolytope(&self) -> Result<HPolytope> {
        let n = self.dim();
        if self.affine_rank() < n {
            return Err(Error::InvalidInput("hull is not full-dimensional".into()));
        }
        let k = self.vertices.len();
        let mut rows: Vec<Vector> = Vec::new();
        let mut rhs: Vec<f64> = Vec::new();
        let mut idx: Vec<usize> = (0..n).collect();
        let scale_v = self.vertices.iter().map(|v| norm(v)).fold(1.0f64, f64::max);
        loop {
            let base = &self.vertices[idx[0]];
            let diffs: Vec<Vector> = idx[1..].iter().map(|&i| sub(&self.vertices[i], base)).collect();
            let normal = if n == 1 {
                Some(vec![1.0])
            } else {
                Matrix::from_rows(&diffs)
                    .and_then(LinearMap::new)
                    .ok()
                    .filter(|m| m.kernel().len() == 1)
                    .map(|m| m.kernel()[0].clone())
            };
            if let Some(nrm) = normal {
                let off = dot(&nrm, base);
                let vals: Vec<f64> = self.vertices.iter().map(|v| dot(&nrm, v) - off).collect();
                let tol = 1e-9 * scale_v;
                let (below, above) = vals
                    .iter()
                    .fold((true, true), |(b, a), &s| (b && s <= tol, a && s >= -tol));
                for (sign, holds) in [(1.0, below), (-1.0, above)] {
                    if !holds {
                        continue;
                    }
                    let r = scale(&nrm, sign);
                    let o = sign * off;
                    let dup = rows
                        .iter()
                        .zip(&rhs)
                        .any(|(q, &c)| crate::linalg::dist(q, &r) < 1e-9 && (c - o).abs() < 1e-9 * scale_v);
                    if !dup {
                        rows.push(r);
                        rhs.push(o);
                    }
                }
            }
            if !next_combination(&mut idx, k) {
                return HPolytope::from_rows(&rows, rhs);
            }
        }
    }
}

/// `{c + Σ t_i g_i : t_i ∈ [0,1]}`.
#[derive(Clone, Debug)]
pub struct Zonotope {
    center: Vector,
    generators: Vec<Vector>,
    facets: Option<HPolytope>,
}

impl Zonotope {
    pub fn new(center: Vector, generators: Vec<Vector>) -> Result<Self> {
        let n = center.len();
        if n == 0 {
            return Err(Error::InvalidInput("dimension must be at least one".into()));
        }
        for g in &generators {
            check_dim(n, g.len())?;
        }
        if !crate::linalg::is_finite(&center) || !generators.iter().all(|g| crate::linalg::is_finite(g)) {
            return Err(Error::InvalidInput("zonotope data must be finite".into()));
        }
        let mut z = Zonotope { center, generators, facets: None };
        z.facets = z.facet_form();
        Ok(z)
    }

    pub fn facets(&self) -> Option<&HPolytope> {
        self.facets.as_ref()
    }

    /// Facets from normals of `(n−1)`-subsets of generators; only for
    /// full-dimensional zonotopes with few such subsets.
    fn facet_form(&self) -> Option<HPolytope> {
        let n = self.dim();
        let k = self.generators.len();
        if n > MAX_FACET_DIM || k < n || binomial(k, n - 1) > MAX_ZONOTOPE_SUBSETS {
            return None;
        }
        let span = Matrix::from_rows(&self.generators).and_then(LinearMap::new).ok()?;
        if span.rank() < n {
            return None;
        }
        let mut normals: Vec<Vector> = Vec::new();
        if n == 1 {
            normals.push(vec![1.0]);
        } else {
            let mut idx: Vec<usize> = (0..n - 1).collect();
            loop {
                let rows: Vec<Vector> = idx.iter().map(|&i| self.generators[i].clone()).collect();
                if let Ok(m) = Matrix::from_rows(&rows).and_then(LinearMap::new) {
                    if m.kernel().len() == 1 {
                        let nu = m.kernel()[0].clone();
                        let neg = scale(&nu, -1.0);
                        if !normals.iter().any(|q| crate::linalg::dist(q, &nu) < 1e-9 || crate::linalg::dist(q, &neg) < 1e-9) {
                            normals.push(nu);
                        }
                    }
                }
                if !next_combination(&mut idx, k) {
                    break;
                }
            }
        }
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for nu in normals {
            for s in [1.0, -1.0] {
                let r = scale(&nu, s);
                rhs.push(self.support(&r).0);
                rows.push(r);
            }
        }
        HPolytope::from_rows(&rows, rhs).ok()
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn midpoint(&self) -> Vector {
        self.generators.iter().fold(self.center.clone(), |c, g| axpy(&c, 0.5, g))
    }

    pub fn violation(&self, x: &[f64]) -> f64 {
        match &self.facets {
            Some(h) => h.violation(x),
            None => self.violation_lp(x),
        }
    }

    /// Max-norm distance from `x` to the zonotope, via LP.
    pub fn violation_lp(&self, x: &[f64]) -> f64 {
        let k = self.generators.len();
        let n = self.dim();
        if k == 0 {
            return x.iter().zip(&self.center).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        }
        let mut lp = LinearProgram::new(k + 1);
        lp.nonneg = vec![true; k + 1];
        for j in 0..k {
            let mut e = vec![0.0; k + 1];
            e[j] = 1.0;
            lp.add_le(e, 1.0);
        }
        for i in 0..n {
            let mut row: Vector = self.generators.iter().map(|g| g[i]).collect();
            row.push(-1.0);
            lp.add_le(row.clone(), x[i] - self.center[i]);
            let mut neg: Vector = row.iter().map(|r| -r).collect();
            neg[k] = -1.0;
            lp.add_le(neg, self.center[i] - x[i]);
        }
        let mut c = vec![0.0; k + 1];
        c[k] = 1.0;
        match lp_minimize(&c, &lp) {
            Ok(r) if r.status == LpStatus::Optimal => r.value,
            _ => f64::INFINITY,
        }
    }

    /// Minimizer of `⟨d, ·⟩`.
    fn lmo(&self, d: &[f64]) -> Vector {
        self.generators
            .iter()
            .fold(self.center.clone(), |c, g| if dot(d, g) < 0.0 { add(&c, g) } else { c })
    }

    pub fn nearest(&self, p: &[f64]) -> Result<Vector> {
        let lmo = |d: &[f64]| -> Result<Vector> { Ok(sub(&self.lmo(d), p)) };
        let start = sub(&self.lmo(&sub(&self.midpoint(), p)), p);
        let z = wolfe_min_norm(lmo, start, PROJECTION_ITERS)?;
        Ok(add(&z, p))
    }

    pub fn support(&self, d: &[f64]) -> (f64, Vector) {
        let v = self.lmo(&scale(d, -1.0));
        (dot(d, &v), v)
    }

    pub fn bounding_box(&self) -> (Vector, Vector) {
        let mut lo = self.center.clone();
        let mut hi = self.center.clone();
        for g in &self.generators {
            for i in 0..self.dim() {
                lo[i] += g[i].min(0.0);
                hi[i] += g[i].max(0.0);
            }
        }
        (lo, hi)
    }

    pub fn poly_form(&self) -> PolyForm {
        let k = self.generators.len();
        let mut lp = LinearProgram::new(k);
        lp.nonneg = vec![true; k];
        for j in 0..k {
            let mut e = vec![0.0; k];
            e[j] = 1.0;
            lp.add_le(e, 1.0);
        }
        PolyForm {
            lp,
            embed: Matrix::from_cols(&self.generators, self.dim()),
            offset: self.center.clone(),
        }
    }
}

/// Split a zonotope along its support face in `direction`: returns
/// `(A, B, w)` with `A` spanned by the generators orthogonal to the
/// direction, `B` by the rest, `A + B = Z` and `A + w` the face.
pub fn face_decompose_zonotope(z: &Zonotope, direction: &[f64]) -> Result<(Zonotope, Zonotope, Vector)> {
    check_dim(z.dim(), direction.len())?;
    let dn = norm(direction);
    if dn == 0.0 {
        return Err(Error::ZeroDirection);
    }
    let n = z.dim();
    let mut a_gens = Vec::new();
    let mut b_gens = Vec::new();
    let mut w = z.center.clone();
    for g in &z.generators {
        let s = dot(direction, g);
        if s.abs() <= 1e-9 * dn * norm(g) {
            a_gens.push(g.clone());
        } else {
            if s > 0.0 {
                w = add(&w, g);
            }
            b_gens.push(g.clone());
        }
    }
    let a = Zonotope::new(vec![0.0; n], a_gens)?;
    let b = Zonotope::new(z.center.clone(), b_gens)?;
    Ok((a, b, w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> HPolytope {
        HPolytope::cube(2, 0.0, 1.0).unwrap()
    }

    #[test]
    fn square_membership_and_projection() {
        let s = square();
        assert!(s.violation(&[0.5, 0.5]) <= 1e-9);
        assert!(s.violation(&[1.5, 0.5]) > 1e-9);
        let q = s.nearest(&[2.0, 0.5]).unwrap();
        assert!((q[0] - 1.0).abs() < 1e-12 && (q[1] - 0.5).abs() < 1e-12);
        assert_eq!(s.bounding_box(), (vec![0.0, 0.0], vec![1.0, 1.0]));
        assert!((s.chebyshev_radius() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn empty_h_polytope_rejected() {
        let r = HPolytope::from_rows(&[vec![1.0], vec![-1.0]], vec![0.0, -1.0]);
        assert!(r.is_err());
    }

    #[test]
    fn unbounded_half_plane_box() {
        let h = HPolytope::from_rows(&[vec![0.0, -1.0]], vec![0.0]).unwrap();
        let (lo, hi) = h.bounding_box();
        assert_eq!(lo[1], 0.0);
        assert!(lo[0].is_infinite() && hi[0].is_infinite() && hi[1].is_infinite());
        assert!(h.support(&[0.0, 1.0]).is_none());
    }

    #[test]
    fn segment_projection() {
        let v = VPolytope::new(vec![vec![0.0, 0.0], vec![1.0, 1.0]]).unwrap();
        let q = v.nearest(&[1.0, 0.0]).unwrap();
        assert!((q[0] - 0.5).abs() < 1e-12 && (q[1] - 0.5).abs() < 1e-12);
        assert!(v.violation(&[0.5, 0.5]) <= 1e-12);
        assert!((v.violation(&[1.0, 0.0]) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn zonotope_square() {
        let z = Zonotope::new(vec![0.0, 0.0], vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert!(z.violation(&[1.5, 0.5]) > 1e-9);
        assert!(z.violation(&[0.25, 0.75]) <= 1e-12);
        let q = z.nearest(&[2.0, 0.5]).unwrap();
        assert!((q[0] - 1.0).abs() < 1e-12 && (q[1] - 0.5).abs() < 1e-12);
        let (v, p) = z.support(&[1.0, 1.0]);
        assert_eq!(v, 2.0);
        assert_eq!(p, vec![1.0, 1.0]);
    }

    #[test]
    fn face_decomposition_examples() {
        let z = Zonotope::new(vec![0.0, 0.0], vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let (a, b, w) = face_decompose_zonotope(&z, &[0.0, -1.0]).unwrap();
        assert_eq!(a.generators(), &[vec![1.0, 0.0]]);
        assert_eq!(b.generators(), &[vec![0.0, 1.0]]);
        assert_eq!(w, vec![0.0, 0.0]);
        let (a, b, w) = face_decompose_zonotope(&z, &[-1.0, -1.0]).unwrap();
        assert!(a.generators().is_empty());
        assert_eq!(b.generators().len(), 2);
        assert_eq!(w, vec![0.0, 0.0]);
        assert!(face_decompose_zonotope(&z, &[0.0, 0.0]).is_err());

        let z3 = Zonotope::new(
            vec![0.0, 0.0],
            vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]],
        )
        .unwrap();
        let (a, b, w) = face_decompose_zonotope(&z3, &[0.0, -1.0]).unwrap();
        assert_eq!(a.generators(), &[vec![1.0, 0.0]]);
        assert_eq!(b.generators().len(), 2);
        // brute force over the 8 coefficient corners: bottom edge is y = 0, x ∈ [0,1]
        let mut face = Vec::new();
        for mask in 0..8u32 {
            let mut p = vec![0.0, 0.0];
            for (j, g) in z3.generators().iter().enumerate() {
                if mask & (1 << j) != 0 {
                    p = add(&p, g);
                }
            }
            if p[1].abs() < 1e-12 {
                face.push(p);
            }
        }
        assert!(face.iter().all(|p| p[0] >= -1e-12 && p[0] <= 1.0 + 1e-12));
        assert_eq!(w, vec![0.0, 0.0]);
    }

    #[test]
    fn v_to_h_cube() {
        let mut verts = Vec::new();
        for m in 0..8u32 {
            verts.push((0..3).map(|j| ((m >> j) & 1) as f64).collect::<Vector>());
        }
        let v = VPolytope::new(verts).unwrap();
        let h = v.to_hpolytope().unwrap();
        assert_eq!(h.a().rows, 6);
        assert!(h.violation(&[0.5, 0.5, 0.5]) < 0.0);
        assert!(h.violation(&[1.1, 0.5, 0.5]) > 0.0);
    }
}
