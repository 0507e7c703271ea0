//! Fibers `T⁻¹(y) ∩ Q` in kernel coordinates, and optimization over them.

use crate::bodies::{Body, PolyForm};
use crate::config::ToolConfig;
use crate::error::{Error, Result};
use crate::linalg::{add, axpy, dist, dot, norm, qr_col_pivot, solve, sub, LinearMap, Matrix, Vector};
use crate::solvers::lp::{lp_minimize, LinearProgram, LpStatus};
use crate::solvers::qp::{project_active_set, wolfe_min_norm};
use crate::solvers::scalar::{bisect, golden_min, nested_min};

/// Largest kernel dimension handled by nested one-dimensional searches.
const NESTED_MAX: usize = 3;
/// Residual below which a target is kept as given rather than snapped.
const EXACT_RESIDUAL: f64 = 1e-9;
const SLICE_REL: f64 = 1e-7;

/// A point produced by an optimization over a fiber, flagged when it
/// touches the artificial cap placed on unbounded directions.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberPoint {
    pub point: Vector,
    pub clipped: bool,
}

#[derive(Clone, Debug)]
struct PolyFiber {
    lp: LinearProgram,
    embed: Matrix,
    offset: Vector,
}

impl PolyFiber {
    fn point(&self, w: &[f64]) -> Vector {
        add(&self.embed.mul_vec(w), &self.offset)
    }

    /// `argmin ⟨d, x⟩` over the fiber.
    fn minimize(&self, d: &[f64], lp: &LinearProgram) -> Result<(LpStatus, Vector)> {
        let c = self.embed.tr_mul_vec(d);
        let r = lp_minimize(&c, lp)?;
        Ok((r.status, if r.status == LpStatus::Optimal { self.point(&r.point) } else { Vec::new() }))
    }
}

/// `T⁻¹(y) ∩ Q` written as `{x0 + N s}` with orthonormal columns `N`.
#[derive(Clone, Debug)]
pub struct Fiber<'a> {
    body: &'a Body,
    map: &'a LinearMap,
    target: Vector,
    x0: Vector,
    kernel: Vec<Vector>,
    s_lo: Vector,
    s_hi: Vector,
    s_clip_lo: Vec<bool>,
    s_clip_hi: Vec<bool>,
    poly: Option<PolyFiber>,
    tol: f64,
    cap: f64,
}

impl<'a> Fiber<'a> {
    pub fn body(&self) -> &Body {
        self.body
    }
    pub fn map(&self) -> &LinearMap {
        self.map
    }
    /// The target actually used; equals the requested one unless it lay
    /// within the fiber tolerance outside the image and was snapped.
    pub fn target(&self) -> &[f64] {
        &self.target
    }
    pub fn x0(&self) -> &[f64] {
        &self.x0
    }
    pub fn kernel(&self) -> &[Vector] {
        &self.kernel
    }
    pub fn dim(&self) -> usize {
        self.kernel.len()
    }

    pub fn point(&self, s: &[f64]) -> Vector {
        let mut x = self.x0.clone();
        for (sj, nj) in s.iter().zip(&self.kernel) {
            x = axpy(&x, *sj, nj);
        }
        x
    }

    pub fn coords(&self, x: &[f64]) -> Vector {
        let d = sub(x, &self.x0);
        self.kernel.iter().map(|n| dot(n, &d)).collect()
    }

    fn violation_s(&self, s: &[f64]) -> f64 {
        self.body.violation(&self.point(s))
    }

    pub fn contains_coords(&self, s: &[f64]) -> bool {
        self.violation_s(s) <= self.tol
    }

    /// Box in kernel coordinates containing the (capped) fiber.
    pub fn coord_box(&self) -> (&[f64], &[f64]) {
        (&self.s_lo, &self.s_hi)
    }
}

/// Interval bounds of `Nᵀ(x − base)` over the body's bounding box, with
/// infinite sides replaced by `±cap` around `base`.
fn kernel_box(body: &Body, kernel: &[Vector], base: &[f64], cap: f64) -> (Vector, Vector, Vec<bool>, Vec<bool>) {
    let (lo, hi) = body.bounding_box();
    let k = kernel.len();
    let mut s_lo = vec![0.0; k];
    let mut s_hi = vec![0.0; k];
    let mut clip_lo = vec![false; k];
    let mut clip_hi = vec![false; k];
    for (j, nj) in kernel.iter().enumerate() {
        for i in 0..base.len() {
            if nj[i] == 0.0 {
                continue;
            }
            let dl = if lo[i].is_finite() { lo[i] - base[i] } else { -cap };
            let dh = if hi[i].is_finite() { hi[i] - base[i] } else { cap };
            let (a, b) = (nj[i] * dl, nj[i] * dh);
            s_lo[j] += a.min(b);
            s_hi[j] += a.max(b);
            let lo_inf = !lo[i].is_finite();
            let hi_inf = !hi[i].is_finite();
            if (nj[i] > 0.0 && lo_inf) || (nj[i] < 0.0 && hi_inf) {
                clip_lo[j] = true;
            }
            if (nj[i] > 0.0 && hi_inf) || (nj[i] < 0.0 && lo_inf) {
                clip_hi[j] = true;
            }
        }
    }
    (s_lo, s_hi, clip_lo, clip_hi)
}

fn poly_fiber(form: PolyForm, map: &LinearMap, y: &[f64]) -> PolyFiber {
    let te = map.matrix().mul(&form.embed);
    let to = map.matrix().mul_vec(&form.offset);
    let mut lp = form.lp.clone();
    for i in 0..te.rows {
        lp.add_eq(te.row(i).to_vec(), y[i] - to[i]);
    }
    PolyFiber { lp, embed: form.embed, offset: form.offset }
}

/// Build the fiber of `y`; `EmptyFiber` when `y` is farther than the fiber
/// tolerance from `T(Q)`.
pub fn make_fiber<'a>(body: &'a Body, map: &'a LinearMap, y: &[f64], cfg: &ToolConfig) -> Result<Fiber<'a>> {
    crate::linalg::check_dim(map.cols(), body.dim())?;
    crate::linalg::check_dim(map.rows(), y.len())?;
    if !crate::linalg::is_finite(y) {
        return Err(Error::InvalidInput("target must be finite".into()));
    }
    let kernel = map.kernel().to_vec();
    let (target, x0, poly) = match body.poly_form() {
        Some(form) => {
            let (target, x0) = poly_feasible(&form, map, y, cfg)?;
            let pf = poly_fiber(form, map, &target);
            (target, x0, Some(pf))
        }
        None => {
            let (target, x0) = oracle_feasible(body, map, &kernel, y, cfg)?;
            (target, x0, None)
        }
    };
    let (s_lo, s_hi, s_clip_lo, s_clip_hi) = kernel_box(body, &kernel, &x0, cfg.extent_cap);
    Ok(Fiber {
        body,
        map,
        target,
        x0,
        kernel,
        s_lo,
        s_hi,
        s_clip_lo,
        s_clip_hi,
        poly,
        tol: cfg.membership_tol,
        cap: cfg.extent_cap,
    })
}

/// Phase-one LP minimizing the max-norm residual `‖T x − y‖∞` over `Q`.
fn poly_feasible(form: &PolyForm, map: &LinearMap, y: &[f64], cfg: &ToolConfig) -> Result<(Vector, Vector)> {
    let te = map.matrix().mul(&form.embed);
    let to = map.matrix().mul_vec(&form.offset);
    let mut lp = form.lp.clone();
    let e = lp.add_var(true);
    for i in 0..te.rows {
        let mut row = te.row(i).to_vec();
        row.push(-1.0);
        lp.add_le(row.clone(), y[i] - to[i]);
        let mut neg: Vector = row.iter().map(|v| -v).collect();
        neg[e] = -1.0;
        lp.add_le(neg, to[i] - y[i]);
    }
    let mut c = vec![0.0; lp.nvars];
    c[e] = 1.0;
    let r = lp_minimize(&c, &lp)?;
    if r.status != LpStatus::Optimal || r.value > cfg.fiber_tol {
        return Err(Error::EmptyFiber);
    }
    let x0 = form.point(&r.point[..e]);
    let tx = map.apply(&x0)?;
    let target = if crate::linalg::dist(&tx, y) <= EXACT_RESIDUAL { y.to_vec() } else { tx };
    Ok((target, x0))
}

fn oracle_feasible(
    body: &Body,
    map: &LinearMap,
    kernel: &[Vector],
    y: &[f64],
    cfg: &ToolConfig,
) -> Result<(Vector, Vector)> {
    let xp = map.lift(y)?;
    if dist(&map.apply(&xp)?, y) > cfg.fiber_tol {
        return Err(Error::EmptyFiber);
    }
    let at = |s: &[f64]| {
        let mut x = xp.clone();
        for (sj, nj) in s.iter().zip(kernel) {
            x = axpy(&x, *sj, nj);
        }
        x
    };
    let x = if kernel.is_empty() {
        xp.clone()
    } else if kernel.len() <= NESTED_MAX {
        let (lo, hi, _, _) = kernel_box(body, kernel, &xp, cfg.extent_cap);
        let f = |s: &[f64]| body.violation(&at(s));
        at(&nested_min(&f, &lo, &hi).1)
    } else {
        alternating_feasible(body, map, &xp, y, cfg)?
    };
    let v = body.violation(&x);
    if v <= cfg.membership_tol {
        return Ok((y.to_vec(), x));
    }
    if v > cfg.fiber_tol {
        return Err(Error::EmptyFiber);
    }
    let q = body.nearest(&x)?;
    let tq = map.apply(&q)?;
    if dist(&tq, y) > cfg.fiber_tol {
        return Err(Error::EmptyFiber);
    }
    Ok((tq, q))
}

/// Projection onto `{x : T x = y}`.
fn affine_projection(map: &LinearMap, y: &[f64], p: &[f64]) -> Result<Vector> {
    let r = sub(y, &map.apply(p)?);
    Ok(add(p, &map.lift(&r)?))
}

fn alternating_feasible(body: &Body, map: &LinearMap, start: &[f64], y: &[f64], cfg: &ToolConfig) -> Result<Vector> {
    let mut x = start.to_vec();
    for _ in 0..cfg.max_iterations {
        let q = body.nearest(&x)?;
        let nx = affine_projection(map, y, &q)?;
        let step = dist(&nx, &x);
        x = nx;
        if step < 1e-12 * (1.0 + norm(&x)) {
            break;
        }
    }
    Ok(x)
}

/// Nearest point of the fiber to `anchor`.
pub fn min_norm_over_fiber(fiber: &Fiber, anchor: &[f64]) -> Result<FiberPoint> {
    crate::linalg::check_dim(fiber.x0.len(), anchor.len())?;
    if fiber.kernel.is_empty() {
        return Ok(FiberPoint { point: fiber.x0.clone(), clipped: false });
    }
    if let Some((g, h)) = fiber.body.halfspaces() {
        return Ok(FiberPoint { point: halfspace_min_norm(fiber, &g, &h, anchor)?, clipped: false });
    }
    if let Some(pf) = &fiber.poly {
        return Ok(FiberPoint { point: lp_min_norm(fiber, pf, anchor)?, clipped: false });
    }
    if fiber.dim() <= NESTED_MAX {
        return Ok(nested_min_norm(fiber, anchor));
    }
    dykstra_min_norm(fiber, anchor)
}

fn halfspace_min_norm(fiber: &Fiber, g: &[Vector], h: &[f64], anchor: &[f64]) -> Result<Vector> {
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (gi, hi) in g.iter().zip(h) {
        let r: Vector = fiber.kernel.iter().map(|n| dot(gi, n)).collect();
        if norm(&r) <= 1e-12 * norm(gi) {
            continue;
        }
        rows.push(r);
        rhs.push(hi - dot(gi, &fiber.x0));
    }
    let sa = fiber.coords(anchor);
    let k = fiber.dim();
    let start = vec![0.0; k];
    // x0 may violate by rounding; relax to make the start exactly feasible
    let rhs: Vector = rhs.iter().map(|b| b.max(0.0)).collect();
    let s = project_active_set(&rows, &rhs, &sa, &start, 10_000)?;
    Ok(fiber.point(&s))
}

fn lp_min_norm(fiber: &Fiber, pf: &PolyFiber, anchor: &[f64]) -> Result<Vector> {
    let lmo = |d: &[f64]| -> Result<Vector> {
        let (status, x) = pf.minimize(d, &pf.lp)?;
        if status != LpStatus::Optimal {
            return Err(Error::NonConvergence("unbounded fiber in minimum-norm search".into()));
        }
        Ok(sub(&x, anchor))
    };
    let z = wolfe_min_norm(lmo, sub(&fiber.x0, anchor), 10_000)?;
    Ok(add(&z, anchor))
}

fn dykstra_min_norm(fiber: &Fiber, anchor: &[f64]) -> Result<FiberPoint> {
    let n = anchor.len();
    let mut x = anchor.to_vec();
    let mut pinc = vec![0.0; n];
    let mut qinc = vec![0.0; n];
    for _ in 0..10_000 {
        let a = fiber.body.nearest(&add(&x, &pinc))?;
        pinc = sub(&add(&x, &pinc), &a);
        let nx = affine_projection(fiber.map, &fiber.target, &add(&a, &qinc))?;
        qinc = sub(&add(&a, &qinc), &nx);
        let step = dist(&nx, &x);
        let gap = dist(&nx, &a);
        x = nx;
        if step < 1e-10 && gap < 1e-10 {
            let s = fiber.coords(&x);
            return Ok(FiberPoint { point: pin_inside(fiber, &s), clipped: false });
        }
    }
    Err(Error::NonConvergence("Dykstra projection onto a fiber".into()))
}

/// Pull kernel coordinates toward `x0` until the point is inside.
fn pin_inside(fiber: &Fiber, s: &[f64]) -> Vector {
    if fiber.contains_coords(s) {
        return fiber.point(s);
    }
    let t = bisect(|t| fiber.contains_coords(&s.iter().map(|v| v * t).collect::<Vec<_>>()), 0.0, 1.0);
    fiber.point(&s.iter().map(|v| v * t).collect::<Vec<_>>())
}

/// Feasible interval of coordinate `j` with `prefix` fixed, given one
/// feasible completion `s_f`.
fn feasible_interval(fiber: &Fiber, prefix: &[f64], s_f: &[f64]) -> (f64, f64, bool, bool) {
    let j = prefix.len();
    let test = |c: f64| {
        let mut p = prefix.to_vec();
        p.push(c);
        completion(fiber, &p).0 <= fiber.tol
    };
    let (lo, hi) = (fiber.s_lo[j], fiber.s_hi[j]);
    let a = if test(lo) { lo } else { bisect(&test, s_f[j], lo) };
    let b = if test(hi) { hi } else { bisect(&test, s_f[j], hi) };
    (a, b, a == lo && fiber.s_clip_lo[j], b == hi && fiber.s_clip_hi[j])
}

/// Least violation over the coordinates after `prefix`, with minimizer.
fn completion(fiber: &Fiber, prefix: &[f64]) -> (f64, Vector) {
    let j = prefix.len();
    let k = fiber.dim();
    if j == k {
        return (fiber.violation_s(prefix), prefix.to_vec());
    }
    let f = |rest: &[f64]| {
        let mut s = prefix.to_vec();
        s.extend_from_slice(rest);
        fiber.violation_s(&s)
    };
    let (v, rest) = nested_min(&f, &fiber.s_lo[j..], &fiber.s_hi[j..]);
    let mut s = prefix.to_vec();
    s.extend(rest);
    (v, s)
}

fn nested_min_norm(fiber: &Fiber, anchor: &[f64]) -> FiberPoint {
    let sa = fiber.coords(anchor);
    let (_, sf) = completion(fiber, &[]);
    let sf = if fiber.contains_coords(&sf) { sf } else { vec![0.0; fiber.dim()] };
    let (s, clipped) = min_norm_rec(fiber, &sa, Vec::new(), &sf);
    FiberPoint { point: pin_inside(fiber, &s), clipped }
}

fn min_norm_rec(fiber: &Fiber, sa: &[f64], prefix: Vec<f64>, sf: &[f64]) -> (Vector, bool) {
    let j = prefix.len();
    let k = fiber.dim();
    let (lo, hi, clo, chi) = feasible_interval(fiber, &prefix, sf);
    if j + 1 == k {
        let c = sa[j].clamp(lo, hi);
        let mut s = prefix;
        s.push(c);
        let clipped = (c == lo && clo) || (c == hi && chi);
        return (s, clipped);
    }
    let inner = |c: f64| -> (f64, Vector, bool) {
        let mut p = prefix.clone();
        p.push(c);
        let (_, comp) = completion(fiber, &p);
        let (s, cl) = min_norm_rec(fiber, sa, p, &comp);
        let cost: f64 = s.iter().zip(sa).map(|(a, b)| (a - b).powi(2)).sum();
        (cost, s, cl)
    };
    let (c, _) = golden_min(|c| inner(c).0, lo, hi);
    let (_, s, cl) = inner(c);
    let clipped = cl || (c == lo && clo) || (c == hi && chi);
    (s, clipped)
}

/// Family of linear functionals, given as ambient coefficient vectors,
/// checked to separate the kernel of the map.
#[derive(Clone, Debug, PartialEq)]
pub struct FunctionalFamily {
    functionals: Vec<Vector>,
}

impl FunctionalFamily {
    pub fn new(functionals: Vec<Vector>, map: &LinearMap) -> Result<Self> {
        for f in &functionals {
            crate::linalg::check_dim(map.cols(), f.len())?;
        }
        let k = map.kernel().len();
        if k > 0 {
            if functionals.is_empty() {
                return Err(Error::NonSeparating);
            }
            let rows: Vec<Vector> =
                functionals.iter().map(|f| map.kernel().iter().map(|n| dot(f, n)).collect()).collect();
            let (_, _, rank) = qr_col_pivot(&Matrix::from_rows(&rows)?);
            if rank < k {
                return Err(Error::NonSeparating);
            }
        }
        Ok(FunctionalFamily { functionals })
    }

    /// Coordinate functionals of the kernel basis, in basis order.
    pub fn kernel_coordinates(map: &LinearMap) -> Self {
        FunctionalFamily { functionals: map.kernel().to_vec() }
    }

    pub fn functionals(&self) -> &[Vector] {
        &self.functionals
    }

    pub fn values(&self, x: &[f64]) -> Vector {
        self.functionals.iter().map(|f| dot(f, x)).collect()
    }
}

/// Lexicographic slice selection: successively restrict the fiber to the
/// minimizers of each functional.
pub fn gamma_over_fiber(fiber: &Fiber, family: &FunctionalFamily) -> Result<FiberPoint> {
    if fiber.kernel.is_empty() {
        return Ok(FiberPoint { point: fiber.x0.clone(), clipped: false });
    }
    if let Some(pf) = &fiber.poly {
        return lp_gamma(fiber, pf, family);
    }
    if fiber.dim() <= NESTED_MAX {
        return nested_gamma(fiber, family);
    }
    Err(Error::InvalidInput(
        "lexicographic selection on fibers of dimension above three needs a polyhedral body".into(),
    ))
}

fn lp_gamma(fiber: &Fiber, pf: &PolyFiber, family: &FunctionalFamily) -> Result<FiberPoint> {
    let mut lp = pf.lp.clone();
    let mut x = fiber.x0.clone();
    let mut clipped = false;
    for f in family.functionals() {
        let c = pf.embed.tr_mul_vec(f);
        if norm(&c) == 0.0 {
            continue;
        }
        let base = dot(f, &pf.offset);
        let (mut status, mut xr) = pf.minimize(f, &lp)?;
        if status == LpStatus::Unbounded {
            let floor = dot(f, &fiber.x0) - fiber.cap - base;
            let neg: Vector = c.iter().map(|v| -v).collect();
            lp.add_le(neg, -floor);
            clipped = true;
            (status, xr) = pf.minimize(f, &lp)?;
        }
        if status != LpStatus::Optimal {
            return Err(Error::EmptyFiber);
        }
        let a = dot(f, &xr);
        lp.add_le(c, a - base + SLICE_REL * (1.0 + a.abs()));
        x = xr;
    }
    Ok(FiberPoint { point: x, clipped })
}

fn nested_gamma(fiber: &Fiber, family: &FunctionalFamily) -> Result<FiberPoint> {
    let k = fiber.dim();
    // greedy independent subfamily, in order, restricted to the kernel
    let mut chosen: Vec<Vector> = Vec::new();
    for f in family.functionals() {
        let r: Vector = fiber.kernel.iter().map(|n| dot(f, n)).collect();
        let mut trial = chosen.clone();
        trial.push(r.clone());
        let (_, _, rank) = qr_col_pivot(&Matrix::from_rows(&trial)?);
        if rank == trial.len() {
            chosen = trial;
        }
        if chosen.len() == k {
            break;
        }
    }
    if chosen.len() < k {
        return Err(Error::NonSeparating);
    }
    // u = B s, with box from interval arithmetic
    let b = Matrix::from_rows(&chosen)?;
    let mut u_lo = vec![0.0; k];
    let mut u_hi = vec![0.0; k];
    let mut cl_lo = vec![false; k];
    for r in 0..k {
        for j in 0..k {
            let (p, q) = (b[(r, j)] * fiber.s_lo[j], b[(r, j)] * fiber.s_hi[j]);
            u_lo[r] += p.min(q);
            u_hi[r] += p.max(q);
            if b[(r, j)] != 0.0 && (fiber.s_clip_lo[j] || fiber.s_clip_hi[j]) {
                cl_lo[r] = true;
            }
        }
    }
    let to_s = |u: &[f64]| solve(&b, u).unwrap_or_else(|| vec![0.0; k]);
    let viol = |u: &[f64]| fiber.violation_s(&to_s(u));
    let rest_min = |prefix: &[f64]| -> (f64, Vector) {
        let j = prefix.len();
        if j == k {
            return (viol(prefix), prefix.to_vec());
        }
        let f = |rest: &[f64]| {
            let mut u = prefix.to_vec();
            u.extend_from_slice(rest);
            viol(&u)
        };
        let (v, rest) = nested_min(&f, &u_lo[j..], &u_hi[j..]);
        let mut u = prefix.to_vec();
        u.extend(rest);
        (v, u)
    };
    let mut feasible = b.mul_vec(&vec![0.0; k]);
    if viol(&feasible) > fiber.tol {
        feasible = rest_min(&[]).1;
    }
    let mut prefix: Vec<f64> = Vec::new();
    let mut clipped = false;
    for r in 0..k {
        let test = |c: f64| {
            let mut p = prefix.clone();
            p.push(c);
            rest_min(&p).0 <= fiber.tol
        };
        let a = if test(u_lo[r]) {
            clipped |= cl_lo[r];
            u_lo[r]
        } else {
            bisect(&test, feasible[r], u_lo[r])
        };
        prefix.push(a);
        let (_, completion) = rest_min(&prefix);
        feasible = completion;
    }
    let s = to_s(&prefix);
    Ok(FiberPoint { point: fiber.point(&s), clipped })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ToolConfig {
        ToolConfig::default()
    }

    #[test]
    fn square_sum_fiber() {
        let sq = Body::unit_square();
        let t = LinearMap::from_rows(&[vec![1.0, 1.0]]).unwrap();
        let f = make_fiber(&sq, &t, &[1.5], &cfg()).unwrap();
        assert!((f.x0()[0] + f.x0()[1] - 1.5).abs() < 1e-12);
        assert_eq!(f.dim(), 1);
        let g = min_norm_over_fiber(&f, &[0.0, 0.0]).unwrap();
        assert!(dist(&g.point, &[0.75, 0.75]) < 1e-12);
        assert_eq!(make_fiber(&sq, &t, &[2.5], &cfg()).unwrap_err(), Error::EmptyFiber);
    }

    #[test]
    fn ball_chord_fiber() {
        let b = Body::ball(vec![0.0; 3], 1.0).unwrap();
        let t = LinearMap::from_rows(&[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
        let f = make_fiber(&b, &t, &[0.6, 0.0], &cfg()).unwrap();
        assert!(f.x0()[2].abs() <= 0.8 + 1e-9);
        let g = min_norm_over_fiber(&f, &[0.0; 3]).unwrap();
        assert!(dist(&g.point, &[0.6, 0.0, 0.0]) < 1e-9);
    }

    #[test]
    fn shifted_ball_disk_fiber() {
        let b = Body::ball(vec![2.0, 0.0, 0.0], 1.0).unwrap();
        let t = LinearMap::from_rows(&[vec![1.0, 0.0, 0.0]]).unwrap();
        let f = make_fiber(&b, &t, &[2.0], &cfg()).unwrap();
        let g = min_norm_over_fiber(&f, &[0.0; 3]).unwrap();
        assert!(dist(&g.point, &[2.0, 0.0, 0.0]) < 1e-7);
    }

    #[test]
    fn epigraph_gamma() {
        let e = Body::epigraph19();
        let t = LinearMap::from_rows(&[vec![1.0, 0.0, 0.0]]).unwrap();
        let fam = FunctionalFamily::new(vec![vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]], &t).unwrap();
        for (x, want) in [(1.0, [1.0, 0.0, 1.0]), (0.5, [0.5, 0.0, 2.0]), (0.0, [0.0, 1.0, 0.0])] {
            let f = make_fiber(&e, &t, &[x], &cfg()).unwrap();
            let g = gamma_over_fiber(&f, &fam).unwrap();
            for i in 0..3 {
                assert!((g.point[i] - want[i]).abs() < 1e-6, "{x}: {:?}", g.point);
            }
        }
    }

    #[test]
    fn cone_rim_fiber_is_a_point() {
        let cone = Body::suspension(Body::ball(vec![1.0, 0.0], 1.0).unwrap(), 0.0, 1.0).unwrap();
        let t = LinearMap::from_rows(&[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
        let y = [1.0 - 1f64.cos(), 1f64.sin()];
        let f = make_fiber(&cone, &t, &y, &cfg()).unwrap();
        assert!((f.x0()[2] - 1.0).abs() < 1e-6);
    }

    #[test]
    fn non_separating_family_rejected() {
        let t = LinearMap::from_rows(&[vec![1.0, 0.0, 0.0]]).unwrap();
        assert_eq!(
            FunctionalFamily::new(vec![vec![0.0, 1.0, 0.0]], &t).unwrap_err(),
            Error::NonSeparating
        );
    }

    #[test]
    fn square_gamma_lowest_slice() {
        let sq = Body::unit_square();
        let t = LinearMap::from_rows(&[vec![1.0, 0.0]]).unwrap();
        let fam = FunctionalFamily::new(vec![vec![0.0, 1.0]], &t).unwrap();
        let f = make_fiber(&sq, &t, &[0.3], &cfg()).unwrap();
        let g = gamma_over_fiber(&f, &fam).unwrap();
        assert!(dist(&g.point, &[0.3, 0.0]) < 1e-9);
    }
}
