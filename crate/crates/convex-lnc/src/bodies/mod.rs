//! Convex bodies behind one oracle interface: membership, nearest point,
//! support, bounding box and line extent.

pub mod polyform;
pub mod polytope;
pub mod smooth;
pub mod spec;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{add, axpy, check_dim, dist, scale, sub, Matrix, Vector};

pub use polyform::PolyForm;
pub use polytope::{face_decompose_zonotope, HPolytope, VPolytope, Zonotope};
pub use smooth::{Ellipsoid, Epigraph19, PsdCap2};

const DYKSTRA_ITERS: usize = 10_000;
const DYKSTRA_STEP: f64 = 1e-10;
const DYKSTRA_SLACK: f64 = 1e-6;
const BALL_BISECTIONS: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Membership {
    Inside,
    Outside,
}

/// `{b : x + b v ∈ Q} ∩ [−cap, cap]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Extent {
    pub lo: f64,
    pub hi: f64,
    pub lo_clipped: bool,
    pub hi_clipped: bool,
}

#[derive(Clone, Debug)]
pub struct Intersection {
    left: Body,
    right: Body,
    anchor: Vector,
}

#[derive(Clone, Debug)]
pub struct AffineImage {
    map: Matrix,
    offset: Vector,
    body: Body,
    image: Body,
}

/// `{(t·y, offset + height·t) : y ∈ base, t ∈ [0,1]}`, a cone over `base`
/// with apex at height `offset`.
#[derive(Clone, Debug)]
pub struct Suspension {
    base: Body,
    offset: f64,
    height: f64,
}

#[derive(Clone, Debug)]
pub enum Body {
    HPolytope(HPolytope),
    VPolytope(VPolytope),
    Ellipsoid(Ellipsoid),
    Zonotope(Zonotope),
    PsdCap2(PsdCap2),
    Epigraph19(Epigraph19),
    Intersection(Box<Intersection>),
    Product(Box<Body>, Box<Body>),
    AffineImage(Box<AffineImage>),
    Translate(Box<Body>, Vector),
    Suspension(Box<Suspension>),
}

/// Move `x` toward `anchor` just far enough that the convex `violation`
/// becomes nonpositive. Without slack at the anchor (a body with empty
/// interior) `x` is kept as is.
pub(crate) fn pull_inside(x: &[f64], vx: f64, anchor: &[f64], va: f64) -> Vector {
    if vx <= 0.0 || va >= 0.0 {
        return x.to_vec();
    }
    let theta = (vx / (vx - va)).min(1.0);
    axpy(x, theta, &sub(anchor, x))
}

impl Body {
    pub fn hpolytope(a: Matrix, b: Vector) -> Result<Body> {
        Ok(Body::HPolytope(HPolytope::new(a, b)?))
    }

    pub fn vpolytope(vertices: Vec<Vector>) -> Result<Body> {
        Ok(Body::VPolytope(VPolytope::new(vertices)?))
    }

    pub fn ball(center: Vector, radius: f64) -> Result<Body> {
        Ok(Body::Ellipsoid(Ellipsoid::ball(center, radius)?))
    }

    pub fn ellipsoid(center: Vector, shape: Matrix) -> Result<Body> {
        Ok(Body::Ellipsoid(Ellipsoid::new(center, shape)?))
    }

    pub fn zonotope(center: Vector, generators: Vec<Vector>) -> Result<Body> {
        Ok(Body::Zonotope(Zonotope::new(center, generators)?))
    }

    pub fn psd_cap2() -> Body {
        Body::PsdCap2(PsdCap2)
    }

    pub fn epigraph19() -> Body {
        Body::Epigraph19(Epigraph19)
    }

    pub fn unit_square() -> Body {
        Body::HPolytope(HPolytope::cube(2, 0.0, 1.0).expect("square"))
    }

    pub fn product(left: Body, right: Body) -> Body {
        Body::Product(Box::new(left), Box::new(right))
    }

    pub fn translate(body: Body, shift: Vector) -> Result<Body> {
        check_dim(body.dim(), shift.len())?;
        if !crate::linalg::is_finite(&shift) {
            return Err(Error::InvalidInput("shift must be finite".into()));
        }
        Ok(Body::Translate(Box::new(body), shift))
    }

    pub fn intersection(left: Body, right: Body) -> Result<Body> {
        check_dim(left.dim(), right.dim())?;
        let anchor = intersection_anchor(&left, &right)?;
        Ok(Body::Intersection(Box::new(Intersection { left, right, anchor })))
    }

    /// Exact image `x ↦ M x + o`; only V-polytopes and zonotopes (possibly
    /// translated or already mapped) are supported.
    pub fn affine_image(map: Matrix, offset: Vector, body: Body) -> Result<Body> {
        check_dim(body.dim(), map.cols)?;
        check_dim(map.rows, offset.len())?;
        if !map.is_finite() || !crate::linalg::is_finite(&offset) {
            return Err(Error::InvalidInput("map must be finite".into()));
        }
        let image = exact_image(&map, &offset, &body)?;
        Ok(Body::AffineImage(Box::new(AffineImage { map, offset, body, image })))
    }

    pub fn suspension(base: Body, offset: f64, height: f64) -> Result<Body> {
        if !base.is_bounded() {
            return Err(Error::InvalidInput("suspension base must be bounded".into()));
        }
        if !(offset.is_finite() && height.is_finite() && height != 0.0) {
            return Err(Error::InvalidInput("suspension height must be finite and nonzero".into()));
        }
        Ok(Body::Suspension(Box::new(Suspension { base, offset, height })))
    }

    pub fn dim(&self) -> usize {
        match self {
            Body::HPolytope(h) => h.dim(),
            Body::VPolytope(v) => v.dim(),
            Body::Ellipsoid(e) => e.dim(),
            Body::Zonotope(z) => z.dim(),
            Body::PsdCap2(_) | Body::Epigraph19(_) => 3,
            Body::Intersection(i) => i.left.dim(),
            Body::Product(a, b) => a.dim() + b.dim(),
            Body::AffineImage(a) => a.offset.len(),
            Body::Translate(b, _) => b.dim(),
            Body::Suspension(s) => s.base.dim() + 1,
        }
    }

    /// Short name of the body kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Body::HPolytope(_) => "hpolytope",
            Body::VPolytope(_) => "vpolytope",
            Body::Ellipsoid(e) if e.radius().is_some() => "ball",
            Body::Ellipsoid(_) => "ellipsoid",
            Body::Zonotope(_) => "zonotope",
            Body::PsdCap2(_) => "psdcap2",
            Body::Epigraph19(_) => "epigraph19",
            Body::Intersection(_) => "intersection",
            Body::Product(..) => "product",
            Body::AffineImage(_) => "affine_image",
            Body::Translate(..) => "translate",
            Body::Suspension(_) => "suspension",
        }
    }

    /// A convex function, finite everywhere, that is nonpositive exactly on
    /// the body and grows roughly like the distance outside it.
    pub fn violation(&self, x: &[f64]) -> f64 {
        match self {
            Body::HPolytope(h) => h.violation(x),
            Body::VPolytope(v) => v.violation(x),
            Body::Ellipsoid(e) => e.violation(x),
            Body::Zonotope(z) => z.violation(x),
            Body::PsdCap2(p) => p.violation(x),
            Body::Epigraph19(e) => e.violation(x),
            Body::Intersection(i) => i.left.violation(x).max(i.right.violation(x)),
            Body::Product(a, b) => {
                let k = a.dim();
                a.violation(&x[..k]).max(b.violation(&x[k..]))
            }
            Body::AffineImage(a) => a.image.violation(x),
            Body::Translate(b, w) => b.violation(&sub(x, w)),
            Body::Suspension(s) => s.violation(x),
        }
    }

    pub fn membership(&self, x: &[f64], tol: f64) -> Result<Membership> {
        check_dim(self.dim(), x.len())?;
        if !(tol > 0.0) {
            return Err(Error::InvalidInput("tolerance must be positive".into()));
        }
        Ok(if self.contains(x, tol) { Membership::Inside } else { Membership::Outside })
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        let v = self.violation(x);
        v <= tol
    }

    pub fn nearest(&self, p: &[f64]) -> Result<Vector> {
        check_dim(self.dim(), p.len())?;
        match self {
            Body::HPolytope(h) => h.nearest(p),
            Body::VPolytope(v) => v.nearest(p),
            Body::Ellipsoid(e) => e.nearest(p),
            Body::Zonotope(z) => z.nearest(p),
            Body::PsdCap2(s) => s.nearest(p),
            Body::Epigraph19(e) => e.nearest(p),
            Body::Intersection(i) => i.nearest(p),
            Body::Product(a, b) => {
                let k = a.dim();
                let mut x = a.nearest(&p[..k])?;
                x.extend(b.nearest(&p[k..])?);
                Ok(x)
            }
            Body::AffineImage(a) => a.image.nearest(p),
            Body::Translate(b, w) => Ok(add(&b.nearest(&sub(p, w))?, w)),
            Body::Suspension(s) => s.nearest(p),
        }
    }

    /// `max ⟨d, x⟩` over the body with a maximizer, when the body exposes
    /// it and the maximum is finite.
    pub fn support(&self, d: &[f64]) -> Option<(f64, Vector)> {
        if d.len() != self.dim() {
            return None;
        }
        match self {
            Body::HPolytope(h) => h.support(d),
            Body::VPolytope(v) => Some(v.support(d)),
            Body::Ellipsoid(e) => Some(e.support(d)),
            Body::Zonotope(z) => Some(z.support(d)),
            Body::PsdCap2(p) => Some(p.support(d)),
            Body::Epigraph19(_) | Body::Intersection(_) => None,
            Body::Product(a, b) => {
                let k = a.dim();
                let (ha, mut xa) = a.support(&d[..k])?;
                let (hb, xb) = b.support(&d[k..])?;
                xa.extend(xb);
                Some((ha + hb, xa))
            }
            Body::AffineImage(a) => a.image.support(d),
            Body::Translate(b, w) => {
                let (h, x) = b.support(d)?;
                Some((h + crate::linalg::dot(d, w), add(&x, w)))
            }
            Body::Suspension(s) => s.support(d),
        }
    }

    /// Per-coordinate bounds; infinite entries mark unbounded directions.
    pub fn bounding_box(&self) -> (Vector, Vector) {
        match self {
            Body::HPolytope(h) => h.bounding_box(),
            Body::VPolytope(v) => v.bounding_box(),
            Body::Ellipsoid(e) => e.bounding_box(),
            Body::Zonotope(z) => z.bounding_box(),
            Body::PsdCap2(_) => (vec![0.0, -0.5, 0.0], vec![1.0, 0.5, 1.0]),
            Body::Epigraph19(e) => e.bounding_box(),
            Body::Intersection(i) => {
                let (mut lo, mut hi) = i.left.bounding_box();
                let (lo2, hi2) = i.right.bounding_box();
                for k in 0..lo.len() {
                    lo[k] = lo[k].max(lo2[k]);
                    hi[k] = hi[k].min(hi2[k]);
                }
                (lo, hi)
            }
            Body::Product(a, b) => {
                let (mut lo, mut hi) = a.bounding_box();
                let (lo2, hi2) = b.bounding_box();
                lo.extend(lo2);
                hi.extend(hi2);
                (lo, hi)
            }
            Body::AffineImage(a) => a.image.bounding_box(),
            Body::Translate(b, w) => {
                let (lo, hi) = b.bounding_box();
                (add(&lo, w), add(&hi, w))
            }
            Body::Suspension(s) => s.bounding_box(),
        }
    }

    pub fn is_bounded(&self) -> bool {
        let (lo, hi) = self.bounding_box();
        lo.iter().chain(&hi).all(|v| v.is_finite())
    }

    /// A point of the body, interior whenever that is cheap to find.
    pub fn anchor(&self) -> Vector {
        match self {
            Body::HPolytope(h) => h.point().to_vec(),
            Body::VPolytope(v) => v.centroid(),
            Body::Ellipsoid(e) => e.center().to_vec(),
            Body::Zonotope(z) => z.midpoint(),
            Body::PsdCap2(_) => PsdCap2::centre(),
            Body::Epigraph19(_) => vec![0.5, 0.25, 10.0],
            Body::Intersection(i) => i.anchor.clone(),
            Body::Product(a, b) => {
                let mut x = a.anchor();
                x.extend(b.anchor());
                x
            }
            Body::AffineImage(a) => a.image.anchor(),
            Body::Translate(b, w) => add(&b.anchor(), w),
            Body::Suspension(s) => {
                let mut x = scale(&s.base.anchor(), 0.5);
                x.push(s.offset + 0.5 * s.height);
                x
            }
        }
    }

    pub fn is_polyhedral(&self) -> bool {
        match self {
            Body::HPolytope(_) | Body::VPolytope(_) | Body::Zonotope(_) => true,
            Body::Ellipsoid(_) | Body::PsdCap2(_) | Body::Epigraph19(_) => false,
            Body::Intersection(i) => i.left.is_polyhedral() && i.right.is_polyhedral(),
            Body::Product(a, b) => a.is_polyhedral() && b.is_polyhedral(),
            Body::AffineImage(a) => a.image.is_polyhedral(),
            Body::Translate(b, _) => b.is_polyhedral(),
            Body::Suspension(s) => s.base.is_polyhedral(),
        }
    }

    /// Extended linear formulation for polyhedral bodies.
    pub fn poly_form(&self) -> Option<PolyForm> {
        match self {
            Body::HPolytope(h) => Some(h.poly_form()),
            Body::VPolytope(v) => Some(v.poly_form()),
            Body::Zonotope(z) => Some(z.poly_form()),
            Body::Ellipsoid(_) | Body::PsdCap2(_) | Body::Epigraph19(_) => None,
            Body::Intersection(i) => {
                Some(PolyForm::intersection(&i.left.poly_form()?, &i.right.poly_form()?))
            }
            Body::Product(a, b) => Some(PolyForm::product(&a.poly_form()?, &b.poly_form()?)),
            Body::AffineImage(a) => a.image.poly_form(),
            Body::Translate(b, w) => Some(b.poly_form()?.translate(w)),
            Body::Suspension(s) => Some(PolyForm::suspension(&s.base.poly_form()?, s.offset, s.height)),
        }
    }

    /// Facet inequalities `g·x ≤ h` when the body is a polyhedron whose
    /// constraint form is known.
    pub fn halfspaces(&self) -> Option<(Vec<Vector>, Vector)> {
        match self {
            Body::HPolytope(h) => Some((h.a().row_vecs(), h.b().to_vec())),
            Body::VPolytope(v) => v.facets().map(|h| (h.a().row_vecs(), h.b().to_vec())),
            Body::Zonotope(z) => z.facets().map(|h| (h.a().row_vecs(), h.b().to_vec())),
            Body::Intersection(i) => {
                let (mut g, mut h) = i.left.halfspaces()?;
                let (g2, h2) = i.right.halfspaces()?;
                g.extend(g2);
                h.extend(h2);
                Some((g, h))
            }
            Body::Product(a, b) => {
                let (ka, kb) = (a.dim(), b.dim());
                let (ga, ha) = a.halfspaces()?;
                let (gb, hb) = b.halfspaces()?;
                let mut g: Vec<Vector> = ga
                    .into_iter()
                    .map(|mut r| {
                        r.extend(std::iter::repeat_n(0.0, kb));
                        r
                    })
                    .collect();
                g.extend(gb.into_iter().map(|r| {
                    let mut z = vec![0.0; ka];
                    z.extend(r);
                    z
                }));
                Some((g, ha.into_iter().chain(hb).collect()))
            }
            Body::AffineImage(a) => a.image.halfspaces(),
            Body::Translate(b, w) => {
                let (g, h) = b.halfspaces()?;
                let h = g.iter().zip(h).map(|(r, c)| c + crate::linalg::dot(r, w)).collect();
                Some((g, h))
            }
            _ => None,
        }
    }

    /// `{b : x + b v ∈ Q}` clipped to `[−cap, cap]`, by exponential
    /// bracketing and bisection on membership.
    pub fn line_extent(&self, x: &[f64], v: &[f64], cap: f64, tol: f64) -> Result<Extent> {
        check_dim(self.dim(), x.len())?;
        check_dim(self.dim(), v.len())?;
        if crate::linalg::norm(v) == 0.0 {
            return Err(Error::ZeroDirection);
        }
        if !self.contains(x, tol) {
            return Err(Error::NotInBody);
        }
        let ok = |b: f64| self.contains(&axpy(x, b, v), tol);
        let side = |sign: f64| -> (f64, bool) {
            if ok(sign * cap) {
                return (sign * cap, true);
            }
            let mut good = 0.0;
            let mut bad = 1.0f64.min(cap);
            while ok(sign * bad) {
                good = bad;
                bad = (2.0 * bad).min(cap);
            }
            let b = crate::solvers::scalar::bisect(|t| ok(sign * t), good, bad);
            (sign * b, false)
        };
        let (lo, lo_clipped) = side(-1.0);
        let (hi, hi_clipped) = side(1.0);
        Ok(Extent { lo, hi, lo_clipped, hi_clipped })
    }
}

impl Intersection {
    pub fn parts(&self) -> (&Body, &Body) {
        (&self.left, &self.right)
    }

    fn dykstra(&self, p: &[f64]) -> Result<Vector> {
        let n = p.len();
        let mut x = p.to_vec();
        let mut pinc = vec![0.0; n];
        let mut qinc = vec![0.0; n];
        let mut last_gap = f64::INFINITY;
        for _ in 0..DYKSTRA_ITERS {
            let a = self.left.nearest(&add(&x, &pinc))?;
            pinc = sub(&add(&x, &pinc), &a);
            let nx = self.right.nearest(&add(&a, &qinc))?;
            qinc = sub(&add(&a, &qinc), &nx);
            let step = dist(&nx, &x);
            let gap = dist(&nx, &a);
            x = nx;
            if step < DYKSTRA_STEP && gap < DYKSTRA_STEP {
                return Ok(x);
            }
            last_gap = gap;
        }
        // slow tangential convergence: accept a nearly feasible iterate,
        // the caller pulls it inside
        if last_gap < DYKSTRA_SLACK {
            return Ok(x);
        }
        Err(Error::NonConvergence("Dykstra projection onto an intersection".into()))
    }

    fn violation(&self, x: &[f64]) -> f64 {
        self.left.violation(x).max(self.right.violation(x))
    }

    fn nearest(&self, p: &[f64]) -> Result<Vector> {
        if self.violation(p) <= 0.0 {
            return Ok(p.to_vec());
        }
        let x = match self.ball_part() {
            Some((other, c, r)) => project_with_ball(other, c, r, p)?,
            None => self.dykstra(p)?,
        };
        Ok(pull_inside(&x, self.violation(&x), &self.anchor, self.violation(&self.anchor)))
    }

    fn ball_part(&self) -> Option<(&Body, &[f64], f64)> {
        fn ball(b: &Body) -> Option<(&[f64], f64)> {
            match b {
                Body::Ellipsoid(e) => e.radius().map(|r| (e.center(), r)),
                _ => None,
            }
        }
        ball(&self.right)
            .map(|(c, r)| (&self.left, c, r))
            .or_else(|| ball(&self.left).map(|(c, r)| (&self.right, c, r)))
    }
}

/// Projection onto `K ∩ B(c, r)`: it is `P_K((1 − s)p + s c)` for the `s` at
/// which that point reaches the sphere, and the distance to `c` decreases
/// in `s`.
fn project_with_ball(k: &Body, c: &[f64], r: f64, p: &[f64]) -> Result<Vector> {
    let at = |s: f64| k.nearest(&add(&scale(p, 1.0 - s), &scale(c, s)));
    let x0 = at(0.0)?;
    if dist(&x0, c) <= r {
        return Ok(x0);
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    let mut best = at(1.0)?;
    for _ in 0..BALL_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let x = at(mid)?;
        if dist(&x, c) <= r {
            hi = mid;
            best = x;
        } else {
            lo = mid;
        }
    }
    Ok(best)
}

/// Average of Dykstra projections of a small star of points; lands in the
/// relative interior for full-dimensional intersections.
fn intersection_anchor(left: &Body, right: &Body) -> Result<Vector> {
    let probe = Intersection { left: left.clone(), right: right.clone(), anchor: left.anchor() };
    let centre = crate::linalg::midpoint(&left.anchor(), &right.anchor());
    let first = probe.dykstra(&centre).map_err(|_| Error::InvalidInput("intersection is empty".into()))?;
    if probe.violation(&first) > 1e-7 {
        return Err(Error::InvalidInput("intersection is empty".into()));
    }
    let (lo, hi) = probe_box(left, right);
    let n = centre.len();
    let mut pts = vec![first.clone()];
    for i in 0..n {
        let w = (hi[i] - lo[i]).clamp(1e-3, 1e3);
        for s in [-1.0, 1.0] {
            let mut q = first.clone();
            q[i] += s * w;
            if let Ok(z) = probe.dykstra(&q) {
                if probe.violation(&z) <= 1e-9 {
                    pts.push(z);
                }
            }
        }
    }
    let k = pts.len() as f64;
    let avg = pts.iter().fold(vec![0.0; n], |acc, p| axpy(&acc, 1.0 / k, p));
    Ok(if probe.violation(&avg) <= probe.violation(&first).max(0.0) { avg } else { first })
}

fn probe_box(left: &Body, right: &Body) -> (Vector, Vector) {
    let (mut lo, mut hi) = left.bounding_box();
    let (lo2, hi2) = right.bounding_box();
    for k in 0..lo.len() {
        lo[k] = lo[k].max(lo2[k]);
        hi[k] = hi[k].min(hi2[k]);
        if !lo[k].is_finite() || !hi[k].is_finite() {
            lo[k] = -1.0;
            hi[k] = 1.0;
        }
    }
    (lo, hi)
}

fn exact_image(map: &Matrix, offset: &[f64], body: &Body) -> Result<Body> {
    match body {
        Body::VPolytope(v) => {
            let verts = v.vertices().iter().map(|p| add(&map.mul_vec(p), offset)).collect();
            Body::vpolytope(verts)
        }
        Body::Zonotope(z) => {
            let gens = z.generators().iter().map(|g| map.mul_vec(g)).collect();
            Body::zonotope(add(&map.mul_vec(z.center()), offset), gens)
        }
        Body::Translate(b, w) => exact_image(map, &add(&map.mul_vec(w), offset), b),
        Body::AffineImage(a) => exact_image(map, offset, &a.image),
        _ => Err(Error::UnsupportedImage),
    }
}

impl AffineImage {
    pub fn map(&self) -> &Matrix {
        &self.map
    }
    pub fn offset(&self) -> &[f64] {
        &self.offset
    }
    pub fn body(&self) -> &Body {
        &self.body
    }
    pub fn image(&self) -> &Body {
        &self.image
    }
}

impl Suspension {
    pub fn base(&self) -> &Body {
        &self.base
    }
    pub fn offset(&self) -> f64 {
        self.offset
    }
    pub fn height(&self) -> f64 {
        self.height
    }

    fn level(&self, x: &[f64]) -> f64 {
        (x[x.len() - 1] - self.offset) / self.height
    }

    fn violation(&self, x: &[f64]) -> f64 {
        let n = x.len() - 1;
        let t = self.level(x);
        let y = &x[..n];
        let slice = if t > 0.0 {
            t * self.base.violation(&scale(y, 1.0 / t))
        } else {
            y.iter().map(|v| v.abs()).fold(0.0, f64::max)
        };
        (-t).max(t - 1.0).max(slice)
    }

    /// Nearest point of the slice at level `t` to `y`, with its distance.
    fn slice_nearest(&self, y: &[f64], t: f64) -> Result<(Vector, f64)> {
        if t <= 0.0 {
            return Ok((vec![0.0; y.len()], crate::linalg::norm(y)));
        }
        let z = scale(&self.base.nearest(&scale(y, 1.0 / t))?, t);
        let d = dist(&z, y);
        Ok((z, d))
    }

    fn nearest(&self, p: &[f64]) -> Result<Vector> {
        if self.violation(p) <= 0.0 {
            return Ok(p.to_vec());
        }
        let n = p.len() - 1;
        let y = &p[..n];
        let last = p[n];
        let mut failure = None;
        let cost = |t: f64| match self.slice_nearest(y, t) {
            Ok((_, d)) => (self.offset + self.height * t - last).powi(2) + d * d,
            Err(e) => {
                failure = Some(e);
                f64::INFINITY
            }
        };
        let (t, _) = crate::solvers::scalar::golden_min(cost, 0.0, 1.0);
        if let Some(e) = failure {
            return Err(e);
        }
        let (mut z, _) = self.slice_nearest(y, t)?;
        z.push(self.offset + self.height * t);
        Ok(z)
    }

    fn support(&self, d: &[f64]) -> Option<(f64, Vector)> {
        let n = d.len() - 1;
        let (hb, xb) = self.base.support(&d[..n])?;
        let apex = d[n] * self.offset;
        let top = hb + d[n] * (self.offset + self.height);
        let mut x;
        if top >= apex {
            x = xb;
            x.push(self.offset + self.height);
            Some((top, x))
        } else {
            x = vec![0.0; n];
            x.push(self.offset);
            Some((apex, x))
        }
    }

    fn bounding_box(&self) -> (Vector, Vector) {
        let (mut lo, mut hi) = self.base.bounding_box();
        for k in 0..lo.len() {
            lo[k] = lo[k].min(0.0);
            hi[k] = hi[k].max(0.0);
        }
        let end = self.offset + self.height;
        lo.push(self.offset.min(end));
        hi.push(self.offset.max(end));
        (lo, hi)
    }
}
