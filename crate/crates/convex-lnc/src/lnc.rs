//! Numerical tests of the locally nonconical property: the segment test,
//! a seeded witness search, openness probes of restricted maps and a
//! cross-check tying the three together.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::bodies::Body;
use crate::config::ToolConfig;
use crate::error::{Error, Result};
use crate::linalg::{axpy, dist, dot, midpoint, norm, scale, sub, sym_eigen, LinearMap, Matrix, Vector};
use crate::solvers::fiber::{make_fiber, min_norm_over_fiber};

const SAMPLES_PER_LEVEL: usize = 16;
const MAX_LEVELS: usize = 12;
const UNIFORM_TRIES: usize = 200;
const PINNED_WIDTH: f64 = 1e-9;
const CONFIRM_SAMPLES: usize = 32;
const CONFIRM_LEVELS: i32 = 5;
const CONFIRM_EPS_EXP: i32 = 6;
const CONFIRM_STEP: f64 = 0.18;

/// True iff some `ε` in the grid has both `q + εv` and `q − εv` inside.
pub fn segment_test(body: &Body, q: &[f64], v: &[f64], eps_grid: &[f64], tol: f64) -> bool {
    // the violation is convex along the line and q is inside, so a failure
    // at some ε is a failure at every larger ε
    match eps_grid.iter().copied().min_by(f64::total_cmp) {
        Some(e) => body.contains(&axpy(q, e, v), tol) && body.contains(&axpy(q, -e, v), tol),
        None => false,
    }
}

/// Euclidean distance from `z` to the body, zero inside.
pub fn outside_margin(body: &Body, z: &[f64], tol: f64) -> Result<f64> {
    if body.contains(z, tol) {
        return Ok(0.0);
    }
    Ok(dist(z, &body.nearest(z)?))
}

/// A cheap lower bound on the distance to the body, when the violation is one.
fn distance_lower_bound(body: &Body, z: &[f64]) -> Option<f64> {
    match body {
        Body::HPolytope(_) | Body::VPolytope(_) | Body::Zonotope(_) | Body::Ellipsoid(_) => Some(body.violation(z)),
        Body::Intersection(i) => {
            let (l, r) = i.parts();
            match (distance_lower_bound(l, z), distance_lower_bound(r, z)) {
                (Some(a), Some(b)) => Some(a.max(b)),
                (a, b) => a.or(b),
            }
        }
        Body::Product(a, b) => {
            let k = a.dim();
            match (distance_lower_bound(a, &z[..k]), distance_lower_bound(b, &z[k..])) {
                (Some(x), Some(y)) => Some(x.max(y)),
                (x, y) => x.or(y),
            }
        }
        Body::AffineImage(a) => distance_lower_bound(a.image(), z),
        Body::Translate(b, w) => distance_lower_bound(b, &sub(z, w)),
        _ => None,
    }
}

/// `None` inside; otherwise a margin that is exact below `mu` and may be a
/// lower bound above it.
fn quick_margin(body: &Body, z: &[f64], tol: f64, mu: f64) -> Result<Option<f64>> {
    if body.contains(z, tol) {
        return Ok(None);
    }
    if let Some(lb) = distance_lower_bound(body, z) {
        if lb >= mu {
            return Ok(Some(lb));
        }
    }
    Ok(Some(dist(z, &body.nearest(z)?)))
}

/// Falsification data: a pair, approach points near its midpoint and, for
/// each approach point and each grid value `ε`, the distances of
/// `q + εv` and `q − εv` to the body.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LncWitness {
    pub x: Vector,
    pub x_prime: Vector,
    pub midpoint: Vector,
    pub direction: Vector,
    pub approach: Vec<Vector>,
    pub eps_grid: Vec<f64>,
    /// `margins[j][k] = [dist(q_j + ε_k v), dist(q_j − ε_k v)]`
    pub margins: Vec<Vec<[f64; 2]>>,
    pub margin_threshold: f64,
    pub membership_tol: f64,
    pub seed: Option<u64>,
    pub pair_index: Option<usize>,
}

impl LncWitness {
    /// Measure the margins of the given data against `body`.
    pub fn measure(body: &Body, x: &[f64], x_prime: &[f64], approach: Vec<Vector>, cfg: &ToolConfig) -> Result<LncWitness> {
        let v = sub(x_prime, x);
        let grid = cfg.eps_grid();
        let tol = cfg.membership_tol;
        let mut margins = Vec::with_capacity(approach.len());
        for q in &approach {
            let mut row = Vec::with_capacity(grid.len());
            for &e in &grid {
                row.push([outside_margin(body, &axpy(q, e, &v), tol)?, outside_margin(body, &axpy(q, -e, &v), tol)?]);
            }
            margins.push(row);
        }
        Ok(LncWitness {
            x: x.to_vec(),
            x_prime: x_prime.to_vec(),
            midpoint: midpoint(x, x_prime),
            direction: v,
            approach,
            eps_grid: grid,
            margins,
            margin_threshold: cfg.witness_margin,
            membership_tol: tol,
            seed: None,
            pair_index: None,
        })
    }

    /// Checks that need nothing but the record.
    pub fn check_record(&self) -> std::result::Result<(), String> {
        let n = self.x.len();
        if self.x_prime.len() != n || self.midpoint.len() != n || self.direction.len() != n {
            return Err("inconsistent dimensions".into());
        }
        let p = midpoint(&self.x, &self.x_prime);
        let v = sub(&self.x_prime, &self.x);
        let scale_ = 1.0 + norm(&self.x).max(norm(&self.x_prime));
        if dist(&p, &self.midpoint) > 1e-12 * scale_ || dist(&v, &self.direction) > 1e-12 * scale_ {
            return Err("midpoint or direction does not match the pair".into());
        }
        if norm(&v) == 0.0 {
            return Err("degenerate pair".into());
        }
        if self.approach.is_empty() {
            return Err("no approach points".into());
        }
        if self.margins.len() != self.approach.len() {
            return Err("one margin row per approach point expected".into());
        }
        let mut prev = f64::INFINITY;
        for (j, q) in self.approach.iter().enumerate() {
            if q.len() != n {
                return Err(format!("approach point {j} has wrong dimension"));
            }
            let d = dist(q, &self.midpoint);
            if !(d < prev) {
                return Err(format!("approach point {j} is not closer than its predecessor"));
            }
            prev = d;
            if self.margins[j].len() != self.eps_grid.len() {
                return Err(format!("margin row {j} does not cover the grid"));
            }
            for (k, m) in self.margins[j].iter().enumerate() {
                if m[0].max(m[1]) < self.margin_threshold {
                    return Err(format!("q_{j} ± ε_{k} v is not robustly outside"));
                }
            }
        }
        Ok(())
    }

    /// Full re-verification against the body: the record checks, membership
    /// of the pair and approach points, and freshly measured margins.
    pub fn verify(&self, body: &Body) -> std::result::Result<(), String> {
        self.check_record()?;
        if body.dim() != self.x.len() {
            return Err("dimension differs from the body".into());
        }
        let tol = self.membership_tol;
        for (name, z) in [("x", &self.x), ("x'", &self.x_prime)] {
            if !body.contains(z, tol) {
                return Err(format!("{name} is not inside"));
            }
        }
        for (j, q) in self.approach.iter().enumerate() {
            if !body.contains(q, tol) {
                return Err(format!("approach point {j} is not inside"));
            }
            for &e in &self.eps_grid {
                let mp = outside_margin(body, &axpy(q, e, &self.direction), tol).map_err(|e| e.to_string())?;
                let mm = outside_margin(body, &axpy(q, -e, &self.direction), tol).map_err(|e| e.to_string())?;
                if mp.max(mm) < self.margin_threshold {
                    return Err(format!("q_{j} ± {e} v is not robustly outside"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LncOutcome {
    NoWitnessFound { pairs_tested: usize, pairs_skipped: usize, seed: u64 },
    Witness(Box<LncWitness>),
}

impl LncOutcome {
    pub fn witness(&self) -> Option<&LncWitness> {
        match self {
            LncOutcome::Witness(w) => Some(w),
            LncOutcome::NoWitnessFound { .. } => None,
        }
    }
}

struct Search<'a> {
    body: &'a Body,
    cfg: &'a ToolConfig,
    lo: Vector,
    hi: Vector,
    anchor: Vector,
    diam: f64,
    scales: usize,
}

fn unit_vector(rng: &mut ChaCha8Rng, n: usize) -> Vector {
    loop {
        let u: Vector = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let nu = norm(&u);
        if nu > 1e-12 {
            return scale(&u, 1.0 / nu);
        }
    }
}

/// Rough size of a bounded body: the diagonal of its bounding box.
pub fn diameter_estimate(body: &Body) -> f64 {
    let (lo, hi) = body.bounding_box();
    let d = dist(&lo, &hi);
    if d.is_finite() && d > 0.0 {
        d
    } else {
        1.0
    }
}

impl Search<'_> {
    fn extreme_point(&self, rng: &mut ChaCha8Rng) -> Result<Vector> {
        let d = unit_vector(rng, self.anchor.len());
        match self.body.support(&d) {
            Some((_, x)) => Ok(x),
            None => self.body.nearest(&axpy(&self.anchor, 2.0 * self.diam, &d)),
        }
    }

    fn uniform_point(&self, rng: &mut ChaCha8Rng) -> Result<Vector> {
        let mut z = Vec::new();
        for _ in 0..UNIFORM_TRIES {
            z = self.lo.iter().zip(&self.hi).map(|(l, h)| l + rng.gen::<f64>() * (h - l)).collect();
            if self.body.contains(&z, self.cfg.membership_tol) {
                return Ok(z);
            }
        }
        self.body.nearest(&z)
    }

    /// Coordinates on which the bounding box is flat; the body has no
    /// extent there, so they carry no tangent directions.
    fn pinned(&self, i: usize) -> bool {
        self.hi[i] - self.lo[i] <= PINNED_WIDTH * self.diam
    }

    fn free_part(&self, x: &[f64]) -> Vector {
        x.iter().enumerate().map(|(i, &v)| if self.pinned(i) { 0.0 } else { v }).collect()
    }

    /// A chord through a boundary point along its flattest tangent direction.
    fn boundary_chord(&self, rng: &mut ChaCha8Rng) -> Result<Option<(Vector, Vector)>> {
        let n = self.anchor.len();
        let d = self.free_part(&unit_vector(rng, n));
        if norm(&d) == 0.0 {
            return Ok(None);
        }
        let far = axpy(&self.anchor, 2.0 * self.diam / norm(&d), &d);
        let b = self.body.nearest(&far)?;
        let nrm = self.free_part(&sub(&far, &b));
        let nn = norm(&nrm);
        if nn == 0.0 || n < 2 {
            return Ok(None);
        }
        let nrm = scale(&nrm, 1.0 / nn);
        let free = (0..n).filter(|&i| !self.pinned(i)).count();
        let mut tangents: Vec<Vector> = Vec::new();
        for i in (0..n).filter(|&i| !self.pinned(i)) {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            let mut w = axpy(&e, -dot(&e, &nrm), &nrm);
            for t in &tangents {
                w = axpy(&w, -dot(&w, t), t);
            }
            let nw = norm(&w);
            if nw > 1e-8 && tangents.len() + 1 < free {
                tangents.push(scale(&w, 1.0 / nw));
            }
        }
        if tangents.is_empty() {
            return Ok(None);
        }
        let eta = 1e-3 * self.diam;
        let bend = |w: &[f64]| -> Result<f64> {
            let a = outside_margin(self.body, &axpy(&b, eta, w), 0.0)?;
            let c = outside_margin(self.body, &axpy(&b, -eta, w), 0.0)?;
            Ok(0.5 * (a + c))
        };
        let m = tangents.len();
        let mut s = Matrix::zeros(m, m);
        let diag: Vec<f64> = tangents.iter().map(|t| bend(t)).collect::<Result<_>>()?;
        for i in 0..m {
            s.data[i * m + i] = diag[i];
            for j in 0..i {
                let w = scale(&crate::linalg::add(&tangents[i], &tangents[j]), std::f64::consts::FRAC_1_SQRT_2);
                let off = bend(&w)? - 0.5 * (diag[i] + diag[j]);
                s.data[i * m + j] = off;
                s.data[j * m + i] = off;
            }
        }
        let (vals, vecs) = sym_eigen(&s);
        let k = (0..m).min_by(|&a, &c| vals[a].abs().total_cmp(&vals[c].abs())).expect("tangent space");
        let dir = tangents.iter().zip(&vecs[k]).fold(vec![0.0; n], |acc, (t, c)| axpy(&acc, *c, t));
        if norm(&dir) == 0.0 {
            return Ok(None);
        }
        let ext = self.body.line_extent(&b, &dir, self.cfg.extent_cap, self.cfg.membership_tol)?;
        Ok(Some((axpy(&b, ext.lo, &dir), axpy(&b, ext.hi, &dir))))
    }

    fn sample_pair(&self, index: usize, rng: &mut ChaCha8Rng) -> Result<Option<(Vector, Vector)>> {
        Ok(match index % 3 {
            0 => Some((self.uniform_point(rng)?, self.uniform_point(rng)?)),
            1 => Some((self.extreme_point(rng)?, self.extreme_point(rng)?)),
            _ => self.boundary_chord(rng)?,
        })
    }

    /// Shrink `δ` by 4 per level while some approach point fails robustly.
    /// Returns the chosen approach points when the failure persisted for
    /// `scales` levels, then faded below the margin without recovering, and
    /// the margins decayed on the way.
    fn ladder(&self, x: &[f64], xp: &[f64], rng: &mut ChaCha8Rng) -> Result<Option<Vec<Vector>>> {
        let tol = self.cfg.membership_tol;
        let mu = self.cfg.witness_margin;
        let p = midpoint(x, xp);
        let v = sub(xp, x);
        let eps = 0.5f64.powi(self.cfg.eps_depth as i32);
        let mut delta = norm(&v);
        let mut prev = f64::INFINITY;
        let mut chosen: Vec<Vector> = Vec::new();
        for _ in 0..MAX_LEVELS {
            let mut all_pass = true;
            let mut best: Option<(Vector, f64, f64)> = None;
            for _ in 0..SAMPLES_PER_LEVEL {
                let u = unit_vector(rng, p.len());
                let Some(q) = self.approach(&p, delta, &u)? else { continue };
                if !self.body.contains(&q, tol) {
                    all_pass = false;
                    continue;
                }
                let a = quick_margin(self.body, &axpy(&q, eps, &v), tol, mu)?;
                let b = quick_margin(self.body, &axpy(&q, -eps, &v), tol, mu)?;
                if a.is_none() && b.is_none() {
                    continue;
                }
                all_pass = false;
                let m = a.unwrap_or(0.0).max(b.unwrap_or(0.0));
                let d = dist(&q, &p);
                if m >= mu && d < prev && best.as_ref().is_none_or(|bb| m > bb.2) {
                    best = Some((q, d, m));
                }
            }
            if all_pass {
                return Ok(None);
            }
            match best {
                Some((q, d, _)) => {
                    prev = d;
                    chosen.push(q);
                }
                None => break,
            }
            delta /= 4.0;
        }
        if chosen.len() < self.scales || !self.decays_conically(&p, &v, rng)? {
            return Ok(None);
        }
        Ok(Some(chosen))
    }

    /// Nearest point of the body to `p + δu`; `None` when the projection
    /// does not converge, so one hard sample does not abort the search.
    fn approach(&self, p: &[f64], delta: f64, u: &[f64]) -> Result<Option<Vector>> {
        match self.body.nearest(&axpy(p, delta, u)) {
            Ok(q) => Ok(Some(q)),
            Err(Error::NonConvergence(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// Largest margin of `q ± εv` over approach points at distance `δ`, or
    /// `None` when every approach point passes.
    fn level_margin(&self, p: &[f64], v: &[f64], delta: f64, eps: f64, rng: &mut ChaCha8Rng) -> Result<Option<f64>> {
        let tol = self.cfg.membership_tol;
        let mut best: Option<f64> = None;
        for _ in 0..CONFIRM_SAMPLES {
            let u = unit_vector(rng, p.len());
            let Some(q) = self.approach(p, delta, &u)? else { continue };
            let a = outside_margin(self.body, &axpy(&q, eps, v), tol)?;
            let b = outside_margin(self.body, &axpy(&q, -eps, v), tol)?;
            if a.max(b) > 0.0 {
                best = Some(best.unwrap_or(0.0).max(a.max(b)));
            }
        }
        Ok(best)
    }

    /// Failures at a cone-like boundary shrink like `δ²`, so about 16 times
    /// per level; near a curved boundary just inside the midpoint they shrink
    /// like `δ`, and near a facet missing the midpoint they do not shrink.
    fn decays_conically(&self, p: &[f64], v: &[f64], rng: &mut ChaCha8Rng) -> Result<bool> {
        let nv = norm(v);
        let eps = 0.5f64.powi(CONFIRM_EPS_EXP);
        let mut m = Vec::new();
        for j in 1..=CONFIRM_LEVELS {
            match self.level_margin(p, v, nv * 0.25f64.powi(j), eps, rng)? {
                Some(x) => m.push(x),
                None => return Ok(false),
            }
        }
        Ok(m.windows(2).all(|w| w[1] <= CONFIRM_STEP * w[0]))
    }
}

/// Seeded search for a falsifying witness over `pairs` sampled pairs. Pair
/// `i` draws from its own stream of the seed, so results do not depend on
/// evaluation order.
pub fn lnc_search(body: &Body, pairs: usize, scales: usize, seed: u64, cfg: &ToolConfig) -> Result<LncOutcome> {
    if !body.is_bounded() {
        return Err(Error::InvalidInput("unbounded body: supply a search box".into()));
    }
    if scales == 0 {
        return Err(Error::InvalidInput("scales must be positive".into()));
    }
    let (lo, hi) = body.bounding_box();
    let search = Search { body, cfg, anchor: body.anchor(), diam: dist(&lo, &hi).max(1e-12), lo, hi, scales };
    let mut skipped = 0;
    for i in 0..pairs {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let Some((x, xp)) = search.sample_pair(i, &mut rng)? else {
            skipped += 1;
            continue;
        };
        if dist(&x, &xp) < 1e-3 * search.diam {
            skipped += 1;
            continue;
        }
        if let Some(approach) = search.ladder(&x, &xp, &mut rng)? {
            let mut w = LncWitness::measure(body, &x, &xp, approach, cfg)?;
            w.seed = Some(seed);
            w.pair_index = Some(i);
            if w.verify(body).is_ok() {
                return Ok(LncOutcome::Witness(Box::new(w)));
            }
        }
    }
    Ok(LncOutcome::NoWitnessFound { pairs_tested: pairs - skipped, pairs_skipped: skipped, seed })
}

/// Search inside the intersection of the body with an axis box.
pub fn lnc_search_in_box(
    body: &Body,
    lo: &[f64],
    hi: &[f64],
    pairs: usize,
    scales: usize,
    seed: u64,
    cfg: &ToolConfig,
) -> Result<LncOutcome> {
    let n = body.dim();
    crate::linalg::check_dim(n, lo.len())?;
    crate::linalg::check_dim(n, hi.len())?;
    let boxed = Body::intersection(body.clone(), Body::HPolytope(crate::bodies::HPolytope::boxed(lo, hi)?))?;
    lnc_search(&boxed, pairs, scales, seed, cfg)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OpennessVerdict {
    OpenAt,
    NotOpenAt,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbedTarget {
    pub target: Vector,
    pub offset: f64,
    pub fiber_distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecadeSummary {
    pub rho: f64,
    pub targets_within: usize,
    pub max_fiber_distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OpennessReport {
    pub base: Vector,
    pub image_of_base: Vector,
    pub radius: f64,
    pub seed: u64,
    pub targets: Vec<ProbedTarget>,
    pub decades: Vec<DecadeSummary>,
    pub verdict: OpennessVerdict,
    pub failing_target: Option<Vector>,
}

fn frobenius(m: &Matrix) -> f64 {
    m.data.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Probe whether `T|_Q` is open at `base`: targets near `T(base)` come from
/// body points near its fiber, and each is scored by the distance from
/// `base` to its own fiber. The verdict is NOT_OPEN_AT when, for each of the
/// radii `ρ ∈ {1e-1, 1e-2, 1e-3}·diam`, some target within `ρ` has fiber
/// distance at least `r`.
pub fn openness_probe(
    body: &Body,
    map: &LinearMap,
    base: &[f64],
    r: f64,
    targets: usize,
    seed: u64,
    cfg: &ToolConfig,
) -> Result<OpennessReport> {
    crate::linalg::check_dim(body.dim(), base.len())?;
    crate::linalg::check_dim(map.cols(), base.len())?;
    if !(r > 0.0) {
        return Err(Error::InvalidInput("radius must be positive".into()));
    }
    if !body.contains(base, cfg.membership_tol) {
        return Err(Error::NotInBody);
    }
    let y0 = map.apply(base)?;
    let diam = diameter_estimate(body);
    let tnorm = frobenius(map.matrix()).max(1e-300);
    let rhos: Vec<f64> = [1e-1, 1e-2, 1e-3].iter().map(|f| f * diam).collect();
    let per = (targets / rhos.len()).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut probed = Vec::new();
    for &rho in &rhos {
        for _ in 0..per {
            let mut w = base.to_vec();
            if !map.kernel().is_empty() {
                let c = unit_vector(&mut rng, map.kernel().len());
                let dir = map.kernel().iter().zip(&c).fold(vec![0.0; base.len()], |acc, (k, ci)| axpy(&acc, *ci, k));
                let ext = body.line_extent(base, &dir, cfg.extent_cap, cfg.membership_tol)?;
                w = axpy(base, ext.lo + rng.gen::<f64>() * (ext.hi - ext.lo), &dir);
            }
            let u = unit_vector(&mut rng, base.len());
            let z = body.nearest(&axpy(&w, rng.gen::<f64>() * rho / tnorm, &u))?;
            let y = map.apply(&z)?;
            let offset = dist(&y, &y0);
            if offset > rho {
                continue;
            }
            let g = make_fiber(body, map, &y, cfg).and_then(|f| min_norm_over_fiber(&f, base));
            if let Ok(g) = g {
                probed.push(ProbedTarget { target: y, offset, fiber_distance: dist(&g.point, base) });
            }
        }
    }
    let mut decades = Vec::new();
    let mut failing = None;
    let mut not_open = true;
    for &rho in &rhos {
        let within: Vec<&ProbedTarget> = probed.iter().filter(|t| t.offset <= rho).collect();
        let top = within.iter().copied().max_by(|a, b| a.fiber_distance.total_cmp(&b.fiber_distance));
        let max_d = top.map_or(0.0, |t| t.fiber_distance);
        if max_d < r {
            not_open = false;
        }
        failing = top.map(|t| t.target.clone());
        decades.push(DecadeSummary { rho, targets_within: within.len(), max_fiber_distance: max_d });
    }
    Ok(OpennessReport {
        base: base.to_vec(),
        image_of_base: y0,
        radius: r,
        seed,
        targets: probed,
        decades,
        verdict: if not_open { OpennessVerdict::NotOpenAt } else { OpennessVerdict::OpenAt },
        failing_target: if not_open { failing } else { None },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SearchVerdict {
    NoWitness,
    Witness,
    Unsupported,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Consistency {
    /// No witness, every probe open, no witness on the image.
    Clean,
    /// A witness together with a probe that is not open.
    Falsification,
    /// A witness, but no non-open point was located.
    Inconclusive,
    /// A clean search contradicted by a probe or by the image search.
    Contradiction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeMap {
    /// The map under test.
    Given,
    /// The quotient along the witness direction.
    WitnessQuotient,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeSummary {
    pub map: ProbeMap,
    pub base: Vector,
    pub verdict: OpennessVerdict,
    pub max_fiber_distance: Vec<f64>,
    pub failing_target: Option<Vector>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub seed: u64,
    pub search: SearchVerdict,
    pub witness: Option<LncWitness>,
    pub probes: Vec<ProbeSummary>,
    pub image_search: SearchVerdict,
    pub consistency: Consistency,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrosscheckOptions {
    pub pairs: usize,
    pub scales: usize,
    pub targets: usize,
    /// Extra probe bases drawn as support points of random directions.
    pub bases: usize,
    pub seed: u64,
}

impl CrosscheckOptions {
    pub fn from_config(cfg: &ToolConfig) -> CrosscheckOptions {
        CrosscheckOptions { pairs: cfg.pairs, scales: cfg.scales, targets: 48, bases: 4, seed: cfg.seed }
    }
}

fn summarize(map: ProbeMap, rep: OpennessReport) -> ProbeSummary {
    ProbeSummary {
        map,
        base: rep.base,
        verdict: rep.verdict,
        max_fiber_distance: rep.decades.iter().map(|d| d.max_fiber_distance).collect(),
        failing_target: rep.failing_target,
    }
}

/// Run the witness search on the body (or on `search_body`, a sub-body
/// whose witnesses are re-verified against the body), openness probes at
/// sampled points, and the witness search on the exact image `T(Q)`; then
/// judge whether the three verdicts fit together.
pub fn lnc_verdict_crosscheck(
    body: &Body,
    map: &LinearMap,
    search_body: Option<&Body>,
    opts: &CrosscheckOptions,
    cfg: &ToolConfig,
) -> Result<CrosscheckReport> {
    crate::linalg::check_dim(map.cols(), body.dim())?;
    if !body.is_bounded() {
        return Err(Error::InvalidInput("crosscheck needs a bounded body".into()));
    }
    let diam = diameter_estimate(body);
    let r = 0.25 * diam;
    let outcome = lnc_search(search_body.unwrap_or(body), opts.pairs, opts.scales, opts.seed, cfg)?;
    let witness = match outcome {
        LncOutcome::Witness(w) if w.verify(body).is_ok() => Some(*w),
        _ => None,
    };

    let mut bases = vec![body.anchor()];
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(u64::MAX);
    for _ in 0..opts.bases {
        let d = unit_vector(&mut rng, body.dim());
        let x = match body.support(&d) {
            Some((_, x)) => x,
            None => body.nearest(&axpy(&body.anchor(), 2.0 * diam, &d))?,
        };
        bases.push(x);
    }
    if let Some(w) = &witness {
        bases.push(w.x_prime.clone());
        bases.push(w.x.clone());
    }
    let mut probes = Vec::new();
    for (i, b) in bases.iter().enumerate() {
        let rep = openness_probe(body, map, b, r, opts.targets, opts.seed.wrapping_add(i as u64), cfg)?;
        probes.push(summarize(ProbeMap::Given, rep));
    }
    if let Some(w) = &witness {
        let tw = LinearMap::quotient_along(&w.direction)?;
        for (i, b) in [&w.x_prime, &w.x].into_iter().enumerate() {
            let rep = openness_probe(body, &tw, b, r, opts.targets, opts.seed.wrapping_add(1000 + i as u64), cfg)?;
            probes.push(summarize(ProbeMap::WitnessQuotient, rep));
        }
    }

    let image_search = match Body::affine_image(map.matrix().clone(), vec![0.0; map.rows()], body.clone()) {
        Ok(img) => match lnc_search(&img, opts.pairs, opts.scales, opts.seed, cfg)? {
            LncOutcome::Witness(_) => SearchVerdict::Witness,
            LncOutcome::NoWitnessFound { .. } => SearchVerdict::NoWitness,
        },
        Err(Error::UnsupportedImage) => SearchVerdict::Unsupported,
        Err(e) => return Err(e),
    };

    let not_open_given = probes.iter().any(|p| p.map == ProbeMap::Given && p.verdict == OpennessVerdict::NotOpenAt);
    let not_open_any = probes.iter().any(|p| p.verdict == OpennessVerdict::NotOpenAt);
    let (consistency, note) = match &witness {
        None if not_open_given => (Consistency::Contradiction, "clean search but a probe is NOT_OPEN_AT"),
        None if image_search == SearchVerdict::Witness => {
            (Consistency::Contradiction, "clean search but the image has a witness")
        }
        None => (Consistency::Clean, "no witness, probes open, image clean or unsupported"),
        Some(_) if not_open_any => (Consistency::Falsification, "witness and a non-open point"),
        Some(_) => (Consistency::Inconclusive, "witness but no non-open point located"),
    };
    Ok(CrosscheckReport {
        seed: opts.seed,
        search: if witness.is_some() { SearchVerdict::Witness } else { SearchVerdict::NoWitness },
        witness,
        probes,
        image_search,
        consistency,
        note: note.into(),
    })
}
