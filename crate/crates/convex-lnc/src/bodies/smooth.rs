use crate::error::{Error, Result};
use crate::linalg::{add, dot, norm, scale, sub, sym_eigen, Matrix, Vector};
use crate::solvers::scalar::{bisect, golden_min};

/// `{x : (x−c)ᵀM(x−c) ≤ 1}` with `M` symmetric positive definite. Balls
/// keep their radius so that serialization stays exact.
#[derive(Clone, Debug)]
pub struct Ellipsoid {
    center: Vector,
    shape: Matrix,
    radius: Option<f64>,
    eigvals: Vec<f64>,
    eigvecs: Vec<Vector>,
}

impl Ellipsoid {
    pub fn new(center: Vector, shape: Matrix) -> Result<Self> {
        let n = center.len();
        if n == 0 {
            return Err(Error::InvalidInput("dimension must be at least one".into()));
        }
        if shape.rows != n || shape.cols != n {
            return Err(Error::DimensionMismatch { expected: n, got: shape.rows });
        }
        if !crate::linalg::is_finite(&center) || !shape.is_finite() {
            return Err(Error::InvalidInput("ellipsoid data must be finite".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if (shape[(i, j)] - shape[(j, i)]).abs() > 1e-12 {
                    return Err(Error::InvalidInput("shape matrix is not symmetric".into()));
                }
            }
        }
        let (eigvals, eigvecs) = sym_eigen(&shape);
        if eigvals.iter().any(|&l| !(l > 0.0)) {
            return Err(Error::InvalidInput("shape matrix is not positive definite".into()));
        }
        Ok(Ellipsoid { center, shape, radius: None, eigvals, eigvecs })
    }

    pub fn ball(center: Vector, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidInput("radius must be positive".into()));
        }
        let n = center.len();
        let mut m = Matrix::identity(n);
        for i in 0..n {
            m[(i, i)] = 1.0 / (radius * radius);
        }
        let mut e = Ellipsoid::new(center, m)?;
        e.radius = Some(radius);
        Ok(e)
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn shape(&self) -> &Matrix {
        &self.shape
    }

    pub fn radius(&self) -> Option<f64> {
        self.radius
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// `‖x − c‖_M`
    pub fn gauge(&self, x: &[f64]) -> f64 {
        let d = sub(x, &self.center);
        dot(&d, &self.shape.mul_vec(&d)).max(0.0).sqrt()
    }

    pub fn violation(&self, x: &[f64]) -> f64 {
        if let Some(r) = self.radius {
            return crate::linalg::dist(x, &self.center) - r;
        }
        let lmax = self.eigvals.iter().cloned().fold(0.0, f64::max);
        (self.gauge(x) - 1.0) / lmax.sqrt()
    }

    pub fn nearest(&self, p: &[f64]) -> Result<Vector> {
        if let Some(r) = self.radius {
            let d = sub(p, &self.center);
            let nd = norm(&d);
            if nd <= r {
                return Ok(p.to_vec());
            }
            return Ok(add(&self.center, &scale(&d, r / nd)));
        }
        if self.gauge(p) <= 1.0 {
            return Ok(p.to_vec());
        }
        // eigen-coordinates: x_i = z_i / (1 + μ λ_i) with Σ λ_i x_i² = 1
        let d = sub(p, &self.center);
        let z: Vec<f64> = self.eigvecs.iter().map(|u| dot(u, &d)).collect();
        let lam = &self.eigvals;
        let excess = |mu: f64| -> f64 {
            z.iter().zip(lam).map(|(zi, li)| li * (zi / (1.0 + mu * li)).powi(2)).sum::<f64>() - 1.0
        };
        let mut hi = 1.0;
        while excess(hi) > 0.0 {
            hi *= 2.0;
            if !hi.is_finite() {
                return Err(Error::NonConvergence("ellipsoid projection".into()));
            }
        }
        let mu = bisect(|m| excess(m) <= 0.0, hi, 0.0);
        let mut x = self.center.clone();
        for ((zi, li), u) in z.iter().zip(lam).zip(&self.eigvecs) {
            x = crate::linalg::axpy(&x, zi / (1.0 + mu * li), u);
        }
        Ok(x)
    }

    pub fn support(&self, d: &[f64]) -> (f64, Vector) {
        // M⁻¹d through the eigenbasis
        let mut w = vec![0.0; self.dim()];
        for (l, u) in self.eigvals.iter().zip(&self.eigvecs) {
            w = crate::linalg::axpy(&w, dot(u, d) / l, u);
        }
        let s = dot(d, &w).max(0.0).sqrt();
        if s == 0.0 {
            return (dot(d, &self.center), self.center.clone());
        }
        let x = crate::linalg::axpy(&self.center, 1.0 / s, &w);
        (dot(d, &self.center) + s, x)
    }

    pub fn bounding_box(&self) -> (Vector, Vector) {
        let n = self.dim();
        let mut lo = vec![0.0; n];
        let mut hi = vec![0.0; n];
        for i in 0..n {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            let (h, _) = self.support(&e);
            hi[i] = h;
            lo[i] = 2.0 * self.center[i] - h;
        }
        (lo, hi)
    }
}

/// Symmetric 2×2 matrices `[[a,b],[b,c]]` with `0 ⪯ A ⪯ I`, as `(a,b,c)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct PsdCap2;

const PSD_DYKSTRA_ITERS: usize = 10_000;

impl PsdCap2 {
    pub fn eigenvalues(x: &[f64]) -> (f64, f64) {
        let m = 0.5 * (x[0] + x[2]);
        let r = (0.25 * (x[0] - x[2]).powi(2) + x[1] * x[1]).sqrt();
        (m - r, m + r)
    }

    pub fn violation(&self, x: &[f64]) -> f64 {
        let (lo, hi) = Self::eigenvalues(x);
        (-lo).max(hi - 1.0)
    }

    pub fn centre() -> Vector {
        vec![0.5, 0.0, 0.5]
    }

    pub fn nearest(&self, p: &[f64]) -> Result<Vector> {
        if self.violation(p) <= 0.0 {
            return Ok(p.to_vec());
        }
        let e = [1.0, 0.0, 1.0];
        let upper = |q: &[f64]| sub(&e, &project_psd_cone(&sub(&e, q)));
        let mut x = p.to_vec();
        let mut pinc = vec![0.0; 3];
        let mut qinc = vec![0.0; 3];
        for _ in 0..PSD_DYKSTRA_ITERS {
            let a = project_psd_cone(&add(&x, &pinc));
            pinc = sub(&add(&x, &pinc), &a);
            let nx = upper(&add(&a, &qinc));
            qinc = sub(&add(&a, &qinc), &nx);
            let step = crate::linalg::dist(&nx, &x);
            let gap = crate::linalg::dist(&nx, &a);
            x = nx;
            if step < 1e-13 && gap < 1e-13 {
                break;
            }
        }
        Ok(super::pull_inside(&x, self.violation(&x), &Self::centre(), -0.5))
    }

    pub fn support(&self, d: &[f64]) -> (f64, Vector) {
        // maximize tr(D'X) over 0 ⪯ X ⪯ I: projector onto the positive part
        let dm = Matrix::from_row_major(2, 2, vec![d[0], 0.5 * d[1], 0.5 * d[1], d[2]]).expect("2x2");
        let (vals, vecs) = sym_eigen(&dm);
        let mut x = [0.0; 3];
        let mut value = 0.0;
        for (l, u) in vals.iter().zip(&vecs) {
            if *l > 0.0 {
                x[0] += u[0] * u[0];
                x[1] += u[0] * u[1];
                x[2] += u[1] * u[1];
                value += l;
            }
        }
        (value, x.to_vec())
    }
}

/// Euclidean projection of `(a,b,c)` onto `{a ≥ 0, c ≥ 0, ac ≥ b²}`.
pub fn project_psd_cone(p: &[f64]) -> Vector {
    let (pa, pb, pc) = (p[0], p[1], p[2]);
    if pa >= 0.0 && pc >= 0.0 && pa * pc >= pb * pb {
        return p.to_vec();
    }
    // polar cone {a ≤ 0, c ≤ 0, 4ac ≥ b²}
    if pa <= 0.0 && pc <= 0.0 && 4.0 * pa * pc >= pb * pb {
        return vec![0.0; 3];
    }
    // boundary rays d(φ) = (1+cos φ, sin φ, 1−cos φ); maximize ⟨p,d⟩/‖d‖
    let score = |phi: f64| {
        let (s, c) = phi.sin_cos();
        (pa * (1.0 + c) + pb * s + pc * (1.0 - c)) / (3.0 + c * c).sqrt()
    };
    let slope = |phi: f64| {
        let (s, c) = phi.sin_cos();
        let n = pa * (1.0 + c) + pb * s + pc * (1.0 - c);
        let dn = -pa * s + pb * c + pc * s;
        dn * (3.0 + c * c) + n * c * s
    };
    const SAMPLES: usize = 720;
    let h = std::f64::consts::TAU / SAMPLES as f64;
    let best = (0..SAMPLES)
        .map(|k| k as f64 * h)
        .max_by(|a, b| score(*a).total_cmp(&score(*b)))
        .expect("samples");
    let (mut lo, mut hi) = (best - h, best + h);
    let phi = if slope(lo) > 0.0 && slope(hi) < 0.0 {
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if slope(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    } else {
        golden_min(|t| -score(t), lo, hi).0
    };
    let (s, c) = phi.sin_cos();
    let d = [1.0 + c, s, 1.0 - c];
    let t = (pa * d[0] + pb * d[1] + pc * d[2]).max(0.0) / (3.0 + c * c);
    vec![t * d[0], t * d[1], t * d[2]]
}

/// `{(x,y,z) : x,y ≥ 0, x+y ≤ 1, z ≥ (1−y)³/x}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Epigraph19;

impl Epigraph19 {
    /// `(1−y)³/x` with `x` floored at the smallest positive scale so the
    /// value stays finite.
    pub fn floor_fn(x: f64, y: f64) -> f64 {
        (1.0 - y).max(0.0).powi(3) / x.max(1e-300)
    }

    pub fn violation(&self, p: &[f64]) -> f64 {
        let (x, y, z) = (p[0], p[1], p[2]);
        (-x).max(-y).max(x + y - 1.0).max(Self::floor_fn(x, y) - z)
    }

    pub fn nearest(&self, p: &[f64]) -> Result<Vector> {
        if self.violation(p) <= 0.0 {
            return Ok(p.to_vec());
        }
        let (px, py, pz) = (p[0], p[1], p[2]);
        let cost = |x: f64, y: f64| {
            let lift = (Self::floor_fn(x, y) - pz).max(0.0);
            (x - px).powi(2) + (y - py).powi(2) + lift * lift
        };
        let inner = |x: f64| golden_min(|y| cost(x, y), 0.0, 1.0 - x);
        let (x, _) = golden_min(|x| inner(x).1, 0.0, 1.0);
        let (y, _) = inner(x);
        let z = pz.max(Self::floor_fn(x, y));
        Ok(vec![x, y, z])
    }

    pub fn bounding_box(&self) -> (Vector, Vector) {
        (vec![0.0, 0.0, 0.0], vec![1.0, 1.0, f64::INFINITY])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_projection_and_support() {
        let b = Ellipsoid::ball(vec![0.0, 0.0], 1.0).unwrap();
        assert_eq!(b.nearest(&[2.0, 0.0]).unwrap(), vec![1.0, 0.0]);
        let (h, x) = b.support(&[0.0, 2.0]);
        assert!((h - 2.0).abs() < 1e-15 && (x[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn ellipsoid_projection_matches_brute_force() {
        let m = Matrix::from_rows(&[vec![4.0, 1.0], vec![1.0, 1.0]]).unwrap();
        let e = Ellipsoid::new(vec![0.5, -0.5], m).unwrap();
        let p = [2.0, 1.5];
        let q = e.nearest(&p).unwrap();
        assert!((e.gauge(&q) - 1.0).abs() < 1e-9);
        let mut best = f64::INFINITY;
        for k in 0..200_000 {
            let t = k as f64 * std::f64::consts::TAU / 200_000.0;
            // boundary point c + L⁻ᵀ(cos, sin) via the quadratic form along the ray
            let u = [t.cos(), t.sin()];
            let s = 1.0 / (4.0 * u[0] * u[0] + 2.0 * u[0] * u[1] + u[1] * u[1]).sqrt();
            let z = [0.5 + s * u[0], -0.5 + s * u[1]];
            best = best.min(crate::linalg::dist(&z, &p));
        }
        assert!((crate::linalg::dist(&q, &p) - best).abs() < 1e-8);
    }

    #[test]
    fn psd_cap_membership_examples() {
        let psd = PsdCap2;
        assert!(psd.violation(&[0.0, 0.5, 0.5]) > 1e-9);
        assert!(psd.violation(&[1.0, 0.0, 0.0]) <= 0.0);
        assert!(psd.violation(&[0.5, 0.5, 0.5]) <= 1e-15);
    }

    #[test]
    fn psd_cone_projection_brute_force() {
        for p in [[0.0, 0.5, 0.5], [-1.0, 0.3, 0.5], [1.0, 2.0, 0.1], [-1.0, 1.0, -1.0]] {
            let q = project_psd_cone(&p);
            assert!(q[0] >= -1e-12 && q[2] >= -1e-12 && q[0] * q[2] - q[1] * q[1] >= -1e-12);
            let dq = crate::linalg::dist(&q, &p);
            let mut best = norm(&p);
            for i in 0..2000 {
                let phi = i as f64 * std::f64::consts::TAU / 2000.0;
                let d = [1.0 + phi.cos(), phi.sin(), 1.0 - phi.cos()];
                let t = dot(&p, &d).max(0.0) / dot(&d, &d);
                best = best.min(crate::linalg::dist(&scale(&d, t), &p));
            }
            assert!(dq <= best + 1e-12);
        }
    }

    #[test]
    fn psd_nearest_is_inside() {
        let q = PsdCap2.nearest(&[0.0, 0.5, 0.5]).unwrap();
        assert!(PsdCap2.violation(&q) <= 1e-12);
        let q = PsdCap2.nearest(&[2.0, 0.0, 2.0]).unwrap();
        assert!(crate::linalg::dist(&q, &[1.0, 0.0, 1.0]) < 1e-9);
    }

    #[test]
    fn epigraph_membership() {
        let e = Epigraph19;
        assert!(e.violation(&[1.0, 0.0, 1.0]) <= 0.0);
        assert!(e.violation(&[0.5, 0.0, 1.9]) > 0.0);
        assert!(e.violation(&[0.0, 1.0, 0.0]) <= 0.0);
        assert!(e.violation(&[0.0, 0.5, 5.0]) > 0.0);
        let q = e.nearest(&[0.5, 0.0, 0.0]).unwrap();
        assert!(e.violation(&q) <= 1e-12);
    }
}
