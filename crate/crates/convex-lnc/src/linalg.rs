//! Small dense linear algebra: vector helpers, a row-major matrix and linear
//! maps carrying an orthonormal kernel / row-space factorization.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vector = Vec<f64>;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn add(a: &[f64], b: &[f64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vector {
    a.iter().map(|x| x * s).collect()
}

/// `a + s * b`
pub fn axpy(a: &[f64], s: f64, b: &[f64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn midpoint(a: &[f64], b: &[f64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| 0.5 * (x + y)).collect()
}

pub fn is_finite(a: &[f64]) -> bool {
    a.iter().all(|x| x.is_finite())
}

pub fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::InvalidInput("matrix needs at least one row".into()));
        }
        let c = rows[0].len();
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            check_dim(c, row.len())?;
            data.extend_from_slice(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        check_dim(rows * cols, data.len())?;
        Ok(Matrix { rows, cols, data })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<f64>], nrows: usize) -> Self {
        let mut m = Matrix::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..nrows {
                m[(i, j)] = c[i];
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vector {
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    /// `selfᵀ x`
    pub fn tr_mul_vec(&self, x: &[f64]) -> Vector {
        let mut out = vec![0.0; self.cols];
        for i in 0..self.rows {
            let xi = x[i];
            if xi != 0.0 {
                for (o, a) in out.iter_mut().zip(self.row(i)) {
                    *o += a * xi;
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        is_finite(&self.data)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Householder QR with column pivoting of an `m × n` matrix.
///
/// Returns the full orthogonal factor `Q` (`m × m`, columns as vectors), the
/// diagonal of `R` in pivot order and the numerical rank.
pub fn qr_col_pivot(a: &Matrix) -> (Vec<Vector>, Vec<f64>, usize) {
    let m = a.rows;
    let n = a.cols;
    let mut r = a.clone();
    let mut reflectors: Vec<(usize, Vector)> = Vec::new();
    let mut col_norms: Vec<f64> = (0..n)
        .map(|j| (0..m).map(|i| r[(i, j)] * r[(i, j)]).sum())
        .collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut diag = Vec::new();
    let steps = m.min(n);
    for k in 0..steps {
        let (p, _) = col_norms
            .iter()
            .enumerate()
            .skip(k)
            .fold((k, -1.0), |best, (j, &v)| if v > best.1 { (j, v) } else { best });
        if p != k {
            for i in 0..m {
                let tmp = r[(i, k)];
                r[(i, k)] = r[(i, p)];
                r[(i, p)] = tmp;
            }
            col_norms.swap(k, p);
            perm.swap(k, p);
        }
        let alpha_norm: f64 = (k..m).map(|i| r[(i, k)] * r[(i, k)]).sum::<f64>().sqrt();
        if alpha_norm == 0.0 {
            diag.push(0.0);
            continue;
        }
        let alpha = if r[(k, k)] > 0.0 { -alpha_norm } else { alpha_norm };
        let mut v: Vector = (k..m).map(|i| r[(i, k)]).collect();
        v[0] -= alpha;
        let vn = norm(&v);
        if vn > 0.0 {
            for x in v.iter_mut() {
                *x /= vn;
            }
            for j in k..n {
                let s: f64 = (k..m).map(|i| v[i - k] * r[(i, j)]).sum();
                for i in k..m {
                    r[(i, j)] -= 2.0 * v[i - k] * s;
                }
            }
            reflectors.push((k, v));
        }
        diag.push(r[(k, k)]);
        for j in (k + 1)..n {
            col_norms[j] = ((k + 1)..m).map(|i| r[(i, j)] * r[(i, j)]).sum();
        }
    }
    let largest = diag.first().map_or(0.0, |d| d.abs());
    let rank = if largest == 0.0 {
        0
    } else {
        diag.iter().take_while(|d| d.abs() > 1e-10 * largest).count()
    };
    // Q = H_0 H_1 ... applied to the identity
    let mut q: Vec<Vector> = (0..m)
        .map(|j| {
            let mut e = vec![0.0; m];
            e[j] = 1.0;
            e
        })
        .collect();
    for col in q.iter_mut() {
        for (k, v) in reflectors.iter().rev() {
            let s: f64 = (*k..m).map(|i| v[i - k] * col[i]).sum();
            for i in *k..m {
                col[i] -= 2.0 * v[i - k] * s;
            }
        }
    }
    (q, diag, rank)
}

/// Solve a square system by Gaussian elimination with partial pivoting.
pub fn solve(a: &Matrix, b: &[f64]) -> Option<Vector> {
    let n = a.rows;
    assert_eq!(n, a.cols);
    let mut m = a.clone();
    let mut x = b.to_vec();
    let scale = m.max_abs().max(1e-300);
    for k in 0..n {
        let (p, pv) = (k..n)
            .map(|i| (i, m[(i, k)].abs()))
            .fold((k, -1.0), |best, c| if c.1 > best.1 { c } else { best });
        if pv <= 1e-14 * scale {
            return None;
        }
        if p != k {
            for j in 0..n {
                let t = m[(k, j)];
                m[(k, j)] = m[(p, j)];
                m[(p, j)] = t;
            }
            x.swap(k, p);
        }
        for i in (k + 1)..n {
            let f = m[(i, k)] / m[(k, k)];
            if f != 0.0 {
                for j in k..n {
                    m[(i, j)] -= f * m[(k, j)];
                }
                x[i] -= f * x[k];
            }
        }
    }
    for k in (0..n).rev() {
        let s: f64 = ((k + 1)..n).map(|j| m[(k, j)] * x[j]).sum();
        x[k] = (x[k] - s) / m[(k, k)];
    }
    Some(x)
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Returns eigenvalues and the matching unit eigenvectors.
pub fn sym_eigen(a: &Matrix) -> (Vec<f64>, Vec<Vector>) {
    let n = a.rows;
    let mut m = a.clone();
    let mut v = Matrix::identity(n);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)] * m[(i, j)])
            .sum();
        if off <= 1e-30 * (1.0 + m.max_abs() * m.max_abs()) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = m[(k, p)];
                    let akq = m[(k, q)];
                    m[(k, p)] = c * akp - s * akq;
                    m[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = m[(p, k)];
                    let aqk = m[(q, k)];
                    m[(p, k)] = c * apk - s * aqk;
                    m[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let vals = (0..n).map(|i| m[(i, i)]).collect();
    let vecs = (0..n).map(|j| v.col(j)).collect();
    (vals, vecs)
}

/// A linear map `R^n → R^m` together with orthonormal bases of its kernel
/// and row space.
#[derive(Clone, Debug)]
pub struct LinearMap {
    matrix: Matrix,
    kernel: Vec<Vector>,
    rowspace: Vec<Vector>,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_finite() {
            return Err(Error::InvalidInput("map entries must be finite".into()));
        }
        let n = matrix.cols;
        let (q, _diag, rank) = qr_col_pivot(&matrix.transpose());
        let rowspace = q[..rank].to_vec();
        let kernel = q[rank..n].to_vec();
        Ok(LinearMap { matrix, kernel, rowspace })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        LinearMap::new(Matrix::from_rows(rows)?)
    }

    /// Orthogonal projection onto the complement of `v`, written in an
    /// orthonormal basis of `v^⊥`. Coordinate axes drop that coordinate.
    pub fn quotient_along(v: &[f64]) -> Result<Self> {
        let n = v.len();
        let nv = norm(v);
        if nv == 0.0 || !nv.is_finite() {
            return Err(Error::ZeroDirection);
        }
        let nz: Vec<usize> = (0..n).filter(|&i| v[i] != 0.0).collect();
        let rows: Vec<Vector> = if nz.len() == 1 {
            (0..n)
                .filter(|&i| i != nz[0])
                .map(|i| {
                    let mut e = vec![0.0; n];
                    e[i] = 1.0;
                    e
                })
                .collect()
        } else {
            let row = Matrix::from_rows(&[v.to_vec()])?;
            LinearMap::new(row)?.kernel.clone()
        };
        if rows.is_empty() {
            return Err(Error::InvalidInput("quotient of R^1 has dimension zero".into()));
        }
        LinearMap::from_rows(&rows)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols
    }

    pub fn rank(&self) -> usize {
        self.rowspace.len()
    }

    pub fn kernel(&self) -> &[Vector] {
        &self.kernel
    }

    pub fn rowspace(&self) -> &[Vector] {
        &self.rowspace
    }

    pub fn apply(&self, x: &[f64]) -> Result<Vector> {
        check_dim(self.cols(), x.len())?;
        Ok(self.matrix.mul_vec(x))
    }

    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        check_dim(self.cols(), inner.rows())?;
        LinearMap::new(self.matrix.mul(&inner.matrix))
    }

    /// Least-squares preimage of `y` inside the row space (the minimum-norm
    /// solution when `y` is in the range).
    pub fn lift(&self, y: &[f64]) -> Result<Vector> {
        check_dim(self.rows(), y.len())?;
        let n = self.cols();
        let r = self.rank();
        if r == 0 {
            return Ok(vec![0.0; n]);
        }
        // columns T·rowspace_j
        let tr: Vec<Vector> = self.rowspace.iter().map(|b| self.matrix.mul_vec(b)).collect();
        let mut g = Matrix::zeros(r, r);
        let mut rhs = vec![0.0; r];
        for i in 0..r {
            for j in 0..r {
                g[(i, j)] = dot(&tr[i], &tr[j]);
            }
            rhs[i] = dot(&tr[i], y);
        }
        let c = solve(&g, &rhs).ok_or_else(|| Error::Numerical("singular lift".into()))?;
        let mut x = vec![0.0; n];
        for (cj, b) in c.iter().zip(&self.rowspace) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += cj * bi;
            }
        }
        Ok(x)
    }
}

/// Orthonormal basis of the kernel of `map`.
pub fn nullspace(map: &LinearMap) -> Vec<Vector> {
    map.kernel().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_trivial_kernel() {
        let m = LinearMap::new(Matrix::identity(2)).unwrap();
        assert!(nullspace(&m).is_empty());
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn coordinate_projection_kernel_is_yz_plane() {
        let m = LinearMap::from_rows(&[vec![1.0, 0.0, 0.0]]).unwrap();
        let k = nullspace(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(v[0].abs() < 1e-15);
            assert!((norm(v) - 1.0).abs() < 1e-12);
        }
        assert!(dot(&k[0], &k[1]).abs() < 1e-12);
    }

    #[test]
    fn sum_map_kernel_is_antidiagonal() {
        let m = LinearMap::from_rows(&[vec![1.0, 1.0]]).unwrap();
        let k = nullspace(&m);
        assert_eq!(k.len(), 1);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((k[0][0].abs() - s).abs() < 1e-12);
        assert!((k[0][0] + k[0][1]).abs() < 1e-12);
    }

    #[test]
    fn apply_examples() {
        let p = LinearMap::from_rows(&[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
        let x = [1.0 - 1f64.cos(), 1f64.sin(), 1.0];
        assert_eq!(p.apply(&x).unwrap(), vec![1.0 - 1f64.cos(), 1f64.sin()]);
        let s = LinearMap::from_rows(&[vec![1.0, 1.0]]).unwrap();
        assert_eq!(s.apply(&[0.75, 0.75]).unwrap(), vec![1.5]);
        assert!(matches!(s.apply(&[1.0]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn rank_deficient_map() {
        let m = LinearMap::from_rows(&[vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0]]).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel().len(), 2);
        for v in m.kernel() {
            assert!(norm(&m.apply(v).unwrap()) < 1e-12);
        }
    }

    #[test]
    fn lift_is_a_preimage() {
        let m = LinearMap::from_rows(&[vec![1.0, 1.0, 0.0], vec![0.0, 1.0, -1.0]]).unwrap();
        let y = [0.3, -2.0];
        let x = m.lift(&y).unwrap();
        let back = m.apply(&x).unwrap();
        assert!(dist(&back, &y) < 1e-12);
        for k in m.kernel() {
            assert!(dot(k, &x).abs() < 1e-12);
        }
    }

    #[test]
    fn quotient_along_axis_drops_coordinate() {
        let q = LinearMap::quotient_along(&[0.0, 0.0, 2.0]).unwrap();
        assert_eq!(q.apply(&[1.0, 2.0, 3.0]).unwrap(), vec![1.0, 2.0]);
        let q = LinearMap::quotient_along(&[1.0, 1.0]).unwrap();
        assert_eq!(q.rows(), 1);
        assert!(q.apply(&[1.0, 1.0]).unwrap()[0].abs() < 1e-12);
    }

    #[test]
    fn jacobi_eigen_reconstructs() {
        let a = Matrix::from_rows(&[
            vec![4.0, 1.0, 0.5],
            vec![1.0, 3.0, -0.2],
            vec![0.5, -0.2, 2.0],
        ])
        .unwrap();
        let (vals, vecs) = sym_eigen(&a);
        for (l, v) in vals.iter().zip(&vecs) {
            let av = a.mul_vec(v);
            assert!(dist(&av, &scale(v, *l)) < 1e-10);
        }
    }

    #[test]
    fn solve_small_system() {
        let a = Matrix::from_rows(&[vec![0.0, 2.0], vec![1.0, 1.0]]).unwrap();
        let x = solve(&a, &[4.0, 3.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-14 && (x[1] - 2.0).abs() < 1e-14);
        let s = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(solve(&s, &[1.0, 1.0]).is_none());
    }
}
