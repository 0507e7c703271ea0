//! Euclidean projection problems: an active-set method for polyhedra in
//! constraint form and Wolfe's minimum-norm-point method for polytopes given
//! by a linear minimization oracle.

use crate::error::{Error, Result};
use crate::linalg::{axpy, dot, norm, solve, sub, Matrix, Vector};

const BLAND_AFTER: usize = 200;

/// `min ½‖x − a‖²` subject to `g_i·x ≤ h_i`, started from a feasible `x0`.
pub fn project_active_set(
    g: &[Vector],
    h: &[f64],
    a: &[f64],
    x0: &[f64],
    max_iter: usize,
) -> Result<Vector> {
    let n = a.len();
    let mut x = x0.to_vec();
    let scale = 1.0 + norm(a) + norm(x0);
    let act_tol = 1e-10 * scale;
    let mut work: Vec<usize> = Vec::new();
    for i in 0..g.len() {
        if (dot(&g[i], &x) - h[i]).abs() <= act_tol && independent(g, &work, i) && work.len() < n {
            work.push(i);
        }
    }
    for iter in 0..max_iter {
        let r = sub(a, &x);
        let (mut d, lambda) = null_projection(g, &work, &r);
        if work.len() == n {
            // a vertex: whatever is left of d is roundoff
            d = vec![0.0; n];
        }
        if norm(&d) <= 1e-13 * scale {
            let negative = lambda.iter().enumerate().filter(|(_, l)| **l < -1e-12 * scale);
            // after many steps assume a degenerate cycle and drop by smallest index
            let worst = if iter < BLAND_AFTER {
                negative.min_by(|p, q| p.1.total_cmp(q.1)).map(|(k, _)| k)
            } else {
                negative.min_by_key(|(k, _)| work[*k]).map(|(k, _)| k)
            };
            match worst {
                None => return Ok(x),
                Some(k) => {
                    work.remove(k);
                    continue;
                }
            }
        }
        let mut alpha = 1.0;
        let mut blocking = None;
        for i in 0..g.len() {
            if work.contains(&i) {
                continue;
            }
            let gd = dot(&g[i], &d);
            if gd > 1e-14 * norm(&g[i]) * norm(&d) {
                let step = ((h[i] - dot(&g[i], &x)) / gd).max(0.0);
                if step < alpha {
                    alpha = step;
                    blocking = Some(i);
                }
            }
        }
        x = axpy(&x, alpha, &d);
        if let Some(i) = blocking {
            work.push(i);
        }
    }
    Err(Error::NonConvergence("active-set projection".into()))
}

fn independent(g: &[Vector], work: &[usize], i: usize) -> bool {
    let mut rows: Vec<usize> = work.to_vec();
    rows.push(i);
    let k = rows.len();
    let mut gram = Matrix::zeros(k, k);
    for p in 0..k {
        for q in 0..k {
            gram[(p, q)] = dot(&g[rows[p]], &g[rows[q]]);
        }
    }
    let (_, _, rank) = crate::linalg::qr_col_pivot(&gram);
    rank == k
}

/// Projection of `r` onto the null space of the working rows, and the
/// least-squares multipliers `λ` with `G_Wᵀλ ≈ r`.
fn null_projection(g: &[Vector], work: &[usize], r: &[f64]) -> (Vector, Vector) {
    let k = work.len();
    if k == 0 {
        return (r.to_vec(), Vec::new());
    }
    let mut gram = Matrix::zeros(k, k);
    let mut rhs = vec![0.0; k];
    for p in 0..k {
        for q in 0..k {
            gram[(p, q)] = dot(&g[work[p]], &g[work[q]]);
        }
        rhs[p] = dot(&g[work[p]], r);
    }
    let lambda = solve(&gram, &rhs).unwrap_or_else(|| vec![0.0; k]);
    let mut d = r.to_vec();
    for (l, &i) in lambda.iter().zip(work) {
        d = axpy(&d, -l, &g[i]);
    }
    (d, lambda)
}

/// Wolfe's method: the point of minimal norm in the convex hull of the
/// oracle's range. `lmo(d)` must return a minimizer of `⟨d, ·⟩`.
pub fn wolfe_min_norm<F>(mut lmo: F, start: Vector, max_iter: usize) -> Result<Vector>
where
    F: FnMut(&[f64]) -> Result<Vector>,
{
    let mut pts: Vec<Vector> = vec![start.clone()];
    let mut w: Vec<f64> = vec![1.0];
    let mut x = start;
    let mut size = norm(&x).max(1e-300);
    for _ in 0..max_iter {
        let p = lmo(&x)?;
        size = size.max(norm(&p));
        let gap = dot(&x, &x) - dot(&x, &p);
        if gap <= 1e-13 * size * size || pts.iter().any(|q| q == &p) {
            return Ok(x);
        }
        pts.push(p);
        w.push(0.0);
        loop {
            let Some(alpha) = affine_min_norm(&pts) else {
                pts.pop();
                w.pop();
                return Ok(combine(&pts, &w));
            };
            if alpha.iter().all(|&a| a > 1e-14) {
                w = alpha;
                x = combine(&pts, &w);
                break;
            }
            let mut theta: f64 = 1.0;
            for (wi, ai) in w.iter().zip(&alpha) {
                if *ai <= 1e-14 {
                    let denom = wi - ai;
                    if denom > 0.0 {
                        theta = theta.min(wi / denom);
                    }
                }
            }
            for (wi, ai) in w.iter_mut().zip(&alpha) {
                *wi = (1.0 - theta) * *wi + theta * ai;
            }
            let mut k = 0;
            while k < pts.len() {
                if w[k] <= 1e-14 {
                    pts.remove(k);
                    w.remove(k);
                } else {
                    k += 1;
                }
            }
            let total: f64 = w.iter().sum();
            for wi in w.iter_mut() {
                *wi /= total;
            }
            x = combine(&pts, &w);
            if pts.len() == 1 {
                break;
            }
        }
    }
    Err(Error::NonConvergence("minimum-norm point".into()))
}

fn combine(pts: &[Vector], w: &[f64]) -> Vector {
    let mut x = vec![0.0; pts[0].len()];
    for (p, wi) in pts.iter().zip(w) {
        x = axpy(&x, *wi, p);
    }
    x
}

/// Barycentric coordinates of the minimum-norm point of the affine hull.
fn affine_min_norm(pts: &[Vector]) -> Option<Vec<f64>> {
    let k = pts.len();
    let mut m = Matrix::zeros(k + 1, k + 1);
    for i in 0..k {
        for j in 0..k {
            m[(i, j)] = dot(&pts[i], &pts[j]);
        }
        m[(i, k)] = 1.0;
        m[(k, i)] = 1.0;
    }
    let mut rhs = vec![0.0; k + 1];
    rhs[k] = 1.0;
    let sol = solve(&m, &rhs)?;
    Some(sol[..k].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projects_onto_square() {
        let g = vec![vec![1.0, 0.0], vec![-1.0, 0.0], vec![0.0, 1.0], vec![0.0, -1.0]];
        let h = vec![1.0, 0.0, 1.0, 0.0];
        let x = project_active_set(&g, &h, &[2.0, 0.5], &[0.5, 0.5], 100).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12 && (x[1] - 0.5).abs() < 1e-12);
        let x = project_active_set(&g, &h, &[3.0, -2.0], &[0.2, 0.9], 100).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12 && x[1].abs() < 1e-12);
    }

    #[test]
    fn wolfe_segment() {
        // conv{(0,0),(1,1)} shifted so the query (1,0) sits at the origin
        let verts = [vec![-1.0, 0.0], vec![0.0, 1.0]];
        let lmo = |d: &[f64]| -> Result<Vector> {
            Ok(verts
                .iter()
                .min_by(|a, b| dot(d, a).total_cmp(&dot(d, b)))
                .unwrap()
                .clone())
        };
        let x = wolfe_min_norm(lmo, verts[0].clone(), 100).unwrap();
        assert!((x[0] + 0.5).abs() < 1e-12 && (x[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn wolfe_triangle_interior_face() {
        let verts = [vec![1.0, -1.0, 1.0], vec![1.0, 1.0, 1.0], vec![1.0, 0.0, -2.0]];
        let lmo = |d: &[f64]| -> Result<Vector> {
            Ok(verts
                .iter()
                .min_by(|a, b| dot(d, a).total_cmp(&dot(d, b)))
                .unwrap()
                .clone())
        };
        let x = wolfe_min_norm(lmo, verts[2].clone(), 100).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12 && x[1].abs() < 1e-12 && x[2].abs() < 1e-12);
    }
}
