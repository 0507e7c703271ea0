//! One-dimensional convex minimization and its nested use over small boxes.

const INV_PHI: f64 = 0.618_033_988_749_894_9;
const GOLDEN_ITERS: usize = 200;
pub const BISECT_ITERS: usize = 100;

/// Golden-section search for a convex function on `[lo, hi]`. Returns the
/// best probed abscissa and value; endpoints are probed too.
pub fn golden_min<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64) -> (f64, f64) {
    if !(hi > lo) {
        let v = f(lo);
        return (lo, v);
    }
    let mut a = lo;
    let mut b = hi;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut best = if fc <= fd { (c, fc) } else { (d, fd) };
    for _ in 0..GOLDEN_ITERS {
        if b - a <= 1e-14 * (1.0 + a.abs() + b.abs()) {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
            if fc < best.1 {
                best = (c, fc);
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
            if fd < best.1 {
                best = (d, fd);
            }
        }
    }
    for e in [lo, hi] {
        let fe = f(e);
        if fe < best.1 {
            best = (e, fe);
        }
    }
    best
}

/// Bisection on a monotone predicate: `ok(good)` holds, `ok(bad)` fails.
/// Returns the last abscissa known to satisfy the predicate.
pub fn bisect<F: FnMut(f64) -> bool>(mut ok: F, mut good: f64, mut bad: f64) -> f64 {
    for _ in 0..BISECT_ITERS {
        let mid = 0.5 * (good + bad);
        if mid == good || mid == bad {
            break;
        }
        if ok(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    good
}

/// Minimize a convex function over the box `lo..hi` by nested golden
/// sections, coordinate 0 outermost. Returns value and minimizer.
pub fn nested_min(f: &dyn Fn(&[f64]) -> f64, lo: &[f64], hi: &[f64]) -> (f64, Vec<f64>) {
    let mut prefix = Vec::with_capacity(lo.len());
    nested_rec(f, lo, hi, &mut prefix)
}

fn nested_rec(
    f: &dyn Fn(&[f64]) -> f64,
    lo: &[f64],
    hi: &[f64],
    prefix: &mut Vec<f64>,
) -> (f64, Vec<f64>) {
    let j = prefix.len();
    if j == lo.len() {
        return (f(prefix), prefix.clone());
    }
    let mut best: (f64, Vec<f64>) = (f64::INFINITY, Vec::new());
    let mut inner = |c: f64| {
        prefix.push(c);
        let r = nested_rec(f, lo, hi, prefix);
        prefix.pop();
        let v = r.0;
        if v < best.0 || best.1.is_empty() {
            best = r;
        }
        v
    };
    golden_min(&mut inner, lo[j], hi[j]);
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_interior_and_endpoint_minima() {
        let (x, _) = golden_min(|x| (x - 0.3) * (x - 0.3), -2.0, 5.0);
        assert!((x - 0.3).abs() < 1e-7);
        let (x, v) = golden_min(|x| x, -2.0, 5.0);
        assert_eq!(x, -2.0);
        assert_eq!(v, -2.0);
        let (x, _) = golden_min(|x| (x - 1.0).abs(), -1000.0, 1000.0);
        assert!((x - 1.0).abs() < 1e-10);
    }

    #[test]
    fn bisect_keeps_good_side() {
        let r = bisect(|x| x >= 0.25, 1.0, -3.0);
        assert!(r >= 0.25 && r - 0.25 < 1e-14);
    }

    #[test]
    fn nested_two_dims() {
        let f = |p: &[f64]| (p[0] - 0.2).abs() + (p[1] + 0.4).powi(2) + (p[0] + p[1]).abs();
        let (v, x) = nested_min(&f, &[-1.0, -1.0], &[1.0, 1.0]);
        let (vb, _) = (0..=400)
            .flat_map(|i| (0..=400).map(move |j| (i, j)))
            .map(|(i, j)| {
                let p = [-1.0 + i as f64 / 200.0, -1.0 + j as f64 / 200.0];
                (f(&p), p)
            })
            .fold((f64::INFINITY, [0.0, 0.0]), |b, c| if c.0 < b.0 { c } else { b });
        assert!(v <= vb + 1e-9);
        assert!((f(&x) - v).abs() < 1e-15);
    }
}
