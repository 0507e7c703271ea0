use convex_lnc::bodies::{face_decompose_zonotope, HPolytope, VPolytope, Zonotope};
use convex_lnc::linalg::{add, dist, dot, norm, scale, sub};
use convex_lnc::{Body, LinearMap, Matrix, Vector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

fn point(rng: &mut ChaCha8Rng, n: usize, r: f64) -> Vector {
    (0..n).map(|_| rng.gen_range(-r..r)).collect()
}

fn cone() -> Body {
    Body::suspension(Body::ball(vec![1.0, 0.0], 1.0).unwrap(), 0.0, 1.0).unwrap()
}

/// One body of each kind, built from the seed.
fn body(kind: usize, rng: &mut ChaCha8Rng) -> Body {
    match kind {
        0 => Body::ball(point(rng, 3, 1.0), rng.gen_range(0.5..2.0)).unwrap(),
        1 => {
            let a: Vec<Vector> = (0..3).map(|_| point(rng, 3, 1.0)).collect();
            let m = Matrix::from_rows(&a).unwrap();
            let mut spd = m.transpose().mul(&m);
            for i in 0..3 {
                spd.data[i * 3 + i] += 0.5;
            }
            Body::ellipsoid(point(rng, 3, 1.0), spd).unwrap()
        }
        2 => {
            let mut rows = Vec::new();
            let mut b = Vec::new();
            for i in 0..3 {
                let mut e = vec![0.0; 3];
                e[i] = 1.0;
                rows.push(e.clone());
                b.push(1.0);
                rows.push(scale(&e, -1.0));
                b.push(1.0);
            }
            for _ in 0..4 {
                rows.push(point(rng, 3, 1.0));
                b.push(rng.gen_range(0.2..1.0));
            }
            Body::HPolytope(HPolytope::from_rows(&rows, b).unwrap())
        }
        3 => Body::vpolytope((0..rng.gen_range(4..9)).map(|_| point(rng, 3, 1.0)).collect()).unwrap(),
        4 => Body::zonotope(point(rng, 3, 0.5), (0..rng.gen_range(1..6)).map(|_| point(rng, 3, 1.0)).collect()).unwrap(),
        5 => Body::psd_cap2(),
        6 => Body::epigraph19(),
        7 => cone(),
        8 => Body::product(Body::ball(vec![0.0, 0.0], 1.0).unwrap(), Body::unit_square()),
        _ => Body::intersection(
            Body::HPolytope(HPolytope::cube(3, -1.0, 1.0).unwrap()),
            Body::ball(point(rng, 3, 0.5), 1.2).unwrap(),
        )
        .unwrap(),
    }
}

/// A finite box to sample from; the epigraph is cut at height 4.
fn sample_box(b: &Body) -> (Vector, Vector) {
    if b.is_bounded() {
        b.bounding_box()
    } else {
        (vec![-2.0, -2.0, 0.0], vec![2.0, 2.0, 4.0])
    }
}

fn inside_samples(b: &Body, rng: &mut ChaCha8Rng, want: usize) -> Vec<Vector> {
    let (lo, hi) = sample_box(b);
    let mut out = Vec::new();
    for _ in 0..want * 200 {
        if out.len() == want {
            break;
        }
        let x: Vector = lo.iter().zip(&hi).map(|(l, h)| if h > l { rng.gen_range(*l..*h) } else { *l }).collect();
        if b.contains(&x, TOL) {
            out.push(x);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn midpoints_of_inside_pairs_are_inside(kind in 0usize..10, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = body(kind, &mut rng);
        let pts = inside_samples(&b, &mut rng, 26);
        prop_assume!(pts.len() >= 2);
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let m: Vector = pts[i].iter().zip(&pts[j]).map(|(a, c)| 0.5 * (a + c)).collect();
                prop_assert!(b.contains(&m, TOL), "{} midpoint of {:?} and {:?}", b.kind(), pts[i], pts[j]);
            }
        }
    }

    #[test]
    fn support_dominates_inside_points(kind in 0usize..9, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // the epigraph is unbounded and intersections have no support oracle
        prop_assume!(kind != 6);
        let b = body(kind, &mut rng);
        let pts = inside_samples(&b, &mut rng, 30);
        for _ in 0..5 {
            let d = point(&mut rng, b.dim(), 1.0);
            let (h, arg) = b.support(&d).unwrap();
            prop_assert!((dot(&d, &arg) - h).abs() <= 1e-7 * (1.0 + h.abs()));
            for q in &pts {
                prop_assert!(h >= dot(&d, q) - 1e-9 * (1.0 + h.abs()));
            }
        }
    }

    #[test]
    fn nearest_is_idempotent_and_variational(kind in 0usize..10, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = body(kind, &mut rng);
        let pts = inside_samples(&b, &mut rng, 30);
        for _ in 0..5 {
            let p = point(&mut rng, b.dim(), 3.0);
            let q = b.nearest(&p).unwrap();
            prop_assert!(b.contains(&q, 1e-7), "{} nearest not inside", b.kind());
            let qq = b.nearest(&q).unwrap();
            prop_assert!(dist(&q, &qq) <= 1e-8, "{} not idempotent: {}", b.kind(), dist(&q, &qq));
            let pq = sub(&p, &q);
            for z in &pts {
                prop_assert!(dot(&pq, &sub(z, &q)) <= 1e-6 * (1.0 + norm(&pq)), "{} variational", b.kind());
                prop_assert!(dist(&p, &q) <= dist(&p, z) + 1e-6);
            }
        }
    }

    #[test]
    fn vertex_and_facet_forms_agree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let verts: Vec<Vector> = (0..rng.gen_range(4..9)).map(|_| point(&mut rng, 3, 1.0)).collect();
        let v = VPolytope::new(verts).unwrap();
        prop_assume!(v.affine_rank() == 3);
        let h = v.to_hpolytope().unwrap();
        let mut checked = 0;
        for _ in 0..1000 {
            let x = point(&mut rng, 3, 1.2);
            let hv = h.violation(&x);
            // skip points whose status is decided by rounding
            if hv.abs() < 1e-7 {
                continue;
            }
            checked += 1;
            prop_assert_eq!(v.violation_lp(&x) <= TOL, hv <= TOL, "disagree at {:?}", x);
        }
        prop_assert!(checked > 900);
    }

    #[test]
    fn zonotope_face_split(seed in any::<u64>(), pick in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut gens: Vec<Vector> = (0..4).map(|_| point(&mut rng, 3, 1.0)).collect();
        let c = point(&mut rng, 3, 0.5);
        // a direction orthogonal to `pick` generators
        let d = match pick {
            0 => point(&mut rng, 3, 1.0),
            1 => {
                let g = &gens[0];
                let r = point(&mut rng, 3, 1.0);
                sub(&r, &scale(g, dot(&r, g) / dot(g, g)))
            }
            _ => {
                let (a, b) = (&gens[0], &gens[1]);
                vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
            }
        };
        prop_assume!(norm(&d) > 1e-3);
        gens.push(scale(&gens[0], -0.5));
        let z = Zonotope::new(c.clone(), gens.clone()).unwrap();
        let (a, b, w) = face_decompose_zonotope(&z, &d).unwrap();
        prop_assert_eq!(a.generators().len() + b.generators().len(), gens.len());
        let h = gens.iter().map(|g| dot(&d, g).max(0.0)).sum::<f64>() + dot(&d, &c);
        prop_assert!((dot(&d, &w) - h).abs() <= 1e-9 * (1.0 + h.abs()), "face offset off the support plane");
        for _ in 0..500 {
            let ta: Vector = a.generators().iter().map(|_| rng.gen_range(0.0..1.0)).collect();
            let tb: Vector = b.generators().iter().map(|_| rng.gen_range(0.0..1.0)).collect();
            let pa = a.generators().iter().zip(&ta).fold(a.center().to_vec(), |acc, (g, t)| add(&acc, &scale(g, *t)));
            let pb = b.generators().iter().zip(&tb).fold(b.center().to_vec(), |acc, (g, t)| add(&acc, &scale(g, *t)));
            prop_assert!(a.violation_lp(&pa) <= TOL && b.violation_lp(&pb) <= TOL);
            let s = add(&pa, &pb);
            prop_assert!(z.violation_lp(&s) <= 1e-8, "A + B point outside Z");
            prop_assert!(Body::Zonotope(z.clone()).contains(&s, 1e-8));
            let f = add(&pa, &w);
            prop_assert!((dot(&d, &f) - h).abs() <= 1e-9 * (1.0 + h.abs()));
            prop_assert!(z.violation_lp(&f) <= 1e-8, "face point outside Z");
        }
    }

    #[test]
    fn cone_matches_its_quadratic_description(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = cone();
        for _ in 0..1000 {
            let p = vec![rng.gen_range(-0.2..2.2), rng.gen_range(-1.2..1.2), rng.gen_range(-0.2..1.2)];
            let (x, y, z) = (p[0], p[1], p[2]);
            // hull of the origin and the circle (1 - cos t, sin t, 1)
            let slack = [x * x + y * y - 2.0 * x * z, -z, z - 1.0];
            let worst = slack.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if worst.abs() < 1e-6 {
                continue;
            }
            prop_assert_eq!(k.contains(&p, TOL), worst < 0.0, "at {:?}", p);
        }
    }

    #[test]
    fn kernel_and_rowspace_split_the_domain(m in 1usize..4, n in 1usize..6, seed in any::<u64>(), dup in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rows: Vec<Vector> = (0..m).map(|_| point(&mut rng, n, 1.0)).collect();
        if dup {
            let r = scale(&rows[0], 2.0);
            rows.push(r);
        }
        let t = LinearMap::from_rows(&rows).unwrap();
        let (ker, rs) = (t.kernel(), t.rowspace());
        prop_assert_eq!(ker.len() + t.rank(), n);
        prop_assert_eq!(rs.len(), t.rank());
        let all: Vec<&Vector> = ker.iter().chain(rs).collect();
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((dot(a, b) - want).abs() <= 1e-10);
            }
        }
        for k in ker {
            prop_assert!(norm(&t.apply(k).unwrap()) <= 1e-12);
        }
    }
}

#[test]
fn product_membership_is_the_conjunction() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (l, r) = (Body::ball(vec![0.0, 0.0], 1.0).unwrap(), Body::unit_square());
    let p = Body::product(l.clone(), r.clone());
    for _ in 0..1000 {
        let x = point(&mut rng, 4, 1.3);
        assert_eq!(p.contains(&x, TOL), l.contains(&x[..2], TOL) && r.contains(&x[2..], TOL));
    }
}

#[test]
fn psd_cap_membership_matches_the_inequalities() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let k = Body::psd_cap2();
    let mut inside = 0;
    for _ in 0..2000 {
        let x = vec![rng.gen_range(-0.1..1.1), rng.gen_range(-0.6..0.6), rng.gen_range(-0.1..1.1)];
        let (a, b, c) = (x[0], x[1], x[2]);
        let slack = [-a, -c, b * b - a * c, b * b - (1.0 - a) * (1.0 - c), a - 1.0, c - 1.0];
        let worst = slack.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if worst.abs() < 1e-7 {
            continue;
        }
        inside += usize::from(worst < 0.0);
        assert_eq!(k.contains(&x, TOL), worst < 0.0, "at {x:?}");
    }
    assert!(inside > 100);
}
