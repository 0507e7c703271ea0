use convex_lnc::gallery::{self, GalleryParams, Verdict};
use convex_lnc::linalg::{dist, norm};
use convex_lnc::lnc::{lnc_search, lnc_verdict_crosscheck, segment_test, Consistency, CrosscheckOptions, LncWitness};
use convex_lnc::{Body, LinearMap, ToolConfig, Vector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn point(rng: &mut ChaCha8Rng, n: usize, r: f64) -> Vector {
    (0..n).map(|_| rng.gen_range(-r..r)).collect()
}

fn cone() -> Body {
    Body::suspension(Body::ball(vec![1.0, 0.0], 1.0).unwrap(), 0.0, 1.0).unwrap()
}

fn body(kind: usize, rng: &mut ChaCha8Rng) -> Body {
    match kind {
        0 => Body::ball(point(rng, 3, 0.5), rng.gen_range(0.5..1.5)).unwrap(),
        1 => Body::vpolytope((0..rng.gen_range(5..10)).map(|_| point(rng, 3, 1.0)).collect()).unwrap(),
        2 => Body::zonotope(point(rng, 3, 0.5), (0..rng.gen_range(3..6)).map(|_| point(rng, 3, 1.0)).collect()).unwrap(),
        3 => Body::psd_cap2(),
        4 => cone(),
        _ => Body::epigraph19(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn segment_test_is_monotone_in_eps(kind in 0usize..6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = body(kind, &mut rng);
        let q = b.nearest(&point(&mut rng, 3, 2.0)).unwrap();
        let v = point(&mut rng, 3, 1.0);
        let tol = 1e-9;
        let mut grid: Vec<f64> = (0..12).map(|_| 10f64.powf(rng.gen_range(-6.0..0.5))).collect();
        grid.sort_by(f64::total_cmp);
        let single: Vec<bool> = grid.iter().map(|e| segment_test(&b, &q, &v, &[*e], tol)).collect();
        for k in 0..grid.len() {
            // brute force: both ends inside at this ε alone
            let direct = b.contains(&q.iter().zip(&v).map(|(a, c)| a + grid[k] * c).collect::<Vec<_>>(), tol)
                && b.contains(&q.iter().zip(&v).map(|(a, c)| a - grid[k] * c).collect::<Vec<_>>(), tol);
            prop_assert_eq!(single[k], direct);
            if single[k] {
                prop_assert!(single[..k].iter().all(|s| *s), "true at {} but not below: {:?}", grid[k], single);
            }
        }
        prop_assert_eq!(segment_test(&b, &q, &v, &grid, tol), single.iter().any(|s| *s));
    }
}

#[test]
fn segment_test_on_the_square_edge() {
    assert!(!segment_test(&Body::unit_square(), &[0.0, 0.5], &[1.0, 0.0], &[0.25, 0.01], 1e-9));
    assert!(segment_test(&Body::unit_square(), &[0.5, 0.5], &[1.0, 0.0], &[0.25, 0.01], 1e-9));
}

#[test]
fn cone_witness_is_stable_across_seeds() {
    let cfg = ToolConfig::default();
    let b = cone();
    let mut found = 0;
    for seed in 1..=20 {
        if let Some(w) = lnc_search(&b, 200, 3, seed, &cfg).unwrap().witness() {
            found += 1;
            w.check_record().unwrap();
            w.verify(&b).unwrap();
            // the record alone suffices after a round trip
            let back: LncWitness = serde_json::from_str(&serde_json::to_string(w).unwrap()).unwrap();
            back.check_record().unwrap();
            assert_eq!(&back, w);
        }
    }
    assert!(found >= 18, "cone witness in {found}/20 seeds");
}

#[test]
fn search_is_deterministic() {
    let cfg = ToolConfig::default();
    for b in [cone(), Body::psd_cap2(), Body::ball(vec![0.0; 3], 1.0).unwrap()] {
        let a = lnc_search(&b, 60, 3, 9, &cfg).unwrap();
        let c = lnc_search(&b, 60, 3, 9, &cfg).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&c).unwrap());
    }
}

#[test]
fn templates_pass_the_witness_checks() {
    let cfg = ToolConfig::default();
    for id in gallery::IDS {
        let e = gallery::build(id, &GalleryParams::default()).unwrap();
        if e.verdict != Verdict::NotLncWitness {
            continue;
        }
        // example13 has no closed-form data; its witness comes from the search
        let w = match gallery::expected_witness(id, &cfg) {
            Err(convex_lnc::Error::NoExplicitWitness(_)) if id == "example13" => continue,
            r => r.unwrap(),
        };
        w.check_record().unwrap_or_else(|m| panic!("{id}: {m}"));
        w.verify(&e.body).unwrap_or_else(|m| panic!("{id}: {m}"));
        for row in &w.margins {
            for m in row {
                assert!(m[0].max(m[1]) >= 1e-6);
            }
        }
    }
}

#[test]
fn example13_witness_lies_in_the_slice() {
    let cfg = ToolConfig::default();
    let e = gallery::build("example13", &GalleryParams::default()).unwrap();
    let slice = e.search_body.as_ref().unwrap();
    let hits = (1..=5)
        .filter_map(|seed| lnc_search(slice, 400, 3, seed, &cfg).unwrap().witness().cloned())
        .inspect(|w| {
            w.verify(&e.body).unwrap();
            assert!(w.x[3].abs() < 1e-9 && w.x_prime[3].abs() < 1e-9);
        })
        .count();
    assert!(hits >= 4, "{hits}/5");
}

#[test]
fn psd_template_determinants() {
    // q_t + (x' - x) / 2 with x = diag(1, 0), x' = 0
    for t in [0.9f64, 0.99, 0.999] {
        let z = [t - 0.5, (t - t * t).sqrt(), 1.0 - t];
        let det = z[0] * z[2] - z[1] * z[1];
        assert!((det - (t - 1.0) / 2.0).abs() < 1e-12, "{det}");
        assert!(det <= -5e-4 + 1e-12);
        assert!(!Body::psd_cap2().contains(&z, 1e-9));
    }
}

#[test]
fn crosscheck_on_polytopes_and_zonotopes_is_clean() {
    let cfg = ToolConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..4 {
        let b = if i % 2 == 0 {
            Body::vpolytope((0..8).map(|_| point(&mut rng, 4, 1.0)).collect()).unwrap()
        } else {
            Body::zonotope(vec![0.0; 4], (0..6).map(|_| point(&mut rng, 4, 1.0)).collect()).unwrap()
        };
        let t = LinearMap::from_rows(&[point(&mut rng, 4, 1.0), point(&mut rng, 4, 1.0)]).unwrap();
        let opts = CrosscheckOptions { pairs: 60, scales: 3, targets: 24, bases: 2, seed: i };
        let r = lnc_verdict_crosscheck(&b, &t, None, &opts, &cfg).unwrap();
        assert_ne!(r.consistency, Consistency::Contradiction);
        assert_eq!(r.consistency, Consistency::Clean, "{} seed {i}", b.kind());
    }
}

#[test]
fn crosscheck_falsifies_the_cone() {
    let cfg = ToolConfig::default();
    let t = LinearMap::from_rows(&[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
    let opts = CrosscheckOptions { pairs: 200, scales: 3, targets: 48, bases: 4, seed: 3 };
    let r = lnc_verdict_crosscheck(&cone(), &t, None, &opts, &cfg).unwrap();
    assert_eq!(r.consistency, Consistency::Falsification);
    let w = r.witness.unwrap();
    assert!(norm(&w.direction) > 0.0 && dist(&w.x, &w.x_prime) > 0.0);
}
