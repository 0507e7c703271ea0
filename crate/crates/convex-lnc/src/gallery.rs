//! Named example bodies with their expected verdicts, default maps and,
//! where one is known in closed form, a falsifying witness.

use std::f64::consts::PI;

use serde::Serialize;

use crate::bodies::{Body, HPolytope};
use crate::config::ToolConfig;
use crate::error::{Error, Result};
use crate::linalg::{LinearMap, Vector};
use crate::lnc::LncWitness;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    LncNoWitness,
    NotLncWitness,
    /// Every member is a polytope; the interesting behavior is the limit.
    LimitFamily,
}

/// Identifiers in listing order.
pub const IDS: [&str; 10] =
    ["ball", "cone9", "epigraph19", "example13", "helix10", "polytope", "prop11", "psd12", "square", "zonotope"];

pub const HELIX_DEFAULT_N: usize = 128;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GalleryParams {
    /// Helix sample count, or the number of sides of the suspended polygon.
    pub n: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct GalleryEntry {
    pub id: String,
    pub body: Body,
    pub verdict: Verdict,
    pub map: LinearMap,
    pub map_label: String,
    /// Functionals for the lexicographic section, when the kernel
    /// coordinates are not the natural choice.
    pub family: Option<Vec<Vector>>,
    /// A sub-body on which the witness search runs.
    pub search_body: Option<Body>,
    pub description: String,
    pub section_notes: String,
}

fn rows(r: &[&[f64]]) -> LinearMap {
    LinearMap::from_rows(&r.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).expect("fixed map")
}

fn proj_xy(n: usize) -> LinearMap {
    let mut a = vec![0.0; n];
    let mut b = vec![0.0; n];
    a[0] = 1.0;
    b[1] = 1.0;
    LinearMap::from_rows(&[a, b]).expect("fixed map")
}

pub fn helix_angles(n: usize) -> Vec<f64> {
    (0..n).map(|k| 2.0 * PI * k as f64 / (n - 1) as f64).collect()
}

pub fn helix_vertices(n: usize) -> Vec<Vector> {
    helix_angles(n).into_iter().map(|t| vec![t.cos(), t.sin(), t]).collect()
}

/// Circle points at the interior sample angles, ending at `(1, 0)`.
pub fn helix_path(n: usize) -> Vec<Vector> {
    let t = helix_angles(n);
    let mut path: Vec<Vector> = t[1..n - 1].iter().map(|a| vec![a.cos(), a.sin()]).collect();
    path.push(vec![1.0, 0.0]);
    path
}

/// Rim path `(1 − cos t, sin t)` for `t` from 1 down to 0.01 in 50 steps,
/// then the apex image `(0, 0)`.
pub fn cone_path() -> Vec<Vector> {
    let mut path: Vec<Vector> = (0..=50)
        .map(|k| {
            let t = 1.0 - 0.99 * k as f64 / 50.0;
            vec![1.0 - t.cos(), t.sin()]
        })
        .collect();
    path.push(vec![0.0, 0.0]);
    path
}

fn example13_cone() -> Body {
    let disk = Body::ball(vec![0.0, 0.0], 1.0).expect("disk");
    Body::suspension(disk, 10.0, -20.0).expect("cone")
}

fn example13() -> Result<Body> {
    let slab = Body::HPolytope(HPolytope::boxed(&[-10.0], &[10.0])?);
    Body::intersection(Body::product(example13_cone(), slab), Body::ball(vec![0.0; 4], 2.0)?)
}

/// The slice `w = 0` of the truncated product, as a body in R⁴.
fn example13_slice() -> Result<Body> {
    let point = Body::HPolytope(HPolytope::boxed(&[0.0], &[0.0])?);
    Body::intersection(Body::product(example13_cone(), point), Body::ball(vec![0.0; 4], 2.0)?)
}

fn regular_polygon(n: usize) -> Vec<Vector> {
    (0..n).map(|k| 2.0 * PI * k as f64 / n as f64).map(|a| vec![a.cos(), a.sin()]).collect()
}

pub fn build(id: &str, params: &GalleryParams) -> Result<GalleryEntry> {
    let plain = |body: Body, verdict, map: LinearMap, label: &str, description: &str, notes: &str| GalleryEntry {
        id: id.to_string(),
        body,
        verdict,
        map,
        map_label: label.into(),
        family: None,
        search_body: None,
        description: description.into(),
        section_notes: notes.into(),
    };
    let entry = match id {
        "ball" => plain(
            Body::ball(vec![0.0; 3], 1.0)?,
            Verdict::LncNoWitness,
            proj_xy(3),
            "proj-xy",
            "unit ball in R^3; strictly convex",
            "all sections continuous",
        ),
        "cone9" => plain(
            Body::suspension(Body::ball(vec![1.0, 0.0], 1.0)?, 0.0, 1.0)?,
            Verdict::NotLncWitness,
            proj_xy(3),
            "proj-xy",
            "hull of the circle (1 - cos t, sin t, 1) and the origin",
            "gv-lowest, min-norm and gamma jump by 1 at (0,0) along the rim path",
        ),
        "epigraph19" => GalleryEntry {
            family: Some(vec![vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]),
            ..plain(
                Body::epigraph19(),
                Verdict::LncNoWitness,
                rows(&[&[1.0, 0.0, 0.0]]),
                "x",
                "x, y >= 0, x + y <= 1, z >= (1 - y)^3 / x; unbounded in z",
                "gamma with (y, z) is (x, 0, 1/x) for x > 0 and (0, 1, 0) at x = 0",
            )
        },
        "example13" => GalleryEntry {
            search_body: Some(example13_slice()?),
            ..plain(
                example13()?,
                Verdict::NotLncWitness,
                rows(&[&[20.0, 0.0, 1.0, 0.0], &[0.0, 1.0, 0.0, 0.0], &[0.0, 0.0, 0.0, 1.0]]),
                "20x+z, y, w",
                "(cone over the circle at z = -10 with apex (0,0,10)) x [-10,10], cut by the 4-ball of radius 2",
                "the map collapses the slant generator through (1, 0, -10)",
            )
        },
        "helix10" => {
            let n = params.n.unwrap_or(HELIX_DEFAULT_N);
            if n < 8 {
                return Err(Error::InvalidInput("helix needs at least 8 samples".into()));
            }
            plain(
                Body::vpolytope(helix_vertices(n))?,
                Verdict::LimitFamily,
                proj_xy(3),
                "proj-xy",
                "hull of N samples of the helix (cos t, sin t, t), 0 <= t <= 2 pi",
                "sections jump by about 2 pi at (1,0) as N grows",
            )
        }
        "polytope" => plain(
            Body::vpolytope(vec![
                vec![1.0, 0.0, 0.0],
                vec![-1.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
                vec![0.0, -1.0, 0.0],
                vec![0.0, 0.0, 1.0],
                vec![0.0, 0.0, -1.0],
                vec![0.6, 0.6, 0.6],
                vec![-0.5, 0.4, -0.6],
            ])?,
            Verdict::LncNoWitness,
            proj_xy(3),
            "proj-xy",
            "octahedron with two extra vertices",
            "all sections continuous",
        ),
        "prop11" => match params.n {
            None => plain(
                Body::suspension(Body::ball(vec![0.0, 0.0], 1.0)?, 0.0, 1.0)?,
                Verdict::NotLncWitness,
                proj_xy(3),
                "proj-xy",
                "suspension {(t x, t)} of the unit disk",
                "extreme points of the disk accumulate",
            ),
            Some(n) if n >= 3 => plain(
                Body::suspension(Body::vpolytope(regular_polygon(n))?, 0.0, 1.0)?,
                Verdict::LncNoWitness,
                proj_xy(3),
                "proj-xy",
                "suspension {(t x, t)} of a regular polygon",
                "a polytope, so all sections continuous",
            ),
            Some(_) => return Err(Error::InvalidInput("polygon needs at least 3 sides".into())),
        },
        "psd12" => plain(
            Body::psd_cap2(),
            Verdict::NotLncWitness,
            rows(&[&[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]),
            "(a,b,c) -> (b,c)",
            "symmetric 2x2 matrices [[a,b],[b,c]] with 0 <= A <= I",
            "the map forgets the diagonal entry a",
        ),
        "square" => plain(
            Body::unit_square(),
            Verdict::LncNoWitness,
            rows(&[&[1.0, 0.0]]),
            "x",
            "unit square",
            "piecewise affine sections",
        ),
        "zonotope" => plain(
            Body::zonotope(
                vec![0.0; 3],
                vec![
                    vec![1.0, 0.0, 0.0],
                    vec![0.0, 1.0, 0.0],
                    vec![0.0, 0.0, 1.0],
                    vec![0.5, 0.5, 0.0],
                    vec![0.3, -0.4, 0.6],
                ],
            )?,
            Verdict::LncNoWitness,
            proj_xy(3),
            "proj-xy",
            "zonotope with five generators in R^3",
            "all sections continuous",
        ),
        other => return Err(Error::UnknownGallery(other.to_string())),
    };
    entry.sanity_check()?;
    Ok(entry)
}

impl GalleryEntry {
    /// The anchor is inside and fixed by projection, the nearest point of a
    /// far point is inside, and points beyond the bounding box are outside.
    pub fn sanity_check(&self) -> Result<()> {
        let b = &self.body;
        let tol = 1e-7;
        let fail = |m: &str| Err(Error::Numerical(format!("{}: {m}", self.id)));
        let a = b.anchor();
        if !b.contains(&a, tol) {
            return fail("anchor outside");
        }
        if crate::linalg::dist(&b.nearest(&a)?, &a) > 1e-9 {
            return fail("nearest moves an inside point");
        }
        let (lo, hi) = b.bounding_box();
        let mut far = a.clone();
        far[0] = if hi[0].is_finite() { hi[0] + 1.0 } else { a[0] };
        if hi[0].is_finite() && b.contains(&far, tol) {
            return fail("point beyond the bounding box is inside");
        }
        let mut away = a.clone();
        away[0] = if lo[0].is_finite() { lo[0] - 3.0 } else { a[0] - 3.0 };
        if !b.contains(&b.nearest(&away)?, tol) {
            return fail("nearest point is outside");
        }
        Ok(())
    }
}

/// Identifier, verdict and one-line description, alphabetically.
pub fn list() -> Vec<(&'static str, Verdict, String)> {
    IDS.iter()
        .map(|id| {
            let e = build(id, &GalleryParams::default()).expect("gallery entries build");
            (*id, e.verdict, e.description)
        })
        .collect()
}

/// The closed-form falsifying data of an entry, measured against its body.
pub fn expected_witness(id: &str, cfg: &ToolConfig) -> Result<LncWitness> {
    let entry = build(id, &GalleryParams::default())?;
    let (x, xp, approach): (Vector, Vector, Vec<Vector>) = match id {
        "cone9" => (
            vec![0.0, 0.0, 1.0],
            vec![0.0; 3],
            [2.0, 4.0, 8.0, 16.0].iter().map(|n: &f64| vec![1.0 - (1.0 / n).cos(), (1.0 / n).sin(), 1.0]).collect(),
        ),
        "psd12" => (
            vec![1.0, 0.0, 0.0],
            vec![0.0; 3],
            [0.9, 0.99, 0.999].iter().map(|t: &f64| vec![*t, (t - t * t).sqrt(), 1.0 - t]).collect(),
        ),
        "prop11" => (
            vec![1.0, 0.0, 1.0],
            vec![0.0; 3],
            [32.0, 64.0, 128.0, 256.0]
                .iter()
                .map(|n: &f64| vec![(2.0 * PI / n).cos(), (2.0 * PI / n).sin(), 1.0])
                .collect(),
        ),
        _ => return Err(Error::NoExplicitWitness(id.to_string())),
    };
    LncWitness::measure(&entry.body, &x, &xp, approach, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_sorted_and_unique() {
        let mut s = IDS.to_vec();
        s.sort();
        s.dedup();
        assert_eq!(s, IDS.to_vec());
    }

    #[test]
    fn every_entry_builds() {
        for id in IDS {
            build(id, &GalleryParams::default()).unwrap();
        }
        build("helix10", &GalleryParams { n: Some(200) }).unwrap();
        build("prop11", &GalleryParams { n: Some(32) }).unwrap();
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(build("nope", &GalleryParams::default()), Err(Error::UnknownGallery(_))));
        assert!(build("helix10", &GalleryParams { n: Some(5) }).is_err());
    }

    #[test]
    fn templates_verify() {
        let cfg = ToolConfig::default();
        for id in ["cone9", "psd12", "prop11"] {
            let w = expected_witness(id, &cfg).unwrap();
            let e = build(id, &GalleryParams::default()).unwrap();
            w.verify(&e.body).unwrap_or_else(|m| panic!("{id}: {m}"));
        }
        assert!(matches!(expected_witness("example13", &cfg), Err(Error::NoExplicitWitness(_))));
        assert!(matches!(expected_witness("ball", &cfg), Err(Error::NoExplicitWitness(_))));
    }

    #[test]
    fn helix_path_ends_at_seam() {
        let p = helix_path(64);
        assert_eq!(p.len(), 63);
        assert_eq!(p[62], vec![1.0, 0.0]);
    }
}
