//! Continuous sections of `T|_Q` and a probe that measures their jumps.

use serde::Serialize;

use crate::bodies::Body;
use crate::config::ToolConfig;
use crate::error::{Error, Result};
use crate::linalg::{axpy, dist, dot, midpoint, norm, LinearMap, Vector};
use crate::solvers::fiber::{gamma_over_fiber, make_fiber, min_norm_over_fiber, FiberPoint, FunctionalFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GvMode {
    Lowest,
    MinAbs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    GvLowest,
    GvMinabs,
    MinNorm,
    MinDist,
    Gamma,
}

impl Method {
    pub fn parse(s: &str) -> Result<Method> {
        Ok(match s {
            "gv-lowest" => Method::GvLowest,
            "gv-minabs" => Method::GvMinabs,
            "min-norm" => Method::MinNorm,
            "min-dist" => Method::MinDist,
            "gamma" => Method::Gamma,
            other => return Err(Error::InvalidInput(format!("unknown method `{other}`"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::GvLowest => "gv-lowest",
            Method::GvMinabs => "gv-minabs",
            Method::MinNorm => "min-norm",
            Method::MinDist => "min-dist",
            Method::Gamma => "gamma",
        }
    }
}

/// Unit generator of a one-dimensional kernel, sign fixed so that its
/// largest-magnitude entry is positive.
pub fn kernel_direction(map: &LinearMap) -> Result<Vector> {
    if map.kernel().len() != 1 {
        return Err(Error::InvalidInput("g_v sections need a map with one-dimensional kernel".into()));
    }
    let v = map.kernel()[0].clone();
    let big = v.iter().cloned().fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
    Ok(if big < 0.0 { v.iter().map(|x| -x).collect() } else { v })
}

/// Endpoint section along `v` for any map whose kernel is spanned by `v`.
pub fn section_gv_with_map(
    body: &Body,
    map: &LinearMap,
    v: &[f64],
    y: &[f64],
    mode: GvMode,
    cfg: &ToolConfig,
) -> Result<FiberPoint> {
    let nv = norm(v);
    if nv == 0.0 {
        return Err(Error::ZeroDirection);
    }
    let fiber = make_fiber(body, map, y, cfg)?;
    let x0 = fiber.x0().to_vec();
    let ext = body.line_extent(&x0, v, cfg.extent_cap, cfg.membership_tol)?;
    match mode {
        GvMode::Lowest => {
            if ext.lo_clipped {
                return Err(Error::UnboundedBelow);
            }
            Ok(FiberPoint { point: axpy(&x0, ext.lo, v), clipped: false })
        }
        GvMode::MinAbs => {
            let xy = map.lift(fiber.target())?;
            let c = dot(&crate::linalg::sub(&x0, &xy), v) / (nv * nv);
            let (lo, hi) = (ext.lo + c, ext.hi + c);
            let (b, clipped) = if lo > 0.0 {
                (lo, ext.lo_clipped)
            } else if hi < 0.0 {
                (hi, ext.hi_clipped)
            } else {
                (0.0, false)
            };
            Ok(FiberPoint { point: axpy(&x0, b - c, v), clipped })
        }
    }
}

/// `g_v(y) = x + a v`, with `y` in the coordinates of the projection along
/// `v` (the remaining coordinates when `v` is an axis).
pub fn section_gv(body: &Body, v: &[f64], y: &[f64], mode: GvMode, cfg: &ToolConfig) -> Result<FiberPoint> {
    let tv = LinearMap::quotient_along(v)?;
    section_gv_with_map(body, &tv, v, y, mode, cfg)
}

/// Point of the fiber nearest to `anchor`.
pub fn section_min_norm(
    body: &Body,
    map: &LinearMap,
    y: &[f64],
    anchor: &[f64],
    cfg: &ToolConfig,
) -> Result<FiberPoint> {
    let fiber = make_fiber(body, map, y, cfg)?;
    min_norm_over_fiber(&fiber, anchor)
}

pub fn section_gamma(
    body: &Body,
    map: &LinearMap,
    y: &[f64],
    family: &FunctionalFamily,
    cfg: &ToolConfig,
) -> Result<FiberPoint> {
    let fiber = make_fiber(body, map, y, cfg)?;
    gamma_over_fiber(&fiber, family)
}

/// A body, a map and one construction: everything needed to evaluate a
/// section at a target.
#[derive(Clone, Debug)]
pub struct Section {
    pub body: Body,
    pub map: LinearMap,
    pub method: Method,
    pub family: FunctionalFamily,
    pub config: ToolConfig,
}

impl Section {
    pub fn new(body: Body, map: LinearMap, method: Method, config: ToolConfig) -> Result<Section> {
        crate::linalg::check_dim(map.cols(), body.dim())?;
        if matches!(method, Method::GvLowest | Method::GvMinabs) {
            kernel_direction(&map)?;
        }
        let family = FunctionalFamily::kernel_coordinates(&map);
        Ok(Section { body, map, method, family, config })
    }

    pub fn with_family(mut self, family: FunctionalFamily) -> Section {
        self.family = family;
        self
    }

    pub fn evaluate(&self, y: &[f64]) -> Result<FiberPoint> {
        let cfg = &self.config;
        match self.method {
            Method::GvLowest | Method::GvMinabs => {
                let v = kernel_direction(&self.map)?;
                let mode = if self.method == Method::GvLowest { GvMode::Lowest } else { GvMode::MinAbs };
                section_gv_with_map(&self.body, &self.map, &v, y, mode, cfg)
            }
            Method::MinNorm => section_min_norm(&self.body, &self.map, y, &vec![0.0; self.body.dim()], cfg),
            Method::MinDist => {
                let anchor = self.map.lift(y)?;
                section_min_norm(&self.body, &self.map, y, &anchor, cfg)
            }
            Method::Gamma => section_gamma(&self.body, &self.map, y, &self.family, cfg),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SectionProbe {
    pub path: Vec<Vector>,
    pub values: Vec<Vector>,
    pub clipped: Vec<bool>,
    pub jumps: Vec<f64>,
    pub max_jump: f64,
    pub argmax: usize,
}

impl SectionProbe {
    fn rebuild(path: Vec<Vector>, vals: Vec<FiberPoint>) -> SectionProbe {
        let jumps: Vec<f64> = vals.windows(2).map(|w| dist(&w[0].point, &w[1].point)).collect();
        let (argmax, max_jump) = jumps
            .iter()
            .enumerate()
            .fold((0, 0.0), |(bi, bv), (i, &j)| if j > bv { (i, j) } else { (bi, bv) });
        SectionProbe {
            path,
            clipped: vals.iter().map(|v| v.clipped).collect(),
            values: vals.into_iter().map(|v| v.point).collect(),
            jumps,
            max_jump,
            argmax,
        }
    }
}

/// Evaluate the section along `path`; then `refine` times insert the
/// midpoint of the interval with the largest jump.
pub fn probe_continuity(section: &Section, path: &[Vector], refine: usize) -> Result<SectionProbe> {
    let eval = |i: usize, y: &[f64]| {
        section.evaluate(y).map_err(|e| Error::AtPathIndex { index: i, source: Box::new(e) })
    };
    let mut pts: Vec<Vector> = path.to_vec();
    let mut vals = Vec::with_capacity(path.len());
    for (i, y) in path.iter().enumerate() {
        vals.push(eval(i, y)?);
    }
    for _ in 0..refine {
        if pts.len() < 2 {
            break;
        }
        let k = (0..pts.len() - 1)
            .max_by(|&a, &b| {
                dist(&vals[a].point, &vals[a + 1].point).total_cmp(&dist(&vals[b].point, &vals[b + 1].point))
            })
            .expect("two points");
        let mid = midpoint(&pts[k], &pts[k + 1]);
        let v = eval(k + 1, &mid)?;
        pts.insert(k + 1, mid);
        vals.insert(k + 1, v);
    }
    Ok(SectionProbe::rebuild(pts, vals))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone() -> Body {
        Body::suspension(Body::ball(vec![1.0, 0.0], 1.0).unwrap(), 0.0, 1.0).unwrap()
    }

    fn cfg() -> ToolConfig {
        ToolConfig::default()
    }

    #[test]
    fn gv_on_cone() {
        let g = section_gv(&cone(), &[0.0, 0.0, 1.0], &[0.0, 0.0], GvMode::Lowest, &cfg()).unwrap();
        assert!(norm(&g.point) < 1e-9);
        let t: f64 = 0.3;
        let y = [1.0 - t.cos(), t.sin()];
        let g = section_gv(&cone(), &[0.0, 0.0, 1.0], &y, GvMode::Lowest, &cfg()).unwrap();
        assert!(dist(&g.point, &[y[0], y[1], 1.0]) < 1e-6);
    }

    #[test]
    fn gv_min_abs_on_square() {
        let g = section_gv(&Body::unit_square(), &[0.0, 1.0], &[0.5], GvMode::MinAbs, &cfg()).unwrap();
        assert!(dist(&g.point, &[0.5, 0.0]) < 1e-9);
    }

    #[test]
    fn gv_lowest_unbounded_below() {
        let half = Body::hpolytope(crate::linalg::Matrix::from_rows(&[vec![0.0, 1.0]]).unwrap(), vec![0.0]).unwrap();
        let e = section_gv(&half, &[0.0, 1.0], &[0.0], GvMode::Lowest, &cfg()).unwrap_err();
        assert_eq!(e, Error::UnboundedBelow);
    }

    #[test]
    fn min_norm_off_origin_ball_chord() {
        // chord x = 1.2, y = 0, |z| ≤ 0.6; the norm is smallest at z = 0
        let b = Body::ball(vec![2.0, 0.0, 0.0], 1.0).unwrap();
        let t = LinearMap::from_rows(&[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
        let g = section_min_norm(&b, &t, &[1.2, 0.0], &[0.0; 3], &cfg()).unwrap();
        assert!(dist(&g.point, &[1.2, 0.0, 0.0]) < 1e-7);
    }

    #[test]
    fn min_norm_on_boundary_when_kernel_points_at_center() {
        let b = Body::ball(vec![2.0, 0.0, 0.0], 1.0).unwrap();
        let t = LinearMap::from_rows(&[vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]).unwrap();
        let g = section_min_norm(&b, &t, &[0.3, -0.4], &[0.0; 3], &cfg()).unwrap();
        assert!((dist(&g.point, &[2.0, 0.0, 0.0]) - 1.0).abs() < 1e-9);
        assert!((g.point[0] - (2.0 - 0.75f64.sqrt())).abs() < 2e-9);
    }

    #[test]
    fn probe_cone_jump() {
        let t = LinearMap::from_rows(&[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
        let s = Section::new(cone(), t, Method::GvLowest, cfg()).unwrap();
        let mut path: Vec<Vector> = (0..=50)
            .map(|k| {
                let t = 1.0 - 0.99 * k as f64 / 50.0;
                vec![1.0 - t.cos(), t.sin()]
            })
            .collect();
        path.push(vec![0.0, 0.0]);
        let p = probe_continuity(&s, &path, 0).unwrap();
        assert_eq!(p.argmax, 50);
        assert!(p.max_jump >= 0.99 && p.max_jump <= 1.01, "{}", p.max_jump);
    }
}
