//! Inline values on the command line: number lists, maps and paths.

use anyhow::{anyhow, bail, Context, Result};
use convex_lnc::{LinearMap, Vector};

pub fn list(s: &str) -> Result<Vector> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().with_context(|| format!("bad number `{t}` in `{s}`")))
        .collect()
}

fn rows(s: &str) -> Result<Vec<Vector>> {
    s.split(';').map(list).collect()
}

fn unit_row(n: usize, idx: &[usize]) -> Result<Vector> {
    let mut r = vec![0.0; n];
    for &i in idx {
        if i >= n {
            bail!("map refers to coordinate {i} of a body in R^{n}");
        }
        r[i] = 1.0;
    }
    Ok(r)
}

/// `proj-xy`, `x`, `y`, `x+y`, a JSON matrix `[[..],[..]]`, or rows
/// separated by `;` with entries separated by `,`.
pub fn map(spec: &str, n: usize) -> Result<LinearMap> {
    let m = match spec.trim() {
        "proj-xy" => vec![unit_row(n, &[0])?, unit_row(n, &[1])?],
        "x" => vec![unit_row(n, &[0])?],
        "y" => vec![unit_row(n, &[1])?],
        "x+y" => vec![unit_row(n, &[0, 1])?],
        s if s.starts_with('[') => serde_json::from_str(s).context("map is not a JSON matrix")?,
        s => rows(s)?,
    };
    if m.iter().any(|r| r.len() != n) {
        bail!("map rows must have {n} entries");
    }
    LinearMap::from_rows(&m).map_err(|e| anyhow!("{e}"))
}

/// `points:Y;Y;..`, `segment:A;B;STEPS` or `circle:CX,CY,R,T0,T1,STEPS`
/// (the point `c + R(cos t, sin t)`); both ends included.
pub fn path(spec: &str) -> Result<Vec<Vector>> {
    let (kind, rest) = spec.split_once(':').ok_or_else(|| anyhow!("path needs a kind: `{spec}`"))?;
    match kind {
        "points" => rows(rest),
        "segment" => {
            let parts: Vec<&str> = rest.split(';').collect();
            if parts.len() != 3 {
                bail!("segment path is `segment:A;B;STEPS`");
            }
            let (a, b) = (list(parts[0])?, list(parts[1])?);
            if a.len() != b.len() {
                bail!("segment ends differ in dimension");
            }
            let k: usize = parts[2].trim().parse().context("bad step count")?;
            if k == 0 {
                bail!("step count must be positive");
            }
            Ok((0..=k)
                .map(|i| {
                    let s = i as f64 / k as f64;
                    a.iter().zip(&b).map(|(x, y)| x + s * (y - x)).collect()
                })
                .collect())
        }
        "circle" => {
            let v = list(rest)?;
            if v.len() != 6 || v[5] < 1.0 || v[5].fract() != 0.0 {
                bail!("circle path is `circle:CX,CY,R,T0,T1,STEPS`");
            }
            let k = v[5] as usize;
            Ok((0..=k)
                .map(|i| {
                    let t = v[3] + (v[4] - v[3]) * i as f64 / k as f64;
                    vec![v[0] + v[2] * t.cos(), v[1] + v[2] * t.sin()]
                })
                .collect())
        }
        other => bail!("unknown path kind `{other}`"),
    }
}

/// `LO;HI` corner lists.
pub fn search_box(spec: &str) -> Result<(Vector, Vector)> {
    let r = rows(spec)?;
    if r.len() != 2 || r[0].len() != r[1].len() {
        bail!("box is `LO;HI` with equal lengths");
    }
    Ok((r[0].clone(), r[1].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_maps() {
        assert_eq!(map("proj-xy", 3).unwrap().matrix().row(1), &[0.0, 1.0, 0.0]);
        assert_eq!(map("x+y", 2).unwrap().matrix().row(0), &[1.0, 1.0]);
        assert_eq!(map("1,0,2;0,1,0", 3).unwrap().matrix().row(0), &[1.0, 0.0, 2.0]);
        assert_eq!(map("[[0,0,1]]", 3).unwrap().rows(), 1);
        assert!(map("y", 1).is_err());
        assert!(map("1,2", 3).is_err());
    }

    #[test]
    fn paths() {
        let p = path("segment:0.1;0.9;4").unwrap();
        assert_eq!(p.len(), 5);
        assert!((p[2][0] - 0.5).abs() < 1e-15);
        let c = path("circle:0,0,1,0,3.141592653589793,2").unwrap();
        assert!((c[1][1] - 1.0).abs() < 1e-15);
        assert_eq!(path("points:1,2;3,4").unwrap(), vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
        assert!(path("spiral:1").is_err());
        assert!(path("segment:0;1;0").is_err());
    }

    #[test]
    fn lists_and_boxes() {
        assert_eq!(list("1, -2.5").unwrap(), vec![1.0, -2.5]);
        assert!(list("1,a").is_err());
        assert_eq!(search_box("0,0;1,2").unwrap().1, vec![1.0, 2.0]);
        assert!(search_box("0;1,2").is_err());
    }
}
