//! JSON description of bodies: a `"kind"` tag with nested combinators.

use serde::{Deserialize, Serialize};

use super::Body;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BodySpec {
    Hpolytope { a: Vec<Vector>, b: Vector },
    Vpolytope { vertices: Vec<Vector> },
    Ball { center: Vector, radius: f64 },
    Ellipsoid { center: Vector, shape: Vec<Vector> },
    Zonotope { center: Vector, generators: Vec<Vector> },
    Psdcap2,
    Epigraph19,
    Intersection { left: Box<BodySpec>, right: Box<BodySpec> },
    Product { left: Box<BodySpec>, right: Box<BodySpec> },
    AffineImage { map: Vec<Vector>, offset: Vector, body: Box<BodySpec> },
    Translate { shift: Vector, body: Box<BodySpec> },
    Suspension {
        base: Box<BodySpec>,
        #[serde(default)]
        offset: f64,
        #[serde(default = "unit")]
        height: f64,
    },
}

fn unit() -> f64 {
    1.0
}

impl BodySpec {
    pub fn build(&self) -> Result<Body> {
        match self {
            BodySpec::Hpolytope { a, b } => Body::hpolytope(Matrix::from_rows(a)?, b.clone()),
            BodySpec::Vpolytope { vertices } => Body::vpolytope(vertices.clone()),
            BodySpec::Ball { center, radius } => Body::ball(center.clone(), *radius),
            BodySpec::Ellipsoid { center, shape } => Body::ellipsoid(center.clone(), Matrix::from_rows(shape)?),
            BodySpec::Zonotope { center, generators } => Body::zonotope(center.clone(), generators.clone()),
            BodySpec::Psdcap2 => Ok(Body::psd_cap2()),
            BodySpec::Epigraph19 => Ok(Body::epigraph19()),
            BodySpec::Intersection { left, right } => Body::intersection(left.build()?, right.build()?),
            BodySpec::Product { left, right } => Ok(Body::product(left.build()?, right.build()?)),
            BodySpec::AffineImage { map, offset, body } => {
                Body::affine_image(Matrix::from_rows(map)?, offset.clone(), body.build()?)
            }
            BodySpec::Translate { shift, body } => Body::translate(body.build()?, shift.clone()),
            BodySpec::Suspension { base, offset, height } => Body::suspension(base.build()?, *offset, *height),
        }
    }

    pub fn of(body: &Body) -> BodySpec {
        match body {
            Body::HPolytope(h) => BodySpec::Hpolytope { a: h.a().row_vecs(), b: h.b().to_vec() },
            Body::VPolytope(v) => BodySpec::Vpolytope { vertices: v.vertices().to_vec() },
            Body::Ellipsoid(e) => match e.radius() {
                Some(r) => BodySpec::Ball { center: e.center().to_vec(), radius: r },
                None => BodySpec::Ellipsoid { center: e.center().to_vec(), shape: e.shape().row_vecs() },
            },
            Body::Zonotope(z) => {
                BodySpec::Zonotope { center: z.center().to_vec(), generators: z.generators().to_vec() }
            }
            Body::PsdCap2(_) => BodySpec::Psdcap2,
            Body::Epigraph19(_) => BodySpec::Epigraph19,
            Body::Intersection(i) => {
                let (l, r) = i.parts();
                BodySpec::Intersection { left: Box::new(Self::of(l)), right: Box::new(Self::of(r)) }
            }
            Body::Product(l, r) => BodySpec::Product { left: Box::new(Self::of(l)), right: Box::new(Self::of(r)) },
            Body::AffineImage(a) => BodySpec::AffineImage {
                map: a.map().row_vecs(),
                offset: a.offset().to_vec(),
                body: Box::new(Self::of(a.body())),
            },
            Body::Translate(b, w) => BodySpec::Translate { shift: w.clone(), body: Box::new(Self::of(b)) },
            Body::Suspension(s) => BodySpec::Suspension {
                base: Box::new(Self::of(s.base())),
                offset: s.offset(),
                height: s.height(),
            },
        }
    }
}

pub fn parse_body(json: &str) -> Result<Body> {
    let spec: BodySpec = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    spec.build()
}

pub fn body_to_json(body: &Body) -> String {
    serde_json::to_string(&BodySpec::of(body)).expect("body spec serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested_suspension() {
        let b = parse_body(
            r#"{"kind":"suspension","base":{"kind":"ball","center":[1,0],"radius":1}}"#,
        )
        .unwrap();
        assert_eq!(b.dim(), 3);
        assert!(b.contains(&[0.0, 0.0, 0.0], 1e-9));
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(parse_body("{\"kind\":\"ball\"}"), Err(Error::Parse(_))));
        assert!(matches!(parse_body("not json"), Err(Error::Parse(_))));
        assert!(parse_body(r#"{"kind":"ball","center":[0],"radius":-1}"#).is_err());
    }

    #[test]
    fn round_trip_is_exact() {
        let json = r#"{"kind":"translate","shift":[0.1,0.30000000000000004],"body":{"kind":"zonotope","center":[1e-17,2.5],"generators":[[0.3333333333333333,1],[0,1]]}}"#;
        let b = parse_body(json).unwrap();
        let out = body_to_json(&b);
        let again: BodySpec = serde_json::from_str(&out).unwrap();
        let orig: BodySpec = serde_json::from_str(json).unwrap();
        assert_eq!(again, orig);
    }
}
