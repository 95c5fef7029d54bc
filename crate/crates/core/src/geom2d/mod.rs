//! Planar convex bodies and the basic convex-geometry operations:
//! support, gauge, area, polar, difference body, boundary parameterization.
//!
//! A body is one of three representations:
//! * `Polygon2D` — exact paths (shoelace area, vertex/edge polar, exact
//!   Minkowski sums),
//! * `SupportSampled2D` — a smooth body given by support samples on a
//!   uniform angular grid (spectral paths),
//! * `Ellipse2D` — closed-form paths.

pub mod ellipse;
pub mod polygon;
pub mod sampled;

pub use ellipse::Ellipse2D;
pub use polygon::{convex_hull2, minkowski_sum, Polygon2D};
pub use sampled::SupportSampled2D;

use crate::error::{GeomError, Result};
use crate::la::{unit, Mat2, Vec2};
use serde::{Deserialize, Serialize};

/// Planar convex body (tagged union over the three representations).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "Body2DRaw", into = "Body2DRaw")]
pub enum Body2D {
    Polygon(Polygon2D),
    Sampled(SupportSampled2D),
    Ellipse(Ellipse2D),
}

/// A boundary point produced by the support-angle parameterization.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryPoint2D {
    /// Parameter angle in [0, 2pi).
    pub x: f64,
    pub point: Vec2,
    /// Unit tangent; for smooth bodies this is gamma'(x)/|gamma'(x)|.
    pub tangent: Vec2,
}

impl Body2D {
    pub fn polygon(verts: Vec<Vec2>) -> Result<Body2D> {
        Ok(Body2D::Polygon(Polygon2D::new(verts)?))
    }

    pub fn unit_disk_sampled(n: usize) -> Body2D {
        Body2D::Sampled(SupportSampled2D::new(vec![1.0; n]).unwrap())
    }

    /// Body scale max_theta h (the circumradius for bodies containing 0).
    pub fn scale(&self) -> f64 {
        match self {
            Body2D::Polygon(p) => p.scale(),
            Body2D::Sampled(s) => s.scale(),
            Body2D::Ellipse(e) => e.scale(),
        }
    }

    /// Support function h(u) = max_{x in K} <u, x>. Errors on u = 0.
    pub fn support(&self, u: Vec2) -> Result<f64> {
        if u.norm() == 0.0 {
            return Err(GeomError::Domain("support direction must be nonzero".into()));
        }
        Ok(match self {
            Body2D::Polygon(p) => p.support(u),
            Body2D::Sampled(s) => s.support(u),
            Body2D::Ellipse(e) => e.support(u),
        })
    }

    /// Minkowski functional min {t >= 0 : x in tK}; requires 0 interior.
    pub fn gauge(&self, x: Vec2) -> Result<f64> {
        match self {
            Body2D::Polygon(p) => p.gauge(x),
            Body2D::Sampled(s) => Ok(s.gauge(x)),
            Body2D::Ellipse(e) => Ok(e.gauge(x)),
        }
    }

    pub fn area(&self) -> f64 {
        match self {
            Body2D::Polygon(p) => p.area(),
            Body2D::Sampled(s) => s.area(),
            Body2D::Ellipse(e) => e.area(),
        }
    }

    /// Polar body K° = {x : <y,x> <= 1 for all y in K}; requires 0 interior.
    pub fn polar(&self) -> Result<Body2D> {
        match self {
            Body2D::Polygon(p) => Ok(Body2D::Polygon(p.polar()?)),
            Body2D::Sampled(s) => Ok(Body2D::Sampled(s.polar()?)),
            Body2D::Ellipse(e) => Ok(Body2D::Ellipse(e.polar())),
        }
    }

    /// Polar with a refined sample grid on the sampled path (exact paths are
    /// unaffected); used where the polar's interpolant must track the true
    /// polar boundary to near machine precision.
    pub fn polar_refined(&self, m: usize) -> Result<Body2D> {
        match self {
            Body2D::Sampled(s) => Ok(Body2D::Sampled(s.polar_with_samples(m)?)),
            other => other.polar(),
        }
    }

    /// Central symmetral (K - K)/2. Centrally symmetric bodies return
    /// themselves; polygons go through the exact Minkowski sum.
    pub fn difference_body(&self) -> Result<Body2D> {
        match self {
            Body2D::Polygon(p) => {
                if p.is_symmetric() {
                    return Ok(Body2D::Polygon(p.clone()));
                }
                // negation is a half-turn, so vertex order stays counterclockwise
                let neg = Polygon2D::new(p.vertices().iter().map(|v| -v).collect())?;
                let sum = minkowski_sum(p, &neg)?;
                let half: Vec<Vec2> = sum.vertices().iter().map(|v| 0.5 * v).collect();
                Ok(Body2D::Polygon(Polygon2D::new(half)?))
            }
            Body2D::Sampled(s) => Ok(Body2D::Sampled(s.symmetral())),
            Body2D::Ellipse(e) => Ok(Body2D::Ellipse(*e)),
        }
    }

    /// Central symmetry K = -K (exact for ellipses; tolerance-checked
    /// otherwise).
    pub fn is_symmetric(&self) -> bool {
        match self {
            Body2D::Polygon(p) => p.is_symmetric(),
            Body2D::Sampled(s) => s.is_symmetric(),
            Body2D::Ellipse(_) => true,
        }
    }

    /// Boundary point for the support angle x. For polygons the supporting
    /// vertex is returned (edge ties resolve to the face midpoint).
    pub fn boundary_point(&self, x: f64) -> BoundaryPoint2D {
        let x = x.rem_euclid(std::f64::consts::TAU);
        let (point, tangent) = match self {
            Body2D::Polygon(p) => (p.support_point(x), unit(x + std::f64::consts::FRAC_PI_2)),
            Body2D::Sampled(s) => s.boundary(x),
            Body2D::Ellipse(e) => e.boundary(x),
        };
        BoundaryPoint2D { x, point, tangent }
    }

    /// Exact counterclockwise rotation by 90 degrees.
    pub fn rotate90(&self) -> Body2D {
        match self {
            Body2D::Polygon(p) => Body2D::Polygon(p.rotate90()),
            Body2D::Sampled(s) => Body2D::Sampled(s.rotate90()),
            Body2D::Ellipse(e) => Body2D::Ellipse(e.rotate90()),
        }
    }

    /// Image under an invertible linear map.
    pub fn linear_image(&self, m: Mat2) -> Result<Body2D> {
        match self {
            Body2D::Polygon(p) => Ok(Body2D::Polygon(p.linear_image(m)?)),
            Body2D::Sampled(s) => Ok(Body2D::Sampled(s.linear_image(m)?)),
            Body2D::Ellipse(e) => Ok(Body2D::Ellipse(e.linear_image(m)?)),
        }
    }

    /// Dilation by t > 0.
    pub fn scale_by(&self, t: f64) -> Result<Body2D> {
        if !(t > 0.0) {
            return Err(GeomError::Domain("scale factor must be positive".into()));
        }
        self.linear_image(Mat2::new(t, 0.0, 0.0, t))
    }

    /// True when the origin is strictly interior.
    pub fn origin_interior(&self) -> bool {
        match self {
            Body2D::Polygon(p) => p.origin_interior(),
            // sampled/ellipse bodies always contain the origin (h > 0)
            _ => true,
        }
    }
}

// ---------------------------------------------------------------------------
// JSON wire format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(tag = "type")]
enum Body2DRaw {
    #[serde(rename = "polygon2d")]
    Polygon { vertices: Vec<[f64; 2]> },
    #[serde(rename = "support2d")]
    Support { n: usize, h: Vec<f64>, symmetric: bool },
    #[serde(rename = "ellipse2d")]
    Ellipse { a: f64, b: f64, phi: f64 },
}

impl TryFrom<Body2DRaw> for Body2D {
    type Error = GeomError;
    fn try_from(raw: Body2DRaw) -> Result<Body2D> {
        match raw {
            Body2DRaw::Polygon { vertices } => {
                Body2D::polygon(vertices.into_iter().map(|[x, y]| Vec2::new(x, y)).collect())
            }
            Body2DRaw::Support { n, h, symmetric } => {
                if n != h.len() {
                    return Err(GeomError::InvalidBody(format!(
                        "sample count field n={n} does not match {} samples",
                        h.len()
                    )));
                }
                Ok(Body2D::Sampled(SupportSampled2D::with_flag(h, symmetric)?))
            }
            Body2DRaw::Ellipse { a, b, phi } => Ok(Body2D::Ellipse(Ellipse2D::new(a, b, phi)?)),
        }
    }
}

impl From<Body2D> for Body2DRaw {
    fn from(b: Body2D) -> Body2DRaw {
        match b {
            Body2D::Polygon(p) => Body2DRaw::Polygon {
                vertices: p.vertices().iter().map(|v| [v.x, v.y]).collect(),
            },
            Body2D::Sampled(s) => Body2DRaw::Support {
                n: s.sample_count(),
                h: s.samples().to_vec(),
                symmetric: s.is_symmetric(),
            },
            Body2D::Ellipse(e) => Body2DRaw::Ellipse { a: e.a, b: e.b, phi: e.phi },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    pub(crate) fn square() -> Body2D {
        Body2D::polygon(vec![
            Vec2::new(1.0, -1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(-1.0, 1.0),
            Vec2::new(-1.0, -1.0),
        ])
        .unwrap()
    }

    fn tri() -> Body2D {
        Body2D::polygon(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.5),
            Vec2::new(0.5, 1.0),
        ])
        .unwrap()
    }

    fn diamond() -> Body2D {
        Body2D::polygon(vec![
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(-1.0, 0.0),
            Vec2::new(0.0, -1.0),
        ])
        .unwrap()
    }

    #[test]
    fn support_examples() {
        let disk = Body2D::Ellipse(Ellipse2D::circle(1.0).unwrap());
        assert!((disk.support(Vec2::new(0.0, 1.0)).unwrap() - 1.0).abs() < 1e-15);
        assert!((square().support(Vec2::new(1.0, 1.0)).unwrap() - 2.0).abs() < 1e-15);
        // brute scan over the triangle's vertices
        let u = Vec2::new(1.0, -1.0);
        let brute = [(0.0, 0.0), (1.0, 0.5), (0.5, 1.0)]
            .iter()
            .map(|&(x, y)| u.dot(&Vec2::new(x, y)))
            .fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(brute, 0.5);
        assert!((tri().support(u).unwrap() - 0.5).abs() < 1e-15);
        assert!(disk.support(Vec2::zeros()).is_err());
    }

    #[test]
    fn gauge_examples() {
        assert!((diamond().gauge(Vec2::new(0.25, 0.25)).unwrap() - 0.5).abs() < 1e-15);
        assert!((square().gauge(Vec2::new(0.5, -1.0)).unwrap() - 1.0).abs() < 1e-15);
        // origin not interior
        assert!(tri().gauge(Vec2::new(0.1, 0.1)).is_err());
    }

    #[test]
    fn difference_body_examples() {
        // symmetric body maps to itself
        let d = diamond().difference_body().unwrap();
        assert!((d.area() - 2.0).abs() < 1e-12);
        // triangle: symmetric hexagon of area 9/16
        let h = tri().difference_body().unwrap();
        assert!(h.is_symmetric());
        assert!((h.area() - 9.0 / 16.0).abs() < 1e-12);
        if let Body2D::Polygon(p) = &h {
            assert_eq!(p.vertices().len(), 6);
        } else {
            panic!("expected polygon");
        }
    }

    #[test]
    fn boundary_point_examples() {
        let disk = Body2D::unit_disk_sampled(256);
        let bp = disk.boundary_point(PI / 2.0);
        assert!((bp.point - Vec2::new(0.0, 1.0)).norm() < 1e-10);
        assert!((bp.tangent - Vec2::new(-1.0, 0.0)).norm() < 1e-10);
        let sq = square();
        let bp = sq.boundary_point(PI / 4.0);
        assert!((bp.point - Vec2::new(1.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let bodies = vec![square(), tri(), Body2D::unit_disk_sampled(64)];
        for b in bodies {
            let s = serde_json::to_string(&b).unwrap();
            let back: Body2D = serde_json::from_str(&s).unwrap();
            assert!((b.area() - back.area()).abs() < 1e-15);
        }
        // malformed flag is rejected
        let bad = r#"{"type":"support2d","n":8,"h":[1,1,1,1,1,1,1,1],"symmetric":false}"#;
        assert!(serde_json::from_str::<Body2D>(bad).is_err());
    }

    #[test]
    fn polar_involution_on_squares() {
        let p = square().polar().unwrap().polar().unwrap();
        if let (Body2D::Polygon(a), Body2D::Polygon(b)) = (&square(), &p) {
            for v in a.vertices() {
                assert!(b.vertices().iter().any(|w| (v - w).norm() < 1e-9));
            }
        }
    }
}
