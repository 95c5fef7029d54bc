//! 3D convex bodies: polytopes (hull paths), balls and axis-aligned
//! ellipsoids (analytic paths); convex hulls, volumes, polars, central
//! sections, projection bodies, and the Santalo/Petty numerical checks.

pub mod hull;
pub mod polytope;
pub mod sphere;
pub mod zonotope;

pub use hull::convex_hull3;
pub use polytope::Polytope3;
pub use sphere::{SphereGrid, COARSE_NODES, FINE_NODES};
pub use zonotope::Zonotope3;

use crate::error::{GeomError, Result};
use crate::geom2d::{convex_hull2, Body2D, Ellipse2D};
use crate::la::{sym_eigen2, Vec2, Vec3};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Petty's constant for n = 3: |(Pi B)°| |B|^2 = 64/27.
pub const PETTY_BALL_CONSTANT: f64 = 64.0 / 27.0;

/// A 3D convex body.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "Body3DRaw", into = "Body3DRaw")]
pub enum Body3D {
    Polytope(Polytope3),
    Ball { r: f64 },
    Ellipsoid { a: f64, b: f64, c: f64 },
}

/// A central planar section together with the orthonormal frame (e1, e2) of
/// the cutting plane it is expressed in.
#[derive(Debug, Clone)]
pub struct Section {
    pub body: Body2D,
    pub e1: Vec3,
    pub e2: Vec3,
}

/// Projection body of a `Body3D`: a zonotope for polytopes, an ellipsoid
/// (possibly a ball) for the analytic representations.
#[derive(Debug, Clone)]
pub enum ProjectionBody {
    Zonotope(Zonotope3),
    Ellipsoid { a: f64, b: f64, c: f64 },
}

impl ProjectionBody {
    pub fn support(&self, u: Vec3) -> f64 {
        match self {
            ProjectionBody::Zonotope(z) => z.support(u),
            ProjectionBody::Ellipsoid { a, b, c } => {
                (a * a * u.x * u.x + b * b * u.y * u.y + c * c * u.z * u.z).sqrt()
            }
        }
    }
}

impl Body3D {
    pub fn polytope(points: Vec<Vec3>) -> Result<Body3D> {
        Ok(Body3D::Polytope(Polytope3::from_points(&points)?))
    }

    pub fn ball(r: f64) -> Result<Body3D> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(GeomError::InvalidBody("ball radius must be positive".into()));
        }
        Ok(Body3D::Ball { r })
    }

    pub fn ellipsoid(a: f64, b: f64, c: f64) -> Result<Body3D> {
        if !(a > 0.0 && b > 0.0 && c > 0.0) || !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(GeomError::InvalidBody("ellipsoid semi-axes must be positive".into()));
        }
        Ok(Body3D::Ellipsoid { a, b, c })
    }

    pub fn cube(half_side: f64) -> Body3D {
        let s = half_side;
        let mut v = Vec::new();
        for &x in &[-s, s] {
            for &y in &[-s, s] {
                for &z in &[-s, s] {
                    v.push(Vec3::new(x, y, z));
                }
            }
        }
        Body3D::polytope(v).unwrap()
    }

    pub fn octahedron(r: f64) -> Body3D {
        let mut pts = Vec::new();
        for i in 0..3 {
            let mut e = Vec3::zeros();
            e[i] = r;
            pts.push(e);
            pts.push(-e);
        }
        Body3D::polytope(pts).unwrap()
    }

    pub fn scale(&self) -> f64 {
        match self {
            Body3D::Polytope(p) => p.scale(),
            Body3D::Ball { r } => *r,
            Body3D::Ellipsoid { a, b, c } => a.max(*b).max(*c),
        }
    }

    pub fn support(&self, u: Vec3) -> Result<f64> {
        if u.norm() == 0.0 {
            return Err(GeomError::Domain("support direction must be nonzero".into()));
        }
        Ok(match self {
            Body3D::Polytope(p) => p.support(u),
            Body3D::Ball { r } => r * u.norm(),
            Body3D::Ellipsoid { a, b, c } => {
                (a * a * u.x * u.x + b * b * u.y * u.y + c * c * u.z * u.z).sqrt()
            }
        })
    }

    pub fn gauge(&self, x: Vec3) -> Result<f64> {
        match self {
            Body3D::Polytope(p) => p.gauge(x),
            Body3D::Ball { r } => Ok(x.norm() / r),
            Body3D::Ellipsoid { a, b, c } => {
                let p = x.x / a;
                let q = x.y / b;
                let s = x.z / c;
                Ok((p * p + q * q + s * s).sqrt())
            }
        }
    }

    pub fn volume(&self) -> f64 {
        match self {
            Body3D::Polytope(p) => p.volume(),
            Body3D::Ball { r } => 4.0 * PI / 3.0 * r * r * r,
            Body3D::Ellipsoid { a, b, c } => 4.0 * PI / 3.0 * a * b * c,
        }
    }

    pub fn polar(&self) -> Result<Body3D> {
        match self {
            Body3D::Polytope(p) => Ok(Body3D::Polytope(p.polar()?)),
            Body3D::Ball { r } => Body3D::ball(1.0 / r),
            Body3D::Ellipsoid { a, b, c } => Body3D::ellipsoid(1.0 / a, 1.0 / b, 1.0 / c),
        }
    }

    pub fn scale_by(&self, t: f64) -> Result<Body3D> {
        if !(t > 0.0) {
            return Err(GeomError::Domain("scale factor must be positive".into()));
        }
        Ok(match self {
            Body3D::Polytope(p) => Body3D::Polytope(p.scale_by(t)),
            Body3D::Ball { r } => Body3D::Ball { r: r * t },
            Body3D::Ellipsoid { a, b, c } => {
                Body3D::Ellipsoid { a: a * t, b: b * t, c: c * t }
            }
        })
    }

    pub fn is_symmetric(&self) -> bool {
        match self {
            Body3D::Polytope(p) => p.is_symmetric(),
            _ => true,
        }
    }

    pub fn origin_interior(&self) -> bool {
        match self {
            Body3D::Polytope(p) => p.origin_interior(),
            _ => true,
        }
    }

    /// Central symmetral (K - K)/2; polytopes go through the hull of pairwise
    /// vertex differences.
    pub fn difference_body(&self) -> Result<Body3D> {
        match self {
            Body3D::Polytope(p) => {
                if p.is_symmetric() {
                    return Ok(Body3D::Polytope(p.clone()));
                }
                let vs = p.vertices();
                let mut diffs = Vec::with_capacity(vs.len() * vs.len());
                for a in vs {
                    for b in vs {
                        diffs.push(0.5 * (a - b));
                    }
                }
                Body3D::polytope(diffs)
            }
            other => Ok(other.clone()),
        }
    }

    /// Shadow area |Pr_{u_perp} K|. For polytopes the area is computed two
    /// ways (Cauchy facet sum and 2D hull of projected vertices); the hull
    /// value is returned after checking the two agree.
    pub fn projected_area(&self, u: Vec3) -> Result<f64> {
        let n = u.norm();
        if n == 0.0 {
            return Err(GeomError::Domain("projection direction must be nonzero".into()));
        }
        let u = u / n;
        match self {
            Body3D::Polytope(p) => {
                let cauchy: f64 = 0.5
                    * p.face_normals()
                        .iter()
                        .zip(p.face_areas().iter())
                        .map(|(nf, af)| af * nf.dot(&u).abs())
                        .sum::<f64>();
                let (e1, e2) = plane_frame(u);
                let pts: Vec<Vec2> = p
                    .vertices()
                    .iter()
                    .map(|v| Vec2::new(e1.dot(v), e2.dot(v)))
                    .collect();
                let hull_area = convex_hull2(&pts)?.area();
                let s = p.scale();
                if (cauchy - hull_area).abs() > 1e-9 * (1.0 + s * s) {
                    return Err(GeomError::Internal(format!(
                        "projection area mismatch: cauchy {cauchy} vs hull {hull_area}"
                    )));
                }
                Ok(hull_area)
            }
            Body3D::Ball { r } => Ok(PI * r * r),
            Body3D::Ellipsoid { a, b, c } => {
                let q = b * c * u.x * b * c * u.x
                    + a * c * u.y * a * c * u.y
                    + a * b * u.z * a * b * u.z;
                Ok(PI * q.sqrt())
            }
        }
    }

    /// Projection body: generators (area/2) n_F over merged facets for
    /// polytopes; analytic ellipsoid for balls/ellipsoids.
    pub fn projection_body(&self) -> ProjectionBody {
        match self {
            Body3D::Polytope(p) => {
                let gens = p
                    .merged_planes()
                    .into_iter()
                    .map(|(n, _, area)| 0.5 * area * n)
                    .collect();
                ProjectionBody::Zonotope(Zonotope3::new(gens))
            }
            Body3D::Ball { r } => {
                let s = PI * r * r;
                ProjectionBody::Ellipsoid { a: s, b: s, c: s }
            }
            Body3D::Ellipsoid { a, b, c } => ProjectionBody::Ellipsoid {
                a: PI * b * c,
                b: PI * a * c,
                c: PI * a * b,
            },
        }
    }

    /// Intersection with the plane through the origin normal to `h`,
    /// expressed in the deterministic frame of `plane_frame(h)`.
    pub fn central_section(&self, h: Vec3) -> Result<Section> {
        let n = h.norm();
        if n == 0.0 {
            return Err(GeomError::Domain("section normal must be nonzero".into()));
        }
        let h = h / n;
        let (e1, e2) = plane_frame(h);
        let body = match self {
            Body3D::Polytope(p) => {
                if !p.origin_interior() {
                    return Err(GeomError::Precondition(
                        "central section needs the origin interior".into(),
                    ));
                }
                let verts = p.vertices();
                let d: Vec<f64> = verts.iter().map(|v| h.dot(v)).collect();
                let tol = 1e-12 * p.scale();
                let mut pts: Vec<Vec2> = Vec::new();
                for (v, &dv) in verts.iter().zip(d.iter()) {
                    if dv.abs() <= tol {
                        pts.push(Vec2::new(e1.dot(v), e2.dot(v)));
                    }
                }
                for f in p.faces() {
                    for e in 0..3 {
                        let (i, j) = (f[e], f[(e + 1) % 3]);
                        if (d[i] > tol && d[j] < -tol) || (d[i] < -tol && d[j] > tol) {
                            let t = d[i] / (d[i] - d[j]);
                            let x = verts[i] + t * (verts[j] - verts[i]);
                            pts.push(Vec2::new(e1.dot(&x), e2.dot(&x)));
                        }
                    }
                }
                Body2D::Polygon(convex_hull2(&pts)?)
            }
            Body3D::Ball { r } => Body2D::Ellipse(Ellipse2D::circle(*r)?),
            Body3D::Ellipsoid { a, b, c } => {
                // restrict diag(1/a^2,1/b^2,1/c^2) to span(e1,e2)
                let q = Vec3::new(1.0 / (a * a), 1.0 / (b * b), 1.0 / (c * c));
                let s11 = e1.component_mul(&q).dot(&e1);
                let s12 = e1.component_mul(&q).dot(&e2);
                let s22 = e2.component_mul(&q).dot(&e2);
                let ([l0, l1], [v0, _]) = sym_eigen2(s11, s12, s22);
                Body2D::Ellipse(Ellipse2D::new(
                    1.0 / l0.sqrt(),
                    1.0 / l1.sqrt(),
                    v0.y.atan2(v0.x).rem_euclid(PI),
                )?)
            }
        };
        Ok(Section { body, e1, e2 })
    }
}

/// Deterministic orthonormal frame of the plane normal to `h`:
/// e1 = normalize(e_k x h) with e_k the coordinate axis least aligned with h
/// (ties to the smallest index), e2 = h x e1.
pub fn plane_frame(h: Vec3) -> (Vec3, Vec3) {
    let mut k = 0;
    for i in 1..3 {
        if h[i].abs() < h[k].abs() {
            k = i;
        }
    }
    let mut ek = Vec3::zeros();
    ek[k] = 1.0;
    let e1 = ek.cross(&h).normalize();
    let e2 = h.cross(&e1).normalize();
    (e1, e2)
}

/// Polar volume from a support function sampled on a sphere grid:
/// |K°| = (1/3) sum w_i h(u_i)^{-3} (radial integration of 1/h^3).
pub fn polar_volume_radial(h: impl Fn(Vec3) -> f64, grid: &SphereGrid) -> f64 {
    grid.nodes
        .iter()
        .zip(grid.weights.iter())
        .map(|(u, w)| {
            let hv = h(*u);
            w / (3.0 * hv * hv * hv)
        })
        .sum()
}

/// Polar volume at the two standard grid resolutions; returns
/// (fine value, relative difference between grids).
pub fn polar_volume_radial_refined(h: impl Fn(Vec3) -> f64) -> (f64, f64) {
    let coarse = polar_volume_radial(&h, &SphereGrid::fibonacci(COARSE_NODES));
    let fine = polar_volume_radial(&h, &SphereGrid::fibonacci(FINE_NODES));
    (fine, (fine - coarse).abs() / fine.abs().max(1e-300))
}

/// Outcome of the Petty product check |(Pi K)°| |K|^2 <= 64/27.
#[derive(Debug, Clone, Serialize)]
pub struct PettyReport {
    pub product: f64,
    pub bound: f64,
    pub grid_rel_diff: f64,
    pub ok: bool,
}

/// Petty product for a body; polytopes use the zonotope projection body and
/// radial quadrature for its polar volume, analytic bodies are closed-form.
pub fn petty_check(body: &Body3D) -> Result<PettyReport> {
    let vol = body.volume();
    let (polar_vol, rel) = match body.projection_body() {
        ProjectionBody::Zonotope(z) => polar_volume_radial_refined(|u| z.support(u)),
        ProjectionBody::Ellipsoid { a, b, c } => (4.0 * PI / (3.0 * a * b * c), 0.0),
    };
    let product = polar_vol * vol * vol;
    Ok(PettyReport {
        product,
        bound: PETTY_BALL_CONSTANT,
        grid_rel_diff: rel,
        ok: product <= PETTY_BALL_CONSTANT * (1.0 + 1e-3),
    })
}

// ---------------------------------------------------------------------------
// JSON wire format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(tag = "type")]
enum Body3DRaw {
    #[serde(rename = "polytope3d")]
    Polytope { vertices: Vec<[f64; 3]> },
    #[serde(rename = "ball3d")]
    Ball { r: f64 },
    #[serde(rename = "ellipsoid3d")]
    Ellipsoid { a: f64, b: f64, c: f64 },
}

impl TryFrom<Body3DRaw> for Body3D {
    type Error = GeomError;
    fn try_from(raw: Body3DRaw) -> Result<Body3D> {
        match raw {
            Body3DRaw::Polytope { vertices } => Body3D::polytope(
                vertices.into_iter().map(|[x, y, z]| Vec3::new(x, y, z)).collect(),
            ),
            Body3DRaw::Ball { r } => Body3D::ball(r),
            Body3DRaw::Ellipsoid { a, b, c } => Body3D::ellipsoid(a, b, c),
        }
    }
}

impl From<Body3D> for Body3DRaw {
    fn from(b: Body3D) -> Body3DRaw {
        match b {
            Body3D::Polytope(p) => Body3DRaw::Polytope {
                vertices: p.vertices().iter().map(|v| [v.x, v.y, v.z]).collect(),
            },
            Body3D::Ball { r } => Body3DRaw::Ball { r },
            Body3D::Ellipsoid { a, b, c } => Body3DRaw::Ellipsoid { a, b, c },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_projection_examples() {
        let cube = Body3D::cube(1.0);
        assert!((cube.projected_area(Vec3::new(0.0, 0.0, 1.0)).unwrap() - 4.0).abs() < 1e-12);
        // diagonal shadow is a regular hexagon of area 4*sqrt(3)
        let d = Vec3::new(1.0, 1.0, 1.0).normalize();
        assert!((cube.projected_area(d).unwrap() - 4.0 * 3f64.sqrt()).abs() < 1e-10);
        // projection body support 4(|u1|+|u2|+|u3|)
        let pb = cube.projection_body();
        let u = Vec3::new(0.2, -0.5, 0.84).normalize();
        assert!(
            (pb.support(u) - 4.0 * (u.x.abs() + u.y.abs() + u.z.abs())).abs() < 1e-10
        );
    }

    #[test]
    fn octahedron_axis_shadow() {
        let oct = Body3D::octahedron(1.0);
        assert!((oct.projected_area(Vec3::new(0.0, 0.0, 1.0)).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn tetrahedron_facet_shadow_equals_facet_area() {
        let t = Body3D::polytope(vec![
            Vec3::new(1.0, 1.0, 1.0),
            Vec3::new(1.0, -1.0, -1.0),
            Vec3::new(-1.0, 1.0, -1.0),
            Vec3::new(-1.0, -1.0, 1.0),
        ])
        .unwrap();
        // facet opposite (1,1,1) has outward normal -(1,1,1)/sqrt(3)
        let n = Vec3::new(1.0, 1.0, 1.0).normalize();
        let area = t.projected_area(n).unwrap();
        if let Body3D::Polytope(p) = &t {
            let facet_area = p
                .merged_planes()
                .iter()
                .find(|(nf, _, _)| (nf + n).norm() < 1e-9)
                .map(|(_, _, a)| *a)
                .unwrap();
            assert!((area - facet_area).abs() < 1e-10);
        }
    }

    #[test]
    fn cube_sections() {
        let cube = Body3D::cube(1.0);
        let s = cube.central_section(Vec3::new(0.0, 0.0, 1.0)).unwrap();
        assert!((s.body.area() - 4.0).abs() < 1e-12);
        let oct = Body3D::octahedron(1.0);
        let s = oct.central_section(Vec3::new(1.0, 1.0, 1.0)).unwrap();
        // regular hexagon through the 6 edge midpoints: area 3*sqrt(3)/4 * (sqrt(2)/2)^2 * 2
        if let Body2D::Polygon(p) = &s.body {
            assert_eq!(p.vertices().len(), 6);
        } else {
            panic!("expected polygon section");
        }
        let ball = Body3D::ball(1.0).unwrap();
        let s = ball.central_section(Vec3::new(0.3, -0.8, 0.52)).unwrap();
        assert!((s.body.area() - PI).abs() < 1e-12);
    }

    #[test]
    fn ellipsoid_section_is_exact_ellipse() {
        let e = Body3D::ellipsoid(2.0, 1.0, 1.0).unwrap();
        let s = e.central_section(Vec3::new(0.0, 0.0, 1.0)).unwrap();
        // z = 0 section is the (2,1) ellipse
        assert!((s.body.area() - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn polar_volume_radial_examples() {
        let grid = SphereGrid::fibonacci(COARSE_NODES);
        // unit ball
        let v = polar_volume_radial(|_| 1.0, &grid);
        assert!((v - 4.0 * PI / 3.0).abs() < 1e-10);
        // scaled ball: h of pi*B gives volume (4/3) pi^{-2}
        let v = polar_volume_radial(|_| PI, &grid);
        assert!((v - 4.0 / (3.0 * PI * PI)).abs() < 1e-10);
        // cube [-4,4]^3 projection body polar: octahedron of volume 1/48
        let (v, rel) = polar_volume_radial_refined(|u| {
            4.0 * (u.x.abs() + u.y.abs() + u.z.abs())
        });
        assert!((v - 1.0 / 48.0).abs() / (1.0 / 48.0) < 1e-2);
        assert!(rel < 1e-3);
    }

    #[test]
    fn petty_cube_and_ball() {
        let report = petty_check(&Body3D::cube(1.0)).unwrap();
        assert!(report.ok);
        assert!((report.product - 4.0 / 3.0).abs() < 1e-3 * 4.0 / 3.0);
        let report = petty_check(&Body3D::ball(1.0).unwrap()).unwrap();
        assert!((report.product - PETTY_BALL_CONSTANT).abs() < 1e-12);
    }

    #[test]
    fn santalo_products() {
        let cube = Body3D::cube(1.0);
        let prod = cube.volume() * cube.polar().unwrap().volume();
        let ball_sq = (4.0 * PI / 3.0) * (4.0 * PI / 3.0);
        assert!(prod <= ball_sq);
        assert!((prod - 32.0 / 3.0).abs() < 1e-10); // 8 * 4/3
        let e = Body3D::ellipsoid(2.0, 1.0, 0.5).unwrap();
        let prod = e.volume() * e.polar().unwrap().volume();
        assert!((prod - ball_sq).abs() < 1e-10);
    }

    #[test]
    fn json_round_trip() {
        let bodies = vec![
            Body3D::cube(1.0),
            Body3D::ball(2.0).unwrap(),
            Body3D::ellipsoid(2.0, 1.0, 0.5).unwrap(),
        ];
        for b in bodies {
            let s = serde_json::to_string(&b).unwrap();
            let back: Body3D = serde_json::from_str(&s).unwrap();
            assert!((b.volume() - back.volume()).abs() < 1e-12);
        }
    }

    #[test]
    fn frame_is_orthonormal_and_deterministic() {
        for &h in &[
            Vec3::new(0.0, 0.0, 1.0),
            Vec3::new(1.0, 1.0, 1.0).normalize(),
            Vec3::new(-0.3, 0.9, 0.1).normalize(),
        ] {
            let (e1, e2) = plane_frame(h);
            assert!(e1.dot(&e2).abs() < 1e-12);
            assert!(e1.dot(&h).abs() < 1e-12);
            assert!(e2.dot(&h).abs() < 1e-12);
            assert!((e1.cross(&e2) - h).norm() < 1e-12);
        }
    }
}
