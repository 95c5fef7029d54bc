//! Strictly convex polygons with exact-path operations.

use crate::error::{GeomError, Result};
use crate::la::{det2, rot90, unit, Vec2};

/// Tolerance scale for construction checks, relative to the body scale.
const EPS_REL: f64 = 1e-12;

/// A strictly convex polygon, vertices in counterclockwise order.
#[derive(Debug, Clone)]
pub struct Polygon2D {
    verts: Vec<Vec2>,
    /// Cumulative arc length up to vertex i (cum[0] = 0), plus total perimeter.
    cum: Vec<f64>,
    perimeter: f64,
}

impl Polygon2D {
    /// Validates and builds: at least 3 vertices, counterclockwise, strictly
    /// convex, no repeated vertices, non-degenerate area.
    pub fn new(verts: Vec<Vec2>) -> Result<Self> {
        let n = verts.len();
        if n < 3 {
            return Err(GeomError::InvalidBody(format!(
                "polygon needs at least 3 vertices, got {n}"
            )));
        }
        let scale = verts.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if scale <= 0.0 {
            return Err(GeomError::Degenerate("all vertices at the origin".into()));
        }
        for i in 0..n {
            let e = verts[(i + 1) % n] - verts[i];
            if e.norm() <= EPS_REL * scale {
                return Err(GeomError::InvalidBody(format!("repeated vertex at index {i}")));
            }
        }
        let mut area2 = 0.0;
        for i in 0..n {
            let a = verts[i];
            let b = verts[(i + 1) % n];
            area2 += det2(a, b);
        }
        if area2 < 0.0 {
            return Err(GeomError::InvalidBody(
                "vertices are clockwise; counterclockwise order required".into(),
            ));
        }
        if 0.5 * area2 < EPS_REL * scale * scale {
            return Err(GeomError::Degenerate(format!(
                "polygon area {} below degeneracy threshold",
                0.5 * area2
            )));
        }
        for i in 0..n {
            let e0 = verts[(i + 1) % n] - verts[i];
            let e1 = verts[(i + 2) % n] - verts[(i + 1) % n];
            if det2(e0, e1) <= EPS_REL * scale * scale {
                return Err(GeomError::Degenerate(format!(
                    "near-collinear edges at vertex {}",
                    (i + 1) % n
                )));
            }
        }
        let mut cum = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        for i in 0..n {
            cum.push(acc);
            acc += (verts[(i + 1) % n] - verts[i]).norm();
        }
        cum.push(acc);
        Ok(Polygon2D { verts, cum, perimeter: acc })
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.verts
    }

    pub fn scale(&self) -> f64 {
        self.verts.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn area(&self) -> f64 {
        let n = self.verts.len();
        let mut area2 = 0.0;
        for i in 0..n {
            area2 += det2(self.verts[i], self.verts[(i + 1) % n]);
        }
        0.5 * area2
    }

    pub fn support(&self, u: Vec2) -> f64 {
        self.verts.iter().map(|v| v.dot(&u)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Outward edge normals and support values c_i (edge i runs v_i -> v_{i+1}).
    pub fn edges(&self) -> impl Iterator<Item = (Vec2, f64)> + '_ {
        let n = self.verts.len();
        (0..n).map(move |i| {
            let e = self.verts[(i + 1) % n] - self.verts[i];
            let nrm = Vec2::new(e.y, -e.x).normalize();
            (nrm, nrm.dot(&self.verts[i]))
        })
    }

    pub fn origin_interior(&self) -> bool {
        self.edges().all(|(_, c)| c > 0.0)
    }

    /// Minkowski functional; requires the origin in the interior.
    pub fn gauge(&self, x: Vec2) -> Result<f64> {
        let mut g: f64 = 0.0;
        for (nrm, c) in self.edges() {
            if c <= 0.0 {
                return Err(GeomError::Precondition(
                    "gauge needs the origin interior to the polygon".into(),
                ));
            }
            g = g.max(nrm.dot(&x) / c);
        }
        Ok(g.max(0.0))
    }

    /// Polar polygon: edge (n_i, c_i) maps to vertex n_i / c_i.
    pub fn polar(&self) -> Result<Polygon2D> {
        let mut pv = Vec::with_capacity(self.verts.len());
        for (nrm, c) in self.edges() {
            if c <= 0.0 {
                return Err(GeomError::Precondition(
                    "polar needs the origin interior to the polygon".into(),
                ));
            }
            pv.push(nrm / c);
        }
        Polygon2D::new(pv)
    }

    /// Counterclockwise rotation by 90 degrees.
    pub fn rotate90(&self) -> Polygon2D {
        let verts = self.verts.iter().map(|v| rot90(*v)).collect();
        Polygon2D::new(verts).expect("rotation preserves validity")
    }

    /// Image under an invertible linear map (vertex order flipped if the map
    /// reverses orientation).
    pub fn linear_image(&self, m: crate::la::Mat2) -> Result<Polygon2D> {
        let det = m.determinant();
        if det.abs() <= EPS_REL {
            return Err(GeomError::Degenerate("singular linear map".into()));
        }
        let mut verts: Vec<Vec2> = self.verts.iter().map(|v| m * v).collect();
        if det < 0.0 {
            verts.reverse();
        }
        Polygon2D::new(verts)
    }

    /// Vertex set closed under negation, within tolerance.
    pub fn is_symmetric(&self) -> bool {
        let tol = 1e-9 * self.scale();
        self.verts.iter().all(|v| {
            self.verts.iter().any(|w| (*w + *v).norm() <= tol)
        })
    }

    /// Boundary point by normalized arc length, tau in [0, 1).
    /// Returns (point, unit tangent along the walk direction).
    pub fn at_arc(&self, tau: f64) -> (Vec2, Vec2) {
        let n = self.verts.len();
        let s = (tau.rem_euclid(1.0)) * self.perimeter;
        // locate edge by binary search on cum
        let mut lo = 0usize;
        let mut hi = n;
        while lo + 1 < hi {
            let mid = (lo + hi) / 2;
            if self.cum[mid] <= s {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let a = self.verts[lo];
        let b = self.verts[(lo + 1) % n];
        let e = b - a;
        let len = e.norm();
        let t = ((s - self.cum[lo]) / len).clamp(0.0, 1.0);
        (a + e * t, e / len)
    }

    /// Normalized arc coordinate of a point lying on edge `edge`.
    pub fn arc_on_edge(&self, edge: usize, p: Vec2) -> f64 {
        let s = self.cum[edge] + (p - self.verts[edge]).norm();
        (s / self.perimeter).rem_euclid(1.0)
    }

    /// Support point at angle x: the unique supporting vertex, or the
    /// midpoint of the supporting edge when the direction ties two vertices.
    pub fn support_point(&self, x: f64) -> Vec2 {
        let u = unit(x);
        let tol = 1e-12 * self.scale().max(1.0);
        let mut best = f64::NEG_INFINITY;
        for v in &self.verts {
            best = best.max(v.dot(&u));
        }
        let attaining: Vec<Vec2> = self
            .verts
            .iter()
            .copied()
            .filter(|v| v.dot(&u) >= best - tol)
            .collect();
        if attaining.len() >= 2 {
            // supporting set is an edge; deterministic tie-break: face midpoint
            let mut lo = attaining[0];
            let mut hi = attaining[0];
            for v in &attaining {
                let t = rot90(u).dot(v);
                if t < rot90(u).dot(&lo) {
                    lo = *v;
                }
                if t > rot90(u).dot(&hi) {
                    hi = *v;
                }
            }
            0.5 * (lo + hi)
        } else {
            attaining[0]
        }
    }

    /// Merge consecutive collinear edges (used after Minkowski sums).
    pub(crate) fn merged_collinear(verts: Vec<Vec2>) -> Vec<Vec2> {
        let n = verts.len();
        let scale = verts.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let tol = 1e-10 * scale * scale;
        let mut out: Vec<Vec2> = Vec::with_capacity(n);
        for i in 0..n {
            let prev = verts[(i + n - 1) % n];
            let cur = verts[i];
            let next = verts[(i + 1) % n];
            if det2(cur - prev, next - cur).abs() > tol {
                out.push(cur);
            }
        }
        out
    }
}

/// Minkowski sum of two strictly convex polygons by the edge-merge walk.
pub fn minkowski_sum(p: &Polygon2D, q: &Polygon2D) -> Result<Polygon2D> {
    let pv = start_at_bottom(p.vertices());
    let qv = start_at_bottom(q.vertices());
    let (np, nq) = (pv.len(), qv.len());
    let mut out = Vec::with_capacity(np + nq);
    let (mut i, mut j) = (0usize, 0usize);
    let mut cur = pv[0] + qv[0];
    while i < np || j < nq {
        out.push(cur);
        let ep = pv[(i + 1) % np] - pv[i % np];
        let eq = qv[(j + 1) % nq] - qv[j % nq];
        if i == np {
            cur += eq;
            j += 1;
        } else if j == nq {
            cur += ep;
            i += 1;
        } else {
            let cross = det2(ep, eq);
            if cross > 0.0 {
                cur += ep;
                i += 1;
            } else if cross < 0.0 {
                cur += eq;
                j += 1;
            } else {
                // parallel edges advance together
                cur += ep + eq;
                i += 1;
                j += 1;
            }
        }
    }
    Polygon2D::new(Polygon2D::merged_collinear(out))
}

/// Rotate the vertex list to start at the bottom-most (then left-most) vertex,
/// so edge direction angles increase monotonically over one loop.
fn start_at_bottom(verts: &[Vec2]) -> Vec<Vec2> {
    let mut k = 0;
    for (i, v) in verts.iter().enumerate() {
        let b = verts[k];
        if v.y < b.y - 1e-15 || (v.y <= b.y + 1e-15 && v.x < b.x) {
            k = i;
        }
    }
    let mut out = Vec::with_capacity(verts.len());
    out.extend_from_slice(&verts[k..]);
    out.extend_from_slice(&verts[..k]);
    out
}

/// 2D convex hull (monotone chain); returns counterclockwise vertices with
/// near-duplicate and collinear points dropped. Errors when the hull is
/// degenerate.
///
/// The chain pops on the exact turn sign; tolerance cleanup happens after
/// concatenation. Popping with a positive tolerance inside the chain is
/// unsound when the input carries jittered duplicates of extreme points
/// (hairpin turns of measure ~eps collapse onto the wrong side).
pub fn convex_hull2(points: &[Vec2]) -> Result<Polygon2D> {
    let mut pts: Vec<Vec2> = points.to_vec();
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    pts.dedup_by(|a, b| (*a - *b).norm() == 0.0);
    let n = pts.len();
    if n < 3 {
        return Err(GeomError::Degenerate("fewer than 3 distinct points".into()));
    }
    let scale = pts.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1e-300);
    let build = |iter: &mut dyn Iterator<Item = Vec2>| {
        let mut chain: Vec<Vec2> = Vec::new();
        for p in iter {
            while chain.len() >= 2
                && det2(chain[chain.len() - 1] - chain[chain.len() - 2], p - chain[chain.len() - 1])
                    <= 0.0
            {
                chain.pop();
            }
            chain.push(p);
        }
        chain
    };
    let lower = build(&mut pts.iter().copied());
    let upper = build(&mut pts.iter().rev().copied());
    let mut hull = lower;
    hull.pop();
    hull.extend(upper);
    hull.pop();
    // merge vertices closer than the duplicate threshold (wrap-around too),
    // then drop collinear runs
    let dup = 1e-12 * scale;
    let mut merged: Vec<Vec2> = Vec::with_capacity(hull.len());
    for p in hull {
        if merged.last().map_or(true, |q| (p - q).norm() > dup) {
            merged.push(p);
        }
    }
    while merged.len() > 1 && (merged[0] - *merged.last().unwrap()).norm() <= dup {
        merged.pop();
    }
    Polygon2D::new(Polygon2D::merged_collinear(merged))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Polygon2D {
        Polygon2D::new(vec![
            Vec2::new(1.0, -1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(-1.0, 1.0),
            Vec2::new(-1.0, -1.0),
        ])
        .unwrap()
    }

    fn tri() -> Polygon2D {
        Polygon2D::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.5),
            Vec2::new(0.5, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn rejects_degenerate() {
        assert!(Polygon2D::new(vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0)]).is_err());
        // collinear
        assert!(Polygon2D::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(2.0, 0.0),
        ])
        .is_err());
        // clockwise
        assert!(Polygon2D::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(1.0, 0.0),
        ])
        .is_err());
        // segment-degenerate (repeated vertices)
        assert!(Polygon2D::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(1.0, 1.0),
        ])
        .is_err());
    }

    #[test]
    fn square_support_and_gauge() {
        let s = square();
        assert_eq!(s.support(Vec2::new(1.0, 1.0)), 2.0);
        assert!((s.gauge(Vec2::new(0.5, -1.0)).unwrap() - 1.0).abs() < 1e-15);
        assert!((s.area() - 4.0).abs() < 1e-15);
    }

    #[test]
    fn triangle_area_is_three_eighths() {
        assert!((tri().area() - 0.375).abs() < 1e-15);
    }

    #[test]
    fn square_polar_is_diamond() {
        let d = square().polar().unwrap();
        assert!((d.area() - 2.0).abs() < 1e-12);
        for v in d.vertices() {
            assert!((v.norm() - 1.0).abs() < 1e-12);
            assert!((v.x.abs() - 1.0).abs() < 1e-12 || (v.y.abs() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rotate90_triangle() {
        let t = Polygon2D::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
        ])
        .unwrap()
        .rotate90();
        let expect = [Vec2::new(0.0, 0.0), Vec2::new(0.0, 1.0), Vec2::new(-1.0, 0.0)];
        for (v, e) in t.vertices().iter().zip(expect.iter()) {
            assert!((v - e).norm() < 1e-15);
        }
    }

    #[test]
    fn minkowski_triangle_with_negation_gives_hexagon() {
        let t = tri();
        let neg = Polygon2D::new(t.vertices().iter().map(|v| -v).collect()).unwrap();
        let sum = minkowski_sum(&t, &neg).unwrap();
        assert_eq!(sum.vertices().len(), 6);
        assert!((sum.area() - 2.25).abs() < 1e-12); // |T - T| = 6 |T|
    }

    #[test]
    fn support_point_square_diagonal_is_vertex() {
        let s = square();
        let p = s.support_point(std::f64::consts::FRAC_PI_4);
        assert!((p - Vec2::new(1.0, 1.0)).norm() < 1e-12);
        // axis direction ties an edge: midpoint returned
        let q = s.support_point(0.0);
        assert!((q - Vec2::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn hull_of_noisy_square() {
        let mut pts = vec![
            Vec2::new(1.0, 1.0),
            Vec2::new(-1.0, 1.0),
            Vec2::new(-1.0, -1.0),
            Vec2::new(1.0, -1.0),
        ];
        for k in 0..50 {
            let t = k as f64 * 0.1;
            pts.push(Vec2::new(0.8 * t.cos(), 0.8 * t.sin()));
        }
        let h = convex_hull2(&pts).unwrap();
        assert_eq!(h.vertices().len(), 4);
        assert!((h.area() - 4.0).abs() < 1e-12);
    }
}
