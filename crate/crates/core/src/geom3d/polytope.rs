//! Convex polytopes as triangulated vertex hulls.

use super::hull::convex_hull3;
use crate::error::{GeomError, Result};
use crate::la::Vec3;
use std::collections::HashMap;

/// A convex polytope: hull vertices plus a triangulated facet list with
/// outward unit normals, support offsets and facet areas.
#[derive(Debug, Clone)]
pub struct Polytope3 {
    verts: Vec<Vec3>,
    faces: Vec<[usize; 3]>,
    normals: Vec<Vec3>,
    offsets: Vec<f64>,
    areas: Vec<f64>,
    centroid: Vec3,
}

impl Polytope3 {
    /// Hull the input points and build facet data.
    pub fn from_points(points: &[Vec3]) -> Result<Polytope3> {
        let mesh = convex_hull3(points)?;
        Self::from_mesh(mesh.vertices, mesh.faces)
    }

    fn from_mesh(verts: Vec<Vec3>, faces: Vec<[usize; 3]>) -> Result<Polytope3> {
        let centroid = verts.iter().sum::<Vec3>() / verts.len() as f64;
        let mut normals = Vec::with_capacity(faces.len());
        let mut offsets = Vec::with_capacity(faces.len());
        let mut areas = Vec::with_capacity(faces.len());
        for f in &faces {
            let cr = (verts[f[1]] - verts[f[0]]).cross(&(verts[f[2]] - verts[f[0]]));
            let a2 = cr.norm();
            if a2 <= 0.0 {
                return Err(GeomError::Degenerate("zero-area hull facet".into()));
            }
            let nrm = cr / a2;
            let face_centroid = (verts[f[0]] + verts[f[1]] + verts[f[2]]) / 3.0;
            if nrm.dot(&(face_centroid - centroid)) <= 0.0 {
                return Err(GeomError::Internal("inward facet normal".into()));
            }
            normals.push(nrm);
            offsets.push(nrm.dot(&verts[f[0]]));
            areas.push(0.5 * a2);
        }
        Ok(Polytope3 { verts, faces, normals, offsets, areas, centroid })
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.verts
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn face_normals(&self) -> &[Vec3] {
        &self.normals
    }

    pub fn face_areas(&self) -> &[f64] {
        &self.areas
    }

    pub fn centroid(&self) -> Vec3 {
        self.centroid
    }

    pub fn scale(&self) -> f64 {
        self.verts.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn support(&self, u: Vec3) -> f64 {
        self.verts.iter().map(|v| v.dot(&u)).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn origin_interior(&self) -> bool {
        self.offsets.iter().all(|&c| c > 0.0)
    }

    pub fn gauge(&self, x: Vec3) -> Result<f64> {
        let mut g: f64 = 0.0;
        for (nrm, &c) in self.normals.iter().zip(self.offsets.iter()) {
            if c <= 0.0 {
                return Err(GeomError::Precondition(
                    "gauge needs the origin interior to the polytope".into(),
                ));
            }
            g = g.max(nrm.dot(&x) / c);
        }
        Ok(g.max(0.0))
    }

    /// Signed tetrahedra sum from the centroid; exact for the triangulation.
    pub fn volume(&self) -> f64 {
        let c = self.centroid;
        let mut six_v = 0.0;
        for f in &self.faces {
            six_v += (self.verts[f[0]] - c)
                .cross(&(self.verts[f[1]] - c))
                .dot(&(self.verts[f[2]] - c));
        }
        six_v / 6.0
    }

    /// Facets merged by supporting plane: (unit normal, offset, total area).
    pub fn merged_planes(&self) -> Vec<(Vec3, f64, f64)> {
        let scale = self.scale().max(1e-300);
        let quant = |v: f64| (v / (1e-7 * scale)).round() as i64;
        let mut groups: HashMap<(i64, i64, i64, i64), usize> = HashMap::new();
        let mut planes: Vec<(Vec3, f64, f64)> = Vec::new();
        for i in 0..self.faces.len() {
            let n = self.normals[i];
            let key = (quant(n.x * scale), quant(n.y * scale), quant(n.z * scale), quant(self.offsets[i]));
            match groups.get(&key) {
                Some(&gi) => planes[gi].2 += self.areas[i],
                None => {
                    groups.insert(key, planes.len());
                    planes.push((n, self.offsets[i], self.areas[i]));
                }
            }
        }
        planes
    }

    /// Polar polytope: merged facet planes map to vertices n/c, re-hulled.
    pub fn polar(&self) -> Result<Polytope3> {
        let mut pv = Vec::new();
        for (n, c, _) in self.merged_planes() {
            if c <= 0.0 {
                return Err(GeomError::Precondition(
                    "polar needs the origin interior to the polytope".into(),
                ));
            }
            pv.push(n / c);
        }
        Polytope3::from_points(&pv)
    }

    /// Dilation by t > 0 (keeps the hull topology).
    pub fn scale_by(&self, t: f64) -> Polytope3 {
        Polytope3 {
            verts: self.verts.iter().map(|v| v * t).collect(),
            faces: self.faces.clone(),
            normals: self.normals.clone(),
            offsets: self.offsets.iter().map(|c| c * t).collect(),
            areas: self.areas.iter().map(|a| a * t * t).collect(),
            centroid: self.centroid * t,
        }
    }

    /// Vertex set closed under negation, within tolerance.
    pub fn is_symmetric(&self) -> bool {
        let tol = 1e-9 * self.scale();
        self.verts
            .iter()
            .all(|v| self.verts.iter().any(|w| (*w + *v).norm() <= tol))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cube() -> Polytope3 {
        let mut v = Vec::new();
        for &x in &[-1.0, 1.0] {
            for &y in &[-1.0, 1.0] {
                for &z in &[-1.0, 1.0] {
                    v.push(Vec3::new(x, y, z));
                }
            }
        }
        Polytope3::from_points(&v).unwrap()
    }

    pub(crate) fn octahedron() -> Polytope3 {
        let mut pts = Vec::new();
        for i in 0..3 {
            let mut e = Vec3::zeros();
            e[i] = 1.0;
            pts.push(e);
            pts.push(-e);
        }
        Polytope3::from_points(&pts).unwrap()
    }

    #[test]
    fn cube_volume_and_support() {
        let c = cube();
        assert!((c.volume() - 8.0).abs() < 1e-12);
        assert!((c.support(Vec3::new(1.0, 1.0, 1.0)) - 3.0).abs() < 1e-12);
        assert!((c.gauge(Vec3::new(0.5, -1.0, 0.25)).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(c.merged_planes().len(), 6);
    }

    #[test]
    fn octahedron_volume() {
        assert!((octahedron().volume() - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn cube_polar_is_octahedron() {
        let p = cube().polar().unwrap();
        assert_eq!(p.vertices().len(), 6);
        assert!((p.volume() - 4.0 / 3.0).abs() < 1e-12);
        // involution
        let pp = p.polar().unwrap();
        assert!((pp.volume() - 8.0).abs() < 1e-10);
        for v in pp.vertices() {
            assert!(cube().vertices().iter().any(|w| (v - w).norm() < 1e-9));
        }
    }

    #[test]
    fn symmetric_flag() {
        assert!(cube().is_symmetric());
        let t = Polytope3::from_points(&[
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(0.0, 0.0, 1.0),
        ])
        .unwrap();
        assert!(!t.is_symmetric());
    }
}
