//! Randomized incremental 3D convex hull with tolerance-based orientation
//! predicates (adaptive threshold 1e-12 * scale^3).

use crate::bodygen::SplitMix64;
use crate::error::{GeomError, Result};
use crate::la::Vec3;
use std::collections::HashMap;

pub struct HullMesh {
    pub vertices: Vec<Vec3>,
    pub faces: Vec<[usize; 3]>,
}

#[inline]
fn orient(a: Vec3, b: Vec3, c: Vec3, d: Vec3) -> f64 {
    (b - a).cross(&(c - a)).dot(&(d - a))
}

/// Convex hull of at least 4 affinely independent points. Faces come out
/// triangulated and consistently oriented (outward when walked
/// counterclockwise seen from outside).
pub fn convex_hull3(points: &[Vec3]) -> Result<HullMesh> {
    let n = points.len();
    if n < 4 {
        return Err(GeomError::InvalidBody(format!("hull needs >= 4 points, got {n}")));
    }
    let scale = points
        .iter()
        .map(|p| p.amax())
        .fold(0.0, f64::max)
        .max(1e-300);
    let tol = 1e-12 * scale * scale * scale;

    let (i0, i1, i2, i3) = initial_simplex(points, scale)?;
    let interior = (points[i0] + points[i1] + points[i2] + points[i3]) / 4.0;

    let orient_face = |f: [usize; 3], p: Vec3| orient(points[f[0]], points[f[1]], points[f[2]], p);
    let fix = |f: [usize; 3]| -> [usize; 3] {
        if orient_face(f, interior) < 0.0 {
            f
        } else {
            [f[0], f[2], f[1]]
        }
    };
    let mut faces: Vec<[usize; 3]> = vec![
        fix([i0, i1, i2]),
        fix([i0, i1, i3]),
        fix([i0, i2, i3]),
        fix([i1, i2, i3]),
    ];

    // deterministic shuffled insertion order
    let mut order: Vec<usize> = (0..n).filter(|&i| i != i0 && i != i1 && i != i2 && i != i3).collect();
    let mut rng = SplitMix64::new(0x9e37_79b9_7f4a_7c15);
    for i in (1..order.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        order.swap(i, j);
    }

    for &pi in &order {
        let p = points[pi];
        let visible: Vec<usize> = (0..faces.len())
            .filter(|&fi| orient_face(faces[fi], p) > tol)
            .collect();
        if visible.is_empty() {
            continue;
        }
        let vis_set: Vec<bool> = {
            let mut v = vec![false; faces.len()];
            for &fi in &visible {
                v[fi] = true;
            }
            v
        };
        // map directed edge -> owning face
        let mut edge_face: HashMap<(usize, usize), usize> = HashMap::new();
        for (fi, f) in faces.iter().enumerate() {
            for e in 0..3 {
                edge_face.insert((f[e], f[(e + 1) % 3]), fi);
            }
        }
        // horizon = directed edges of visible faces whose twin face is hidden
        let mut new_faces: Vec<[usize; 3]> = Vec::new();
        for &fi in &visible {
            let f = faces[fi];
            for e in 0..3 {
                let (a, b) = (f[e], f[(e + 1) % 3]);
                match edge_face.get(&(b, a)) {
                    Some(&tw) if vis_set[tw] => {}
                    Some(_) => new_faces.push(fix([a, b, pi])),
                    None => {
                        return Err(GeomError::Internal(
                            "hull surface lost edge twin".into(),
                        ))
                    }
                }
            }
        }
        let mut keep: Vec<[usize; 3]> = faces
            .iter()
            .enumerate()
            .filter(|(fi, _)| !vis_set[*fi])
            .map(|(_, f)| *f)
            .collect();
        keep.extend(new_faces);
        faces = keep;
    }

    // closed oriented surface: every directed edge appears exactly once and
    // its twin exists
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    for f in &faces {
        for e in 0..3 {
            *seen.entry((f[e], f[(e + 1) % 3])).or_insert(0) += 1;
        }
    }
    for (&(a, b), &cnt) in &seen {
        if cnt != 1 || !seen.contains_key(&(b, a)) {
            return Err(GeomError::Internal("hull surface is not a closed 2-manifold".into()));
        }
    }
    // containment: every input point on or below every face plane
    for f in &faces {
        let nrm = (points[f[1]] - points[f[0]]).cross(&(points[f[2]] - points[f[0]]));
        let nn = nrm.norm();
        if nn <= tol {
            return Err(GeomError::Internal("degenerate hull face".into()));
        }
        let unit = nrm / nn;
        let c = unit.dot(&points[f[0]]);
        for p in points {
            if unit.dot(p) > c + 1e-9 * scale {
                return Err(GeomError::Internal("input point escapes hull".into()));
            }
        }
    }

    // compact vertex set
    let mut remap: HashMap<usize, usize> = HashMap::new();
    let mut vertices = Vec::new();
    let mut out_faces = Vec::with_capacity(faces.len());
    for f in &faces {
        let mut g = [0usize; 3];
        for e in 0..3 {
            let idx = *remap.entry(f[e]).or_insert_with(|| {
                vertices.push(points[f[e]]);
                vertices.len() - 1
            });
            g[e] = idx;
        }
        out_faces.push(g);
    }
    Ok(HullMesh { vertices, faces: out_faces })
}

fn initial_simplex(points: &[Vec3], scale: f64) -> Result<(usize, usize, usize, usize)> {
    let n = points.len();
    // extreme along x (ties by lexicographic order for determinism)
    let key = |p: &Vec3| (p.x, p.y, p.z);
    let i0 = (0..n).min_by(|&a, &b| key(&points[a]).partial_cmp(&key(&points[b])).unwrap()).unwrap();
    let i1 = (0..n)
        .max_by(|&a, &b| {
            let da = (points[a] - points[i0]).norm();
            let db = (points[b] - points[i0]).norm();
            (da, key(&points[a])).partial_cmp(&(db, key(&points[b]))).unwrap()
        })
        .unwrap();
    if (points[i1] - points[i0]).norm() <= 1e-12 * scale {
        return Err(GeomError::Degenerate("all points coincide".into()));
    }
    let dir = points[i1] - points[i0];
    let i2 = (0..n)
        .max_by(|&a, &b| {
            let da = dir.cross(&(points[a] - points[i0])).norm();
            let db = dir.cross(&(points[b] - points[i0])).norm();
            (da, key(&points[a])).partial_cmp(&(db, key(&points[b]))).unwrap()
        })
        .unwrap();
    if dir.cross(&(points[i2] - points[i0])).norm() <= 1e-12 * scale * scale {
        return Err(GeomError::Degenerate("points are collinear".into()));
    }
    let i3 = (0..n)
        .max_by(|&a, &b| {
            let da = orient(points[i0], points[i1], points[i2], points[a]).abs();
            let db = orient(points[i0], points[i1], points[i2], points[b]).abs();
            (da, key(&points[a])).partial_cmp(&(db, key(&points[b]))).unwrap()
        })
        .unwrap();
    if orient(points[i0], points[i1], points[i2], points[i3]).abs()
        <= 1e-12 * scale * scale * scale
    {
        return Err(GeomError::Degenerate("points are coplanar".into()));
    }
    Ok((i0, i1, i2, i3))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube_corners() -> Vec<Vec3> {
        let mut v = Vec::new();
        for &x in &[-1.0, 1.0] {
            for &y in &[-1.0, 1.0] {
                for &z in &[-1.0, 1.0] {
                    v.push(Vec3::new(x, y, z));
                }
            }
        }
        v
    }

    #[test]
    fn cube_hull_has_12_triangles() {
        let mesh = convex_hull3(&cube_corners()).unwrap();
        assert_eq!(mesh.vertices.len(), 8);
        assert_eq!(mesh.faces.len(), 12);
    }

    #[test]
    fn octahedron_hull() {
        let mut pts = Vec::new();
        for i in 0..3 {
            let mut e = Vec3::zeros();
            e[i] = 1.0;
            pts.push(e);
            pts.push(-e);
        }
        pts.push(Vec3::new(0.1, 0.1, 0.1)); // interior point dropped
        let mesh = convex_hull3(&pts).unwrap();
        assert_eq!(mesh.vertices.len(), 6);
        assert_eq!(mesh.faces.len(), 8);
    }

    #[test]
    fn coplanar_rejected() {
        let pts = vec![
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(1.0, 1.0, 0.0),
            Vec3::new(0.3, 0.7, 0.0),
        ];
        assert!(convex_hull3(&pts).is_err());
    }

    #[test]
    fn sphere_points_all_retained() {
        let mut pts = Vec::new();
        for k in 0..100 {
            let z = -1.0 + 2.0 * (k as f64 + 0.5) / 100.0;
            let r = (1.0 - z * z).sqrt();
            let t = 2.399963229728653 * k as f64;
            pts.push(Vec3::new(r * t.cos(), r * t.sin(), z));
        }
        let mesh = convex_hull3(&pts).unwrap();
        assert_eq!(mesh.vertices.len(), 100);
        // Euler: V - E + F = 2 with E = 3F/2
        assert_eq!(mesh.faces.len(), 2 * 100 - 4);
    }
}
