fn main() {
    use nonsep_core::geom3d::Body3D;
    use nonsep_core::la::{Vec2, Vec3};
    let b = Body3D::octahedron(1.0);
    let kp = b.polar().unwrap();
    let h = Vec3::new(6.217102184205069e-12, 1.0533604040198933e-8, 1.0).normalize();
    let Body3D::Polytope(p) = &kp else { unreachable!() };
    let (e1, e2) = nonsep_core::geom3d::plane_frame(h);
    let verts = p.vertices();
    let d: Vec<f64> = verts.iter().map(|v| h.dot(v)).collect();
    let tol = 1e-12 * p.scale();
    let mut pts: Vec<Vec2> = Vec::new();
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
    let mut sorted = pts.clone();
    sorted.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    for q in &sorted { println!("[{:+.17e}, {:+.17e}]", q.x, q.y); }
}
