//! Deterministic SVG rendering of a body tiled by a lattice.

use nonsep_core::geom2d::Body2D;
use nonsep_core::la::Vec2;
use nonsep_core::lattice::Lattice2;
use std::fmt::Write;

/// Points along the body boundary used for the outline path.
fn outline(body: &Body2D) -> Vec<Vec2> {
    match body {
        Body2D::Polygon(p) => p.vertices().to_vec(),
        _ => (0..256)
            .map(|k| {
                body.boundary_point(k as f64 * std::f64::consts::TAU / 256.0)
                    .point
            })
            .collect(),
    }
}

/// Renders the translates x + K for x in the 5x5 block of lattice points
/// around the origin, with the lattice points marked. Output bytes are a
/// deterministic function of the inputs.
pub fn figure_svg(body: &Body2D, lattice: &Lattice2) -> String {
    let pts = outline(body);
    let mut centers = Vec::new();
    for i in -2i64..=2 {
        for j in -2i64..=2 {
            centers.push(lattice.point([i, j]));
        }
    }
    let mut min = Vec2::new(f64::INFINITY, f64::INFINITY);
    let mut max = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for c in &centers {
        for p in &pts {
            let q = c + p;
            min.x = min.x.min(q.x);
            min.y = min.y.min(q.y);
            max.x = max.x.max(q.x);
            max.y = max.y.max(q.y);
        }
    }
    let pad = 0.05 * (max - min).norm().max(1e-9);
    let (w, h) = (max.x - min.x + 2.0 * pad, max.y - min.y + 2.0 * pad);
    let mut out = String::new();
    // y axis flipped so the picture is in the usual orientation
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.4} {:.4} {:.4} {:.4}\">",
        min.x - pad,
        -max.y - pad,
        w,
        h
    );
    let _ = writeln!(
        out,
        "<g fill=\"#9ecae1\" fill-opacity=\"0.55\" stroke=\"#2171b5\" stroke-width=\"{:.4}\">",
        0.004 * w
    );
    for c in &centers {
        let mut d = String::new();
        for (k, p) in pts.iter().enumerate() {
            let q = c + p;
            let _ = write!(d, "{}{:.4},{:.4} ", if k == 0 { "M" } else { "L" }, q.x, -q.y);
        }
        let _ = writeln!(out, "<path d=\"{}Z\"/>", d);
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "<g fill=\"#08306b\">");
    for c in &centers {
        let _ = writeln!(
            out,
            "<circle cx=\"{:.4}\" cy=\"{:.4}\" r=\"{:.4}\"/>",
            c.x,
            -c.y,
            0.01 * w
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_bytes() {
        let body = Body2D::polygon(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.5),
            Vec2::new(0.5, 1.0),
        ])
        .unwrap();
        let lat = Lattice2::standard();
        let a = figure_svg(&body, &lat);
        let b = figure_svg(&body, &lat);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert_eq!(a.matches("<path").count(), 25);
    }
}
