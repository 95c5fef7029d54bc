//! Executable verification of the tangential-offset area identity and the
//! tangent-chord inequality machinery.
//!
//! For a smooth periodic curve gamma with |gamma'| > 0 and a periodic scalar
//! offset l, the curve Gamma(t) = gamma(t) + l(t) gamma'(t)/|gamma'(t)|
//! satisfies
//!
//!   (1/2) int det(Gamma, Gamma') - (1/2) int det(gamma, gamma')
//!       = (1/2) int l^2 / |gamma'|^2 det(gamma', gamma'').
//!
//! Applied to the support-angle parameterization of a rotated copy of a
//! symmetric body inside its polar, the offsets are tangent-chord lengths
//! and the identity becomes an area gap statement used by the chord-gap
//! report.

use crate::critical2d::minimal_central_triangle_with;
use crate::error::{GeomError, Result};
use crate::geom2d::Body2D;
use crate::la::{det2, unit, Vec2};
use crate::trig::{periodic_trapezoid, TrigSeries};
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, TAU};

/// A sampled smooth curve gamma plus a periodic scalar offset on the same
/// grid. Invariant: |gamma'| > 0 at every node.
#[derive(Debug, Clone)]
pub struct PerturbedCurve {
    gamma: Vec<Vec2>,
    offset: Vec<f64>,
    sx: TrigSeries,
    sy: TrigSeries,
}

impl PerturbedCurve {
    pub fn new(gamma: Vec<Vec2>, offset: Vec<f64>) -> Result<Self> {
        let n = gamma.len();
        if n < 8 || !n.is_power_of_two() {
            return Err(GeomError::InvalidBody(format!(
                "curve sample count must be a power of two >= 8, got {n}"
            )));
        }
        if offset.len() != n {
            return Err(GeomError::InvalidBody(
                "offset samples must match the curve grid".into(),
            ));
        }
        let xs: Vec<f64> = gamma.iter().map(|p| p.x).collect();
        let ys: Vec<f64> = gamma.iter().map(|p| p.y).collect();
        let sx = TrigSeries::from_samples(&xs);
        let sy = TrigSeries::from_samples(&ys);
        let scale = gamma.iter().map(|p| p.norm()).fold(0.0, f64::max);
        for k in 0..n {
            let t = k as f64 * TAU / n as f64;
            let d = Vec2::new(sx.deriv(t), sy.deriv(t));
            if d.norm() <= 1e-9 * scale.max(1.0) {
                return Err(GeomError::Precondition(format!(
                    "curve speed vanishes at node {k}"
                )));
            }
        }
        Ok(PerturbedCurve { gamma, offset, sx, sy })
    }

    /// Samples the support-angle boundary of a smooth body on `n` nodes with
    /// offsets from a closure.
    pub fn from_body(body: &Body2D, n: usize, offset: impl Fn(f64) -> f64) -> Result<Self> {
        if matches!(body, Body2D::Polygon(_)) {
            return Err(GeomError::Precondition(
                "perturbed curves need a smooth boundary parameterization".into(),
            ));
        }
        let gamma: Vec<Vec2> = (0..n)
            .map(|k| body.boundary_point(k as f64 * TAU / n as f64).point)
            .collect();
        let l = (0..n).map(|k| offset(k as f64 * TAU / n as f64)).collect();
        PerturbedCurve::new(gamma, l)
    }

    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }
}

/// Both sides of the offset-curve identity, each computed by periodic
/// trapezoid quadrature with spectral derivatives.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
}

pub fn chord_identity_check(curve: &PerturbedCurve) -> Result<IdentityCheck> {
    let n = curve.len();
    let step = TAU / n as f64;
    let mut gamma_area = Vec::with_capacity(n);
    let mut rhs_vals = Vec::with_capacity(n);
    let mut big_gamma = Vec::with_capacity(n);
    for k in 0..n {
        let t = k as f64 * step;
        let g = curve.gamma[k];
        let gp = Vec2::new(curve.sx.deriv(t), curve.sy.deriv(t));
        let gpp = Vec2::new(curve.sx.deriv2(t), curve.sy.deriv2(t));
        let speed2 = gp.norm_squared();
        gamma_area.push(0.5 * det2(g, gp));
        rhs_vals.push(0.5 * curve.offset[k] * curve.offset[k] / speed2 * det2(gp, gpp));
        big_gamma.push(g + curve.offset[k] * gp / speed2.sqrt());
    }
    // Gamma' from the spectral derivative of the Gamma samples
    let bx = TrigSeries::from_samples(&big_gamma.iter().map(|p| p.x).collect::<Vec<_>>());
    let by = TrigSeries::from_samples(&big_gamma.iter().map(|p| p.y).collect::<Vec<_>>());
    let mut big_area = Vec::with_capacity(n);
    for (k, g) in big_gamma.iter().enumerate() {
        let t = k as f64 * step;
        let gp = Vec2::new(bx.deriv(t), by.deriv(t));
        big_area.push(0.5 * det2(*g, gp));
    }
    Ok(IdentityCheck {
        lhs: periodic_trapezoid(&big_area) - periodic_trapezoid(&gamma_area),
        rhs: periodic_trapezoid(&rhs_vals),
    })
}

/// Chord of the outer body cut by the tangent line of the inner body at the
/// support angle x, split at the tangency point: `l` behind the tangent
/// direction, `r` ahead of it.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ChordSplit {
    pub x: f64,
    pub l: f64,
    pub r: f64,
    #[serde(skip)]
    pub line_point: Vec2,
    #[serde(skip)]
    pub line_dir: Vec2,
}

/// Intersects the tangent line of `inner` at its boundary point gamma(x)
/// with the boundary of `outer`, by stepping outward in units of the outer
/// circumradius and bisecting the gauge. Requires inner contained in outer.
pub fn tangent_chord(outer: &Body2D, inner: &Body2D, x: f64) -> Result<ChordSplit> {
    verify_contained(inner, outer)?;
    let bp = inner.boundary_point(x);
    let circ = outer.support(unit(0.0))?.abs().max(outer.scale()) * 2.0;
    let mut split = [0.0f64; 2];
    for (sign, slot) in [(1.0, 1usize), (-1.0, 0usize)] {
        let dir = bp.tangent * sign;
        let g = |t: f64| outer.gauge(bp.point + dir * t).map(|v| v - 1.0);
        if g(0.0)? > 1e-8 {
            return Err(GeomError::Precondition(
                "tangency point lies outside the outer body".into(),
            ));
        }
        let mut hi = circ;
        let mut tries = 0;
        while g(hi)? <= 0.0 {
            hi += circ;
            tries += 1;
            if tries > 64 {
                return Err(GeomError::Internal("tangent line never exits the outer body".into()));
            }
        }
        let mut lo = 0.0;
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if g(mid)? <= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        split[slot] = 0.5 * (lo + hi);
    }
    Ok(ChordSplit { x, l: split[0], r: split[1], line_point: bp.point, line_dir: bp.tangent })
}

fn verify_contained(inner: &Body2D, outer: &Body2D) -> Result<()> {
    if !inner.is_symmetric() || !outer.is_symmetric() {
        return Err(GeomError::Precondition(
            "tangent chords need centrally symmetric bodies".into(),
        ));
    }
    for k in 0..64 {
        let p = inner.boundary_point(k as f64 * TAU / 64.0).point;
        if outer.gauge(p)? > 1.0 + 1e-7 {
            return Err(GeomError::Precondition(
                "inner body is not contained in the outer body".into(),
            ));
        }
    }
    Ok(())
}

/// Report of the chord-gap analysis for a symmetric body, after rescaling so
/// the minimal central triangle inscribed in the polar has area 3/2:
/// the area gap |K°| - |K| against the chord integrals (smooth paths), the
/// pointwise chord bound r + l >= 1/h(x - pi/2), and the final
/// (3/4)|K°| >= |K| inequality.
#[derive(Debug, Clone, Serialize)]
pub struct ChordGapReport {
    /// Rescale factor applied to the body.
    pub rescale: f64,
    pub area: f64,
    pub polar_area: f64,
    /// (1/2) int l^2 (None on the polygon path, which has no smooth
    /// parameterization for the offset identity).
    pub half_int_l2: Option<f64>,
    pub half_int_r2: Option<f64>,
    /// max over the two chord integrals of the relative deviation from
    /// |K°| - |K|.
    pub identity_rel_err: Option<f64>,
    /// min over nodes of r + l - 1/h(x - pi/2); the chord bound asks this
    /// to be >= -1e-6.
    pub chord_margin: f64,
    /// (3/4)|K°| >= |K| (1 - 1e-6).
    pub bound_ok: bool,
}

pub fn chord_gap_check(body: &Body2D, nodes: usize) -> Result<ChordGapReport> {
    if !body.is_symmetric() {
        return Err(GeomError::Precondition(
            "chord-gap analysis needs a centrally symmetric body".into(),
        ));
    }
    // rescale so the minimal central triangle inscribed in K° has area 3/2
    let tri = minimal_central_triangle_with(&body.polar()?, 1024)?;
    let mu = (2.0 * tri.area / 3.0).sqrt();
    let k = body.scale_by(mu)?;
    let kpolar = k.polar()?;
    let ik = k.rotate90();

    let mut l2 = Vec::with_capacity(nodes);
    let mut r2 = Vec::with_capacity(nodes);
    let mut chord_margin = f64::INFINITY;
    for j in 0..nodes {
        let x = j as f64 * TAU / nodes as f64;
        let chord = tangent_chord(&kpolar, &ik, x)?;
        let h = k.support(unit(x - FRAC_PI_2))?;
        chord_margin = chord_margin.min(chord.r + chord.l - 1.0 / h);
        l2.push(0.5 * chord.l * chord.l);
        r2.push(0.5 * chord.r * chord.r);
    }
    let area = k.area();
    let polar_area = kpolar.area();
    let (half_int_l2, half_int_r2, identity_rel_err) = if matches!(body, Body2D::Polygon(_)) {
        (None, None, None)
    } else {
        let il = periodic_trapezoid(&l2);
        let ir = periodic_trapezoid(&r2);
        let gap = polar_area - area;
        let denom = gap.abs().max(1e-12 * polar_area);
        let err = ((il - gap).abs() / denom).max((ir - gap).abs() / denom);
        (Some(il), Some(ir), Some(err))
    };
    Ok(ChordGapReport {
        rescale: mu,
        area,
        polar_area,
        half_int_l2,
        half_int_r2,
        identity_rel_err,
        chord_margin,
        bound_ok: 0.75 * polar_area >= area * (1.0 - 1e-6),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom2d::Ellipse2D;
    use std::f64::consts::PI;

    fn circle_curve(n: usize, offset: impl Fn(f64) -> f64) -> PerturbedCurve {
        let gamma = (0..n).map(|k| unit(k as f64 * TAU / n as f64)).collect();
        let l = (0..n).map(|k| offset(k as f64 * TAU / n as f64)).collect();
        PerturbedCurve::new(gamma, l).unwrap()
    }

    #[test]
    fn zero_offset_gives_zero_both_sides() {
        let c = circle_curve(128, |_| 0.0);
        let r = chord_identity_check(&c).unwrap();
        assert!(r.lhs.abs() < 1e-12);
        assert!(r.rhs.abs() < 1e-12);
    }

    #[test]
    fn constant_offset_circle_gives_pi_c_squared() {
        let cval = 0.37;
        let c = circle_curve(256, |_| cval);
        let r = chord_identity_check(&c).unwrap();
        let target = PI * cval * cval;
        assert!((r.lhs - target).abs() < 1e-10, "lhs {}", r.lhs);
        assert!((r.rhs - target).abs() < 1e-10, "rhs {}", r.rhs);
    }

    #[test]
    fn ellipse_with_sine_offset_balances() {
        let e = Body2D::Ellipse(Ellipse2D::new(2.0, 1.0, 0.0).unwrap());
        let c = PerturbedCurve::from_body(&e, 512, |t| 0.1 * t.sin()).unwrap();
        let r = chord_identity_check(&c).unwrap();
        assert!(
            (r.lhs - r.rhs).abs() <= 1e-6 * (1.0 + r.lhs.abs()),
            "lhs {} rhs {}",
            r.lhs,
            r.rhs
        );
        // two grid resolutions agree
        let c2 = PerturbedCurve::from_body(&e, 1024, |t| 0.1 * t.sin()).unwrap();
        let r2 = chord_identity_check(&c2).unwrap();
        assert!((r.lhs - r2.lhs).abs() < 1e-8);
    }

    #[test]
    fn rejects_vanishing_speed() {
        // a figure-collapsing curve: gamma = (cos t, 0) has gamma' = 0 at 0, pi
        let n = 64;
        let gamma: Vec<Vec2> = (0..n)
            .map(|k| Vec2::new((k as f64 * TAU / n as f64).cos(), 0.0))
            .collect();
        assert!(PerturbedCurve::new(gamma, vec![0.0; n]).is_err());
    }

    #[test]
    fn chord_of_concentric_disks() {
        // outer radius 2, inner radius 1: half-chord sqrt(3) on both sides
        let outer = Body2D::Ellipse(Ellipse2D::circle(2.0).unwrap());
        let inner = Body2D::unit_disk_sampled(256);
        for &x in &[0.0, 0.7, 2.5] {
            let c = tangent_chord(&outer, &inner, x).unwrap();
            assert!((c.l - 3f64.sqrt()).abs() < 1e-9, "l {}", c.l);
            assert!((c.r - 3f64.sqrt()).abs() < 1e-9);
            // endpoints on the outer boundary
            let e1 = c.line_point + c.line_dir * c.r;
            let e2 = c.line_point - c.line_dir * c.l;
            assert!((outer.gauge(e1).unwrap() - 1.0).abs() < 1e-8);
            assert!((outer.gauge(e2).unwrap() - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn touching_case_gives_zero_chords() {
        let disk = Body2D::unit_disk_sampled(128);
        let c = tangent_chord(&disk, &disk, 1.1).unwrap();
        assert!(c.l.abs() < 1e-6);
        assert!(c.r.abs() < 1e-6);
    }

    #[test]
    fn square_outer_disk_inner_chord() {
        // outer square [-2,2]^2, inner unit disk, x = 0: tangent line x = 1
        let sq = Body2D::polygon(vec![
            Vec2::new(2.0, -2.0),
            Vec2::new(2.0, 2.0),
            Vec2::new(-2.0, 2.0),
            Vec2::new(-2.0, -2.0),
        ])
        .unwrap();
        let disk = Body2D::unit_disk_sampled(128);
        let c = tangent_chord(&sq, &disk, 0.0).unwrap();
        assert!((c.l - 2.0).abs() < 1e-9);
        assert!((c.r - 2.0).abs() < 1e-9);
    }

    #[test]
    fn containment_is_enforced() {
        let outer = Body2D::unit_disk_sampled(128);
        let inner = Body2D::Ellipse(Ellipse2D::circle(2.0).unwrap());
        assert!(tangent_chord(&outer, &inner, 0.0).is_err());
    }

    #[test]
    fn chord_gap_disk_is_tight() {
        // disk rescaled to the triangle-area hypothesis: equality throughout
        let disk = Body2D::unit_disk_sampled(512);
        let report = chord_gap_check(&disk, 256).unwrap();
        let target_area = 3f64.sqrt() * PI / 2.0;
        assert!((report.area - target_area).abs() < 1e-6, "area {}", report.area);
        assert!((report.polar_area - 2.0 * PI / 3f64.sqrt()).abs() < 1e-6);
        assert!(report.identity_rel_err.unwrap() < 1e-5);
        assert!(report.chord_margin > -1e-6);
        assert!(report.bound_ok);
        // equality case: 3/4 |K°| = |K|
        assert!((0.75 * report.polar_area - report.area).abs() < 1e-6);
    }

    #[test]
    fn chord_gap_square_strict() {
        let sq = Body2D::polygon(vec![
            Vec2::new(1.0, -1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(-1.0, 1.0),
            Vec2::new(-1.0, -1.0),
        ])
        .unwrap();
        let report = chord_gap_check(&sq, 128).unwrap();
        assert!(report.half_int_l2.is_none());
        assert!(report.chord_margin > -1e-6);
        assert!(report.bound_ok);
        assert!(0.75 * report.polar_area > report.area + 1e-3);
    }
}
