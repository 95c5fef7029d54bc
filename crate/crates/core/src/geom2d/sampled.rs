//! Smooth bodies represented by support-function samples on a uniform
//! angular grid (the "sampled path").

use crate::error::{GeomError, Result};
use crate::la::{angle_of, golden_max, unit, Mat2, Vec2};
use crate::trig::{periodic_trapezoid, TrigSeries};
use std::f64::consts::{PI, TAU};

/// Relative slack allowed in the discrete convexity test.
const CONVEXITY_SLACK: f64 = 1e-8;

/// Support samples h_k = h(2*pi*k/n) of a smooth convex body, n a power of
/// two. The body is the one whose support function is the trigonometric
/// interpolant of the samples.
#[derive(Debug, Clone)]
pub struct SupportSampled2D {
    h: Vec<f64>,
    symmetric: bool,
    series: TrigSeries,
    /// Grid unit vectors, cached for O(n) scans.
    units: Vec<Vec2>,
}

impl SupportSampled2D {
    pub const DEFAULT_SAMPLES: usize = 1024;

    /// Validates positivity and discrete convexity
    /// (h_{k-1} + h_{k+1} - 2 h_k + (2pi/n)^2 h_k >= -1e-8 max h),
    /// and computes the central-symmetry flag (h_k = h_{k + n/2}).
    pub fn new(h: Vec<f64>) -> Result<Self> {
        let n = h.len();
        if n < 8 || !n.is_power_of_two() {
            return Err(GeomError::InvalidBody(format!(
                "sample count must be a power of two >= 8, got {n}"
            )));
        }
        let hmax = h.iter().cloned().fold(0.0, f64::max);
        if !h.iter().all(|&v| v.is_finite() && v > 0.0) {
            return Err(GeomError::InvalidBody("support samples must be positive".into()));
        }
        if hmax < 1e-300 {
            return Err(GeomError::Degenerate("support samples all vanish".into()));
        }
        let dt2 = (TAU / n as f64) * (TAU / n as f64);
        for k in 0..n {
            let second = h[(k + n - 1) % n] + h[(k + 1) % n] - 2.0 * h[k];
            if second + dt2 * h[k] < -CONVEXITY_SLACK * hmax {
                return Err(GeomError::InvalidBody(format!(
                    "discrete convexity violated at node {k}"
                )));
            }
        }
        let symmetric = (0..n).all(|k| (h[k] - h[(k + n / 2) % n]).abs() <= 1e-9 * hmax);
        let series = TrigSeries::from_samples(&h);
        let units = (0..n).map(|k| unit(k as f64 * TAU / n as f64)).collect();
        Ok(SupportSampled2D { h, symmetric, series, units })
    }

    /// As `new`, but requires the stored symmetry flag to match the samples.
    pub fn with_flag(h: Vec<f64>, symmetric: bool) -> Result<Self> {
        let body = Self::new(h)?;
        if body.symmetric != symmetric {
            return Err(GeomError::InvalidBody(format!(
                "symmetric flag {} does not match samples (computed {})",
                symmetric, body.symmetric
            )));
        }
        Ok(body)
    }

    pub fn samples(&self) -> &[f64] {
        &self.h
    }

    pub fn sample_count(&self) -> usize {
        self.h.len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn series(&self) -> &TrigSeries {
        &self.series
    }

    /// max_theta h = circumradius; also the body scale.
    pub fn scale(&self) -> f64 {
        self.h.iter().cloned().fold(0.0, f64::max)
    }

    /// Support function, extended 1-homogeneously.
    pub fn support(&self, u: Vec2) -> f64 {
        u.norm() * self.series.eval(angle_of(u))
    }

    /// Gauge by maximizing <u(t), x>/h(t) over the continuous angle
    /// (grid scan plus golden refinement); exact dual of the support
    /// interpolant, so boundary points evaluate to 1 at full precision.
    pub fn gauge(&self, x: Vec2) -> f64 {
        let r = x.norm();
        if r == 0.0 {
            return 0.0;
        }
        let (k, _) = self.gauge_scan(x);
        let dt = TAU / self.h.len() as f64;
        let t0 = k as f64 * dt;
        let f = |t: f64| (x.x * t.cos() + x.y * t.sin()) / self.series.eval(t);
        let (_, g) = golden_max(f, t0 - dt, t0 + dt, 1e-12);
        g.max(0.0)
    }

    /// Grid-restricted gauge lower bound max_k <u_k, x>/h_k; cheap, used for
    /// bracketing before the refined gauge.
    pub fn gauge_fast(&self, x: Vec2) -> f64 {
        self.gauge_scan(x).1
    }

    fn gauge_scan(&self, x: Vec2) -> (usize, f64) {
        let mut best = (0usize, f64::NEG_INFINITY);
        for (k, u) in self.units.iter().enumerate() {
            let v = u.dot(&x) / self.h[k];
            if v > best.1 {
                best = (k, v);
            }
        }
        best
    }

    /// Area by periodic trapezoid quadrature of (h^2 - h'^2)/2 with h' from
    /// the spectral derivative of the samples.
    pub fn area(&self) -> f64 {
        let hp = self.series.deriv_samples();
        let vals: Vec<f64> = self
            .h
            .iter()
            .zip(hp.iter())
            .map(|(&h, &d)| 0.5 * (h * h - d * d))
            .collect();
        periodic_trapezoid(&vals)
    }

    /// Polar body. The radial function of the polar along u(t) is 1/h(t);
    /// its support samples are recovered by maximizing
    /// <u(psi), u(t)>/h(t) over the continuous angle t per output node, then
    /// projecting onto the discrete convexity cone.
    pub fn polar(&self) -> Result<SupportSampled2D> {
        self.polar_with_samples(self.h.len())
    }

    /// Polar on an `m`-node output grid. The polar support function is less
    /// smooth than the body's when the curvature floor is small, so
    /// construction paths that need its interpolant to high accuracy request
    /// more output samples.
    pub fn polar_with_samples(&self, m: usize) -> Result<SupportSampled2D> {
        let n = self.h.len();
        let dt = TAU / n as f64;
        let mut out = Vec::with_capacity(m);
        for j in 0..m {
            let psi = j as f64 * TAU / m as f64;
            // coarse grid argmax of cos(psi - t)/h(t)
            let mut best = (0usize, f64::NEG_INFINITY);
            for k in 0..n {
                let v = (psi - k as f64 * dt).cos() / self.h[k];
                if v > best.1 {
                    best = (k, v);
                }
            }
            let t0 = best.0 as f64 * dt;
            let f = |t: f64| (psi - t).cos() / self.series.eval(t);
            let (_, val) = golden_max(f, t0 - dt, t0 + dt, 1e-13);
            out.push(val);
        }
        enforce_discrete_convexity(&mut out)?;
        SupportSampled2D::new(out)
    }

    /// Boundary point gamma(x) = h(x) u(x) + h'(x) u(x + pi/2).
    pub fn boundary(&self, x: f64) -> (Vec2, Vec2) {
        let u = unit(x);
        let t = unit(x + PI / 2.0);
        (u * self.series.eval(x) + t * self.series.deriv(x), t)
    }

    /// Counterclockwise rotation by 90 degrees: cyclic shift of the samples.
    pub fn rotate90(&self) -> SupportSampled2D {
        let n = self.h.len();
        let q = n / 4;
        let h: Vec<f64> = (0..n).map(|k| self.h[(k + n - q) % n]).collect();
        SupportSampled2D::new(h).expect("rotation preserves validity")
    }

    /// Central symmetral samples (h(t) + h(t + pi)) / 2.
    pub fn symmetral(&self) -> SupportSampled2D {
        let n = self.h.len();
        let h: Vec<f64> = (0..n)
            .map(|k| 0.5 * (self.h[k] + self.h[(k + n / 2) % n]))
            .collect();
        SupportSampled2D::new(h).expect("symmetral preserves validity")
    }

    /// Image under an invertible linear map: h_{MK}(u) = h_K(M^T u),
    /// resampled on the grid.
    pub fn linear_image(&self, m: Mat2) -> Result<SupportSampled2D> {
        if m.determinant().abs() <= 1e-12 {
            return Err(GeomError::Degenerate("singular linear map".into()));
        }
        let mt = m.transpose();
        let n = self.h.len();
        let mut h = Vec::with_capacity(n);
        for k in 0..n {
            let w = mt * self.units[k];
            h.push(w.norm() * self.series.eval(angle_of(w)));
        }
        enforce_discrete_convexity(&mut h)?;
        SupportSampled2D::new(h)
    }
}

/// Clamp down nodes that violate the discrete convexity bound; resolves
/// floating-point-level violations introduced by resampling. Errors if the
/// data is genuinely non-convex (no convergence).
fn enforce_discrete_convexity(h: &mut [f64]) -> Result<()> {
    let n = h.len();
    let hmax = h.iter().cloned().fold(0.0, f64::max);
    let dt2 = (TAU / n as f64) * (TAU / n as f64);
    for _ in 0..64 {
        let mut worst = 0.0f64;
        for k in 0..n {
            let bound = (h[(k + n - 1) % n] + h[(k + 1) % n] + 0.5 * CONVEXITY_SLACK * hmax)
                / (2.0 - dt2);
            if h[k] > bound {
                worst = worst.max(h[k] - bound);
                h[k] = bound;
            }
        }
        if worst == 0.0 {
            return Ok(());
        }
        if worst > 1e-3 * hmax {
            return Err(GeomError::InvalidBody(
                "samples are far from discretely convex".into(),
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disk(n: usize) -> SupportSampled2D {
        SupportSampled2D::new(vec![1.0; n]).unwrap()
    }

    fn sampled_ellipse(a: f64, b: f64, n: usize) -> SupportSampled2D {
        let h = (0..n)
            .map(|k| {
                let t = k as f64 * TAU / n as f64;
                (a * a * t.cos() * t.cos() + b * b * t.sin() * t.sin()).sqrt()
            })
            .collect();
        SupportSampled2D::new(h).unwrap()
    }

    #[test]
    fn disk_basics() {
        let d = disk(256);
        assert!(d.is_symmetric());
        assert!((d.area() - PI).abs() < 1e-12);
        assert!((d.support(Vec2::new(0.0, 2.0)) - 2.0).abs() < 1e-12);
        assert!((d.gauge(Vec2::new(3.0, 4.0)) - 5.0).abs() < 1e-10);
        let (p, t) = d.boundary(PI / 2.0);
        assert!((p - Vec2::new(0.0, 1.0)).norm() < 1e-12);
        assert!((t - Vec2::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn rejects_bad_samples() {
        assert!(SupportSampled2D::new(vec![1.0; 100]).is_err()); // not power of two
        let mut h = vec![1.0; 64];
        h[3] = -0.2;
        assert!(SupportSampled2D::new(h).is_err()); // negative
        let mut h = vec![1.0; 64];
        h[10] = 1.5; // a spike violates discrete convexity
        assert!(SupportSampled2D::new(h).is_err());
    }

    #[test]
    fn ellipse_samples_area_and_polar() {
        let e = sampled_ellipse(2.0, 1.0, 512);
        assert!((e.area() - 2.0 * PI).abs() < 1e-10);
        let p = e.polar().unwrap();
        // polar of ellipse(2,1) is ellipse(1/2,1), area pi/2
        assert!((p.area() - PI / 2.0).abs() < 1e-9);
        // involution
        let pp = p.polar().unwrap();
        for (a, b) in pp.samples().iter().zip(e.samples().iter()) {
            assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn symmetral_of_symmetric_is_identity() {
        let e = sampled_ellipse(1.5, 0.7, 128);
        let s = e.symmetral();
        for (a, b) in s.samples().iter().zip(e.samples().iter()) {
            assert!((a - b).abs() < 1e-15);
        }
        assert!(s.is_symmetric());
    }

    #[test]
    fn rotate90_shifts_support() {
        let e = sampled_ellipse(2.0, 1.0, 64);
        let r = e.rotate90();
        // support of rotated body at angle t equals original at t - pi/2
        assert!((r.series().eval(PI / 2.0) - 2.0).abs() < 1e-10);
        assert!((r.series().eval(0.0) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn linear_image_matches_ellipse() {
        let d = disk(128);
        let m = Mat2::new(2.0, 0.0, 0.0, 1.0);
        let e = d.linear_image(m).unwrap();
        let reference = sampled_ellipse(2.0, 1.0, 128);
        for (a, b) in e.samples().iter().zip(reference.samples().iter()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn gauge_of_boundary_point_is_one() {
        let e = sampled_ellipse(1.8, 0.9, 256);
        for k in 0..16 {
            let x = 0.3 + k as f64 * 0.37;
            let (p, _) = e.boundary(x);
            assert!((e.gauge(p) - 1.0).abs() < 1e-9, "gauge {}", e.gauge(p));
            let sup = p.dot(&unit(x));
            assert!((sup - e.series().eval(x)).abs() < 1e-9);
        }
    }
}
