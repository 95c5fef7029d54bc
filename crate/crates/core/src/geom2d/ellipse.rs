//! Origin-centered ellipses, handled analytically.

use crate::error::{GeomError, Result};
use crate::la::{rot90, sym_eigen2, unit, Mat2, Vec2};
use std::f64::consts::PI;

/// Ellipse with semi-axes `a` (along angle `phi`) and `b` (perpendicular).
#[derive(Debug, Clone, Copy)]
pub struct Ellipse2D {
    pub a: f64,
    pub b: f64,
    pub phi: f64,
}

impl Ellipse2D {
    pub fn new(a: f64, b: f64, phi: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && phi.is_finite()) || a <= 0.0 || b <= 0.0 {
            return Err(GeomError::InvalidBody(format!(
                "ellipse semi-axes must be positive, got a={a}, b={b}"
            )));
        }
        if a.min(b) < 1e-12 * a.max(b) {
            return Err(GeomError::Degenerate("ellipse aspect ratio too extreme".into()));
        }
        Ok(Ellipse2D { a, b, phi })
    }

    pub fn circle(r: f64) -> Result<Self> {
        Ellipse2D::new(r, r, 0.0)
    }

    fn axes(&self) -> (Vec2, Vec2) {
        let d1 = unit(self.phi);
        (d1, rot90(d1))
    }

    pub fn scale(&self) -> f64 {
        self.a.max(self.b)
    }

    pub fn support(&self, u: Vec2) -> f64 {
        let (d1, d2) = self.axes();
        let x = self.a * d1.dot(&u);
        let y = self.b * d2.dot(&u);
        (x * x + y * y).sqrt()
    }

    pub fn gauge(&self, x: Vec2) -> f64 {
        let (d1, d2) = self.axes();
        let p = d1.dot(&x) / self.a;
        let q = d2.dot(&x) / self.b;
        (p * p + q * q).sqrt()
    }

    pub fn area(&self) -> f64 {
        PI * self.a * self.b
    }

    pub fn polar(&self) -> Ellipse2D {
        Ellipse2D { a: 1.0 / self.a, b: 1.0 / self.b, phi: self.phi }
    }

    pub fn rotate90(&self) -> Ellipse2D {
        Ellipse2D { a: self.a, b: self.b, phi: normalize_phi(self.phi + PI / 2.0) }
    }

    /// Support point at angle x and the boundary tangent there.
    pub fn boundary(&self, x: f64) -> (Vec2, Vec2) {
        let u = unit(x);
        let (d1, d2) = self.axes();
        let w = Vec2::new(self.a * d1.dot(&u), self.b * d2.dot(&u));
        let wn = w.norm();
        let p = d1 * (self.a * w.x / wn) + d2 * (self.b * w.y / wn);
        (p, unit(x + PI / 2.0))
    }

    /// The image M E, again an ellipse: recovered from the quadratic form
    /// M^{-T} Q M^{-1} with Q = R diag(1/a^2, 1/b^2) R^T.
    pub fn linear_image(&self, m: Mat2) -> Result<Ellipse2D> {
        let minv = m
            .try_inverse()
            .ok_or_else(|| GeomError::Degenerate("singular linear map".into()))?;
        let (d1, d2) = self.axes();
        let r = Mat2::from_columns(&[d1, d2]);
        let q = r * Mat2::new(1.0 / (self.a * self.a), 0.0, 0.0, 1.0 / (self.b * self.b))
            * r.transpose();
        let qm = minv.transpose() * q * minv;
        let ([l0, l1], [v0, _v1]) = sym_eigen2(qm[(0, 0)], qm[(0, 1)], qm[(1, 1)]);
        if l0 <= 0.0 {
            return Err(GeomError::Degenerate("image quadratic form not positive".into()));
        }
        // l0 is the smaller eigenvalue => larger semi-axis along v0
        Ellipse2D::new(1.0 / l0.sqrt(), 1.0 / l1.sqrt(), normalize_phi(v0.y.atan2(v0.x)))
    }
}

fn normalize_phi(phi: f64) -> f64 {
    phi.rem_euclid(PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_one_ellipse() {
        let e = Ellipse2D::new(2.0, 1.0, 0.0).unwrap();
        assert!((e.area() - 2.0 * PI).abs() < 1e-15);
        assert!((e.support(Vec2::new(1.0, 0.0)) - 2.0).abs() < 1e-15);
        let p = e.polar();
        assert!((p.a - 0.5).abs() < 1e-15 && (p.b - 1.0).abs() < 1e-15);
        assert!((e.area() * p.area() - PI * PI).abs() < 1e-12);
        let (pt, _) = e.boundary(0.0);
        assert!((pt - Vec2::new(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn gauge_unit_disk() {
        let d = Ellipse2D::circle(1.0).unwrap();
        assert!((d.gauge(Vec2::new(3.0, 4.0)) - 5.0).abs() < 1e-15);
    }

    #[test]
    fn linear_image_of_circle() {
        let d = Ellipse2D::circle(1.0).unwrap();
        let th: f64 = 0.4;
        let m = Mat2::new(th.cos(), -th.sin(), th.sin(), th.cos())
            * Mat2::new(3.0, 0.0, 0.0, 0.5);
        let e = d.linear_image(m).unwrap();
        assert!((e.a - 3.0).abs() < 1e-12);
        assert!((e.b - 0.5).abs() < 1e-12);
        assert!((e.phi - 0.4).abs() < 1e-12);
    }

    #[test]
    fn rejects_flat() {
        assert!(Ellipse2D::new(1.0, 0.0, 0.0).is_err());
        assert!(Ellipse2D::new(-1.0, 1.0, 0.0).is_err());
    }
}
