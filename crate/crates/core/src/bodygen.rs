//! Seeded random body generators.
//!
//! All randomness flows through [`SplitMix64`], a fixed, documented PRNG, so
//! generated bodies are bit-reproducible across platforms and runs given the
//! same seed.

use crate::error::{GeomError, Result};
use crate::geom2d::{convex_hull2, Body2D, SupportSampled2D};
use crate::geom3d::Body3D;
use crate::la::{Vec2, Vec3};
use std::f64::consts::TAU;

/// SplitMix64 (Steele, Lea, Flood): state advances by the golden-gamma
/// constant 0x9E3779B97F4A7C15; output is the finalizer
/// `z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27; z *= 0x94D049BB133111EB; z ^= z >> 31`.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// What kind of random body to draw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BodyKind {
    /// Hull of +-(k points in an annulus); centrally symmetric polygon.
    SymmetricPolygon { k: usize },
    /// Hull of k annulus points; generically asymmetric.
    Polygon { k: usize },
    /// h(t) = 1 + a * sum_{j=1..m} (alpha_j cos 2jt + beta_j sin 2jt),
    /// rescaled so min(h + h'') >= 0.05; even harmonics make it symmetric.
    SmoothTrig { m: usize, amplitude: f64 },
    /// Support samples of a random origin-centered ellipse.
    SampledEllipse,
}

#[derive(Debug, Clone, Copy)]
pub struct RandomBodySpec {
    pub kind: BodyKind,
    pub seed: u64,
}

const MAX_RETRIES: usize = 64;
const SMOOTH_SAMPLES: usize = SupportSampled2D::DEFAULT_SAMPLES;

/// Draw a planar body; deterministic in the spec.
pub fn random_body2(spec: RandomBodySpec) -> Result<Body2D> {
    let mut rng = SplitMix64::new(spec.seed);
    match spec.kind {
        BodyKind::SymmetricPolygon { k } => {
            if k < 2 {
                return Err(GeomError::Domain(
                    "symmetric polygon needs k >= 2 point pairs".into(),
                ));
            }
            for _ in 0..MAX_RETRIES {
                let mut pts = Vec::with_capacity(2 * k);
                for _ in 0..k {
                    let p = annulus_point(&mut rng);
                    pts.push(p);
                    pts.push(-p);
                }
                if let Ok(p) = convex_hull2(&pts) {
                    if p.is_symmetric() && p.vertices().len() >= 4 {
                        return Ok(Body2D::Polygon(p));
                    }
                }
            }
            Err(GeomError::Internal("symmetric polygon generator exhausted retries".into()))
        }
        BodyKind::Polygon { k } => {
            if k < 3 {
                return Err(GeomError::Domain("polygon needs k >= 3 points".into()));
            }
            for _ in 0..MAX_RETRIES {
                let pts: Vec<Vec2> = (0..k).map(|_| annulus_point(&mut rng)).collect();
                if let Ok(p) = convex_hull2(&pts) {
                    if !p.is_symmetric() {
                        return Ok(Body2D::Polygon(p));
                    }
                }
            }
            Err(GeomError::Internal("polygon generator exhausted retries".into()))
        }
        BodyKind::SmoothTrig { m, amplitude } => {
            let mut alphas = Vec::with_capacity(m);
            let mut betas = Vec::with_capacity(m);
            for _ in 0..m {
                alphas.push(rng.uniform(-1.0, 1.0));
                betas.push(rng.uniform(-1.0, 1.0));
            }
            // p(t) = sum (1 - 4 j^2)(alpha_j cos 2jt + beta_j sin 2jt) is the
            // perturbation part of h + h''; rescale the amplitude so
            // 1 + a * min p >= 0.05.
            let mut a = amplitude;
            if m > 0 {
                let mut min_p = f64::INFINITY;
                for k in 0..4096 {
                    let t = k as f64 * TAU / 4096.0;
                    let mut p = 0.0;
                    for j in 1..=m {
                        let w = 1.0 - 4.0 * (j * j) as f64;
                        p += w * (alphas[j - 1] * (2.0 * j as f64 * t).cos()
                            + betas[j - 1] * (2.0 * j as f64 * t).sin());
                    }
                    min_p = min_p.min(p);
                }
                if min_p < 0.0 && 1.0 + a * min_p < 0.05 {
                    a = 0.95 / (-min_p);
                }
            }
            let h: Vec<f64> = (0..SMOOTH_SAMPLES)
                .map(|k| {
                    let t = k as f64 * TAU / SMOOTH_SAMPLES as f64;
                    let mut v = 1.0;
                    for j in 1..=m {
                        v += a * (alphas[j - 1] * (2.0 * j as f64 * t).cos()
                            + betas[j - 1] * (2.0 * j as f64 * t).sin());
                    }
                    v
                })
                .collect();
            Ok(Body2D::Sampled(SupportSampled2D::new(h)?))
        }
        BodyKind::SampledEllipse => {
            let a = rng.uniform(0.8, 2.2);
            let b = rng.uniform(0.5, a);
            let phi = rng.uniform(0.0, std::f64::consts::PI);
            let h: Vec<f64> = (0..SMOOTH_SAMPLES)
                .map(|k| {
                    let t = k as f64 * TAU / SMOOTH_SAMPLES as f64 - phi;
                    (a * a * t.cos() * t.cos() + b * b * t.sin() * t.sin()).sqrt()
                })
                .collect();
            Ok(Body2D::Sampled(SupportSampled2D::new(h)?))
        }
    }
}

/// Hull of +-(k random unit-sphere points): a symmetric random polytope.
pub fn random_polytope3(k: usize, seed: u64) -> Result<Body3D> {
    if k < 3 {
        return Err(GeomError::Domain("polytope generator needs k >= 3".into()));
    }
    let mut rng = SplitMix64::new(seed);
    for _ in 0..MAX_RETRIES {
        let mut pts = Vec::with_capacity(2 * k);
        for _ in 0..k {
            let p = sphere_point(&mut rng);
            pts.push(p);
            pts.push(-p);
        }
        if let Ok(body) = Body3D::polytope(pts) {
            return Ok(body);
        }
    }
    Err(GeomError::Internal("polytope generator exhausted retries".into()))
}

fn annulus_point(rng: &mut SplitMix64) -> Vec2 {
    let r = rng.uniform(0.6, 1.4);
    let t = rng.uniform(0.0, TAU);
    Vec2::new(r * t.cos(), r * t.sin())
}

fn sphere_point(rng: &mut SplitMix64) -> Vec3 {
    // rejection sample from the cube, then normalize
    loop {
        let v = Vec3::new(
            rng.uniform(-1.0, 1.0),
            rng.uniform(-1.0, 1.0),
            rng.uniform(-1.0, 1.0),
        );
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return v / n;
        }
    }
}
