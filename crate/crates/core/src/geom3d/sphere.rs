//! Equal-weight Fibonacci quadrature grids on the unit sphere.

use crate::la::Vec3;
use std::f64::consts::PI;

/// Quadrature nodes and weights on S^2; weights sum to 4*pi exactly.
#[derive(Debug, Clone)]
pub struct SphereGrid {
    pub nodes: Vec<Vec3>,
    pub weights: Vec<f64>,
}

/// Standard resolutions used for Richardson-style comparisons.
pub const COARSE_NODES: usize = 2562;
pub const FINE_NODES: usize = 10242;

impl SphereGrid {
    /// Canonical spherical Fibonacci lattice with the midpoint z-offset.
    pub fn fibonacci(n: usize) -> SphereGrid {
        let golden_angle = PI * (3.0 - 5f64.sqrt());
        let mut nodes = Vec::with_capacity(n);
        for i in 0..n {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden_angle * i as f64;
            nodes.push(Vec3::new(r * phi.cos(), r * phi.sin(), z));
        }
        let w = 4.0 * PI / n as f64;
        SphereGrid { nodes, weights: vec![w; n] }
    }

    /// Upper-hemisphere directions (z > 0) of the n-node Fibonacci grid;
    /// enough for even integrands and direction scans.
    pub fn fibonacci_hemisphere(n: usize) -> SphereGrid {
        let full = Self::fibonacci(n);
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for (u, w) in full.nodes.into_iter().zip(full.weights) {
            if u.z > 0.0 {
                nodes.push(u);
                weights.push(2.0 * w);
            }
        }
        SphereGrid { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(Vec3) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(self.weights.iter())
            .map(|(u, w)| w * f(*u))
            .sum()
    }

    /// Worst relative error of the axis second moments
    /// (each should equal 4*pi/3).
    pub fn second_moment_error(&self) -> f64 {
        let target = 4.0 * PI / 3.0;
        (0..3)
            .map(|i| (self.integrate(|u| u[i] * u[i]) - target).abs() / target)
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_sphere_area() {
        for &n in &[COARSE_NODES, FINE_NODES] {
            let g = SphereGrid::fibonacci(n);
            let total: f64 = g.weights.iter().sum();
            assert!((total - 4.0 * PI).abs() < 1e-12 * n as f64);
            assert!(g.nodes.iter().all(|u| (u.norm() - 1.0).abs() < 1e-12));
        }
    }

    #[test]
    fn second_moments_within_tolerance() {
        assert!(SphereGrid::fibonacci(COARSE_NODES).second_moment_error() < 1e-6);
        assert!(SphereGrid::fibonacci(FINE_NODES).second_moment_error() < 1e-6);
    }

    #[test]
    fn hemisphere_covers_half() {
        let g = SphereGrid::fibonacci_hemisphere(COARSE_NODES);
        assert!(g.len() == COARSE_NODES / 2);
        let total: f64 = g.weights.iter().sum();
        assert!((total - 4.0 * PI).abs() < 1e-10);
    }
}
