//! Zonotopes given by generator lists (projection bodies of polytopes).

use crate::la::Vec3;

/// Zonotope sum of segments [-g, g]; support h(u) = sum |<g, u>| is even,
/// convex and positively homogeneous.
#[derive(Debug, Clone)]
pub struct Zonotope3 {
    generators: Vec<Vec3>,
}

impl Zonotope3 {
    pub fn new(generators: Vec<Vec3>) -> Zonotope3 {
        Zonotope3 { generators }
    }

    pub fn generators(&self) -> &[Vec3] {
        &self.generators
    }

    pub fn support(&self, u: Vec3) -> f64 {
        self.generators.iter().map(|g| g.dot(&u).abs()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_is_even_and_homogeneous() {
        let z = Zonotope3::new(vec![
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.3, 0.7, -0.2),
            Vec3::new(0.0, -1.0, 0.5),
        ]);
        let u = Vec3::new(0.4, -1.2, 2.0);
        assert_eq!(z.support(u), z.support(-u));
        assert!((z.support(3.0 * u) - 3.0 * z.support(u)).abs() < 1e-12);
    }
}
