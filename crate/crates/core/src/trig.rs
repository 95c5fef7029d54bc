//! Trigonometric interpolation on a uniform periodic grid.
//!
//! A `TrigSeries` interpolates `n` samples (n even) at angles `2*pi*k/n` by
//! the band-limited trigonometric polynomial of degree `n/2` (cosine-only
//! Nyquist mode). Coefficients are computed by direct summation, O(n^2);
//! evaluation of the interpolant and its first two derivatives at arbitrary
//! angles is O(n) using angle recurrences. This gives spectral accuracy for
//! smooth periodic data without a transform dependency.

/// Band-limited interpolant of periodic samples.
#[derive(Debug, Clone)]
pub struct TrigSeries {
    /// Cosine coefficients, index m in 0..=n/2.
    a: Vec<f64>,
    /// Sine coefficients, index m in 0..=n/2 (b[0] = b[n/2] = 0).
    b: Vec<f64>,
    n: usize,
}

impl TrigSeries {
    /// Interpolate `samples[k] = f(2*pi*k/n)`. `n` must be even and >= 4.
    pub fn from_samples(samples: &[f64]) -> Self {
        let n = samples.len();
        assert!(n >= 4 && n % 2 == 0, "need an even sample count >= 4");
        let half = n / 2;
        let mut a = vec![0.0; half + 1];
        let mut b = vec![0.0; half + 1];
        let step = std::f64::consts::TAU / n as f64;
        for (k, &f) in samples.iter().enumerate() {
            let (s1, c1) = (k as f64 * step).sin_cos();
            // cos(m*theta_k), sin(m*theta_k) by recurrence over m
            let (mut cm, mut sm) = (1.0, 0.0);
            for m in 0..=half {
                a[m] += f * cm;
                b[m] += f * sm;
                let c_next = cm * c1 - sm * s1;
                sm = sm * c1 + cm * s1;
                cm = c_next;
            }
        }
        let scale = 2.0 / n as f64;
        for m in 0..=half {
            a[m] *= scale;
            b[m] *= scale;
        }
        a[0] *= 0.5;
        a[half] *= 0.5;
        b[half] = 0.0;
        TrigSeries { a, b, n }
    }

    pub fn sample_count(&self) -> usize {
        self.n
    }

    /// Evaluate the interpolant at `theta`.
    pub fn eval(&self, theta: f64) -> f64 {
        self.horner(theta, |m, a, b, c, s| {
            let _ = m;
            a * c + b * s
        })
    }

    /// First derivative of the interpolant.
    pub fn deriv(&self, theta: f64) -> f64 {
        self.horner(theta, |m, a, b, c, s| m * (b * c - a * s))
    }

    /// Second derivative of the interpolant.
    pub fn deriv2(&self, theta: f64) -> f64 {
        self.horner(theta, |m, a, b, c, s| -m * m * (a * c + b * s))
    }

    #[inline]
    fn horner(&self, theta: f64, term: impl Fn(f64, f64, f64, f64, f64) -> f64) -> f64 {
        let (s1, c1) = theta.sin_cos();
        let (mut cm, mut sm) = (1.0, 0.0);
        let mut acc = 0.0;
        for m in 0..self.a.len() {
            acc += term(m as f64, self.a[m], self.b[m], cm, sm);
            let c_next = cm * c1 - sm * s1;
            sm = sm * c1 + cm * s1;
            cm = c_next;
        }
        acc
    }

    /// Derivative values on the sample grid.
    pub fn deriv_samples(&self) -> Vec<f64> {
        let step = std::f64::consts::TAU / self.n as f64;
        (0..self.n).map(|k| self.deriv(k as f64 * step)).collect()
    }
}

/// Periodic trapezoid quadrature over [0, 2pi) of grid samples
/// (equals the rectangle rule on a uniform periodic grid).
pub fn periodic_trapezoid(samples: &[f64]) -> f64 {
    samples.iter().sum::<f64>() * std::f64::consts::TAU / samples.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn grid(n: usize) -> Vec<f64> {
        (0..n).map(|k| k as f64 * TAU / n as f64).collect()
    }

    #[test]
    fn recovers_low_harmonics_exactly() {
        let n = 32;
        let f = |t: f64| 1.5 + 0.7 * (3.0 * t).cos() - 0.2 * (5.0 * t).sin();
        let samples: Vec<f64> = grid(n).iter().map(|&t| f(t)).collect();
        let s = TrigSeries::from_samples(&samples);
        for &t in &[0.1, 1.3, 4.0] {
            assert!((s.eval(t) - f(t)).abs() < 1e-12);
            let d = -2.1 * (3.0 * t).sin() - 1.0 * (5.0 * t).cos();
            assert!((s.deriv(t) - d).abs() < 1e-11);
            let d2 = -6.3 * (3.0 * t).cos() + 5.0 * (5.0 * t).sin();
            assert!((s.deriv2(t) - d2).abs() < 1e-10);
        }
    }

    #[test]
    fn interpolates_samples() {
        let n = 64;
        let samples: Vec<f64> = grid(n).iter().map(|&t| (t.sin() * 2.0).exp()).collect();
        let s = TrigSeries::from_samples(&samples);
        for (k, &t) in grid(n).iter().enumerate() {
            assert!((s.eval(t) - samples[k]).abs() < 1e-10 * (1.0 + samples[k].abs()));
        }
    }

    #[test]
    fn quadrature_of_smooth_function_is_spectral() {
        let n = 64;
        let samples: Vec<f64> = grid(n).iter().map(|&t| (t.cos()).exp()).collect();
        // integral of e^{cos t} over [0,2pi] = 2*pi*I0(1)
        let i0 = 1.2660658777520084;
        assert!((periodic_trapezoid(&samples) - TAU * i0).abs() < 1e-12);
    }
}
