//! Small linear-algebra aliases and helpers on top of nalgebra.

pub use nalgebra::{Matrix2, Matrix3, Vector2, Vector3};

pub type Vec2 = Vector2<f64>;
pub type Vec3 = Vector3<f64>;
pub type Mat2 = Matrix2<f64>;
pub type Mat3 = Matrix3<f64>;

/// Unit vector at angle `theta`.
#[inline]
pub fn unit(theta: f64) -> Vec2 {
    Vec2::new(theta.cos(), theta.sin())
}

/// Counterclockwise rotation by 90 degrees.
#[inline]
pub fn rot90(v: Vec2) -> Vec2 {
    Vec2::new(-v.y, v.x)
}

/// 2x2 determinant of the pair (a, b) as columns.
#[inline]
pub fn det2(a: Vec2, b: Vec2) -> f64 {
    a.x * b.y - a.y * b.x
}

/// Angle of `v` in [0, 2pi).
#[inline]
pub fn angle_of(v: Vec2) -> f64 {
    let a = v.y.atan2(v.x);
    if a < 0.0 {
        a + std::f64::consts::TAU
    } else {
        a
    }
}

/// Eigen-decomposition of a symmetric 2x2 matrix `[[q11,q12],[q12,q22]]`.
/// Returns (eigenvalues ascending, corresponding unit eigenvectors).
pub fn sym_eigen2(q11: f64, q12: f64, q22: f64) -> ([f64; 2], [Vec2; 2]) {
    let tr = q11 + q22;
    let diff = q11 - q22;
    let disc = (diff * diff + 4.0 * q12 * q12).sqrt();
    let l0 = 0.5 * (tr - disc);
    let l1 = 0.5 * (tr + disc);
    // Eigenvector for l1: (q12, l1 - q11) unless that is tiny.
    let v1 = if q12.abs() > 1e-300 {
        Vec2::new(q12, l1 - q11).normalize()
    } else if q11 >= q22 {
        Vec2::new(1.0, 0.0)
    } else {
        Vec2::new(0.0, 1.0)
    };
    let v0 = rot90(v1);
    ([l0, l1], [v0, v1])
}

/// Golden-section minimization of `f` on `[a, b]`, returning (argmin, min).
pub fn golden_min(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INVPHI * (b - a);
    let mut x2 = a + INVPHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a).abs() > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INVPHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INVPHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Golden-section maximization, returning (argmax, max).
pub fn golden_max(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (x, v) = golden_min(|t| -f(t), a, b, tol);
    (x, -v)
}

/// Downhill-simplex minimization in two parameters (reflection 1,
/// expansion 2, contraction 1/2, shrink 1/2); deterministic.
pub fn nelder_mead2(
    mut f: impl FnMut([f64; 2]) -> f64,
    x0: [f64; 2],
    step: f64,
    iters: usize,
) -> ([f64; 2], f64) {
    let mut pts = [x0, [x0[0] + step, x0[1]], [x0[0], x0[1] + step]];
    let mut vals = [f(pts[0]), f(pts[1]), f(pts[2])];
    let add = |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * b[0], a[1] + t * b[1]];
    let sub = |a: [f64; 2], b: [f64; 2]| [a[0] - b[0], a[1] - b[1]];
    for _ in 0..iters {
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&a, &b| (vals[a], a).partial_cmp(&(vals[b], b)).unwrap());
        let (best, mid, worst) = (idx[0], idx[1], idx[2]);
        let centroid = [
            0.5 * (pts[best][0] + pts[mid][0]),
            0.5 * (pts[best][1] + pts[mid][1]),
        ];
        let dir = sub(centroid, pts[worst]);
        if dir[0].abs() + dir[1].abs() < 1e-14 * (1.0 + step.abs()) {
            break;
        }
        let refl = add(centroid, dir, 1.0);
        let fr = f(refl);
        if fr < vals[best] {
            let exp = add(centroid, dir, 2.0);
            let fe = f(exp);
            if fe < fr {
                pts[worst] = exp;
                vals[worst] = fe;
            } else {
                pts[worst] = refl;
                vals[worst] = fr;
            }
        } else if fr < vals[mid] {
            pts[worst] = refl;
            vals[worst] = fr;
        } else {
            let con = add(centroid, dir, -0.5);
            let fc = f(con);
            if fc < vals[worst] {
                pts[worst] = con;
                vals[worst] = fc;
            } else {
                for i in [mid, worst] {
                    pts[i] = [
                        0.5 * (pts[i][0] + pts[best][0]),
                        0.5 * (pts[i][1] + pts[best][1]),
                    ];
                    vals[i] = f(pts[i]);
                }
            }
        }
    }
    let mut k = 0;
    for i in 1..3 {
        if vals[i] < vals[k] {
            k = i;
        }
    }
    (pts[k], vals[k])
}

/// Bisection for a root of `f` on the bracket `[lo, hi]` (f(lo) and f(hi) of
/// opposite sign); runs a fixed number of halvings.
pub fn bisect(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> f64 {
    let mut flo = f(lo);
    for _ in 0..iters {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
