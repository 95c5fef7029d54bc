//! Critical determinants and critical lattices of symmetric planar bodies,
//! minimal central triangles, the d21 density, *critical lattices, and the
//! circumscribed-triangle construction of non-separable lattices.
//!
//! The critical determinant of a symmetric body equals the minimal
//! |det(p1, p2)| over boundary triples p1, p2, p3 = p1 + p2 (the triple
//! characterization of critical lattices); the search below scans the first
//! boundary half for p1, solves gauge(p1 + gamma(s)) = 1 for the partner
//! point, and refines the best node by golden section.

use crate::error::{GeomError, Result};
use crate::geom2d::{Body2D, Ellipse2D, Polygon2D, SupportSampled2D};
use crate::la::{det2, golden_min, unit, Mat2, Vec2};
use crate::lattice::{is_nonseparable2, Lattice2, WidthCertificate};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Default node count for the p1 scan over half the boundary.
pub const DEFAULT_SCAN_RESOLUTION: usize = 2048;
/// Fixed grid used to bracket the partner-point roots.
const MARCH_GRID: usize = 256;
/// Sample count for polars feeding determinant-accurate paths: the polar of
/// a sampled body is less smooth than the body, so its interpolant gets a
/// finer grid (largest size the direct O(n^2) transforms are budgeted for).
const REFINED_POLAR_SAMPLES: usize = 4096;

/// Output of the critical-lattice search: the minimal determinant, the
/// boundary triple p3 = p1 + p2, per-point boundary residuals (gauge - 1),
/// and the scan resolution used.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriticalCertificate {
    pub delta: f64,
    #[serde(with = "serde_vec2")]
    pub p1: Vec2,
    #[serde(with = "serde_vec2")]
    pub p2: Vec2,
    #[serde(with = "serde_vec2")]
    pub p3: Vec2,
    pub residuals: [f64; 3],
    pub scan_resolution: usize,
}

/// A triangle with barycenter at the origin.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CentralTriangle {
    #[serde(with = "serde_vec2_array")]
    pub vertices: [Vec2; 3],
    pub area: f64,
}

impl CriticalCertificate {
    pub fn lattice(&self) -> Result<Lattice2> {
        Lattice2::from_columns(self.p1, self.p2)
    }
}

/// Critical determinant search at the default resolution.
pub fn critical_lattice(body: &Body2D) -> Result<CriticalCertificate> {
    critical_lattice_with(body, DEFAULT_SCAN_RESOLUTION)
}

/// Critical determinant search with an explicit scan resolution.
/// Ellipses take the closed-form path (disk triple mapped through the
/// ellipse's linear image); polygons and sampled bodies are scanned.
pub fn critical_lattice_with(body: &Body2D, resolution: usize) -> Result<CriticalCertificate> {
    if !body.is_symmetric() {
        return Err(GeomError::Precondition(
            "critical lattice search needs a centrally symmetric body".into(),
        ));
    }
    if !body.origin_interior() {
        return Err(GeomError::Precondition(
            "critical lattice search needs the origin interior".into(),
        ));
    }
    match body {
        Body2D::Ellipse(e) => ellipse_certificate(e, resolution),
        _ => scan_certificate(body, resolution),
    }
}

/// Re-checks a certificate against a body: triple closure, determinant,
/// boundary residuals, and admissibility of the spanned lattice.
pub fn validate_certificate(body: &Body2D, cert: &CriticalCertificate) -> Result<()> {
    let scale = body.scale();
    if (cert.p1 + cert.p2 - cert.p3).norm() > 1e-9 * scale {
        return Err(GeomError::Internal("certificate triple does not close".into()));
    }
    if (det2(cert.p1, cert.p2).abs() - cert.delta).abs() > 1e-8 * scale * scale {
        return Err(GeomError::Internal("certificate determinant mismatch".into()));
    }
    for p in [cert.p1, cert.p2, cert.p3] {
        let g = body.gauge(p)?;
        if (g - 1.0).abs() > 1e-7 {
            return Err(GeomError::Internal(format!(
                "certificate point off the boundary: gauge {g}"
            )));
        }
    }
    let adm = crate::lattice::is_admissible2(body, &cert.lattice()?)?;
    if !adm.admissible {
        return Err(GeomError::Internal("certificate lattice not admissible".into()));
    }
    Ok(())
}

fn ellipse_certificate(e: &Ellipse2D, resolution: usize) -> Result<CriticalCertificate> {
    let d1 = unit(e.phi);
    let d2 = crate::la::rot90(d1);
    let m = Mat2::from_columns(&[e.a * d1, e.b * d2]);
    let q1 = Vec2::new(1.0, 0.0);
    let q2 = Vec2::new(-0.5, 3f64.sqrt() / 2.0);
    let (p1, p2) = (m * q1, m * q2);
    let p3 = p1 + p2;
    let residuals = [
        e.gauge(p1) - 1.0,
        e.gauge(p2) - 1.0,
        e.gauge(p3) - 1.0,
    ];
    Ok(CriticalCertificate {
        delta: e.a * e.b * 3f64.sqrt() / 2.0,
        p1,
        p2,
        p3,
        residuals,
        scan_resolution: resolution,
    })
}

// ---------------------------------------------------------------------------
// Scan machinery for polygon and sampled paths
// ---------------------------------------------------------------------------

/// Boundary access for the scan. Polygons walk by normalized arc length so
/// edges are fully covered; sampled bodies use the support angle.
enum ScanPath<'a> {
    Poly(&'a Polygon2D),
    Smooth(&'a SupportSampled2D),
}

impl<'a> ScanPath<'a> {
    fn point(&self, tau: f64) -> Vec2 {
        match self {
            ScanPath::Poly(p) => p.at_arc(tau).0,
            ScanPath::Smooth(s) => s.boundary(tau * TAU).0,
        }
    }

    /// Cheap gauge for bracketing. Exact for polygons; the grid-restricted
    /// dual maximum for sampled bodies, optionally windowed around `hint`.
    fn gauge_quick(&self, x: Vec2, hint: &mut usize) -> f64 {
        match self {
            ScanPath::Poly(p) => p.gauge(x).unwrap_or(f64::INFINITY),
            ScanPath::Smooth(s) => {
                let h = s.samples();
                let n = h.len();
                let eval = |k: usize, x: Vec2| {
                    let t = k as f64 * TAU / n as f64;
                    (x.x * t.cos() + x.y * t.sin()) / h[k]
                };
                // windowed argmax around the hint, verified to be a local max
                let w = 24usize;
                let mut best = (usize::MAX, f64::NEG_INFINITY);
                for d in 0..=2 * w {
                    let k = (*hint + n + d - w) % n;
                    let v = eval(k, x);
                    if v > best.1 {
                        best = (k, v);
                    }
                }
                let edge_l = (*hint + n - w) % n;
                let edge_r = (*hint + w) % n;
                if best.0 == edge_l || best.0 == edge_r {
                    // window missed the peak: full scan
                    best = (0, f64::NEG_INFINITY);
                    for k in 0..n {
                        let v = eval(k, x);
                        if v > best.1 {
                            best = (k, v);
                        }
                    }
                }
                *hint = best.0;
                best.1.max(0.0)
            }
        }
    }

    /// High-accuracy gauge: exact for polygons, Newton-refined dual maximum
    /// for sampled bodies.
    fn gauge_exact(&self, x: Vec2) -> f64 {
        match self {
            ScanPath::Poly(p) => p.gauge(x).unwrap_or(f64::INFINITY),
            ScanPath::Smooth(s) => gauge_newton(s, x),
        }
    }

    fn is_poly(&self) -> bool {
        matches!(self, ScanPath::Poly(_))
    }
}

/// Dual-maximization gauge with Newton refinement from the grid argmax.
fn gauge_newton(s: &SupportSampled2D, x: Vec2) -> f64 {
    if x.norm() == 0.0 {
        return 0.0;
    }
    let h = s.samples();
    let n = h.len();
    let dt = TAU / n as f64;
    let mut best = (0usize, f64::NEG_INFINITY);
    for k in 0..n {
        let t = k as f64 * dt;
        let v = (x.x * t.cos() + x.y * t.sin()) / h[k];
        if v > best.1 {
            best = (k, v);
        }
    }
    let series = s.series();
    let phi = |t: f64| {
        let (st, ct) = t.sin_cos();
        (x.x * ct + x.y * st) / series.eval(t)
    };
    let mut t = best.0 as f64 * dt;
    let mut converged = false;
    for _ in 0..6 {
        let (st, ct) = t.sin_cos();
        let c = x.x * ct + x.y * st;
        let cp = -x.x * st + x.y * ct;
        let hv = series.eval(t);
        let hp = series.deriv(t);
        let hpp = series.deriv2(t);
        let d1 = cp / hv - c * hp / (hv * hv);
        let d2 = -c / hv - 2.0 * cp * hp / (hv * hv) - c * hpp / (hv * hv)
            + 2.0 * c * hp * hp / (hv * hv * hv);
        if d2 >= 0.0 {
            break;
        }
        let step = d1 / d2;
        if step.abs() > dt {
            break;
        }
        t -= step;
        if step.abs() < 1e-14 {
            converged = true;
            break;
        }
    }
    if converged || phi(t) >= best.1 {
        phi(t).max(best.1).max(0.0)
    } else {
        // fall back to golden refinement around the grid argmax
        let t0 = best.0 as f64 * dt;
        let (_, v) = crate::la::golden_max(phi, t0 - dt, t0 + dt, 1e-12);
        v.max(best.1).max(0.0)
    }
}

/// Exact partner candidates for the polygon path: p2 with p2 and p1 + p2
/// both on the boundary, found as crossings of the boundary with its
/// translate by p1. Collinear edge overlaps contribute their endpoints
/// (the determinant objective is linear along an overlap, so endpoints
/// suffice).
fn poly_candidates(p: &Polygon2D, p1: Vec2) -> Vec<(f64, Vec2)> {
    let verts = p.vertices();
    let n = verts.len();
    let scale = p.scale();
    let eps = 1e-12 * scale * scale;
    let mut out = Vec::new();
    for i in 0..n {
        let a = verts[i] + p1;
        let r = verts[(i + 1) % n] - verts[i];
        for j in 0..n {
            let c = verts[j];
            let q = verts[(j + 1) % n] - verts[j];
            let denom = det2(r, q);
            let ac = c - a;
            if denom.abs() > eps {
                let t = det2(ac, q) / denom;
                let u = det2(ac, r) / denom;
                if (-1e-12..=1.0 + 1e-12).contains(&t) && (-1e-12..=1.0 + 1e-12).contains(&u) {
                    let p2 = verts[i] + r * t.clamp(0.0, 1.0);
                    out.push((p.arc_on_edge(i, p2), p2));
                }
            } else if det2(ac, r).abs() <= eps {
                // collinear edges: overlap interval endpoints
                let rr = r.norm_squared();
                let t0 = (c - a).dot(&r) / rr;
                let t1 = (c + q - a).dot(&r) / rr;
                let (lo, hi) = (t0.min(t1).max(0.0), t0.max(t1).min(1.0));
                if lo <= hi + 1e-12 {
                    for t in [lo, hi] {
                        let p2 = verts[i] + r * t;
                        out.push((p.arc_on_edge(i, p2), p2));
                    }
                }
            }
        }
    }
    out
}

/// Partner roots of gauge(p1 + gamma(s)) = 1 for one scan node of the smooth
/// path, bracketed on the fixed march grid and bisected.
struct RootContext<'a> {
    path: &'a ScanPath<'a>,
    grid_pts: &'a [Vec2],
}

impl<'a> RootContext<'a> {
    /// All partner candidates (s, p2) for the given scan node.
    fn candidates(&self, tau: f64, p1: Vec2) -> Result<Vec<(f64, Vec2)>> {
        match self.path {
            ScanPath::Poly(p) => {
                let cands = poly_candidates(p, p1);
                if cands.is_empty() {
                    return Err(GeomError::RootFinding(
                        "no boundary crossing for the partner-point solve".into(),
                    ));
                }
                Ok(cands)
            }
            ScanPath::Smooth(_) => Ok(self.roots(tau, p1)?.to_vec()),
        }
    }

    /// g(s) at a march-grid node.
    fn g_at(&self, j: usize, p1: Vec2, hint: &mut usize) -> f64 {
        self.path.gauge_quick(p1 + self.grid_pts[j % MARCH_GRID], hint) - 1.0
    }

    fn g_cont(&self, s: f64, p1: Vec2, hint: &mut usize) -> f64 {
        self.path.gauge_quick(p1 + self.path.point(s), hint) - 1.0
    }

    /// Locate the two crossings of the inclusion arc around s0 ~ tau + 1/2.
    fn roots(&self, tau: f64, p1: Vec2) -> Result<[(f64, Vec2); 2]> {
        let mut hint = 0usize;
        let j0 = ((tau + 0.5).rem_euclid(1.0) * MARCH_GRID as f64).round() as usize;
        let mut j_in = j0;
        if self.g_at(j0, p1, &mut hint) >= 0.0 {
            // fall back: full scan for the most interior node
            let mut best = (j0, f64::INFINITY);
            for j in 0..MARCH_GRID {
                let g = self.g_at(j, p1, &mut hint);
                if g < best.1 {
                    best = (j, g);
                }
            }
            if best.1 >= 0.0 {
                return Err(GeomError::RootFinding(
                    "no interior arc for the partner-point solve".into(),
                ));
            }
            j_in = best.0;
        }
        let mut out = [(0.0, Vec2::zeros()); 2];
        for (dir, slot) in [(1i64, 0usize), (-1i64, 1usize)] {
            let mut prev = j_in as i64;
            let mut found = None;
            for step in 1..=MARCH_GRID as i64 {
                let j = j_in as i64 + dir * step;
                let jm = j.rem_euclid(MARCH_GRID as i64) as usize;
                if self.g_at(jm, p1, &mut hint) >= 0.0 {
                    found = Some((prev, j));
                    break;
                }
                prev = j;
            }
            let (a, b) = found.ok_or_else(|| {
                GeomError::RootFinding("partner-point arc never exits the body".into())
            })?;
            let (mut lo, mut hi) = (a as f64 / MARCH_GRID as f64, b as f64 / MARCH_GRID as f64);
            // g(lo) < 0 <= g(hi); bisection on the continuous parameter
            for _ in 0..45 {
                let mid = 0.5 * (lo + hi);
                if self.g_cont(mid, p1, &mut hint) < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let s = 0.5 * (lo + hi);
            out[slot] = (s.rem_euclid(1.0), self.path.point(s));
        }
        Ok(out)
    }

    /// Polish a root with the exact gauge (no-op for polygons, whose quick
    /// gauge is already exact).
    fn polish(&self, s: f64, p1: Vec2) -> (f64, Vec2) {
        if self.path.is_poly() {
            return (s, self.path.point(s));
        }
        let g = |s: f64| self.path.gauge_exact(p1 + self.path.point(s)) - 1.0;
        let mut eps = 1.0 / (4.0 * MARCH_GRID as f64);
        let (mut lo, mut hi) = (s - eps, s + eps);
        let mut glo = g(lo);
        let mut ghi = g(hi);
        for _ in 0..10 {
            if (glo < 0.0) != (ghi < 0.0) {
                break;
            }
            eps *= 2.0;
            lo = s - eps;
            hi = s + eps;
            glo = g(lo);
            ghi = g(hi);
        }
        if (glo < 0.0) == (ghi < 0.0) {
            return (s, self.path.point(s)); // fall back to the quick root
        }
        if glo > 0.0 {
            std::mem::swap(&mut lo, &mut hi);
        }
        for _ in 0..50 {
            let mid = 0.5 * (lo + hi);
            if g(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let s = 0.5 * (lo + hi);
        (s.rem_euclid(1.0), self.path.point(s))
    }
}

fn scan_certificate(body: &Body2D, resolution: usize) -> Result<CriticalCertificate> {
    if resolution < 8 {
        return Err(GeomError::Domain("scan resolution must be at least 8".into()));
    }
    let path = match body {
        Body2D::Polygon(p) => ScanPath::Poly(p),
        Body2D::Sampled(s) => ScanPath::Smooth(s),
        Body2D::Ellipse(_) => unreachable!("ellipses take the analytic path"),
    };
    let grid_pts: Vec<Vec2> = (0..MARCH_GRID)
        .map(|j| path.point(j as f64 / MARCH_GRID as f64))
        .collect();
    let ctx = RootContext { path: &path, grid_pts: &grid_pts };

    let objective_quick = |tau: f64| -> Result<f64> {
        let p1 = path.point(tau);
        let cands = ctx.candidates(tau, p1)?;
        Ok(cands
            .iter()
            .map(|(_, p2)| det2(p1, *p2).abs())
            .fold(f64::INFINITY, f64::min))
    };

    // scan p1 over half the boundary (the other half repeats by symmetry)
    let scanned: Result<Vec<f64>> = (0..resolution)
        .into_par_iter()
        .map(|k| objective_quick(0.5 * k as f64 / resolution as f64))
        .collect();
    let scanned = scanned?;
    let mut best_k = 0usize;
    for (k, v) in scanned.iter().enumerate() {
        if *v < scanned[best_k] {
            best_k = k;
        }
    }

    // golden refinement with polished roots
    let objective_acc = |tau: f64| -> f64 {
        let p1 = path.point(tau);
        match ctx.candidates(tau, p1) {
            Ok(cands) => cands
                .iter()
                .map(|(s, _)| {
                    let (_, p2) = ctx.polish(*s, p1);
                    det2(p1, p2).abs()
                })
                .fold(f64::INFINITY, f64::min),
            Err(_) => f64::INFINITY,
        }
    };
    let step = 0.5 / resolution as f64;
    let t0 = 0.5 * best_k as f64 / resolution as f64;
    let (tau_opt, _) = golden_min(objective_acc, t0 - step, t0 + step, 1e-10);

    // final triple at the refined node
    let p1 = path.point(tau_opt);
    let cands = ctx.candidates(tau_opt, p1)?;
    let mut best: Option<(f64, f64, Vec2)> = None; // (det, s, p2)
    for (s, _) in cands.iter() {
        let (s_pol, p2) = ctx.polish(*s, p1);
        let d = det2(p1, p2).abs();
        let better = match &best {
            None => true,
            Some((bd, bs, _)) => d < *bd - 0.0 || (d == *bd && s_pol < *bs),
        };
        if better {
            best = Some((d, s_pol, p2));
        }
    }
    let (delta, _, p2) = best.expect("two roots");
    let p3 = p1 + p2;
    let residuals = [
        path.gauge_exact(p1) - 1.0,
        path.gauge_exact(p2) - 1.0,
        path.gauge_exact(p3) - 1.0,
    ];
    Ok(CriticalCertificate { delta, p1, p2, p3, residuals, scan_resolution: resolution })
}

// ---------------------------------------------------------------------------
// Derived quantities
// ---------------------------------------------------------------------------

/// Minimal central triangle inscribed in the body: vertices
/// (p1, p2, -p3) of the critical triple; area = (3/2) delta.
pub fn minimal_central_triangle(body: &Body2D) -> Result<CentralTriangle> {
    minimal_central_triangle_with(body, DEFAULT_SCAN_RESOLUTION)
}

pub fn minimal_central_triangle_with(
    body: &Body2D,
    resolution: usize,
) -> Result<CentralTriangle> {
    let cert = critical_lattice_with(body, resolution)?;
    Ok(CentralTriangle {
        vertices: [cert.p1, cert.p2, -cert.p3],
        area: 1.5 * cert.delta,
    })
}

/// Result of the d21 computation (minimal density of a non-separable lattice
/// of translates), via the dual determinant formula
/// d21 = |K| * Delta(((K-K)/2)°) / 4.
#[derive(Debug, Clone, Serialize)]
pub struct D21Result {
    pub value: f64,
    pub area: f64,
    pub symmetral_area: f64,
    pub polar_critical: CriticalCertificate,
}

pub fn d21(body: &Body2D) -> Result<D21Result> {
    d21_with(body, DEFAULT_SCAN_RESOLUTION)
}

pub fn d21_with(body: &Body2D, resolution: usize) -> Result<D21Result> {
    let symmetral = body.difference_body()?;
    let polar = symmetral.polar_refined(REFINED_POLAR_SAMPLES)?;
    let cert = critical_lattice_with(&polar, resolution)?;
    Ok(D21Result {
        value: body.area() * cert.delta / 4.0,
        area: body.area(),
        symmetral_area: symmetral.area(),
        polar_critical: cert,
    })
}

/// A maximal-determinant non-separable lattice for a symmetric body:
/// L = (Q^T)^{-1} Z^2 where Q is the critical basis of (1/2) K°; then
/// d(L) = 4 / Delta(K°) and K + L is non-separable (certified).
pub fn star_critical_lattice(body: &Body2D) -> Result<(Lattice2, WidthCertificate)> {
    star_critical_lattice_with(body, DEFAULT_SCAN_RESOLUTION)
}

pub fn star_critical_lattice_with(
    body: &Body2D,
    resolution: usize,
) -> Result<(Lattice2, WidthCertificate)> {
    if !body.is_symmetric() {
        return Err(GeomError::Precondition(
            "star critical lattice needs a centrally symmetric body".into(),
        ));
    }
    let half_polar = body.polar_refined(REFINED_POLAR_SAMPLES)?.scale_by(0.5)?;
    let cert = critical_lattice_with(&half_polar, resolution)?;
    let q = Mat2::from_columns(&[cert.p1, cert.p2]);
    let basis = q
        .transpose()
        .try_inverse()
        .ok_or_else(|| GeomError::Degenerate("critical basis is singular".into()))?;
    let lat = Lattice2::new(basis)?;
    let width = is_nonseparable2(body, &lat)?;
    Ok((lat, width))
}

/// Output of the circumscribed-triangle lattice construction.
#[derive(Debug, Clone, Serialize)]
pub struct TriangleConstruction {
    pub lattice: Lattice2,
    pub width: WidthCertificate,
    /// Area of the circumscribed triangle T = (T°)°.
    pub t_area: f64,
    /// Area of the inscribed polar triangle T°.
    pub tpolar_area: f64,
    /// |T| * |T°|, equal to 27/4 for central triangles.
    pub product: f64,
    /// |K| * |T°| <= (3 sqrt(3) / 4) pi, the density hypothesis.
    pub hypothesis_ok: bool,
}

/// Builds the non-separable lattice spanned by (2/3)(C - A) and
/// (2/3)(B - A), where ABC is the central triangle circumscribed about the
/// body whose polar triangle (vertex on the polar boundary) is `tpolar`.
pub fn nonsep_lattice_from_triangle(
    body: &Body2D,
    tpolar: &CentralTriangle,
) -> Result<TriangleConstruction> {
    let scale = body.scale();
    let [q1, q2, q3] = tpolar.vertices;
    if (q1 + q2 + q3).norm() > 1e-9 / scale.max(1e-300) + 1e-9 * tpolar.area.sqrt() {
        return Err(GeomError::Precondition(
            "polar triangle barycenter is not at the origin".into(),
        ));
    }
    // vertex q on the polar boundary <=> support_K(q) = 1
    for q in [q1, q2, q3] {
        let s = body.support(q)?;
        if (s - 1.0).abs() > 1e-7 {
            return Err(GeomError::Precondition(format!(
                "polar triangle vertex not on the polar boundary (support {s})"
            )));
        }
    }
    // polish the admitted triangle onto the exact boundary: radial snap to
    // {support = 1} alternated with recentering the barycenter; makes the
    // touching widths of the constructed lattice exact to machine precision
    let mut q = [q1, q2, q3];
    for _ in 0..60 {
        for v in q.iter_mut() {
            *v /= body.support(*v)?;
        }
        let center = (q[0] + q[1] + q[2]) / 3.0;
        if center.norm() <= 1e-16 * scale {
            break;
        }
        for v in q.iter_mut() {
            *v -= center;
        }
    }
    let [q1, q2, q3] = q;
    // circumscribed triangle: vertex i solves <q_j, x> = 1 for both j != i
    let solve = |qa: Vec2, qb: Vec2| -> Result<Vec2> {
        let m = Mat2::new(qa.x, qa.y, qb.x, qb.y);
        m.try_inverse()
            .map(|inv| inv * Vec2::new(1.0, 1.0))
            .ok_or_else(|| GeomError::Degenerate("degenerate polar triangle".into()))
    };
    let a = solve(q2, q3)?;
    let b = solve(q1, q3)?;
    let c = solve(q1, q2)?;
    let t_area = 0.5 * det2(b - a, c - a).abs();
    let tpolar_area = 0.5 * det2(q2 - q1, q3 - q1).abs();
    let product = t_area * tpolar_area;
    if (product - 27.0 / 4.0).abs() > 1e-9 * (1.0 + product) {
        return Err(GeomError::Internal(format!(
            "central triangle polar product {product} != 27/4"
        )));
    }
    let v1 = (c - a) * (2.0 / 3.0);
    let v2 = (b - a) * (2.0 / 3.0);
    let lattice = Lattice2::from_columns(v1, v2)?;
    if (lattice.det() - 8.0 / 9.0 * t_area).abs() > 1e-9 * (1.0 + t_area) {
        return Err(GeomError::Internal(
            "construction determinant differs from (8/9)|T|".into(),
        ));
    }
    let width = is_nonseparable2(body, &lattice)?;
    let hypothesis_ok =
        body.area() * tpolar_area <= 0.75 * 3f64.sqrt() * std::f64::consts::PI * (1.0 + 1e-12);
    Ok(TriangleConstruction { lattice, width, t_area, tpolar_area, product, hypothesis_ok })
}

// ---------------------------------------------------------------------------
// serde helpers for Vec2 fields
// ---------------------------------------------------------------------------

mod serde_vec2 {
    use crate::la::Vec2;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Vec2, s: S) -> Result<S::Ok, S::Error> {
        [v.x, v.y].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec2, D::Error> {
        let [x, y] = <[f64; 2]>::deserialize(d)?;
        Ok(Vec2::new(x, y))
    }
}

mod serde_vec2_array {
    use crate::la::Vec2;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec2; 3], s: S) -> Result<S::Ok, S::Error> {
        [[v[0].x, v[0].y], [v[1].x, v[1].y], [v[2].x, v[2].y]].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Vec2; 3], D::Error> {
        let a = <[[f64; 2]; 3]>::deserialize(d)?;
        Ok([
            Vec2::new(a[0][0], a[0][1]),
            Vec2::new(a[1][0], a[1][1]),
            Vec2::new(a[2][0], a[2][1]),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn diamond() -> Body2D {
        Body2D::polygon(vec![
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(-1.0, 0.0),
            Vec2::new(0.0, -1.0),
        ])
        .unwrap()
    }

    #[test]
    fn disk_critical_determinant() {
        let disk = Body2D::unit_disk_sampled(1024);
        let cert = critical_lattice(&disk).unwrap();
        assert!(
            (cert.delta - 3f64.sqrt() / 2.0).abs() < 1e-7,
            "delta {}",
            cert.delta
        );
        for p in [cert.p1, cert.p2, cert.p3] {
            assert!((p.norm() - 1.0).abs() < 1e-7);
        }
        validate_certificate(&disk, &cert).unwrap();
    }

    #[test]
    fn diamond_critical_determinant_is_half() {
        let cert = critical_lattice(&diamond()).unwrap();
        assert!((cert.delta - 0.5).abs() < 1e-9, "delta {}", cert.delta);
        validate_certificate(&diamond(), &cert).unwrap();
    }

    #[test]
    fn ellipse_critical_by_equivariance() {
        let e = Body2D::Ellipse(Ellipse2D::new(2.0, 1.0, 0.0).unwrap());
        let cert = critical_lattice(&e).unwrap();
        assert!((cert.delta - 3f64.sqrt()).abs() < 1e-12);
        validate_certificate(&e, &cert).unwrap();
    }

    #[test]
    fn minimal_triangle_examples() {
        let disk = Body2D::unit_disk_sampled(512);
        let t = minimal_central_triangle(&disk).unwrap();
        assert!((t.area - 0.75 * 3f64.sqrt()).abs() < 1e-6);
        let sum = t.vertices[0] + t.vertices[1] + t.vertices[2];
        assert!(sum.norm() < 1e-9);
        let t = minimal_central_triangle(&diamond()).unwrap();
        assert!((t.area - 0.75).abs() < 1e-9);
    }

    #[test]
    fn d21_of_triangle_is_three_eighths() {
        let tri = Body2D::polygon(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.5),
            Vec2::new(0.5, 1.0),
        ])
        .unwrap();
        let r = d21(&tri).unwrap();
        assert!((r.value - 0.375).abs() < 1e-9, "d21 {}", r.value);
        assert!((r.symmetral_area - 9.0 / 16.0).abs() < 1e-12);
    }

    #[test]
    fn d21_of_square_is_half() {
        let sq = Body2D::polygon(vec![
            Vec2::new(1.0, -1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(-1.0, 1.0),
            Vec2::new(-1.0, -1.0),
        ])
        .unwrap();
        let r = d21(&sq).unwrap();
        assert!((r.value - 0.5).abs() < 1e-9, "d21 {}", r.value);
    }

    #[test]
    fn d21_of_disk_is_known_constant() {
        let disk = Body2D::unit_disk_sampled(1024);
        let r = d21(&disk).unwrap();
        let target = PI * 3f64.sqrt() / 8.0;
        assert!((r.value - target).abs() < 1e-7, "d21 {} vs {target}", r.value);
    }

    #[test]
    fn star_critical_triangle_symmetral_is_standard_lattice() {
        let tri = Body2D::polygon(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.5),
            Vec2::new(0.5, 1.0),
        ])
        .unwrap();
        let hexagon = tri.difference_body().unwrap();
        let (lat, width) = star_critical_lattice(&hexagon).unwrap();
        assert!(width.verdict);
        assert!((lat.det() - 1.0).abs() < 1e-8, "det {}", lat.det());
    }

    #[test]
    fn star_critical_disk() {
        let disk = Body2D::unit_disk_sampled(512);
        let (lat, width) = star_critical_lattice(&disk).unwrap();
        assert!(width.verdict);
        assert!((lat.det() - 8.0 / 3f64.sqrt()).abs() < 1e-6, "det {}", lat.det());
    }

    #[test]
    fn square_star_critical_det_is_eight() {
        let sq = Body2D::polygon(vec![
            Vec2::new(1.0, -1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(-1.0, 1.0),
            Vec2::new(-1.0, -1.0),
        ])
        .unwrap();
        let (lat, width) = star_critical_lattice(&sq).unwrap();
        assert!(width.verdict);
        assert!((lat.det() - 8.0).abs() < 1e-8, "det {}", lat.det());
    }

    #[test]
    fn triangle_construction_disk() {
        let disk = Body2D::unit_disk_sampled(512);
        // equilateral inscribed in the unit circle (polar of the unit disk)
        let q = |t: f64| Vec2::new(t.cos(), t.sin());
        let tpolar = CentralTriangle {
            vertices: [
                q(PI / 2.0),
                q(PI / 2.0 + 2.0 * PI / 3.0),
                q(PI / 2.0 + 4.0 * PI / 3.0),
            ],
            area: 0.75 * 3f64.sqrt(),
        };
        let con = nonsep_lattice_from_triangle(&disk, &tpolar).unwrap();
        assert!((con.t_area - 3.0 * 3f64.sqrt()).abs() < 1e-9);
        assert!((con.product - 6.75).abs() < 1e-10);
        assert!((con.lattice.det() - 8.0 * 3f64.sqrt() / 3.0).abs() < 1e-9);
        assert!(con.width.verdict);
        // density equals pi sqrt(3) / 8
        let density = PI / con.lattice.det();
        assert!((density - PI * 3f64.sqrt() / 8.0).abs() < 1e-9);
        assert!(con.hypothesis_ok);
    }

    #[test]
    fn triangle_construction_rejects_off_boundary() {
        let disk = Body2D::unit_disk_sampled(256);
        let tpolar = CentralTriangle {
            vertices: [
                Vec2::new(0.9, 0.0),
                Vec2::new(-0.45, 0.45 * 3f64.sqrt()),
                Vec2::new(-0.45, -0.45 * 3f64.sqrt()),
            ],
            area: 1.0,
        };
        assert!(nonsep_lattice_from_triangle(&disk, &tpolar).is_err());
    }

    #[test]
    fn certificate_json_round_trip() {
        let cert = critical_lattice(&diamond()).unwrap();
        let s = serde_json::to_string(&cert).unwrap();
        let back: CriticalCertificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back.delta, cert.delta);
        validate_certificate(&diamond(), &back).unwrap();
    }
}
