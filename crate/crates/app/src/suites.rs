//! Orchestrated verification suites behind `nonsep verify`.
//!
//! Each suite runs a list of named checks over seeded random bodies and
//! returns one row per check; the CLI prints them in order and fails the
//! process if any row fails. The acceptance tests reuse the same helpers
//! with their own counts and tolerances.

use nonsep_core::bodygen::{random_body2, random_polytope3, BodyKind, RandomBodySpec, SplitMix64};
use nonsep_core::calculus2d::{chord_gap_check, chord_identity_check, tangent_chord, PerturbedCurve};
use nonsep_core::critical2d::{
    critical_lattice, d21, minimal_central_triangle, nonsep_lattice_from_triangle,
    validate_certificate,
};
use nonsep_core::geom2d::{Body2D, Ellipse2D, SupportSampled2D};
use nonsep_core::geom3d::{petty_check, Body3D, SphereGrid};
use nonsep_core::la::{unit, Mat2, Vec2, Vec3};
use nonsep_core::lattice::{
    density2, duality_transfer_check, is_admissible2, is_nonseparable2, is_nonseparable2_scaled,
    lattice_width2, Lattice2,
};
use nonsep_core::nonsep3d::{d32_upper_bound, layered_packing, section_inequality_check, D32_BOUND};
use nonsep_core::Result;
use rayon::prelude::*;
use std::f64::consts::{PI, TAU};

/// One verification row.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, detail: String) -> Check {
        Check { name: name.to_string(), pass, detail }
    }
}

/// d21 upper bound pi sqrt(3) / 8.
pub const D21_BOUND: f64 = 0.6801747615878316;

/// A deterministic mixed family of symmetric bodies (polygons and smooth).
pub fn random_symmetric_body(seed: u64, index: usize) -> Result<Body2D> {
    let kind = if index % 2 == 0 {
        BodyKind::SymmetricPolygon { k: 4 + index % 6 }
    } else {
        BodyKind::SmoothTrig { m: 2 + index % 3, amplitude: 0.35 }
    };
    random_body2(RandomBodySpec { kind, seed: seed.wrapping_add(index as u64) })
}

pub fn random_smooth_body(seed: u64, index: usize) -> Result<Body2D> {
    random_body2(RandomBodySpec {
        kind: BodyKind::SmoothTrig { m: 2 + index % 3, amplitude: 0.35 },
        seed: seed.wrapping_add(index as u64),
    })
}

pub fn random_asymmetric_polygon(seed: u64, index: usize) -> Result<Body2D> {
    random_body2(RandomBodySpec {
        kind: BodyKind::Polygon { k: 4 + index % 6 },
        seed: seed.wrapping_add(index as u64),
    })
}

/// Hausdorff distance of convex bodies via the support-function sup norm.
pub fn hausdorff2(a: &Body2D, b: &Body2D) -> Result<f64> {
    let mut d: f64 = 0.0;
    for k in 0..512 {
        let u = unit(k as f64 * TAU / 512.0);
        d = d.max((a.support(u)? - b.support(u)?).abs());
    }
    Ok(d)
}

fn random_lattice2(rng: &mut SplitMix64, scale: f64) -> Lattice2 {
    loop {
        let m = Mat2::new(
            rng.uniform(-1.5, 1.5),
            rng.uniform(-1.5, 1.5),
            rng.uniform(-1.5, 1.5),
            rng.uniform(-1.5, 1.5),
        );
        if m.determinant().abs() > 0.25 {
            return Lattice2::new(m * scale).expect("nonsingular by construction");
        }
    }
}

fn all<I: IntoIterator<Item = (usize, bool)>>(iter: I) -> (bool, String) {
    let mut pass = true;
    let mut first_fail = None;
    for (i, ok) in iter {
        if !ok && first_fail.is_none() {
            first_fail = Some(i);
            pass = false;
        }
    }
    (pass, first_fail.map_or("all cases pass".into(), |i| format!("first failure at case {i}")))
}

// ---------------------------------------------------------------------------
// 2D suite
// ---------------------------------------------------------------------------

pub fn suite_2d(seed: u64, count: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    // support homogeneity on random bodies, directions and scales
    {
        let mut rng = SplitMix64::new(seed ^ 0x11);
        let mut ok = Vec::new();
        for i in 0..count {
            let b = random_symmetric_body(seed, i)?;
            let u = Vec2::new(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
            let u = if u.norm() < 0.1 { Vec2::new(1.0, 0.3) } else { u };
            let t = rng.uniform(0.1, 5.0);
            let lhs = b.support(u * t)?;
            let rhs = t * b.support(u)?;
            ok.push((i, (lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs())));
        }
        let (pass, detail) = all(ok);
        checks.push(Check::new("support-homogeneity", pass, detail));
    }

    // polar involution on random symmetric polygons
    {
        let mut ok = Vec::new();
        for i in 0..count {
            let b = random_body2(RandomBodySpec {
                kind: BodyKind::SymmetricPolygon { k: 4 + i % 6 },
                seed: seed.wrapping_add(i as u64),
            })?;
            let pp = b.polar()?.polar()?;
            let (Body2D::Polygon(orig), Body2D::Polygon(back)) = (&b, &pp) else {
                unreachable!()
            };
            let matched = orig.vertices().iter().all(|v| {
                back.vertices().iter().any(|w| (v - w).norm() <= 1e-9 * orig.scale())
            });
            ok.push((i, matched && orig.vertices().len() == back.vertices().len()));
        }
        let (pass, detail) = all(ok);
        checks.push(Check::new("polar-involution", pass, detail));
    }

    // sampled-path area of polygon support samples: first-order bound
    // err <= 4 |K| / n (support sampling of a kinked boundary is O(1/n));
    // smooth bodies converge spectrally, checked at 1e-9.
    {
        let square = Body2D::polygon(vec![
            Vec2::new(1.0, -1.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(-1.0, 1.0),
            Vec2::new(-1.0, -1.0),
        ])?;
        let mut pass = true;
        let mut detail = String::new();
        for n in [256usize, 1024] {
            let h: Vec<f64> = (0..n)
                .map(|k| square.support(unit(k as f64 * TAU / n as f64)).unwrap())
                .collect();
            let sampled = Body2D::Sampled(SupportSampled2D::new(h)?);
            let err = (sampled.area() - 4.0).abs();
            if err > 4.0 * 4.0 / n as f64 {
                pass = false;
            }
            detail.push_str(&format!("square n={n}: err {err:.2e}; "));
        }
        let smooth = random_smooth_body(seed, 1)?;
        let Body2D::Sampled(s) = &smooth else { unreachable!() };
        let coarse: Vec<f64> = (0..256).map(|k| s.series().eval(k as f64 * TAU / 256.0)).collect();
        let area_coarse = Body2D::Sampled(SupportSampled2D::new(coarse)?).area();
        let err = (area_coarse - smooth.area()).abs();
        if err > 1e-9 * smooth.area() {
            pass = false;
        }
        detail.push_str(&format!("smooth resample err {err:.2e}"));
        checks.push(Check::new("area-consistency", pass, detail));
    }

    // Santalo products: <= pi^2 for symmetric bodies, equality for ellipses
    {
        let mut rng = SplitMix64::new(seed ^ 0x5a);
        let mut ok = Vec::new();
        for i in 0..count {
            let b = random_symmetric_body(seed, i)?;
            let prod = b.area() * b.polar()?.area();
            ok.push((i, prod <= PI * PI * (1.0 + 1e-6)));
        }
        let e = Ellipse2D::new(rng.uniform(0.5, 2.0), rng.uniform(0.4, 1.5), rng.uniform(0.0, PI))?;
        let prod = Body2D::Ellipse(e).area() * Body2D::Ellipse(e).polar()?.area();
        ok.push((count, (prod - PI * PI).abs() <= 1e-6 * PI * PI));
        let (pass, detail) = all(ok);
        checks.push(Check::new("santalo-2d", pass, detail));
    }

    // difference body is always flagged symmetric
    {
        let mut ok = Vec::new();
        for i in 0..count {
            let b = random_asymmetric_polygon(seed, i)?;
            ok.push((i, b.difference_body()?.is_symmetric()));
        }
        let (pass, detail) = all(ok);
        checks.push(Check::new("difference-body-symmetric", pass, detail));
    }

    // omega_K = omega_{(K-K)/2} on random integer directions
    {
        let mut rng = SplitMix64::new(seed ^ 0x77);
        let mut ok = Vec::new();
        for i in 0..count.min(20) {
            let b = random_asymmetric_polygon(seed, i)?;
            let s = b.difference_body()?;
            let mut good = true;
            for _ in 0..100 {
                let u = [
                    rng.uniform(-8.0, 8.0).round() as i64,
                    rng.uniform(-8.0, 8.0).round() as i64,
                ];
                if u == [0, 0] {
                    continue;
                }
                let (wa, wb) = (lattice_width2(&b, u)?, lattice_width2(&s, u)?);
                good &= (wa - wb).abs() <= 1e-9 * (1.0 + wa);
            }
            ok.push((i, good));
        }
        let (pass, detail) = all(ok);
        checks.push(Check::new("width-symmetral-invariance", pass, detail));
    }

    // nonseparability is affine-equivariant: verdict(B, L) = verdict(MB, ML)
    {
        let mut rng = SplitMix64::new(seed ^ 0xaa);
        let mut ok = Vec::new();
        for i in 0..count.min(20) {
            let b = random_symmetric_body(seed, i)?;
            let scale = (b.area() / PI).sqrt();
            let s = rng.uniform(0.5, 1.5) * scale;
            let lat = random_lattice2(&mut rng, s);
            let m = loop {
                let m = Mat2::new(
                    rng.uniform(-1.5, 1.5),
                    rng.uniform(-1.5, 1.5),
                    rng.uniform(-1.5, 1.5),
                    rng.uniform(-1.5, 1.5),
                );
                if m.determinant().abs() > 0.3 {
                    break m;
                }
            };
            let v1 = is_nonseparable2(&b, &lat)?.verdict;
            let mb = b.linear_image(m)?;
            let mlat = Lattice2::new(m * lat.basis())?;
            let v2 = is_nonseparable2(&mb, &mlat)?.verdict;
            ok.push((i, v1 == v2));
        }
        let (pass, detail) = all(ok);
        checks.push(Check::new("nonsep-affine-equivariance", pass, detail));
    }

    // doubling the enumeration radius never flips a true verdict
    {
        let mut rng = SplitMix64::new(seed ^ 0xbb);
        let mut ok = Vec::new();
        for i in 0..count.min(20) {
            let b = random_symmetric_body(seed, i)?;
            let scale = (b.area() / PI).sqrt();
            let s = rng.uniform(0.6, 1.2) * scale;
            let lat = random_lattice2(&mut rng, s);
            let v1 = is_nonseparable2(&b, &lat)?.verdict;
            let v2 = is_nonseparable2_scaled(&b, &lat, 2.0)?.verdict;
            ok.push((i, v1 == v2));
        }
        let (pass, detail) = all(ok);
        checks.push(Check::new("nonsep-enumeration-stability", pass, detail));
    }

    // duality transfer on seeded lattices
    {
        let mut rng = SplitMix64::new(seed ^ 0xcc);
        let mut mismatches = 0;
        let mut cases = 0;
        for i in 0..count.min(10) {
            let b = random_symmetric_body(seed, i)?;
            let scale = (b.area() / PI).sqrt();
            let lats: Vec<Lattice2> = (0..5)
                .map(|_| {
                    let s = rng.uniform(0.5, 1.6) * scale;
                    random_lattice2(&mut rng, s)
                })
                .collect();
            let (rows, m) = duality_transfer_check(&b, &lats)?;
            mismatches += m;
            cases += rows.len();
        }
        checks.push(Check::new(
            "duality-transfer",
            mismatches == 0,
            format!("{cases} lattices, {mismatches} discrepancies"),
        ));
    }

    // critical determinant equivariance Delta(MB) = |det M| Delta(B)
    {
        let mut rng = SplitMix64::new(seed ^ 0xdd);
        let mut ok = Vec::new();
        for i in 0..count.min(8) {
            let b = if i == 0 {
                Body2D::unit_disk_sampled(512)
            } else {
                random_body2(RandomBodySpec {
                    kind: BodyKind::SymmetricPolygon { k: 4 + i % 5 },
                    seed: seed.wrapping_add(i as u64),
                })?
            };
            let m = loop {
                let m = Mat2::new(
                    rng.uniform(-1.4, 1.4),
                    rng.uniform(-1.4, 1.4),
                    rng.uniform(-1.4, 1.4),
                    rng.uniform(-1.4, 1.4),
                );
                if m.determinant().abs() > 0.35 {
                    break m;
                }
            };
            let d0 = critical_lattice(&b)?.delta;
            let d1 = critical_lattice(&b.linear_image(m)?)?.delta;
            let target = m.determinant().abs() * d0;
            ok.push((i, (d1 - target).abs() <= 1e-7 * (1.0 + target)));
        }
        let (pass, detail) = all(ok);
        checks.push(Check::new("critical-equivariance", pass, detail));
    }

    // every critical certificate spans an admissible lattice
    {
        let results: Vec<(usize, bool)> = (0..count.min(16))
            .into_par_iter()
            .map(|i| {
                let b = random_symmetric_body(seed, i).unwrap();
                let cert = critical_lattice(&b).unwrap();
                let adm = validate_certificate(&b, &cert).is_ok()
                    && is_admissible2(&b, &cert.lattice().unwrap()).unwrap().admissible;
                (i, adm)
            })
            .collect();
        let (pass, detail) = all(results);
        checks.push(Check::new("critical-admissibility", pass, detail));
    }

    // construction density >= d21 when built on the minimal central triangle
    {
        let results: Vec<(usize, bool)> = (0..count.min(12))
            .into_par_iter()
            .map(|i| {
                let b = random_symmetric_body(seed, i).unwrap();
                let tri = minimal_central_triangle(&b.polar_refined(4096).unwrap()).unwrap();
                let con = nonsep_lattice_from_triangle(&b, &tri).unwrap();
                let dens = density2(&b, &con.lattice);
                let d = d21(&b).unwrap().value;
                (i, con.width.verdict && dens >= d - 1e-6 && dens <= D21_BOUND * (1.0 + 1e-6))
            })
            .collect();
        let (pass, detail) = all(results);
        checks.push(Check::new("construction-density", pass, detail));
    }

    Ok(checks)
}

// ---------------------------------------------------------------------------
// calculus suite
// ---------------------------------------------------------------------------

pub fn suite_calculus(seed: u64, count: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    // offset identity on random smooth curves and offsets
    {
        let mut rng = SplitMix64::new(seed ^ 0x101);
        let mut ok = Vec::new();
        let mut worst: f64 = 0.0;
        for i in 0..count {
            let b = random_smooth_body(seed, i)?;
            let (a0, a1, p0) =
                (rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2), rng.uniform(0.0, TAU));
            let offset = move |t: f64| a0 + a1 * (t + p0).sin();
            let c = PerturbedCurve::from_body(&b, 512, offset)?;
            let r = chord_identity_check(&c)?;
            let rel = (r.lhs - r.rhs).abs() / (1.0 + r.lhs.abs());
            worst = worst.max(rel);
            ok.push((i, rel <= 1e-6));
        }
        let (pass, detail) = all(ok);
        checks.push(Check::new("chord-identity", pass, format!("{detail}; worst rel {worst:.2e}")));
    }

    // quadrature order: resolutions n and 2n agree
    {
        let b = random_smooth_body(seed, 3)?;
        let off = |t: f64| 0.15 * (2.0 * t).cos();
        let r1 = chord_identity_check(&PerturbedCurve::from_body(&b, 256, off)?)?;
        let r2 = chord_identity_check(&PerturbedCurve::from_body(&b, 512, off)?)?;
        let diff = (r1.lhs - r2.lhs).abs() + (r1.rhs - r2.rhs).abs();
        checks.push(Check::new(
            "chord-identity-refinement",
            diff <= 1e-8,
            format!("resolution drift {diff:.2e}"),
        ));
    }

    // tangent chord endpoints sit on the outer boundary
    {
        let mut rng = SplitMix64::new(seed ^ 0x103);
        let mut ok = Vec::new();
        for i in 0..count.min(10) {
            let b = random_smooth_body(seed, i)?;
            let outer = b.polar()?.scale_by(1.0 + rng.uniform(0.2, 0.8))?;
            let inner = b.rotate90();
            let mut good = true;
            for j in 0..8 {
                let chord = tangent_chord(&outer, &inner, j as f64 * TAU / 8.0)?;
                let e1 = chord.line_point + chord.line_dir * chord.r;
                let e2 = chord.line_point - chord.line_dir * chord.l;
                good &= (outer.gauge(e1)? - 1.0).abs() <= 1e-8;
                good &= (outer.gauge(e2)? - 1.0).abs() <= 1e-8;
            }
            ok.push((i, good));
        }
        let (pass, detail) = all(ok);
        checks.push(Check::new("chord-endpoints-on-boundary", pass, detail));
    }

    // chord-gap analysis: equal integrals, pointwise bound, 3/4 inequality
    {
        let results: Vec<(usize, bool)> = (0..count)
            .into_par_iter()
            .map(|i| {
                let b = random_smooth_body(seed, i).unwrap();
                let r = chord_gap_check(&b, 256).unwrap();
                let gap = r.polar_area - r.area;
                let l2 = r.half_int_l2.unwrap();
                let r2 = r.half_int_r2.unwrap();
                let sym = (l2 - r2).abs() <= 1e-5 * (1.0 + gap.abs());
                (i, r.bound_ok && r.chord_margin >= -1e-6 && r.identity_rel_err.unwrap() <= 1e-5 && sym)
            })
            .collect();
        let (pass, detail) = all(results);
        checks.push(Check::new("chord-gap", pass, detail));
    }

    Ok(checks)
}

// ---------------------------------------------------------------------------
// 3D suite
// ---------------------------------------------------------------------------

pub fn suite_3d(seed: u64, count: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let bodies: Vec<Body3D> = {
        let mut v = vec![
            Body3D::ball(1.0)?,
            Body3D::ellipsoid(2.0, 1.0, 1.0)?,
            Body3D::cube(1.0),
            Body3D::octahedron(1.0),
        ];
        for i in 0..count.min(20) {
            v.push(random_polytope3(6 + i % 10, seed.wrapping_add(i as u64))?);
        }
        v
    };

    // Cauchy consistency: projected_area internally compares facet sum vs
    // projected hull and errors on disagreement
    {
        let mut rng = SplitMix64::new(seed ^ 0x201);
        let mut ok = Vec::new();
        for i in 0..100 {
            let b = &bodies[4 + i % (bodies.len() - 4)];
            let u = Vec3::new(
                rng.uniform(-1.0, 1.0),
                rng.uniform(-1.0, 1.0),
                rng.uniform(-1.0, 1.0),
            );
            if u.norm() < 0.1 {
                continue;
            }
            ok.push((i, b.projected_area(u).is_ok()));
        }
        let (pass, detail) = all(ok);
        checks.push(Check::new("cauchy-projection-consistency", pass, detail));
    }

    // zonotope support parity is exact
    {
        let mut rng = SplitMix64::new(seed ^ 0x202);
        let mut ok = Vec::new();
        for (i, b) in bodies.iter().enumerate() {
            let pb = b.projection_body();
            let u = Vec3::new(
                rng.uniform(-1.0, 1.0),
                rng.uniform(-1.0, 1.0),
                rng.uniform(-1.0, 1.0),
            );
            ok.push((i, pb.support(u) == pb.support(-u)));
        }
        let (pass, detail) = all(ok);
        checks.push(Check::new("zonotope-parity", pass, detail));
    }

    // section/projection duality: K° cut by h equals the polar of the shadow
    {
        let mut rng = SplitMix64::new(seed ^ 0x203);
        let mut ok = Vec::new();
        for i in 0..count.min(50) {
            let b = &bodies[4 + i % (bodies.len() - 4)];
            let h = loop {
                let h = Vec3::new(
                    rng.uniform(-1.0, 1.0),
                    rng.uniform(-1.0, 1.0),
                    rng.uniform(-1.0, 1.0),
                );
                if h.norm() > 0.2 {
                    break h.normalize();
                }
            };
            let section = b.polar()?.central_section(h)?;
            // shadow of the body in the same frame
            let Body3D::Polytope(p) = b else { unreachable!() };
            let pts: Vec<Vec2> = p
                .vertices()
                .iter()
                .map(|v| Vec2::new(section.e1.dot(v), section.e2.dot(v)))
                .collect();
            let shadow = Body2D::Polygon(nonsep_core::geom2d::convex_hull2(&pts)?);
            let dual = shadow.polar()?;
            let d = hausdorff2(&section.body, &dual)?;
            ok.push((i, d <= 1e-7 * (1.0 + section.body.scale())));
        }
        let (pass, detail) = all(ok);
        checks.push(Check::new("section-projection-duality", pass, detail));
    }

    // Santalo products in 3D
    {
        let ball_sq = (4.0 * PI / 3.0) * (4.0 * PI / 3.0);
        let mut ok = Vec::new();
        for (i, b) in bodies.iter().enumerate() {
            let prod = b.volume() * b.polar()?.volume();
            ok.push((i, prod <= ball_sq * (1.0 + 1e-3)));
        }
        let (pass, detail) = all(ok);
        checks.push(Check::new("santalo-3d", pass, detail));
    }

    // Petty products
    {
        let results: Vec<(usize, bool)> = bodies
            .par_iter()
            .enumerate()
            .map(|(i, b)| (i, petty_check(b).map(|r| r.ok).unwrap_or(false)))
            .collect();
        let (pass, detail) = all(results);
        checks.push(Check::new("petty-products", pass, detail));
    }

    // packing validity and the determinant chain for layered packings
    {
        let mut rng = SplitMix64::new(seed ^ 0x204);
        let mut ok = Vec::new();
        for (i, b) in bodies.iter().enumerate() {
            let kp = b.polar()?;
            let h = Vec3::new(
                rng.uniform(-1.0, 1.0),
                rng.uniform(-1.0, 1.0),
                rng.uniform(0.1, 1.0),
            )
            .normalize();
            let cert = layered_packing(&kp, h)?;
            ok.push((i, cert.admissible_2k.admissible && cert.det > 0.0));
        }
        let (pass, detail) = all(ok);
        checks.push(Check::new("packing-validity", pass, detail));
    }

    // d32 bound below the theorem constant; refinement monotonicity
    {
        let coarse = SphereGrid::fibonacci_hemisphere(642);
        let fine = SphereGrid::fibonacci_hemisphere(1282);
        let mut ok = Vec::new();
        for (i, b) in bodies.iter().enumerate().take(6) {
            let rc = d32_upper_bound(b, &coarse)?;
            let rf = d32_upper_bound(b, &fine)?;
            // grids are not nested, so monotonicity holds up to the local
            // refinement's convergence
            ok.push((i, rc.theorem_ok && rf.theorem_ok && rf.bound <= rc.bound + 1e-5 * rc.bound));
        }
        let (pass, detail) = all(ok);
        checks.push(Check::new("d32-bound-and-monotonicity", pass, detail));
    }

    // section inequality on a light grid
    {
        let grid = SphereGrid::fibonacci_hemisphere(322);
        let results: Vec<(usize, bool)> = bodies
            .par_iter()
            .enumerate()
            .take(8)
            .map(|(i, b)| {
                (i, section_inequality_check(b, &grid).map(|r| r.ok).unwrap_or(false))
            })
            .collect();
        let (pass, detail) = all(results);
        checks.push(Check::new("section-inequality", pass, detail));
    }

    // d32 theorem constant for the ball
    {
        let grid = SphereGrid::fibonacci_hemisphere(642);
        let r = d32_upper_bound(&Body3D::ball(1.0)?, &grid)?;
        checks.push(Check::new(
            "d32-ball-constant",
            (r.bound - D32_BOUND).abs() <= 1e-4,
            format!("bound {:.6} vs {:.6}", r.bound, D32_BOUND),
        ));
    }

    Ok(checks)
}

/// Runs the named suite; `all` concatenates the three.
pub fn run_suite(which: &str, seed: u64, count: usize) -> Result<Vec<Check>> {
    match which {
        "2d" => suite_2d(seed, count),
        "calculus" => suite_calculus(seed, count),
        "3d" => suite_3d(seed, count),
        "all" => {
            let mut v = suite_2d(seed, count)?;
            v.extend(suite_calculus(seed, count)?);
            v.extend(suite_3d(seed, count)?);
            Ok(v)
        }
        other => Err(nonsep_core::GeomError::Domain(format!(
            "unknown suite '{other}' (expected 2d, calculus, 3d, all)"
        ))),
    }
}
