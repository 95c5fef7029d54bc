//! `nonsep` — compute and certify densities of non-separable lattices of
//! translates, critical lattices, polar/difference/projection bodies, and
//! the associated inequality checks.
//!
//! Exit codes: 0 success, 1 assertion/verification failure (the failing
//! certificate is printed to stdout), 2 input error.

use clap::{Parser, Subcommand};
use nonsep_cli::suites::run_suite;
use nonsep_cli::svg::figure_svg;
use nonsep_core::critical2d::{critical_lattice_with, d21_with, star_critical_lattice_with};
use nonsep_core::geom2d::Body2D;
use nonsep_core::geom3d::{polar_volume_radial_refined, Body3D, ProjectionBody, SphereGrid};
use nonsep_core::lattice::{is_nonseparable2, is_nonseparable3, width_direction_grid, Lattice2, Lattice3};
use nonsep_core::nonsep3d::d32_upper_bound;
use nonsep_core::GeomError;
use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "nonsep", version, about = "Convex bodies, critical lattices, and non-separable lattice densities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Area/volume, polar volume, and the Santalo product of a body.
    Info { body: PathBuf },
    /// Minimal density of a non-separable lattice of translates (planar).
    D21 {
        body: PathBuf,
        /// Print the full result with the critical certificate as JSON.
        #[arg(long)]
        certificate: bool,
        /// Render the certified non-separable tiling to an SVG file.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Scan resolution for the critical-lattice search.
        #[arg(long, default_value_t = 2048)]
        resolution: usize,
    },
    /// Critical determinant and critical basis of a symmetric planar body.
    Critical {
        body: PathBuf,
        #[arg(long, default_value_t = 2048)]
        resolution: usize,
    },
    /// Certify (non-)separability of body + lattice; exits 1 when separable.
    NonsepCheck { body: PathBuf, lattice: PathBuf },
    /// Certified upper bound for the spatial non-separable density.
    D32Bound {
        body: PathBuf,
        /// Nodes of the full Fibonacci sphere grid (one hemisphere is used).
        #[arg(long, default_value_t = 2562)]
        nodes: usize,
        #[arg(long)]
        certificate: bool,
    },
    /// Run a verification suite; exits 1 on any failing check.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
    /// Render a body tiled by a lattice to SVG.
    Figure {
        body: PathBuf,
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
}

fn main() -> ExitCode {
    init_threads();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

/// NONSEP_THREADS bounds the rayon pool.
fn init_threads() {
    if let Ok(v) = std::env::var("NONSEP_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
        }
    }
}

/// Input-side errors exit 2; verification failures exit 1.
#[derive(Debug)]
struct InputError(String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

type CliResult = Result<ExitCode, InputError>;

fn input_err(e: impl std::fmt::Display) -> InputError {
    InputError(e.to_string())
}

enum AnyBody {
    Planar(Body2D),
    Spatial(Body3D),
}

fn load_body(path: &Path) -> Result<AnyBody, InputError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_err(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| {
        input_err(format!(
            "{}: malformed JSON at line {}, column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })?;
    let tag = value.get("type").and_then(|t| t.as_str()).unwrap_or("");
    match tag {
        "polygon2d" | "support2d" | "ellipse2d" => serde_json::from_value::<Body2D>(value)
            .map(AnyBody::Planar)
            .map_err(input_err),
        "polytope3d" | "ball3d" | "ellipsoid3d" => serde_json::from_value::<Body3D>(value)
            .map(AnyBody::Spatial)
            .map_err(input_err),
        other => Err(input_err(format!(
            "{}: unknown body type '{other}'",
            path.display()
        ))),
    }
}

fn geom_err(e: GeomError) -> InputError {
    input_err(e)
}

fn run(cmd: Command) -> CliResult {
    match cmd {
        Command::Info { body } => info(&body),
        Command::D21 { body, certificate, svg, resolution } => {
            cmd_d21(&body, certificate, svg.as_deref(), resolution)
        }
        Command::Critical { body, resolution } => cmd_critical(&body, resolution),
        Command::NonsepCheck { body, lattice } => cmd_nonsep_check(&body, &lattice),
        Command::D32Bound { body, nodes, certificate } => cmd_d32(&body, nodes, certificate),
        Command::Verify { suite, seed, count } => cmd_verify(&suite, seed, count),
        Command::Figure { body, lattice, svg } => cmd_figure(&body, &lattice, &svg),
    }
}

fn info(path: &Path) -> CliResult {
    match load_body(path)? {
        AnyBody::Planar(b) => {
            println!("area               {:.12}", b.area());
            match b.polar() {
                Ok(p) => {
                    println!("polar area         {:.12}", p.area());
                    let prod = b.area() * p.area();
                    println!("santalo product    {:.12}  (disk^2 = {:.12})", prod, PI * PI);
                }
                Err(e) => println!("polar area         unavailable: {e}"),
            }
            println!("centrally symmetric {}", b.is_symmetric());
        }
        AnyBody::Spatial(b) => {
            println!("volume             {:.12}", b.volume());
            let p = b.polar().map_err(geom_err)?;
            println!("polar volume       {:.12}", p.volume());
            let ball_sq = (4.0 * PI / 3.0) * (4.0 * PI / 3.0);
            println!(
                "santalo product    {:.12}  (ball^2 = {:.12})",
                b.volume() * p.volume(),
                ball_sq
            );
            let (pv, rel) = match b.projection_body() {
                ProjectionBody::Zonotope(z) => polar_volume_radial_refined(|u| z.support(u)),
                ProjectionBody::Ellipsoid { a, b: bb, c } => {
                    (4.0 * PI / (3.0 * a * bb * c), 0.0)
                }
            };
            println!("projection polar   {:.12}  (grid rel diff {:.2e})", pv, rel);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_d21(path: &Path, certificate: bool, svg: Option<&Path>, resolution: usize) -> CliResult {
    let AnyBody::Planar(b) = load_body(path)? else {
        return Err(input_err("d21 needs a planar body"));
    };
    let result = d21_with(&b, resolution).map_err(geom_err)?;
    let bound = PI * 3f64.sqrt() / 8.0;
    println!("{:.10}", result.value);
    if (result.value - bound).abs() <= 1e-6 {
        println!("bound pi*sqrt(3)/8 = {bound:.10} attained (ellipse)");
    } else {
        println!(
            "strictly below bound pi*sqrt(3)/8 = {:.10} (gap {:.3e})",
            bound,
            bound - result.value
        );
    }
    if certificate {
        println!("{}", serde_json::to_string_pretty(&result).map_err(input_err)?);
    }
    if let Some(out) = svg {
        // certified non-separable lattice for the picture: the *critical
        // lattice of the central symmetral (widths agree with the body's)
        let symmetral = b.difference_body().map_err(geom_err)?;
        let (lat, width) = star_critical_lattice_with(&symmetral, resolution).map_err(geom_err)?;
        if !width.verdict {
            println!("{}", serde_json::to_string_pretty(&width).map_err(input_err)?);
            return Ok(ExitCode::from(1));
        }
        std::fs::write(out, figure_svg(&b, &lat)).map_err(input_err)?;
        println!("figure written to {}", out.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_critical(path: &Path, resolution: usize) -> CliResult {
    let AnyBody::Planar(b) = load_body(path)? else {
        return Err(input_err("critical needs a planar body"));
    };
    let cert = critical_lattice_with(&b, resolution).map_err(geom_err)?;
    println!("{}", serde_json::to_string_pretty(&cert).map_err(input_err)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_nonsep_check(body_path: &Path, lattice_path: &Path) -> CliResult {
    let lattice_text = std::fs::read_to_string(lattice_path)
        .map_err(|e| input_err(format!("{}: {e}", lattice_path.display())))?;
    let cert = match load_body(body_path)? {
        AnyBody::Planar(b) => {
            let lat: Lattice2 = serde_json::from_str(&lattice_text).map_err(|e| {
                input_err(format!(
                    "{}: malformed lattice at line {}, column {}: {e}",
                    lattice_path.display(),
                    e.line(),
                    e.column()
                ))
            })?;
            is_nonseparable2(&b, &lat).map_err(geom_err)?
        }
        AnyBody::Spatial(b) => {
            let lat: Lattice3 = serde_json::from_str(&lattice_text).map_err(input_err)?;
            is_nonseparable3(&b, &lat, &width_direction_grid()).map_err(geom_err)?
        }
    };
    println!("{}", serde_json::to_string_pretty(&cert).map_err(input_err)?);
    Ok(if cert.verdict { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_d32(path: &Path, nodes: usize, certificate: bool) -> CliResult {
    let AnyBody::Spatial(b) = load_body(path)? else {
        return Err(input_err("d32-bound needs a spatial body"));
    };
    let grid = SphereGrid::fibonacci_hemisphere(nodes);
    let report = d32_upper_bound(&b, &grid).map_err(geom_err)?;
    println!("bound      {:.10}", report.bound);
    println!(
        "direction  [{:.6}, {:.6}, {:.6}]",
        report.best_direction.x, report.best_direction.y, report.best_direction.z
    );
    println!(
        "theorem    pi/(4 sqrt 3) = {:.10}  ({})",
        report.theorem_bound,
        if report.theorem_ok { "satisfied" } else { "VIOLATED" }
    );
    println!(
        "ball value pi/(6 sqrt 2) = {:.10}  (construction slack {:.4})",
        report.ball_reference,
        report.bound - report.ball_reference
    );
    if certificate {
        println!("{}", serde_json::to_string_pretty(&report).map_err(input_err)?);
    }
    if report.theorem_ok {
        Ok(ExitCode::SUCCESS)
    } else {
        println!(
            "{}",
            serde_json::to_string_pretty(&report.certificate).map_err(input_err)?
        );
        Ok(ExitCode::from(1))
    }
}

fn cmd_verify(suite: &str, seed: u64, count: usize) -> CliResult {
    let checks = run_suite(suite, seed, count).map_err(geom_err)?;
    let mut failed = 0;
    for c in &checks {
        println!("{} {:<36} {}", if c.pass { "ok  " } else { "FAIL" }, c.name, c.detail);
        if !c.pass {
            failed += 1;
        }
    }
    println!("{} checks, {} failed", checks.len(), failed);
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_figure(body_path: &Path, lattice_path: &Path, out: &Path) -> CliResult {
    let AnyBody::Planar(b) = load_body(body_path)? else {
        return Err(input_err("figure needs a planar body"));
    };
    let lattice_text = std::fs::read_to_string(lattice_path)
        .map_err(|e| input_err(format!("{}: {e}", lattice_path.display())))?;
    let lat: Lattice2 = serde_json::from_str(&lattice_text).map_err(|e| {
        input_err(format!(
            "{}: malformed lattice at line {}, column {}: {e}",
            lattice_path.display(),
            e.line(),
            e.column()
        ))
    })?;
    std::fs::write(out, figure_svg(&b, &lat)).map_err(input_err)?;
    println!("figure written to {}", out.display());
    Ok(ExitCode::SUCCESS)
}
