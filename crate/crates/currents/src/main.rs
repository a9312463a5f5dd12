use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use serde_json::json;

use currents::cone::{cone_mass_report, regular_polygon_current};
use currents::current::{unit_square_current, MassKind, PolyhedralCurrent};
use currents::filling::{
    ell_infty_filling_bound, football_slit_distance, graph_surface_candidate, make_flat_football,
    make_linfty_square, ConvexBody,
};
use currents::flatnorm::{build_complex, flat_norm, ChainVector};
use currents::jacobian::{jacobian, JacobianKind};
use currents::onedim::decompose_1current;
use currents::seminorm::{AmbientNorm, Seminorm};
use currents::slicing::{slice, Projection};
use currents::{svg, verify};

#[derive(Parser)]
#[command(
    name = "currents",
    about = "Polyhedral integral currents in normed spaces: Finsler masses, slicing, cones, flat norms and filling bounds"
)]
struct Cli {
    /// Seed for all randomized checks; a fixed seed gives bit-identical output
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory for artifact files (JSON/CSV/SVG); stdout only when unset
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormArg {
    L2,
    Linf,
    L1,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Busemann,
    Mstar,
    Ir,
}

impl KindArg {
    fn kind(self) -> JacobianKind {
        match self {
            KindArg::Busemann => JacobianKind::Busemann,
            KindArg::Mstar => JacobianKind::MassStar,
            KindArg::Ir => JacobianKind::InscribedRiemannian,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConeDemo {
    Circle,
    Square,
    Segment,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlatDemo {
    SquareBoundary,
}

#[derive(Clone, Copy, ValueEnum)]
enum FillingDemo {
    Identity,
    Tent,
    Bump,
}

#[derive(Subcommand)]
enum Command {
    /// Jacobian of a norm on R^dim
    Jacobian {
        #[arg(long, value_enum)]
        norm: NormArg,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Mass measure of a polyhedral current read from a JSON file
    Mass {
        /// JSON file; defaults to the built-in unit square
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "mstar")]
        kind: KindArg,
        /// Also write an SVG figure of the current (needs --out-dir)
        #[arg(long)]
        figure: bool,
    },
    /// Slice a current by a coordinate level set
    Slice {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Coordinate axis of the slicing projection
        #[arg(long, default_value_t = 0)]
        axis: usize,
        #[arg(long)]
        level: f64,
    },
    /// Decompose a 1-current into paths and loops
    Decompose {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Cone construction and the coning mass identity
    Cone {
        #[arg(long, value_enum)]
        demo: ConeDemo,
        /// Polygon resolution for the circle demo
        #[arg(long, default_value_t = 64)]
        m: usize,
    },
    /// Flat norm demos via the simplicial LP
    Flatnorm {
        #[arg(long, value_enum)]
        demo: FlatDemo,
        /// Side length of the square
        #[arg(long, default_value_t = 1.0)]
        side: f64,
    },
    /// Filling lower bound for a candidate surface over the unit square
    Filling {
        #[arg(long, value_enum, default_value = "tent")]
        demo: FillingDemo,
        /// Grid resolution of the candidate
        #[arg(long, default_value_t = 16)]
        n: usize,
        /// Height parameter of the tent/bump
        #[arg(long, default_value_t = 0.25)]
        height: f64,
    },
    /// The flat-football family M_eps and its slit distance
    Football {
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        #[arg(long, default_value_t = 1.0)]
        slit: f64,
        #[arg(long, default_value_t = 0.02)]
        h: f64,
    },
    /// The max-norm square witness tuple
    Witness,
    /// Run the full acceptance suite; nonzero exit on any failure
    VerifyAll,
}

#[derive(Debug)]
struct CliError(String);

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

/// 12 significant decimals with trailing zeros trimmed: scalar results
/// print as `1.0` rather than `1` or `1.0000000000000002`.
fn fmt_val(x: f64) -> String {
    let s = format!("{x:.12}");
    let trimmed = s.trim_end_matches('0');
    if trimmed.ends_with('.') {
        format!("{trimmed}0")
    } else {
        trimmed.to_string()
    }
}

fn load_current(input: &Option<PathBuf>) -> Result<PolyhedralCurrent, CliError> {
    match input {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            Ok(PolyhedralCurrent::from_json(&text)?)
        }
        None => Ok(unit_square_current(AmbientNorm::Euclidean)),
    }
}

fn write_artifact(out_dir: &Option<PathBuf>, name: &str, content: &str) -> Result<(), CliError> {
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(name), content)?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    match &cli.command {
        Command::Jacobian { norm, dim, kind } => {
            let sigma = match norm {
                NormArg::L2 => Seminorm::euclidean(*dim),
                NormArg::Linf => {
                    Seminorm::new(DMatrix::identity(*dim, *dim), AmbientNorm::MaxNorm)?
                }
                NormArg::L1 => Seminorm::new(DMatrix::identity(*dim, *dim), AmbientNorm::SumNorm)?,
            };
            let j = jacobian(&sigma, kind.kind())?;
            println!("{}", fmt_val(j));
        }
        Command::Mass {
            input,
            kind,
            figure,
        } => {
            let t = load_current(input)?;
            let report = t.mass(MassKind::Jacobian(kind.kind()))?;
            println!("mass {}", report.total);
            let out = json!({ "total": report.total, "per_cell": report.per_cell });
            write_artifact(&cli.out_dir, "mass.json", &serde_json::to_string_pretty(&out)?)?;
            let mut csv = String::from("cell,mass\n");
            for (i, m) in report.per_cell.iter().enumerate() {
                csv.push_str(&format!("{i},{m}\n"));
            }
            write_artifact(&cli.out_dir, "mass.csv", &csv)?;
            if *figure && t.ambient.dim == 2 {
                write_artifact(&cli.out_dir, "current.svg", &svg::render(&t))?;
            }
        }
        Command::Slice { input, axis, level } => {
            let t = load_current(input)?;
            let rho = Projection::axis(t.ambient.dim, *axis);
            let s = slice(&t, &rho, &[*level])?;
            let m = s.total_mass(JacobianKind::MassStar)?;
            println!("slice mass {m} with {} cells", s.cells.len());
            write_artifact(&cli.out_dir, "slice.json", &s.to_json())?;
            if s.ambient.dim == 2 {
                write_artifact(&cli.out_dir, "slice.svg", &svg::render(&s))?;
            }
        }
        Command::Decompose { input } => {
            let t = match input {
                Some(_) => load_current(input)?,
                None => unit_square_current(AmbientNorm::Euclidean).boundary(),
            };
            let d = decompose_1current(&t)?;
            println!(
                "{} paths, {} loops, total length {}",
                d.paths.len(),
                d.loops.len(),
                d.total_length()
            );
            let out = json!({
                "paths": d.paths,
                "loops": d.loops,
                "path_lengths": d.path_lengths,
                "loop_lengths": d.loop_lengths,
            });
            write_artifact(
                &cli.out_dir,
                "decomposition.json",
                &serde_json::to_string_pretty(&out)?,
            )?;
        }
        Command::Cone { demo, m } => {
            let base = match demo {
                ConeDemo::Circle => regular_polygon_current(*m),
                ConeDemo::Square => unit_square_current(AmbientNorm::Euclidean),
                ConeDemo::Segment => currents::current::curve_current(
                    currents::current::NormedAmbient::euclidean(2),
                    &[currents::geometry::pt(&[1.0, 0.0]), currents::geometry::pt(&[0.0, 1.0])],
                    false,
                )?,
            };
            let r = cone_mass_report(&base)?;
            println!("ratio {}", fmt_val(r.ratio));
            write_artifact(&cli.out_dir, "cone.json", &serde_json::to_string_pretty(&r)?)?;
        }
        Command::Flatnorm { demo: _, side } => {
            let sheet = unit_square_current(AmbientNorm::Euclidean).push_forward(
                currents::current::NormedAmbient::euclidean(2),
                |p| *side * p,
            )?;
            let (complex, chains) = build_complex(&[&sheet])?;
            let b2 = complex.boundary_matrix(2);
            let t = ChainVector {
                dim: 1,
                coeffs: &b2 * &chains[0].coeffs,
            };
            let r = flat_norm(&t, &complex, JacobianKind::MassStar)?;
            println!("{}", fmt_val(r.value));
            let out = json!({
                "value": r.value,
                "certified": r.certified,
                "filling_coefficients": r.v.coeffs.as_slice(),
                "residual_coefficients": r.u.coeffs.as_slice(),
            });
            write_artifact(
                &cli.out_dir,
                "flatnorm.json",
                &serde_json::to_string_pretty(&out)?,
            )?;
        }
        Command::Filling { demo, n, height } => {
            let h = *height;
            let cand = match demo {
                FillingDemo::Identity => graph_surface_candidate(*n, |_, _| 0.0)?,
                FillingDemo::Tent => graph_surface_candidate(*n, move |x, y| {
                    2.0 * h * x.min(1.0 - x).min(y).min(1.0 - y)
                })?,
                FillingDemo::Bump => graph_surface_candidate(*n, move |x, y| {
                    h * (std::f64::consts::PI * x).sin() * (std::f64::consts::PI * y).sin()
                })?,
            };
            let r = ell_infty_filling_bound(&ConvexBody::unit_square(), &cand)?;
            println!("mass {} vol {} gap {}", r.mass_x, r.vol_c, r.gap);
            let out = json!({
                "mass_x": r.mass_x,
                "vol_c": r.vol_c,
                "gap": r.gap,
                "pushforward_mass": r.pushforward_mass,
                "boundary_chain_ok": r.boundary_chain_ok,
                "lipschitz_max": r.lipschitz_max,
            });
            write_artifact(
                &cli.out_dir,
                "filling.json",
                &serde_json::to_string_pretty(&out)?,
            )?;
        }
        Command::Football { eps, slit, h } => {
            let r = make_flat_football(*eps, *slit, *h)?;
            let d = football_slit_distance(&r, 0.01);
            println!(
                "volume {} lipschitz {} winding {} slit-distance {}",
                r.volume, r.lipschitz_max, r.winding, d
            );
            let out = json!({
                "eps": r.eps,
                "slit_length": r.big_l,
                "h": r.h,
                "volume": r.volume,
                "lipschitz_max": r.lipschitz_max,
                "winding": r.winding,
                "slit_distance": d,
            });
            write_artifact(
                &cli.out_dir,
                "football.json",
                &serde_json::to_string_pretty(&out)?,
            )?;
            write_artifact(
                &cli.out_dir,
                "football_boundary.svg",
                &svg::render(&r.pushforward_boundary),
            )?;
        }
        Command::Witness => {
            let r = make_linfty_square()?;
            println!(
                "masses ({}, {}) boundaries ({}, {}) distances ({}, {})",
                r.mass_euclidean,
                r.mass_linfty,
                r.boundary_euclidean,
                r.boundary_linfty,
                r.dist_euclidean,
                r.dist_linfty
            );
        }
        Command::VerifyAll => {
            let criteria = verify::run_all(cli.seed);
            let report = verify::render_report(&criteria);
            print!("{report}");
            write_artifact(
                &cli.out_dir,
                "verify.json",
                &serde_json::to_string_pretty(&criteria)?,
            )?;
            if criteria.iter().any(|c| !c.pass) {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(CliError(message)) => {
            // diagnostic JSON on stderr for numerical failures
            let diag = json!({ "error": message });
            let _ = writeln!(std::io::stderr(), "{diag}");
            ExitCode::FAILURE
        }
    }
}
