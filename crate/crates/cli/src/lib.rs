//! Command-line front end for the `casimir` library.
//!
//! Lengths are given in nm, frequencies in s⁻¹ or in multiples of
//! ω₀ = 10¹⁶ s⁻¹, and everything is converted to internal units once, here.
//! Values are printed with the shortest representation that round-trips, so
//! every printed number parses back to the library's result bit for bit.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use casimir::curve::CurveData;
use casimir::lifshitz::{self, LayeredStack, QuadratureSpec, StackDefaults};
use casimir::materials::{self, DielectricModel, FilmRecord, MaterialRegistry};
use casimir::quadrature::Transform;
use casimir::scenarios::{self, ForceScenario, LogGrid};
use casimir::units::{self, Length};
use casimir::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "casimir",
    version,
    about = "Casimir force between a gold half-space and a thin film on a substrate",
    long_about = "Casimir force between a gold half-space and a thin film on a substrate.\n\n\
        Units: lengths in nm; frequencies in s⁻¹ (--xi) or in multiples of \
        ω₀ = 1e16 s⁻¹ (flags ending in -w0); relaxation times in fs; plasma \
        frequencies in 1e15 s⁻¹. Pressures are in Pa.\n\n\
        Exit codes: 0 success, 1 I/O failure, 2 usage or configuration error, \
        3 quadrature did not reach the requested tolerance."
)]
struct Cli {
    /// Worker threads for parallel quadrature and sweeps [default: RAYON_NUM_THREADS or all cores]
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the tabulated Drude-Smith film parameters
    Table1,
    /// Dielectric function on the imaginary axis, ε(iξ) (dimensionless)
    Epsilon(EpsilonArgs),
    /// Casimir pressure (Pa) and reduction factor for one configuration
    Force(ForceArgs),
    /// Reduction factor η = P/P_ideal (dimensionless) for one configuration
    Eta(ForceArgs),
    /// η versus separation for tabulated films, as CSV
    SweepSeparation(SweepSeparationArgs),
    /// η versus tabulated film thickness at a fixed separation, as CSV
    SweepThickness(SweepThicknessArgs),
    /// Percent difference of the film optical length against Drude and plasma models, as CSV
    Delta(DeltaArgs),
}

#[derive(Debug, Args)]
struct MaterialArgs {
    /// JSON file of named materials (parameters in ω₀ units); overrides built-ins
    #[arg(long, value_name = "PATH")]
    materials: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FilmArgs {
    /// Film thickness in nm; selects a tabulated film unless the model is given inline or by name
    #[arg(long = "film-nm", allow_negative_numbers = true, value_name = "NM")]
    film_nm: Option<f64>,

    /// Inline Drude-Smith plasma frequency, in 1e15 s⁻¹
    #[arg(long, allow_negative_numbers = true, value_name = "1E15_PER_S", requires_all = ["tau_fs", "c1"])]
    wp: Option<f64>,

    /// Inline Drude-Smith relaxation time, in fs
    #[arg(long = "tau-fs", allow_negative_numbers = true, value_name = "FS", requires_all = ["wp", "c1"])]
    tau_fs: Option<f64>,

    /// Inline Drude-Smith backscattering coefficient c1 ∈ [-1, 0] (dimensionless)
    #[arg(long, value_name = "C1", allow_negative_numbers = true, requires_all = ["wp", "tau_fs"])]
    c1: Option<f64>,

    /// Film model by registry name (see --materials)
    #[arg(long = "film-material", value_name = "NAME", conflicts_with = "wp")]
    film_material: Option<String>,
}

#[derive(Debug, Args)]
struct StackArgs {
    /// Vacuum gap (separation) in nm
    #[arg(
        long = "L-nm",
        allow_negative_numbers = true,
        value_name = "NM",
        default_value_t = 400.0
    )]
    gap_nm: f64,

    #[command(flatten)]
    film: FilmArgs,

    /// Material of the opposing half-space, by registry name
    #[arg(long = "half-space", value_name = "NAME", default_value = "au-bulk")]
    half_space: String,

    /// Material of the substrate under the film, by registry name
    #[arg(long, value_name = "NAME", default_value = "si")]
    substrate: String,

    #[command(flatten)]
    materials: MaterialArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TransformArg {
    Rational,
    Exponential,
}

#[derive(Debug, Args)]
struct QuadratureArgs {
    /// Relative tolerance on η (dimensionless)
    #[arg(
        long = "rel-tol",
        allow_negative_numbers = true,
        value_name = "TOL",
        default_value_t = 1e-6
    )]
    rel_tol: f64,

    /// Absolute tolerance on η (dimensionless)
    #[arg(
        long = "abs-tol",
        allow_negative_numbers = true,
        value_name = "TOL",
        default_value_t = 1e-12
    )]
    abs_tol: f64,

    /// Maximum bisection depth of any quadrature panel
    #[arg(long = "max-refinements", value_name = "N", default_value_t = 20)]
    max_refinements: u32,

    /// Map from (0, 1) onto the half-line used on both integration axes
    #[arg(long, value_enum, default_value = "rational")]
    transform: TransformArg,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Directory for CSV files, one per curve [default: write CSV to stdout]
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EpsilonArgs {
    #[command(flatten)]
    film: FilmArgs,

    /// Bulk material by registry name instead of a film
    #[arg(long, value_name = "NAME", conflicts_with_all = ["film_nm", "wp", "film_material"])]
    material: Option<String>,

    /// Imaginary frequency ξ in s⁻¹
    #[arg(
        long,
        allow_negative_numbers = true,
        value_name = "PER_S",
        conflicts_with = "xi_w0"
    )]
    xi: Option<f64>,

    /// Imaginary frequency ξ in units of ω₀
    #[arg(long = "xi-w0", allow_negative_numbers = true, value_name = "W0")]
    xi_w0: Option<f64>,

    #[command(flatten)]
    materials: MaterialArgs,
}

#[derive(Debug, Args)]
struct ForceArgs {
    #[command(flatten)]
    stack: StackArgs,

    #[command(flatten)]
    quadrature: QuadratureArgs,
}

#[derive(Debug, Args)]
struct DefaultsArgs {
    /// Material of the opposing half-space, by registry name
    #[arg(long = "half-space", value_name = "NAME", default_value = "au-bulk")]
    half_space: String,

    /// Material of the substrate under the film, by registry name
    #[arg(long, value_name = "NAME", default_value = "si")]
    substrate: String,

    #[command(flatten)]
    materials: MaterialArgs,
}

#[derive(Debug, Args)]
struct SweepSeparationArgs {
    /// Tabulated film thicknesses in nm, comma separated [default: all]
    #[arg(
        long = "film-nm",
        allow_negative_numbers = true,
        value_name = "NM",
        value_delimiter = ','
    )]
    films_nm: Vec<f64>,

    /// Smallest separation in nm
    #[arg(
        long = "L-min-nm",
        allow_negative_numbers = true,
        value_name = "NM",
        default_value_t = 100.0
    )]
    gap_min_nm: f64,

    /// Largest separation in nm
    #[arg(
        long = "L-max-nm",
        allow_negative_numbers = true,
        value_name = "NM",
        default_value_t = 1000.0
    )]
    gap_max_nm: f64,

    /// Separation step in nm
    #[arg(
        long = "L-step-nm",
        allow_negative_numbers = true,
        value_name = "NM",
        default_value_t = 20.0
    )]
    gap_step_nm: f64,

    #[command(flatten)]
    defaults: DefaultsArgs,

    #[command(flatten)]
    quadrature: QuadratureArgs,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct SweepThicknessArgs {
    /// Separation in nm
    #[arg(
        long = "L-nm",
        allow_negative_numbers = true,
        value_name = "NM",
        default_value_t = 400.0
    )]
    gap_nm: f64,

    /// Tabulated film thicknesses in nm, comma separated [default: all]
    #[arg(
        long = "film-nm",
        allow_negative_numbers = true,
        value_name = "NM",
        value_delimiter = ','
    )]
    films_nm: Vec<f64>,

    #[command(flatten)]
    defaults: DefaultsArgs,

    #[command(flatten)]
    quadrature: QuadratureArgs,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct DeltaArgs {
    /// Tabulated film thickness in nm
    #[arg(long = "film-nm", allow_negative_numbers = true, value_name = "NM", default_value_t = materials::PERCOLATION_THICKNESS_NM)]
    film_nm: f64,

    /// Fixed wavenumber ck in units of ω₀
    #[arg(
        long = "ck-w0",
        allow_negative_numbers = true,
        value_name = "W0",
        default_value_t = 1.0
    )]
    ck_w0: f64,

    /// Lowest ξ of the log grid, in units of ω₀
    #[arg(long = "xi-min-w0", allow_negative_numbers = true, value_name = "W0", default_value_t = scenarios::WIDE_FREQUENCY_GRID.min)]
    xi_min_w0: f64,

    /// Highest ξ of the log grid, in units of ω₀
    #[arg(long = "xi-max-w0", allow_negative_numbers = true, value_name = "W0", default_value_t = scenarios::WIDE_FREQUENCY_GRID.max)]
    xi_max_w0: f64,

    /// Number of log-spaced grid points
    #[arg(long, value_name = "N", default_value_t = scenarios::WIDE_FREQUENCY_GRID.points)]
    points: usize,

    #[command(flatten)]
    output: OutputArgs,
}

/// Failure of one invocation, mapped onto an exit code.
#[derive(Debug)]
enum Failure {
    /// Bad flag value or configuration; nothing was computed.
    Usage(String),
    NotConverged {
        estimate: f64,
        achieved_error: f64,
    },
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotConverged {
                estimate,
                achieved_error,
                ..
            } => Failure::NotConverged {
                estimate,
                achieved_error,
            },
            Error::Scenario { source, .. } if matches!(*source, Error::NotConverged { .. }) => {
                Failure::from(*source)
            }
            other => Failure::Runtime(other),
        }
    }
}

fn usage(flag: &str, problem: impl Display) -> Failure {
    Failure::Usage(format!("invalid value for '{flag}': {problem}"))
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{rendered}")
            } else {
                write!(stderr, "{rendered}")
            };
            return code;
        }
    };
    match dispatch(cli, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::NotConverged {
            estimate,
            achieved_error,
        }) => {
            let _ = writeln!(stderr, "error: quadrature did not converge");
            let _ = writeln!(stdout, "best_estimate={estimate:e}");
            let _ = writeln!(stdout, "achieved_error={achieved_error:e}");
            EXIT_NOT_CONVERGED
        }
        Err(Failure::Runtime(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_FAILURE
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let pool = match cli.threads {
        Some(0) => return Err(usage("--threads", "must be at least 1")),
        Some(n) => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| usage("--threads", e))?,
        ),
        None => None,
    };
    let command = cli.command;
    // Buffered so the command can run on a pool thread.
    let (mut out_buf, mut err_buf) = (Vec::new(), Vec::new());
    let result = match pool {
        Some(pool) => pool.install(|| execute(command, &mut out_buf, &mut err_buf)),
        None => execute(command, &mut out_buf, &mut err_buf),
    };
    let _ = err.write_all(&err_buf);
    out.write_all(&out_buf)
        .map_err(|e| Failure::Runtime(io_error("<stdout>", e)))?;
    result
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Table1 => table1(out),
        Command::Epsilon(args) => epsilon(args, out),
        Command::Force(args) => force(args, out, err, true),
        Command::Eta(args) => force(args, out, err, false),
        Command::SweepSeparation(args) => sweep_separation(args, out),
        Command::SweepThickness(args) => sweep_thickness(args, out),
        Command::Delta(args) => delta(args, out),
    }
}

fn emit(out: &mut dyn Write, text: impl Display) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(|e| Failure::Runtime(io_error("<stdout>", e)))
}

fn io_error(path: impl Into<PathBuf>, source: io::Error) -> Error {
    Error::Io {
        path: path.into(),
        source,
    }
}

fn table1(out: &mut dyn Write) -> Result<(), Failure> {
    emit(out, "thickness_nm,omega_p_1e15_per_s,tau_fs,c1,dc_ratio")?;
    for r in materials::table1_registry() {
        emit(
            out,
            format_args!(
                "{},{},{},{},{}",
                r.thickness_nm, r.omega_p_1e15, r.tau_fs, r.c1, r.dc_ratio
            ),
        )?;
    }
    Ok(())
}

fn registry(args: &MaterialArgs) -> Result<MaterialRegistry, Failure> {
    match &args.materials {
        None => Ok(MaterialRegistry::builtin()),
        Some(path) => MaterialRegistry::load(path).map_err(|e| usage("--materials", e)),
    }
}

fn named(registry: &MaterialRegistry, flag: &str, name: &str) -> Result<DielectricModel, Failure> {
    registry.get(name).map_err(|_| {
        let known: Vec<&str> = registry.names().collect();
        usage(
            flag,
            format_args!("unknown material '{name}' (known: {})", known.join(", ")),
        )
    })
}

fn positive(flag: &str, value: f64) -> Result<f64, Failure> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(usage(
            flag,
            format_args!("{value} is not a positive finite number"),
        ))
    }
}

fn tabulated(flag: &str, thickness_nm: f64) -> Result<FilmRecord, Failure> {
    materials::lookup_film(thickness_nm).map_err(|_| {
        let known: Vec<String> = scenarios::table1_thicknesses().iter().map(f64::to_string).collect();
        usage(
            flag,
            format_args!(
                "no tabulated film at {thickness_nm} nm (tabulated: {}); give --wp/--tau-fs/--c1 or --film-material",
                known.join(", ")
            ),
        )
    })
}

/// Film model and thickness; the thickness is in internal units.
fn film(
    args: &FilmArgs,
    registry: &MaterialRegistry,
) -> Result<(DielectricModel, Length), Failure> {
    let thickness_nm = args.film_nm.ok_or_else(|| {
        Failure::Usage("the following required argument was not provided: --film-nm".into())
    })?;
    if !(thickness_nm.is_finite() && thickness_nm >= 0.0) {
        return Err(usage(
            "--film-nm",
            format_args!("{thickness_nm} is not a non-negative length"),
        ));
    }
    let thickness = Length::nanometers(thickness_nm);
    if let (Some(wp), Some(tau), Some(c1)) = (args.wp, args.tau_fs, args.c1) {
        let omega_p = units::from_per_second(positive("--wp", wp)? * 1.0e15);
        let gamma = units::gamma_from_tau_fs(positive("--tau-fs", tau)?);
        let model =
            DielectricModel::drude_smith(omega_p, gamma, c1).map_err(|e| usage("--c1", e))?;
        return Ok((model, thickness));
    }
    if let Some(name) = &args.film_material {
        return Ok((named(registry, "--film-material", name)?, thickness));
    }
    Ok((tabulated("--film-nm", thickness_nm)?.model(), thickness))
}

fn epsilon(args: EpsilonArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let registry = registry(&args.materials)?;
    let xi = match (args.xi, args.xi_w0) {
        (Some(xi), _) => units::from_per_second(positive("--xi", xi)?),
        (None, Some(xi)) => positive("--xi-w0", xi)?,
        (None, None) => return Err(Failure::Usage("one of --xi or --xi-w0 is required".into())),
    };
    let model = match &args.material {
        Some(name) => named(&registry, "--material", name)?,
        None => film(&args.film, &registry)?.0,
    };
    let eps = model.epsilon_iw(xi)?;
    emit(out, format_args!("epsilon={eps:e}"))
}

fn quadrature(args: &QuadratureArgs) -> Result<QuadratureSpec, Failure> {
    let transform = match args.transform {
        TransformArg::Rational => Transform::Rational,
        TransformArg::Exponential => Transform::Exponential,
    };
    QuadratureSpec::new(args.rel_tol, args.abs_tol, args.max_refinements, transform).map_err(|e| {
        match e {
            Error::InvalidParameter { name, .. } => {
                usage(&format!("--{}", name.replace('_', "-")), e)
            }
            other => Failure::Usage(other.to_string()),
        }
    })
}

fn force(
    args: ForceArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
    full: bool,
) -> Result<(), Failure> {
    let s = &args.stack;
    let registry = registry(&s.materials)?;
    let half_space = named(&registry, "--half-space", &s.half_space)?;
    let substrate = named(&registry, "--substrate", &s.substrate)?;
    let (film_model, thickness) = film(&s.film, &registry)?;
    let gap = Length::nanometers(positive("--L-nm", s.gap_nm)?);
    let spec = quadrature(&args.quadrature)?;
    let stack = LayeredStack::new(half_space, film_model, thickness, substrate, gap)
        .map_err(|e| usage("--L-nm", e))?;

    let result = lifshitz::casimir_force(&stack, &spec)?;
    let _ = writeln!(err, "evaluations: {}", result.evaluations);
    if full {
        emit(out, format_args!("pressure_pa={:e}", result.pressure))?;
        emit(
            out,
            format_args!("pressure_error_pa={:e}", result.est_error),
        )?;
        emit(out, format_args!("eta={:e}", result.eta))?;
        emit(out, format_args!("eta_error={:e}", result.eta_error))?;
        emit(out, format_args!("evaluations={}", result.evaluations))
    } else {
        emit(out, format_args!("eta={:e}", result.eta))
    }
}

fn scenario(defaults: &DefaultsArgs, quad: &QuadratureArgs) -> Result<ForceScenario, Failure> {
    let registry = registry(&defaults.materials)?;
    Ok(ForceScenario {
        defaults: StackDefaults {
            half_space: named(&registry, "--half-space", &defaults.half_space)?,
            substrate: named(&registry, "--substrate", &defaults.substrate)?,
        },
        quadrature: quadrature(quad)?,
    })
}

fn thicknesses(films_nm: &[f64]) -> Result<Vec<f64>, Failure> {
    if films_nm.is_empty() {
        return Ok(scenarios::table1_thicknesses());
    }
    for &d in films_nm {
        tabulated("--film-nm", d)?;
    }
    Ok(films_nm.to_vec())
}

/// Creates the output directory up front so a bad path fails before any computation.
fn prepare_output(args: &OutputArgs) -> Result<Option<&Path>, Failure> {
    let Some(dir) = args.out.as_deref() else {
        return Ok(None);
    };
    std::fs::create_dir_all(dir)
        .map_err(|e| usage("--out", format_args!("{}: {e}", dir.display())))?;
    let probe = dir.join(".casimir-write-test");
    std::fs::write(&probe, b"")
        .and_then(|()| std::fs::remove_file(&probe))
        .map_err(|e| {
            usage(
                "--out",
                format_args!("{} is not writable: {e}", dir.display()),
            )
        })?;
    Ok(Some(dir))
}

fn write_curves(
    curves: &[CurveData],
    figure: &str,
    dir: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    for curve in curves {
        match dir {
            Some(dir) => {
                let path = curve.write_to_dir(dir, figure)?;
                emit(out, path.display())?;
            }
            None => write!(out, "{}", curve.to_csv())
                .map_err(|e| Failure::Runtime(io_error("<stdout>", e)))?,
        }
    }
    Ok(())
}

fn sweep_separation(args: SweepSeparationArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let scenario = scenario(&args.defaults, &args.quadrature)?;
    let films = thicknesses(&args.films_nm)?;
    let lo = positive("--L-min-nm", args.gap_min_nm)?;
    let hi = positive("--L-max-nm", args.gap_max_nm)?;
    let step = positive("--L-step-nm", args.gap_step_nm)?;
    if hi < lo {
        return Err(usage(
            "--L-max-nm",
            format_args!("{hi} is below --L-min-nm {lo}"),
        ));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    let gaps: Vec<f64> = (0..count).map(|i| lo + step * i as f64).collect();
    let dir = prepare_output(&args.output)?;
    let curves = scenario.fig3_eta_vs_separation(&films, &gaps)?;
    write_curves(&curves, "fig3", dir, out)
}

fn sweep_thickness(args: SweepThicknessArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let scenario = scenario(&args.defaults, &args.quadrature)?;
    let films = thicknesses(&args.films_nm)?;
    let gap = positive("--L-nm", args.gap_nm)?;
    let dir = prepare_output(&args.output)?;
    let curve = scenario.fig4_eta_vs_thickness(gap, &films)?;
    write_curves(&[curve], "fig4", dir, out)
}

fn delta(args: DeltaArgs, out: &mut dyn Write) -> Result<(), Failure> {
    tabulated("--film-nm", args.film_nm)?;
    let ck = positive("--ck-w0", args.ck_w0)?;
    let lo = positive("--xi-min-w0", args.xi_min_w0)?;
    let hi = positive("--xi-max-w0", args.xi_max_w0)?;
    if hi <= lo {
        return Err(usage(
            "--xi-max-w0",
            format_args!("{hi} is not above --xi-min-w0 {lo}"),
        ));
    }
    if args.points < 2 {
        return Err(usage("--points", "at least 2 points are needed"));
    }
    let grid = LogGrid::new(lo, hi, args.points).values();
    let dir = prepare_output(&args.output)?;
    let curves = scenarios::fig5_delta_percent(args.film_nm, &grid, ck)?;
    write_curves(&curves, "fig5", dir, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn scenario_errors_unwrap_convergence_failures() {
        let inner = Error::NotConverged {
            estimate: 0.5,
            achieved_error: 1e-3,
            evaluations: 10,
        };
        let wrapped = Error::Scenario {
            thickness_nm: 6.4,
            gap_nm: 400.0,
            source: Box::new(inner),
        };
        assert!(matches!(
            Failure::from(wrapped),
            Failure::NotConverged { estimate, .. } if estimate == 0.5
        ));
    }
}
