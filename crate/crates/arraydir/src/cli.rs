//! Argument parsing and subcommand dispatch for the `arraydir` binary.
//!
//! Exit status: 0 on success, 1 for usage or input-file errors, 2 when a
//! computation fails or validation finds an error above tolerance.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use arraydir_core::directivity::{DirectivityResult, ScanPlan};
use arraydir_core::quadrature::{normalization_numeric, DEFAULT_REL_TOL};
use arraydir_core::{
    derive_terms, directivity, generate_array, radiation_intensity, AntennaArray, Direction, ElementPattern, Layout,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{AppError, AppResult};
use crate::validate::{compare, DEFAULT_TOLERANCE};
use crate::{export, io, parallel, random};

#[derive(Debug, Parser)]
#[command(name = "arraydir", version, about = "Directivity of volumetric antenna arrays with sin^u cos^v elements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Directivity in one direction.
    Directivity(DirectivityArgs),
    /// Directivity over a θ×φ grid, written as CSV.
    Scan(GridArgs),
    /// Unnormalized radiation intensity over a θ×φ grid, written as CSV.
    Pattern(GridArgs),
    /// Compare the closed-form normalization with numerical integration.
    Validate(ValidateArgs),
    /// Write an array file for a canonical layout.
    Generate(GenerateArgs),
    /// Print the symbolic z-derivative of sin(r)/r of the given order.
    DumpDerivative(DumpArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Quadrature,
    Both,
}

#[derive(Debug, Args)]
pub struct ExponentArgs {
    /// Exponent of sin θ in the element factor.
    #[arg(long, default_value_t = 0)]
    pub u: u32,
    /// Exponent of cos θ in the element factor.
    #[arg(long, default_value_t = 0)]
    pub v: u32,
}

impl ExponentArgs {
    fn pattern(&self) -> ElementPattern {
        ElementPattern::new(self.u, self.v)
    }
}

#[derive(Debug, Args)]
pub struct DirectivityArgs {
    /// Array file (JSON).
    #[arg(long)]
    pub array: PathBuf,
    #[command(flatten)]
    pub exponents: ExponentArgs,
    /// Polar angle in degrees.
    #[arg(long, allow_negative_numbers = true)]
    pub theta: f64,
    /// Azimuth in degrees.
    #[arg(long, allow_negative_numbers = true)]
    pub phi: f64,
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    pub method: Method,
    /// Relative tolerance of the numerical integration.
    #[arg(long, default_value_t = DEFAULT_REL_TOL)]
    pub tolerance: f64,
    /// Decimals for dBi values.
    #[arg(long, default_value_t = 2)]
    pub precision: usize,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long)]
    pub array: PathBuf,
    #[command(flatten)]
    pub exponents: ExponentArgs,
    /// Number of θ samples from 0° to 180° inclusive.
    #[arg(long, default_value_t = 181)]
    pub theta_steps: usize,
    /// Number of φ samples over [0°, 360°).
    #[arg(long, default_value_t = 360)]
    pub phi_steps: usize,
    /// CSV destination; standard output when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    pub precision: usize,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, conflicts_with = "generate_random", required_unless_present = "generate_random")]
    pub array: Option<PathBuf>,
    /// Use a random array of N elements instead of a file (`N=8` or `8`).
    #[arg(long, value_name = "N", value_parser = parse_count)]
    pub generate_random: Option<usize>,
    #[arg(long, default_value_t = 0, requires = "generate_random")]
    pub seed: u64,
    /// Element exponents as U:V; repeatable. Defaults to 0:0, 0:1, 1:0 and 1:1.
    #[arg(long = "pattern", value_name = "U:V", value_parser = parse_pattern)]
    pub patterns: Vec<ElementPattern>,
    #[arg(long, conflicts_with = "patterns", requires = "v")]
    pub u: Option<u32>,
    #[arg(long, conflicts_with = "patterns", requires = "u")]
    pub v: Option<u32>,
    /// Direction in degrees at which directivities are reported.
    #[arg(long, default_value_t = 60.0, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi: f64,
    /// Largest accepted relative error.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    /// Relative tolerance of the numerical integration.
    #[arg(long, default_value_t = DEFAULT_REL_TOL)]
    pub rel_tol: f64,
    /// Scale the closed-form value by this factor before comparing.
    #[arg(long, hide = true)]
    pub corrupt_normalization: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    LinearZ,
    RectangularXy,
    Cubic,
    RingXy,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Element count (linear-z, ring-xy).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub nx: Option<usize>,
    #[arg(long)]
    pub ny: Option<usize>,
    #[arg(long)]
    pub nz: Option<usize>,
    /// Element spacing in wavelengths.
    #[arg(long)]
    pub spacing: Option<f64>,
    /// Ring radius in wavelengths.
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub amplitude: f64,
    /// Common phase in degrees.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phase: f64,
    /// Destination file; standard output when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DumpArgs {
    #[arg(long)]
    pub order: u32,
}

fn parse_count(s: &str) -> Result<usize, String> {
    let digits = s.strip_prefix("N=").or_else(|| s.strip_prefix("n=")).unwrap_or(s);
    match digits.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive element count, got `{s}`")),
    }
}

fn parse_pattern(s: &str) -> Result<ElementPattern, String> {
    let (u, v) = s.split_once(':').ok_or_else(|| format!("expected U:V, got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("expected non-negative integers in `{s}`"));
    Ok(ElementPattern::new(parse(u)?, parse(v)?))
}

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let failed = e.use_stderr();
            let sink: &mut dyn Write = if failed { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return i32::from(failed);
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> AppResult<()> {
    match command {
        Command::Directivity(a) => cmd_directivity(&a, out),
        Command::Scan(a) => cmd_scan(&a, out, err),
        Command::Pattern(a) => cmd_pattern(&a, out, err),
        Command::Validate(a) => cmd_validate(&a, out),
        Command::Generate(a) => cmd_generate(&a, out),
        Command::DumpDerivative(a) => write!(out, "{}", derive_terms(a.order)).map_err(stdout_error),
    }
}

fn stdout_error(source: std::io::Error) -> AppError {
    AppError::Io { path: PathBuf::from("<stdout>"), source }
}

fn direction(theta: f64, phi: f64) -> AppResult<Direction> {
    Direction::from_degrees(theta, phi).map_err(|e| AppError::Usage(e.to_string()))
}

fn check_tolerance(tol: f64) -> AppResult<()> {
    if (1e-13..=1e-2).contains(&tol) {
        Ok(())
    } else {
        Err(AppError::Usage(format!("tolerance {tol} outside [1e-13, 1e-2]")))
    }
}

fn cmd_directivity(a: &DirectivityArgs, out: &mut dyn Write) -> AppResult<()> {
    let dir = direction(a.theta, a.phi)?;
    if a.method != Method::Closed {
        check_tolerance(a.tolerance)?;
    }
    let array = io::load_array(&a.array)?;
    let pattern = a.exponents.pattern();
    let p = a.precision;
    let closed = directivity(&array, pattern, dir)?;
    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(stdout_error);
    w(out, format!("elements: {}  u={} v={}", array.len(), pattern.u, pattern.v))?;
    w(out, format!("direction: theta={} deg  phi={} deg", a.theta, a.phi))?;
    let report = |label: &str, t: f64, r: &DirectivityResult| {
        format!("{label}: normalization {t:.12}  directivity {:.6} linear  {:.p$} dBi", r.linear, r.dbi)
    };
    let b = closed.breakdown;
    if a.method != Method::Quadrature {
        w(out, format!("normalization terms: self {:.12}  cross {:.12}", b.self_term, b.cross_term))?;
        w(out, report("closed form", b.total, &closed))?;
    }
    if a.method != Method::Closed {
        let numeric = normalization_numeric(&array, pattern, a.tolerance)?;
        let intensity = radiation_intensity(&array, pattern, dir);
        let linear = intensity / numeric.value;
        let r = DirectivityResult { linear, dbi: arraydir_core::directivity::to_dbi(linear), ..closed };
        w(out, report("quadrature", numeric.value, &r))?;
        if a.method == Method::Both {
            let rel = (b.total - numeric.value).abs() / numeric.value;
            w(out, format!("relative error: {rel:.3e}"))?;
        }
    }
    Ok(())
}

fn write_grid(path: Option<&Path>, out: &mut dyn Write, f: impl FnOnce(&mut dyn Write) -> AppResult<()>) -> AppResult<()> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|source| AppError::Io { path: p.into(), source })?;
            let mut w = BufWriter::new(file);
            f(&mut w)?;
            w.flush().map_err(|source| AppError::Io { path: p.into(), source })
        }
        None => f(out),
    }
}

fn grid_inputs(a: &GridArgs) -> AppResult<AntennaArray> {
    if a.theta_steps < 2 || a.phi_steps < 2 {
        return Err(AppError::Usage("--theta-steps and --phi-steps must be at least 2".into()));
    }
    io::load_array(&a.array)
}

fn cmd_scan(a: &GridArgs, out: &mut dyn Write, err: &mut dyn Write) -> AppResult<()> {
    let array = grid_inputs(a)?;
    let start = Instant::now();
    let plan = ScanPlan::new(&array, a.exponents.pattern(), a.theta_steps, a.phi_steps)?;
    let grid = parallel::run_plan(&plan, parallel::worker_count());
    write_grid(a.output.as_deref(), out, |w| export::write_directivity_csv(&grid, w))?;
    let (i, j) = grid.argmax();
    let best = grid.result(i, j);
    let (theta, phi) = grid.degrees(i, j);
    let summary = format!(
        "argmax: theta={theta:.4} deg  phi={phi:.4} deg  directivity {:.6} linear  {:.p$} dBi  ({} points, {:.2} s)",
        best.linear,
        best.dbi,
        grid.values.len(),
        start.elapsed().as_secs_f64(),
        p = a.precision,
    );
    let sink: &mut dyn Write = if a.output.is_some() { out } else { err };
    writeln!(sink, "{summary}").map_err(stdout_error)
}

fn cmd_pattern(a: &GridArgs, out: &mut dyn Write, err: &mut dyn Write) -> AppResult<()> {
    let array = grid_inputs(a)?;
    let plan = ScanPlan::intensity(&array, a.exponents.pattern(), a.theta_steps, a.phi_steps)?;
    let grid = parallel::run_plan(&plan, parallel::worker_count());
    write_grid(a.output.as_deref(), out, |w| export::write_intensity_csv(&grid, w))?;
    let (i, j) = grid.argmax();
    let (theta, phi) = grid.degrees(i, j);
    let sink: &mut dyn Write = if a.output.is_some() { out } else { err };
    writeln!(sink, "max intensity {} at theta={theta:.4} deg  phi={phi:.4} deg", grid.linear(i, j))
        .map_err(stdout_error)
}

fn cmd_validate(a: &ValidateArgs, out: &mut dyn Write) -> AppResult<()> {
    check_tolerance(a.rel_tol)?;
    if !(a.tolerance > 0.0) {
        return Err(AppError::Usage("--tolerance must be positive".into()));
    }
    let dir = direction(a.theta, a.phi)?;
    let array = match (&a.array, a.generate_random) {
        (Some(path), _) => io::load_array(path)?,
        (None, Some(n)) => random::random_array(n, a.seed)?,
        (None, None) => unreachable!("clap requires one source"),
    };
    let patterns = match (a.u, a.v) {
        (Some(u), Some(v)) => vec![ElementPattern::new(u, v)],
        _ if !a.patterns.is_empty() => a.patterns.clone(),
        _ => [(0, 0), (0, 1), (1, 0), (1, 1)].map(|(u, v)| ElementPattern::new(u, v)).to_vec(),
    };
    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(stdout_error);
    w(out, format!("elements: {}  tolerance {:e}  oracle rel_tol {:e}", array.len(), a.tolerance, a.rel_tol))?;
    let mut failed = 0;
    for &pattern in &patterns {
        let c = compare(&array, pattern, a.rel_tol, a.corrupt_normalization)?;
        let intensity = radiation_intensity(&array, pattern, dir);
        let ok = c.passes(a.tolerance);
        failed += usize::from(!ok);
        w(
            out,
            format!(
                "u={} v={}  closed {:.15e}  quadrature {:.15e}  rel.err {:.3e}  D {:.6} / {:.6}  {}",
                pattern.u,
                pattern.v,
                c.closed,
                c.numeric,
                c.relative_error(),
                intensity / c.closed,
                intensity / c.numeric,
                if ok { "PASS" } else { "FAIL" }
            ),
        )?;
    }
    if failed > 0 {
        return Err(AppError::ValidationFailed { failed, total: patterns.len() });
    }
    Ok(())
}

fn require<T>(value: Option<T>, flag: &str, kind: &str) -> AppResult<T> {
    value.ok_or_else(|| AppError::Usage(format!("--kind {kind} requires --{flag}")))
}

fn cmd_generate(a: &GenerateArgs, out: &mut dyn Write) -> AppResult<()> {
    let layout = match a.kind {
        Kind::LinearZ => {
            Layout::LinearZ { count: require(a.n, "n", "linear-z")?, spacing: require(a.spacing, "spacing", "linear-z")? }
        }
        Kind::RectangularXy => Layout::RectangularXy {
            nx: require(a.nx, "nx", "rectangular-xy")?,
            ny: require(a.ny, "ny", "rectangular-xy")?,
            spacing: require(a.spacing, "spacing", "rectangular-xy")?,
        },
        Kind::Cubic => Layout::Cubic {
            nx: require(a.nx, "nx", "cubic")?,
            ny: require(a.ny, "ny", "cubic")?,
            nz: require(a.nz, "nz", "cubic")?,
            spacing: require(a.spacing, "spacing", "cubic")?,
        },
        Kind::RingXy => {
            Layout::RingXy { count: require(a.n, "n", "ring-xy")?, radius: require(a.radius, "radius", "ring-xy")? }
        }
    };
    let array = generate_array(layout, a.amplitude, a.phase.to_radians()).map_err(|e| AppError::Usage(e.to_string()))?;
    match &a.output {
        Some(path) => {
            io::save_array(path, &array)?;
            writeln!(out, "wrote {} elements to {}", array.len(), path.display()).map_err(stdout_error)
        }
        None => {
            let text = serde_json::to_string_pretty(&io::array_to_json(&array)).expect("plain numbers serialize");
            writeln!(out, "{text}").map_err(stdout_error)
        }
    }
}
