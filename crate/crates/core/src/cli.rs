//! Command-line front end. Argument parsing and file handling live here so
//! the binary stays a one-line wrapper.
//!
//! Series files are either JSON (`{"basis": "T", "coeffs": [...]}`, zeroth
//! coefficient stored unhalved) or CSV lines `n,value` in the same
//! convention. Anything without a `.json` or `.csv` extension on the command
//! line is read as an inline comma-separated list.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::catalog;
use crate::error::Error;
use crate::fit::{self, FitConfig, FitResult};
use crate::partial_fractions;
use crate::recurrence;
use crate::series::{Basis, ChebSeries, MonomialPoly};
use crate::truncated;

/// Set to `0` to silence warnings about values below double precision.
pub const PRECISION_WARN_ENV: &str = "CHEB_FORGE_PRECISION_WARN";

/// Failure of a CLI invocation.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("cannot write {path}: {source}")]
    Output { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// 1 for numerical failures, 2 for bad invocations.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(e) => match e {
                Error::Contract(_)
                | Error::UnknownCatalogEntry(_)
                | Error::BasisMismatch { .. }
                | Error::IndexMismatch { .. } => 2,
                _ => 1,
            },
            CliError::Output { .. } => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "cheb-forge",
    version,
    about = "Chebyshev-series expansions and relative-error polynomial fits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Chebyshev coefficients of 1/p(x).
    ExpandInverse(ExpandInverseArgs),
    /// Leading coefficients of f/B from the truncated system.
    Divide(DivideArgs),
    /// Newton fit of a polynomial with small relative error.
    FitRelerr(FitArgs),
    /// Newton fit followed by levelling of the relative-error extrema.
    Equilibrate(EquilibrateArgs),
    /// Coefficients of a built-in expansion.
    Catalog(CatalogArgs),
    /// Evaluates a series at given points.
    Eval(EvalArgs),
    /// Samples the relative error f/p - 1 of a fitted polynomial.
    ErrorCurve(ErrorCurveArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Partial fractions over the complex roots.
    Pf,
    /// Exact leading coefficients extended by the division recurrence.
    Recurrence,
    /// Truncated banded system.
    Truncate,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write the series schema as JSON instead of CSV.
    #[arg(long)]
    pub json: bool,
    /// Output file (default: standard output).
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExpandInverseArgs {
    /// Power-basis coefficients d_0,d_1,... of p.
    #[arg(long, group = "denominator")]
    pub monomial: Option<String>,
    /// Chebyshev coefficients of p (zeroth stored unhalved).
    #[arg(long, group = "denominator")]
    pub cheb: Option<String>,
    /// Series file holding the Chebyshev coefficients of p.
    #[arg(long, group = "denominator")]
    pub input: Option<PathBuf>,
    /// Expand in shifted polynomials on [0, 1].
    #[arg(long)]
    pub shifted: bool,
    #[arg(long = "n-max", default_value_t = 8)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value_t = Method::Pf)]
    pub method: Method,
    /// Truncation index for `--method truncate` (default max(n-max, 2k+8)).
    #[arg(long = "N")]
    pub big_n: Option<usize>,
    /// Report the agreement of the other two methods on standard error.
    #[arg(long)]
    pub verify: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DivideArgs {
    /// Numerator series (file or inline list).
    #[arg(long)]
    pub f: String,
    /// Denominator series (file or inline list).
    #[arg(long)]
    pub b: String,
    #[arg(long = "N")]
    pub big_n: usize,
    #[arg(long)]
    pub shifted: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TargetArgs {
    /// Built-in target function.
    #[arg(long, group = "target")]
    pub catalog: Option<String>,
    /// Series file with the target coefficients.
    #[arg(long, group = "target")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub shifted: bool,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    /// Degree of the fitted polynomial.
    #[arg(long)]
    pub k: usize,
    /// Truncation index (default 2k+8).
    #[arg(long = "N")]
    pub big_n: Option<usize>,
    /// Newton iterations. Without --tol exactly this many updates are made;
    /// with --tol it is a cap (default 8).
    #[arg(long)]
    pub iters: Option<usize>,
    /// Stop once max |a_0 - 2|, |a_1..a_k| falls to this (default 1e-14
    /// when --iters is absent).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Add the power-basis column d_n.
    #[arg(long = "emit-monomial")]
    pub emit_monomial: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EquilibrateArgs {
    #[command(flatten)]
    pub fit: FitArgs,
    /// Levelling passes.
    #[arg(long = "equilibrate-iters", default_value_t = 4)]
    pub equilibrate_iters: usize,
    /// Sample points used to bracket extrema.
    #[arg(long, default_value_t = 4001)]
    pub grid: usize,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    #[arg(long, required_unless_present = "list")]
    pub name: Option<String>,
    #[arg(long = "n-max", default_value_t = 16)]
    pub n_max: usize,
    /// List the available names.
    #[arg(long)]
    pub list: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Series (file or inline list).
    #[arg(long)]
    pub series: String,
    #[arg(long)]
    pub shifted: bool,
    /// Comma-separated abscissae.
    #[arg(long)]
    pub x: String,
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ErrorCurveArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    /// Fitted polynomial (file or inline list).
    #[arg(long)]
    pub b: String,
    /// Truncation index of the target (default 2k+8).
    #[arg(long = "N")]
    pub big_n: Option<usize>,
    #[arg(long, default_value_t = 2001)]
    pub grid: usize,
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Data goes to `stdout` unless `-o` is given;
/// diagnostics go to `stderr`.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(rendered.as_bytes());
            } else {
                let _ = stderr.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let mut diag = Diagnostics::from_env();
    match execute(&cli.command, stdout, &mut diag) {
        Ok(()) => {
            let _ = stderr.write_all(diag.text.as_bytes());
            0
        }
        Err(e) => {
            let _ = stderr.write_all(diag.text.as_bytes());
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

/// Entry point of the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

struct Diagnostics {
    text: String,
    precision_warnings: bool,
}

impl Diagnostics {
    fn from_env() -> Self {
        let precision_warnings = std::env::var(PRECISION_WARN_ENV).map_or(true, |v| v != "0");
        Self {
            text: String::new(),
            precision_warnings,
        }
    }

    fn note(&mut self, msg: impl AsRef<str>) {
        self.text.push_str(msg.as_ref());
        self.text.push('\n');
    }

    /// Warns when entries fall below double-precision resolution of the
    /// largest one.
    fn precision(&mut self, what: &str, values: &[f64]) {
        if !self.precision_warnings {
            return;
        }
        let top = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let limit = top * f64::EPSILON;
        let count = values.iter().filter(|v| **v != 0.0 && v.abs() < limit).count();
        if count > 0 {
            self.note(format!(
                "warning: {count} {what} below double precision relative to the largest (set {PRECISION_WARN_ENV}=0 to silence)"
            ));
        }
    }

    fn relerr(&mut self, value: f64) {
        if self.precision_warnings && value.abs() < f64::EPSILON {
            self.note(format!(
                "warning: relative error {value:.3e} is below double precision; trailing digits are not significant (set {PRECISION_WARN_ENV}=0 to silence)"
            ));
        }
    }
}

fn execute(cmd: &Command, stdout: &mut dyn Write, diag: &mut Diagnostics) -> CliResult<()> {
    match cmd {
        Command::ExpandInverse(a) => expand_inverse(a, stdout, diag),
        Command::Divide(a) => divide(a, stdout, diag),
        Command::FitRelerr(a) => fit_relerr(a, stdout, diag),
        Command::Equilibrate(a) => equilibrate(a, stdout, diag),
        Command::Catalog(a) => catalog_cmd(a, stdout, diag),
        Command::Eval(a) => eval(a, stdout),
        Command::ErrorCurve(a) => error_curve(a, stdout),
    }
}

fn basis_of(shifted: bool) -> Basis {
    if shifted {
        Basis::Shifted
    } else {
        Basis::Standard
    }
}

/// Formats with 17 significant digits.
pub fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Parses a comma-separated list of numbers.
pub fn parse_list(text: &str) -> CliResult<Vec<f64>> {
    let values = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| CliError::Usage(format!("not a number: {s:?}")))
        })
        .collect::<CliResult<Vec<f64>>>()?;
    if values.is_empty() {
        return Err(CliError::Usage("empty coefficient list".into()));
    }
    check_finite(&values)?;
    Ok(values)
}

fn check_finite(values: &[f64]) -> CliResult<()> {
    match values.iter().find(|v| !v.is_finite()) {
        Some(v) => Err(CliError::Usage(format!("non-finite coefficient {v}"))),
        None => Ok(()),
    }
}

#[derive(Deserialize)]
struct SeriesFile {
    basis: Basis,
    coeffs: Vec<f64>,
}

fn has_extension(path: &Path, ext: &str) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case(ext))
}

/// Reads a series file; the extension selects JSON or CSV. CSV carries no
/// basis, so `basis` applies.
pub fn read_series_file(path: &Path, basis: Basis) -> CliResult<ChebSeries> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    if has_extension(path, "json") {
        let file: SeriesFile =
            serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        if file.coeffs.is_empty() {
            return Err(CliError::Usage(format!("{}: empty coefficient list", path.display())));
        }
        check_finite(&file.coeffs)?;
        return Ok(ChebSeries::new(file.basis, file.coeffs));
    }
    parse_csv(&text, basis).map_err(|e| match e {
        CliError::Usage(m) => CliError::Usage(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// CSV lines `n,value[,...]`; blank lines and `#` comments are skipped,
/// missing indices are zero. Values are stored coefficients unless a comment
/// line contains the word `plain` (as in the fit tables), in which case the
/// first one is the plain `b_0`.
pub fn parse_csv(text: &str, basis: Basis) -> CliResult<ChebSeries> {
    let mut coeffs: Vec<f64> = Vec::new();
    let mut plain = false;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(comment) = line.strip_prefix('#') {
            plain |= comment.split_whitespace().any(|w| w == "plain");
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split(',').map(str::trim);
        let (Some(n), Some(v)) = (parts.next(), parts.next()) else {
            return Err(CliError::Usage(format!("line {}: expected n,value", lineno + 1)));
        };
        let n: usize = n
            .parse()
            .map_err(|_| CliError::Usage(format!("line {}: bad index {n:?}", lineno + 1)))?;
        let v: f64 = v
            .parse()
            .map_err(|_| CliError::Usage(format!("line {}: bad value {v:?}", lineno + 1)))?;
        if coeffs.len() <= n {
            coeffs.resize(n + 1, 0.0);
        }
        coeffs[n] = v;
    }
    if coeffs.is_empty() {
        return Err(CliError::Usage("no coefficients".into()));
    }
    check_finite(&coeffs)?;
    if plain {
        return Ok(ChebSeries::from_plain(basis, &coeffs));
    }
    Ok(ChebSeries::new(basis, coeffs))
}

/// A file path when it ends in `.json` or `.csv`, an inline list otherwise.
pub fn read_series_arg(arg: &str, basis: Basis) -> CliResult<ChebSeries> {
    let path = Path::new(arg);
    if has_extension(path, "json") || has_extension(path, "csv") {
        read_series_file(path, basis)
    } else {
        Ok(ChebSeries::new(basis, parse_list(arg)?))
    }
}

/// Series schema with 17 significant digits.
pub fn series_json(s: &ChebSeries) -> String {
    let coeffs: Vec<String> = s.coeffs().iter().map(|&v| fmt_num(v)).collect();
    format!(
        "{{\"basis\": \"{}\", \"coeffs\": [{}]}}\n",
        s.basis().name(),
        coeffs.join(", ")
    )
}

/// Lines `n,value`.
pub fn series_csv(s: &ChebSeries) -> String {
    let mut out = String::new();
    for (n, &v) in s.coeffs().iter().enumerate() {
        let _ = writeln!(out, "{n},{}", fmt_num(v));
    }
    out
}

fn emit(out: &OutputArgs, s: &ChebSeries, stdout: &mut dyn Write) -> CliResult<()> {
    let text = if out.json { series_json(s) } else { series_csv(s) };
    write_text(out.output.as_deref(), &text, stdout)
}

fn write_text(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Output {
            path: p.to_path_buf(),
            source,
        }),
        None => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Output {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    }
}

fn expand_inverse(a: &ExpandInverseArgs, stdout: &mut dyn Write, diag: &mut Diagnostics) -> CliResult<()> {
    let basis = basis_of(a.shifted);
    let (mono, cheb) = match (&a.monomial, &a.cheb, &a.input) {
        (Some(m), None, None) => {
            let p = MonomialPoly::new(parse_list(m)?).normalize();
            let c = p.to_cheb(basis);
            (p, c)
        }
        (None, Some(c), None) => {
            let c = ChebSeries::new(basis, parse_list(c)?).normalize();
            (c.to_monomial().normalize(), c)
        }
        (None, None, Some(path)) => {
            let c = read_series_file(path, basis)?.normalize();
            (c.to_monomial().normalize(), c)
        }
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --monomial, --cheb, --input".into(),
            ))
        }
    };
    let k = cheb.degree();
    if k == 0 && cheb.get(0) == 0.0 {
        return Err(Error::DegenerateDenominator { leading: 0.0 }.into());
    }
    let big_n = a.big_n.unwrap_or((2 * k + 8).max(a.n_max));
    if big_n < a.n_max {
        return Err(CliError::Usage(format!(
            "--N {big_n} must be at least --n-max {}",
            a.n_max
        )));
    }
    let run = |m: Method| -> CliResult<ChebSeries> {
        Ok(match m {
            Method::Pf => by_partial_fractions(&mono, cheb.basis(), a.n_max)?,
            Method::Recurrence => {
                let exact = by_partial_fractions(&mono, cheb.basis(), a.n_max.max(k))?;
                let seed = &exact.coeffs()[..k];
                recurrence::extend(seed, &cheb, a.n_max)?
            }
            Method::Truncate => truncated::reciprocal(&cheb, big_n)?.resized(a.n_max),
        })
    };
    let series = run(a.method)?.resized(a.n_max);
    if a.verify {
        for other in [Method::Pf, Method::Recurrence, Method::Truncate] {
            if other == a.method {
                continue;
            }
            let s = run(other)?.resized(a.n_max);
            let dev = series
                .coeffs()
                .iter()
                .zip(s.coeffs())
                .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
            diag.note(format!("verify: max |{:?} - {:?}| = {:.3e}", a.method, other, dev));
        }
    }
    diag.precision("coefficients are", series.coeffs());
    emit(&a.out, &series, stdout)
}

fn by_partial_fractions(p: &MonomialPoly, basis: Basis, n_max: usize) -> CliResult<ChebSeries> {
    let d = partial_fractions::decompose_for(p, basis)?;
    Ok(match basis {
        Basis::Standard => partial_fractions::expand_inverse(&d, n_max)?,
        Basis::Shifted => partial_fractions::expand_inverse_shifted(&d, n_max)?,
    })
}

fn divide(a: &DivideArgs, stdout: &mut dyn Write, diag: &mut Diagnostics) -> CliResult<()> {
    let basis = basis_of(a.shifted);
    let f = read_series_arg(&a.f, basis)?;
    let b = read_series_arg(&a.b, basis)?;
    let q = truncated::divide(&f, &b, a.big_n)?;
    if q.padded_tail {
        diag.note(format!(
            "note: f has {} coefficients; f_{}..f_{} taken as zero",
            f.len(),
            f.len(),
            a.big_n
        ));
    }
    diag.precision("coefficients are", q.series.coeffs());
    emit(&a.out, &q.series, stdout)
}

fn load_target(t: &TargetArgs, n: usize) -> CliResult<ChebSeries> {
    match (&t.catalog, &t.input) {
        (Some(name), None) => {
            let entry = catalog::lookup(name)?;
            if t.shifted && entry.basis != Basis::Shifted {
                return Err(CliError::Usage(format!("{name} is not a shifted expansion")));
            }
            Ok(entry.generate(n))
        }
        (None, Some(path)) => Ok(read_series_file(path, basis_of(t.shifted))?),
        _ => Err(CliError::Usage("give exactly one of --catalog, --input".into())),
    }
}

fn fit_config(a: &FitArgs) -> CliResult<FitConfig> {
    let (iters, tol) = match (a.iters, a.tol) {
        (None, None) => (8, 1e-14),
        // an explicit count without a tolerance means "iterate that often"
        (Some(iters), None) => (iters, f64::MIN_POSITIVE),
        (iters, Some(tol)) => (iters.unwrap_or(8), tol),
    };
    if !(tol > 0.0) {
        return Err(CliError::Usage("--tol must be positive".into()));
    }
    let cfg = FitConfig::new(a.k)
        .with_n(a.big_n.unwrap_or(2 * a.k + 8))
        .with_newton_iters(iters)
        .with_tolerance(tol);
    cfg.validate()?;
    Ok(cfg)
}

/// Table `n,b_n[,d_n]` with the plain coefficients of `b_0 T_0 + ... + b_k T_k`.
fn fit_table(r: &FitResult, monomial: bool) -> String {
    let b = r.b.plain_coeffs();
    let d = r.b.to_monomial();
    let mut out = String::from(if monomial {
        "# n,b_n,d_n with plain b_0\n"
    } else {
        "# n,b_n with plain b_0\n"
    });
    for (n, &bn) in b.iter().enumerate() {
        if monomial {
            let _ = writeln!(out, "{n},{},{}", fmt_num(bn), fmt_num(d.coeffs()[n]));
        } else {
            let _ = writeln!(out, "{n},{}", fmt_num(bn));
        }
    }
    out
}

fn report_fit(a: &FitArgs, r: &FitResult, stdout: &mut dyn Write, diag: &mut Diagnostics) -> CliResult<()> {
    diag.note(format!(
        "target error {:.3e}, relerr_estimate {:.3e}",
        r.target_error(),
        r.relerr_estimate
    ));
    diag.relerr(r.relerr_estimate);
    diag.precision("fitted coefficients are", r.b.coeffs());
    let text = if a.out.json {
        series_json(&r.b)
    } else {
        fit_table(r, a.emit_monomial)
    };
    write_text(a.out.output.as_deref(), &text, stdout)
}

fn fit_relerr(a: &FitArgs, stdout: &mut dyn Write, diag: &mut Diagnostics) -> CliResult<()> {
    let cfg = fit_config(a)?;
    let f = load_target(&a.target, cfg.n)?;
    let r = fit::newton_fit(&f, &cfg)?;
    diag.note(format!("newton: {} updates", r.history.len().saturating_sub(1)));
    report_fit(a, &r, stdout, diag)
}

fn equilibrate(a: &EquilibrateArgs, stdout: &mut dyn Write, diag: &mut Diagnostics) -> CliResult<()> {
    let mut cfg = fit_config(&a.fit)?.with_equilibrate_iters(a.equilibrate_iters);
    cfg.extremum_grid = a.grid;
    cfg.validate()?;
    let f = load_target(&a.fit.target, cfg.n)?;
    let start = fit::newton_fit(&f, &cfg)?;
    let r = fit::equilibrate(&f, &start, &cfg)?;
    let peaks: Vec<String> = r.peak_history.iter().map(|p| format!("{p:.3e}")).collect();
    diag.note(format!("equilibrate: max |R| per pass {}", peaks.join(" -> ")));
    report_fit(&a.fit, &r, stdout, diag)
}

fn catalog_cmd(a: &CatalogArgs, stdout: &mut dyn Write, diag: &mut Diagnostics) -> CliResult<()> {
    if a.list {
        let mut text = String::new();
        for e in catalog::entries() {
            let _ = writeln!(text, "{},{},{}", e.name, e.basis.name(), e.description);
        }
        return write_text(a.out.output.as_deref(), &text, stdout);
    }
    let name = a.name.as_deref().unwrap_or_default();
    let s = catalog::catalog(name, a.n_max)?;
    diag.precision("coefficients are", s.coeffs());
    emit(&a.out, &s, stdout)
}

fn eval(a: &EvalArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let s = read_series_arg(&a.series, basis_of(a.shifted))?;
    let xs = parse_list(&a.x)?;
    let (lo, hi) = s.basis().domain();
    if let Some(x) = xs.iter().find(|x| **x < lo || **x > hi) {
        return Err(CliError::Usage(format!("x = {x} lies outside the domain [{lo}, {hi}]")));
    }
    let mut text = String::new();
    for x in xs {
        let _ = writeln!(text, "{},{}", fmt_num(x), fmt_num(s.eval(x)));
    }
    write_text(a.output.as_deref(), &text, stdout)
}

fn error_curve(a: &ErrorCurveArgs, stdout: &mut dyn Write) -> CliResult<()> {
    if a.grid < 2 {
        return Err(CliError::Usage("--grid needs at least 2 points".into()));
    }
    let basis_hint = match &a.target.catalog {
        Some(name) => catalog::lookup(name)?.basis,
        None => basis_of(a.target.shifted),
    };
    let b = read_series_arg(&a.b, basis_hint)?;
    let n = a.big_n.unwrap_or(2 * b.degree() + 8);
    let f = load_target(&a.target, n)?;
    let xs = fit::uniform_grid(b.basis(), a.grid);
    let r = fit::relative_error_curve(&f, &b, n, &xs)?;
    let mut text = String::new();
    for (x, v) in xs.iter().zip(r) {
        let _ = writeln!(text, "{},{}", fmt_num(*x), fmt_num(v));
    }
    write_text(a.output.as_deref(), &text, stdout)
}
