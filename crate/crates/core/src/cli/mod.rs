//! Command-line front end. [`run`] parses arguments, executes one command
//! and returns the process exit code: 0 on success, 2 for usage and
//! validation errors, 1 for internal failures.

pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::diagnostics::{
    self, c0_sweep, compare_reference, contraction_constant, existence_radius, rational_grid,
    residual_table, write_sweep_csv, ContractionParams, Interval,
};
use crate::error::Error;
use crate::exactmath::rational::{int, to_f64};
use crate::exactmath::{parse_rational, Rational};
use crate::ham::Method;
use crate::problem::{load_problem, Ivp};

#[derive(Debug, Parser)]
#[command(name = "ifoham", version, about = "Exact HAM / IFOHAM / Picard series solver for polynomial IVPs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the terms u_k and partial sums x_m.
    Solve(SolveArgs),
    /// Print the squared-residual table E_m with timings.
    Residuals(ResidualArgs),
    /// Sweep the convergence control parameter and emit CSV.
    Sweep(SweepArgs),
    /// Evaluate the contraction constant k.
    Bound(BoundArgs),
    /// Compare partial sums with sampled reference values.
    Compare(CompareArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Ham,
    Ifoham,
    Picard,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Ham => Method::Ham,
            MethodArg::Ifoham => Method::Ifoham,
            MethodArg::Picard => Method::Picard,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    #[arg(long, value_enum, default_value = "ham")]
    pub method: MethodArg,
    /// Convergence control parameter, "n", "n/d" or an exact decimal. Ignored by picard.
    #[arg(long, default_value = "-1", allow_hyphen_values = true)]
    pub c0: String,
    #[arg(long, default_value_t = 4)]
    pub order: usize,
    /// Cut each IFOHAM/Picard iterate to this degree (approximate).
    #[arg(long)]
    pub truncate: Option<usize>,
    /// Problem file (JSON).
    pub problem: PathBuf,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ResidualArgs {
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Integration interval "lo:hi".
    #[arg(long, default_value = "-1:1", allow_hyphen_values = true)]
    pub omega: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value = "ifoham")]
    pub method: MethodArg,
    /// c0 grid "start:stop:step", stop inclusive.
    #[arg(long, default_value = "-1.3:-0.05:0.05", allow_hyphen_values = true)]
    pub grid: String,
    /// Orders, e.g. "0-4", "4" or "0,2,4".
    #[arg(long, default_value = "0-4")]
    pub orders: String,
    #[arg(long, default_value = "-1:1", allow_hyphen_values = true)]
    pub omega: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    pub problem: PathBuf,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// Lipschitz constant of f in x.
    #[arg(long = "L")]
    pub lipschitz: f64,
    /// Norm weight, must exceed L.
    #[arg(long = "Ltilde")]
    pub weight: f64,
    /// Existence radius; derived from a, b, M when omitted.
    #[arg(long = "A")]
    pub radius: Option<f64>,
    #[arg(long = "a")]
    pub a: Option<f64>,
    #[arg(long = "b")]
    pub b: Option<f64>,
    #[arg(long = "M")]
    pub m: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c0: String,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub solver: SolverArgs,
    /// CSV file with header "t,value".
    #[arg(long)]
    pub reference: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Error carrying the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn user(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_user_error() {
            CliError::user(e.to_string())
        } else {
            CliError::internal(e.to_string())
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

pub fn execute(command: &Command, stdout: &mut dyn Write) -> CliResult<()> {
    match command {
        Command::Solve(args) => cmd_solve(args, stdout),
        Command::Residuals(args) => cmd_residuals(args, stdout),
        Command::Sweep(args) => cmd_sweep(args, stdout),
        Command::Bound(args) => cmd_bound(args, stdout),
        Command::Compare(args) => cmd_compare(args, stdout),
    }
}

fn load(path: &Path) -> CliResult<Ivp> {
    load_problem(path).map_err(|e| match e {
        Error::Io(io) => CliError::user(format!("cannot read {}: {io}", path.display())),
        other => CliError::user(format!("{}: {other}", path.display())),
    })
}

fn parse_c0(text: &str, method: Method) -> CliResult<Rational> {
    let c0 = parse_rational(text).map_err(|e| CliError::user(format!("invalid c0: {e}")))?;
    diagnostics::check_c0(method, &c0)?;
    Ok(c0)
}

fn emit(output: &OutputArgs, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    emit_to(output.out.as_deref(), text, stdout)
}

fn emit_to(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::internal(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::internal(format!("cannot write output: {e}"))),
    }
}

/// Parses `"lo:hi"`.
pub fn parse_interval(text: &str) -> crate::Result<Interval> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| Error::Validation(format!("interval {text:?} must look like lo:hi")))?;
    Interval::new(parse_rational(lo)?, parse_rational(hi)?)
}

/// Parses `"start:stop:step"` into the inclusive grid.
pub fn parse_grid(text: &str) -> crate::Result<Vec<Rational>> {
    let parts: Vec<&str> = text.split(':').collect();
    let [start, stop, step] = parts.as_slice() else {
        return Err(Error::Validation(format!("grid {text:?} must look like start:stop:step")));
    };
    rational_grid(&parse_rational(start)?, &parse_rational(stop)?, &parse_rational(step)?)
}

/// Parses order lists such as `"0-4"`, `"4"` or `"0,2-3"`.
pub fn parse_orders(text: &str) -> crate::Result<Vec<usize>> {
    let bad = || Error::Validation(format!("invalid order list {text:?}"));
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        match part.split_once('-') {
            Some((a, b)) => {
                let a: usize = a.trim().parse().map_err(|_| bad())?;
                let b: usize = b.trim().parse().map_err(|_| bad())?;
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn solve_from(args: &SolverArgs) -> CliResult<crate::SolutionSeries> {
    let ivp = load(&args.problem)?;
    let method = Method::from(args.method);
    let c0 = parse_c0(&args.c0, method)?;
    Ok(diagnostics::solve(&ivp, method, &c0, args.order, args.truncate)?)
}

pub fn cmd_solve(args: &SolveArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let series = solve_from(&args.solver)?;
    let text = match args.output.format {
        Format::Text => render::solution_text(&series),
        Format::Json => render::SolutionDoc::from_series(&series).to_json(),
        Format::Csv => render::solution_csv(&series),
    };
    emit(&args.output, &text, stdout)
}

pub fn cmd_residuals(args: &ResidualArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let s = &args.solver;
    let ivp = load(&s.problem)?;
    let method = Method::from(s.method);
    let c0 = parse_c0(&s.c0, method)?;
    let omega = parse_interval(&args.omega)?;
    let reports = residual_table(&ivp, method, &c0, s.order, &omega, s.truncate)?;
    let series = diagnostics::solve(&ivp, method, &c0, s.order, s.truncate)?;
    let text = match args.output.format {
        Format::Text => render::residuals_text(&series, &reports),
        Format::Json => render::residuals_json(&series, &reports),
        Format::Csv => render::residuals_csv(&reports),
    };
    emit(&args.output, &text, stdout)
}

pub fn cmd_sweep(args: &SweepArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let ivp = load(&args.problem)?;
    let grid = parse_grid(&args.grid)?;
    let orders = parse_orders(&args.orders)?;
    let omega = parse_interval(&args.omega)?;
    let rows = c0_sweep(&ivp, args.method.into(), &grid, &orders, &omega)?;
    let mut buf = Vec::new();
    write_sweep_csv(&rows, &mut buf).map_err(|e| CliError::internal(e.to_string()))?;
    let text = String::from_utf8(buf).expect("CSV is ASCII");
    emit_to(args.out.as_deref(), &text, stdout)
}

pub fn cmd_bound(args: &BoundArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let c0 = to_f64(&parse_rational(&args.c0).map_err(|e| CliError::user(format!("invalid c0: {e}")))?);
    let (radius, derived) = match (args.radius, args.a, args.b, args.m) {
        (Some(radius), None, None, None) => (radius, false),
        (None, Some(a), Some(b), Some(m)) => (existence_radius(a, b, m)?, true),
        _ => return Err(CliError::user("give either --A or all of --a, --b, --M")),
    };
    let params = ContractionParams {
        lipschitz: args.lipschitz,
        weight: args.weight,
        radius,
        c0,
    };
    let bound = contraction_constant(&params)?;
    let verdict = if bound.contracts { "yes" } else { "no" };
    let text = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&serde_json::json!({
                "A": radius,
                "A_derived": derived,
                "k": bound.k,
                "contraction": bound.contracts,
            }))
            .expect("bound serializes");
            s.push('\n');
            s
        }
        Format::Csv => format!("A,k,contraction\n{radius},{:.17e},{verdict}\n", bound.k),
        Format::Text => {
            let mut s = String::new();
            if derived {
                s.push_str(&format!("A = {radius}\n"));
            }
            s.push_str(&format!("k = {:.6}\ncontraction: {verdict}\n", bound.k));
            s
        }
    };
    emit_to(None, &text, stdout)
}

/// Reads `t,value` rows; a header line is optional.
pub fn parse_reference_csv(text: &str) -> crate::Result<Vec<(f64, f64)>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let bad = || Error::Validation(format!("reference line {}: expected \"t,value\"", i + 1));
        let (t, v) = line.split_once(',').ok_or_else(bad)?;
        match (t.trim().parse::<f64>(), v.trim().parse::<f64>()) {
            (Ok(t), Ok(v)) if t.is_finite() && v.is_finite() => rows.push((t, v)),
            _ if i == 0 => continue,
            _ => return Err(bad()),
        }
    }
    if rows.is_empty() {
        return Err(Error::Validation("reference file has no samples".into()));
    }
    Ok(rows)
}

pub fn cmd_compare(args: &CompareArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let series = solve_from(&args.solver)?;
    let text = std::fs::read_to_string(&args.reference)
        .map_err(|e| CliError::user(format!("cannot read {}: {e}", args.reference.display())))?;
    let reference = parse_reference_csv(&text)?;
    let errors = compare_reference(&series, &reference);
    let text = match args.output.format {
        Format::Text => {
            let mut s = String::from("m\tmax |x_m - reference|\n");
            for (m, e) in errors.iter().enumerate() {
                s.push_str(&format!("{m}\t{}\n", diagnostics::format_sci(*e, 6)));
            }
            s
        }
        Format::Csv => {
            let mut s = String::from("order,max_abs_error\n");
            for (m, e) in errors.iter().enumerate() {
                s.push_str(&format!("{m},{e:.16e}\n"));
            }
            s
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&errors).expect("floats serialize");
            s.push('\n');
            s
        }
    };
    emit(&args.output, &text, stdout)
}

/// Default integration interval, `[-1, 1]`.
pub fn default_omega() -> Interval {
    Interval::new(int(-1), int(1)).expect("-1 < 1")
}
