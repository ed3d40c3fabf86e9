//! The `bohr` command line: radii, verification sweeps, sharpness witnesses,
//! parameter sweeps and radius tables.
//!
//! Exit codes: `0` success, `1` usage error, `2` failed verification (a
//! violation, a missing witness or an uncertified root).

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{self, AuxMode, DEFAULT_SEED};
use crate::extremal::{self, ExtremalError, ExtremalParams, Violation};
use crate::mvseries::{MultiIndex, TruncatedSeries};
use crate::radii::{RadiusError, RadiusProblem, RadiusResult, Theorem, RESIDUAL_TOLERANCE};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

/// Significant digits in CSV and text output.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Violations listed individually in a verify report.
const LISTED_VIOLATIONS: usize = 20;

#[derive(Debug, Parser)]
#[command(name = "bohr", version, about = "Multivariable Bohr-type radii and their certification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Seed for randomized checks.
    #[arg(long, global = true, env = "BOHR_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certified radius for one problem.
    Radius {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Below-radius safety and majorant-dominance sweep.
    Verify {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Uniform points in the a-grid (a log tail toward 1 is always added).
        #[arg(long, default_value_t = 200)]
        a_grid: usize,
        /// Points in the rho-grid on [0, rho_root].
        #[arg(long, default_value_t = 200)]
        rho_grid: usize,
        /// Relative inflation of the swept rho-range beyond the radius.
        #[arg(long, default_value_t = 0.0)]
        inflate: f64,
        /// Also run the auxiliary lemma checks.
        #[arg(long)]
        lemmas: bool,
    },
    /// Extremal witness just beyond the radius.
    Sharpness {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Relative step beyond the radius in rho.
        #[arg(long, default_value_t = 1e-3)]
        delta: f64,
    },
    /// Radius as one parameter varies.
    Sweep {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, value_enum)]
        param: SweepParam,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        /// Number of values, endpoints included; integer parameters default to every integer.
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Radius table over (n, m) pairs and parameter values.
    Table {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        /// Comma-separated n values, crossed with --m-values.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        n_values: Vec<u32>,
        /// Comma-separated m values.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        m_values: Vec<u32>,
        /// Explicit pairs such as "1:1,2:1"; replaces the cross product.
        #[arg(long)]
        pairs: Option<String>,
        /// Comma-separated t (convex) or lambda values.
        #[arg(long, value_delimiter = ',', required = true)]
        params: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    #[arg(long, value_enum)]
    pub theorem: TheoremArg,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Convex weight (convex only).
    #[arg(long)]
    pub t: Option<f64>,
    /// Coefficient-sum weight (deriv and sq-deriv).
    #[arg(long)]
    pub lambda: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    Convex,
    Deriv,
    SqDeriv,
}

impl From<TheoremArg> for Theorem {
    fn from(arg: TheoremArg) -> Self {
        match arg {
            TheoremArg::Convex => Theorem::Convex,
            TheoremArg::Deriv => Theorem::Deriv,
            TheoremArg::SqDeriv => Theorem::SqDeriv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    T,
    Lambda,
    N,
    M,
}

/// A failed command, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn violation(message: impl Into<String>) -> Self {
        Failure { code: EXIT_VIOLATION, message: message.into() }
    }
}

impl From<RadiusError> for Failure {
    fn from(e: RadiusError) -> Self {
        match e {
            RadiusError::InvalidParameter { .. } => Failure::usage(e.to_string()),
            _ => Failure::violation(e.to_string()),
        }
    }
}

impl From<ExtremalError> for Failure {
    fn from(e: ExtremalError) -> Self {
        match e {
            ExtremalError::InvalidParameter { .. } => Failure::usage(e.to_string()),
            ExtremalError::Radius(inner) => inner.into(),
            _ => Failure::violation(e.to_string()),
        }
    }
}

impl From<bounds::BoundsError> for Failure {
    fn from(e: bounds::BoundsError) -> Self {
        Failure::violation(e.to_string())
    }
}

impl From<crate::mvseries::SeriesError> for Failure {
    fn from(e: crate::mvseries::SeriesError) -> Self {
        Failure::violation(e.to_string())
    }
}

/// Formats `x` with [`SIGNIFICANT_DIGITS`] significant digits, `%g` style:
/// trailing zeros dropped, exponent form outside `[1e-5, 1e12)`.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= SIGNIFICANT_DIGITS as i32 {
        let mantissa = trim_zeros(mantissa);
        return format!("{mantissa}e{exp}");
    }
    let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn build_problem(args: &ProblemArgs) -> Result<RadiusProblem, Failure> {
    let theorem = Theorem::from(args.theorem);
    let param = match (theorem, args.t, args.lambda) {
        (Theorem::Convex, Some(t), None) => t,
        (Theorem::Convex, _, _) => return Err(Failure::usage("convex takes --t and no --lambda")),
        (_, None, Some(lambda)) => lambda,
        (_, _, _) => return Err(Failure::usage(format!("{theorem} takes --lambda and no --t"))),
    };
    Ok(RadiusProblem::from_parts(theorem, args.n, args.m, param)?)
}

fn certified(problem: &RadiusProblem) -> Result<RadiusResult, Failure> {
    let result = problem.solve()?;
    if result.residual.is_nan() || result.residual > RESIDUAL_TOLERANCE {
        return Err(Failure::violation(format!(
            "residual {:e} exceeds {RESIDUAL_TOLERANCE:e}",
            result.residual
        )));
    }
    Ok(result)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn radius_csv_header() -> &'static str {
    "radius,rho_root,residual,branch,bracket_lo,bracket_hi\n"
}

fn cmd_radius(args: &ProblemArgs, format: Format) -> Result<String, Failure> {
    let result = certified(&build_problem(args)?)?;
    Ok(match format {
        Format::Json => to_json(&result),
        Format::Csv => format!(
            "{}{},{},{},{},{},{}\n",
            radius_csv_header(),
            format_sig(result.radius),
            format_sig(result.rho_root),
            format_sig(result.residual),
            branch_name(&result),
            format_sig(result.bracket.0),
            format_sig(result.bracket.1),
        ),
        Format::Text => format!(
            "radius    {}\nrho_root  {}\nresidual  {}\nbranch    {}\nbracket   [{}, {}]\n",
            format_sig(result.radius),
            format_sig(result.rho_root),
            format_sig(result.residual),
            branch_name(&result),
            format_sig(result.bracket.0),
            format_sig(result.bracket.1),
        ),
    })
}

fn branch_name(result: &RadiusResult) -> String {
    serde_json::to_value(result.branch)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

#[derive(Serialize)]
struct ProblemEcho {
    theorem: Theorem,
    n: u32,
    m: u32,
    param: f64,
}

impl From<&RadiusProblem> for ProblemEcho {
    fn from(p: &RadiusProblem) -> Self {
        ProblemEcho { theorem: p.theorem(), n: p.n(), m: p.m(), param: p.param() }
    }
}

#[derive(Serialize)]
struct Point {
    a: f64,
    rho: f64,
}

#[derive(Serialize)]
struct LemmaReport {
    seed: u64,
    phi_failures: usize,
    psi_failures: usize,
    coefficient_violations: usize,
    zero_multiplicity_ratio: f64,
    passed: bool,
}

#[derive(Serialize)]
struct VerifyReport {
    problem: ProblemEcho,
    radius: f64,
    rho_root: f64,
    rho_limit: f64,
    inflate: f64,
    points: usize,
    max_value: f64,
    max_at: Point,
    violation_count: usize,
    violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lemmas: Option<LemmaReport>,
    passed: bool,
}

/// `z_1 z_2 (a − z_1)/(1 − a z_1)`, bounded by one on the bidisc with a
/// zero of order two.
fn order_two_sample(a: f64, max_degree: u32) -> Result<TruncatedSeries, Failure> {
    let mobius = extremal::extremal_series(&ExtremalParams::new(a, 1, 1)?, max_degree - 2)?;
    let terms = mobius.terms().map(|(alpha, c)| {
        let k = alpha.exponents()[0];
        (MultiIndex::new(vec![k + 1, 1]), *c)
    });
    Ok(TruncatedSeries::from_terms(2, max_degree, terms)?)
}

fn lemma_report(seed: u64) -> Result<LemmaReport, Failure> {
    let phi_failures = bounds::phi_psi_grid_failures(AuxMode::Phi, 100).len();
    let psi_failures = bounds::phi_psi_grid_failures(AuxMode::Psi, 100).len();
    let mut coefficient_violations = 0;
    for i in 0..50 {
        let a = f64::from(i) / 50.0;
        let f = extremal::extremal_series(&ExtremalParams::new(a, 1, 1)?, 30)?;
        coefficient_violations += bounds::coefficient_bound_check(&f).violations.len();
    }
    let sample = order_two_sample(0.3, 40)?;
    let zero_multiplicity_ratio = bounds::zero_multiplicity_bound_check(&sample, 2, 10_000, seed)?;
    let passed = phi_failures == 0
        && psi_failures == 0
        && coefficient_violations == 0
        && zero_multiplicity_ratio <= 1.0 + 1e-9;
    Ok(LemmaReport {
        seed,
        phi_failures,
        psi_failures,
        coefficient_violations,
        zero_multiplicity_ratio,
        passed,
    })
}

fn cmd_verify(
    args: &ProblemArgs,
    a_grid: usize,
    rho_grid: usize,
    inflate: f64,
    lemmas: bool,
    seed: u64,
) -> Result<(String, bool), Failure> {
    if a_grid < 10 || rho_grid < 10 {
        return Err(Failure::usage("grid sizes must be at least 10"));
    }
    if inflate.is_nan() || inflate < 0.0 {
        return Err(Failure::usage("--inflate must be non-negative"));
    }
    let problem = build_problem(args)?;
    let result = certified(&problem)?;
    let sweep = extremal::below_radius_sweep(&problem, a_grid, rho_grid, inflate)?;
    let lemmas = if lemmas { Some(lemma_report(seed)?) } else { None };
    let passed = sweep.is_clean() && lemmas.as_ref().is_none_or(|l| l.passed);
    let report = VerifyReport {
        problem: ProblemEcho::from(&problem),
        radius: result.radius,
        rho_root: result.rho_root,
        rho_limit: sweep.rho_limit,
        inflate,
        points: sweep.points,
        max_value: sweep.max_value,
        max_at: Point { a: sweep.max_at.0, rho: sweep.max_at.1 },
        violation_count: sweep.violations.len(),
        violations: sweep.violations.into_iter().take(LISTED_VIOLATIONS).collect(),
        lemmas,
        passed,
    };
    Ok((to_json(&report), passed))
}

#[derive(Serialize)]
struct SharpnessReport {
    problem: ProblemEcho,
    radius: f64,
    rho_root: f64,
    delta: f64,
    rho: f64,
    a: f64,
    value: f64,
}

fn cmd_sharpness(args: &ProblemArgs, delta: f64) -> Result<String, Failure> {
    let problem = build_problem(args)?;
    let result = certified(&problem)?;
    let witness = extremal::sharpness_witness(&problem, delta)?;
    Ok(to_json(&SharpnessReport {
        problem: ProblemEcho::from(&problem),
        radius: result.radius,
        rho_root: result.rho_root,
        delta,
        rho: witness.rho,
        a: witness.a,
        value: witness.value,
    }))
}

#[derive(Serialize)]
struct SweepRow {
    param: f64,
    radius: f64,
    rho_root: f64,
    residual: f64,
}

fn sweep_values(param: SweepParam, from: f64, to: f64, steps: Option<usize>) -> Result<Vec<f64>, Failure> {
    if from.is_nan() || to.is_nan() || from >= to {
        return Err(Failure::usage("--from must be below --to"));
    }
    match param {
        SweepParam::T | SweepParam::Lambda => {
            let steps = steps.ok_or_else(|| Failure::usage("--steps is required for t and lambda"))?;
            if steps < 2 {
                return Err(Failure::usage("--steps must be at least 2"));
            }
            let span = to - from;
            Ok((0..steps)
                .map(|i| if i + 1 == steps { to } else { from + span * i as f64 / (steps - 1) as f64 })
                .collect())
        }
        SweepParam::N | SweepParam::M => {
            if from.fract() != 0.0 || to.fract() != 0.0 || from < 1.0 {
                return Err(Failure::usage("n and m sweeps take positive integer bounds"));
            }
            let values: Vec<f64> = (from as u32..=to as u32).map(f64::from).collect();
            match steps {
                Some(s) if s != values.len() => Err(Failure::usage(format!(
                    "integer sweep from {from} to {to} has {} values, not {s}",
                    values.len()
                ))),
                _ => Ok(values),
            }
        }
    }
}

fn cmd_sweep(
    args: &ProblemArgs,
    param: SweepParam,
    from: f64,
    to: f64,
    steps: Option<usize>,
    format: Format,
) -> Result<String, Failure> {
    let theorem = Theorem::from(args.theorem);
    match (param, theorem) {
        (SweepParam::T, Theorem::Convex) | (SweepParam::N | SweepParam::M, _) => {}
        (SweepParam::Lambda, Theorem::Deriv | Theorem::SqDeriv) => {}
        _ => return Err(Failure::usage(format!("{theorem} cannot sweep that parameter"))),
    }
    let fixed = match param {
        SweepParam::T | SweepParam::Lambda => None,
        _ => Some(build_problem(args)?.param()),
    };
    let mut rows = Vec::new();
    for value in sweep_values(param, from, to, steps)? {
        let (n, m, p) = match param {
            SweepParam::N => (value as u32, args.m, fixed.unwrap_or_default()),
            SweepParam::M => (args.n, value as u32, fixed.unwrap_or_default()),
            _ => (args.n, args.m, value),
        };
        let result = certified(&RadiusProblem::from_parts(theorem, n, m, p)?)?;
        rows.push(SweepRow {
            param: value,
            radius: result.radius,
            rho_root: result.rho_root,
            residual: result.residual,
        });
    }
    Ok(match format {
        Format::Json => to_json(&rows),
        Format::Csv | Format::Text => {
            let mut s = String::from("param,radius,rho_root,residual\n");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    format_sig(r.param),
                    format_sig(r.radius),
                    format_sig(r.rho_root),
                    format_sig(r.residual)
                );
            }
            s
        }
    })
}

#[derive(Serialize)]
struct TableRow {
    n: u32,
    m: u32,
    param: f64,
    radius: f64,
    rho_root: f64,
    residual: f64,
}

fn parse_pairs(text: &str) -> Result<Vec<(u32, u32)>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (n, m) = p
                .split_once(':')
                .ok_or_else(|| Failure::usage(format!("pair {p:?} is not n:m")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| Failure::usage(format!("pair {p:?} is not n:m")))
            };
            Ok((parse(n)?, parse(m)?))
        })
        .collect()
}

fn cmd_table(
    theorem: TheoremArg,
    n_values: &[u32],
    m_values: &[u32],
    pairs: Option<&str>,
    params: &[f64],
    format: Format,
) -> Result<String, Failure> {
    let theorem = Theorem::from(theorem);
    let pairs = match pairs {
        Some(text) => parse_pairs(text)?,
        None => n_values
            .iter()
            .flat_map(|&n| m_values.iter().map(move |&m| (n, m)))
            .collect(),
    };
    let mut rows = Vec::new();
    for &(n, m) in &pairs {
        for &param in params {
            let result = certified(&RadiusProblem::from_parts(theorem, n, m, param)?)?;
            rows.push(TableRow {
                n,
                m,
                param,
                radius: result.radius,
                rho_root: result.rho_root,
                residual: result.residual,
            });
        }
    }
    Ok(match format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut s = String::from("n,m,param,radius,rho_root,residual\n");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    r.n,
                    r.m,
                    format_sig(r.param),
                    format_sig(r.radius),
                    format_sig(r.rho_root),
                    format_sig(r.residual)
                );
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "{:>4} {:>4} {:>14} {:>16} {:>16} {:>12}\n",
                "n", "m", "param", "radius", "rho_root", "residual"
            );
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:>4} {:>4} {:>14} {:>16} {:>16} {:>12}",
                    r.n,
                    r.m,
                    format_sig(r.param),
                    format_sig(r.radius),
                    format_sig(r.rho_root),
                    format!("{:.1e}", r.residual)
                );
            }
            s
        }
    })
}

fn execute(cli: &Cli) -> Result<(String, i32), Failure> {
    match &cli.command {
        Command::Radius { problem, format } => Ok((cmd_radius(problem, *format)?, EXIT_OK)),
        Command::Verify { problem, a_grid, rho_grid, inflate, lemmas } => {
            let (text, passed) = cmd_verify(problem, *a_grid, *rho_grid, *inflate, *lemmas, cli.seed)?;
            Ok((text, if passed { EXIT_OK } else { EXIT_VIOLATION }))
        }
        Command::Sharpness { problem, delta } => Ok((cmd_sharpness(problem, *delta)?, EXIT_OK)),
        Command::Sweep { problem, param, from, to, steps, format } => {
            Ok((cmd_sweep(problem, *param, *from, *to, *steps, *format)?, EXIT_OK))
        }
        Command::Table { theorem, n_values, m_values, pairs, params, format } => Ok((
            cmd_table(*theorem, n_values, m_values, pairs.as_deref(), params, *format)?,
            EXIT_OK,
        )),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code. Results go to `stdout` or `--out`; diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let rendered = e.render().to_string();
            return if informational {
                let _ = stdout.write_all(rendered.as_bytes());
                EXIT_OK
            } else {
                let _ = stderr.write_all(rendered.as_bytes());
                EXIT_USAGE
            };
        }
    };
    let (text, code) = match execute(&cli) {
        Ok(outcome) => outcome,
        Err(failure) => {
            let _ = writeln!(stderr, "error: {}", failure.message);
            return failure.code;
        }
    };
    let written = match &cli.out {
        Some(path) => File::create(path).and_then(|mut f| f.write_all(text.as_bytes())),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_USAGE;
    }
    if code == EXIT_VIOLATION {
        let _ = writeln!(stderr, "verification failed");
    }
    code
}

/// Entry point for the binary.
pub fn main_with_io() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
