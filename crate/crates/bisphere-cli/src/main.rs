//! `bisphere` — heat loss of two constant-temperature spheres in an
//! infinite medium, as a function of their separation.
//!
//! Subcommands: single-point computation, distance scans with CSV/SVG
//! output, the critical radius ratio, the minimizing distance of the larger
//! sphere's heat loss, and the built-in verification suite.
//!
//! Exit codes: 0 success, 1 computational failure, 2 usage error. All
//! diagnostics go to standard error; results go to standard output with
//! locale-independent formatting.

mod format;
mod verify;

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bisphere::analysis::{self, ScanResult};
use bisphere::heatloss::{self, Method, SeriesOptions};
use bisphere::{svg, SphereParams};

use format::format_sig;

#[derive(Parser)]
#[command(
    name = "bisphere",
    version,
    about = "Heat loss of two constant-temperature spheres vs. separation",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute Q1, Q2 and the total Q at a single separation
    Compute(ComputeArgs),
    /// Tabulate Q1, Q2, Q over a range of separations (CSV, optional SVG)
    Scan(ScanArgs),
    /// Radius ratio above which the larger sphere's heat loss dips with distance
    CriticalRatio(CriticalRatioArgs),
    /// Separation minimizing the larger sphere's heat loss
    MinDistance(MinDistanceArgs),
    /// Run the built-in verification checks
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Direct,
    Em,
    Auto,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Direct => Method::Direct,
            MethodArg::Em => Method::EulerMaclaurin,
            MethodArg::Auto => Method::Auto,
        }
    }
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct ComputeArgs {
    /// Radius of sphere 1
    #[arg(long)]
    r1: f64,
    /// Radius of sphere 2
    #[arg(long)]
    r2: f64,
    /// Surface-to-surface gap (0 allowed when t1 = t2)
    #[arg(long)]
    d: f64,
    /// Temperature of sphere 1
    #[arg(long, default_value_t = 1.0)]
    t1: f64,
    /// Temperature of sphere 2
    #[arg(long, default_value_t = 1.0)]
    t2: f64,
    /// Series evaluation route
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    /// Relative series tolerance
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Output significant digits (default 12; env BISPHERE_PRECISION overrides)
    #[arg(long)]
    precision: Option<usize>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct ScanArgs {
    #[arg(long)]
    r1: f64,
    #[arg(long)]
    r2: f64,
    /// Smallest gap in the grid (0 allowed for linear spacing when t1 = t2)
    #[arg(long)]
    d_min: f64,
    /// Largest gap in the grid
    #[arg(long)]
    d_max: f64,
    /// Number of grid points
    #[arg(long)]
    steps: usize,
    /// Logarithmic gap spacing (requires --d-min > 0)
    #[arg(long)]
    log: bool,
    #[arg(long, default_value_t = 1.0)]
    t1: f64,
    #[arg(long, default_value_t = 1.0)]
    t2: f64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Write the CSV here instead of standard output
    #[arg(long)]
    out: Option<String>,
    /// Also write a Q1-vs-d line chart to this SVG path
    #[arg(long)]
    svg: Option<String>,
    #[arg(long, default_value_t = 800)]
    svg_width: u32,
    #[arg(long, default_value_t = 500)]
    svg_height: u32,
    #[arg(long)]
    precision: Option<usize>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct CriticalRatioArgs {
    /// Bisection interval tolerance
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long)]
    precision: Option<usize>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct MinDistanceArgs {
    #[arg(long)]
    r1: f64,
    #[arg(long)]
    r2: f64,
    /// Common surface temperature
    #[arg(long, default_value_t = 1.0)]
    t0: f64,
    /// Search interval tolerance, in units of r1
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long)]
    precision: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    All,
    Identity,
    Oracle,
    Lemma,
    Em,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct VerifyArgs {
    /// Which checks to run
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
}

const EXIT_COMPUTE: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse(); // clap exits with code 2 on usage errors
    let outcome = match cli.command {
        Command::Compute(a) => run_compute(&a),
        Command::Scan(a) => run_scan(&a),
        Command::CriticalRatio(a) => run_critical_ratio(&a),
        Command::MinDistance(a) => run_min_distance(&a),
        Command::Verify(a) => run_verify(&a),
    };
    match outcome {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_COMPUTE)
        }
    }
}

enum CliError {
    Usage(String),
    Compute(String),
}

impl From<bisphere::Error> for CliError {
    fn from(e: bisphere::Error) -> Self {
        CliError::Compute(e.to_string())
    }
}

type CliResult = Result<ExitCode, CliError>;

/// Flag-level validation failures are usage errors (exit 2), as opposed to
/// failures of the computation itself (exit 1).
fn validate_params(r1: f64, r2: f64, d: f64, t1: f64, t2: f64) -> Result<SphereParams, CliError> {
    SphereParams::new(r1, r2, d, t1, t2).map_err(|e| CliError::Usage(e.to_string()))
}

fn validate_tol(tol: f64) -> Result<(), CliError> {
    if tol > 0.0 && tol <= 1e-2 {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "--tol must lie in (0, 1e-2], got {tol}"
        )))
    }
}

fn effective_precision(flag: Option<usize>) -> Result<usize, CliError> {
    let p = match flag {
        Some(p) => p,
        None => match std::env::var("BISPHERE_PRECISION") {
            Ok(s) => s
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("BISPHERE_PRECISION must be an integer, got {s:?}")))?,
            Err(_) => 12,
        },
    };
    if (1..=17).contains(&p) {
        Ok(p)
    } else {
        Err(CliError::Usage(format!(
            "precision must lie in [1, 17], got {p}"
        )))
    }
}

fn run_compute(a: &ComputeArgs) -> CliResult {
    let p = validate_params(a.r1, a.r2, a.d, a.t1, a.t2)?;
    validate_tol(a.tol)?;
    let digits = effective_precision(a.precision)?;
    let opts = SeriesOptions {
        tol: a.tol,
        method: a.method.into(),
        ..SeriesOptions::default()
    };
    let r = heatloss::heat_loss(&p, &opts)?;
    println!(
        "Q1={} Q2={} Q={} err<={} method={} terms={}",
        format_sig(r.q1, digits),
        format_sig(r.q2, digits),
        format_sig(r.q_total, digits),
        format_sig(r.err_estimate, 3),
        r.method_used.as_str(),
        r.terms_used
    );
    Ok(ExitCode::SUCCESS)
}

fn render_csv(result: &ScanResult, digits: usize) -> String {
    let mut csv = String::from("d,q1,q2,q_total\n");
    for row in &result.rows {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            format_sig(row.d, digits),
            format_sig(row.q1, digits),
            format_sig(row.q2, digits),
            format_sig(row.q_total, digits)
        ));
    }
    csv
}

fn run_scan(a: &ScanArgs) -> CliResult {
    // d field of the params is overwritten per grid point; validate with d_min
    // (d_min = 0 is legal for linear grids).
    let p = validate_params(a.r1, a.r2, a.d_min.max(0.0), a.t1, a.t2)?;
    validate_tol(a.tol)?;
    if a.steps < 2 {
        return Err(CliError::Usage(format!(
            "--steps must be at least 2, got {}",
            a.steps
        )));
    }
    if !(a.d_min >= 0.0 && a.d_min < a.d_max && a.d_max.is_finite()) {
        return Err(CliError::Usage(format!(
            "need 0 <= d-min < d-max, got [{}, {}]",
            a.d_min, a.d_max
        )));
    }
    if a.log && a.d_min <= 0.0 {
        return Err(CliError::Usage("--log requires --d-min > 0".into()));
    }
    let digits = effective_precision(a.precision)?;

    let opts = SeriesOptions {
        tol: a.tol,
        ..SeriesOptions::default()
    };
    // Rows are assembled fully before anything is written, so a failing row
    // leaves no partial output behind.
    let result = analysis::scan(&p, a.d_min, a.d_max, a.steps, a.log, &opts)?;
    let csv = render_csv(&result, digits);

    match &a.out {
        Some(path) => fs::write(path, &csv)
            .map_err(|e| CliError::Compute(format!("writing {path}: {e}")))?,
        None => print!("{csv}"),
    }
    if let Some(path) = &a.svg {
        let points: Vec<(f64, f64)> = result.rows.iter().map(|r| (r.d, r.q1)).collect();
        let chart = svg::line_chart(&points, a.svg_width, a.svg_height, "d", "Q1");
        fs::write(path, chart).map_err(|e| CliError::Compute(format!("writing {path}: {e}")))?;
    }

    let flags = result.monotone_flags;
    let (min_d, min_q1) = result.minimum.expect("non-empty scan has a minimum");
    eprintln!(
        "summary: q1={} q2={} q_total={} min_q1={} at_d={}",
        flags.q1.as_str(),
        flags.q2.as_str(),
        flags.q_total.as_str(),
        format_sig(min_q1, digits),
        format_sig(min_d, digits)
    );
    Ok(ExitCode::SUCCESS)
}

fn run_critical_ratio(a: &CriticalRatioArgs) -> CliResult {
    validate_tol(a.tol)?;
    let digits = effective_precision(a.precision)?;
    let l = analysis::critical_ratio(a.tol)?;
    println!("l={}", format_sig(l, digits));
    Ok(ExitCode::SUCCESS)
}

fn run_min_distance(a: &MinDistanceArgs) -> CliResult {
    // reuse parameter validation with a dummy positive gap
    validate_params(a.r1, a.r2, 1.0, a.t0, a.t0)?;
    validate_tol(a.tol)?;
    let digits = effective_precision(a.precision)?;
    let m = analysis::min_distance(a.r1, a.r2, a.t0, a.tol)?;
    if m.boundary {
        println!(
            "d_star={} q1_min={} boundary=true",
            format_sig(m.d_star, digits),
            format_sig(m.q1_star, digits)
        );
    } else {
        println!(
            "d_star={} q1_min={}",
            format_sig(m.d_star, digits),
            format_sig(m.q1_star, digits)
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(a: &VerifyArgs) -> CliResult {
    let selection = match a.suite {
        Suite::All => verify::Selection::All,
        Suite::Identity => verify::Selection::Identity,
        Suite::Oracle => verify::Selection::Oracle,
        Suite::Lemma => verify::Selection::Lemma,
        Suite::Em => verify::Selection::Em,
    };
    let results = verify::run(selection)?;
    let all_ok = verify::render(&results, &mut std::io::stdout())
        .map_err(|e| CliError::Compute(format!("writing report: {e}")))?;
    if all_ok {
        Ok(ExitCode::SUCCESS)
    } else {
        Err(CliError::Compute("verification failed".into()))
    }
}
