//! Command-line front end: reads a JSON problem file, runs one check and
//! reports the result with an exit code (0 pass, 1 verification failure,
//! 2 input error).

pub mod commands;
pub mod problem;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use plectic::properties::Outcome;
use plectic::quantize::Scale;
use plectic::selftest::{self, DEFAULT_SEED};

use commands::Options;
use problem::{is_input_error, Problem};
use report::Report;

#[derive(Debug, Parser)]
#[command(name = "plectic", version, about = "Exact checks for observable algebras on n-plectic charts")]
pub struct Cli {
    /// Problem file (JSON, "schema": 1).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Print term tables and per-case details.
    #[arg(long, global = true)]
    pub verbose: bool,
    /// Also write the report as JSON to this path.
    #[arg(long, global = true)]
    pub json_out: Option<PathBuf>,
    /// Evaluate every term of the Jacobi sum.
    #[arg(long, global = true)]
    pub paranoid: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Homotopy Jacobi identity of order m on the listed arguments.
    Jacobi {
        #[arg(long)]
        m: Option<usize>,
    },
    /// Graded skew-symmetry of l_k on the listed arguments.
    Skew,
    /// Both sides of the contracted-wedge identity for m fields.
    Lemma31 {
        #[arg(long)]
        m: Option<usize>,
    },
    /// Commutation and closedness of contracted wedges of vector fields.
    Heisenberg,
    /// Canonical Hamiltonian forms of the listed fields.
    SolveHam,
    /// Face maps of the listed observable simplices.
    Face,
    /// Face-face identities of the listed observable simplices.
    FacesCheck,
    /// Fills the horn.
    HornFill,
    /// Betti numbers and torsion of the complex.
    Homology,
    /// The adiabatic cochain on the top stratum.
    Adiabatic,
    /// Exact integrals of forms over simplices.
    Integrate,
    /// Stokes' theorem on each (form, simplex) pair.
    Stokes,
    /// Integrality of the scaled ω over each cycle.
    Prequantum {
        /// `r`, `rx2pi` or `rx2pi+s`.
        #[arg(long)]
        scale: Option<String>,
    },
    /// Alternating product of gerbe cocycles on tetrahedra.
    GerbeAssoc {
        #[arg(long)]
        scale: Option<String>,
    },
    /// Finite inner product of two state cochains.
    InnerProduct {
        #[arg(long)]
        kernel_scale: Option<String>,
    },
    /// Runs the built-in randomized property suite.
    Selftest,
}

/// A finished run: the report (absent on input errors), rendered text and exit code.
pub struct Run {
    pub report: Option<Report>,
    pub text: String,
    pub code: i32,
}

pub const MAX_DEGREE_VAR: &str = "PLECTIC_MAX_DEGREE";

pub fn run(cli: &Cli) -> Run {
    match dispatch(cli) {
        Ok(report) => {
            let code = if report.passed { 0 } else { 1 };
            let text = report.render();
            if let Some(path) = &cli.json_out {
                let body = serde_json::to_string_pretty(&report.to_json()).unwrap_or_default();
                if let Err(e) = std::fs::write(path, body + "\n") {
                    return Run { report: Some(report), text: format!("{text}error: cannot write {}: {e}\n", path.display()), code: 2 };
                }
            }
            Run { report: Some(report), text, code }
        }
        Err(e) => Run { report: None, text: format!("error: {e}\n"), code: e.code() },
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: invalid JSON: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Core(#[from] plectic::Error),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Core(e) if !is_input_error(e) => 1,
            _ => 2,
        }
    }
}

fn load(path: &PathBuf) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.display().to_string(), source })
}

fn parse_scale(s: &Option<String>) -> Result<Option<Scale>, CliError> {
    s.as_deref().map(Scale::parse).transpose().map_err(CliError::from)
}

fn max_degree() -> Result<Option<u32>, CliError> {
    match std::env::var(MAX_DEGREE_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("{MAX_DEGREE_VAR}={v:?} is not a nonnegative integer"))),
        Err(_) => Ok(None),
    }
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let opts = Options { verbose: cli.verbose, paranoid: cli.paranoid };
    let value = cli.input.as_ref().map(load).transpose()?;
    if let Command::Selftest = cli.command {
        let problem = value.as_ref().map(Problem::new).transpose()?;
        return selftest_cmd(cli.seed.unwrap_or(DEFAULT_SEED), max_degree()?, problem.as_ref(), &opts);
    }
    let value = value.ok_or_else(|| CliError::Usage("this command needs --input <path>".into()))?;
    let p = Problem::new(&value)?;
    Ok(match &cli.command {
        Command::Jacobi { m } => commands::jacobi(&p, *m, &opts)?,
        Command::Skew => commands::skew(&p, &opts)?,
        Command::Lemma31 { m } => commands::lemma31(&p, *m, &opts)?,
        Command::Heisenberg => commands::heisenberg(&p, &opts)?,
        Command::SolveHam => commands::solve_ham(&p, &opts)?,
        Command::Face => commands::face(&p, &opts)?,
        Command::FacesCheck => commands::faces_check(&p, &opts)?,
        Command::HornFill => commands::horn_fill_cmd(&p, &opts)?,
        Command::Homology => commands::homology_cmd(&p, &opts)?,
        Command::Adiabatic => commands::adiabatic(&p, &opts)?,
        Command::Integrate => commands::integrate_cmd(&p, &opts)?,
        Command::Stokes => commands::stokes(&p, &opts)?,
        Command::Prequantum { scale } => commands::prequantum(&p, parse_scale(scale)?.as_ref(), &opts)?,
        Command::GerbeAssoc { scale } => commands::gerbe_assoc(&p, parse_scale(scale)?.as_ref(), &opts)?,
        Command::InnerProduct { kernel_scale } => commands::inner_product_cmd(&p, parse_scale(kernel_scale)?.as_ref(), &opts)?,
        Command::Selftest => unreachable!("handled above"),
    })
}

fn outcome_report(suite: &str, chart: Option<usize>, o: &Outcome) -> Report {
    let chart = chart.map_or("Q^3/Q^4".to_string(), |c| format!("Q^{c}"));
    let mut r = Report::new(&format!("{suite} [{chart}] {}", o.name));
    r.value("cases", o.cases);
    if let Some((case, w)) = &o.failure {
        r.fail(json!({"case": case, "witness": w}));
    }
    r
}

/// The property suite, then every check whose data the problem file carries.
fn selftest_cmd(seed: u64, max_degree: Option<u32>, problem: Option<&Problem>, opts: &Options) -> Result<Report, CliError> {
    let mut r = Report::new("selftest");
    r.value("seed", seed);
    if let Some(d) = max_degree {
        r.value("max_degree", d);
    }
    let mut total = 0;
    for suite in selftest::suites() {
        selftest::run_suite(&suite, seed, max_degree, |o| {
            total += o.outcome.cases;
            r.child(outcome_report(o.suite, o.chart, &o.outcome));
        });
    }
    r.value("cases", total);
    if let Some(p) = problem {
        let mut ran = Vec::new();
        let mut check = |name: &str, rep: plectic::Result<Report>| -> Result<(), CliError> {
            ran.push(name.to_string());
            r.child(rep?);
            Ok(())
        };
        if p.has("plectic") {
            if p.has("args") {
                let k = p.args()?.len();
                for m in 1..=k {
                    check("jacobi", commands::jacobi(p, Some(m), opts))?;
                }
                check("skew", commands::skew(p, opts))?;
            }
            if p.has("fields") {
                check("solve-ham", commands::solve_ham(p, opts))?;
                if p.fields()?.len() >= 2 {
                    check("lemma31", commands::lemma31(p, None, opts))?;
                }
                if p.fields()?.iter().all(|v| v.degree() == 1) {
                    check("heisenberg", commands::heisenberg(p, opts))?;
                }
            }
            if p.has("simplices") {
                check("face", commands::face(p, opts))?;
                check("faces-check", commands::faces_check(p, opts))?;
            }
            if p.has("horn") {
                check("horn-fill", commands::horn_fill_cmd(p, opts))?;
            }
            if p.has("complex") {
                check("homology", commands::homology_cmd(p, opts))?;
            }
            if p.has("integrals") {
                check("integrate", commands::integrate_cmd(p, opts))?;
            }
            if p.has("stokes") {
                check("stokes", commands::stokes(p, opts))?;
            }
            if p.has("cycles") && p.param("scale")?.is_some() {
                check("prequantum", commands::prequantum(p, None, opts))?;
            }
            if p.has("tetrahedra") && p.param("scale")?.is_some() {
                check("gerbe-assoc", commands::gerbe_assoc(p, None, opts))?;
            }
        }
        r.value("instance_checks", ran);
    }
    Ok(r)
}
