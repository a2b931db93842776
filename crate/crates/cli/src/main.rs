use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use alpha_harmonic::bounds::{self, BoundId};
use alpha_harmonic::kernel::{derivative_pair_report, solve_dirichlet_report, BoundaryData, DiskPoint};
use alpha_harmonic::quadrature::QuadratureConfig;
use alpha_harmonic::specfun::{hyp2f1_with, Alpha, HypergeomParams, SeriesSettings};
use alpha_harmonic::verify::{alpha_grid, figure1_data, run_suite, Suite, TrialSpec};
use alpha_harmonic::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

mod output;

use output::{emit, Cell, Table};

const EXIT_USAGE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_NUMERIC: u8 = 3;
const EXIT_VIOLATION: u8 = 4;

/// Inconclusive trials allowed per report before the run counts as failed.
const MAX_INCONCLUSIVE_RATE: f64 = 0.01;

#[derive(Parser)]
#[command(name = "alpha-harmonic", version, about = "Alpha-harmonic functions on the unit disk", allow_negative_numbers = true)]
struct Cli {
    #[command(flatten)]
    out: OutputArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    /// Write here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate 2F1(a, b; c; x) for x in [0, 1).
    Eval2f1 {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
    },
    /// Solve the Dirichlet problem at one point and report f, f_z, f_zbar.
    Solve {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        /// JSON file {"degree": d, "coefficients": [[re, im], ...]}.
        #[arg(long)]
        boundary: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        z_re: f64,
        #[arg(long, allow_negative_numbers = true)]
        z_im: f64,
        /// Largest quadrature node count (power of two).
        #[arg(long)]
        quad_n_max: Option<usize>,
    },
    /// Evaluate one bound, or every applicable one with `--id all`.
    Bounds {
        #[arg(long, default_value = "all")]
        id: String,
        #[arg(long, allow_negative_numbers = true)]
        r: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        alpha: f64,
        /// The constant c in (0, 1] used by M1.
        #[arg(long, allow_negative_numbers = true)]
        c: Option<f64>,
    },
    /// Run a randomized verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 1e-9)]
        slack: f64,
    },
    /// Tabulate M and M2 over an alpha grid.
    Figure1 {
        #[arg(long, default_value_t = 0.99)]
        r: f64,
        #[arg(long, default_value_t = -0.95, allow_negative_numbers = true)]
        alpha_min: f64,
        #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
        alpha_max: f64,
        #[arg(long, default_value_t = 0.05)]
        step: f64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) => EXIT_DOMAIN,
            Error::BoundaryFormat(_) => EXIT_USAGE,
            _ => EXIT_NUMERIC,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: String) -> Failure {
    Failure { code: EXIT_USAGE, message }
}

/// A rendered table plus the exit code to report after writing it.
struct Outcome {
    table: Table,
    code: u8,
}

impl From<Table> for Outcome {
    fn from(table: Table) -> Self {
        Outcome { table, code: 0 }
    }
}

fn eval2f1(a: f64, b: f64, c: f64, x: f64) -> Result<Outcome, Failure> {
    let e = hyp2f1_with(HypergeomParams::new(a, b, c)?, x, &SeriesSettings::default())?;
    let mut t = Table::new(vec!["a", "b", "c", "x", "value", "terms", "transform"]);
    t.push(vec![a.into(), b.into(), c.into(), x.into(), e.value.into(), e.terms.into(), e.transform.as_str().into()]);
    Ok(t.into())
}

fn solve(alpha: f64, boundary: &PathBuf, z_re: f64, z_im: f64, n_max: Option<usize>) -> Result<Outcome, Failure> {
    let alpha = Alpha::new(alpha)?;
    let z = DiskPoint::new(z_re, z_im)?;
    let text = fs::read_to_string(boundary).map_err(|e| usage(format!("cannot read {}: {e}", boundary.display())))?;
    let fstar = BoundaryData::from_json(&text)?;
    let mut config = QuadratureConfig::default();
    if let Some(n) = n_max {
        config = QuadratureConfig::new(config.n_initial().min(n), n, config.rel_tol, config.abs_tol)?;
    }
    let f = solve_dirichlet_report(alpha, &fstar, z, &config)?;
    let d = derivative_pair_report(alpha, &fstar, z, &config)?;
    let mut t = Table::new(vec![
        "re", "im", "fz_re", "fz_im", "fzbar_re", "fzbar_im", "df_norm", "nodes", "error_estimate", "converged",
    ]);
    let p = d.value;
    t.push(vec![
        f.value.re.into(),
        f.value.im.into(),
        p.d_z.re.into(),
        p.d_z.im.into(),
        p.d_zbar.re.into(),
        p.d_zbar.im.into(),
        p.norm.into(),
        f.nodes_used.max(d.nodes_used).into(),
        f.error_estimate.max(d.error_estimate).into(),
        (f.converged && d.converged).into(),
    ]);
    let code = if f.converged && d.converged { 0 } else { EXIT_NUMERIC };
    Ok(Outcome { table: t, code })
}

fn bounds_table(id: &str, r: f64, alpha: f64, c: Option<f64>) -> Result<Outcome, Failure> {
    let alpha_v = Alpha::new(alpha)?;
    let ids: Vec<BoundId> = if id.eq_ignore_ascii_case("all") {
        BoundId::ALL
            .into_iter()
            .filter(|b| match b {
                BoundId::M1 => c.is_some(),
                BoundId::MPrime => alpha >= 0.0,
                _ => true,
            })
            .collect()
    } else {
        vec![id.parse::<BoundId>()?]
    };
    let mut t = Table::new(vec!["bound_id", "r", "alpha", "aux", "value", "scaling"]);
    for b in ids {
        let rep = bounds::evaluate(b, r, alpha_v, c)?;
        let scaling = match rep.scaling {
            bounds::Scaling::Linear => "linear",
            bounds::Scaling::SelfMap => "self_map",
        };
        let aux = if b == BoundId::M1 { rep.aux.into() } else { Cell::Empty };
        t.push(vec![b.as_str().into(), r.into(), alpha.into(), aux, rep.value.into(), scaling.into()]);
    }
    Ok(t.into())
}

fn verify(suite: &str, seed: u64, trials: usize, slack: f64) -> Result<Outcome, Failure> {
    let suite: Suite = suite.parse().map_err(|e: Error| usage(e.to_string()))?;
    let spec = TrialSpec { seed, n_trials: trials, slack, ..TrialSpec::default() };
    let reports = run_suite(suite, &spec)?;
    let mut t = Table::new(vec![
        "theorem_id", "informational", "n_checked", "n_violations", "n_inconclusive", "worst_margin",
    ]);
    for rep in &reports {
        t.push(vec![
            rep.theorem_id.as_str().into(),
            rep.informational.into(),
            rep.n_checked.into(),
            rep.n_violations.into(),
            rep.n_inconclusive.into(),
            rep.worst_margin.into(),
        ]);
    }
    t.json = Some(json!({ "suite": suite.as_str(), "seed": seed, "trials": trials, "slack": slack, "reports": reports }));
    let code = if reports.iter().any(|r| !r.passed()) {
        for rep in reports.iter().filter(|r| !r.passed()) {
            eprintln!(
                "{}: {} violation(s), worst margin {:e}",
                rep.theorem_id,
                rep.n_violations,
                rep.worst_margin.unwrap_or(f64::NAN)
            );
            for v in &rep.details {
                eprintln!("  trial {} [{}]: {:e} > {:e}", v.trial, v.context, v.quantity, v.bound);
            }
        }
        EXIT_VIOLATION
    } else if reports.iter().any(|r| !r.informational && r.inconclusive_rate() >= MAX_INCONCLUSIVE_RATE) {
        eprintln!("inconclusive rate at or above {MAX_INCONCLUSIVE_RATE}");
        EXIT_NUMERIC
    } else {
        0
    };
    Ok(Outcome { table: t, code })
}

fn figure1(r: f64, alpha_min: f64, alpha_max: f64, step: f64) -> Result<Outcome, Failure> {
    Alpha::new(alpha_min)?;
    let rows = figure1_data(r, &alpha_grid(alpha_min, alpha_max, step)?)?;
    let mut t = Table::new(vec!["alpha", "M", "M2"]);
    for row in rows {
        t.push(vec![row.alpha.into(), row.m.into(), row.m2.into()]);
    }
    Ok(t.into())
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let outcome = match cli.command {
        Command::Eval2f1 { a, b, c, x } => eval2f1(a, b, c, x)?,
        Command::Solve { alpha, boundary, z_re, z_im, quad_n_max } => solve(alpha, &boundary, z_re, z_im, quad_n_max)?,
        Command::Bounds { id, r, alpha, c } => bounds_table(&id, r, alpha, c)?,
        Command::Verify { suite, seed, trials, slack } => verify(&suite, seed, trials, slack)?,
        Command::Figure1 { r, alpha_min, alpha_max, step } => figure1(r, alpha_min, alpha_max, step)?,
    };
    let text = match cli.out.format {
        Format::Csv => outcome.table.to_csv().map_err(|e| usage(format!("csv: {e}")))?,
        Format::Json => outcome.table.to_json(),
    };
    emit(&text, cli.out.output.as_deref()).map_err(|e| usage(format!("write failed: {e}")))?;
    Ok(outcome.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
