mod json;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, ValueEnum};
use serde_json::{json, Value};

use trinoid::certifier::certify;
use trinoid::che::{TrinoidParams, DEFAULT_K};
use trinoid::connection::{connection_matrix, frobenius_connection, unitarisability_ratio, ConnectionMatrix};
use trinoid::exactalg::{parse_number, Rational};
use trinoid::numerics::Field;
use trinoid::monodromy::{end_weights, loop_report, m2_check, spectral_point, LoopId, DEFAULT_DTHETA};
use trinoid::su2geom::{axes, pair_verdict};
use trinoid::Error;

/// Matching point and series length for the Frobenius route.
const FROBENIUS_MATCH: f64 = 0.5;
const FROBENIUS_TERMS: usize = 80;
const GEOM_TOL_FACTOR: f64 = 1e-2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Command {
    Certify,
    Connection,
    Monodromy,
    Weights,
    Sweep,
    Geom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Asymptotic,
    Frobenius,
    Both,
}

/// Unitarisability certificates, connection and monodromy reports for
/// trinoid potentials.
#[derive(Parser, Debug)]
#[command(name = "trinoid", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// w0,w1,r0h,r1h,p as p/q rationals
    #[arg(long, allow_hyphen_values = true)]
    params: Option<String>,
    /// Curve parameter for `connection`; spectral angle for `monodromy` and `geom`
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Evaluation point of the certificate sign table
    #[arg(long, default_value = "4/5")]
    t0: String,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    method: Method,
    /// CSV with header w0,w1,r_hat0,r_hat1,p
    #[arg(long)]
    grid: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Accept decimal input for numerical subcommands
    #[arg(long)]
    approx: bool,
}

/// Either a usage problem (exit 2) or a failed computation (exit 1).
enum Failure {
    Usage(String),
    Compute(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

impl Cli {
    fn params(&self) -> Result<TrinoidParams, Failure> {
        let s = self.params.as_deref().ok_or_else(|| usage("--params is required"))?;
        TrinoidParams::parse_with(s, self.approx).map_err(|e| usage(format!("--params: {e}")))
    }

    fn number(&self, name: &str, v: Option<&str>, allow_decimal: bool) -> Result<Rational, Failure> {
        let s = v.ok_or_else(|| usage(format!("--{name} is required")))?;
        parse_number(s, allow_decimal).map_err(|e| usage(format!("--{name}: {e}")))
    }

    fn t(&self) -> Result<f64, Failure> {
        Ok(self.number("t", self.t.as_deref(), self.approx)?.as_f64())
    }

    /// The certification path never takes decimals.
    fn t0(&self) -> Result<Rational, Failure> {
        if self.approx {
            return Err(usage("--approx is not accepted for certification"));
        }
        self.number("t0", Some(&self.t0), false)
    }

    fn check(&self) -> Result<(), Failure> {
        if !(self.tol > 0.0) {
            return Err(usage("--tol must be positive"));
        }
        if self.jobs == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        Ok(())
    }
}

fn connection_entry(c: &ConnectionMatrix) -> Result<(Value, [f64; 2]), Failure> {
    let r = unitarisability_ratio(c)?;
    let v = json!({
        "matrix": c,
        "ratio": [r.ratio.re, r.ratio.im],
        "reducible": r.reducible,
    });
    Ok((v, [r.ratio.re, r.ratio.im]))
}

fn run_connection(cli: &Cli) -> Result<Value, Failure> {
    let theta = cli.params()?;
    let t = cli.t()?;
    let mut report = json!({ "theta": theta.to_num(), "t": t });
    let mut ratios = Vec::new();
    if cli.method != Method::Frobenius {
        let (v, r) = connection_entry(&connection_matrix(&theta, t, DEFAULT_K, cli.tol)?)?;
        report["asymptotic"] = v;
        ratios.push(r);
    }
    if cli.method != Method::Asymptotic {
        let (v, r) = connection_entry(&frobenius_connection(&theta, t, FROBENIUS_MATCH, FROBENIUS_TERMS)?)?;
        report["frobenius"] = v;
        ratios.push(r);
    }
    if let [a, b] = ratios[..] {
        let gap = ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
        let norm = (a[0] * a[0] + a[1] * a[1]).sqrt();
        report["ratio_relative_gap"] = json!(gap / norm);
    }
    Ok(report)
}

fn run_monodromy(cli: &Cli) -> Result<Value, Failure> {
    let theta = cli.params()?;
    let angle = cli.t()?;
    let num = theta.to_num();
    let lambda = spectral_point(angle).lambda;
    let loops = LoopId::ALL.iter().map(|id| loop_report(&num, lambda, *id, cli.tol)).collect::<trinoid::Result<Vec<_>>>()?;
    let product = loops[1].matrix * loops[0].matrix;
    Ok(json!({
        "theta": num,
        "spectral_angle": angle,
        "loops": loops,
        "composition_residual": (loops[2].matrix - product).max_abs(),
        "series": m2_check(&theta, DEFAULT_DTHETA, cli.tol)?,
    }))
}

fn run_geom(cli: &Cli) -> Result<Value, Failure> {
    let theta = cli.params()?;
    let angle = cli.t()?;
    let num = theta.to_num();
    let lambda = spectral_point(angle).lambda;
    // --tol is per step; the accumulated loop error runs about 10x higher
    // and must stay inside the geometry's determinant tolerance
    let tol = cli.tol * GEOM_TOL_FACTOR;
    let m0 = loop_report(&num, lambda, LoopId::Gamma0, tol)?.matrix;
    let m1 = loop_report(&num, lambda, LoopId::Gamma1, tol)?.matrix;
    Ok(json!({
        "theta": num,
        "spectral_angle": angle,
        "m0": m0,
        "m1": m1,
        "pair": pair_verdict(&m0, &m1)?,
        "axes": axes(&m0, &m1)?,
    }))
}

fn run(cli: &Cli) -> Result<String, Failure> {
    cli.check()?;
    let report = match cli.command {
        Command::Certify => {
            let (theta, t0) = (cli.params()?, cli.t0()?);
            serde_json::to_value(certify(&theta, &t0)?)
        }
        Command::Weights => serde_json::to_value(end_weights(&cli.params()?)),
        Command::Connection => Ok(run_connection(cli)?),
        Command::Monodromy => Ok(run_monodromy(cli)?),
        Command::Geom => Ok(run_geom(cli)?),
        Command::Sweep => {
            let grid = cli.grid.as_ref().ok_or_else(|| usage("--grid is required"))?;
            return sweep::run(grid, &cli.t0()?, cli.jobs);
        }
    };
    json::to_string(&report.map_err(|e| Failure::Io(e.to_string()))?).map_err(|e| Failure::Io(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(s) => s,
        Err(Failure::Usage(msg)) => Cli::command().error(ErrorKind::ValueValidation, msg).exit(),
        Err(Failure::Compute(e)) => {
            eprint!("{}", json::to_string(&json!({"error": {"kind": e.kind(), "message": e.to_string()}})).unwrap_or_default());
            return ExitCode::from(1);
        }
        Err(Failure::Io(msg)) => {
            eprint!("{}", json::to_string(&json!({"error": {"kind": "io", "message": msg}})).unwrap_or_default());
            return ExitCode::from(1);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, out).map_err(|e| e.to_string()),
        None => {
            print!("{out}");
            Ok(())
        }
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprint!("{}", json::to_string(&json!({"error": {"kind": "io", "message": msg}})).unwrap_or_default());
            ExitCode::from(1)
        }
    }
}
