//! Command-line front end: argument schema, dispatch, structured errors and
//! the JSON-lines run log. [`run`] is the whole program minus process exit.
//!
//! Exit codes: 0 success, 1 verification failures, 2 usage, 3 precondition
//! or I/O error. Errors are one JSON object on the error stream.

mod commands;
mod runlog;

pub use commands::{execute, Outcome};
pub use runlog::{append_run_log, read_run_log, resolve_log_path, LogContents, RunRecord, DEFAULT_LOG, LOG_ENV};

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::cigeom::{Claim, DEFAULT_P4_MODULUS_CAP, HARD_MODULUS_CAP};
use crate::exactmath::PrimeField;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURES: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "ciql",
    version,
    about = "Exact checks on nets of quadrics over F_p and symbolic tautological-class formulas",
    after_help = "Sweeps default to --p 31 --curves 20 --subset-budget 200000.\n\
                  The run log is --log, else $CIQL_LOG, else ./ciql-runs.jsonl."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the result to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Run log (JSON lines, append-only).
    #[arg(long, global = true, value_name = "PATH")]
    pub log: Option<PathBuf>,
    /// Skip the run log.
    #[arg(long, global = true)]
    pub no_log: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Classify 7 points of P^3 against the ways they fail to impose independent conditions on quadrics.
    Classify(InputArgs),
    /// Basis of the quadrics through a configuration in P^3 or P^4.
    QuadricsThrough(InputArgs),
    /// The eighth base point of the net of quadrics through 7 points of P^3 over F_p.
    RecoverEighth(InputArgs),
    /// Sample a net of quadrics in P^4 with only smooth rational base points.
    SampleCurve(SampleArgs),
    /// Run a verification claim and print its report; exit 1 on any failure.
    Verify(VerifyArgs),
    /// Count hyperplanar 8-subsets against transversal hyperplane sections.
    CrossCount(CurveArgs),
    /// Symbolic tautological-class calculus.
    Taut(TautArgs),
    /// Re-run every record of a run log and compare payloads.
    Replay(InputArgs),
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Input file.
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
}

/// Prime modulus outside {2, 3, 5}.
fn parse_modulus(s: &str) -> Result<u32, String> {
    let p: u32 = s.parse().map_err(|_| format!("{s:?} is not an unsigned integer"))?;
    PrimeField::new(p).map(|f| f.modulus()).map_err(|e| e.to_string())
}

#[derive(Args, Debug, Clone)]
pub struct CurveArgs {
    /// Prime modulus; characteristic 2, 3 and 5 are excluded.
    #[arg(long, default_value_t = 31, value_parser = parse_modulus)]
    pub p: u32,
    /// Master seed; curve i uses seed + i.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub curves: u64,
    #[arg(long, default_value_t = 200_000)]
    pub subset_budget: u64,
    /// Sampler attempts per curve.
    #[arg(long, default_value_t = 100)]
    pub max_tries: u32,
    /// Allow moduli up to 101 in P^4 (enumeration visits about p^4 points).
    #[arg(long)]
    pub allow_large_p: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SampleArgs {
    #[arg(long, default_value_t = 31, value_parser = parse_modulus)]
    pub p: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub max_tries: u32,
    #[arg(long, default_value_t = 9)]
    pub min_points: usize,
    #[arg(long)]
    pub allow_large_p: bool,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, value_parser = |s: &str| s.parse::<Claim>())]
    pub claim: Claim,
    #[command(flatten)]
    pub curve: CurveArgs,
    /// Trials for lemma31 (default 10000) and lemma31-ci (default 500).
    #[arg(long)]
    pub trials: Option<u64>,
    /// Per-family trials for lemma31 (default trials / 10).
    #[arg(long)]
    pub family_trials: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct TautArgs {
    #[command(subcommand)]
    pub op: TautOp,
}

#[derive(Args, Debug, Clone)]
pub struct TautCommon {
    /// Assign a generator (psi1=0) or a whole family (psi=0); VALUE is an expression.
    #[arg(long = "set", value_name = "NAME=VALUE")]
    pub set: Vec<String>,
    /// Truncation degree.
    #[arg(long, default_value_t = crate::tautcalc::DEFAULT_TRUNC)]
    pub trunc: u32,
    /// Print a JSON object with the text and the term map.
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum TautOp {
    /// Porteous class of prod(1 + psi_i t) / (1 + lambda_1 t + ... + lambda_5 t^5).
    Porteous {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: u32,
        #[arg(long, default_value_t = 1)]
        b: u32,
        #[command(flatten)]
        common: TautCommon,
    },
    /// Evaluate an expression.
    Expand {
        expr: String,
        /// Rewrite through the relation table into psi and lambda classes.
        #[arg(long)]
        relations: bool,
        /// Marked point for --relations; every index in the expression when omitted.
        #[arg(long)]
        index: Option<u32>,
        #[command(flatten)]
        common: TautCommon,
    },
    /// Chern character of f_*(omega^k) by Grothendieck-Riemann-Roch.
    Grr {
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 5)]
        g: u32,
        #[command(flatten)]
        common: TautCommon,
    },
    /// Todd series of a line bundle with first Chern class sign * K.
    Todd {
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        sign: i32,
        #[arg(long, default_value_t = 4)]
        order: u32,
        #[command(flatten)]
        common: TautCommon,
    },
    /// The relation table at marked point --index.
    Relations {
        #[arg(long, default_value_t = 1)]
        index: u32,
        #[command(flatten)]
        common: TautCommon,
    },
}

/// A failure reported as JSON on the error stream.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("{kind}: {message}")]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
    pub exit: i32,
    pub details: Option<Value>,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            kind: "usage",
            message: message.into(),
            exit: EXIT_USAGE,
            details: None,
        }
    }

    pub fn precondition(kind: &'static str, message: impl Into<String>) -> Self {
        Self {
            kind,
            message: message.into(),
            exit: EXIT_PRECONDITION,
            details: None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({"error": self.kind, "message": self.message, "exitCode": self.exit});
        if let Some(d) = &self.details {
            v["details"] = d.clone();
        }
        v
    }
}

/// Parses `argv` (program name first) against the schema.
pub fn parse_args<I, T>(argv: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Cli::try_parse_from(argv)
}

/// Checks that need more than one flag; runs before any work.
pub fn validate(cli: &Cli) -> Result<(), CliError> {
    let cap_check = |args: &CurveArgs| {
        let cap = if args.allow_large_p { HARD_MODULUS_CAP } else { DEFAULT_P4_MODULUS_CAP };
        if args.p > cap {
            return Err(CliError::usage(format!(
                "--p {} exceeds the P^4 enumeration cap {cap}{}",
                args.p,
                if args.allow_large_p { "" } else { " (pass --allow-large-p to raise it to 101)" }
            )));
        }
        Ok(())
    };
    match &cli.command {
        Command::SampleCurve(a) => {
            let cap = if a.allow_large_p { HARD_MODULUS_CAP } else { DEFAULT_P4_MODULUS_CAP };
            if a.p > cap {
                return Err(CliError::usage(format!("--p {} exceeds the P^4 enumeration cap {cap}", a.p)));
            }
        }
        Command::CrossCount(a) => cap_check(a)?,
        Command::Verify(v) => match v.claim {
            Claim::Lemma31 => {}
            Claim::Lemma31Ci if v.curve.p > HARD_MODULUS_CAP => {
                return Err(CliError::usage(format!("--p {} exceeds the P^3 enumeration cap {HARD_MODULUS_CAP}", v.curve.p)))
            }
            Claim::Lemma31Ci => {}
            _ => cap_check(&v.curve)?,
        },
        Command::Taut(t) => {
            if let TautOp::Todd { sign, .. } = &t.op {
                if *sign != 1 && *sign != -1 {
                    return Err(CliError::usage("--sign must be 1 or -1"));
                }
            }
        }
        _ => {}
    }
    Ok(())
}

fn warn_cost(cli: &Cli, err: &mut dyn Write) {
    let p = match &cli.command {
        Command::SampleCurve(a) => Some(a.p),
        Command::CrossCount(a) => Some(a.p),
        Command::Verify(v) if v.claim.uses_curves() => Some(v.curve.p),
        _ => None,
    };
    if let Some(p) = p.filter(|&p| p > DEFAULT_P4_MODULUS_CAP) {
        let w = json!({"warning": format!("P^4 enumeration over F_{p} visits about {} points per curve", (p as u64).pow(4))});
        let _ = writeln!(err, "{w}");
    }
}

/// Runs the program on `argv` (program name first), writing results to `out`
/// and structured errors to `err`; returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match parse_args(argv.clone()) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = write!(out, "{e}");
                return if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { EXIT_USAGE } else { EXIT_OK };
            }
            let ce = CliError::usage(e.kind().to_string());
            let mut v = ce.to_json();
            v["details"] = Value::String(e.to_string().trim().to_string());
            let _ = writeln!(err, "{v}");
            return EXIT_USAGE;
        }
    };
    if let Err(e) = validate(&cli) {
        let _ = writeln!(err, "{}", e.to_json());
        return e.exit;
    }
    warn_cost(&cli, err);
    let echo: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let started = Instant::now();
    let result = execute(&cli);
    let runtime_ms = started.elapsed().as_millis() as u64;
    let seed = command_seed(&cli.command);
    let (record, code) = match result {
        Ok(outcome) => {
            if let Err(e) = emit(&cli, out, &outcome.text) {
                let _ = writeln!(err, "{}", e.to_json());
                return e.exit;
            }
            let label = if outcome.exit == EXIT_OK { "pass" } else { "fail" };
            (RunRecord::new(echo, seed, outcome.payload, label, outcome.exit, runtime_ms), outcome.exit)
        }
        Err(e) => {
            let _ = writeln!(err, "{}", e.to_json());
            (RunRecord::new(echo, seed, e.to_json(), "error", e.exit, runtime_ms), e.exit)
        }
    };
    if !cli.no_log {
        let path = resolve_log_path(cli.log.as_deref());
        if let Err(e) = append_run_log(&record, &path) {
            let ce = CliError::precondition("io", format!("cannot append to run log {}: {e}", path.display()));
            let _ = writeln!(err, "{}", ce.to_json());
            return EXIT_PRECONDITION;
        }
    }
    code
}

fn emit(cli: &Cli, out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::precondition("io", e.to_string());
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(io),
        None => out.write_all(text.as_bytes()).map_err(io),
    }
}

fn command_seed(cmd: &Command) -> Option<u64> {
    match cmd {
        Command::SampleCurve(a) => Some(a.seed),
        Command::Verify(v) => Some(v.curve.seed),
        Command::CrossCount(a) => Some(a.seed),
        _ => None,
    }
}

/// Re-executes a logged command and reports whether its payload is
/// byte-identical to the logged one.
pub fn replay(record: &RunRecord) -> Result<bool, CliError> {
    let argv = std::iter::once("ciql".to_string()).chain(record.command.iter().cloned());
    let cli = parse_args(argv).map_err(|e| CliError::usage(e.to_string()))?;
    validate(&cli)?;
    let payload = match execute(&cli) {
        Ok(o) => o.payload,
        Err(e) => e.to_json(),
    };
    let a = serde_json::to_string(&payload).expect("json");
    let b = serde_json::to_string(&record.payload).expect("json");
    Ok(a == b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<Cli, clap::Error> {
        parse_args(std::iter::once("ciql").chain(args.iter().copied()))
    }

    #[test]
    fn schema_accepts_documented_forms() {
        assert!(matches!(parse(&["classify", "--input", "seven.json"]).unwrap().command, Command::Classify(_)));
        assert!(matches!(parse(&["taut", "porteous", "--n", "8", "--a", "4", "--b", "1"]).unwrap().command, Command::Taut(_)));
        let cli = parse(&["verify", "--claim", "prop22-n7"]).unwrap();
        let Command::Verify(v) = cli.command else { panic!() };
        assert_eq!((v.curve.p, v.curve.curves, v.curve.subset_budget), (31, 20, 200_000));
        assert!(parse(&["taut", "todd", "--sign", "-1"]).is_ok());
    }

    #[test]
    fn schema_rejects_bad_input() {
        for p in ["2", "3", "5", "9", "x"] {
            assert!(parse(&["verify", "--claim", "prop22-n8", "--p", p]).is_err(), "p = {p}");
        }
        assert!(parse(&["verify", "--claim", "prop23"]).is_err());
        assert!(parse(&["verify"]).is_err());
        assert!(parse(&["classify", "--input", "a", "--frobnicate"]).is_err());
    }

    #[test]
    fn modulus_cap_needs_opt_in() {
        let cli = parse(&["sample-curve", "--p", "37"]).unwrap();
        assert_eq!(validate(&cli).unwrap_err().exit, EXIT_USAGE);
        let cli = parse(&["sample-curve", "--p", "37", "--allow-large-p"]).unwrap();
        assert!(validate(&cli).is_ok());
        let cli = parse(&["sample-curve", "--p", "103", "--allow-large-p"]).unwrap();
        assert!(validate(&cli).is_err());
    }

    #[test]
    fn usage_errors_are_json_on_stderr() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(["ciql", "--no-log", "verify", "--claim", "prop22-n8", "--p", "5"], &mut out, &mut err);
        assert_eq!(code, EXIT_USAGE);
        assert!(out.is_empty());
        let v: Value = serde_json::from_slice(err.split(|&b| b == b'\n').next().unwrap()).unwrap();
        assert_eq!(v["error"], "usage");
    }
}
