//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on I/O, parse or spec errors, 2 on algebraic
//! failures (including certificates that fail verification).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use crate::adic::{AdicElem, AdicRing, CompleteRingSpec};
use crate::engine::{decompose, verify_certificate};
use crate::error::Error;
use crate::finite::FiniteRing;
use crate::format::{self, FormatError, RingFile};
use crate::oracle::{self, PiCleanOracle};
use crate::regularity::spectral_data;
use crate::selftest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_ALGEBRA: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "adicclean",
    about = "Strongly clean decompositions in adically complete rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OracleMode {
    Idempotents,
    StronglyClean,
    PiClean,
    PiDegree,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute a strongly π-clean certificate for an element.
    Decompose {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        element: PathBuf,
        /// Overrides the precision in the ring file.
        #[arg(long)]
        precision: Option<usize>,
        /// Certificate destination; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate by multiplication.
    Verify {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Fitting idempotent and degree of an element of a finite ring.
    Fitting {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        element: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive searches on small rings.
    Oracle {
        #[arg(long, value_enum)]
        mode: OracleMode,
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        element: Option<PathBuf>,
        #[arg(long, default_value_t = oracle::DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long)]
        json: bool,
    },
    /// Run the built-in invariant suite.
    Selftest {
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Input(String),
    Algebra(Error),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Ring(inner) => inner.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidSpec(_) | Error::InvalidElement(_) | Error::SpecMismatch => {
                Failure::Input(format!("{}: {e}", e.name()))
            }
            other => Failure::Algebra(other),
        }
    }
}

type CmdResult = Result<i32, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Input(e.to_string()))
}

fn finite_ring(file: RingFile) -> Result<FiniteRing, Failure> {
    match file {
        RingFile::Finite(spec) => Ok(FiniteRing::new(spec)?),
        RingFile::Complete(_) => Err(Failure::Input("expected a finite ring spec".into())),
    }
}

fn complete_ring(file: RingFile) -> Result<AdicRing, Failure> {
    match file {
        RingFile::Complete(spec) => Ok(AdicRing::new(spec)?),
        RingFile::Finite(_) => Err(Failure::Input("expected a complete ring spec with precision".into())),
    }
}

fn element_json(path: Option<&PathBuf>) -> Result<Json, Failure> {
    let path = path.ok_or_else(|| Failure::Input("this mode needs --element".into()))?;
    Ok(format::parse_element_file(&read(path)?)?)
}

/// Re-expresses `x` at another precision: truncation downwards, canonical
/// reinterpretation of entries or coefficients upwards.
fn at_precision(x: &AdicElem, ring: &AdicRing) -> Result<AdicElem, Failure> {
    let cap = ring.precision();
    if cap <= x.precision() {
        return Ok(x.truncate(cap)?);
    }
    match ring.spec() {
        CompleteRingSpec::PadicMatrix { .. } => Ok(ring.matrix_from_entries(x.entries().unwrap_or_default().to_vec())?),
        CompleteRingSpec::SkewSeries { .. } => Ok(ring.series(x.coefficients().unwrap_or_default())?),
    }
}

fn cmd_decompose(
    ring: &Path,
    element: &Path,
    precision: Option<usize>,
    out_path: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    let ring = complete_ring(format::parse_ring_file(&read(ring)?)?)?;
    let x = format::adic_from_json(&ring, &format::parse_element_file(&read(element)?)?)?;
    let x = match precision {
        Some(cap) => at_precision(&x, &ring.at_precision(cap)?)?,
        None => x,
    };
    let cert = decompose(&x)?;
    let text = format::to_pretty(&format::certificate_to_json(&cert));
    match out_path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        None => write_out(out, &text)?,
    }
    Ok(EXIT_OK)
}

fn cmd_verify(cert: &Path, as_json: bool, out: &mut dyn Write) -> CmdResult {
    let cert = format::parse_certificate(&read(cert)?)?;
    let verdict = verify_certificate(&cert);
    if as_json {
        let names: Vec<String> = verdict.violations.iter().map(|v| v.to_string()).collect();
        let report = json!({ "schema": format::SCHEMA, "passed": verdict.passed(), "violations": names });
        write_out(out, &format::to_pretty(&report))?;
    } else if verdict.passed() {
        write_out(out, "pass\n")?;
    } else {
        for v in &verdict.violations {
            write_out(out, &format!("{v}\n"))?;
        }
    }
    Ok(if verdict.passed() { EXIT_OK } else { EXIT_ALGEBRA })
}

fn cmd_fitting(ring: &Path, element: &Path, as_json: bool, out: &mut dyn Write) -> CmdResult {
    let ring = finite_ring(format::parse_ring_file(&read(ring)?)?)?;
    let x = format::finite_from_json(&ring, &format::parse_element_file(&read(element)?)?)?;
    let sd = spectral_data(&x)?;
    let text = if as_json {
        format::to_pretty(&json!({
            "schema": format::SCHEMA,
            "z": format::finite_to_json(&sd.z),
            "n": sd.n,
        }))
    } else {
        format!("z = {}\nn = {}\n", sd.z, sd.n)
    };
    write_out(out, &text)?;
    Ok(EXIT_OK)
}

fn joined(items: impl Iterator<Item = String>) -> String {
    items.collect::<Vec<_>>().join(" ")
}

fn cmd_oracle(
    mode: OracleMode,
    ring: &Path,
    element: Option<&PathBuf>,
    budget: u128,
    as_json: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let file = format::parse_ring_file(&read(ring)?)?;
    let (key, payload, human): (&str, Json, String) = match mode {
        OracleMode::Idempotents => {
            let list: Vec<Json> = match file {
                RingFile::Finite(spec) => oracle::enumerate_idempotents(&spec, budget)?
                    .iter()
                    .map(format::finite_to_json)
                    .collect(),
                RingFile::Complete(spec) => PiCleanOracle::new(&AdicRing::new(spec)?, budget)?
                    .idempotents()
                    .iter()
                    .map(format::adic_to_json)
                    .collect(),
            };
            let human = joined(list.iter().map(|j| j.to_string()));
            ("idempotents", Json::Array(list), human)
        }
        OracleMode::StronglyClean => {
            let ring = finite_ring(file)?;
            let x = format::finite_from_json(&ring, &element_json(element)?)?;
            let list: Vec<Json> = oracle::brute_force_strongly_clean(&x, budget)?
                .iter()
                .map(format::finite_to_json)
                .collect();
            let human = joined(list.iter().map(|j| j.to_string()));
            ("idempotents", Json::Array(list), human)
        }
        OracleMode::PiClean => {
            let ring = complete_ring(file)?;
            let x = format::adic_from_json(&ring, &element_json(element)?)?;
            let pairs = oracle::brute_force_pi_clean(&x, budget)?;
            let human = pairs
                .iter()
                .map(|(e, n)| format!("{} {n}", format::adic_to_json(e)))
                .collect::<Vec<_>>()
                .join("\n");
            let list = pairs
                .iter()
                .map(|(e, n)| json!({ "e": format::adic_to_json(e), "n": n }))
                .collect();
            ("pairs", Json::Array(list), human)
        }
        OracleMode::PiDegree => {
            let ring = finite_ring(file)?;
            let x = format::finite_from_json(&ring, &element_json(element)?)?;
            let n = oracle::minimal_pi_regular_degree(&x, budget)?;
            ("n", json!(n), n.to_string())
        }
    };
    if as_json {
        let mut report = serde_json::Map::new();
        report.insert("schema".into(), json!(format::SCHEMA));
        report.insert(key.into(), payload);
        write_out(out, &format::to_pretty(&Json::Object(report)))?;
    } else {
        write_out(out, &format!("{human}\n"))?;
    }
    Ok(EXIT_OK)
}

fn cmd_selftest(as_json: bool, out: &mut dyn Write) -> CmdResult {
    let results = selftest::run_all();
    let failed = results.iter().filter(|r| r.outcome.is_err()).count();
    if as_json {
        let checks: Vec<Json> = results
            .iter()
            .map(|r| json!({ "name": r.name, "passed": r.outcome.is_ok(), "detail": r.outcome.clone().err() }))
            .collect();
        write_out(
            out,
            &format::to_pretty(&json!({ "schema": format::SCHEMA, "checks": checks })),
        )?;
    } else {
        for r in &results {
            match &r.outcome {
                Ok(()) => write_out(out, &format!("ok   {}\n", r.name))?,
                Err(why) => write_out(out, &format!("FAIL {}: {why}\n", r.name))?,
            }
        }
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_ALGEBRA })
}

/// Runs the CLI with explicit argument list and output streams; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Decompose {
            ring,
            element,
            precision,
            out: out_path,
        } => cmd_decompose(ring, element, *precision, out_path.as_deref(), out),
        Command::Verify { cert, json } => cmd_verify(cert, *json, out),
        Command::Fitting { ring, element, json } => cmd_fitting(ring, element, *json, out),
        Command::Oracle {
            mode,
            ring,
            element,
            budget,
            json,
        } => cmd_oracle(*mode, ring, element.as_ref(), *budget, *json, out),
        Command::Selftest { json } => cmd_selftest(*json, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Algebra(e)) => {
            let _ = writeln!(err, "error: {}: {e}", e.name());
            EXIT_ALGEBRA
        }
    }
}
