mod commands;
mod parse;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "AFREE_HIGMAN_CACHE";

#[derive(Debug, Parser)]
#[command(name = "afree", version, about = "Arithmetically-free sets, Lie words and graded Lie algebras")]
pub struct Cli {
    /// Add wall-clock timings to the report (makes it non-deterministic).
    #[arg(long, global = true)]
    timings: bool,
    /// Write the report here as well as to stdout.
    #[arg(long, global = true, value_name = "FILE")]
    report: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a subset is arithmetically-free.
    AfCheck(commands::AfCheck),
    /// Evaluate H_a(b, c).
    Higman(commands::HigmanArgs),
    /// Signed permutations of a bracketing.
    Linearise(commands::Linearise),
    /// Decide Lie-regularity of a letter sequence.
    LieRegular(commands::LieRegular),
    /// Decide fullness of a sequence over a weighted alphabet.
    Fullness(commands::Fullness),
    /// Empirical check of the sequence characterisation of freeness.
    Characterise(commands::Characterise),
    /// Graded metabelian algebra with a given non-free support.
    Witness(commands::WitnessArgs),
    /// Graded truncation of the standard filiform algebra.
    Filiform(commands::Filiform),
    /// Check a grading, and optionally the collapse identities.
    GradeVerify(commands::GradeVerify),
    /// Lower central and derived series of an algebra.
    Lcs(commands::Lcs),
    /// Regrade an algebra along a contraction of its support.
    Contract(commands::Contract),
    /// Project a free subset of a group with free part into a finite group.
    Project(commands::Project),
    /// Search a walk in a Cayley graph for a (Lie-)regular certificate.
    CayleyWalk(commands::CayleyWalk),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::AfCheck(_) => "af-check",
            Command::Higman(_) => "higman",
            Command::Linearise(_) => "linearise",
            Command::LieRegular(_) => "lie-regular",
            Command::Fullness(_) => "fullness",
            Command::Characterise(_) => "characterise",
            Command::Witness(_) => "witness",
            Command::Filiform(_) => "filiform",
            Command::GradeVerify(_) => "grade-verify",
            Command::Lcs(_) => "lcs",
            Command::Contract(_) => "contract",
            Command::Project(_) => "project",
            Command::CayleyWalk(_) => "cayley-walk",
        }
    }

    fn run(&self) -> Result<Outcome, CliError> {
        match self {
            Command::AfCheck(a) => a.run(),
            Command::Higman(a) => a.run(),
            Command::Linearise(a) => a.run(),
            Command::LieRegular(a) => a.run(),
            Command::Fullness(a) => a.run(),
            Command::Characterise(a) => a.run(),
            Command::Witness(a) => a.run(),
            Command::Filiform(a) => a.run(),
            Command::GradeVerify(a) => a.run(),
            Command::Lcs(a) => a.run(),
            Command::Contract(a) => a.run(),
            Command::Project(a) => a.run(),
            Command::CayleyWalk(a) => a.run(),
        }
    }
}

/// A computed result. `unknown` marks a search that ran out of budget
/// before reaching a verdict.
pub struct Outcome {
    pub result: Value,
    pub unknown: bool,
}

impl Outcome {
    pub fn verdict(result: Value) -> Self {
        Outcome { result, unknown: false }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Contract(String),
}

impl CliError {
    pub fn contract(e: impl std::fmt::Display) -> Self {
        CliError::Contract(e.to_string())
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Contract(_) => "contract",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Contract(m) => m,
        }
    }
}

fn header(name: &str, argv: &[String]) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    m.insert("tool".into(), json!({ "name": "afree", "version": env!("CARGO_PKG_VERSION") }));
    m.insert("command".into(), json!({ "name": name, "argv": argv }));
    m
}

fn emit(report: &Value, copy: Option<&str>) {
    let text = serde_json::to_string_pretty(report).expect("reports serialize");
    // A closed pipe downstream is not our failure.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    if let Some(path) = copy {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("afree: cannot write {path}: {e}");
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let mut report = header(argv.first().map(String::as_str).unwrap_or(""), &argv);
            report.insert("status".into(), json!("error"));
            report.insert("error".into(), json!({ "kind": "usage", "message": e.render().to_string().trim() }));
            emit(&Value::Object(report), None);
            let _ = e.print();
            return ExitCode::from(1);
        }
    };

    let started = Instant::now();
    let outcome = cli.command.run();
    let elapsed = started.elapsed();

    let mut report = header(cli.command.name(), &argv);
    let code = match outcome {
        Ok(Outcome { result, unknown }) => {
            report.insert("status".into(), json!(if unknown { "unknown" } else { "ok" }));
            report.insert("result".into(), result);
            if unknown {
                2
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("afree {}: {}", cli.command.name(), e.message());
            report.insert("status".into(), json!("error"));
            report.insert("error".into(), json!({ "kind": e.kind(), "message": e.message() }));
            1
        }
    };
    if cli.timings {
        report.insert("timings".into(), json!({ "total_ms": elapsed.as_secs_f64() * 1e3 }));
    }
    emit(&Value::Object(report), cli.report.as_deref());
    ExitCode::from(code)
}
