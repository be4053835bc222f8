//! The `rgroup` command line.
//!
//! Exit codes: 0 success, 1 other errors, 2 invalid input, 3 closed form and
//! oracle disagree, 4 enumeration cap exceeded.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::datum::{bundled, parse_instance, GroupFamily, InducingDatum};
use crate::error::Error;
use crate::oracle::{catalog, differential_check, fuzz, FuzzConfig, FuzzRecord, FuzzSummary};
use crate::report::analyze;

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "rgroup", version, about = "R-groups and elliptic constituents of induced representations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze an instance file.
    Analyze {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Also run the brute-force differential check.
        #[arg(long)]
        oracle: bool,
    },
    /// Analyze a bundled instance (EX_A, EX_B, EX_C, EX_GU3, EX_ODD).
    Example {
        name: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        oracle: bool,
    },
    /// Compare the closed form with the brute-force oracle on one instance.
    Verify {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Differential check over seeded random instances.
    Fuzz {
        /// Restrict to these families (repeatable); default all.
        #[arg(long = "family", value_parser = parse_family)]
        families: Vec<GroupFamily>,
        #[arg(long, default_value_t = 0)]
        min_r: usize,
        #[arg(long, default_value_t = 5)]
        max_r: usize,
        /// Largest rank of Γ for the non-unitary families.
        #[arg(long, default_value_t = 2)]
        gamma_rank: u8,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Write JSONL records here; the summary goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Differential check over every instance of one family, r and Γ rank.
    Catalog {
        #[arg(long, value_parser = parse_family)]
        family: GroupFamily,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 1)]
        gamma_rank: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_family(s: &str) -> Result<GroupFamily, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax(_) | Error::Schema(_) | Error::Validation(_) => EXIT_INVALID,
        Error::CapExceeded { .. } => EXIT_CAP,
        _ => EXIT_OTHER,
    }
}

/// Failure with its exit code and message.
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(exit_code(&e), e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(EXIT_OTHER, e.to_string())
    }
}

fn load(path: &Path) -> Result<InducingDatum, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(EXIT_OTHER, format!("{}: {e}", path.display())))?;
    Ok(parse_instance(&text)?)
}

fn write_report(datum: &InducingDatum, format: Format, oracle: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let report = analyze(datum, oracle)?;
    match format {
        Format::Json => writeln!(out, "{}", report.to_json())?,
        Format::Text => write!(out, "{}", report.to_text())?,
    }
    Ok(match &report.oracle {
        Some(o) if !o.pass => EXIT_MISMATCH,
        _ => EXIT_OK,
    })
}

fn write_records(
    records: &[FuzzRecord],
    summary: &FuzzSummary,
    path: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let mut lines = String::new();
    for rec in records {
        lines.push_str(&serde_json::to_string(rec).expect("records serialize"));
        lines.push('\n');
    }
    let summary_json = serde_json::to_string(summary).expect("summaries serialize");
    match path {
        Some(p) => {
            fs::write(p, lines).map_err(|e| Failure(EXIT_OTHER, format!("{}: {e}", p.display())))?;
            writeln!(out, "{summary_json}")?;
        }
        None => {
            out.write_all(lines.as_bytes())?;
            writeln!(err, "{summary_json}")?;
        }
    }
    Ok(if summary.failed > 0 { EXIT_MISMATCH } else { EXIT_OK })
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Analyze { path, format, oracle } => write_report(&load(&path)?, format, oracle, out),
        Command::Example { name, format, oracle } => write_report(&bundled(&name)?, format, oracle, out),
        Command::Verify { path, format } => {
            let report = differential_check(&load(&path)?)?;
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializes"))?,
                Format::Text => {
                    writeln!(out, "{}", if report.pass { "PASS" } else { "FAIL" })?;
                    for c in &report.checks {
                        write!(out, "  [{}] {}", if c.pass { "ok" } else { "!!" }, c.name)?;
                        if let Some(d) = &c.detail {
                            write!(out, ": {d}")?;
                        }
                        writeln!(out)?;
                    }
                }
            }
            Ok(if report.pass { EXIT_OK } else { EXIT_MISMATCH })
        }
        Command::Fuzz {
            families,
            min_r,
            max_r,
            gamma_rank,
            count,
            seed,
            jobs,
            out: path,
        } => {
            let config = FuzzConfig {
                families: if families.is_empty() {
                    GroupFamily::ALL.to_vec()
                } else {
                    families
                },
                min_r,
                max_r,
                gamma_rank,
                count,
                seed,
                jobs,
            };
            let run = fuzz(&config)?;
            write_records(&run.records, &run.summary, path.as_deref(), out, err)
        }
        Command::Catalog {
            family,
            r,
            gamma_rank,
            out: path,
        } => {
            let records = catalog(family, r, gamma_rank)?;
            let summary = FuzzSummary::from_records(&records);
            write_records(&records, &summary, path.as_deref(), out, err)
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_OTHER } else { EXIT_OK };
        }
    };
    match execute(cli, out, err) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}
