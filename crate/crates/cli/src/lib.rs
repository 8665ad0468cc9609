//! Library surface of the `evreg` command line tool.
//!
//! Three subcommands: `run` executes a session file of map definitions
//! and analysis commands, `verify-examples` re-derives the built-in
//! golden corpus, and `sweep` runs the exhaustive small-matrix searches.
//! Exit codes: 0 ok, 1 command error or sweep violation, 2 parse or
//! usage error, 3 golden mismatch.

mod exec;
mod golden;
mod session;
mod sweep;

pub use exec::{run_session, Caps, Report};
pub use session::{parse_session, CommandLine, MapDef, Session, SessionError, Verb};

use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(
    name = "evreg",
    version,
    about = "Exact analysis of dominant rational self-maps of the projective plane"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a session file and run its commands in order.
    Run {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Iterate search bound used by commands without their own --cap.
        #[arg(long)]
        cap: Option<usize>,
        /// Degree bound used by commands without their own --degree-cap.
        #[arg(long = "degree-cap")]
        degree_cap: Option<u64>,
    },
    /// Re-derive the built-in golden corpus and compare against the
    /// frozen expectations.
    VerifyExamples {
        /// JSON file with additional golden entries.
        #[arg(long)]
        extra: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exhaustive diagonal-power and extendable-power sweeps over 2x2
    /// integer matrices.
    Sweep {
        #[arg(long = "matrices-bound")]
        matrices_bound: i64,
        #[arg(long)]
        cap: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match cli.cmd {
        Cmd::Run {
            file,
            format,
            cap,
            degree_cap,
        } => run_file(&file, format, cap, degree_cap),
        Cmd::VerifyExamples { extra, format } => golden::verify_examples(extra.as_deref(), format),
        Cmd::Sweep {
            matrices_bound,
            cap,
            format,
        } => sweep::run_sweep(matrices_bound, cap, format),
    }
}

fn run_file(path: &Path, format: Format, cap: Option<usize>, degree_cap: Option<u64>) -> i32 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", path.display());
            return 2;
        }
    };
    let session = match parse_session(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("parse error at {e}");
            return 2;
        }
    };
    let defaults = Caps::default();
    let caps = Caps {
        iterate: cap.unwrap_or(defaults.iterate),
        degree: degree_cap.unwrap_or(defaults.degree),
    };
    let reports = run_session(&session, &caps);
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&reports).expect("serializable")
            );
        }
        Format::Text => {
            for r in &reports {
                match (&r.result, &r.error) {
                    (Some(v), _) => println!(
                        "{} -> ok {}",
                        r.command,
                        serde_json::to_string(v).expect("serializable")
                    ),
                    (_, Some(e)) => println!("{} -> error: {e}", r.command),
                    _ => unreachable!("report carries a result or an error"),
                }
            }
        }
    }
    if reports.iter().all(|r| r.status == "ok") {
        0
    } else {
        1
    }
}
