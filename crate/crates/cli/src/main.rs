//! `bernmat`: compute, decompose, verify, export and benchmark the exact
//! Bernoulli-matrix machinery from the command line.
//!
//! Exit codes: 0 all checks passed, 1 a mathematical check failed, 2 usage
//! error, 3 I/O error or the `BERNMAT_MAX_BITS` cap was exceeded.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use bernmat_core::verify::Suite;
use bernmat_core::Method;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "bernmat",
    version,
    about = "Exact Bernoulli numbers via a triangular matrix"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Csv,
    Json,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: bernmat_core::Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: bernmat_core::Error| e.to_string())
}

fn parse_what(s: &str) -> Result<bernmat_core::export::TriangleKind, String> {
    s.parse().map_err(|e: bernmat_core::Error| e.to_string())
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print B_{2n} as an exact fraction and a float.
    Bernoulli {
        #[arg(long, value_parser = positive)]
        n: usize,
        /// recurrence, akiyama, matrix or qpoly.
        #[arg(long, value_parser = parse_method, default_value = "recurrence")]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Show the positive decreasing terms of |B_{2n}| and their checks.
    Decompose {
        #[arg(long, value_parser = positive)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Run a verification suite: rid2, rows, closed_forms, qpoly, rid1,
    /// hohum, zeta or all.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        /// Upper bound on n for the exact suites.
        #[arg(long, value_parser = positive, default_value = "20")]
        max_n: usize,
        /// Truncation for the numeric suites.
        #[arg(long, value_parser = positive, default_value = "100000")]
        terms: usize,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Write a triangle: m, minv, terms or qcoeffs.
    Export {
        #[arg(value_parser = parse_what)]
        what: bernmat_core::export::TriangleKind,
        #[arg(long, alias = "n", value_parser = positive)]
        rows: usize,
        #[arg(long, value_enum, default_value_t = ExportFormat::Csv)]
        format: ExportFormat,
        /// Destination file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time each method on B_2..B_{2 max_n} after checking they agree.
    Bench {
        #[arg(long, value_parser = positive, default_value = "50")]
        max_n: usize,
        /// Repeat to select several; all four by default.
        #[arg(long = "method", value_parser = parse_method)]
        methods: Vec<Method>,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
}

/// Failure classes mapped onto the exit-code contract.
#[derive(Debug)]
pub enum Failure {
    /// A mathematical check failed; the report was already printed.
    Check,
    Io(String),
    TooLarge {
        bits: u64,
        cap: u64,
    },
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Check => 1,
            Failure::Io(_) | Failure::TooLarge { .. } => 3,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bernoulli { n, method, format } => commands::bernoulli(n, method, format),
        Command::Decompose { n, format } => commands::decompose(n, format),
        Command::Verify {
            suite,
            max_n,
            terms,
            format,
        } => commands::verify(suite, max_n, terms, format),
        Command::Export {
            what,
            rows,
            format,
            out,
        } => commands::export(what, rows, format, out.as_deref()),
        Command::Bench {
            max_n,
            methods,
            format,
        } => commands::bench(max_n, &methods, format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Check => {}
                Failure::Io(msg) => eprintln!("bernmat: I/O error: {msg}"),
                Failure::TooLarge { bits, cap } => {
                    eprintln!("bernmat: result needs {bits} bits, over BERNMAT_MAX_BITS={cap}")
                }
            }
            ExitCode::from(f.exit_code())
        }
    }
}
