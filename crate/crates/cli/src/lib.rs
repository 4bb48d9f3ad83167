//! Command-line front-end: JSON input documents in, JSON or text reports out.
//!
//! Exit codes: 0 when a verdict was computed (negative ones included), 1 on
//! input errors, 2 when the answer is undecided.

pub mod commands;
pub mod input;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use report::{ErrorEntry, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;

pub const DEFAULT_MAX_DEPTH: u32 = 12;
pub const MAX_DEPTH_ENV: &str = "FOLIATION_LAB_MAX_DEPTH";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{what}: {message}")]
    Parse {
        what: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Math(String),
}

impl CliError {
    fn entry(&self) -> ErrorEntry {
        let (kind, line, column) = match self {
            CliError::Usage(_) => ("usage", None, None),
            CliError::Input(_) => ("input", None, None),
            CliError::Parse { line, column, .. } => ("parse", Some(*line), Some(*column)),
            CliError::Math(_) => ("math", None, None),
        };
        ErrorEntry {
            kind: kind.to_string(),
            message: self.to_string(),
            line,
            column,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "foliation-lab",
    version,
    about = "Exact computations with plane foliations"
)]
pub struct Cli {
    /// Input document (JSON); `-` reads standard input.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Depth guard for reductions of singularities.
    #[arg(long, global = true)]
    pub max_depth: Option<u32>,
    /// Name of the curve to use when the input declares several.
    #[arg(long, global = true)]
    pub curve: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate the foliation.
    Check,
    /// Test whether a curve is invariant.
    Invariant,
    /// One blow-up at the basepoint, in one chart.
    Blowup {
        #[arg(long)]
        chart: Option<u8>,
    },
    /// Dicriticity of the germ at the basepoint.
    Dicritical {
        /// Compute the whole reduction instead of stopping at the first
        /// non-invariant divisor.
        #[arg(long)]
        full_tree: bool,
    },
    /// Reduction of singularities at the basepoint.
    Reduce,
    /// Build ω/f and test whether it is logarithmic.
    Logform,
    /// Test whether ω/f is closed.
    Closed,
    /// The extremal-degree pipeline for a foliation of ℙ² and a curve.
    Extremal,
    /// Divide ω by an invariant curve h: ω = a dh + h η.
    Divide,
    /// Rational first integral h / a^deg(h) for an invariant h of degree d + 1.
    FirstIntegral,
    /// Built-in examples.
    Demo {
        #[command(subcommand)]
        which: Demo,
    },
}

#[derive(Debug, Subcommand)]
pub enum Demo {
    /// x dy - y dx with f = x^4 + y^4.
    Radial,
    /// The three-line family with residues alpha, beta, gamma.
    Cdf {
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        beta: String,
        #[arg(long, default_value = "3", allow_hyphen_values = true)]
        gamma: String,
    },
    /// Degree one foliation with first integral (z0 z1 + z2^2) / z0^2.
    ExtremalD1,
}

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// What a command computed: the report and whether its verdict is undecided.
pub struct Computed {
    pub report: Report,
    pub unknown: bool,
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Check => "check".into(),
        Command::Invariant => "invariant".into(),
        Command::Blowup { .. } => "blowup".into(),
        Command::Dicritical { .. } => "dicritical".into(),
        Command::Reduce => "reduce".into(),
        Command::Logform => "logform".into(),
        Command::Closed => "closed".into(),
        Command::Extremal => "extremal".into(),
        Command::Divide => "divide".into(),
        Command::FirstIntegral => "first-integral".into(),
        Command::Demo { which } => match which {
            Demo::Radial => "demo radial".into(),
            Demo::Cdf { .. } => "demo cdf".into(),
            Demo::ExtremalD1 => "demo extremal-d1".into(),
        },
    }
}

fn error_outcome(command: &str, err: &CliError, format: Format) -> Outcome {
    let mut r = Report::new(command);
    r.errors.push(err.entry());
    // errors always go out as JSON on stderr; text mode adds a readable line
    let mut stderr = r.to_json();
    if format == Format::Text {
        stderr.push_str(&format!("error: {err}\n"));
    }
    Outcome {
        code: EXIT_INPUT,
        stdout: String::new(),
        stderr,
    }
}

/// Runs the tool on `argv` (including the program name) with the given
/// value of the depth environment variable.
pub fn run_with_env<I, T>(argv: I, env_depth: Option<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => {
                    let mut o =
                        error_outcome("", &CliError::Usage(e.kind().to_string()), Format::Json);
                    o.stderr.push_str(&e.to_string());
                    o
                }
            };
        }
    };
    let name = command_name(&cli.command);
    match commands::execute(&cli, env_depth) {
        Ok(c) => Outcome {
            code: if c.unknown { EXIT_UNKNOWN } else { EXIT_OK },
            stdout: match cli.format {
                Format::Json => c.report.to_json(),
                Format::Text => c.report.to_text(),
            },
            stderr: String::new(),
        },
        Err(e) => error_outcome(&name, &e, cli.format),
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_env(argv, std::env::var(MAX_DEPTH_ENV).ok())
}
