//! Command-line front end for the `torsec` rank and q-expansion engines.
//!
//! Exit codes: 0 all checks passed, 1 a cross-check failed, 2 usage error,
//! 3 partial result (search cap hit or inconclusive check), 4 runtime error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use torsec::check::Check;

pub mod commands;
pub mod config;
pub mod goldens;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARTIAL: i32 = 3;
pub const EXIT_RUNTIME: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(UsageError),
    Engine(torsec::Error),
}

impl From<UsageError> for CliError {
    fn from(e: UsageError) -> Self {
        CliError::Usage(e)
    }
}

impl From<torsec::Error> for CliError {
    fn from(e: torsec::Error) -> Self {
        CliError::Engine(e)
    }
}

#[derive(Parser, Debug)]
#[command(name = "torsec", version, about = "Ranks of torsion sections and exceptional polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// c(E, C) and the vanishing characters for every subgroup of one curve.
    Rank(RankArgs),
    /// Codimension table over a finite field.
    Survey(SurveyArgs),
    /// Exceptional polynomials from q-expansions, with the invariant table.
    Qexp(QexpArgs),
    /// Component valuations on an e-gon from intersection counts.
    Ngon(NgonArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// key = value file; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct RankArgs {
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub p: Option<u64>,
    /// j-invariant: an integer, or coordinates `c0:c1:...` in F_{p^k}.
    #[arg(long, allow_hyphen_values = true)]
    pub j: Option<String>,
    /// Weierstrass coefficients a1,a2,a3,a4,a6 (each an integer or `c0:c1:...`).
    #[arg(long, allow_hyphen_values = true)]
    pub curve: Option<String>,
    /// `auto` for all N + 1 subgroups, or an index into the label order.
    #[arg(long)]
    pub subgroup: Option<String>,
    #[arg(long)]
    pub ext_cap: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone, Default)]
pub struct SurveyArgs {
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub p: Option<u64>,
    /// `all`, `j=<e1>,<e2>,...` or `exceptional`.
    #[arg(long)]
    pub scope: Option<String>,
    #[arg(long)]
    pub ext_cap: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// q-precision for the exceptional scope.
    #[arg(long)]
    pub prec: Option<i64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone, Default)]
pub struct QexpArgs {
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub prec: Option<i64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone, Default)]
pub struct NgonArgs {
    #[arg(long)]
    pub e: Option<usize>,
    /// Comma-separated counts r_0,...,r_{e-1}.
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// A rendered report and the checks that decide the exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub json: String,
    pub text: String,
    pub checks: Vec<Check>,
    pub default_format: Format,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(Check::failed) {
            EXIT_CHECK_FAILED
        } else if self.checks.iter().all(Check::ok) {
            EXIT_OK
        } else {
            EXIT_PARTIAL
        }
    }
}

fn error_code(e: &CliError) -> i32 {
    match e {
        CliError::Usage(_) => EXIT_USAGE,
        CliError::Engine(torsec::Error::SearchCap(_)) => EXIT_PARTIAL,
        CliError::Engine(torsec::Error::InvalidInput(_) | torsec::Error::DimensionMismatch(_)) => EXIT_USAGE,
        CliError::Engine(_) => EXIT_RUNTIME,
    }
}

fn dispatch(cmd: &Command) -> Result<(Outcome, OutputArgs, config::Config), CliError> {
    let output = match cmd {
        Command::Rank(a) => &a.output,
        Command::Survey(a) => &a.output,
        Command::Qexp(a) => &a.output,
        Command::Ngon(a) => &a.output,
    };
    let cfg = config::Config::load(output.config.as_deref())?;
    let outcome = match cmd {
        Command::Rank(a) => commands::rank(a, &cfg)?,
        Command::Survey(a) => commands::survey(a, &cfg)?,
        Command::Qexp(a) => commands::qexp(a, &cfg)?,
        Command::Ngon(a) => commands::ngon(a, &cfg)?,
    };
    Ok((outcome, output.clone(), cfg))
}

/// Parse `args`, run, write the report, and return the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(rendered.as_bytes()) } else { stdout.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let (outcome, output, cfg) = match dispatch(&cli.command) {
        Ok(v) => v,
        Err(e) => {
            let msg = match &e {
                CliError::Usage(u) => format!("usage error: {u}"),
                CliError::Engine(x) => format!("error: {x}"),
            };
            let _ = writeln!(stderr, "{msg}");
            return error_code(&e);
        }
    };
    let format = match cfg.pick(output.format, "format") {
        Ok(f) => f.unwrap_or(outcome.default_format),
        Err(u) => {
            let _ = writeln!(stderr, "usage error: {u}");
            return EXIT_USAGE;
        }
    };
    let body = match format {
        Format::Json => format!("{}\n", outcome.json),
        Format::Text => outcome.text.clone(),
    };
    let out: Option<PathBuf> = output.out.clone().or_else(|| cfg.get("out").map(PathBuf::from));
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &body) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return EXIT_RUNTIME;
            }
            let _ = writeln!(stderr, "wrote {}", path.display());
        }
        None => {
            let _ = stdout.write_all(body.as_bytes());
        }
    }
    outcome.exit_code()
}
