//! Command-line front end: configuration, orchestration and report output.

pub mod config;
pub mod render;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::{ConfigError, Format, Job, RunConfig};
pub use report::{run, Command, RunReport};

/// Essential-norm bounds and spectral estimates for Hankel operators on
/// product domains.
#[derive(Parser, Debug)]
#[command(name = "essnorm", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
    /// Run configuration (JSON)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output format; overrides `output.format`
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Truncation degree N; overrides `truncation.degree`
    #[arg(long, global = true)]
    pub deg: Option<u32>,
    /// Comma-separated tail starts; overrides `truncation.tail_starts`
    #[arg(long, global = true, value_delimiter = ',')]
    pub tail_starts: Option<Vec<u32>>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Include wall-clock timings in the report
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum Cmd {
    /// Check harmonicity on the boundary disks
    CheckSymbol,
    /// Evaluate the lower and upper essential-norm bounds
    Bounds,
    /// Spectral bracket for the essential norm with the sandwich verdict
    Essnorm,
    /// Closed-form identity suite
    Verify,
    /// All of the above
    Report,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::CheckSymbol => Command::CheckSymbol,
            Cmd::Bounds => Command::Bounds,
            Cmd::Essnorm => Command::Essnorm,
            Cmd::Verify => Command::Verify,
            Cmd::Report => Command::Report,
        }
    }
}

fn execute(cli: &Cli) -> Result<(String, i32), ConfigError> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(n) = cli.deg {
        cfg.truncation.degree = n;
    }
    if let Some(t) = &cli.tail_starts {
        cfg.truncation.tail_starts = t.clone();
    }
    let format = cli.format.unwrap_or(cfg.output.format);
    let timings = cli.timings || cfg.output.timings;
    let job = cfg.resolve()?;
    let report = run(cli.command.into(), &job, timings)?;
    Ok((render::render(&report, format), report.exit_code()))
}

/// Parses `args`, runs the command and returns the process exit code:
/// 0 success, 1 rejected symbol or failed check, 2 configuration error.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok((text, code)) => {
            let written = match &cli.out {
                Some(p) => std::fs::write(p, &text).map_err(|e| format!("{}: {e}", p.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => code,
                Err(e) => {
                    eprintln!("error: {e}");
                    2
                }
            }
        }
        Err(e) => {
            eprintln!("{e}");
            2
        }
    }
}
