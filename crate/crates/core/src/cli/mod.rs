//! Command-line front end: argument parsing, suite dispatch and report output.
//!
//! Exit codes: 0 when every record passes or is observational, 1 when any
//! check fails, 2 on configuration errors.

pub mod anchors;
pub mod config;
pub mod report;
pub mod suites;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{Format, RunConfig};
pub use report::{Provenance, Record, Report, Status, CSV_HEADER, SCHEMA};
pub use suites::{Runner, Suite, ALL_SUITES};

use crate::error::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "sdwave",
    version,
    about = "Fourier-space solution, expansion and decay checks for u_tt - Δu - Δu_t = 0"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Symbol oracle, branch continuity and expansion-term closed forms.
    Symbols,
    /// Remainder sweeps and rate fits for both propagators.
    Rates,
    /// Sandwich, optimality case split, kernel bounds, growth laws, quadrature checks.
    Bounds,
    /// All of the above in one document.
    Report,
}

impl Command {
    pub fn suites(self) -> &'static [Suite] {
        match self {
            Command::Symbols => &[Suite::Symbols],
            Command::Rates => &[Suite::Rates],
            Command::Bounds => &[Suite::Bounds],
            Command::Report => &ALL_SUITES,
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// JSON run configuration; flags override its fields.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    #[arg(long, global = true)]
    pub gamma: Option<f64>,
    /// Datum for u0: inline JSON or a path to a JSON file.
    #[arg(long, global = true)]
    pub u0: Option<String>,
    /// Datum for u1: inline JSON or a path to a JSON file.
    #[arg(long, global = true)]
    pub u1: Option<String>,
    #[arg(long, global = true)]
    pub tmin: Option<f64>,
    #[arg(long, global = true)]
    pub tmax: Option<f64>,
    #[arg(long, global = true)]
    pub tpoints: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Shorthand for `--format json`.
    #[arg(long, global = true, conflicts_with = "format")]
    pub json: bool,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Keep only checks whose id or anchor contains this string.
    #[arg(long, global = true)]
    pub only: Option<String>,
    /// Radial nodes per unit length for every grid.
    #[arg(long, global = true)]
    pub resolution: Option<f64>,
    /// Record wall-clock runtime per check.
    #[arg(long, global = true)]
    pub timings: bool,
}

impl Options {
    pub fn to_config(&self) -> Result<RunConfig> {
        let mut c = match &self.config {
            Some(p) => RunConfig::from_file(p)?,
            None => RunConfig::default(),
        };
        if let Some(v) = self.dim {
            c.dim = v;
        }
        if let Some(v) = self.gamma {
            c.gamma = v;
        }
        if let Some(v) = &self.u0 {
            c.u0 = config::parse_datum_arg(v)?;
        }
        if let Some(v) = &self.u1 {
            c.u1 = config::parse_datum_arg(v)?;
        }
        if let Some(v) = self.tmin {
            c.t_min = v;
        }
        if let Some(v) = self.tmax {
            c.t_max = v;
        }
        if let Some(v) = self.tpoints {
            c.t_points = v;
        }
        if let Some(v) = self.format {
            c.format = v;
        }
        if self.json {
            c.format = Format::Json;
        }
        if self.out.is_some() {
            c.out = self.out.clone();
        }
        if self.only.is_some() {
            c.only = self.only.clone();
        }
        if self.resolution.is_some() {
            c.resolution = self.resolution;
        }
        c.timings |= self.timings;
        c.validate()?;
        Ok(c)
    }
}

/// Runs the suites of `command` and assembles the report.
pub fn execute(command: Command, config: &RunConfig) -> Result<Report> {
    let mut runner = Runner::new(config)?;
    runner.run(command.suites())?;
    let (records, writer) = runner.finish();
    let report = Report::new(config.clone(), records);
    let body = match config.out {
        Some(_) => render(&report, config.format)?,
        None => String::new(),
    };
    writer.finish(config.out.as_deref(), &body)?;
    Ok(report)
}

pub fn render(report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Json => report.to_json(),
        Format::Csv => Ok(report.to_csv()),
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let config = match cli.opts.to_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("sdwave: {e}");
            return EXIT_CONFIG;
        }
    };
    match execute(cli.command, &config) {
        Ok(report) => {
            for r in &report.records {
                eprintln!("{:<15} {:<40} {}", r.status.as_str(), r.id, r.anchor);
            }
            if config.out.is_none() {
                match render(&report, config.format) {
                    Ok(body) => print!("{body}"),
                    Err(e) => {
                        eprintln!("sdwave: {e}");
                        return EXIT_CONFIG;
                    }
                }
            }
            report.exit_code()
        }
        Err(e @ Error::Config(_)) => {
            eprintln!("sdwave: {e}");
            EXIT_CONFIG
        }
        Err(e) => {
            eprintln!("sdwave: {e}");
            EXIT_FAIL
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_defaults() {
        let cli = Cli::try_parse_from([
            "sdwave",
            "rates",
            "--dim",
            "1",
            "--gamma",
            "1",
            "--csv-nope",
        ]);
        assert!(cli.is_err());
        let cli = Cli::try_parse_from([
            "sdwave", "--dim", "1", "rates", "--gamma", "1", "--format", "csv",
        ])
        .unwrap();
        assert_eq!(cli.command, Command::Rates);
        let c = cli.opts.to_config().unwrap();
        assert_eq!((c.dim, c.gamma, c.format), (1, 1.0, Format::Csv));
    }

    #[test]
    fn bad_dimension_is_a_config_error() {
        assert_eq!(
            main_with_args(["sdwave", "symbols", "--dim", "4"]),
            EXIT_CONFIG
        );
    }
}
