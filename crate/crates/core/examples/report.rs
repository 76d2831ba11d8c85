//! Running the verification suites as a library and printing a CSV table.
use sdwave::cli::{execute, render, Command, Format, RunConfig};

fn main() -> sdwave::Result<()> {
    let config = RunConfig {
        dim: 1,
        gamma: 1.0,
        only: Some("rates".into()),
        ..RunConfig::default()
    };
    let report = execute(Command::Rates, &config)?;
    for r in &report.records {
        println!("{:<15} {:<24} {}", r.status.as_str(), r.id, r.anchor);
    }
    print!("{}", render(&report, Format::Csv)?);
    Ok(())
}
