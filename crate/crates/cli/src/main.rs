//! `probit-design`: regenerate the orbit tables, run the verification
//! suites and compute designs.

mod design;
mod output;
mod tables;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use probit_design::verify::{run_suite, Report, Suite, VerifyOptions};

use crate::design::DesignConfig;
use crate::output::{finish_csv, fixed, Format, Sink};
use crate::tables::{OrbitTable, TableArgs};

#[derive(Debug, Parser)]
#[command(
    name = "probit-design",
    version,
    about = "Locally D-optimal designs for multinomial probit choice experiments"
)]
struct Cli {
    /// Output format; tables default to csv, verify and design to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write to a file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print every number in full precision in CSV output.
    #[arg(long, global = true)]
    full_precision: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimal paired-comparison settings z* and Phi(z*) against K.
    Table1 {
        #[arg(long, default_value_t = 10)]
        kmax: usize,
    },
    /// Orbit table for choice sets of three (2: uniform designs, 3: Model I,
    /// 4: Model II with sharp decision).
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
        id: u8,
        #[arg(long)]
        kmax: usize,
        /// Defaults to 2 for table 2 and 1 otherwise.
        #[arg(long)]
        kmin: Option<usize>,
        #[arg(long)]
        sigma_t_sq: Option<f64>,
        /// Also list orbits that leave some attributes constant.
        #[arg(long)]
        partial: bool,
    },
    /// Numerical verification; exits nonzero if any check fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        mc_cases: Option<usize>,
        #[arg(long)]
        mc_samples: Option<u64>,
        #[arg(long)]
        identity_cases: Option<usize>,
    },
    /// Optimal design for a configuration read from --config and flags.
    Design {
        /// JSON file with the same fields as the flags (snake_case).
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        flags: DesignConfig,
    },
}

fn write_report(report: &Report, format: Format, full: bool, sink: &mut Sink) -> Result<()> {
    match format {
        Format::Json => {
            #[derive(serde::Serialize)]
            struct Out<'a> {
                passed: bool,
                checks: &'a [probit_design::verify::Check],
            }
            sink.json(&Out { passed: report.passed(), checks: &report.checks })
        }
        Format::Csv => {
            let mut w = sink.csv();
            w.write_record(["suite", "name", "passed", "observed", "relation", "bound"])?;
            for c in &report.checks {
                let num = |x: f64| if full { fixed(x, 0, true) } else { format!("{x:.6e}") };
                w.write_record([
                    c.suite.clone(),
                    c.name.clone(),
                    c.passed.to_string(),
                    num(c.observed),
                    c.relation.to_string(),
                    num(c.bound),
                ])?;
            }
            finish_csv(w)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let full = cli.full_precision;
    let mut sink = Sink::open(cli.out.as_deref())?;
    match cli.command {
        Command::Table1 { kmax } => {
            tables::table1(kmax, cli.format.unwrap_or(Format::Csv), full, &mut sink)?;
        }
        Command::Table { id, kmax, kmin, sigma_t_sq, partial } => {
            let table = OrbitTable::from_id(id)?;
            let args = TableArgs { table, kmin: kmin.unwrap_or(table.default_kmin()), kmax, sigma_t_sq, partial };
            tables::orbit_table(&args, cli.format.unwrap_or(Format::Csv), full, &mut sink)?;
        }
        Command::Verify { suite, seed, mc_cases, mc_samples, identity_cases } => {
            let d = VerifyOptions::default();
            let opts = VerifyOptions {
                seed,
                mc_cases: mc_cases.unwrap_or(d.mc_cases),
                mc_samples: mc_samples.unwrap_or(d.mc_samples),
                identity_cases: identity_cases.unwrap_or(d.identity_cases),
            };
            let report = run_suite(suite, &opts)?;
            write_report(&report, cli.format.unwrap_or(Format::Json), full, &mut sink)?;
            return Ok(report.passed());
        }
        Command::Design { config, flags } => {
            let base = match config {
                Some(p) => DesignConfig::load(&p)?,
                None => DesignConfig::default(),
            };
            design::run(&flags.over(base), cli.format.unwrap_or(Format::Json), full, &mut sink)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("probit-design: some checks failed");
            ExitCode::FAILURE
        }
        Err(e) => {
            eprintln!("probit-design: {e:#}");
            ExitCode::FAILURE
        }
    }
}
