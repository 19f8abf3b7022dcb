//! `quadzeta`: class-number tables, single-field reports and verification
//! suites for the fields `Q(sqrt(9m^2 + 4m))`.
//!
//! Exit status: 0 on success, 1 when a verification check fails, 2 on
//! invalid input.

mod config;
mod field;
mod report;
mod verify;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::json;

use quadzeta::field::QuadField;
use quadzeta::forms::{class_number, parse_corpus, shipped_rows, TableRow};

use config::{ConfigError, Format, SweepConfig};
use report::{int_json, render_checks, Check};
use verify::Suite;

#[derive(Parser)]
#[command(
    name = "quadzeta",
    version,
    about = "Zeta values, units and class numbers of Q(sqrt(9m^2 + 4m))"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit rows m,D,h for odd m in range with D square-free.
    Table(SweepArgs),
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        sweep: SweepArgs,
        /// Class-number corpus (CSV m,D,h); defaults to the shipped one.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// JSON report for one field, given by m or by D.
    Field {
        #[arg(
            long,
            allow_hyphen_values = true,
            conflicts_with = "d",
            required_unless_present = "d"
        )]
        m: Option<BigInt>,
        #[arg(long)]
        d: Option<BigInt>,
    },
}

#[derive(Args, Clone)]
struct SweepArgs {
    #[arg(long, allow_hyphen_values = true)]
    min: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    max: Option<i64>,
    /// Keep only m with this residue mod 3.
    #[arg(long)]
    mod3: Option<u8>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Worker threads; output does not depend on this.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl SweepArgs {
    fn config(&self, default: (i64, i64)) -> Result<SweepConfig, ConfigError> {
        SweepConfig::new(
            self.min.unwrap_or(default.0),
            self.max.unwrap_or(default.1),
            self.mod3,
            self.jobs,
            self.format,
        )
    }
}

enum Failure {
    Usage(String),
    Checks,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = match cli.command {
        Command::Table(args) => cmd_table(&args, &mut out),
        Command::Verify {
            suite,
            sweep,
            corpus,
        } => cmd_verify(suite, &sweep, corpus, &mut out),
        Command::Field { m, d } => cmd_field(m, d, &mut out),
    };
    let mut stdout = std::io::stdout().lock();
    // a closed pipe is not an error worth reporting
    let _ = stdout.write_all(out.as_bytes());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn usage(e: impl ToString) -> Failure {
    Failure::Usage(e.to_string())
}

fn table_rows(config: &SweepConfig) -> Result<Vec<TableRow>, Failure> {
    let rows: Vec<Option<Result<TableRow, String>>> = config.pool().install(|| {
        config
            .parameters()
            .par_iter()
            .map(|&m| {
                let m = BigInt::from(m);
                let field = QuadField::family(m.clone()).ok()?;
                let d = field.d().clone();
                Some(
                    class_number(&field)
                        .map(|h| TableRow { m, d, h })
                        .map_err(|e| e.to_string()),
                )
            })
            .collect()
    });
    rows.into_iter()
        .flatten()
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::Usage)
}

fn cmd_table(args: &SweepArgs, out: &mut String) -> Result<(), Failure> {
    let config = args.config((-160, 160)).map_err(usage)?;
    let rows = table_rows(&config)?;
    match config.format {
        Format::Csv => {
            out.push_str("m,D,h\n");
            for r in &rows {
                out.push_str(&format!("{},{},{}\n", r.m, r.d, r.h));
            }
        }
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|r| json!({ "m": int_json(&r.m), "D": int_json(&r.d), "h": int_json(&r.h) }))
                .collect();
            out.push_str(&(serde_json::to_string_pretty(&items).expect("serializable") + "\n"));
        }
    }
    Ok(())
}

fn load_corpus(path: Option<PathBuf>) -> Result<Vec<TableRow>, Failure> {
    match path {
        None => shipped_rows().map_err(usage),
        Some(p) => {
            let text =
                fs::read_to_string(&p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            parse_corpus(&text).map_err(|e| usage(format!("{}: {e}", p.display())))
        }
    }
}

fn run_suite(suite: Suite, args: &SweepArgs, rows: &[TableRow]) -> Result<Vec<Check>, Failure> {
    let config = args.config(suite.default_range()).map_err(usage)?;
    Ok(match suite {
        Suite::Dedekind => verify::dedekind(&config),
        Suite::Props => verify::props(&config),
        Suite::Units => verify::units(&config),
        Suite::Tables => verify::tables(&config, rows),
        Suite::Theorems => verify::theorems(&config),
        Suite::Pell => verify::pell(&config),
        Suite::All => {
            let mut all = Vec::new();
            for s in Suite::EACH {
                all.extend(run_suite(s, args, rows)?);
            }
            all
        }
    })
}

fn cmd_verify(
    suite: Suite,
    args: &SweepArgs,
    corpus: Option<PathBuf>,
    out: &mut String,
) -> Result<(), Failure> {
    let needs_rows = matches!(suite, Suite::Tables | Suite::All);
    let rows = if needs_rows {
        load_corpus(corpus)?
    } else {
        Vec::new()
    };
    let checks = run_suite(suite, args, &rows)?;
    out.push_str(&render_checks(&checks, args.format));
    let failed = checks.iter().filter(|c| !c.ok).count();
    eprintln!("{} checks, {failed} failed", checks.len());
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

fn cmd_field(m: Option<BigInt>, d: Option<BigInt>, out: &mut String) -> Result<(), Failure> {
    let field = match (m, d) {
        (Some(m), _) => QuadField::family(m),
        (None, Some(d)) => QuadField::new(d),
        (None, None) => return Err(usage("one of --m or --d is required")),
    }
    .map_err(usage)?;
    let report = field::field_report(&field).map_err(usage)?;
    out.push_str(&(serde_json::to_string_pretty(&report).expect("serializable") + "\n"));
    Ok(())
}
