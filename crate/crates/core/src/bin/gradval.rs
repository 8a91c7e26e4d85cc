use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gradval::corpus::{self, CorpusError, Report, RunOptions};

#[derive(Parser)]
#[command(
    name = "gradval",
    version,
    about = "Value semigroups, graded extensions and toric ramification checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an instance file against its expected block
    Check {
        file: PathBuf,
        /// cover-check bound (monomial extensions) or degree bound (series)
        #[arg(long)]
        bound: Option<u32>,
        /// series truncation, replacing the instance's list
        #[arg(long)]
        truncation: Option<usize>,
        /// print the report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Run built-in examples: ex1, ex2, ex3, ex4, thm2_diag, thm2_det3 or all
    Examples {
        #[arg(default_value = "all")]
        name: String,
        #[arg(long)]
        json: bool,
    },
    /// Run the analyzer on seeded random monomial extensions
    Rand {
        #[arg(long)]
        dims: usize,
        #[arg(long)]
        max_entry: u32,
        #[arg(long)]
        count: usize,
        /// defaults to GRADVAL_SEED or the built-in seed
        #[arg(long)]
        seed: Option<u64>,
    },
}

const MISMATCH: u8 = 1;

fn fail(e: &CorpusError) -> ExitCode {
    eprintln!("gradval: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn emit(reports: &[Report], json: bool) {
    if json {
        let v = if reports.len() == 1 {
            serde_json::to_string_pretty(&reports[0])
        } else {
            serde_json::to_string_pretty(reports)
        };
        println!("{}", v.expect("report serializes"));
    } else {
        for r in reports {
            print!("{}", r.render_text());
        }
    }
}

fn status(reports: &[Report]) -> ExitCode {
    if reports.iter().all(Report::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(MISMATCH)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check {
            file,
            bound,
            truncation,
            json,
        } => {
            let opts = RunOptions {
                bound,
                truncation,
                seed: None,
            };
            let report = corpus::Instance::from_path(&file).and_then(|i| corpus::run_instance(&i, &opts));
            match report {
                Ok(r) => {
                    let out = [r];
                    emit(&out, json);
                    status(&out)
                }
                Err(e) => fail(&e),
            }
        }
        Command::Examples { name, json } => {
            let names: Vec<&str> = if name == "all" {
                corpus::EXAMPLE_NAMES.to_vec()
            } else {
                vec![name.as_str()]
            };
            let mut reports = Vec::with_capacity(names.len());
            for n in names {
                match corpus::run_example(n, &RunOptions::default()) {
                    Ok(r) => reports.push(r),
                    Err(e) => return fail(&e),
                }
            }
            emit(&reports, json);
            status(&reports)
        }
        Command::Rand {
            dims,
            max_entry,
            count,
            seed,
        } => {
            let seed = seed.unwrap_or_else(corpus::default_seed);
            match corpus::rand_suite(dims, max_entry, count, seed) {
                Ok(s) => {
                    println!("{}", serde_json::to_string_pretty(&s).expect("summary serializes"));
                    if s.failed == 0 {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(MISMATCH)
                    }
                }
                Err(e) => fail(&e),
            }
        }
    }
}
