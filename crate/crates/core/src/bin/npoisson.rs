use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use npoisson::cli;
use npoisson::suites::{run_suite, SUITES};

/// Exact exterior calculus for generalized Poisson, Nambu, Jacobi and
/// Dirac brackets.
#[derive(Parser)]
#[command(name = "npoisson", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tasks of a scenario file.
    Run {
        scenario: PathBuf,
        /// Tab-separated output, one line per task.
        #[arg(long)]
        machine: bool,
        /// Run a single task.
        #[arg(long)]
        only: Option<String>,
    },
    /// Run a built-in identity suite (`all` runs every suite).
    Verify {
        suite: String,
        /// Size parameter; its meaning depends on the suite.
        #[arg(long)]
        n: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match cli.command {
        Command::Run { scenario, machine, only } => {
            let parsed = match cli::parse_scenario_file(&scenario) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {}: {e}", scenario.display());
                    return ExitCode::from(2);
                }
            };
            let report = match cli::run(&parsed, only.as_deref()) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            print!("{}", if machine { report.to_machine() } else { report.to_text() });
            ExitCode::from(if report.success() { 0 } else { 1 })
        }
        Command::Verify { suite, n } => {
            let names: Vec<&str> = if suite == "all" {
                SUITES.iter().map(|(s, _)| *s).collect()
            } else {
                vec![suite.as_str()]
            };
            let mut ok = true;
            for name in names {
                match run_suite(name, n) {
                    Ok(r) => {
                        print!("{r}");
                        ok &= r.passed();
                    }
                    Err(e) => {
                        eprintln!("error: {e}");
                        eprintln!("suites: all, {}", SUITES.iter().map(|(s, _)| *s).collect::<Vec<_>>().join(", "));
                        return ExitCode::from(2);
                    }
                }
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
    }
}
