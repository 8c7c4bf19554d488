mod args;
mod commands;
mod report;
#[cfg(test)]
mod tests;

use std::ffi::OsString;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{CliError, Outcome};

/// What a run prints and how it exits. Output destined for `--out` has
/// already been written when this is returned.
pub struct Execution {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Execution {
    fn error(code: u8, msg: impl std::fmt::Display) -> Self {
        Execution {
            code,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let config = serde_json::to_value(&cli.command).expect("arguments serialize to JSON");
    match &cli.command {
        Command::Steady(a) => commands::steady(a, config),
        Command::Dynamics(a) => commands::dynamics(a, config),
        Command::Sweep(a) => commands::sweep(a, config),
        Command::Optimize(a) => commands::optimize_cmd(a, config),
        Command::Thresholds(a) => commands::thresholds(a, config),
    }
}

/// Exit codes: 0 success, 2 configuration error, 3 numerical failure.
pub fn execute<I, T>(argv: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // Help and version requests exit 0; usage errors exit 2.
            let text = e.render().to_string();
            let code = e.exit_code() as u8;
            return if code == 0 {
                Execution {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Execution {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let output = cli.command.output();

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = output.jobs {
        if jobs == 0 {
            return Execution::error(2, "--jobs must be at least 1");
        }
        pool = pool.num_threads(jobs);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => return Execution::error(3, format!("cannot start worker pool: {e}")),
    };

    let outcome = match pool.install(|| run(&cli)) {
        Ok(o) => o,
        Err(e) => return Execution::error(e.exit_code(), e.message()),
    };

    let text = outcome.report.render(output.format);
    let stdout = match &output.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                return Execution::error(2, format!("cannot write {}: {e}", path.display()));
            }
            String::new()
        }
        None => text,
    };
    match outcome.failure {
        Some(msg) => Execution {
            code: 3,
            stdout,
            stderr: format!("error: {msg}\n"),
        },
        None => Execution {
            code: 0,
            stdout,
            stderr: String::new(),
        },
    }
}

fn main() -> ExitCode {
    let ex = execute(std::env::args_os());
    if std::io::stdout().write_all(ex.stdout.as_bytes()).is_err() {
        return ExitCode::from(2);
    }
    eprint!("{}", ex.stderr);
    ExitCode::from(ex.code)
}
