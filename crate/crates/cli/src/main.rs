mod args;
mod commands;
mod error;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command, JobConfig};
use crate::commands::Output;
use crate::error::{CliError, EXIT_OK, EXIT_PARSE};

fn emit(job: Option<&JobConfig>, out: &Output) -> Result<(), CliError> {
    let mut text = match out {
        Output::Json(v) => serde_json::to_string_pretty(v).expect("values always serialize"),
        Output::Text(t) => t.trim_end().to_string(),
    };
    text.push('\n');
    match job.and_then(|j| j.output.as_ref()) {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            reason: e.to_string(),
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth reporting
            let _ = stdout.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn fail(job: Option<&JobConfig>, e: &CliError) -> i32 {
    eprintln!("tshadow: error: {e}");
    let record = Output::Json(serde_json::json!({ "error": e.record() }));
    if let Err(io) = emit(job, &record) {
        eprintln!("tshadow: error: {io}");
    }
    e.exit_code()
}

fn run(cli: &Cli) -> i32 {
    let job = match JobConfig::resolve(cli) {
        Ok(j) => j,
        Err(e) => return fail(None, &e),
    };
    let result = match &cli.command {
        Command::Shadow { .. } => commands::shadow(&job),
        Command::Fusion { .. } => commands::fusion(&job),
        Command::Qdim { .. } => commands::qdim(&job),
        Command::Det { .. } => commands::det(&job),
        Command::Regularize { .. } => commands::regularize(&job),
        Command::Holonomy { .. } => commands::holonomy(&job),
        Command::Validate { .. } => match commands::validate(&job) {
            Ok((report, status)) => {
                return match emit(Some(&job), &report) {
                    Ok(()) => status,
                    Err(e) => fail(None, &e),
                }
            }
            Err(e) => Err(e),
        },
    };
    match result.and_then(|out| emit(Some(&job), &out)) {
        Ok(()) => EXIT_OK,
        Err(e) => fail(Some(&job), &e),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(fail(None, &CliError::Usage(e.kind().to_string())) as u8);
        }
    };
    let code = run(&cli);
    debug_assert!(code == EXIT_OK || code >= EXIT_PARSE);
    ExitCode::from(code as u8)
}
