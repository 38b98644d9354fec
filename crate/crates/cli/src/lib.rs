//! Batch front end over `supamp-core`: each run is a [`RunConfig`] (from
//! flags or a TOML file) that produces one report document.

mod commands;
mod config;
mod render;

use clap::Parser;
use serde_json::json;

pub use commands::{run_command, Report, Table};
pub use config::{
    Cli, CommandKind, OutputFormat, RatArg, RunConfig, HEIGHT_RANGE, MAX_Q, P_RANGE, SCHEMA_VERSION,
};
pub use render::render;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] supamp_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use supamp_core::Error as E;
        match self {
            CliError::Input(_) => 2,
            CliError::Core(E::Validation(_) | E::Unsupported(_) | E::Infeasible(_)) => 2,
            CliError::Core(E::Consistency(_)) => 3,
            CliError::Core(E::Numeric(_) | E::Resource(_)) => 4,
        }
    }

    fn kind(&self) -> &'static str {
        use supamp_core::Error as E;
        match self {
            CliError::Input(_) | CliError::Core(E::Validation(_)) => "validation",
            CliError::Core(E::Unsupported(_)) => "unsupported",
            CliError::Core(E::Infeasible(_)) => "infeasible",
            CliError::Core(E::Consistency(_)) => "consistency",
            CliError::Core(E::Numeric(_)) => "numeric",
            CliError::Core(E::Resource(_)) => "resource",
        }
    }
}

pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    run_command(cfg)
}

/// What a process invocation prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parse arguments, run, render. Errors in JSON mode also produce a JSON
/// document so that scripted callers always get something to parse.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let json_requested = cli.json || cli.output == Some(OutputFormat::Json);
    let cfg = match cli.into_config() {
        Ok(c) => c,
        Err(e) => return failure(&e, None, json_requested),
    };
    match run(&cfg) {
        Ok(report) => Outcome {
            code: report.exit_code,
            stdout: render(&report, cfg.output()),
            stderr: if report.exit_code == 0 {
                String::new()
            } else {
                format!("{}: report flags a failed check\n", cfg.command.name())
            },
        },
        Err(e) => failure(&e, Some(cfg.command), json_requested || cfg.output() == OutputFormat::Json),
    }
}

fn failure(e: &CliError, cmd: Option<CommandKind>, as_json: bool) -> Outcome {
    let code = e.exit_code();
    let stdout = if as_json {
        render::json(&json!({
            "schema_version": SCHEMA_VERSION,
            "command": cmd.map(|c| c.name()),
            "error": { "kind": e.kind(), "message": e.to_string(), "exit_code": code },
        }))
    } else {
        String::new()
    };
    Outcome { code, stdout, stderr: format!("error: {e}\n") }
}
