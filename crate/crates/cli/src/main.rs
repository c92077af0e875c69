mod args;
mod commands;
mod error;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::CliError;

fn run(cli: &Cli) -> Result<(), CliError> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build_global()
            .map_err(|e| CliError::new("thread_pool", e.to_string()))?;
    }
    let out = match &cli.command {
        Command::Centrality(a) => commands::centrality_cmd(a),
        Command::Check(a) => commands::check_cmd(a),
        Command::Census(a) => commands::census_cmd(a),
        Command::Axiom(a) => commands::axiom_cmd(a),
        Command::Predict(a) => commands::predict_cmd(a),
        Command::Truncated(a) => commands::truncated_cmd(a),
        Command::Learn(a) => commands::learn_cmd(a),
        Command::Dynamics(a) => commands::dynamics_cmd(a),
        Command::ExportDot(a) => commands::export_dot_cmd(a),
    }?;
    commands::write_output(&out, cli.out.as_ref())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version go to stdout with status 0; usage errors exit 2.
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(1)
        }
    }
}
