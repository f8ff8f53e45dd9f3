use std::process::ExitCode;

use clap::Parser;

use hombound_cli::{render, render_error, run, Cli, CliError, RunConfig, CAPS_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = cli.command.name();
    let env_caps = std::env::var(CAPS_ENV).ok();
    let outcome = RunConfig::from_cli(cli, env_caps.as_deref()).and_then(|config| {
        let report = run(&config)?;
        if config.verbosity > 0 {
            eprintln!("{}", report.summary);
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
        }
        let text = render(&report);
        match &config.out {
            Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source }),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprint!("{}", render_error(command, &err));
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
