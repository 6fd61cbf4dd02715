use std::process::ExitCode;

use clap::Parser;
use kspec_cli::{execute, Cli, CliError, Workspace};

fn write(path: &std::path::Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let mut ws = Workspace::with_builtins();
    for path in &cli.load {
        ws.load(path)?;
    }
    let outcome = execute(&ws, &cli.command)?;
    print!("{}", outcome.text);
    if let Some(path) = &cli.json {
        let mut json = serde_json::to_string_pretty(&outcome.json).expect("plain data");
        json.push('\n');
        write(path, &json)?;
    }
    if let Some(path) = &cli.dot {
        let dot = outcome
            .dot
            .as_ref()
            .ok_or_else(|| CliError::Argument("this command has no DOT output".into()))?;
        write(path, dot)?;
    }
    Ok(!outcome.refuted)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
