use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use wqed_cli::{run, CliError, Command, RunOptions};

/// Single-photon scattering spectra, switch metrics and oracle checks.
#[derive(Parser, Debug)]
#[command(name = "wqed", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Scenario file (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output CSV path; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; WQED_THREADS overrides.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Transmission and reflection over the scenario's sweep.
    Spectrum,
    /// Regenerate the dataset behind one figure.
    Figure {
        /// lorentzian, lorentzian-loss, crw-band, crw-scatter,
        /// detuning-switch, chiral-switch or rabi-switch.
        id: String,
    },
    /// Efficiency, fidelity, contrast and extinction of a switch.
    Metrics,
    /// Maximize a switch objective over 1 to 3 free parameters.
    Optimize,
    /// Compare closed forms against the brute-force oracles.
    Oracle,
}

fn write_all(out: &wqed_cli::RunOutput) -> Result<(), CliError> {
    for (path, body) in &out.side_files {
        std::fs::write(path, body)
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?;
    }
    match &out.destination {
        Some(path) => std::fs::write(path, &out.csv)
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(out.csv.as_bytes())
            .map_err(CliError::from),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let command = match cli.command {
        Cmd::Spectrum => Command::Spectrum,
        Cmd::Figure { id } => Command::Figure(id),
        Cmd::Metrics => Command::Metrics,
        Cmd::Optimize => Command::Optimize,
        Cmd::Oracle => Command::Oracle,
    };
    let opts = RunOptions {
        config: cli.config,
        out: cli.out,
        threads: cli.threads,
    };
    let result = run(&command, &opts).and_then(|out| {
        write_all(&out)?;
        out.warning.map_or(Ok(()), Err)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wqed: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
