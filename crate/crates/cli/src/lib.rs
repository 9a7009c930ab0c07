//! Library side of the `wqed` command-line tool: scenario parsing, figure
//! datasets and the subcommands, so they can be driven from tests.

pub mod commands;
pub mod csv;
pub mod error;
pub mod figures;
pub mod scenario;

use std::path::{Path, PathBuf};

pub use error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Figure(String),
    Metrics,
    Optimize,
    Oracle,
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub config: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

/// Result of a run: the rendered CSV and where it should go.
#[derive(Debug)]
pub struct RunOutput {
    pub csv: String,
    pub destination: Option<PathBuf>,
    pub side_files: Vec<(PathBuf, String)>,
    pub warning: Option<CliError>,
}

fn read_scenario(path: Option<&Path>) -> CliResult<(scenario::Scenario, String)> {
    let path = path.ok_or_else(|| CliError::input("this command needs --config FILE"))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    let hash = commands::scenario_hash(&text);
    Ok((scenario::Scenario::parse(&text)?, hash))
}

/// Thread count: `WQED_THREADS` wins over `--threads`; zero or unset means
/// rayon's default.
pub fn thread_count(flag: Option<usize>) -> CliResult<Option<usize>> {
    match std::env::var("WQED_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(|n| (n > 0).then_some(n))
            .map_err(|_| CliError::input(format!("WQED_THREADS=`{v}` is not a thread count"))),
        Err(_) => Ok(flag.filter(|&n| n > 0)),
    }
}

pub fn run(command: &Command, opts: &RunOptions) -> CliResult<RunOutput> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count(opts.threads)? {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::input(format!("cannot start thread pool: {e}")))?;
    pool.install(|| {
        let (outcome, scenario_out) = match command {
            Command::Figure(id) => (commands::figure(id)?, None),
            other => {
                let (scn, hash) = read_scenario(opts.config.as_deref())?;
                let outcome = match other {
                    Command::Spectrum => commands::spectrum(&scn, &hash)?,
                    Command::Metrics => commands::metrics(&scn, &hash)?,
                    Command::Optimize => commands::optimize(&scn, &hash)?,
                    Command::Oracle => commands::oracle(&scn, &hash)?,
                    Command::Figure(_) => unreachable!(),
                };
                (outcome, scn.output.clone())
            }
        };
        Ok(RunOutput {
            csv: outcome.table.render(),
            destination: opts.out.clone().or(scenario_out),
            side_files: outcome.side_files,
            warning: outcome.warning,
        })
    })
}
