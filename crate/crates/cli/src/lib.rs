//! Command-line front end: sweeps over the squeezing grid, state dumps and
//! unit conversion, each emitting CSV (or plain text) plus a one-line JSON
//! run manifest.

pub mod args;
pub mod config;
pub mod convert;
pub mod dump;
pub mod error;
pub mod format;
pub mod sweep;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

pub use config::{Command, CutoffChoice, RunConfig};
pub use error::CliError;
pub use sweep::{SweepResult, TailRecord};

/// Record of one run, written as a single JSON line.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub command: Command,
    pub config: RunConfig,
    pub cutoff: Option<usize>,
    pub truncation_tails: Vec<TailRecord>,
    pub version: &'static str,
}

impl Manifest {
    pub fn to_json_line(&self) -> String {
        let mut line = serde_json::to_string(self).expect("manifest fields serialize");
        line.push('\n');
        line
    }
}

/// Output of a run: the primary text and its manifest.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub body: String,
    pub manifest: Manifest,
}

pub fn execute(cfg: &RunConfig) -> Result<RunOutput, CliError> {
    cfg.validate()?;
    let manifest = |cutoff, truncation_tails| Manifest {
        command: cfg.command,
        config: cfg.clone(),
        cutoff,
        truncation_tails,
        version: unruh_core::VERSION,
    };
    let from_sweep = |res: SweepResult| RunOutput {
        body: res.to_csv(),
        manifest: manifest(res.cutoff, res.tails),
    };
    Ok(match cfg.command {
        Command::FidelitySweep => from_sweep(sweep::run_fidelity_sweep(cfg)?),
        Command::EntropySweep => from_sweep(sweep::run_entropy_sweep(cfg)?),
        Command::GainSweep => from_sweep(sweep::run_gain_sweep(cfg)?),
        Command::StateDump => {
            let d = cfg
                .dump
                .as_ref()
                .ok_or_else(|| CliError::Config("state-dump needs a state configuration".into()))?;
            let out = dump::run_state_dump(d, cfg.cutoff)?;
            RunOutput {
                manifest: manifest(
                    Some(out.state.cutoff),
                    vec![TailRecord { r: d.r, tail: out.tail }],
                ),
                body: out.text,
            }
        }
        Command::Convert => {
            let c = cfg
                .convert
                .as_ref()
                .ok_or_else(|| CliError::Config("convert needs an input quantity".into()))?;
            RunOutput {
                body: convert::run_convert(c)?.render(),
                manifest: manifest(None, Vec::new()),
            }
        }
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Run and write the body to `cfg.output_path` (or stdout) and the manifest
/// to `manifest_path` (or stderr).
pub fn run(cfg: &RunConfig, manifest_path: Option<&Path>) -> Result<(), CliError> {
    let out = execute(cfg)?;
    match &cfg.output_path {
        Some(path) => write_file(path, &out.body)?,
        None => std::io::stdout()
            .lock()
            .write_all(out.body.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            })?,
    }
    let line = out.manifest.to_json_line();
    match manifest_path {
        Some(path) => write_file(path, &line),
        None => std::io::stderr()
            .lock()
            .write_all(line.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stderr>"),
                source,
            }),
    }
}
