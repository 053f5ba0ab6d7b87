//! Command-line flags and their translation into a [`RunConfig`].

use std::path::PathBuf;

use clap::Parser;

use crate::config::{
    Command, ConvertConfig, CutoffChoice, DumpConfig, DumpProvenance, RunConfig, DEFAULT_R_MAX,
    DEFAULT_R_MIN, DEFAULT_R_STEP,
};
use crate::error::CliError;
use unruh_core::teleport::DEFAULT_QUADRATURE_POINTS;

#[derive(Debug, Parser)]
#[command(name = "unruh-teleport", version, about = "Teleportation fidelity and entropy sweeps for an accelerated receiver")]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,

    #[arg(long, default_value_t = DEFAULT_R_MIN, allow_negative_numbers = true)]
    pub r_min: f64,
    #[arg(long, default_value_t = DEFAULT_R_MAX, allow_negative_numbers = true)]
    pub r_max: f64,
    #[arg(long, default_value_t = DEFAULT_R_STEP, allow_negative_numbers = true)]
    pub r_step: f64,
    /// `auto` or a fixed number of Fock levels for region I and II.
    #[arg(long, default_value = "auto")]
    pub cutoff: CutoffChoice,
    #[arg(long, default_value_t = DEFAULT_QUADRATURE_POINTS)]
    pub quadrature_points: usize,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the JSON manifest here instead of stderr.
    #[arg(long)]
    pub manifest: Option<PathBuf>,

    /// Squeezing for `state-dump` and `convert`.
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<f64>,
    /// Dimensionless Rindler frequency for `convert`.
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    /// Rindler angular frequency in rad/s.
    #[arg(long, allow_negative_numbers = true)]
    pub omega_r: Option<f64>,
    /// Proper acceleration in m/s^2.
    #[arg(long, allow_negative_numbers = true)]
    pub acceleration: Option<f64>,

    #[arg(long, default_value_t = 0)]
    pub l: u8,
    #[arg(long, default_value_t = 0)]
    pub m: u8,
    #[arg(long, default_value_t = std::f64::consts::FRAC_1_SQRT_2, allow_negative_numbers = true)]
    pub alpha_re: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha_im: f64,
    #[arg(long, default_value_t = std::f64::consts::FRAC_1_SQRT_2, allow_negative_numbers = true)]
    pub beta_re: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub beta_im: f64,
    #[arg(long, value_enum, default_value_t = DumpProvenance::Analytic)]
    pub provenance: DumpProvenance,
}

impl Args {
    pub fn into_config(self) -> Result<(RunConfig, Option<PathBuf>), CliError> {
        let mut cfg = RunConfig::sweep(self.command)
            .with_grid(self.r_min, self.r_max, self.r_step)
            .with_cutoff(self.cutoff);
        cfg.quadrature_points = self.quadrature_points;
        cfg.output_path = self.out;
        match self.command {
            Command::StateDump => {
                let r = self
                    .r
                    .ok_or_else(|| CliError::Config("state-dump needs --r".into()))?;
                cfg.dump = Some(DumpConfig {
                    l: self.l,
                    m: self.m,
                    alpha: [self.alpha_re, self.alpha_im],
                    beta: [self.beta_re, self.beta_im],
                    r,
                    provenance: self.provenance,
                });
            }
            Command::Convert => {
                cfg.convert = Some(ConvertConfig {
                    r: self.r,
                    omega: self.omega,
                    omega_r: self.omega_r,
                    acceleration: self.acceleration,
                });
            }
            _ => {}
        }
        Ok((cfg, self.manifest))
    }
}
