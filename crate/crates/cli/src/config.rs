use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::ValueEnum;
use num_complex::Complex64;
use serde::Serialize;
use unruh_core::rindler::auto_cutoff;
use unruh_core::teleport::DEFAULT_QUADRATURE_POINTS;
use unruh_core::{InputState, Outcome, SqueezeParam};

use crate::error::CliError;

pub const DEFAULT_R_MIN: f64 = 0.0;
pub const DEFAULT_R_MAX: f64 = 3.0;
pub const DEFAULT_R_STEP: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    FidelitySweep,
    EntropySweep,
    GainSweep,
    StateDump,
    Convert,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::FidelitySweep => "fidelity-sweep",
            Command::EntropySweep => "entropy-sweep",
            Command::GainSweep => "gain-sweep",
            Command::StateDump => "state-dump",
            Command::Convert => "convert",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
}

/// Fock cutoff: fixed, or chosen from the tail rule at the largest `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutoffChoice {
    Auto,
    Fixed(usize),
}

impl FromStr for CutoffChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(CutoffChoice::Auto);
        }
        s.parse::<usize>()
            .map(CutoffChoice::Fixed)
            .map_err(|_| format!("cutoff must be `auto` or a positive integer, got `{s}`"))
    }
}

impl Serialize for CutoffChoice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            CutoffChoice::Auto => s.serialize_str("auto"),
            CutoffChoice::Fixed(n) => s.serialize_u64(*n as u64),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum DumpProvenance {
    Analytic,
    Numeric,
}

/// Inputs for `state-dump`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DumpConfig {
    pub l: u8,
    pub m: u8,
    pub alpha: [f64; 2],
    pub beta: [f64; 2],
    pub r: f64,
    pub provenance: DumpProvenance,
}

impl DumpConfig {
    pub fn outcome(&self) -> Result<Outcome, CliError> {
        Outcome::new(self.l, self.m).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn input(&self) -> Result<InputState, CliError> {
        InputState::new(
            Complex64::new(self.alpha[0], self.alpha[1]),
            Complex64::new(self.beta[0], self.beta[1]),
        )
        .map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn squeeze(&self) -> Result<SqueezeParam, CliError> {
        SqueezeParam::from_r(self.r).map_err(|e| CliError::Config(e.to_string()))
    }
}

/// Inputs for `convert`; any subset may be given.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct ConvertConfig {
    pub r: Option<f64>,
    pub omega: Option<f64>,
    pub omega_r: Option<f64>,
    pub acceleration: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub r_min: f64,
    pub r_max: f64,
    pub r_step: f64,
    pub cutoff: CutoffChoice,
    pub quadrature_points: usize,
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dump: Option<DumpConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convert: Option<ConvertConfig>,
}

impl RunConfig {
    /// Sweep configuration with the default figure grid `r in [0, 3]`, step 0.05.
    pub fn sweep(command: Command) -> Self {
        RunConfig {
            command,
            r_min: DEFAULT_R_MIN,
            r_max: DEFAULT_R_MAX,
            r_step: DEFAULT_R_STEP,
            cutoff: CutoffChoice::Auto,
            quadrature_points: DEFAULT_QUADRATURE_POINTS,
            output_path: None,
            format: OutputFormat::Csv,
            dump: None,
            convert: None,
        }
    }

    pub fn with_grid(mut self, r_min: f64, r_max: f64, r_step: f64) -> Self {
        self.r_min = r_min;
        self.r_max = r_max;
        self.r_step = r_step;
        self
    }

    pub fn with_cutoff(mut self, cutoff: CutoffChoice) -> Self {
        self.cutoff = cutoff;
        self
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let finite = [self.r_min, self.r_max, self.r_step]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(CliError::Config("grid bounds must be finite".into()));
        }
        if self.r_min < 0.0 {
            return Err(CliError::Config(format!(
                "r-min must be nonnegative, got {}",
                self.r_min
            )));
        }
        if self.r_min > self.r_max {
            return Err(CliError::Config(format!(
                "r-min ({}) exceeds r-max ({})",
                self.r_min, self.r_max
            )));
        }
        if self.r_step <= 0.0 {
            return Err(CliError::Config(format!(
                "r-step must be positive, got {}",
                self.r_step
            )));
        }
        if self.quadrature_points < 3 || self.quadrature_points.is_multiple_of(2) {
            return Err(CliError::Config(format!(
                "quadrature-points must be odd and >= 3, got {}",
                self.quadrature_points
            )));
        }
        if let CutoffChoice::Fixed(n) = self.cutoff {
            if n < 2 {
                return Err(CliError::Config(format!("cutoff must be >= 2, got {n}")));
            }
        }
        Ok(())
    }

    /// Grid points `r_min + i * r_step` up to `r_max`, snapped to 1e-12 so
    /// accumulated rounding never drops or duplicates the last point.
    pub fn grid(&self) -> Vec<f64> {
        let span = (self.r_max - self.r_min) / self.r_step;
        let count = (span + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| {
                let r = self.r_min + i as f64 * self.r_step;
                (r * 1e12).round() / 1e12
            })
            .collect()
    }

    /// Cutoff for a run whose largest squeezing is `r_max`.
    pub fn resolve_cutoff(&self, r_max: f64) -> Result<usize, CliError> {
        match self.cutoff {
            CutoffChoice::Fixed(n) => Ok(n),
            CutoffChoice::Auto => Ok(auto_cutoff(&SqueezeParam::from_r(r_max)?)),
        }
    }
}
