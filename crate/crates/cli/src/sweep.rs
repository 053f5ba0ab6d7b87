//! Parameter sweeps over the squeezing grid.

use rayon::prelude::*;
use serde::Serialize;
use unruh_core::entropy::info_gain;
use unruh_core::rindler::one_particle_tail_weight;
use unruh_core::teleport::{averaged_fidelity, averaged_fidelity_closed_form};
use unruh_core::SqueezeParam;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::format::csv_line;

pub const FIDELITY_HEADER: &str = "r,avg_fidelity,avg_fidelity_closed_form";
pub const ENTROPY_HEADER: &str = "r,S_pre,S_post,S_vac";
pub const GAIN_HEADER: &str = "r,dS_gain,dS_gain_tsm";

/// Quadrature and closed-form averages must agree this closely.
pub const FIDELITY_AGREEMENT: f64 = 1e-10;

/// Weight of a grid point's states that falls outside the cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailRecord {
    pub r: f64,
    pub tail: f64,
}

/// Row-oriented table keyed by `r`, in grid order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub header: &'static str,
    pub rows: Vec<Vec<f64>>,
    /// `None` when the quantity never touches a truncated space.
    pub cutoff: Option<usize>,
    pub tails: Vec<TailRecord>,
}

impl SweepResult {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.header.split(',').position(|h| h == name)?;
        Some(self.rows.iter().map(|row| row[idx]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * (self.rows.len() + 1));
        out.push_str(self.header);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&csv_line(row));
        }
        out
    }
}

fn params(cfg: &RunConfig) -> Result<Vec<SqueezeParam>, CliError> {
    cfg.validate()?;
    cfg.grid()
        .into_iter()
        .map(|r| SqueezeParam::from_r(r).map_err(CliError::from))
        .collect()
}

fn largest_r(grid: &[SqueezeParam]) -> f64 {
    grid.iter().map(|p| p.r()).fold(0.0, f64::max)
}

fn tails(grid: &[SqueezeParam], cutoff: usize) -> Vec<TailRecord> {
    grid.iter()
        .map(|p| TailRecord {
            r: p.r(),
            tail: one_particle_tail_weight(p, cutoff),
        })
        .collect()
}

pub fn run_fidelity_sweep(cfg: &RunConfig) -> Result<SweepResult, CliError> {
    let grid = params(cfg)?;
    let rows = grid
        .par_iter()
        .map(|p| -> Result<Vec<f64>, CliError> {
            let quad = averaged_fidelity(p, cfg.quadrature_points)?;
            let closed = averaged_fidelity_closed_form(p);
            if (quad - closed).abs() > FIDELITY_AGREEMENT {
                return Err(unruh_core::Error::Contract(format!(
                    "averaged fidelity at r = {}: quadrature {quad} vs closed form {closed}",
                    p.r()
                ))
                .into());
            }
            Ok(vec![p.r(), quad, closed])
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SweepResult {
        header: FIDELITY_HEADER,
        rows,
        cutoff: None,
        tails: Vec::new(),
    })
}

pub fn run_entropy_sweep(cfg: &RunConfig) -> Result<SweepResult, CliError> {
    let grid = params(cfg)?;
    let cutoff = cfg.resolve_cutoff(largest_r(&grid))?;
    let rows = grid
        .par_iter()
        .map(|p| -> Result<Vec<f64>, CliError> {
            let rep = info_gain(p, cutoff)?;
            Ok(vec![p.r(), rep.s_pre, rep.s_post, rep.s_vac])
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SweepResult {
        header: ENTROPY_HEADER,
        rows,
        cutoff: Some(cutoff),
        tails: tails(&grid, cutoff),
    })
}

pub fn run_gain_sweep(cfg: &RunConfig) -> Result<SweepResult, CliError> {
    let grid = params(cfg)?;
    let cutoff = cfg.resolve_cutoff(largest_r(&grid))?;
    let rows = grid
        .par_iter()
        .map(|p| -> Result<Vec<f64>, CliError> {
            let rep = info_gain(p, cutoff)?;
            Ok(vec![p.r(), rep.gain, rep.gain_tsm])
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SweepResult {
        header: GAIN_HEADER,
        rows,
        cutoff: Some(cutoff),
        tails: tails(&grid, cutoff),
    })
}
