//! Rob's conditional density matrix as banded CSV.

use std::fmt::Write;

use unruh_core::rindler::{auto_cutoff, one_particle_tail_weight};
use unruh_core::teleport::{fidelity_numeric, outcome_coefficients, rob_state_analytic, rob_state_numeric};
use unruh_core::RobState;

use crate::config::{CutoffChoice, DumpConfig, DumpProvenance};
use crate::error::CliError;
use crate::format::format_value;

pub const DUMP_HEADER: &str = "row,col,re,im";

/// A rendered dump together with the state it describes.
#[derive(Debug, Clone)]
pub struct StateDump {
    pub state: RobState,
    pub fidelity: f64,
    pub tail: f64,
    pub text: String,
}

pub fn run_state_dump(dump: &DumpConfig, cutoff: CutoffChoice) -> Result<StateDump, CliError> {
    let outcome = dump.outcome()?;
    let input = dump.input()?;
    let p = dump.squeeze()?;
    let cutoff = match cutoff {
        CutoffChoice::Auto => auto_cutoff(&p),
        CutoffChoice::Fixed(n) if n >= 2 => n,
        CutoffChoice::Fixed(n) => {
            return Err(CliError::Config(format!("cutoff must be >= 2, got {n}")))
        }
    };
    let coeffs = outcome_coefficients(outcome, &input);
    let state = match dump.provenance {
        DumpProvenance::Analytic => rob_state_analytic(&coeffs, &p, cutoff)?,
        DumpProvenance::Numeric => rob_state_numeric(&coeffs, &input, &p, cutoff)?,
    };
    let fidelity = fidelity_numeric(&state, &coeffs)?;
    let tail = one_particle_tail_weight(&p, cutoff);

    let mut text = String::new();
    let mut meta = |key: &str, value: String| {
        let _ = writeln!(text, "# {key}={value}");
    };
    meta("l", outcome.l().to_string());
    meta("m", outcome.m().to_string());
    meta("r", format_value(p.r()));
    meta(
        "provenance",
        match dump.provenance {
            DumpProvenance::Analytic => "analytic",
            DumpProvenance::Numeric => "numeric",
        }
        .to_string(),
    );
    meta("cutoff", cutoff.to_string());
    meta("trace", format_value(state.rho.trace()));
    meta("fidelity", format_value(fidelity));
    meta("truncation_tail", format_value(tail));
    meta("norm_factor", format_value(state.norm_factor));
    if let Some(prob) = state.outcome_probability {
        meta("outcome_probability", format_value(prob));
    }
    text.push_str(DUMP_HEADER);
    text.push('\n');
    let m = state.rho.matrix();
    for i in 0..m.nrows() {
        for j in i.saturating_sub(1)..(i + 2).min(m.ncols()) {
            let z = m[(i, j)];
            let _ = writeln!(
                text,
                "{i},{j},{},{}",
                format_value(z.re),
                format_value(z.im)
            );
        }
    }
    Ok(StateDump {
        state,
        fidelity,
        tail,
        text,
    })
}
