//! Unit conversion between squeezing, Rindler frequency and acceleration.

use unruh_core::constants::SPEED_OF_LIGHT;
use unruh_core::rindler::{horizon_crossing_time, unruh_temperature};
use unruh_core::SqueezeParam;

use crate::config::ConvertConfig;
use crate::error::CliError;
use crate::format::format_value;

/// One derived quantity with its unit (empty when dimensionless).
#[derive(Debug, Clone, PartialEq)]
pub struct Quantity {
    pub name: &'static str,
    pub value: f64,
    pub unit: &'static str,
}

impl Quantity {
    fn new(name: &'static str, value: f64, unit: &'static str) -> Self {
        Quantity { name, value, unit }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Conversion {
    pub quantities: Vec<Quantity>,
    pub underflowed: bool,
}

impl Conversion {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.quantities.iter().find(|q| q.name == name).map(|q| q.value)
    }

    /// `name = value unit` lines.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for q in &self.quantities {
            out.push_str(q.name);
            out.push_str(" = ");
            out.push_str(&format_value(q.value));
            if !q.unit.is_empty() {
                out.push(' ');
                out.push_str(q.unit);
            }
            out.push('\n');
        }
        if self.underflowed {
            out.push_str("# r underflowed to 0 in double precision\n");
        }
        out
    }
}

fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Config(format!("{name} must be positive and finite, got {v}")))
    }
}

fn acceleration_quantities(a: f64, out: &mut Vec<Quantity>) -> Result<(), CliError> {
    out.push(Quantity::new("a", a, "m/s^2"));
    out.push(Quantity::new("a/c", a / SPEED_OF_LIGHT, "1/s"));
    out.push(Quantity::new("T_U", unruh_temperature(a)?, "K"));
    out.push(Quantity::new("horizon_time", horizon_crossing_time(a)?, "s"));
    Ok(())
}

/// Every parameterization determinable from the given inputs. Exactly one of
/// `r`, `omega`, or the physical pair may fix the squeezing; a lone
/// acceleration reports only the acceleration-derived quantities.
pub fn run_convert(cfg: &ConvertConfig) -> Result<Conversion, CliError> {
    let squeeze_inputs = [cfg.r.is_some(), cfg.omega.is_some()]
        .iter()
        .filter(|&&b| b)
        .count();
    if squeeze_inputs > 1 || (squeeze_inputs == 1 && cfg.omega_r.is_some() && cfg.acceleration.is_some()) {
        return Err(CliError::Config(
            "give only one of --r, --omega, or the pair --omega-r/--acceleration".into(),
        ));
    }

    let mut quantities = Vec::new();
    let p = match (cfg.r, cfg.omega, cfg.omega_r, cfg.acceleration) {
        (Some(r), None, ..) => SqueezeParam::from_r(r).map_err(|e| CliError::Config(e.to_string()))?,
        (None, Some(omega), ..) => {
            SqueezeParam::from_omega(omega).map_err(|e| CliError::Config(e.to_string()))?
        }
        (None, None, Some(w), Some(a)) => {
            SqueezeParam::from_physical(positive("omega-r", w)?, positive("acceleration", a)?)?
        }
        (None, None, None, Some(a)) => {
            acceleration_quantities(positive("acceleration", a)?, &mut quantities)?;
            return Ok(Conversion {
                quantities,
                underflowed: false,
            });
        }
        _ => {
            return Err(CliError::Config(
                "convert needs --r, --omega, --omega-r with --acceleration, or --acceleration".into(),
            ))
        }
    };

    quantities.push(Quantity::new("r", p.r(), ""));
    quantities.push(Quantity::new("Omega", p.omega(), ""));
    quantities.push(Quantity::new("tanh_r", p.tanh(), ""));
    // Omega = omega_R c / a fixes the missing member of the physical pair
    let finite_omega = p.omega().is_finite();
    match (cfg.omega_r, cfg.acceleration) {
        (Some(w), Some(a)) => {
            quantities.push(Quantity::new("omega_R", w, "rad/s"));
            acceleration_quantities(a, &mut quantities)?;
        }
        (Some(w), None) => {
            let w = positive("omega-r", w)?;
            quantities.push(Quantity::new("omega_R", w, "rad/s"));
            if finite_omega {
                acceleration_quantities(w * SPEED_OF_LIGHT / p.omega(), &mut quantities)?;
            }
        }
        (None, Some(a)) => {
            let a = positive("acceleration", a)?;
            if finite_omega {
                quantities.push(Quantity::new("omega_R", p.omega() * a / SPEED_OF_LIGHT, "rad/s"));
            }
            acceleration_quantities(a, &mut quantities)?;
        }
        (None, None) => {}
    }
    Ok(Conversion {
        quantities,
        underflowed: p.underflowed(),
    })
}
