//! Single-Rindler-mode expansions of Minkowski states, the Unruh thermal
//! state, parameter conversions and accelerated-observer kinematics.
//!
//! The physics here is dimensionless: the squeezing `r`, the Rindler
//! frequency `Omega = omega_R / (a/c)` and a proper-time parameter. SI units
//! only appear in [`SqueezeParam::from_physical`], [`unruh_temperature`] and
//! [`horizon_crossing_time`].

use num_complex::Complex64;

use crate::constants::{BOLTZMANN, HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::fock::{DensityOp, FockKet, Ladder, ModeSpec};

pub const REGION_I: &str = "RegionI";
pub const REGION_II: &str = "RegionII";

/// Default bound on discarded probability weight when choosing a cutoff.
pub const DEFAULT_TAIL_EPS: f64 = 1e-12;
pub const MIN_CUTOFF: usize = 8;
pub const MAX_CUTOFF: usize = 1024;

/// The `(omega_R, a)` pair a squeezing parameter was derived from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalScale {
    /// Rindler angular frequency, rad/s.
    pub omega_r: f64,
    /// Proper acceleration, m/s^2.
    pub acceleration: f64,
}

/// Two-mode squeezing `r >= 0` with `tanh r = exp(-pi Omega)`.
///
/// Only `r` and `Omega` are stored; hyperbolic functions are recomputed from
/// `r` on demand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParam {
    r: f64,
    omega: f64,
    scale: Option<PhysicalScale>,
    underflowed: bool,
}

/// `atanh(u)` for `u = exp(-x)`, `x > 0`, accurate for both small and large `x`.
fn atanh_exp_neg(x: f64) -> f64 {
    let u = (-x).exp();
    if u < 0.5 {
        u.atanh()
    } else {
        0.5 * (u.ln_1p() - (-(-x).exp_m1()).ln())
    }
}

impl SqueezeParam {
    pub fn from_r(r: f64) -> Result<Self> {
        if !(r >= 0.0 && r.is_finite()) {
            return Err(Error::Domain(format!(
                "squeezing must be finite and nonnegative, got {r}"
            )));
        }
        // pi Omega = ln coth r = 2 atanh(exp(-2r))
        let omega = if r == 0.0 {
            f64::INFINITY
        } else {
            2.0 * atanh_exp_neg(2.0 * r) / std::f64::consts::PI
        };
        Ok(SqueezeParam {
            r,
            omega,
            scale: None,
            underflowed: false,
        })
    }

    /// `r = artanh(exp(-pi Omega))`.
    pub fn from_omega(omega: f64) -> Result<Self> {
        if omega.is_nan() || omega <= 0.0 {
            return Err(Error::Domain(format!(
                "Rindler frequency must be positive, got {omega}"
            )));
        }
        let r = if omega.is_infinite() {
            0.0
        } else {
            atanh_exp_neg(std::f64::consts::PI * omega)
        };
        Ok(SqueezeParam {
            r,
            omega,
            scale: None,
            underflowed: false,
        })
    }

    /// From a Rindler frequency (rad/s) and proper acceleration (m/s^2).
    ///
    /// For terrestrial accelerations `r` underflows; values below the smallest
    /// normal double are flushed to exactly zero and [`Self::underflowed`] is set.
    pub fn from_physical(omega_r: f64, acceleration: f64) -> Result<Self> {
        if !(omega_r > 0.0 && omega_r.is_finite()) {
            return Err(Error::Domain(format!(
                "omega_R must be positive and finite, got {omega_r}"
            )));
        }
        if !(acceleration > 0.0 && acceleration.is_finite()) {
            return Err(Error::Domain(format!(
                "acceleration must be positive and finite, got {acceleration}"
            )));
        }
        let omega = omega_r / (acceleration / SPEED_OF_LIGHT);
        let mut p = SqueezeParam::from_omega(omega)?;
        if p.r < f64::MIN_POSITIVE {
            p.r = 0.0;
            p.underflowed = true;
        }
        p.scale = Some(PhysicalScale {
            omega_r,
            acceleration,
        });
        Ok(p)
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn cosh(&self) -> f64 {
        self.r.cosh()
    }

    pub fn sinh(&self) -> f64 {
        self.r.sinh()
    }

    pub fn tanh(&self) -> f64 {
        self.r.tanh()
    }

    /// Dimensionless Rindler frequency; infinite at `r = 0`.
    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn scale(&self) -> Option<PhysicalScale> {
        self.scale
    }

    /// True when `r` was flushed to zero from a subnormal value.
    pub fn underflowed(&self) -> bool {
        self.underflowed
    }

    /// Unruh temperature in kelvin, when built from physical inputs.
    pub fn unruh_temperature(&self) -> Option<f64> {
        self.scale.map(|s| unruh_temperature_unchecked(s.acceleration))
    }
}

/// Small-`r` form `r ~ exp(-pi Omega)`.
pub fn small_r_approximation(omega: f64) -> f64 {
    (-std::f64::consts::PI * omega).exp()
}

fn unruh_temperature_unchecked(acceleration: f64) -> f64 {
    HBAR * acceleration / (2.0 * std::f64::consts::PI * SPEED_OF_LIGHT * BOLTZMANN)
}

/// `T_U = hbar a / (2 pi c k_B)` in kelvin.
pub fn unruh_temperature(acceleration: f64) -> Result<f64> {
    if !(acceleration > 0.0 && acceleration.is_finite()) {
        return Err(Error::Domain(format!(
            "acceleration must be positive and finite, got {acceleration}"
        )));
    }
    Ok(unruh_temperature_unchecked(acceleration))
}

/// Coordinate time (s) at which an inertial observer at rest at the
/// accelerated observer's starting point crosses the future horizon: `c/a`.
pub fn horizon_crossing_time(acceleration: f64) -> Result<f64> {
    if !(acceleration > 0.0 && acceleration.is_finite()) {
        return Err(Error::Domain(format!(
            "acceleration must be positive and finite, got {acceleration}"
        )));
    }
    Ok(SPEED_OF_LIGHT / acceleration)
}

/// Smallest cutoff in `[MIN_CUTOFF, MAX_CUTOFF]` whose discarded weight is at
/// most `eps` for both the squeezed vacuum and the one-particle expansion.
///
/// The one-particle tail `tanh^{2(N-1)} r (N sech^2 r + tanh^2 r)` dominates
/// the vacuum tail `tanh^{2N} r`, so bounding it bounds both.
pub fn cutoff_for_tail(p: &SqueezeParam, eps: f64) -> usize {
    (MIN_CUTOFF..=MAX_CUTOFF)
        .find(|&n| one_particle_tail_weight(p, n) <= eps)
        .unwrap_or(MAX_CUTOFF)
}

/// [`cutoff_for_tail`] at [`DEFAULT_TAIL_EPS`].
pub fn auto_cutoff(p: &SqueezeParam) -> usize {
    cutoff_for_tail(p, DEFAULT_TAIL_EPS)
}

/// Weight of the squeezed vacuum beyond occupation `cutoff - 1`: `tanh^{2N} r`.
pub fn vacuum_tail_weight(p: &SqueezeParam, cutoff: usize) -> f64 {
    p.tanh().powi(2 * cutoff as i32)
}

/// Weight of the one-particle expansion on tuples `(n+1, n)` with `n + 1 >= cutoff`.
pub fn one_particle_tail_weight(p: &SqueezeParam, cutoff: usize) -> f64 {
    if cutoff == 0 {
        return 1.0;
    }
    let t2 = p.tanh().powi(2);
    let sech2 = 1.0 / p.cosh().powi(2);
    t2.powi(cutoff as i32 - 1) * (cutoff as f64 * sech2 + t2)
}

/// A truncated, renormalized Rindler expansion.
#[derive(Debug, Clone)]
pub struct TruncatedState {
    pub ket: FockKet,
    /// Analytic probability weight discarded by the truncation.
    pub tail_weight: f64,
    /// Factor applied to the truncated amplitudes to restore unit norm.
    pub norm_factor: f64,
}

fn check_cutoff(cutoff: usize) -> Result<()> {
    if cutoff < 2 {
        return Err(Error::Domain(format!("cutoff must be at least 2, got {cutoff}")));
    }
    Ok(())
}

/// Modes `[RegionI, RegionII]`, each with the same cutoff.
pub fn rindler_modes(cutoff: usize) -> Result<Vec<ModeSpec>> {
    Ok(vec![
        ModeSpec::new(REGION_I, cutoff)?,
        ModeSpec::new(REGION_II, cutoff)?,
    ])
}

/// Geometric coefficients `tanh^n r` for `n < len`.
fn tanh_powers(p: &SqueezeParam, len: usize) -> Vec<f64> {
    let t = p.tanh();
    let mut out = Vec::with_capacity(len);
    let mut acc = 1.0;
    for _ in 0..len {
        out.push(acc);
        acc *= t;
    }
    out
}

fn renormalize(ket: FockKet, tail_weight: f64) -> Result<TruncatedState> {
    let (ket, norm_factor) = ket.normalized()?;
    Ok(TruncatedState {
        ket,
        tail_weight,
        norm_factor,
    })
}

/// Minkowski vacuum as a two-mode squeezed state,
/// `sech r * sum_n tanh^n r |n>_I |n>_II`.
pub fn squeezed_vacuum(p: &SqueezeParam, cutoff: usize) -> Result<TruncatedState> {
    check_cutoff(cutoff)?;
    let sech = 1.0 / p.cosh();
    let entries = tanh_powers(p, cutoff)
        .into_iter()
        .enumerate()
        .map(|(n, tn)| ([n, n], Complex64::new(tn * sech, 0.0)));
    let ket = FockKet::from_entries(rindler_modes(cutoff)?, entries)?;
    renormalize(ket, vacuum_tail_weight(p, cutoff))
}

/// One Minkowski particle, `sech^2 r * sum_n tanh^n r sqrt(n+1) |n+1>_I |n>_II`.
pub fn minkowski_one_particle(p: &SqueezeParam, cutoff: usize) -> Result<TruncatedState> {
    check_cutoff(cutoff)?;
    let sech2 = 1.0 / p.cosh().powi(2);
    let entries = tanh_powers(p, cutoff - 1)
        .into_iter()
        .enumerate()
        .map(|(n, tn)| ([n + 1, n], Complex64::new(tn * ((n + 1) as f64).sqrt() * sech2, 0.0)));
    let ket = FockKet::from_entries(rindler_modes(cutoff)?, entries)?;
    renormalize(ket, one_particle_tail_weight(p, cutoff))
}

/// The one-particle state built by acting with the Unruh creation operator
/// `cosh r b_I^dag - sinh r b_II` on the truncated squeezed vacuum.
pub fn minkowski_one_particle_via_ladder(
    p: &SqueezeParam,
    cutoff: usize,
) -> Result<TruncatedState> {
    let vac = squeezed_vacuum(p, cutoff)?.ket;
    let up = vac.apply_ladder(REGION_I, Ladder::Create)?.ket;
    let down = vac.apply_ladder(REGION_II, Ladder::Annihilate)?.ket;
    let ket = up
        .scaled(Complex64::new(p.cosh(), 0.0))
        .add(&down.scaled(Complex64::new(-p.sinh(), 0.0)))?;
    renormalize(ket, one_particle_tail_weight(p, cutoff))
}

/// Thermal occupation weights `(1-q) q^n`, `q = tanh^2 r`, renormalized over
/// `n < cutoff`.
pub fn thermal_weights(p: &SqueezeParam, cutoff: usize) -> Vec<f64> {
    let q = p.tanh().powi(2);
    let mut w = Vec::with_capacity(cutoff);
    let mut acc = 1.0 - q;
    for _ in 0..cutoff {
        w.push(acc);
        acc *= q;
    }
    let total: f64 = w.iter().sum();
    w.iter().map(|x| x / total).collect()
}

/// The Minkowski vacuum as seen from region I: a diagonal thermal state.
pub fn thermal_vacuum(p: &SqueezeParam, cutoff: usize) -> Result<DensityOp> {
    check_cutoff(cutoff)?;
    DensityOp::from_diagonal(vec![ModeSpec::new(REGION_I, cutoff)?], &thermal_weights(p, cutoff))
}

/// Norm of `(cosh r b_I - sinh r b_II^dag)|0_M>` for the truncated vacuum,
/// including the component pushed above the cutoff by `b_II^dag`.
pub fn unruh_annihilator_defect(p: &SqueezeParam, cutoff: usize) -> Result<f64> {
    let vac = squeezed_vacuum(p, cutoff)?.ket;
    let lowered = vac.apply_ladder(REGION_I, Ladder::Annihilate)?.ket;
    let raised = vac.apply_ladder(REGION_II, Ladder::Create)?;
    let residual = lowered
        .scaled(Complex64::new(p.cosh(), 0.0))
        .add(&raised.ket.scaled(Complex64::new(-p.sinh(), 0.0)))?;
    let escaped = p.sinh() * (cutoff as f64).sqrt() * raised.truncated_norm;
    Ok(residual.norm().hypot(escaped))
}

/// Analytic size of [`unruh_annihilator_defect`]: the top-level coefficient
/// `tanh^N r`, times `sqrt(N)`, times the vacuum renormalization factor.
pub fn unruh_annihilator_tail_bound(p: &SqueezeParam, cutoff: usize) -> f64 {
    let norm = 1.0 / (1.0 - vacuum_tail_weight(p, cutoff)).sqrt();
    norm * p.tanh().powi(cutoff as i32) * (cutoff as f64).sqrt()
}

/// Free evolution under `H_I - H_II` for a dimensionless proper time:
/// each `(n_I, n_II)` amplitude picks up `exp(-i Omega (n_I - n_II) tau)`.
pub fn apply_proper_time_phase(k: &FockKet, p: &SqueezeParam, tau: f64) -> Result<FockKet> {
    let i1 = k.mode_index(REGION_I)?;
    let i2 = k.mode_index(REGION_II)?;
    if tau == 0.0 {
        return Ok(k.clone());
    }
    let omega = p.omega();
    if !omega.is_finite() || !tau.is_finite() {
        return Err(Error::Domain(format!(
            "phase exp(-i Omega tau) undefined for Omega = {omega}, tau = {tau}"
        )));
    }
    Ok(k.map_amplitudes(|occ| {
        let dn = occ[i1] as f64 - occ[i2] as f64;
        Complex64::from_polar(1.0, -omega * dn * tau)
    }))
}

/// A point on the accelerated worldline in units with `c = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorldlineEvent {
    pub tau: f64,
    pub t: f64,
    pub z: f64,
    pub eta: f64,
    pub zeta: f64,
}

/// Event at proper time `tau` on the hyperbola `t = sinh(a tau)/a`,
/// `z = cosh(a tau)/a`.
pub fn worldline(acceleration: f64, tau: f64) -> Result<WorldlineEvent> {
    if !(acceleration > 0.0 && acceleration.is_finite()) {
        return Err(Error::Domain(format!(
            "acceleration must be positive and finite, got {acceleration}"
        )));
    }
    let eta = acceleration * tau;
    let zeta = 1.0 / acceleration;
    let (t, z) = rindler_to_minkowski(eta, zeta)?;
    Ok(WorldlineEvent {
        tau,
        t,
        z,
        eta,
        zeta,
    })
}

/// `(t, z) = (zeta sinh eta, zeta cosh eta)` on the right wedge.
pub fn rindler_to_minkowski(eta: f64, zeta: f64) -> Result<(f64, f64)> {
    if zeta.is_nan() || zeta <= 0.0 {
        return Err(Error::Domain(format!(
            "zeta must be positive in region I, got {zeta}"
        )));
    }
    Ok((zeta * eta.sinh(), zeta * eta.cosh()))
}

/// Inverse of [`rindler_to_minkowski`]; requires `z > |t|`.
pub fn minkowski_to_rindler(t: f64, z: f64) -> Result<(f64, f64)> {
    if z.is_nan() || t.is_nan() || z <= t.abs() {
        return Err(Error::Domain(format!(
            "(t, z) = ({t}, {z}) lies outside region I"
        )));
    }
    let zeta = ((z - t) * (z + t)).sqrt();
    Ok(((t / z).atanh(), zeta))
}
