//! Teleportation from an inertial sender (Alice) to an accelerated receiver
//! (Rob).
//!
//! Alice holds the input qubit and one half of the Bell pair
//! `(|00> + |11>)/sqrt(2)`, both as cutoff-2 modes. Rob's half is a Minkowski
//! mode, expanded over Rindler regions I and II. After Alice's CNOT,
//! Hadamard and measurement `(l, m)`, Rob holds `x_lm |0_M> + y_lm |1_M>`,
//! traced over region II.
//!
//! Rob's conditional state is produced two ways: [`rob_state_analytic`]
//! evaluates the banded closed form, and [`rob_state_numeric`] runs the gates
//! on the full truncated state vector.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{DensityOp, FockKet, ModeSpec, Tolerances};
use crate::rindler::{
    self, apply_proper_time_phase, minkowski_one_particle, squeezed_vacuum, SqueezeParam,
    REGION_I,
};

pub const ALICE_INPUT: &str = "AliceInput";
pub const ALICE_BELL: &str = "AliceBell";

/// Outcomes with probability below this cannot be conditioned on.
pub const MIN_OUTCOME_PROBABILITY: f64 = 1e-15;

/// Default Simpson node count for the angle-averaged fidelity.
pub const DEFAULT_QUADRATURE_POINTS: usize = 1001;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// The qubit `alpha |0> + beta |1>` Alice wants to send.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputState {
    alpha: Complex64,
    beta: Complex64,
}

impl InputState {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let n = alpha.norm_sqr() + beta.norm_sqr();
        if (n - 1.0).abs() > Tolerances::DEFAULT.ket_norm {
            return Err(Error::Contract(format!(
                "input state must satisfy |alpha|^2 + |beta|^2 = 1, got {n}"
            )));
        }
        Ok(InputState { alpha, beta })
    }

    /// `cos(theta) |0> + sin(theta) |1>`.
    pub fn from_angle(theta: f64) -> Self {
        InputState {
            alpha: Complex64::new(theta.cos(), 0.0),
            beta: Complex64::new(theta.sin(), 0.0),
        }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }
}

/// Alice's two measured bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Outcome {
    l: u8,
    m: u8,
}

impl Outcome {
    pub const ALL: [Outcome; 4] = [
        Outcome { l: 0, m: 0 },
        Outcome { l: 0, m: 1 },
        Outcome { l: 1, m: 0 },
        Outcome { l: 1, m: 1 },
    ];

    pub fn new(l: u8, m: u8) -> Result<Self> {
        if l > 1 || m > 1 {
            return Err(Error::Domain(format!("outcome bits must be 0 or 1, got ({l}, {m})")));
        }
        Ok(Outcome { l, m })
    }

    pub fn l(&self) -> u8 {
        self.l
    }

    pub fn m(&self) -> u8 {
        self.m
    }
}

/// Rob's pre-correction qubit amplitudes `(x_lm, y_lm)` for one outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeCoeffs {
    outcome: Outcome,
    x: Complex64,
    y: Complex64,
}

impl OutcomeCoeffs {
    /// Arbitrary normalized amplitudes, e.g. the `(cos theta, sin theta)`
    /// family averaged over for the mean fidelity.
    pub fn from_amplitudes(outcome: Outcome, x: Complex64, y: Complex64) -> Result<Self> {
        InputState::new(x, y)?;
        Ok(OutcomeCoeffs { outcome, x, y })
    }

    pub fn outcome(&self) -> Outcome {
        self.outcome
    }

    pub fn x(&self) -> Complex64 {
        self.x
    }

    pub fn y(&self) -> Complex64 {
        self.y
    }

    /// Amplitudes after Rob's correction `Z^l X^m`.
    pub fn corrected(&self) -> (Complex64, Complex64) {
        let (mut a, mut b) = (self.x, self.y);
        if self.outcome.m == 1 {
            std::mem::swap(&mut a, &mut b);
        }
        if self.outcome.l == 1 {
            b = -b;
        }
        (a, b)
    }

    /// The coefficients after free evolution for proper time `tau`:
    /// `y -> y exp(-i Omega tau)`.
    pub fn evolved(&self, p: &SqueezeParam, tau: f64) -> Result<Self> {
        if tau == 0.0 {
            return Ok(*self);
        }
        if !p.omega().is_finite() {
            return Err(Error::Domain(
                "proper-time phase undefined at r = 0 (Omega infinite)".into(),
            ));
        }
        Ok(OutcomeCoeffs {
            y: self.y * Complex64::from_polar(1.0, -p.omega() * tau),
            ..*self
        })
    }

    /// `x |0>_I + y |1>_I` embedded in a region-I mode of the given cutoff.
    pub fn target(&self, cutoff: usize) -> Result<FockKet> {
        FockKet::from_entries(
            vec![ModeSpec::new(REGION_I, cutoff)?],
            [([0usize], self.x), ([1], self.y)],
        )
    }
}

/// `(x_lm, y_lm)` for Alice's result `(l, m)`:
/// `00 -> (a, b)`, `01 -> (b, a)`, `10 -> (a, -b)`, `11 -> (-b, a)`.
pub fn outcome_coefficients(outcome: Outcome, s: &InputState) -> OutcomeCoeffs {
    let (a, b) = (s.alpha, s.beta);
    let (x, y) = match (outcome.l, outcome.m) {
        (0, 0) => (a, b),
        (0, 1) => (b, a),
        (1, 0) => (a, -b),
        _ => (-b, a),
    };
    OutcomeCoeffs { outcome, x, y }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Analytic,
    Numeric,
}

/// Rob's conditional region-I state after Alice's measurement.
#[derive(Debug, Clone)]
pub struct RobState {
    pub rho: DensityOp,
    pub provenance: Provenance,
    pub params: SqueezeParam,
    pub coeffs: OutcomeCoeffs,
    pub cutoff: usize,
    /// Factor applied after truncation to restore unit trace.
    pub norm_factor: f64,
    /// Probability of the conditioning outcome (numeric pipeline only).
    pub outcome_probability: Option<f64>,
}

fn check_cutoff(cutoff: usize) -> Result<()> {
    if cutoff < 2 {
        return Err(Error::Domain(format!("cutoff must be at least 2, got {cutoff}")));
    }
    Ok(())
}

/// Diagonal and first sub-diagonal of Rob's closed-form state; every other
/// entry vanishes.
#[derive(Debug, Clone, PartialEq)]
pub struct RobBand {
    pub diag: Vec<f64>,
    /// `sub[n]` is the `(n + 1, n)` entry; its conjugate sits at `(n, n + 1)`.
    pub sub: Vec<Complex64>,
}

impl RobBand {
    pub fn cutoff(&self) -> usize {
        self.diag.len()
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    /// Rescaled to unit trace, with the factor applied.
    pub fn normalized(mut self) -> Result<(RobBand, f64)> {
        let tr = self.trace();
        if !(tr.is_finite() && tr > 0.0) {
            return Err(Error::Contract(format!("cannot normalize a band of trace {tr}")));
        }
        let factor = 1.0 / tr;
        self.diag.iter_mut().for_each(|v| *v *= factor);
        self.sub.iter_mut().for_each(|v| *v *= factor);
        Ok((self, factor))
    }

    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        let n = self.cutoff();
        let mut m = DMatrix::from_element(n, n, ZERO);
        for (k, &d) in self.diag.iter().enumerate() {
            m[(k, k)] = Complex64::new(d, 0.0);
        }
        for (k, &z) in self.sub.iter().enumerate() {
            m[(k + 1, k)] = z;
            m[(k, k + 1)] = z.conj();
        }
        m
    }
}

/// Unnormalized band of Rob's closed-form state: diagonal
/// `tanh^{2n} r sech^2 r (|x|^2 + n |y|^2 / sinh^2 r)` and first off-diagonal
/// `tanh^{2n} r sech^3 r sqrt(n+1)`, with `x* y` at `(n+1, n)` and `x y*` at
/// `(n, n+1)`.
pub fn rob_state_band(o: &OutcomeCoeffs, p: &SqueezeParam, cutoff: usize) -> Result<RobBand> {
    check_cutoff(cutoff)?;
    let (x, y) = (o.x, o.y);
    let mut diag = vec![0.0; cutoff];
    let mut sub = vec![ZERO; cutoff - 1];
    if p.r() == 0.0 {
        diag[0] = x.norm_sqr();
        diag[1] = y.norm_sqr();
        sub[0] = x.conj() * y;
    } else {
        let t2 = p.tanh().powi(2);
        let sech = 1.0 / p.cosh();
        let sech2 = sech * sech;
        let (x2, y2) = (x.norm_sqr(), y.norm_sqr());
        // t2n = tanh^{2n} r; tanh^{2n}/sinh^2 = tanh^{2(n-1)} sech^2 keeps small r finite
        let mut t2n = 1.0;
        let mut t2n_prev = 0.0;
        for n in 0..cutoff {
            diag[n] = t2n * sech2 * x2 + n as f64 * y2 * t2n_prev * sech2 * sech2;
            if n + 1 < cutoff {
                sub[n] = x.conj() * y * (t2n * sech2 * sech * ((n + 1) as f64).sqrt());
            }
            t2n_prev = t2n;
            t2n *= t2;
        }
    }
    Ok(RobBand { diag, sub })
}

/// Rob's state from the closed-form reduced density matrix
/// ([`rob_state_band`]), renormalized to unit trace over the truncated support.
pub fn rob_state_analytic(o: &OutcomeCoeffs, p: &SqueezeParam, cutoff: usize) -> Result<RobState> {
    let band = rob_state_band(o, p, cutoff)?;
    let modes = vec![ModeSpec::new(REGION_I, cutoff)?];
    let (rho, norm_factor) = DensityOp::from_matrix(modes, band.to_matrix())?.normalized()?;
    Ok(RobState {
        rho,
        provenance: Provenance::Analytic,
        params: *p,
        coeffs: *o,
        cutoff,
        norm_factor,
        outcome_probability: None,
    })
}

fn cnot() -> DMatrix<Complex64> {
    DMatrix::from_row_slice(
        4,
        4,
        &[
            ONE, ZERO, ZERO, ZERO, //
            ZERO, ONE, ZERO, ZERO, //
            ZERO, ZERO, ZERO, ONE, //
            ZERO, ZERO, ONE, ZERO,
        ],
    )
}

fn hadamard() -> DMatrix<Complex64> {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    DMatrix::from_row_slice(2, 2, &[h, h, h, -h])
}

/// `|psi>_in (|0>|0_M> + |1>|1_M>)/sqrt(2)` with Rob's Minkowski mode
/// expanded over regions I and II, optionally evolved for proper time `tau`,
/// after Alice's CNOT and Hadamard. Modes: `[AliceInput, AliceBell, RegionI, RegionII]`.
pub fn prepare_protocol_state(
    s: &InputState,
    p: &SqueezeParam,
    cutoff: usize,
    tau: f64,
) -> Result<FockKet> {
    check_cutoff(cutoff)?;
    let vac = squeezed_vacuum(p, cutoff)?.ket;
    let one = minkowski_one_particle(p, cutoff)?.ket;
    let input = FockKet::from_entries(
        vec![ModeSpec::qubit(ALICE_INPUT)],
        [([0usize], s.alpha), ([1], s.beta)],
    )?;
    let bell_mode = || vec![ModeSpec::qubit(ALICE_BELL)];
    let bell = FockKet::basis(bell_mode(), &[0])?
        .tensor(&vac)?
        .add(&FockKet::basis(bell_mode(), &[1])?.tensor(&one)?)?
        .scaled(Complex64::new(FRAC_1_SQRT_2, 0.0));
    let mut psi = input.tensor(&bell)?;
    if tau != 0.0 {
        psi = apply_proper_time_phase(&psi, p, tau)?;
    }
    psi.apply_operator(&[ALICE_INPUT, ALICE_BELL], &cnot())?
        .apply_operator(&[ALICE_INPUT], &hadamard())
}

/// Project the prepared state onto Alice's result and return Rob's normalized
/// region I/II ket together with the outcome probability.
pub fn conditional_rindler_ket(prepared: &FockKet, outcome: Outcome) -> Result<(FockKet, f64)> {
    let branch = prepared
        .project(ALICE_INPUT, outcome.l as usize)?
        .project(ALICE_BELL, outcome.m as usize)?;
    let probability = branch.norm_sqr();
    if probability < MIN_OUTCOME_PROBABILITY {
        return Err(Error::DegenerateOutcome {
            l: outcome.l,
            m: outcome.m,
            probability,
        });
    }
    let (ket, _) = branch.normalized()?;
    Ok((ket, probability))
}

fn numeric_from_prepared(
    prepared: &FockKet,
    o: &OutcomeCoeffs,
    p: &SqueezeParam,
    cutoff: usize,
) -> Result<RobState> {
    let (ket, probability) = conditional_rindler_ket(prepared, o.outcome)?;
    let reduced = ket.reduced_density(&[REGION_I])?;
    let (rho, norm_factor) = reduced.normalized()?;
    Ok(RobState {
        rho,
        provenance: Provenance::Numeric,
        params: *p,
        coeffs: *o,
        cutoff,
        norm_factor,
        outcome_probability: Some(probability),
    })
}

fn check_consistent(o: &OutcomeCoeffs, s: &InputState) -> Result<()> {
    let expected = outcome_coefficients(o.outcome, s);
    if (expected.x - o.x).norm() > Tolerances::DEFAULT.elementwise
        || (expected.y - o.y).norm() > Tolerances::DEFAULT.elementwise
    {
        return Err(Error::Contract(format!(
            "outcome coefficients do not match the input state for (l, m) = ({}, {})",
            o.outcome.l, o.outcome.m
        )));
    }
    Ok(())
}

/// Rob's state from the full state-vector pipeline.
pub fn rob_state_numeric(
    o: &OutcomeCoeffs,
    s: &InputState,
    p: &SqueezeParam,
    cutoff: usize,
) -> Result<RobState> {
    rob_state_numeric_evolved(o, s, p, cutoff, 0.0)
}

/// As [`rob_state_numeric`], with Rob's modes evolved for proper time `tau`
/// before Alice measures. `coeffs` on the result carry the evolved `y`.
pub fn rob_state_numeric_evolved(
    o: &OutcomeCoeffs,
    s: &InputState,
    p: &SqueezeParam,
    cutoff: usize,
    tau: f64,
) -> Result<RobState> {
    check_consistent(o, s)?;
    let prepared = prepare_protocol_state(s, p, cutoff, tau)?;
    numeric_from_prepared(&prepared, &o.evolved(p, tau)?, p, cutoff)
}

/// All four conditional states from one prepared state vector, in
/// [`Outcome::ALL`] order.
pub fn rob_states_numeric(
    s: &InputState,
    p: &SqueezeParam,
    cutoff: usize,
    tau: f64,
) -> Result<Vec<RobState>> {
    let prepared = prepare_protocol_state(s, p, cutoff, tau)?;
    Outcome::ALL
        .iter()
        .map(|&outcome| {
            let o = outcome_coefficients(outcome, s).evolved(p, tau)?;
            numeric_from_prepared(&prepared, &o, p, cutoff)
        })
        .collect()
}

/// Closed-form fidelity of Rob's state with `x |0>_I + y |1>_I`:
/// `sech^2 r [ |x|^4 + (tanh^2 r |x|^2 + |y|^2 sech^2 r) |y|^2 + 2 |x|^2 |y|^2 sech r ]`.
pub fn fidelity_closed_form(o: &OutcomeCoeffs, p: &SqueezeParam) -> f64 {
    fidelity_from_weights(o.x.norm_sqr(), o.y.norm_sqr(), p)
}

fn fidelity_from_weights(x2: f64, y2: f64, p: &SqueezeParam) -> f64 {
    let sech = 1.0 / p.cosh();
    let sech2 = sech * sech;
    let t2 = p.tanh().powi(2);
    sech2 * (x2 * x2 + (t2 * x2 + y2 * sech2) * y2 + 2.0 * x2 * y2 * sech)
}

/// `<phi|rho|phi>` with `phi = x |0>_I + y |1>_I` built from `o`.
pub fn fidelity_numeric(rs: &RobState, o: &OutcomeCoeffs) -> Result<f64> {
    rs.rho.fidelity_pure(&o.target(rs.cutoff)?)
}

/// Composite Simpson average of the fidelity over `x = cos theta`,
/// `y = sin theta`, `theta in [0, pi]`.
pub fn averaged_fidelity(p: &SqueezeParam, quadrature_points: usize) -> Result<f64> {
    if quadrature_points < 3 || quadrature_points.is_multiple_of(2) {
        return Err(Error::Contract(format!(
            "Simpson quadrature needs an odd number of points >= 3, got {quadrature_points}"
        )));
    }
    let intervals = quadrature_points - 1;
    let h = PI / intervals as f64;
    let f = |k: usize| {
        let (s, c) = (k as f64 * h).sin_cos();
        fidelity_from_weights(c * c, s * s, p)
    };
    let mut acc = f(0) + f(intervals);
    for k in 1..intervals {
        acc += if k % 2 == 1 { 4.0 * f(k) } else { 2.0 * f(k) };
    }
    Ok(acc * h / 3.0 / PI)
}

/// Analytic angle average, using `<cos^4> = <sin^4> = 3/8` and
/// `<cos^2 sin^2> = 1/8` over `[0, pi]`.
pub fn averaged_fidelity_closed_form(p: &SqueezeParam) -> f64 {
    let sech = 1.0 / p.cosh();
    let sech2 = sech * sech;
    let t2 = p.tanh().powi(2);
    sech2 * (0.375 + t2 / 8.0 + 0.375 * sech2 + 0.25 * sech)
}

/// Default cutoff for Rob's states at this squeezing.
pub fn default_cutoff(p: &SqueezeParam) -> usize {
    rindler::auto_cutoff(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rindler::REGION_II;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn generic_input() -> InputState {
        InputState::new(c(0.6, 0.0), c(0.0, 0.8)).unwrap()
    }

    #[test]
    fn outcome_table() {
        let s = generic_input();
        let (a, b) = (s.alpha(), s.beta());
        let o = outcome_coefficients(Outcome::new(0, 0).unwrap(), &s);
        assert_eq!((o.x(), o.y()), (a, b));
        let o = outcome_coefficients(Outcome::new(0, 1).unwrap(), &s);
        assert_eq!((o.x(), o.y()), (b, a));
        let o = outcome_coefficients(Outcome::new(1, 0).unwrap(), &s);
        assert_eq!((o.x(), o.y()), (a, -b));
        let o = outcome_coefficients(Outcome::new(1, 1).unwrap(), &s);
        assert_eq!((o.x(), o.y()), (-b, a));
    }

    #[test]
    fn corrections_restore_input() {
        let s = generic_input();
        for outcome in Outcome::ALL {
            let o = outcome_coefficients(outcome, &s);
            assert_eq!(o.corrected(), (s.alpha(), s.beta()));
        }
        let basis = InputState::new(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let o = outcome_coefficients(Outcome::new(1, 0).unwrap(), &basis);
        assert_eq!((o.x(), o.y()), (c(1.0, 0.0), -c(0.0, 0.0)));
        assert_eq!(o.corrected().0, c(1.0, 0.0));
    }

    #[test]
    fn invalid_inputs() {
        assert!(InputState::new(c(1.0, 0.0), c(1.0, 0.0)).is_err());
        assert!(Outcome::new(2, 0).is_err());
        let p = SqueezeParam::from_r(-1.0);
        assert!(p.is_err());
    }

    #[test]
    fn analytic_inertial_limit_is_pure() {
        let s = generic_input();
        let p = SqueezeParam::from_r(0.0).unwrap();
        let o = outcome_coefficients(Outcome::new(0, 0).unwrap(), &s);
        let rs = rob_state_analytic(&o, &p, 8).unwrap();
        let expected = DensityOp::outer(&o.target(8).unwrap()).unwrap();
        assert!(rs.rho.max_abs_diff(&expected).unwrap() < 1e-15);
        assert_eq!(rs.rho.bandwidth(), 1);
    }

    #[test]
    fn analytic_state_is_banded_unit_trace() {
        let s = generic_input();
        let p = SqueezeParam::from_r(0.8).unwrap();
        for outcome in Outcome::ALL {
            let o = outcome_coefficients(outcome, &s);
            let rs = rob_state_analytic(&o, &p, default_cutoff(&p)).unwrap();
            assert!(rs.rho.bandwidth() <= 1);
            assert!((rs.rho.trace() - 1.0).abs() < 1e-14);
            assert!((rs.norm_factor - 1.0).abs() < 1e-11);
        }
    }

    #[test]
    fn numeric_inertial_limit_is_textbook() {
        let s = generic_input();
        let p = SqueezeParam::from_r(0.0).unwrap();
        let states = rob_states_numeric(&s, &p, 8, 0.0).unwrap();
        for rs in &states {
            assert!((rs.outcome_probability.unwrap() - 0.25).abs() < 1e-15);
            assert_eq!(rs.coeffs.corrected(), (s.alpha(), s.beta()));
            assert!((fidelity_numeric(rs, &rs.coeffs).unwrap() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn numeric_projection_reproduces_expansion() {
        let s = generic_input();
        let p = SqueezeParam::from_r(0.5).unwrap();
        let n = default_cutoff(&p);
        let prepared = prepare_protocol_state(&s, &p, n, 0.0).unwrap();
        let vac = squeezed_vacuum(&p, n).unwrap().ket;
        let one = minkowski_one_particle(&p, n).unwrap().ket;
        let mut total = 0.0;
        for outcome in Outcome::ALL {
            let o = outcome_coefficients(outcome, &s);
            let (ket, prob) = conditional_rindler_ket(&prepared, outcome).unwrap();
            let expected = vac.scaled(o.x()).add(&one.scaled(o.y())).unwrap();
            let diff = ket
                .amplitudes()
                .iter()
                .zip(expected.amplitudes())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(diff < 1e-14);
            total += prob;
        }
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_outcome_is_reported() {
        let prepared = FockKet::zeros(vec![
            ModeSpec::qubit(ALICE_INPUT),
            ModeSpec::qubit(ALICE_BELL),
            ModeSpec::new(REGION_I, 2).unwrap(),
            ModeSpec::new(REGION_II, 2).unwrap(),
        ])
        .unwrap();
        assert!(matches!(
            conditional_rindler_ket(&prepared, Outcome::new(1, 1).unwrap()),
            Err(Error::DegenerateOutcome { l: 1, m: 1, .. })
        ));
    }

    #[test]
    fn inconsistent_coefficients_rejected() {
        let s = generic_input();
        let other = InputState::new(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let o = outcome_coefficients(Outcome::new(0, 0).unwrap(), &other);
        let p = SqueezeParam::from_r(0.2).unwrap();
        assert!(matches!(
            rob_state_numeric(&o, &s, &p, 10),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn closed_form_fidelity_special_cases() {
        for r in [0.0, 0.3, 1.0, 2.5] {
            let p = SqueezeParam::from_r(r).unwrap();
            let outcome = Outcome::new(0, 0).unwrap();
            let zero = OutcomeCoeffs::from_amplitudes(outcome, c(1.0, 0.0), c(0.0, 0.0)).unwrap();
            let one = OutcomeCoeffs::from_amplitudes(outcome, c(0.0, 0.0), c(1.0, 0.0)).unwrap();
            let sech2 = 1.0 / p.cosh().powi(2);
            assert!((fidelity_closed_form(&zero, &p) - sech2).abs() < 1e-15);
            assert!((fidelity_closed_form(&one, &p) - sech2 * sech2).abs() < 1e-15);
            if r > 0.0 {
                let n = default_cutoff(&p);
                let f0 = fidelity_numeric(&rob_state_analytic(&zero, &p, n).unwrap(), &zero).unwrap();
                let f1 = fidelity_numeric(&rob_state_analytic(&one, &p, n).unwrap(), &one).unwrap();
                assert!((f0 - sech2).abs() < 1e-12);
                assert!((f1 - sech2 * sech2).abs() < 1e-12);
            }
        }
        let p = SqueezeParam::from_r(0.0).unwrap();
        let o = OutcomeCoeffs::from_amplitudes(Outcome::new(1, 0).unwrap(), c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        assert!((fidelity_closed_form(&o, &p) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn averaged_fidelity_quadrature_matches_closed_form() {
        for r in [0.0, 1e-3, 0.2, 1.0, 3.0] {
            let p = SqueezeParam::from_r(r).unwrap();
            let q = averaged_fidelity(&p, DEFAULT_QUADRATURE_POINTS).unwrap();
            assert!((q - averaged_fidelity_closed_form(&p)).abs() <= 1e-10, "r = {r}");
        }
        let p = SqueezeParam::from_r(0.0).unwrap();
        assert_eq!(averaged_fidelity_closed_form(&p), 1.0);
        assert!(averaged_fidelity(&p, 4).is_err());
        assert!(averaged_fidelity(&p, 1).is_err());
        let far = SqueezeParam::from_r(40.0).unwrap();
        assert!(averaged_fidelity_closed_form(&far) < 1e-30);
    }

    #[test]
    fn small_r_fidelity_loss() {
        // 1 - <F> = (11/8) r^2 + O(r^4)
        let p = SqueezeParam::from_r(1e-3).unwrap();
        let loss = 1.0 - averaged_fidelity(&p, DEFAULT_QUADRATURE_POINTS).unwrap();
        assert!((loss - 1.375e-6).abs() < 1e-11);
    }

    #[test]
    fn evolved_coefficients() {
        let p = SqueezeParam::from_r(0.5).unwrap();
        let o = outcome_coefficients(Outcome::new(0, 1).unwrap(), &generic_input());
        let e = o.evolved(&p, 2.0).unwrap();
        assert_eq!(e.x(), o.x());
        assert!((e.y().norm() - o.y().norm()).abs() < 1e-15);
        assert!((fidelity_closed_form(&e, &p) - fidelity_closed_form(&o, &p)).abs() < 1e-15);
        let p0 = SqueezeParam::from_r(0.0).unwrap();
        assert!(o.evolved(&p0, 1.0).is_err());
    }
}
