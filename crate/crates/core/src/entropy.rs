//! Von Neumann entropies (in bits) of Rob's states and the information
//! gained on learning Alice's measurement result.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::eigen::tridiagonal_ql;
use crate::error::{Error, Result};
use crate::fock::{DensityOp, Tolerances};
use crate::rindler::{thermal_vacuum, thermal_weights, SqueezeParam};
use crate::teleport::{
    outcome_coefficients, rob_state_analytic, rob_state_band, InputState, Outcome, OutcomeCoeffs,
    RobBand,
};

/// Entropies of Rob's states at one squeezing value, all in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyReport {
    pub r: f64,
    pub s_pre: f64,
    pub s_post: f64,
    pub s_vac: f64,
    /// `s_pre - s_post`.
    pub gain: f64,
    /// Gain from the two-level `{|0>, |1>}` truncation of both states.
    pub gain_tsm: f64,
}

/// `-sum lambda log2 lambda` over eigenvalues, after clipping rounding noise
/// in `[-psd_floor, 0)` to zero.
///
/// Eigenvalues within `n eps max(lambda)` of zero are treated as zero, and a
/// total below that same floor is reported as exactly 0, so pure states come
/// out pure.
pub fn entropy_of_spectrum(eigenvalues: &[f64], tol: &Tolerances) -> Result<f64> {
    let top = eigenvalues.iter().copied().fold(0.0, f64::max);
    let noise = eigenvalues.len() as f64 * f64::EPSILON * top.max(1.0);
    let mut s = 0.0;
    for &lambda in eigenvalues {
        if lambda < -tol.psd_floor {
            return Err(Error::Contract(format!(
                "density operator has eigenvalue {lambda:e}"
            )));
        }
        if lambda > noise {
            s -= lambda * lambda.log2();
        }
    }
    Ok(if s <= 2.0 * noise { 0.0 } else { s })
}

pub fn von_neumann_entropy(rho: &DensityOp) -> Result<f64> {
    entropy_of_spectrum(&rho.eigenvalues()?, &Tolerances::DEFAULT)
}

/// The uniform average of Rob's four conditional states: what Rob holds
/// before Alice's result arrives. Diagonal for every input.
pub fn pre_measurement_state(s: &InputState, p: &SqueezeParam, cutoff: usize) -> Result<DensityOp> {
    let states = Outcome::ALL
        .iter()
        .map(|&o| rob_state_analytic(&outcome_coefficients(o, s), p, cutoff))
        .collect::<Result<Vec<_>>>()?;
    let terms: Vec<(f64, &DensityOp)> = states.iter().map(|rs| (0.25, &rs.rho)).collect();
    DensityOp::weighted_sum(&terms)?.normalized().map(|(rho, _)| rho)
}

fn equal_superposition() -> InputState {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    InputState::new(h, h).expect("equal superposition is normalized")
}

/// Rob's state after learning the outcome `(0, 0)` for the input
/// `(|0> + |1>)/sqrt(2)`, i.e. `x = y = 1/sqrt(2)`.
pub fn post_measurement_state(p: &SqueezeParam, cutoff: usize) -> Result<DensityOp> {
    let o = outcome_coefficients(Outcome::ALL[0], &equal_superposition());
    Ok(rob_state_analytic(&o, p, cutoff)?.rho)
}

pub fn vacuum_entropy(p: &SqueezeParam, cutoff: usize) -> Result<f64> {
    von_neumann_entropy(&thermal_vacuum(p, cutoff)?)
}

/// Entropy of the untruncated thermal state:
/// `cosh^2 r log2 cosh^2 r - sinh^2 r log2 sinh^2 r`.
pub fn vacuum_entropy_closed_form(p: &SqueezeParam) -> f64 {
    let c2 = p.cosh().powi(2);
    let s2 = p.sinh().powi(2);
    if s2 == 0.0 {
        return 0.0;
    }
    c2 * c2.log2() - s2 * s2.log2()
}

fn binary_entropy(lambda: f64) -> f64 {
    [lambda, 1.0 - lambda]
        .iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| -v * v.log2())
        .sum()
}

/// Entropy of the normalized 2x2 Hermitian block `[[a, b], [b*, d]]`.
fn two_level_entropy(a: f64, d: f64, b: Complex64) -> f64 {
    let tr = a + d;
    let (a, d, b) = (a / tr, d / tr, b.norm() / tr);
    let split = (0.25 * (a - d).powi(2) + b * b).sqrt();
    binary_entropy(0.5 + split)
}

/// Information gain when both Rob's pre- and post-measurement states are
/// restricted to their `{|0>_I, |1>_I}` blocks and renormalized.
pub fn two_state_model_gain(p: &SqueezeParam) -> f64 {
    let sech = 1.0 / p.cosh();
    let sech2 = sech * sech;
    let t2 = p.tanh().powi(2);
    // both states share the block diagonal; the outcome average kills the coherence
    let d0 = 0.5 * sech2;
    let d1 = 0.5 * (t2 * sech2 + sech2 * sech2);
    let o = outcome_coefficients(Outcome::ALL[0], &equal_superposition());
    let coherence = o.x() * o.y().conj() * sech2 * sech;
    two_level_entropy(d0, d1, Complex64::new(0.0, 0.0)) - two_level_entropy(d0, d1, coherence)
}

/// Entropy of a Hermitian band (diagonal plus first off-diagonal) without
/// forming the dense matrix.
pub fn band_entropy(band: &RobBand) -> Result<f64> {
    let mut d = band.diag.clone();
    let mut e: Vec<f64> = band.sub.iter().map(|z| z.norm()).collect();
    e.push(0.0);
    tridiagonal_ql(&mut d, &mut e)?;
    entropy_of_spectrum(&d, &Tolerances::DEFAULT)
}

fn pre_measurement_band(s: &InputState, p: &SqueezeParam, cutoff: usize) -> Result<RobBand> {
    let mut acc = RobBand {
        diag: vec![0.0; cutoff],
        sub: vec![Complex64::new(0.0, 0.0); cutoff.saturating_sub(1)],
    };
    for o in Outcome::ALL {
        let (band, _) = rob_state_band(&outcome_coefficients(o, s), p, cutoff)?.normalized()?;
        acc.diag.iter_mut().zip(&band.diag).for_each(|(a, b)| *a += 0.25 * b);
        acc.sub.iter_mut().zip(&band.sub).for_each(|(a, b)| *a += 0.25 * b);
    }
    Ok(acc.normalized()?.0)
}

/// All entropies at one squeezing value. Works on the banded closed-form
/// states directly, so the cost is linear in memory and quadratic in time.
pub fn info_gain(p: &SqueezeParam, cutoff: usize) -> Result<EntropyReport> {
    let s_pre = band_entropy(&pre_measurement_band(&equal_superposition(), p, cutoff)?)?;
    let (post, _) = rob_state_band(&post_measurement_coeffs(), p, cutoff)?.normalized()?;
    let s_post = band_entropy(&post)?;
    let s_vac = entropy_of_spectrum(&thermal_weights(p, cutoff), &Tolerances::DEFAULT)?;
    Ok(EntropyReport {
        r: p.r(),
        s_pre,
        s_post,
        s_vac,
        gain: s_pre - s_post,
        gain_tsm: two_state_model_gain(p),
    })
}

/// Outcome coefficients behind [`post_measurement_state`].
pub fn post_measurement_coeffs() -> OutcomeCoeffs {
    outcome_coefficients(Outcome::ALL[0], &equal_superposition())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{FockKet, ModeSpec};
    use crate::rindler::auto_cutoff;
    use nalgebra::DMatrix;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn param(r: f64) -> SqueezeParam {
        SqueezeParam::from_r(r).unwrap()
    }

    #[test]
    fn pure_and_maximally_mixed() {
        let k = FockKet::basis(vec![ModeSpec::new("M", 3).unwrap()], &[1]).unwrap();
        assert_eq!(von_neumann_entropy(&DensityOp::outer(&k).unwrap()).unwrap(), 0.0);
        let half = DensityOp::from_diagonal(vec![ModeSpec::qubit("M")], &[0.5, 0.5]).unwrap();
        assert_eq!(von_neumann_entropy(&half).unwrap(), 1.0);
    }

    #[test]
    fn rounding_noise_is_pure() {
        let tol = Tolerances::DEFAULT;
        assert_eq!(entropy_of_spectrum(&[1.0 - 2e-16, 1e-16, -3e-17], &tol).unwrap(), 0.0);
        let s = entropy_of_spectrum(&[1.0 - 1e-9, 1e-9], &tol).unwrap();
        assert!(s > 0.0 && (s - 3.134004785335168e-8).abs() < 1e-15, "{s}");
    }

    #[test]
    fn negative_eigenvalue_rejected() {
        let bad = DensityOp::from_diagonal(vec![ModeSpec::qubit("M")], &[1.1, -0.1]).unwrap();
        assert!(matches!(von_neumann_entropy(&bad), Err(Error::Contract(_))));
        let noisy = DensityOp::from_diagonal(vec![ModeSpec::qubit("M")], &[1.0, -1e-12]).unwrap();
        assert_eq!(von_neumann_entropy(&noisy).unwrap(), 0.0);
    }

    #[test]
    fn thermal_entropy_closed_form() {
        for r in [0.0, 0.25, 1.0, 2.0] {
            let p = param(r);
            let s = vacuum_entropy(&p, auto_cutoff(&p)).unwrap();
            assert!((s - vacuum_entropy_closed_form(&p)).abs() <= 1e-9, "r = {r}");
        }
        assert!((vacuum_entropy_closed_form(&param(1.0)) - 2.336909300545897).abs() < 1e-13);
    }

    #[test]
    fn band_path_matches_dense_states() {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let s = InputState::new(h, h).unwrap();
        for r in [0.0, 0.3, 1.1, 2.0] {
            let p = param(r);
            let n = auto_cutoff(&p);
            let rep = info_gain(&p, n).unwrap();
            let pre = von_neumann_entropy(&pre_measurement_state(&s, &p, n).unwrap()).unwrap();
            let post = von_neumann_entropy(&post_measurement_state(&p, n).unwrap()).unwrap();
            assert!((rep.s_pre - pre).abs() <= 1e-12, "r = {r}");
            assert!((rep.s_post - post).abs() <= 1e-12, "r = {r}");
            assert!((rep.s_vac - vacuum_entropy(&p, n).unwrap()).abs() <= 1e-12, "r = {r}");
        }
    }

    #[test]
    fn pre_measurement_limits() {
        let p = param(0.0);
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let s = InputState::new(h, h).unwrap();
        let pre = pre_measurement_state(&s, &p, 8).unwrap();
        assert!((pre.matrix()[(0, 0)].re - 0.5).abs() < 1e-15);
        assert!((pre.matrix()[(1, 1)].re - 0.5).abs() < 1e-15);
        assert_eq!(von_neumann_entropy(&pre).unwrap(), 1.0);

        let basis = InputState::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)).unwrap();
        let pre = pre_measurement_state(&basis, &p, 8).unwrap();
        assert!((pre.matrix()[(0, 0)].re - 0.5).abs() < 1e-15);
        assert!((pre.matrix()[(1, 1)].re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn pre_measurement_is_diagonal() {
        let s = InputState::new(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)).unwrap();
        for r in [0.1, 0.7, 1.9] {
            let p = param(r);
            let pre = pre_measurement_state(&s, &p, auto_cutoff(&p)).unwrap();
            let n = pre.dim();
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        assert!(pre.matrix()[(i, j)].norm() <= 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn gain_anchors() {
        let rep = info_gain(&param(0.0), 8).unwrap();
        assert_eq!(rep.s_pre, 1.0);
        assert!(rep.s_post.abs() < 1e-9 && rep.s_vac == 0.0);
        assert!((rep.gain - 1.0).abs() < 1e-9);
        assert!((rep.gain_tsm - 1.0).abs() < 1e-12);

        let g = |r: f64| {
            let p = param(r);
            info_gain(&p, auto_cutoff(&p)).unwrap()
        };
        let (a, b) = (g(0.5), g(2.0));
        assert!(b.gain < a.gain && b.gain > 0.0 && a.gain < 1.0);
        assert!(b.s_post > a.s_post);
    }

    #[test]
    fn two_state_model_tracks_small_r() {
        for r in [0.05, 0.1, 0.25] {
            let p = param(r);
            let full = info_gain(&p, auto_cutoff(&p)).unwrap().gain;
            assert!((full - two_state_model_gain(&p)).abs() <= 0.05, "r = {r}");
        }
        let p = param(2.0);
        let full = info_gain(&p, auto_cutoff(&p)).unwrap().gain;
        assert!(two_state_model_gain(&p) < full);
    }

    fn random_unitary(n: usize, rng: &mut impl Rng) -> DMatrix<Complex64> {
        let m = DMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        m.qr().q()
    }

    #[test]
    fn entropy_is_basis_independent() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let p = param(0.6);
        let rho = post_measurement_state(&p, 16).unwrap();
        let s0 = von_neumann_entropy(&rho).unwrap();
        for _ in 0..5 {
            let u = random_unitary(16, &mut rng);
            let rotated = &u * rho.matrix() * u.adjoint();
            let rotated = (&rotated + rotated.adjoint()).map(|z| z * 0.5);
            let rho2 = DensityOp::from_matrix(rho.modes().to_vec(), rotated).unwrap();
            assert!((von_neumann_entropy(&rho2).unwrap() - s0).abs() <= 1e-10);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn pre_dominates_post(r in 0.0f64..2.5) {
            let p = param(r);
            let rep = info_gain(&p, auto_cutoff(&p)).unwrap();
            prop_assert!(rep.gain >= 0.0);
            prop_assert!((rep.gain - (rep.s_pre - rep.s_post)).abs() <= 1e-12);
        }
    }
}
