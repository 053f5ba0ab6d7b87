use num_complex::Complex64;
use proptest::prelude::*;
use unruh_core::entropy::{pre_measurement_state, vacuum_entropy_closed_form};
use unruh_core::rindler::{
    cutoff_for_tail, minkowski_one_particle, minkowski_one_particle_via_ladder, squeezed_vacuum,
};
use unruh_core::teleport::{
    averaged_fidelity, averaged_fidelity_closed_form, conditional_rindler_ket, fidelity_closed_form,
    fidelity_numeric, outcome_coefficients, prepare_protocol_state, rob_state_analytic,
    rob_states_numeric,
};
use unruh_core::{auto_cutoff, info_gain, InputState, Outcome, SqueezeParam};

fn param(r: f64) -> SqueezeParam {
    SqueezeParam::from_r(r).unwrap()
}

fn input(theta: f64, phase: f64) -> InputState {
    InputState::new(
        Complex64::new(theta.cos(), 0.0),
        Complex64::from_polar(theta.sin(), phase),
    )
    .unwrap()
}

#[test]
fn outcome_probabilities_are_uniform() {
    for r in [0.0, 0.4, 1.3] {
        let p = param(r);
        let prepared = prepare_protocol_state(&input(0.9, 0.4), &p, auto_cutoff(&p), 0.0).unwrap();
        let mut total = 0.0;
        for o in Outcome::ALL {
            let (_, prob) = conditional_rindler_ket(&prepared, o).unwrap();
            assert!((prob - 0.25).abs() <= 1e-11, "r = {r}: {prob}");
            total += prob;
        }
        assert!((total - 1.0).abs() <= 1e-11);
    }
}

#[test]
fn one_particle_builders_agree() {
    for r in [0.2, 0.8, 1.6] {
        let p = param(r);
        let n = auto_cutoff(&p);
        let direct = minkowski_one_particle(&p, n).unwrap().ket;
        let ladder = minkowski_one_particle_via_ladder(&p, n).unwrap().ket;
        let overlap = direct.inner(&ladder).unwrap();
        assert!((overlap.norm() - 1.0).abs() <= 1e-12, "r = {r}");
        let vac = squeezed_vacuum(&p, n).unwrap().ket;
        assert!(vac.inner(&direct).unwrap().norm() <= 1e-14);
    }
}

#[test]
fn fidelity_sweep_is_monotone_and_matches_quadrature() {
    let mut last = f64::INFINITY;
    for i in 0..=60 {
        let p = param(i as f64 * 0.05);
        let avg = averaged_fidelity(&p, 1001).unwrap();
        assert!((avg - averaged_fidelity_closed_form(&p)).abs() <= 1e-12);
        assert!(avg < last);
        last = avg;
    }
}

#[test]
fn entropies_bracket_the_vacuum() {
    // tracing out region II already costs S_vac; the pre-measurement state is
    // one uniformly random bit on top of a vacuum-like spread
    for r in [0.3, 1.0, 2.0] {
        let p = param(r);
        let rep = info_gain(&p, auto_cutoff(&p)).unwrap();
        assert!(rep.s_pre > rep.s_vac && rep.s_pre > rep.s_post);
        assert!((rep.s_vac - vacuum_entropy_closed_form(&p)).abs() <= 1e-9);
    }
}

#[test]
fn tighter_tails_grow_the_cutoff() {
    let p = param(1.0);
    let loose = cutoff_for_tail(&p, 1e-6);
    let tight = cutoff_for_tail(&p, 1e-14);
    assert!(loose < auto_cutoff(&p) && auto_cutoff(&p) < tight);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn analytic_and_numeric_states_agree(
        r in 0.0f64..1.5,
        theta in 0.0f64..std::f64::consts::PI,
        phase in -3.2f64..3.2,
    ) {
        let p = param(r);
        let s = input(theta, phase);
        let cutoff = auto_cutoff(&p);
        for rs in rob_states_numeric(&s, &p, cutoff, 0.0).unwrap() {
            let analytic = rob_state_analytic(&rs.coeffs, &p, cutoff).unwrap();
            prop_assert!(analytic.rho.max_abs_diff(&rs.rho).unwrap() <= 1e-10);
            let f = fidelity_numeric(&rs, &rs.coeffs).unwrap();
            prop_assert!((f - fidelity_closed_form(&rs.coeffs, &p)).abs() <= 1e-10);
        }
    }

    #[test]
    fn pre_measurement_state_forgets_the_input(r in 0.0f64..2.0, theta in 0.0f64..3.1, phase in -3.2f64..3.2) {
        let p = param(r);
        let cutoff = auto_cutoff(&p);
        let a = pre_measurement_state(&input(theta, phase), &p, cutoff).unwrap();
        let b = pre_measurement_state(&input(0.3, 0.0), &p, cutoff).unwrap();
        prop_assert!(a.max_abs_diff(&b).unwrap() <= 1e-12);
    }

    #[test]
    fn outcome_coefficients_are_normalized(theta in 0.0f64..3.2, phase in -3.2f64..3.2) {
        let s = input(theta, phase);
        for o in Outcome::ALL {
            let c = outcome_coefficients(o, &s);
            prop_assert!((c.x().norm_sqr() + c.y().norm_sqr() - 1.0).abs() <= 1e-12);
            let (a, b) = c.corrected();
            prop_assert!((a - s.alpha()).norm() <= 1e-12 && (b - s.beta()).norm() <= 1e-12);
        }
    }
}
