//! Randomized and analytic properties of the models and metrics.

mod common;

use approx::assert_abs_diff_eq;
use detune::bloch::{self, BlochForm};
use detune::lindblad::{integrate_reduced, project_reduced_rhs, reduced_me_rhs};
use detune::metrics::{concurrence_wootters, concurrence_xform, negativity};
use detune::postselect::postselect;
use detune::schedule::Drive;
use detune::state::TwoQubitState;
use detune::{DetuningSchedule, DickeState, StepConfig, SystemParams};
use num_complex::Complex64 as C64;
use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;

fn dicke_from_seed(seed: u64) -> DickeState {
    common::random_dicke(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn xform_matches_wootters_clamped(seed in any::<u64>()) {
        let d = dicke_from_seed(seed);
        let (wc, _) = concurrence_wootters(&d.to_computational().unwrap()).unwrap();
        prop_assert!((wc - concurrence_xform(&d).0).abs() <= 1e-12);
    }

    #[test]
    fn relaxed_values_agree_when_coherence_dominates(seed in any::<u64>()) {
        let d = dicke_from_seed(seed);
        let c = d.coherence_10_01().norm();
        let p10_p01 = {
            let r = d.to_computational().unwrap();
            (r.matrix()[(1, 1)].re * r.matrix()[(2, 2)].re).sqrt()
        };
        // the X-form expression is Wootters' value only when the coherence
        // root sqrt(p10 p01) + |c| is the largest
        prop_assume!(p10_p01 + c > (d.p_up * d.p_down).sqrt() + 1e-9);
        let (_, wr) = concurrence_wootters(&d.to_computational().unwrap()).unwrap();
        prop_assert!((wr - concurrence_xform(&d).1).abs() <= 1e-12);
    }

    #[test]
    fn concurrence_positive_iff_negativity_positive(seed in any::<u64>(), noise in 0.0f64..1.0) {
        let mut rng = common::rng(seed);
        let r = common::random_werner_like(&mut rng, noise);
        let (c, _) = concurrence_wootters(&r).unwrap();
        let n = negativity(&r);
        // stay clear of the separability boundary
        prop_assume!(c > 1e-8 || n > 1e-8 || (c == 0.0 && n < 1e-14));
        prop_assume!(!(c < 1e-6 && n < 1e-6) || (c == 0.0 && n < 1e-14));
        prop_assert_eq!(c > 0.0, n > 0.0, "C = {}, N = {}", c, n);
    }

    #[test]
    fn concurrence_invariant_under_local_unitaries(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let r = common::random_state(&mut rng);
        let u = common::kron2(&common::random_unitary2(&mut rng), &common::random_unitary2(&mut rng));
        let rotated = TwoQubitState::from_matrix_unchecked(u * r.matrix() * u.adjoint());
        let (a, _) = concurrence_wootters(&r).unwrap();
        let (b, _) = concurrence_wootters(&rotated).unwrap();
        prop_assert!((a - b).abs() <= 1e-10);
    }

    #[test]
    fn postselection_is_idempotent_and_normalized(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let r = common::random_state(&mut rng);
        let once = postselect(&r).unwrap();
        let twice = postselect(&once.state).unwrap();
        prop_assert!((once.state.matrix() - twice.state.matrix()).map(|z| z.norm()).max() <= 1e-12);
        prop_assert!((once.state.trace() - 1.0).abs() <= 1e-12);
        prop_assert!(once.state.p_ground().abs() <= 1e-12);

        let d = common::random_dicke(&mut rng);
        let p = postselect(&d.to_computational().unwrap()).unwrap();
        prop_assert!((p.success_prob + d.p_down - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn complete_form_matches_reduced_master_equation(seed in any::<u64>(), delta in 0.0f64..std::f64::consts::TAU) {
        let mut rng = common::rng(seed);
        let d = common::random_dicke(&mut rng);
        let p = common::random_params(&mut rng, true);
        let oracle = project_reduced_rhs(&d, delta, &p).unwrap();
        let bloch = bloch::bloch_rhs_form(&d, delta, &p, BlochForm::Complete);
        prop_assert!(oracle.max_diff(&bloch) <= 1e-9);
    }

    #[test]
    fn standard_form_matches_at_zero_temperature(seed in any::<u64>(), delta in 0.0f64..std::f64::consts::TAU) {
        let mut rng = common::rng(seed);
        let d = common::random_dicke(&mut rng);
        let p = common::random_params(&mut rng, false);
        let oracle = project_reduced_rhs(&d, delta, &p).unwrap();
        prop_assert!(oracle.max_diff(&bloch::bloch_rhs(&d, delta, &p)) <= 1e-9);
    }

    #[test]
    fn reduced_generator_preserves_trace_and_hermiticity(seed in any::<u64>(), delta in -10.0f64..10.0) {
        let mut rng = common::rng(seed);
        let r = common::random_state(&mut rng);
        let p = common::random_params(&mut rng, true);
        let m = reduced_me_rhs(&r, delta, &p);
        prop_assert!(m.trace().norm() <= 1e-12);
        prop_assert!((m - m.adjoint()).map(|z| z.norm()).max() <= 1e-12);
    }
}

#[test]
fn common_detuning_offset_is_bit_identical() {
    let p = SystemParams::new(0.3).with_gamma(1e-3).with_nbar(0.06);
    let step = StepConfig::new(1e-2, 25);
    let reference = integrate_reduced(
        TwoQubitState::basis(0),
        DetuningSchedule::heaviside(10.0, 2.5),
        &p,
        10.0,
        step,
    )
    .unwrap();
    // offsets exactly representable so that (5 + o) - (o - 5) == 10 in floating point
    for offset in [0.0, 0.125, -3.5, 7.25] {
        let pair = Drive::pair(
            DetuningSchedule::Piecewise {
                breaks: vec![2.5],
                values: vec![offset, 5.0 + offset],
            },
            DetuningSchedule::Piecewise {
                breaks: vec![2.5],
                values: vec![offset, offset - 5.0],
            },
        );
        let t = integrate_reduced(TwoQubitState::basis(0), pair, &p, 10.0, step).unwrap();
        assert_eq!(t.taus, reference.taus);
        for (a, b) in t.states.iter().zip(&reference.states) {
            assert_eq!(a.matrix(), b.matrix(), "offset {offset}");
        }
    }
}

/// Resonant `p_s(tau0)` from the closed form `x e^-x`.
fn resonant_ps(p: &SystemParams, tau0: f64) -> f64 {
    let x = 4.0 * p.collective_rate() * p.tau_to_t(tau0);
    x * (-x).exp()
}

#[test]
fn steady_concurrence_follows_sin_squared_law() {
    // With gamma = nbar = 0 the step freezes the s/a content reached at tau0:
    // C_steady = p_s(tau0) sin^2(A/2).
    let p = SystemParams::new(0.3);
    for amplitude in [2.0, 8.0, 10.0, 12.0] {
        for tau0 in [1.5, 2.5, 3.5] {
            let t = bloch::integrate(
                DickeState::up(),
                DetuningSchedule::heaviside(amplitude, tau0),
                &p,
                80.0,
                StepConfig::new(1e-3, 1000),
            )
            .unwrap();
            let c = concurrence_xform(t.last().unwrap().1).0;
            let expected = resonant_ps(&p, tau0) * (amplitude / 2.0f64).sin().powi(2);
            assert_abs_diff_eq!(c, expected, epsilon = 1e-6);
        }
    }
}

#[test]
fn steady_concurrence_peaks_for_switch_at_superradiant_maximum() {
    let p = SystemParams::new(0.3);
    let steady = |tau0: f64| {
        let t = bloch::integrate(
            DickeState::up(),
            DetuningSchedule::heaviside(10.0, tau0),
            &p,
            60.0,
            StepConfig::new(1e-3, 1000),
        )
        .unwrap();
        concurrence_xform(t.last().unwrap().1).0
    };
    let best = steady(2.5);
    for tau0 in [1.5, 2.0, 3.0, 3.5] {
        assert!(steady(tau0) < best, "tau0 {tau0}");
    }
}

#[test]
fn wide_pulse_equals_step_and_short_pulse_leaves_antisymmetric_plateau() {
    let p = SystemParams::new(0.3);
    let run = |s: DetuningSchedule, tau_end: f64| {
        bloch::integrate(DickeState::up(), s, &p, tau_end, StepConfig::new(1e-3, 100)).unwrap()
    };
    let step = run(DetuningSchedule::heaviside(10.0, 2.5), 30.0);
    let wide = run(DetuningSchedule::pulse(10.0, 2.5, 100.0), 30.0);
    assert_eq!(step.states, wide.states);

    // once the pulse ends the symmetric part decays and only p_a is left:
    // C -> p_a - 2 sqrt(p_up p_down), the root term still ~1e-7 at tau = 80
    let short = run(DetuningSchedule::pulse(10.0, 2.5, 1.0), 80.0);
    let d = short.last().unwrap().1;
    assert!(d.p_s < 1e-8 && d.c_sa.norm() < 1e-8);
    assert_abs_diff_eq!(concurrence_xform(d).0, d.p_a - 2.0 * (d.p_up * d.p_down).sqrt(), epsilon = 1e-9);
    assert!(d.p_a > 0.0);
}

#[test]
fn wootters_handles_rank_deficient_states() {
    let bell = DickeState::symmetric().to_computational().unwrap();
    let (c, r) = concurrence_wootters(&bell).unwrap();
    assert_abs_diff_eq!(c, 1.0, epsilon = 1e-14);
    assert_abs_diff_eq!(r, 1.0, epsilon = 1e-14);
    let psi = [C64::new(0.6, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.8)];
    let (c, _) = concurrence_wootters(&TwoQubitState::pure(psi)).unwrap();
    assert_abs_diff_eq!(c, 2.0 * 0.6 * 0.8, epsilon = 1e-14);
}
