//! Configurator bounds against brute-force timelines and simulation.

use proptest::prelude::*;

use frer::configurator::{
    advise, burst_bound, check, min_history_length, mra_applicable, reset_timeout, Preference, ResetPolicy,
};
use frer::domain::{two_path_envelope, RecoveryConfig, TrafficSpec};
use frer::sim::{self, presets, JitterPolicy, Scenario};
use frer::Nanos;

fn traffic(cmi: u64, mif: u32, jitter: u64) -> TrafficSpec {
    TrafficSpec::new(Nanos(cmi), mif, 64, Nanos(jitter)).unwrap()
}

/// Most periodic send instants that fit in any closed window of length `w`.
fn max_overlap(cmi: u64, w: u64) -> u64 {
    let horizon = w / cmi + 4;
    (0..horizon)
        .map(|i| (i..horizon * 2).filter(|&j| (j - i) * cmi <= w).count() as u64)
        .max()
        .unwrap()
}

/// Frames passed by a perfect eliminator around a fast-path outage, with the
/// fast path at zero delay and the slow one at `d`; returns the number of
/// passed frames closer than `cmi` to their predecessor.
fn outage_burst(cmi: u64, d: u64) -> u64 {
    let lead = d / cmi + 3;
    let (down_from, down_to) = (lead, lead + 2 * (d / cmi + 3));
    let end = down_to + d / cmi + 3;
    let mut passed: Vec<u64> = (0..end)
        .map(|k| {
            let send = k * cmi;
            if (down_from..down_to).contains(&k) {
                send + d
            } else {
                send
            }
        })
        .collect();
    passed.sort_unstable();
    passed.windows(2).filter(|w| w[1] - w[0] < cmi).count() as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn history_length_is_overlap_plus_one(cmi in 1u64..50_000, delta_d in 0u64..200_000, jitter_frac in 0u64..100) {
        let jitter = (cmi - 1) * jitter_frac / 100;
        let t = traffic(cmi, 1, jitter);
        let l = min_history_length(&t, &two_path_envelope(Nanos(delta_d)));
        prop_assert_eq!(u64::from(l), max_overlap(cmi, delta_d + jitter) + 1);
    }

    #[test]
    fn multi_frame_history_scales_with_mif(cmi in 1u64..50_000, delta_d in 0u64..200_000, mif in 1u32..9) {
        let env = two_path_envelope(Nanos(delta_d));
        let one = min_history_length(&traffic(cmi.max(9), 1, 0), &env);
        let many = min_history_length(&traffic(cmi.max(9), mif, 0), &env);
        prop_assert_eq!(many, one * mif);
    }

    /// The bound is the largest burst over every slow-path delay up to
    /// delta_d: it is hit exactly unless delta_d is a multiple of the CMI,
    /// where it is the limit from below. A 1ns CMI has no delay strictly
    /// between multiples, so it is left out.
    #[test]
    fn burst_bound_is_supremum_of_outage_bursts(cmi in 2u64..400, delta_d in 1u64..4_000) {
        let b = burst_bound(&traffic(cmi, 1, 0), &two_path_envelope(Nanos(delta_d)));
        let sup = outage_burst(cmi, delta_d).max(outage_burst(cmi, delta_d - 1));
        prop_assert_eq!(b, sup);
        if delta_d % cmi != 0 {
            prop_assert_eq!(b, outage_burst(cmi, delta_d));
        }
    }

    #[test]
    fn reset_policies(cmi in 1u64..1_000_000, delta_d in 0u64..2_000_000, jitter_frac in 0u64..100) {
        let jitter = (cmi - 1) * jitter_frac / 100;
        let t = traffic(cmi, 1, jitter);
        let env = two_path_envelope(Nanos(delta_d));
        let minimal = reset_timeout(&t, &env, ResetPolicy::MinimalSafe);
        let tolerant = reset_timeout(&t, &env, ResetPolicy::LossTolerant);
        prop_assert_eq!(minimal, Nanos(delta_d + 1));
        prop_assert!(tolerant > minimal);
        prop_assert_eq!(tolerant, Nanos(delta_d + jitter + cmi));
    }

    /// Advised configurations always pass their own check, and the check
    /// rejects one step below each bound.
    #[test]
    fn advice_passes_check(cmi in 2u64..500, delta_d in 0u64..2_000, mif in 1u32..4, jitter_frac in 0u64..100, force_vra in any::<bool>()) {
        let cmi = cmi * 1000;
        let jitter = (cmi - u64::from(mif)) * jitter_frac / 100;
        let t = traffic(cmi, mif, jitter);
        let env = two_path_envelope(Nanos::from_us(delta_d));
        let prefer = if force_vra { Preference::ForceVra } else { Preference::PreferMra };
        let advice = advise(&t, &env, prefer);
        prop_assert!(check(&advice.config, &t, &env).all_passed());

        let short = advice.config.with_reset_timeout(env.delta_d().max(Nanos(1))).unwrap();
        prop_assert!(!check(&short, &t, &env).all_passed() || env.delta_d() == Nanos::ZERO);
        let min_l = advice.min_history_length;
        if min_l > 2 {
            let vra = RecoveryConfig::vra(min_l - 1, advice.reset_timeout).unwrap();
            prop_assert!(!check(&vra, &t, &env).all_passed());
        }
    }
}

/// Match recovery under adversarial delays and jitter passes duplicates
/// exactly when the configurator forbids it.
#[test]
fn mra_rule_matches_simulation_with_jitter() {
    for cmi_us in [50u64, 100, 125, 200] {
        for delta_us in (0..=250).step_by(25) {
            for jitter_us in [0u64, 10, 25, 40] {
                let cmi = Nanos::from_us(cmi_us);
                let t = TrafficSpec::new(cmi, 1, 64, Nanos::from_us(jitter_us)).unwrap();
                let env = two_path_envelope(Nanos::from_us(delta_us));
                let reset = reset_timeout(&t, &env, ResetPolicy::LossTolerant);
                let mut s =
                    presets::baseline(t.clone(), env.delta_d(), RecoveryConfig::mra(reset).unwrap(), 100);
                s.jitter_policy = JitterPolicy::Adversarial;
                let r = sim::run(&s).unwrap();
                assert_eq!(
                    r.passed_duplicates == 0,
                    mra_applicable(&t, &env),
                    "cmi={cmi_us} delta_d={delta_us} J={jitter_us}: {}",
                    r.summary()
                );
            }
        }
    }
}

/// One below the advised history length loses frames to the rogue check
/// in the outage experiment; the advised length does not.
#[test]
fn history_bound_is_tight() {
    for delta_us in (0..=700).step_by(35) {
        let t = presets::cmi_125us();
        let env = two_path_envelope(Nanos::from_us(delta_us));
        let min_l = min_history_length(&t, &env);
        let at = sim::run(&presets::history_boundary(min_l, env.delta_d())).unwrap();
        assert_eq!(at.counters.rogue, 0, "delta_d={delta_us}: {}", at.summary());
        if min_l > 2 {
            let below = sim::run(&presets::history_boundary(min_l - 1, env.delta_d())).unwrap();
            assert!(
                below.counters.rogue > 0,
                "delta_d={delta_us}: {}",
                below.summary()
            );
        }
    }
}

/// Minimal-safe reset keeps duplicates out of the lost-frame experiment;
/// a reset equal to delta_d does not.
#[test]
fn minimal_reset_is_tight() {
    for delta_us in [25u64, 75, 100, 150, 300, 450] {
        let t = presets::cmi_125us();
        let env = two_path_envelope(Nanos::from_us(delta_us));
        let minimal = reset_timeout(&t, &env, ResetPolicy::MinimalSafe);
        let ok = sim::run(&presets::reset_boundary(minimal, env.delta_d())).unwrap();
        assert_eq!(ok.passed_duplicates, 0, "delta_d={delta_us}: {}", ok.summary());
        let bad = sim::run(&presets::reset_boundary(env.delta_d(), env.delta_d())).unwrap();
        assert!(bad.passed_duplicates > 0, "delta_d={delta_us}: {}", bad.summary());
    }
}

/// Multi-frame and jittered streams stay rogue- and duplicate-free under
/// the advised configuration through a fast-path outage.
#[test]
fn advised_multi_frame_streams_are_safe() {
    for mif in 1..=3u32 {
        for jitter_us in [0u64, 20, 50] {
            for delta_us in [0u64, 60, 125, 190, 310] {
                let t = TrafficSpec::new(Nanos::from_us(125), mif, 64, Nanos::from_us(jitter_us)).unwrap();
                let delta_d = Nanos::from_us(delta_us);
                let config = presets::advised_config(&t, delta_d, Preference::ForceVra);
                let mut s: Scenario = presets::fast_path_outage(t, delta_d, config);
                s.num_packets = 800;
                if jitter_us > 0 {
                    s.jitter_policy = JitterPolicy::Adversarial;
                }
                let r = sim::run(&s).unwrap();
                assert_eq!(
                    (r.counters.rogue, r.passed_duplicates, r.missed),
                    (0, 0, 0),
                    "mif={mif} J={jitter_us} delta_d={delta_us}: {}",
                    r.summary()
                );
            }
        }
    }
}
