use std::path::PathBuf;

use proptest::prelude::*;

use frer::configurator::Preference;
use frer::domain::{PathDelay, RecoveryConfig, TrafficSpec};
use frer::files::read_json;
use frer::sim::{self, adversarial_phasing, presets, send_times, Failure, JitterPolicy, Phasing, Scenario};
use frer::Nanos;

fn us(v: u64) -> Nanos {
    Nanos::from_us(v)
}

fn scenario_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(name)
}

#[test]
fn lost_frame_reset_table() {
    let r = sim::run(&presets::reset_boundary(us(200), us(75))).unwrap();
    assert_eq!(
        (
            r.counters.passed,
            r.passed_duplicates,
            r.counters.rogue,
            r.counters.resets
        ),
        (99, 0, 0, 2)
    );
    let short = sim::run(&presets::reset_boundary(us(75), us(75))).unwrap();
    assert!(short.passed_duplicates >= 1);
}

#[test]
fn identical_paths_under_mra() {
    let s = presets::baseline(
        presets::cmi_125us(),
        Nanos::ZERO,
        RecoveryConfig::mra(us(10)).unwrap(),
        10,
    );
    let r = sim::run(&s).unwrap();
    assert_eq!(r.counters.passed, 10);
    assert_eq!(r.counters.discarded_duplicates, 10);
    assert_eq!(r.counters.rogue, 0);
    assert_eq!(r.passed_duplicates, 0);
}

#[test]
fn burst_after_outage() {
    let r = sim::run(&presets::burst(us(75))).unwrap();
    assert_eq!(r.max_burst, 1);
    assert_eq!((r.counters.rogue, r.passed_duplicates, r.missed), (0, 0, 0));
}

/// At delta_d = m * CMI with constant delays, slow and fast copies of
/// different numbers coincide, and the measured burst is m rather than the
/// bound 2m - 1. Just below the multiple the bound is reached.
#[test]
fn burst_at_exact_multiples_of_cmi() {
    for m in 1..=4u64 {
        let at = sim::run(&presets::burst(us(125 * m))).unwrap();
        assert_eq!(at.max_burst, m, "delta_d={}us", 125 * m);
        let below = sim::run(&presets::burst(us(125 * m) - Nanos(1))).unwrap();
        assert_eq!(below.max_burst, 2 * m - 1, "delta_d={}us - 1ns", 125 * m);
    }
}

#[test]
fn adversarial_phasing_examples() {
    let mra = |cmi, delta_d| {
        let t = TrafficSpec::periodic(us(cmi)).unwrap();
        presets::baseline(
            t,
            us(delta_d),
            RecoveryConfig::mra(us(delta_d + cmi)).unwrap(),
            100,
        )
    };
    let overtaken = sim::run(&adversarial_phasing(&mra(100, 100)).unwrap()).unwrap();
    assert!(overtaken.passed_duplicates >= 1);
    let safe = sim::run(&adversarial_phasing(&mra(125, 75)).unwrap()).unwrap();
    assert_eq!(safe.passed_duplicates, 0);

    // Pinning the worst case changes nothing for a jitter-free template.
    let template = mra(125, 75);
    assert_eq!(sim::run(&template).unwrap(), safe);
}

/// Adversarial jitter delays one frame and advances the next by a total
/// of J, which is what turns CMI > delta_d into an unsafe MRA setting.
#[test]
fn adversarial_jitter_closes_the_gap() {
    let t = TrafficSpec::new(us(125), 1, 64, us(60)).unwrap();
    let mut s = presets::baseline(t, us(75), RecoveryConfig::mra(us(260)).unwrap(), 100);
    assert_eq!(sim::run(&s).unwrap().passed_duplicates, 0);
    s.jitter_policy = JitterPolicy::Adversarial;
    assert!(sim::run(&s).unwrap().passed_duplicates >= 1);
    let sends = send_times(&s);
    assert_eq!(sends[1] - sends[0], us(125) - us(60));
}

#[test]
fn delivery_log_is_time_ordered() {
    let s: Scenario = read_json(&scenario_file("random_delays.json")).unwrap();
    let r = sim::run(&s).unwrap();
    for log in [&r.passed_log, &r.duplicate_log, &r.rogue_log] {
        assert!(log.windows(2).all(|w| w[0].at <= w[1].at));
    }
    assert_eq!(r.counters.passed, r.passed_log.len() as u64);
    assert_eq!(r.counters.discarded_duplicates, r.duplicate_log.len() as u64);
    assert_eq!(r.counters.rogue, r.rogue_log.len() as u64);
    assert_eq!(r.counters.resets, r.reset_log.len() as u64);
}

/// A single number lost before replication can leave the next one a full
/// window ahead of the anchor. With the minimum history length and random
/// delays it may arrive before the reset timer fires and is then rogue.
/// The advised bounds do not cover losses of this kind.
#[test]
fn source_loss_can_produce_a_rogue_frame_at_minimum_history() {
    let t = TrafficSpec::periodic(Nanos(329_979)).unwrap();
    let paths = vec![
        PathDelay::new("p0", Nanos(15_886), Nanos(233_838)).unwrap(),
        PathDelay::new("p1", Nanos(325_195), Nanos(328_901)).unwrap(),
    ];
    let env = frer::domain::compound_envelope(&paths).unwrap();
    let config = frer::configurator::advise(&t, &env, Preference::ForceVra).config;
    assert_eq!(config.history_length(), 2);
    let mut s = Scenario::new(t, paths, config, 75);
    s.phasing = Phasing::UniformRandom { seed: None };
    s.seed = 9_419_096_704_002_917_995;
    s.pre_replication_losses.insert(5);
    let r = sim::run(&s).unwrap();
    assert!(r.rogue_log.iter().any(|e| e.seq == 6), "{}", r.summary());

    s.pre_replication_losses.clear();
    assert_eq!(sim::run(&s).unwrap().counters.rogue, 0);
}

#[test]
fn invalid_scenarios_are_rejected_before_running() {
    let base = presets::reset_boundary(us(200), us(75));

    let mut s = base.clone();
    s.failures.push(Failure {
        path_id: "nowhere".into(),
        start: Nanos::ZERO,
        end: us(1),
    });
    assert!(sim::run(&s).is_err());

    let mut s = base.clone();
    s.failures.push(Failure {
        path_id: "fast".into(),
        start: us(5),
        end: us(5),
    });
    assert!(sim::run(&s).is_err());

    let mut s = base.clone();
    s.pre_replication_losses.insert(100);
    assert!(sim::run(&s).is_err());

    let mut s = base;
    s.num_packets = 0;
    assert!(sim::run(&s).is_err());
}

#[test]
fn scenario_files_reject_unknown_fields_and_bare_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let good = std::fs::read_to_string(scenario_file("lost_frame.json")).unwrap();

    let extra = dir.path().join("extra.json");
    std::fs::write(
        &extra,
        good.replacen("\"num_packets\"", "\"colour\": 1, \"num_packets\"", 1),
    )
    .unwrap();
    assert!(read_json::<Scenario>(&extra).is_err());

    let bare = dir.path().join("bare.json");
    std::fs::write(&bare, good.replace("\"200us\"", "200")).unwrap();
    let err = read_json::<Scenario>(&bare).unwrap_err().to_string();
    assert!(err.contains("reset_timeout"), "{err}");
}

fn random_scenario() -> impl Strategy<Value = Scenario> {
    (
        20u64..300,
        1u32..4,
        0u64..100,
        prop::collection::vec((0u64..200, 0u64..200), 2..5),
        10u64..120,
        any::<u64>(),
        any::<bool>(),
    )
        .prop_map(|(cmi, mif, jitter_pct, bounds, n, seed, random_jitter)| {
            let cmi = us(cmi);
            let jitter = Nanos((cmi.as_ns() - u64::from(mif)) * jitter_pct / 100);
            let t = TrafficSpec::new(cmi, mif, 64, jitter).unwrap();
            let paths: Vec<PathDelay> = bounds
                .iter()
                .enumerate()
                .map(|(i, &(lo, extra))| PathDelay::new(format!("p{i}"), us(lo), us(lo + extra)).unwrap())
                .collect();
            let env = frer::domain::compound_envelope(&paths).unwrap();
            let config = frer::configurator::advise(&t, &env, Preference::ForceVra).config;
            let mut s = Scenario::new(t, paths, config, n);
            s.phasing = Phasing::UniformRandom { seed: None };
            s.jitter_policy = if random_jitter {
                JitterPolicy::UniformRandom { seed: None }
            } else {
                JitterPolicy::Adversarial
            };
            s.seed = seed;
            s
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn no_failure_baseline(delta in 0u64..600, paths in 2usize..5, n in 1u64..200, mif in 1u32..4) {
        let t = TrafficSpec::new(us(125), mif, 64, Nanos::ZERO).unwrap();
        let delays: Vec<PathDelay> = (0..paths)
            .map(|i| PathDelay::constant(format!("p{i}"), us(delta * i as u64 / (paths as u64 - 1))))
            .collect();
        let env = frer::domain::compound_envelope(&delays).unwrap();
        let config = frer::configurator::advise(&t, &env, Preference::PreferMra).config;
        let r = sim::run(&Scenario::new(t, delays, config, n)).unwrap();
        let frames = n * u64::from(mif);
        prop_assert_eq!(r.counters.passed, frames);
        prop_assert_eq!(r.counters.discarded_duplicates, frames * (paths as u64 - 1));
        prop_assert_eq!(r.counters.rogue, 0);
        prop_assert_eq!(r.passed_duplicates, 0);
    }

    /// Per path, frames arrive in send order and within the path's bounds.
    #[test]
    fn fifo_per_path(s in random_scenario()) {
        let sends = send_times(&s);
        let arrivals = sim::arrivals(&s).unwrap();
        for (i, p) in s.paths.iter().enumerate() {
            let mut last: Option<(u64, Nanos)> = None;
            for a in arrivals.iter().filter(|a| a.path == i) {
                let d = a.at - sends[a.seq as usize];
                prop_assert!(d >= p.d_bc() && d <= p.d_wc());
                if let Some((seq, at)) = last {
                    prop_assert!(a.seq > seq && a.at >= at);
                }
                last = Some((a.seq, a.at));
            }
        }
    }

    #[test]
    fn reruns_are_byte_identical(s in random_scenario()) {
        let a = serde_json::to_string(&sim::run(&s).unwrap()).unwrap();
        let b = serde_json::to_string(&sim::run(&s).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    /// Advised configurations agree with the perfect eliminator.
    #[test]
    fn advised_config_matches_oracle(s in random_scenario()) {
        let r = sim::run(&s).unwrap();
        prop_assert_eq!(r.counters.rogue, 0);
        prop_assert_eq!(r.passed_duplicates, 0);
        prop_assert_eq!(r.missed, 0);
        prop_assert_eq!(r.counters.passed, r.oracle_first_arrivals);
        prop_assert_eq!(r.counters.discarded_duplicates, r.oracle_duplicates);
    }

    #[test]
    fn scenario_json_round_trips(s in random_scenario()) {
        let text = serde_json::to_string(&s).unwrap();
        let back: Scenario = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, s);
    }
}
