//! Safe sequence-recovery parameters derived from a stream's traffic
//! characteristics and its compound reception window.
//!
//! All bounds are evaluated on integer nanoseconds. A strict bound `x > a/b`
//! is realized as `floor(a/b) + 1`, so exact multiples never flip through
//! rounding.

use serde::{Deserialize, Serialize};

use crate::domain::{Algorithm, DelayEnvelope, RecoveryConfig, SeqSpace, TrafficSpec};
use crate::time::Nanos;

/// `Δd + J`: the reception window widened by the talker's jitter.
fn widened_window(traffic: &TrafficSpec, env: &DelayEnvelope) -> Nanos {
    env.delta_d() + traffic.jitter()
}

/// Whether the compound stream is intermittent, i.e. every copy of a sequence
/// number arrives before any copy of the next one.
pub fn mra_applicable(traffic: &TrafficSpec, env: &DelayEnvelope) -> bool {
    traffic.mif() == 1 && traffic.cmi() > widened_window(traffic, env)
}

/// Smallest history length that keeps every sequence number that can still
/// arrive inside the acceptance interval.
pub fn min_history_length(traffic: &TrafficSpec, env: &DelayEnvelope) -> u32 {
    let windows_per_cmi = widened_window(traffic, env).as_ns() / traffic.cmi().as_ns();
    let per_frame = windows_per_cmi + 2;
    let length = u64::from(traffic.mif()) * per_frame;
    u32::try_from(length).unwrap_or(u32::MAX)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResetPolicy {
    /// One quantum past the reception window: never passes a duplicate, but
    /// may reset between consecutive sequence numbers.
    MinimalSafe,
    /// Waits a further period (plus jitter) so a reset only follows a real
    /// loss.
    LossTolerant,
}

/// Timeout for the sequence recovery reset.
pub fn reset_timeout(traffic: &TrafficSpec, env: &DelayEnvelope, policy: ResetPolicy) -> Nanos {
    match policy {
        ResetPolicy::MinimalSafe => env.delta_d() + Nanos::QUANTUM,
        ResetPolicy::LossTolerant => widened_window(traffic, env) + traffic.cmi(),
    }
}

/// Largest number of frames arriving with less than one CMI spacing after a
/// link recovers from failure.
pub fn burst_bound(traffic: &TrafficSpec, env: &DelayEnvelope) -> u64 {
    let per_window = widened_window(traffic, env)
        .as_ns()
        .div_ceil(traffic.cmi().as_ns());
    (2 * u64::from(traffic.mif()) * per_window).saturating_sub(1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preference {
    PreferMra,
    ForceVra,
}

/// One formula evaluation recorded in [`Advice::rationale`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rationale {
    pub parameter: String,
    pub formula: String,
    pub inputs: Vec<(String, String)>,
    pub result: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Advice {
    pub config: RecoveryConfig,
    pub mra_allowed: bool,
    pub min_history_length: u32,
    pub reset_timeout: Nanos,
    pub burst_bound: u64,
    pub rationale: Vec<Rationale>,
}

/// Assembles a complete recovery configuration for one stream.
pub fn advise(traffic: &TrafficSpec, env: &DelayEnvelope, prefer: Preference) -> Advice {
    let mra_allowed = mra_applicable(traffic, env);
    let min_l = min_history_length(traffic, env);
    let reset = reset_timeout(traffic, env, ResetPolicy::LossTolerant);
    let burst = burst_bound(traffic, env);

    let use_mra = mra_allowed && prefer == Preference::PreferMra;
    let config = if use_mra {
        RecoveryConfig::new(Algorithm::Mra, 1, reset, SeqSpace::Unbounded)
    } else {
        RecoveryConfig::new(Algorithm::Vra, min_l, reset, SeqSpace::Unbounded)
    }
    .expect("advised parameters satisfy config invariants");

    let cmi = traffic.cmi().to_string();
    let delta_d = env.delta_d().to_string();
    let jitter = traffic.jitter().to_string();
    let mif = traffic.mif().to_string();
    let extrapolated = (traffic.mif() > 1 && traffic.jitter() > Nanos::ZERO).then(|| {
        "multi-frame bound with jitter is extrapolated by widening the window to delta_d + jitter".to_string()
    });
    let inputs = |names: &[(&str, &String)]| {
        names
            .iter()
            .map(|(k, v)| (k.to_string(), (*v).clone()))
            .collect::<Vec<_>>()
    };

    let rationale = vec![
        Rationale {
            parameter: "algorithm".into(),
            formula: "mif == 1 && cmi > delta_d + jitter".into(),
            inputs: inputs(&[
                ("cmi", &cmi),
                ("delta_d", &delta_d),
                ("jitter", &jitter),
                ("mif", &mif),
            ]),
            result: if use_mra { "MRA" } else { "VRA" }.into(),
            note: Some(match (mra_allowed, prefer) {
                (true, Preference::PreferMra) => "stream is intermittent".into(),
                (true, Preference::ForceVra) => "stream is intermittent, VRA forced".into(),
                (false, _) => "stream is not intermittent".into(),
            }),
        },
        Rationale {
            parameter: "history_length".into(),
            formula: "mif * floor((delta_d + jitter) / cmi + 2)".into(),
            inputs: inputs(&[
                ("cmi", &cmi),
                ("delta_d", &delta_d),
                ("jitter", &jitter),
                ("mif", &mif),
            ]),
            result: min_l.to_string(),
            note: extrapolated.clone(),
        },
        Rationale {
            parameter: "reset_timeout".into(),
            formula: "delta_d + jitter + cmi".into(),
            inputs: inputs(&[("cmi", &cmi), ("delta_d", &delta_d), ("jitter", &jitter)]),
            result: reset.to_string(),
            note: None,
        },
        Rationale {
            parameter: "burst_bound".into(),
            formula: "max(2 * mif * ceil((delta_d + jitter) / cmi) - 1, 0)".into(),
            inputs: inputs(&[
                ("cmi", &cmi),
                ("delta_d", &delta_d),
                ("jitter", &jitter),
                ("mif", &mif),
            ]),
            result: burst.to_string(),
            note: extrapolated,
        },
    ];

    Advice {
        config,
        mra_allowed,
        min_history_length: min_l,
        reset_timeout: reset,
        burst_bound: burst,
        rationale,
    }
}

/// Outcome of checking one bound against a given configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub passed: bool,
    pub required: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub checks: Vec<BoundCheck>,
    pub burst_bound: u64,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Evaluates an existing configuration against every safety bound.
pub fn check(config: &RecoveryConfig, traffic: &TrafficSpec, env: &DelayEnvelope) -> CheckReport {
    let mut checks = Vec::new();
    match config.algorithm() {
        Algorithm::Mra => checks.push(BoundCheck {
            name: "intermittent stream (MRA)".into(),
            passed: mra_applicable(traffic, env),
            required: format!("mif == 1 and cmi > {}", widened_window(traffic, env)),
            actual: format!("mif = {}, cmi = {}", traffic.mif(), traffic.cmi()),
        }),
        Algorithm::Vra => {
            let min_l = min_history_length(traffic, env);
            checks.push(BoundCheck {
                name: "history length (VRA)".into(),
                passed: config.history_length() >= min_l,
                required: format!(">= {min_l}"),
                actual: config.history_length().to_string(),
            });
        }
    }
    checks.push(BoundCheck {
        name: "reset timeout".into(),
        passed: config.reset_timeout() > env.delta_d(),
        required: format!("> {}", env.delta_d()),
        actual: config.reset_timeout().to_string(),
    });
    CheckReport {
        checks,
        burst_bound: burst_bound(traffic, env),
    }
}
