//! Ready-made scenarios for the evaluation experiments.
//!
//! All presets use two constant-delay paths: `fast` (zero delay, listed first
//! so it wins timestamp ties) and `slow` (delay `delta_d`).

use crate::configurator::{advise, Preference};
use crate::domain::{two_path_envelope, RecoveryConfig, TrafficSpec};
use crate::time::Nanos;

use super::scenario::{Failure, Scenario};

/// Frames sent per run unless the experiment needs a longer one.
pub const DEFAULT_PACKETS: u64 = 100;

/// Sequence number dropped before replication in the lost-frame experiment.
pub const LOST_FRAME: u64 = 50;

/// Fast-path outage used by the history-length and burst experiments.
pub const OUTAGE_START: Nanos = Nanos::from_ms(1);
pub const OUTAGE_LENGTH: Nanos = Nanos::from_ms(75);

/// Traffic kept flowing after the outage ends.
const AFTER_OUTAGE: Nanos = Nanos::from_ms(10);

pub fn cmi_125us() -> TrafficSpec {
    TrafficSpec::periodic(Nanos::from_us(125)).expect("valid traffic")
}

/// Two paths, no impairments.
pub fn baseline(traffic: TrafficSpec, delta_d: Nanos, config: RecoveryConfig, num_packets: u64) -> Scenario {
    Scenario::new(
        traffic,
        two_path_envelope(delta_d).paths().to_vec(),
        config,
        num_packets,
    )
}

/// The configuration the advisor would pick for this stream and window.
pub fn advised_config(traffic: &TrafficSpec, delta_d: Nanos, prefer: Preference) -> RecoveryConfig {
    advise(traffic, &two_path_envelope(delta_d), prefer).config
}

/// One frame lost between the talker and the replicating device.
pub fn lost_frame(traffic: TrafficSpec, delta_d: Nanos, config: RecoveryConfig) -> Scenario {
    let mut s = baseline(traffic, delta_d, config, DEFAULT_PACKETS);
    s.pre_replication_losses.insert(LOST_FRAME);
    s
}

/// A 75 ms outage of the fast path, with enough frames that traffic keeps
/// flowing well after the path recovers.
pub fn fast_path_outage(traffic: TrafficSpec, delta_d: Nanos, config: RecoveryConfig) -> Scenario {
    let end = OUTAGE_START + OUTAGE_LENGTH;
    let horizon = end + AFTER_OUTAGE + delta_d;
    let num_packets = horizon.as_ns().div_ceil(traffic.cmi().as_ns());
    let mut s = baseline(traffic, delta_d, config, num_packets);
    s.failures.push(Failure {
        path_id: "fast".into(),
        start: OUTAGE_START,
        end,
    });
    s
}

/// Match recovery on a periodic stream with the advised reset timer.
pub fn mra_boundary(cmi: Nanos, delta_d: Nanos) -> Scenario {
    let traffic = TrafficSpec::periodic(cmi).expect("valid cmi");
    let reset = advise(&traffic, &two_path_envelope(delta_d), Preference::PreferMra).reset_timeout;
    let config = RecoveryConfig::mra(reset).expect("valid config");
    baseline(traffic, delta_d, config, DEFAULT_PACKETS)
}

/// Vector recovery with history length `history_length` during a fast-path
/// outage; the reset timer is the advised one.
pub fn history_boundary(history_length: u32, delta_d: Nanos) -> Scenario {
    let traffic = cmi_125us();
    let config = advised_config(&traffic, delta_d, Preference::ForceVra)
        .with_history_length(history_length)
        .expect("valid history length");
    fast_path_outage(traffic, delta_d, config)
}

/// Vector recovery with the advised history length and the given reset
/// timeout, one frame lost before replication.
pub fn reset_boundary(reset_timeout: Nanos, delta_d: Nanos) -> Scenario {
    let traffic = cmi_125us();
    let config = advised_config(&traffic, delta_d, Preference::ForceVra)
        .with_reset_timeout(reset_timeout)
        .expect("valid reset timeout");
    lost_frame(traffic, delta_d, config)
}

/// Fully advised vector recovery through a fast-path outage.
pub fn burst(delta_d: Nanos) -> Scenario {
    let traffic = cmi_125us();
    let config = advised_config(&traffic, delta_d, Preference::ForceVra);
    fast_path_outage(traffic, delta_d, config)
}
