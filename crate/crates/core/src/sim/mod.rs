//! Deterministic discrete-event simulation of replication over disjoint
//! paths and elimination by one recovery instance, checked against the
//! oracle.

mod engine;
mod metrics;
mod phasing;
pub mod presets;
mod scenario;

pub use engine::{drive, run, LogEntry, SimResult};
pub use metrics::{burst_per_failure, measure_burst};
pub use phasing::{adversarial_phasing, arrivals, send_times, Arrival};
pub use scenario::{Failure, JitterPolicy, Phasing, Scenario};
