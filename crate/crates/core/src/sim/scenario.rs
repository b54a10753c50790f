use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::domain::{compound_envelope, DelayEnvelope, PathDelay, RecoveryConfig, TrafficSpec};
use crate::error::{Error, Result};
use crate::time::Nanos;

/// How per-frame, per-path delays are chosen inside each path's bounds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Phasing {
    /// Fastest path at its best case, every other path at its worst case.
    #[default]
    Adversarial,
    /// Independent uniform draws; falls back to the scenario seed.
    UniformRandom {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
    /// Explicit delays indexed `[sequence number][path]`.
    Fixed(Vec<Vec<Nanos>>),
}

/// How the talker deviates from its periodic send instants.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum JitterPolicy {
    #[default]
    None,
    /// Even intervals are sent `jitter` late, odd ones on time.
    Adversarial,
    UniformRandom {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
}

/// A path outage: frames entering the path during `[start, end)` are lost.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Failure {
    pub path_id: String,
    pub start: Nanos,
    pub end: Nanos,
}

impl Failure {
    pub fn covers(&self, t: Nanos) -> bool {
        self.start <= t && t < self.end
    }
}

/// Complete, seeded description of one simulation run.
///
/// `num_packets` counts sending intervals; each interval carries `mif`
/// frames, numbered `k * mif + m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub traffic: TrafficSpec,
    pub paths: Vec<PathDelay>,
    pub config: RecoveryConfig,
    pub num_packets: u64,
    #[serde(default)]
    pub phasing: Phasing,
    #[serde(default)]
    pub jitter_policy: JitterPolicy,
    #[serde(default)]
    pub failures: Vec<Failure>,
    #[serde(default)]
    pub pre_replication_losses: BTreeSet<u64>,
    #[serde(default)]
    pub seed: u64,
}

impl Scenario {
    pub fn new(
        traffic: TrafficSpec,
        paths: Vec<PathDelay>,
        config: RecoveryConfig,
        num_packets: u64,
    ) -> Self {
        Scenario {
            traffic,
            paths,
            config,
            num_packets,
            phasing: Phasing::default(),
            jitter_policy: JitterPolicy::default(),
            failures: Vec::new(),
            pre_replication_losses: BTreeSet::new(),
            seed: 0,
        }
    }

    /// Total number of sequence numbers the talker would send.
    pub fn total_frames(&self) -> u64 {
        self.num_packets * u64::from(self.traffic.mif())
    }

    pub fn envelope(&self) -> Result<DelayEnvelope> {
        compound_envelope(&self.paths)
    }

    pub fn path_index(&self, path_id: &str) -> Option<usize> {
        self.paths.iter().position(|p| p.path_id() == path_id)
    }

    pub fn validate(&self) -> Result<()> {
        if self.paths.is_empty() {
            return Err(Error::invalid("scenario needs at least one path"));
        }
        let mut ids = HashSet::new();
        for p in &self.paths {
            if !ids.insert(p.path_id()) {
                return Err(Error::invalid(format!("duplicate path_id {:?}", p.path_id())));
            }
        }
        if self.num_packets == 0 {
            return Err(Error::invalid("num_packets must be positive"));
        }
        let t = &self.traffic;
        if (t.cmi() - t.jitter()).as_ns() < u64::from(t.mif()) {
            return Err(Error::invalid(
                "cmi - jitter leaves no room for mif distinct send instants",
            ));
        }
        for f in &self.failures {
            if self.path_index(&f.path_id).is_none() {
                return Err(Error::invalid(format!(
                    "failure names unknown path {:?}",
                    f.path_id
                )));
            }
            if f.start >= f.end {
                return Err(Error::invalid(format!(
                    "failure on {:?}: start {} must precede end {}",
                    f.path_id, f.start, f.end
                )));
            }
        }
        let total = self.total_frames();
        if let Some(&bad) = self.pre_replication_losses.iter().find(|&&s| s >= total) {
            return Err(Error::invalid(format!(
                "pre-replication loss {bad} outside [0, {total})"
            )));
        }
        if let Phasing::Fixed(rows) = &self.phasing {
            if rows.len() as u64 != total {
                return Err(Error::invalid(format!(
                    "fixed phasing has {} rows, expected one per frame ({total})",
                    rows.len()
                )));
            }
            for (seq, row) in rows.iter().enumerate() {
                if row.len() != self.paths.len() {
                    return Err(Error::invalid(format!(
                        "fixed phasing row {seq} has {} delays, expected {}",
                        row.len(),
                        self.paths.len()
                    )));
                }
                for (d, p) in row.iter().zip(&self.paths) {
                    if *d < p.d_bc() || *d > p.d_wc() {
                        return Err(Error::invalid(format!(
                            "fixed delay {d} for frame {seq} outside bounds of path {:?}",
                            p.path_id()
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}
