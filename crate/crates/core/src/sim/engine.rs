use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use serde::{Deserialize, Serialize};

use super::metrics::burst_per_failure;
use super::phasing::{arrivals, Arrival};
use super::scenario::Scenario;
use crate::domain::{Counters, RecoveryConfig};
use crate::error::Result;
use crate::oracle::OracleState;
use crate::recovery::{Outcome, RecoveryState};
use crate::time::Nanos;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogEntry {
    pub seq: u64,
    pub at: Nanos,
    pub path_id: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimResult {
    pub counters: Counters,
    /// Frames passed although an earlier copy had already been passed.
    pub passed_duplicates: u64,
    /// Sequence numbers that arrived at least once but were never passed.
    pub missed: u64,
    pub oracle_first_arrivals: u64,
    pub oracle_duplicates: u64,
    pub ambiguities: u64,
    pub max_burst: u64,
    pub passed_log: Vec<LogEntry>,
    pub duplicate_log: Vec<LogEntry>,
    pub rogue_log: Vec<LogEntry>,
    pub reset_log: Vec<Nanos>,
}

impl SimResult {
    /// Distinct sequence numbers that were passed at least once.
    pub fn passed_set(&self) -> HashSet<u64> {
        self.passed_log.iter().map(|e| e.seq).collect()
    }

    pub fn summary(&self) -> String {
        format!(
            "passed={} duplicates={} rogue={} resets={} discarded={} missed={} max_burst={}",
            self.counters.passed,
            self.passed_duplicates,
            self.counters.rogue,
            self.counters.resets,
            self.counters.discarded_duplicates,
            self.missed,
            self.max_burst
        )
    }
}

/// Queue entry. At equal timestamps timers run before arrivals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Event {
    Timer { at: Nanos, generation: u64 },
    Arrival { at: Nanos, ordinal: usize },
}

impl Event {
    fn key(&self) -> (Nanos, u8, u64) {
        match *self {
            Event::Timer { at, generation } => (at, 0, generation),
            Event::Arrival { at, ordinal } => (at, 1, ordinal as u64),
        }
    }
}

#[derive(PartialEq, Eq)]
struct Queued(Event);

impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Queued {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.key().cmp(&other.0.key())
    }
}

/// Drives one recovery instance and the oracle over arrivals given in
/// delivery order. Pending timers fire between arrivals and after the last
/// one. Also returns the outcome of every arrival, by input position.
pub fn drive(
    config: &RecoveryConfig,
    arrivals: &[Arrival],
    path_ids: &[String],
) -> (SimResult, Vec<Outcome>) {
    let mut state = RecoveryState::new(config.clone());
    let mut oracle = OracleState::new();
    let mut queue: BinaryHeap<Reverse<Queued>> = arrivals
        .iter()
        .enumerate()
        .map(|(ordinal, a)| Reverse(Queued(Event::Arrival { at: a.at, ordinal })))
        .collect();

    let mut generation = 0u64;
    let mut passed_duplicates = 0;
    let mut passed_log = Vec::new();
    let mut duplicate_log = Vec::new();
    let mut rogue_log = Vec::new();
    let mut reset_log = Vec::new();
    let mut outcomes = vec![Outcome::Passed; arrivals.len()];
    let mut passed: HashSet<u64> = HashSet::new();

    while let Some(Reverse(Queued(event))) = queue.pop() {
        match event {
            Event::Timer { at, generation: g } => {
                if g == generation && state.check_timeout(at) {
                    reset_log.push(at);
                }
            }
            Event::Arrival { at, ordinal } => {
                let a = arrivals[ordinal];
                oracle.classify(a.seq, at);
                let verdict = state.accept(a.seq, at);
                outcomes[ordinal] = verdict.outcome;
                if verdict.reset_applied {
                    reset_log.push(at);
                }
                let entry = LogEntry {
                    seq: a.seq,
                    at,
                    path_id: path_ids[a.path].clone(),
                };
                match verdict.outcome {
                    Outcome::Passed => {
                        if !passed.insert(a.seq) {
                            passed_duplicates += 1;
                        }
                        passed_log.push(entry);
                    }
                    Outcome::DiscardedDuplicate => duplicate_log.push(entry),
                    Outcome::DiscardedRogue => rogue_log.push(entry),
                }
                if verdict.timer_restarted {
                    generation += 1;
                    let deadline = state.timer_deadline().expect("timer armed on pass");
                    queue.push(Reverse(Queued(Event::Timer {
                        at: deadline,
                        generation,
                    })));
                }
            }
        }
    }

    let missed = oracle
        .first_arrivals()
        .iter()
        .filter(|(seq, _)| !passed.contains(seq))
        .count() as u64;

    let result = SimResult {
        counters: state.counters(),
        passed_duplicates,
        missed,
        oracle_first_arrivals: oracle.first_arrivals().len() as u64,
        oracle_duplicates: oracle.duplicates(),
        ambiguities: state.ambiguities(),
        max_burst: 0,
        passed_log,
        duplicate_log,
        rogue_log,
        reset_log,
    };
    (result, outcomes)
}

/// Runs a scenario end to end.
pub fn run(scenario: &Scenario) -> Result<SimResult> {
    scenario.validate()?;
    let arrivals = arrivals(scenario)?;
    let path_ids: Vec<String> = scenario.paths.iter().map(|p| p.path_id().to_string()).collect();
    let (mut result, _) = drive(&scenario.config, &arrivals, &path_ids);
    let times: Vec<Nanos> = result.passed_log.iter().map(|e| e.at).collect();
    result.max_burst = burst_per_failure(&times, scenario.traffic.cmi(), &scenario.failures);
    Ok(result)
}
