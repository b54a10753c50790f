//! Sequence recovery: the match (MRA) and vector (VRA) recovery algorithms
//! and the timeout-driven reset.

use bitvec::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domain::{Algorithm, Counters, RecoveryConfig, SeqSpace};
use crate::time::Nanos;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Passed,
    DiscardedDuplicate,
    DiscardedRogue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    /// A pending timeout expired and reset the state before classification.
    pub reset_applied: bool,
    /// The reset timer was (re)started by this arrival.
    pub timer_restarted: bool,
    /// Modular comparison could not order the number against the anchor.
    pub ambiguous: bool,
}

/// Position of an arriving number relative to the anchor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Offset {
    Ahead(u64),
    /// Includes the anchor itself (distance 0).
    Behind(u64),
    Ambiguous,
}

fn offset(space: SeqSpace, anchor: u64, seq: u64) -> Offset {
    match space {
        SeqSpace::Unbounded => {
            if seq > anchor {
                Offset::Ahead(seq - anchor)
            } else {
                Offset::Behind(anchor - seq)
            }
        }
        SeqSpace::Wrap16 => {
            let d = seq.wrapping_sub(anchor) & 0xffff;
            match d {
                0 => Offset::Behind(0),
                0x8000 => Offset::Ambiguous,
                d if d < 0x8000 => Offset::Ahead(d),
                d => Offset::Behind(0x1_0000 - d),
            }
        }
    }
}

/// Live state of one sequence recovery function.
///
/// Bit `i` of the history records whether `recov_seq_num - i` has been
/// passed; bit 0 is the anchor itself.
#[derive(Clone, Debug)]
pub struct RecoveryState {
    config: RecoveryConfig,
    recov_seq_num: Option<u64>,
    history: BitVec<u64, Lsb0>,
    timer_deadline: Option<Nanos>,
    counters: Counters,
    ambiguities: u64,
    last_now: Nanos,
}

impl RecoveryState {
    pub fn new(config: RecoveryConfig) -> Self {
        let len = match config.algorithm() {
            Algorithm::Mra => 0,
            Algorithm::Vra => config.history_length() as usize,
        };
        RecoveryState {
            config,
            recov_seq_num: None,
            history: bitvec![u64, Lsb0; 0; len],
            timer_deadline: None,
            counters: Counters::default(),
            ambiguities: 0,
            last_now: Nanos::ZERO,
        }
    }

    pub fn config(&self) -> &RecoveryConfig {
        &self.config
    }

    pub fn recov_seq_num(&self) -> Option<u64> {
        self.recov_seq_num
    }

    pub fn timer_deadline(&self) -> Option<Nanos> {
        self.timer_deadline
    }

    pub fn counters(&self) -> Counters {
        self.counters
    }

    /// Number of arrivals whose modular distance to the anchor was ambiguous.
    pub fn ambiguities(&self) -> u64 {
        self.ambiguities
    }

    /// Sequence numbers currently flagged as seen, anchor first.
    pub fn seen(&self) -> Vec<u64> {
        let Some(anchor) = self.recov_seq_num else {
            return Vec::new();
        };
        match self.config.algorithm() {
            Algorithm::Mra => vec![anchor],
            Algorithm::Vra => self
                .history
                .iter_ones()
                .map(|i| self.step_back(anchor, i as u64))
                .collect(),
        }
    }

    fn step_back(&self, anchor: u64, by: u64) -> u64 {
        match self.config.seq_space() {
            SeqSpace::Unbounded => anchor - by,
            SeqSpace::Wrap16 => anchor.wrapping_sub(by) & 0xffff,
        }
    }

    /// Clears the anchor, history and timer. Counters other than `resets`
    /// are kept.
    pub fn reset(&mut self) {
        self.recov_seq_num = None;
        self.history.fill(false);
        self.timer_deadline = None;
        self.counters.resets += 1;
    }

    /// Applies a reset if the timer has expired at `now` (inclusive).
    pub fn check_timeout(&mut self, now: Nanos) -> bool {
        debug_assert!(now >= self.last_now, "time went backwards");
        self.last_now = self.last_now.max(now);
        match self.timer_deadline {
            Some(deadline) if now >= deadline => {
                self.reset();
                true
            }
            _ => false,
        }
    }

    /// Classifies one arriving frame. `seq` is reduced into the configured
    /// sequence space first.
    pub fn accept(&mut self, seq: u64, now: Nanos) -> Verdict {
        let reset_applied = self.check_timeout(now);
        let seq = self.config.seq_space().wire(seq);
        let mut ambiguous = false;

        let outcome = match self.config.algorithm() {
            Algorithm::Mra => self.classify_mra(seq),
            Algorithm::Vra => {
                let (outcome, amb) = self.classify_vra(seq);
                ambiguous = amb;
                outcome
            }
        };

        match outcome {
            Outcome::Passed => self.counters.passed += 1,
            Outcome::DiscardedDuplicate => self.counters.discarded_duplicates += 1,
            Outcome::DiscardedRogue => self.counters.rogue += 1,
        }
        if ambiguous {
            self.ambiguities += 1;
        }
        let timer_restarted = outcome == Outcome::Passed;
        if timer_restarted {
            self.timer_deadline = Some(now + self.config.reset_timeout());
        }
        Verdict {
            outcome,
            reset_applied,
            timer_restarted,
            ambiguous,
        }
    }

    fn classify_mra(&mut self, seq: u64) -> Outcome {
        if self.recov_seq_num == Some(seq) {
            Outcome::DiscardedDuplicate
        } else {
            self.recov_seq_num = Some(seq);
            Outcome::Passed
        }
    }

    fn classify_vra(&mut self, seq: u64) -> (Outcome, bool) {
        let Some(anchor) = self.recov_seq_num else {
            self.recov_seq_num = Some(seq);
            self.history.fill(false);
            self.history.set(0, true);
            return (Outcome::Passed, false);
        };
        let reach = u64::from(self.config.history_length()) - 1;
        match offset(self.config.seq_space(), anchor, seq) {
            Offset::Ambiguous => (Outcome::DiscardedRogue, true),
            Offset::Ahead(n) | Offset::Behind(n) if n > reach => (Outcome::DiscardedRogue, false),
            Offset::Ahead(n) => {
                self.shift(n);
                self.history.set(0, true);
                self.recov_seq_num = Some(seq);
                (Outcome::Passed, false)
            }
            Offset::Behind(n) => {
                let i = n as usize;
                if self.history[i] {
                    (Outcome::DiscardedDuplicate, false)
                } else {
                    self.history.set(i, true);
                    (Outcome::Passed, false)
                }
            }
        }
    }

    /// Ages the history by `n` positions; bits pushed past the end are lost.
    fn shift(&mut self, n: u64) {
        if n >= self.history.len() as u64 {
            self.history.fill(false);
        } else {
            self.history.shift_end(n as usize);
        }
    }
}
