//! Perfect eliminator with unbounded memory, used as ground truth.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::time::Nanos;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    FirstArrival,
    Duplicate,
}

#[derive(Clone, Debug, Default)]
pub struct OracleState {
    seen: HashSet<u64>,
    first_arrivals: Vec<(u64, Nanos)>,
    duplicates: u64,
}

impl OracleState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn classify(&mut self, seq: u64, now: Nanos) -> Classification {
        if self.seen.insert(seq) {
            self.first_arrivals.push((seq, now));
            Classification::FirstArrival
        } else {
            self.duplicates += 1;
            Classification::Duplicate
        }
    }

    pub fn contains(&self, seq: u64) -> bool {
        self.seen.contains(&seq)
    }

    /// First arrivals in classification order.
    pub fn first_arrivals(&self) -> &[(u64, Nanos)] {
        &self.first_arrivals
    }

    pub fn duplicates(&self) -> u64 {
        self.duplicates
    }
}
