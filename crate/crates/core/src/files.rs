//! File formats: JSON inputs and arrival traces.
//!
//! A trace is CSV with the header `timestamp,seq,path` and an optional
//! fourth column `expected` (`passed`, `discarded_duplicate` or
//! `discarded_rogue`) for conformance checks. Timestamps carry a unit suffix
//! and must be non-decreasing; rows sharing a timestamp are processed in file
//! order.

use std::fs;
use std::io::Read;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::domain::RecoveryConfig;
use crate::error::{Error, Result};
use crate::recovery::Outcome;
use crate::sim::{drive, Arrival, SimResult};
use crate::time::Nanos;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| Error::Json {
        path: path.to_path_buf(),
        field: e.path().to_string(),
        source: e.into_inner(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceRecord {
    pub timestamp: Nanos,
    pub seq: u64,
    pub path: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Outcome>,
}

pub fn parse_trace<R: Read>(reader: R, context: &str) -> Result<Vec<TraceRecord>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let records = rdr
        .deserialize()
        .collect::<std::result::Result<Vec<TraceRecord>, _>>()
        .map_err(|source| Error::Csv {
            context: context.to_string(),
            source,
        })?;
    if let Some(i) = records.windows(2).position(|w| w[1].timestamp < w[0].timestamp) {
        return Err(Error::invalid(format!(
            "{context}: timestamps go backwards at data row {}",
            i + 2
        )));
    }
    Ok(records)
}

pub fn read_trace(path: &Path) -> Result<Vec<TraceRecord>> {
    let file = fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_trace(file, &path.display().to_string())
}

/// A trace row whose outcome differed from its `expected` column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub row: usize,
    pub seq: u64,
    pub expected: Outcome,
    pub actual: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub result: SimResult,
    pub outcomes: Vec<Outcome>,
    pub mismatches: Vec<Mismatch>,
}

/// Feeds a trace through one recovery instance.
pub fn replay(config: &RecoveryConfig, trace: &[TraceRecord]) -> ReplayReport {
    let mut path_ids: Vec<String> = Vec::new();
    let arrivals: Vec<Arrival> = trace
        .iter()
        .map(|r| {
            let path = path_ids.iter().position(|p| *p == r.path).unwrap_or_else(|| {
                path_ids.push(r.path.clone());
                path_ids.len() - 1
            });
            Arrival {
                at: r.timestamp,
                path,
                seq: r.seq,
            }
        })
        .collect();
    let (result, outcomes) = drive(config, &arrivals, &path_ids);
    let mismatches = trace
        .iter()
        .zip(&outcomes)
        .enumerate()
        .filter_map(|(row, (r, &actual))| match r.expected {
            Some(expected) if expected != actual => Some(Mismatch {
                row: row + 1,
                seq: r.seq,
                expected,
                actual,
            }),
            _ => None,
        })
        .collect();
    ReplayReport {
        result,
        outcomes,
        mismatches,
    }
}
