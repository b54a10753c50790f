//! Value types shared by the configurator, the recovery functions and the
//! simulator.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::time::Nanos;

/// Registered traffic characteristics of one compound stream.
///
/// At most `mif` frames of at most `mfs` bytes are sent per `cmi`; `jitter`
/// is the talker's largest deviation from its periodic send instant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTrafficSpec", into = "RawTrafficSpec")]
pub struct TrafficSpec {
    cmi: Nanos,
    mif: u32,
    mfs: u32,
    jitter: Nanos,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTrafficSpec {
    cmi: Nanos,
    mif: u32,
    mfs: u32,
    #[serde(default)]
    jitter: Nanos,
}

impl TryFrom<RawTrafficSpec> for TrafficSpec {
    type Error = Error;
    fn try_from(raw: RawTrafficSpec) -> Result<Self> {
        TrafficSpec::new(raw.cmi, raw.mif, raw.mfs, raw.jitter)
    }
}

impl From<TrafficSpec> for RawTrafficSpec {
    fn from(t: TrafficSpec) -> Self {
        RawTrafficSpec {
            cmi: t.cmi,
            mif: t.mif,
            mfs: t.mfs,
            jitter: t.jitter,
        }
    }
}

impl TrafficSpec {
    pub fn new(cmi: Nanos, mif: u32, mfs: u32, jitter: Nanos) -> Result<Self> {
        if cmi == Nanos::ZERO {
            return Err(Error::invalid("cmi must be positive"));
        }
        if mif == 0 {
            return Err(Error::invalid("mif must be at least 1"));
        }
        if mfs == 0 {
            return Err(Error::invalid("mfs must be at least 1"));
        }
        if jitter >= cmi {
            return Err(Error::invalid(format!(
                "jitter {jitter} must be smaller than cmi {cmi}"
            )));
        }
        Ok(TrafficSpec {
            cmi,
            mif,
            mfs,
            jitter,
        })
    }

    /// Periodic single-frame stream with a nominal 64-byte frame size.
    pub fn periodic(cmi: Nanos) -> Result<Self> {
        Self::new(cmi, 1, 64, Nanos::ZERO)
    }

    pub fn cmi(&self) -> Nanos {
        self.cmi
    }

    pub fn mif(&self) -> u32 {
        self.mif
    }

    pub fn mfs(&self) -> u32 {
        self.mfs
    }

    pub fn jitter(&self) -> Nanos {
        self.jitter
    }

    pub fn with_cmi(&self, cmi: Nanos) -> Result<Self> {
        Self::new(cmi, self.mif, self.mfs, self.jitter)
    }

    pub fn with_mif(&self, mif: u32) -> Result<Self> {
        Self::new(self.cmi, mif, self.mfs, self.jitter)
    }

    pub fn with_jitter(&self, jitter: Nanos) -> Result<Self> {
        Self::new(self.cmi, self.mif, self.mfs, jitter)
    }
}

/// Best- and worst-case delay of one member-stream path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPathDelay", into = "RawPathDelay")]
pub struct PathDelay {
    path_id: String,
    d_bc: Nanos,
    d_wc: Nanos,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPathDelay {
    path_id: String,
    d_bc: Nanos,
    d_wc: Nanos,
}

impl TryFrom<RawPathDelay> for PathDelay {
    type Error = Error;
    fn try_from(raw: RawPathDelay) -> Result<Self> {
        PathDelay::new(raw.path_id, raw.d_bc, raw.d_wc)
    }
}

impl From<PathDelay> for RawPathDelay {
    fn from(p: PathDelay) -> Self {
        RawPathDelay {
            path_id: p.path_id,
            d_bc: p.d_bc,
            d_wc: p.d_wc,
        }
    }
}

impl PathDelay {
    pub fn new(path_id: impl Into<String>, d_bc: Nanos, d_wc: Nanos) -> Result<Self> {
        let path_id = path_id.into();
        if d_bc > d_wc {
            return Err(Error::invalid(format!(
                "path {path_id:?}: best-case delay {d_bc} exceeds worst-case delay {d_wc}"
            )));
        }
        Ok(PathDelay { path_id, d_bc, d_wc })
    }

    /// A path whose delay never varies.
    pub fn constant(path_id: impl Into<String>, delay: Nanos) -> Self {
        PathDelay {
            path_id: path_id.into(),
            d_bc: delay,
            d_wc: delay,
        }
    }

    pub fn path_id(&self) -> &str {
        &self.path_id
    }

    pub fn d_bc(&self) -> Nanos {
        self.d_bc
    }

    pub fn d_wc(&self) -> Nanos {
        self.d_wc
    }
}

/// Compound reception window over a set of paths.
///
/// Only the path list is stored; the compound bounds and `delta_d` are derived
/// on every call.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelayEnvelope {
    paths: Vec<PathDelay>,
}

impl DelayEnvelope {
    pub fn paths(&self) -> &[PathDelay] {
        &self.paths
    }

    /// Lowest best-case delay over all paths.
    pub fn compound_d_bc(&self) -> Nanos {
        self.paths.iter().map(PathDelay::d_bc).min().unwrap_or_default()
    }

    /// Highest worst-case delay over all paths.
    pub fn compound_d_wc(&self) -> Nanos {
        self.paths.iter().map(PathDelay::d_wc).max().unwrap_or_default()
    }

    /// Width of the reception window of one sequence number.
    pub fn delta_d(&self) -> Nanos {
        self.compound_d_wc() - self.compound_d_bc()
    }
}

/// Builds the compound envelope of a path list.
pub fn compound_envelope(paths: &[PathDelay]) -> Result<DelayEnvelope> {
    if paths.is_empty() {
        return Err(Error::invalid("at least one path is required"));
    }
    // PathDelay upholds d_bc <= d_wc by construction.
    Ok(DelayEnvelope {
        paths: paths.to_vec(),
    })
}

/// Convenience: two constant-delay paths whose delays differ by `delta_d`,
/// fastest first.
pub fn two_path_envelope(delta_d: Nanos) -> DelayEnvelope {
    DelayEnvelope {
        paths: vec![
            PathDelay::constant("fast", Nanos::ZERO),
            PathDelay::constant("slow", delta_d),
        ],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    /// Match recovery: remembers one sequence number.
    #[serde(rename = "MRA")]
    Mra,
    /// Vector recovery: acceptance interval plus sequence history.
    #[serde(rename = "VRA")]
    Vra,
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Algorithm::Mra => "MRA",
            Algorithm::Vra => "VRA",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeqSpace {
    #[default]
    Unbounded,
    /// 16-bit sequence numbers with modular comparison.
    Wrap16,
}

impl SeqSpace {
    /// Maps a logical sequence number onto this space.
    pub fn wire(self, logical: u64) -> u64 {
        match self {
            SeqSpace::Unbounded => logical,
            SeqSpace::Wrap16 => logical & 0xffff,
        }
    }
}

/// Parameters of one sequence recovery function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawRecoveryConfig", into = "RawRecoveryConfig")]
pub struct RecoveryConfig {
    algorithm: Algorithm,
    history_length: u32,
    reset_timeout: Nanos,
    seq_space: SeqSpace,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecoveryConfig {
    algorithm: Algorithm,
    history_length: u32,
    reset_timeout: Nanos,
    #[serde(default)]
    seq_space: SeqSpace,
}

impl TryFrom<RawRecoveryConfig> for RecoveryConfig {
    type Error = Error;
    fn try_from(raw: RawRecoveryConfig) -> Result<Self> {
        RecoveryConfig::new(
            raw.algorithm,
            raw.history_length,
            raw.reset_timeout,
            raw.seq_space,
        )
    }
}

impl From<RecoveryConfig> for RawRecoveryConfig {
    fn from(c: RecoveryConfig) -> Self {
        RawRecoveryConfig {
            algorithm: c.algorithm,
            history_length: c.history_length,
            reset_timeout: c.reset_timeout,
            seq_space: c.seq_space,
        }
    }
}

/// The standard's default history length.
pub const DEFAULT_HISTORY_LENGTH: u32 = 2;

impl RecoveryConfig {
    pub fn new(
        algorithm: Algorithm,
        history_length: u32,
        reset_timeout: Nanos,
        seq_space: SeqSpace,
    ) -> Result<Self> {
        if history_length == 0 {
            return Err(Error::invalid("history_length must be at least 1"));
        }
        if algorithm == Algorithm::Vra && history_length < DEFAULT_HISTORY_LENGTH {
            return Err(Error::invalid(format!(
                "VRA requires history_length >= {DEFAULT_HISTORY_LENGTH}"
            )));
        }
        if seq_space == SeqSpace::Wrap16 && history_length >= 1 << 15 {
            return Err(Error::invalid(
                "history_length must stay below 32768 with 16-bit sequence numbers",
            ));
        }
        if reset_timeout == Nanos::ZERO {
            return Err(Error::invalid("reset_timeout must be positive"));
        }
        Ok(RecoveryConfig {
            algorithm,
            history_length,
            reset_timeout,
            seq_space,
        })
    }

    pub fn mra(reset_timeout: Nanos) -> Result<Self> {
        Self::new(Algorithm::Mra, 1, reset_timeout, SeqSpace::Unbounded)
    }

    pub fn vra(history_length: u32, reset_timeout: Nanos) -> Result<Self> {
        Self::new(Algorithm::Vra, history_length, reset_timeout, SeqSpace::Unbounded)
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    pub fn history_length(&self) -> u32 {
        self.history_length
    }

    pub fn reset_timeout(&self) -> Nanos {
        self.reset_timeout
    }

    pub fn seq_space(&self) -> SeqSpace {
        self.seq_space
    }

    pub fn with_algorithm(&self, algorithm: Algorithm) -> Result<Self> {
        let history_length = match algorithm {
            Algorithm::Vra => self.history_length.max(DEFAULT_HISTORY_LENGTH),
            Algorithm::Mra => self.history_length,
        };
        Self::new(algorithm, history_length, self.reset_timeout, self.seq_space)
    }

    pub fn with_history_length(&self, history_length: u32) -> Result<Self> {
        Self::new(self.algorithm, history_length, self.reset_timeout, self.seq_space)
    }

    pub fn with_reset_timeout(&self, reset_timeout: Nanos) -> Result<Self> {
        Self::new(self.algorithm, self.history_length, reset_timeout, self.seq_space)
    }

    pub fn with_seq_space(&self, seq_space: SeqSpace) -> Result<Self> {
        Self::new(self.algorithm, self.history_length, self.reset_timeout, seq_space)
    }
}

/// Tallies kept by a recovery function.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub passed: u64,
    pub discarded_duplicates: u64,
    pub rogue: u64,
    pub resets: u64,
}

impl Counters {
    /// Arrivals classified so far.
    pub fn arrivals(&self) -> u64 {
        self.passed + self.discarded_duplicates + self.rogue
    }
}
