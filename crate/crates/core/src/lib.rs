//! Safe configuration and simulation of IEEE 802.1CB sequence recovery.
//!
//! The crate has three layers:
//!
//! * [`configurator`] turns a stream's traffic characteristics and the
//!   best/worst-case delays of its redundant paths into recovery parameters:
//!   match vs. vector algorithm, history length, reset timeout, and the burst
//!   a link failure can cause.
//! * [`recovery`] implements the recovery state machines themselves, and
//!   [`oracle`] a perfect eliminator to judge them against.
//! * [`sim`] replays replication and elimination over delay paths with
//!   outages and losses, deterministically, so parameters can be checked
//!   empirically; [`sweep`] runs grids of such scenarios.
//!
//! Time is integer nanoseconds throughout ([`Nanos`]).
//!
//! ```
//! use frer::configurator::{advise, Preference};
//! use frer::domain::{compound_envelope, PathDelay, TrafficSpec};
//! use frer::Nanos;
//!
//! let traffic = TrafficSpec::periodic(Nanos::from_us(125)).unwrap();
//! let env = compound_envelope(&[
//!     PathDelay::new("a", Nanos::ZERO, Nanos::from_us(20)).unwrap(),
//!     PathDelay::new("b", Nanos::from_us(40), Nanos::from_us(300)).unwrap(),
//! ])
//! .unwrap();
//! let advice = advise(&traffic, &env, Preference::PreferMra);
//! assert_eq!(advice.config.history_length(), 4);
//! ```

pub mod configurator;
pub mod delay_bounds;
pub mod domain;
pub mod error;
pub mod files;
pub mod oracle;
pub mod recovery;
pub mod sim;
pub mod sweep;
pub mod time;

pub use error::{Error, Result};
pub use time::Nanos;
