//! Integer-nanosecond time.
//!
//! Every duration and timestamp in the crate is a whole number of nanoseconds.
//! Text forms always carry a unit suffix (`ns`, `us`/`µs`, `ms`, `s`); the
//! numeric part may be fractional as long as it converts to an exact number of
//! nanoseconds.

use std::fmt;
use std::ops::{Add, AddAssign, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A duration or an absolute simulation timestamp, in nanoseconds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Nanos(pub u64);

impl Nanos {
    pub const ZERO: Nanos = Nanos(0);
    /// Smallest representable step.
    pub const QUANTUM: Nanos = Nanos(1);

    pub const fn from_ns(ns: u64) -> Self {
        Nanos(ns)
    }

    pub const fn from_us(us: u64) -> Self {
        Nanos(us * 1_000)
    }

    pub const fn from_ms(ms: u64) -> Self {
        Nanos(ms * 1_000_000)
    }

    pub const fn as_ns(self) -> u64 {
        self.0
    }

    pub fn checked_add(self, rhs: Nanos) -> Option<Nanos> {
        self.0.checked_add(rhs.0).map(Nanos)
    }

    pub fn saturating_sub(self, rhs: Nanos) -> Nanos {
        Nanos(self.0.saturating_sub(rhs.0))
    }

    /// `self * n`, panicking on overflow.
    pub fn times(self, n: u64) -> Nanos {
        Nanos(self.0.checked_mul(n).expect("duration overflow"))
    }
}

impl Add for Nanos {
    type Output = Nanos;
    fn add(self, rhs: Nanos) -> Nanos {
        Nanos(self.0.checked_add(rhs.0).expect("duration overflow"))
    }
}

impl AddAssign for Nanos {
    fn add_assign(&mut self, rhs: Nanos) {
        *self = *self + rhs;
    }
}

impl Sub for Nanos {
    type Output = Nanos;
    fn sub(self, rhs: Nanos) -> Nanos {
        Nanos(self.0.checked_sub(rhs.0).expect("negative duration"))
    }
}

const UNITS: [(&str, u64); 5] = [
    ("ns", 1),
    ("us", 1_000),
    ("µs", 1_000),
    ("ms", 1_000_000),
    ("s", 1_000_000_000),
];

impl FromStr for Nanos {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self, Error> {
        let bad = |reason: &str| Error::Duration {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let s = text.trim();
        let split = s
            .find(|c: char| !(c.is_ascii_digit() || c == '.'))
            .ok_or_else(|| bad("missing unit suffix (ns, us, ms or s)"))?;
        let (number, unit) = s.split_at(split);
        let scale = UNITS
            .iter()
            .find(|(name, _)| *name == unit)
            .map(|(_, scale)| *scale)
            .ok_or_else(|| bad("unknown unit suffix (expected ns, us, ms or s)"))?;
        if number.is_empty() {
            return Err(bad("missing numeric value"));
        }

        let (int_part, frac_part) = match number.split_once('.') {
            Some((i, f)) => (i, f),
            None => (number, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() || frac_part.contains('.') {
            return Err(bad("malformed number"));
        }

        let overflow = || bad("value too large");
        let mut ns: u64 = 0;
        for digit in int_part.bytes() {
            ns = ns
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(digit - b'0')))
                .ok_or_else(overflow)?;
        }
        ns = ns.checked_mul(scale).ok_or_else(overflow)?;

        // Each fractional digit must land on a whole nanosecond.
        let mut place = scale;
        for digit in frac_part.bytes() {
            let d = u64::from(digit - b'0');
            if place < 10 {
                if d != 0 {
                    return Err(bad("not representable as whole nanoseconds"));
                }
                continue;
            }
            place /= 10;
            ns = ns.checked_add(d * place).ok_or_else(overflow)?;
        }
        Ok(Nanos(ns))
    }
}

impl fmt::Display for Nanos {
    /// Canonical form: the largest of `ms`, `us`, `ns` that divides exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ns = self.0;
        if ns != 0 && ns.is_multiple_of(1_000_000) {
            write!(f, "{}ms", ns / 1_000_000)
        } else if ns != 0 && ns.is_multiple_of(1_000) {
            write!(f, "{}us", ns / 1_000)
        } else {
            write!(f, "{ns}ns")
        }
    }
}

impl Serialize for Nanos {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Nanos {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct Visitor;
        impl serde::de::Visitor<'_> for Visitor {
            type Value = Nanos;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a duration string with unit suffix, e.g. \"125us\"")
            }

            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<Nanos, E> {
                v.parse().map_err(E::custom)
            }
        }
        deserializer.deserialize_str(Visitor)
    }
}
