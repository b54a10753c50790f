//! Path delay bounds.
//!
//! The best-case delay of a path can be tightened from zero by summing the
//! fixed hardware delays of its hops. Worst-case delays come from external
//! analysis and are only validated here.

use serde::{Deserialize, Serialize};

use crate::domain::PathDelay;
use crate::error::{Error, Result};
use crate::time::Nanos;

/// Fixed delay components of one hop.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopDelays {
    pub propagation: Nanos,
    pub transmission: Nanos,
    pub switching: Nanos,
}

impl HopDelays {
    pub fn total(&self) -> Nanos {
        self.propagation + self.transmission + self.switching
    }
}

/// Lower bound on a path's delay; zero for an empty hop list.
pub fn best_case_delay(hops: &[HopDelays]) -> Nanos {
    hops.iter().map(HopDelays::total).fold(Nanos::ZERO, |a, b| a + b)
}

pub fn path_delay_from_bounds(path_id: impl Into<String>, d_bc: Nanos, d_wc: Nanos) -> Result<PathDelay> {
    PathDelay::new(path_id, d_bc, d_wc)
}

/// One entry of a topology file: either an explicit best-case delay, a hop
/// list to derive it from, or neither (zero).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathSpec {
    pub path_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_bc: Option<Nanos>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hops: Option<Vec<HopDelays>>,
    pub d_wc: Nanos,
}

impl PathSpec {
    pub fn resolve(&self) -> Result<PathDelay> {
        let d_bc = match (&self.d_bc, &self.hops) {
            (Some(_), Some(_)) => {
                return Err(Error::invalid(format!(
                    "path {:?}: give either d_bc or hops, not both",
                    self.path_id
                )))
            }
            (Some(d), None) => *d,
            (None, Some(hops)) => best_case_delay(hops),
            (None, None) => Nanos::ZERO,
        };
        path_delay_from_bounds(self.path_id.clone(), d_bc, self.d_wc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Topology {
    pub paths: Vec<PathSpec>,
}

impl Topology {
    pub fn resolve(&self) -> Result<Vec<PathDelay>> {
        if self.paths.is_empty() {
            return Err(Error::invalid("topology lists no paths"));
        }
        self.paths.iter().map(PathSpec::resolve).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn us(v: u64) -> Nanos {
        Nanos::from_us(v)
    }

    fn hop(p: u64, t: u64, s: u64) -> HopDelays {
        HopDelays {
            propagation: us(p),
            transmission: us(t),
            switching: us(s),
        }
    }

    #[test]
    fn best_case_examples() {
        assert_eq!(best_case_delay(&[]), Nanos::ZERO);
        assert_eq!(best_case_delay(&[hop(1, 10, 5), hop(1, 10, 5)]), us(32));
        assert_eq!(best_case_delay(&[hop(0, 0, 50)]), us(50));
    }

    #[test]
    fn path_bounds() {
        assert!(path_delay_from_bounds("a", Nanos::ZERO, us(75)).is_ok());
        assert!(path_delay_from_bounds("a", us(50), us(50)).is_ok());
        assert!(path_delay_from_bounds("a", us(80), us(40)).is_err());
    }

    #[test]
    fn topology_resolution() {
        let json = r#"{"paths":[
            {"path_id":"A","d_wc":"75us"},
            {"path_id":"B","hops":[{"propagation":"1us","transmission":"10us","switching":"5us"}],"d_wc":"300us"},
            {"path_id":"C","d_bc":"20us","d_wc":"30us"}
        ]}"#;
        let topo: Topology = serde_json::from_str(json).unwrap();
        let paths = topo.resolve().unwrap();
        assert_eq!(paths[0].d_bc(), Nanos::ZERO);
        assert_eq!(paths[1].d_bc(), us(16));
        assert_eq!(paths[2].d_bc(), us(20));

        let both = r#"{"paths":[{"path_id":"A","d_bc":"1us","hops":[],"d_wc":"75us"}]}"#;
        let topo: Topology = serde_json::from_str(both).unwrap();
        assert!(topo.resolve().is_err());

        let hop_too_slow = r#"{"paths":[{"path_id":"A","hops":[{"propagation":"0us","transmission":"0us","switching":"90us"}],"d_wc":"75us"}]}"#;
        let topo: Topology = serde_json::from_str(hop_too_slow).unwrap();
        assert!(topo.resolve().is_err());
    }
}
