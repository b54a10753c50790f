//! Talker send schedule and per-path delay assignment.
//!
//! Random draws use ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`) with
//! one stream per purpose: 1 for path delays, 2 for talker jitter, 3 for the
//! placement of extra frames inside an interval. A value in `[lo, hi]` is
//! drawn as `lo + v % n` with `n = hi - lo + 1`, rejecting raw 64-bit outputs
//! `v < 2^64 mod n`. Draw order is by sequence number, then path order, and
//! does not depend on failures or losses.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::scenario::{JitterPolicy, Phasing, Scenario};
use crate::error::{Error, Result};
use crate::time::Nanos;

const DELAY_STREAM: u64 = 1;
const JITTER_STREAM: u64 = 2;
const LAYOUT_STREAM: u64 = 3;

pub(crate) struct Draws {
    rng: ChaCha8Rng,
}

impl Draws {
    pub(crate) fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Draws { rng }
    }

    /// Uniform integer in `[lo, hi]`.
    pub(crate) fn between(&mut self, lo: u64, hi: u64) -> u64 {
        debug_assert!(lo <= hi);
        let n = (hi - lo).wrapping_add(1);
        if n == 0 {
            return self.rng.next_u64();
        }
        let reject_below = n.wrapping_neg() % n;
        loop {
            let v = self.rng.next_u64();
            if v >= reject_below {
                return lo + v % n;
            }
        }
    }
}

/// One frame copy reaching the elimination point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrival {
    pub at: Nanos,
    pub path: usize,
    pub seq: u64,
}

/// Send instant of every frame, indexed by sequence number.
pub fn send_times(scenario: &Scenario) -> Vec<Nanos> {
    let t = &scenario.traffic;
    let mif = u64::from(t.mif());
    let cmi = t.cmi();
    let jitter = t.jitter();
    // Extra frames of an interval are placed before cmi - jitter so that
    // a late interval never overtakes the next one.
    let span = (cmi - jitter).as_ns();

    let mut jitter_draws = match &scenario.jitter_policy {
        JitterPolicy::UniformRandom { seed } => {
            Some(Draws::new(seed.unwrap_or(scenario.seed), JITTER_STREAM))
        }
        _ => None,
    };
    let mut layout_draws = match &scenario.phasing {
        Phasing::UniformRandom { seed } if mif > 1 => {
            Some(Draws::new(seed.unwrap_or(scenario.seed), LAYOUT_STREAM))
        }
        _ => None,
    };

    let mut out = Vec::with_capacity(scenario.total_frames() as usize);
    let mut offsets = vec![0u64; mif as usize];
    for k in 0..scenario.num_packets {
        let j = match &scenario.jitter_policy {
            JitterPolicy::None => 0,
            JitterPolicy::Adversarial => {
                if k % 2 == 0 {
                    jitter.as_ns()
                } else {
                    0
                }
            }
            JitterPolicy::UniformRandom { .. } => jitter_draws
                .as_mut()
                .expect("jitter rng")
                .between(0, jitter.as_ns()),
        };
        match layout_draws.as_mut() {
            Some(draws) => {
                for o in offsets.iter_mut().skip(1) {
                    *o = draws.between(0, span - 1);
                }
                offsets[1..].sort_unstable();
            }
            None => {
                // First frame at the interval start, the rest packed at its end.
                for (m, o) in offsets.iter_mut().enumerate().skip(1) {
                    *o = span - (mif - m as u64);
                }
            }
        }
        let base = cmi.times(k).as_ns() + j;
        out.extend(offsets.iter().map(|o| Nanos(base + o)));
    }
    out
}

fn fastest_path(scenario: &Scenario) -> usize {
    let mut best = 0;
    for (i, p) in scenario.paths.iter().enumerate() {
        if p.d_bc() < scenario.paths[best].d_bc() {
            best = i;
        }
    }
    best
}

/// Per-frame, per-path delays before FIFO enforcement.
fn raw_delays(scenario: &Scenario) -> Vec<Vec<Nanos>> {
    let total = scenario.total_frames() as usize;
    match &scenario.phasing {
        Phasing::Fixed(rows) => rows.clone(),
        Phasing::Adversarial => {
            let fast = fastest_path(scenario);
            let row: Vec<Nanos> = scenario
                .paths
                .iter()
                .enumerate()
                .map(|(i, p)| if i == fast { p.d_bc() } else { p.d_wc() })
                .collect();
            vec![row; total]
        }
        Phasing::UniformRandom { seed } => {
            let mut draws = Draws::new(seed.unwrap_or(scenario.seed), DELAY_STREAM);
            (0..total)
                .map(|_| {
                    scenario
                        .paths
                        .iter()
                        .map(|p| Nanos(draws.between(p.d_bc().as_ns(), p.d_wc().as_ns())))
                        .collect()
                })
                .collect()
        }
    }
}

/// All frame copies that reach the elimination point, in delivery order
/// (time, then path order, then sequence number).
///
/// Random delays that would let a frame overtake its predecessor on the same
/// path are raised to the predecessor's arrival time; fixed delays that do so
/// are rejected.
pub fn arrivals(scenario: &Scenario) -> Result<Vec<Arrival>> {
    let sends = send_times(scenario);
    let delays = raw_delays(scenario);
    let mut out = Vec::with_capacity(sends.len() * scenario.paths.len());
    let mut last_on_path: Vec<Option<Nanos>> = vec![None; scenario.paths.len()];

    for (seq, (&send, row)) in sends.iter().zip(&delays).enumerate() {
        let seq = seq as u64;
        if scenario.pre_replication_losses.contains(&seq) {
            continue;
        }
        for (path, p) in scenario.paths.iter().enumerate() {
            if scenario
                .failures
                .iter()
                .any(|f| f.path_id == p.path_id() && f.covers(send))
            {
                continue;
            }
            let mut at = send + row[path];
            if let Some(prev) = last_on_path[path] {
                if at < prev {
                    if matches!(scenario.phasing, Phasing::Fixed(_)) {
                        return Err(Error::invalid(format!(
                            "fixed delays reorder path {:?} at frame {seq}",
                            p.path_id()
                        )));
                    }
                    at = prev;
                }
            }
            last_on_path[path] = Some(at);
            out.push(Arrival { at, path, seq });
        }
    }
    out.sort_by_key(|a| (a.at, a.path, a.seq));
    Ok(out)
}

/// Pins the worst-case delay assignment into explicit per-frame delays and
/// turns on adversarial jitter when the stream has any.
pub fn adversarial_phasing(template: &Scenario) -> Result<Scenario> {
    if template.paths.len() < 2 {
        return Err(Error::invalid("adversarial phasing needs at least two paths"));
    }
    let mut s = template.clone();
    s.phasing = Phasing::Adversarial;
    let rows = raw_delays(&s);
    s.phasing = Phasing::Fixed(rows);
    s.jitter_policy = if s.traffic.jitter() > Nanos::ZERO {
        JitterPolicy::Adversarial
    } else {
        JitterPolicy::None
    };
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{PathDelay, RecoveryConfig, TrafficSpec};

    fn us(v: u64) -> Nanos {
        Nanos::from_us(v)
    }

    fn scenario(mif: u32, jitter: u64) -> Scenario {
        Scenario::new(
            TrafficSpec::new(us(125), mif, 64, us(jitter)).unwrap(),
            vec![
                PathDelay::new("a", us(0), us(10)).unwrap(),
                PathDelay::new("b", us(20), us(95)).unwrap(),
            ],
            RecoveryConfig::vra(8, us(300)).unwrap(),
            50,
        )
    }

    #[test]
    fn draws_are_reproducible_and_in_range() {
        let mut a = Draws::new(42, 1);
        let mut b = Draws::new(42, 1);
        for _ in 0..1000 {
            let x = a.between(10, 20);
            assert_eq!(x, b.between(10, 20));
            assert!((10..=20).contains(&x));
        }
        let mut c = Draws::new(42, 2);
        let xs: Vec<_> = (0..8).map(|_| a.between(0, u64::MAX - 1)).collect();
        let ys: Vec<_> = (0..8).map(|_| c.between(0, u64::MAX - 1)).collect();
        assert_ne!(xs, ys);
    }

    #[test]
    fn periodic_sends() {
        let s = scenario(1, 0);
        let t = send_times(&s);
        assert_eq!(t[0], Nanos::ZERO);
        assert_eq!(t[3], us(375));
    }

    #[test]
    fn multi_frame_worst_case_layout() {
        let s = scenario(3, 0);
        let t = send_times(&s);
        assert_eq!(t[0], Nanos::ZERO);
        assert_eq!(t[1], us(125) - Nanos(2));
        assert_eq!(t[2], us(125) - Nanos(1));
        assert_eq!(t[3], us(125));
    }

    #[test]
    fn adversarial_jitter_alternates() {
        let mut s = scenario(1, 30);
        s.jitter_policy = JitterPolicy::Adversarial;
        let t = send_times(&s);
        assert_eq!(t[0], us(30));
        assert_eq!(t[1], us(125));
        assert_eq!(t[2], us(280));
    }

    #[test]
    fn adversarial_uses_best_case_on_fastest_path_only() {
        let s = scenario(1, 0);
        let arr = arrivals(&s).unwrap();
        let first: Vec<_> = arr.iter().filter(|a| a.seq == 0).collect();
        assert_eq!(first[0].at, us(0));
        assert_eq!(first[1].at, us(95));
    }

    #[test]
    fn random_phasing_stays_fifo_and_in_bounds() {
        let mut s = scenario(2, 40);
        s.phasing = Phasing::UniformRandom { seed: Some(9) };
        s.jitter_policy = JitterPolicy::UniformRandom { seed: None };
        let sends = send_times(&s);
        let arr = arrivals(&s).unwrap();
        for path in 0..2 {
            let mut on_path: Vec<_> = arr.iter().filter(|a| a.path == path).collect();
            on_path.sort_by_key(|a| a.seq);
            for w in on_path.windows(2) {
                assert!(w[0].at <= w[1].at);
            }
            for a in on_path {
                let d = a.at - sends[a.seq as usize];
                assert!(d >= s.paths[path].d_bc() && d <= s.paths[path].d_wc());
            }
        }
    }

    #[test]
    fn fixed_reordering_is_rejected() {
        let mut s = scenario(1, 0);
        s.traffic = s.traffic.with_cmi(us(50)).unwrap();
        s.num_packets = 2;
        s.phasing = Phasing::Fixed(vec![vec![us(10), us(95)], vec![us(10), us(20)]]);
        s.validate().unwrap();
        assert!(arrivals(&s).is_err());
    }

    #[test]
    fn adversarial_template_is_pinned() {
        let s = adversarial_phasing(&scenario(1, 30)).unwrap();
        assert_eq!(s.jitter_policy, JitterPolicy::Adversarial);
        match &s.phasing {
            Phasing::Fixed(rows) => {
                assert_eq!(rows.len(), 50);
                assert_eq!(rows[7], vec![us(0), us(95)]);
            }
            other => panic!("unexpected {other:?}"),
        }
        let zero = adversarial_phasing(&scenario(1, 0)).unwrap();
        assert_eq!(zero.jitter_policy, JitterPolicy::None);
    }
}
