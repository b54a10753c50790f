use super::scenario::Failure;
use crate::time::Nanos;

/// Counts passed frames that follow their predecessor by less than `cmi`.
///
/// `passed` must be time-ordered.
pub fn measure_burst(passed: &[Nanos], cmi: Nanos) -> u64 {
    passed.windows(2).filter(|w| w[1] - w[0] < cmi).count() as u64
}

/// Largest burst attributable to a single failure.
///
/// Each failure owns the frames passed from its end until the end of the
/// next failure to recover. Without failures the whole log is measured.
pub fn burst_per_failure(passed: &[Nanos], cmi: Nanos, failures: &[Failure]) -> u64 {
    if failures.is_empty() {
        return measure_burst(passed, cmi);
    }
    let mut ends: Vec<Nanos> = failures.iter().map(|f| f.end).collect();
    ends.sort_unstable();
    ends.dedup();

    let short_gap: Vec<(Nanos, bool)> = passed
        .iter()
        .enumerate()
        .map(|(i, &t)| (t, i > 0 && t - passed[i - 1] < cmi))
        .collect();

    ends.iter()
        .enumerate()
        .map(|(i, &from)| {
            let until = ends.get(i + 1).copied();
            short_gap
                .iter()
                .filter(|(t, short)| *short && *t >= from && until.is_none_or(|u| *t < u))
                .count() as u64
        })
        .max()
        .unwrap_or(0)
}
