//! Step a vector recovery function by hand and watch its window move.
//!
//! Run: cargo run --example recovery_trace

use frer::domain::RecoveryConfig;
use frer::recovery::RecoveryState;
use frer::Nanos;

fn main() -> frer::Result<()> {
    let mut state = RecoveryState::new(RecoveryConfig::vra(3, Nanos::from_us(500))?);
    // (arrival time in us, sequence number)
    let trace = [(0, 1), (10, 3), (20, 2), (30, 3), (40, 6), (50, 4), (700, 9)];
    println!(
        "{:>8} {:>4}  {:<20} {:>6}  seen",
        "time", "seq", "outcome", "recov"
    );
    for (t, seq) in trace {
        let v = state.accept(seq, Nanos::from_us(t));
        let mut outcome = format!("{:?}", v.outcome);
        if v.reset_applied {
            outcome.push_str(" (reset)");
        }
        println!(
            "{:>8} {:>4}  {:<20} {:>6}  {:?}",
            Nanos::from_us(t).to_string(),
            seq,
            outcome,
            state.recov_seq_num().map_or("-".into(), |r| r.to_string()),
            state.seen()
        );
    }
    println!("{:?}", state.counters());
    Ok(())
}
