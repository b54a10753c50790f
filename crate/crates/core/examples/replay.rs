//! Feed a recorded arrival trace through a recovery configuration and
//! compare against the expected outcomes in the trace.
//!
//! Run: cargo run --example replay

use frer::domain::RecoveryConfig;
use frer::files::{parse_trace, replay};
use frer::Nanos;

const TRACE: &str = "\
timestamp,seq,path,expected
0us,1,A,passed
75us,1,B,discarded_duplicate
125us,2,A,passed
200us,2,B,discarded_duplicate
250us,4,A,passed
325us,4,B,discarded_duplicate
";

fn main() -> frer::Result<()> {
    let trace = parse_trace(TRACE.as_bytes(), "inline trace")?;
    for (label, cfg) in [
        ("VRA L=2", RecoveryConfig::vra(2, Nanos::from_us(200))?),
        ("VRA L=3", RecoveryConfig::vra(3, Nanos::from_us(200))?),
    ] {
        let report = replay(&cfg, &trace);
        println!("{label}: {}", report.result.summary());
        for m in &report.mismatches {
            println!(
                "  row {} seq {}: expected {:?}, got {:?}",
                m.row, m.seq, m.expected, m.actual
            );
        }
    }
    Ok(())
}
