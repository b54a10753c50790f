//! History length against a 75 ms outage of the fast path. A cell shows the
//! rogue count; `*` marks the advised minimum.
//!
//! Run: cargo run --example history_length

use frer::configurator::min_history_length;
use frer::domain::two_path_envelope;
use frer::sim::{self, presets};
use frer::Nanos;

fn main() -> frer::Result<()> {
    let deltas = [75u64, 150, 300, 450, 600];
    print!("{:>4}", "L");
    for d in deltas {
        print!("{:>9}", format!("{d}us"));
    }
    println!();
    for l in 2..=8u32 {
        print!("{l:>4}");
        for d in deltas {
            let delta_d = Nanos::from_us(d);
            let r = sim::run(&presets::history_boundary(l, delta_d))?;
            let min = min_history_length(&presets::cmi_125us(), &two_path_envelope(delta_d));
            let mark = if l == min { "*" } else { " " };
            print!("{:>8}{mark}", r.counters.rogue);
        }
        println!();
    }
    Ok(())
}
