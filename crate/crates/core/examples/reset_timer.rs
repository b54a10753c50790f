//! One frame lost before replication: how the reset timeout decides between
//! passed duplicates, extra resets and discarded new frames.
//!
//! Run: cargo run --example reset_timer [delta_d, default 75us]

use frer::sim::{self, presets};
use frer::Nanos;

fn main() -> frer::Result<()> {
    let delta_d: Nanos = std::env::args().nth(1).as_deref().unwrap_or("75us").parse()?;
    println!(
        "delta_d={delta_d}, cmi=125us, 100 frames, frame {} lost",
        presets::LOST_FRAME
    );
    println!(
        "{:>8} {:>7} {:>11} {:>6} {:>7}",
        "R", "passed", "duplicates", "rogue", "resets"
    );
    for r in (25..=500).step_by(25) {
        let reset = Nanos::from_us(r);
        let res = sim::run(&presets::reset_boundary(reset, delta_d))?;
        let mark = if reset <= delta_d { "  R <= delta_d" } else { "" };
        println!(
            "{:>8} {:>7} {:>11} {:>6} {:>7}{mark}",
            reset.to_string(),
            res.counters.passed,
            res.passed_duplicates,
            res.counters.rogue,
            res.counters.resets
        );
    }
    Ok(())
}
