//! Frames passed closer than one CMI apart after the fast path recovers
//! from an outage, next to the configurator's bound.
//!
//! Run: cargo run --example burst

use frer::configurator::burst_bound;
use frer::domain::two_path_envelope;
use frer::sim::{self, presets};
use frer::Nanos;

fn main() -> frer::Result<()> {
    println!("{:>10} {:>9} {:>6}", "delta_d", "measured", "bound");
    for d in [
        Nanos::ZERO,
        Nanos::from_us(75),
        Nanos::from_us(150),
        Nanos::from_us(249),
        Nanos::from_us(250),
        Nanos::from_us(400),
        Nanos::from_us(600),
    ] {
        let r = sim::run(&presets::burst(d))?;
        let bound = burst_bound(&presets::cmi_125us(), &two_path_envelope(d));
        println!("{:>10} {:>9} {:>6}", d.to_string(), r.max_burst, bound);
    }
    // At exact multiples of the CMI, copies from both paths coincide and
    // the bound is only approached from below.
    Ok(())
}
