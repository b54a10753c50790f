//! Derive a recovery configuration for a few streams and show the
//! reasoning behind each parameter.
//!
//! Run: cargo run --example advise

use frer::configurator::{advise, Preference};
use frer::domain::{two_path_envelope, TrafficSpec};
use frer::Nanos;

fn main() -> frer::Result<()> {
    let streams = [
        (
            "periodic, 75us apart",
            TrafficSpec::periodic(Nanos::from_us(125))?,
            75,
        ),
        (
            "two frames per interval",
            TrafficSpec::new(Nanos::from_us(125), 2, 64, Nanos::ZERO)?,
            75,
        ),
        (
            "jittered, 300us apart",
            TrafficSpec::new(Nanos::from_us(125), 1, 64, Nanos::from_us(20))?,
            300,
        ),
    ];
    for (label, traffic, delta_us) in streams {
        let env = two_path_envelope(Nanos::from_us(delta_us));
        let advice = advise(&traffic, &env, Preference::PreferMra);
        println!(
            "== {label} (cmi={}, mif={}, jitter={}, delta_d={})",
            traffic.cmi(),
            traffic.mif(),
            traffic.jitter(),
            env.delta_d()
        );
        println!(
            "   {} L={} R={} burst<={}",
            advice.config.algorithm(),
            advice.config.history_length(),
            advice.config.reset_timeout(),
            advice.burst_bound
        );
        for r in &advice.rationale {
            println!("   {:<15} {:<12} {}", r.parameter, r.result, r.formula);
            if let Some(note) = &r.note {
                println!("   {:<15} note: {note}", "");
            }
        }
    }
    Ok(())
}
