//! Tighten best-case path delays from hop components and feed the result
//! to the configurator.
//!
//! Run: cargo run --example delay_bounds [topology.json]

use std::path::PathBuf;

use frer::configurator::{advise, Preference};
use frer::delay_bounds::Topology;
use frer::domain::{compound_envelope, TrafficSpec};
use frer::files::read_json;
use frer::Nanos;

fn main() -> frer::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios/topology.json"));
    let topology: Topology = read_json(&path)?;
    let paths = topology.resolve()?;
    for p in &paths {
        println!(
            "{:<10} d_bc={:<10} d_wc={}",
            p.path_id(),
            p.d_bc().to_string(),
            p.d_wc()
        );
    }
    let env = compound_envelope(&paths)?;
    println!(
        "compound: d_bc={} d_wc={} delta_d={}",
        env.compound_d_bc(),
        env.compound_d_wc(),
        env.delta_d()
    );

    // The same topology with zero best-case delays, the always-safe choice.
    let zeroed = paths
        .iter()
        .map(|p| frer::domain::PathDelay::new(p.path_id(), Nanos::ZERO, p.d_wc()))
        .collect::<frer::Result<Vec<_>>>()?;
    let loose = compound_envelope(&zeroed)?;

    let traffic = TrafficSpec::periodic(Nanos::from_us(70))?;
    for (label, e) in [("hop sums", &env), ("zero d_bc", &loose)] {
        let a = advise(&traffic, e, Preference::PreferMra);
        println!(
            "{label:<10} delta_d={:<8} -> {} L={} R={}",
            e.delta_d().to_string(),
            a.config.algorithm(),
            a.config.history_length(),
            a.config.reset_timeout()
        );
    }
    Ok(())
}
