//! Match recovery over a CMI x delta_d grid. A cell shows the number of
//! passed duplicates; the configurator allows MRA above the diagonal.
//!
//! Run: cargo run --example mra_boundary

use frer::configurator::mra_applicable;
use frer::domain::{two_path_envelope, TrafficSpec};
use frer::sim::{self, presets};
use frer::Nanos;

fn main() -> frer::Result<()> {
    let steps: Vec<u64> = (25..=250).step_by(25).collect();
    print!("{:>10}", "cmi\\dd");
    for d in &steps {
        print!("{:>6}", d);
    }
    println!();
    for &cmi in &steps {
        print!("{:>10}", format!("{cmi}us"));
        for &d in &steps {
            let r = sim::run(&presets::mra_boundary(Nanos::from_us(cmi), Nanos::from_us(d)))?;
            let allowed = mra_applicable(
                &TrafficSpec::periodic(Nanos::from_us(cmi))?,
                &two_path_envelope(Nanos::from_us(d)),
            );
            let cell = if allowed {
                format!("{}", r.passed_duplicates)
            } else {
                format!("({})", r.passed_duplicates)
            };
            print!("{cell:>6}");
        }
        println!();
    }
    println!("(n) = configurator forbids MRA");
    Ok(())
}
