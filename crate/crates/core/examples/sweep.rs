//! Run a sweep file and print the CSV.
//!
//! Run: cargo run --example sweep [sweep.json]

use std::path::PathBuf;

use frer::files::read_json;
use frer::sweep::{write_csv, SweepSpec};

fn main() -> frer::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios/history_grid.json"));
    let spec: SweepSpec = read_json(&path)?;
    let rows = spec.run()?;
    write_csv(&spec, &rows, std::io::stdout().lock())
}
