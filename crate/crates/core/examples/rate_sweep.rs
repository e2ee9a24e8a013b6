//! All-node ratio against published bounds for r = 4, k = 4..=52.
//!
//! Run: cargo run --example rate_sweep > sweep.csv

use cpcode::sim::{sweep_rate, sweep_to_csv};

fn main() -> cpcode::Result<()> {
    print!("{}", sweep_to_csv(&sweep_rate(4, 4..=52, 3)?));
    Ok(())
}
