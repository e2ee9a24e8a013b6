//! Repair-traffic table in formula mode, then the small rows executed.
//!
//! Run: cargo run --release --example table3_simulation

use cpcode::sim::{simulate, table3_grid, to_csv, SimConfig, SimMode};

fn main() -> cpcode::Result<()> {
    let formula = simulate(&SimConfig::new(table3_grid(), SimMode::Formula))?;
    print!("{}", to_csv(&formula, 0));

    let mut config = SimConfig::new(table3_grid(), SimMode::Execute);
    config.trials = 5;
    config.seed = 42;
    // most rows are too large to search or not MDS over GF(2^8)
    config.verify = false;
    let executed = simulate(&config)?;
    print!("{}", to_csv(&executed, config.seed));
    Ok(())
}
