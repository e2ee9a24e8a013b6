//! Rebuild one node and list what it downloaded.
//!
//! Run: cargo run --example repair_node -- 13

use cpcode::{encode, repair_node, CodeParams, DataMatrix, GaloisField};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> cpcode::Result<()> {
    let node: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(13);
    let params = CodeParams::new(14, 10, 3, GaloisField::with_degree(8)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let stripe = encode(&params, &DataMatrix::random(&params, &mut rng))?;

    let report = repair_node(&params, &stripe, node)?;
    let mut downloads = report.downloads.clone();
    downloads.sort();
    for d in &downloads {
        println!("node {:>2} column {} -> {}", d.node, d.col, d.symbol);
    }
    println!(
        "rebuilt node {node} from {} symbols (predicted {}), correct: {}",
        report.bandwidth,
        report.predicted,
        report.recovered == stripe.row(node)
    );
    Ok(())
}
