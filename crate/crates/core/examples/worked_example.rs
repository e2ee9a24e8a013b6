//! The (14, 10) code with four parity nodes and three data groups.
//!
//! Shows the piggyback layout, a parity symbol at every stage, and the
//! per-node repair bandwidth.
//!
//! Run: cargo run --example worked_example

use cpcode::analysis::msr_bound;
use cpcode::code::{apply_piggyback, conjugate_transform, encode_base, EncodingPlan};
use cpcode::{repair_node, CodeParams, DataMatrix, GaloisField};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> cpcode::Result<()> {
    let params = CodeParams::new(14, 10, 3, GaloisField::with_degree(8)?)?;
    println!("groups: {:?}", params.group_sizes());

    let plan = EncodingPlan::new(&params);
    for pb in &plan.piggybacks {
        println!(
            "parity row {} column {} carries group {}",
            pb.parity_row, pb.column, pb.group
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let data = DataMatrix::random(&params, &mut rng);
    let g1 = encode_base(&params, &data)?;
    let g2 = apply_piggyback(&params, &g1)?;
    let g3 = conjugate_transform(&params, &g2)?;
    println!(
        "parity (1,4): base {}  piggybacked {}  transformed {}",
        g1.parity(1, 4),
        g2.parity(1, 4),
        g3.parity(1, 4)
    );

    let msr = msr_bound(params.shape());
    let mut total = 0;
    for node in 1..=params.n() {
        let report = repair_node(&params, &g3, node)?;
        assert_eq!(report.recovered, g3.row(node));
        total += report.bandwidth;
        println!(
            "node {node:>2}: {:>2} symbols{}",
            report.bandwidth,
            if report.bandwidth == msr {
                " (MSR bound)"
            } else {
                ""
            }
        );
    }
    println!(
        "total {total} of {} for conventional repair",
        params.n() * params.k() * params.r()
    );
    Ok(())
}
