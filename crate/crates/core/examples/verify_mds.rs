//! Exhaustive MDS check for a few parameter sets and fields.
//!
//! Run: cargo run --release --example verify_mds

use cpcode::{verify_mds, CodeParams, GaloisField};

fn main() -> cpcode::Result<()> {
    let cases = [
        (14, 10, 3, 8, None),
        (14, 10, 3, 8, Some(0x11d)),
        (16, 12, 3, 8, None),
        (16, 12, 3, 12, None),
        (6, 4, 2, 8, None),
    ];
    for (n, k, l, m, poly) in cases {
        let params = CodeParams::new(n, k, l, GaloisField::new(m, poly)?)?;
        let report = verify_mds(&params, 1_000_000)?;
        println!(
            "({n},{k},{l}) GF(2^{m}) poly {:#x}: {} patterns, {} failures {:?}",
            params.field().reduction_poly(),
            report.patterns_checked,
            report.failures.len(),
            report
                .failures
                .iter()
                .map(|f| &f.erased)
                .collect::<Vec<_>>()
        );
    }
    Ok(())
}
