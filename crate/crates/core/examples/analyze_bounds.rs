//! Group-count choice and comparator bounds for several parity counts.
//!
//! Run: cargo run --example analyze_bounds

use cpcode::analysis::{
    check_against_c1, check_against_first_code23, check_against_oop, comparator_bounds, optimal_l,
    CodeName, RatioKind,
};

fn main() -> cpcode::Result<()> {
    for r in [4, 5, 6, 8, 10] {
        let table = comparator_bounds(None, r)?;
        let row: Vec<String> = table
            .bounds
            .iter()
            .filter(|b| {
                b.kind == RatioKind::Data
                    || (b.kind == RatioKind::All && b.code == CodeName::FirstCode23)
            })
            .map(|b| format!("{}={:.4}", b.code, b.value))
            .collect();
        println!("r={r:>2} L*={} | {}", optimal_l(r, None)?, row.join(" "));
    }
    for r in [6, 10, 20] {
        for c in check_against_oop(r) {
            println!("{} r={r}: margin {:.5}", c.label, c.margin());
        }
    }
    println!(
        "C1 parity r=10: margin {:.5}",
        check_against_c1(10).margin()
    );
    for r in 5..=7 {
        let c = check_against_first_code23(r).expect("r >= 3");
        println!("{} r={r}: margin {:.5}", c.label, c.margin());
    }
    Ok(())
}
