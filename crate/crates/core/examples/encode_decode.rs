//! Encode a stripe, lose four nodes, and decode it two ways.
//!
//! Run: cargo run --example encode_decode

use cpcode::decode::StructuredDecodePlan;
use cpcode::{
    decode_generic, decode_structured, encode, CodeParams, DataMatrix, DecodeOptions,
    ErasurePattern, GaloisField, Shares,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> cpcode::Result<()> {
    let params = CodeParams::new(14, 10, 3, GaloisField::with_degree(8)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let data = DataMatrix::random(&params, &mut rng);
    let stripe = encode(&params, &data)?;

    let erased = [2, 7, 11, 13];
    let shares = Shares::from_stripe(&stripe, &erased);
    let plan = StructuredDecodePlan::new(&params, &ErasurePattern::new(&params, &erased)?)?;
    println!(
        "erased {erased:?}: data {:?}, surviving parity rows {:?}, columns with self-piggybacks {:?}",
        plan.erased_data, plan.surviving_parity, plan.mixed_columns
    );

    let structured = decode_structured(&params, &shares, DecodeOptions::default())?;
    let generic = decode_generic(&params, &shares)?;
    assert_eq!(structured, data);
    assert_eq!(generic, data);
    println!(
        "both decoders recovered all {} data symbols",
        data.as_slice().len()
    );
    Ok(())
}
