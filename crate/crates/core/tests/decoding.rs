use cpcode::code::encode;
use cpcode::decode::{
    decode_generic, decode_structured, symbol_coefficients, verify_mds, DecodeOptions,
    ErasurePattern, Shares, StructuredDecodePlan,
};
use cpcode::{CodeParams, DataMatrix, Error, GaloisField};
use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn params(n: usize, k: usize, l: usize, m: u32, poly: Option<u32>) -> CodeParams {
    CodeParams::new(n, k, l, GaloisField::new(m, poly).unwrap()).unwrap()
}

#[test]
fn worked_example_is_mds() {
    let p = params(14, 10, 3, 8, None);
    let report = verify_mds(&p, 1_000_000).unwrap();
    assert_eq!(report.patterns_checked, 1001);
    assert!(report.failures.is_empty());
}

#[test]
fn conventional_polynomial_has_two_bad_patterns() {
    let p = params(14, 10, 3, 8, Some(0x11d));
    let report = verify_mds(&p, 1_000_000).unwrap();
    let bad: Vec<Vec<usize>> = report.failures.into_iter().map(|f| f.erased).collect();
    assert_eq!(bad, vec![vec![1, 9, 12, 13], vec![2, 5, 7, 13]]);
}

#[test]
fn two_parity_codes_are_mds_up_to_the_field_bound() {
    // k r^2 < 256 for every k <= 63
    for k in 1..=63 {
        let p = params(k + 2, k, 2, 8, None);
        assert!(p.meets_field_bound());
        assert!(verify_mds(&p, 1_000_000).unwrap().is_mds(), "k = {k}");
    }
}

#[test]
fn field_bound_alone_does_not_give_mds_over_gf256() {
    // 12 * 4^2 = 192 < 256, yet one pattern fails; a degree-12 field fixes it
    let small = params(16, 12, 3, 8, None);
    assert!(small.meets_field_bound());
    assert_eq!(verify_mds(&small, 1_000_000).unwrap().failures.len(), 1);
    assert!(verify_mds(&params(16, 12, 3, 12, None), 1_000_000)
        .unwrap()
        .is_mds());
    assert!(verify_mds(&params(24, 21, 2, 12, None), 1_000_000)
        .unwrap()
        .is_mds());
}

#[test]
fn structured_equals_generic_on_every_pattern() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for (n, k, l) in [(14, 10, 3), (8, 5, 2), (9, 6, 3), (7, 3, 4), (6, 2, 3)] {
        let p = params(n, k, l, 8, None);
        let data = DataMatrix::random(&p, &mut rng);
        let stripe = encode(&p, &data).unwrap();
        for erased in (1..=n).combinations(p.r()) {
            let shares = Shares::from_stripe(&stripe, &erased);
            let s = decode_structured(&p, &shares, DecodeOptions::default()).unwrap();
            let g = decode_generic(&p, &shares).unwrap();
            assert_eq!(s, data, "({n},{k},{l}) {erased:?}");
            assert_eq!(g, data, "({n},{k},{l}) {erased:?}");
        }
    }
}

#[test]
fn generic_decoder_uses_any_k_nodes() {
    let p = params(14, 10, 3, 8, None);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let data = DataMatrix::random(&p, &mut rng);
    let stripe = encode(&p, &data).unwrap();
    // fewer than r erasures: the first k survivors are used
    let shares = Shares::from_stripe(&stripe, &[3, 12]);
    assert_eq!(decode_generic(&p, &shares).unwrap(), data);
    let mut partial = Shares::new(14, 4);
    for node in [2, 4, 5, 6, 7, 8, 9, 10, 11, 14] {
        partial.insert(node, stripe.row(node).to_vec()).unwrap();
    }
    assert_eq!(
        decode_structured(&p, &partial, DecodeOptions::default()).unwrap(),
        data
    );
    assert!(partial.insert(15, vec![]).is_err());
    assert!(partial.insert(1, vec![]).is_err());
}

#[test]
fn plan_reports_columns_that_need_a_larger_field() {
    let p = params(14, 10, 3, 8, Some(0x11d));
    let pattern = ErasurePattern::new(&p, &[13, 12, 9, 1]).unwrap();
    assert_eq!(pattern.erased, vec![1, 9, 12, 13]);
    assert_eq!(
        StructuredDecodePlan::new(&p, &pattern).unwrap_err(),
        Error::FieldTooSmall { column: 3 }
    );
    assert!(ErasurePattern::new(&p, &[1, 1]).is_err());
    assert!(ErasurePattern::new(&p, &[0]).is_err());
}

#[test]
fn linear_forms_have_expected_support() {
    // data symbols are unit vectors; diagonal parity touches one column
    let p = params(14, 10, 3, 8, None);
    for node in 1..=10 {
        for col in 1..=4 {
            let v = symbol_coefficients(&p, node, col).unwrap();
            assert_eq!(v.iter().filter(|c| !c.is_zero()).count(), 1);
        }
    }
    for c in 1..=4 {
        let v = symbol_coefficients(&p, 10 + c, c).unwrap();
        assert_eq!(v.iter().filter(|x| !x.is_zero()).count(), 10);
    }
}

#[test]
fn small_shapes_are_mds_over_gf65536() {
    for r in 2..=5 {
        for k in 1..=14 {
            for l in 2..=r {
                let p = params(k + r, k, l, 16, None);
                assert!(
                    verify_mds(&p, 1_000_000).unwrap().is_mds(),
                    "k={k} r={r} L={l}"
                );
            }
        }
    }
}
