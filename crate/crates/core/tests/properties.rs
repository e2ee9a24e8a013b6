use cpcode::code::{conjugate_pair, encode, inverse_conjugate, inverse_pair, Stage};
use cpcode::decode::{decode_generic, Shares};
use cpcode::format::{bytes_to_symbols, read_stripe, symbols_to_bytes, write_stripe};
use cpcode::repair::repair_node;
use cpcode::{CodeParams, DataMatrix, FieldElement, GaloisField};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn shape_strategy() -> impl Strategy<Value = (usize, usize, usize)> {
    (2usize..=5)
        .prop_flat_map(|r| (1usize..=14, Just(r), 2..=r))
        .prop_map(|(k, r, l)| (k + r, k, l))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn transform_pair_inverts(m in 2u32..=16, a in any::<u16>(), b in any::<u16>()) {
        let gf = GaloisField::with_degree(m).unwrap();
        let mask = (gf.order() - 1) as u16;
        let (x, y) = (FieldElement(a & mask), FieldElement(b & mask));
        let (p, q) = conjugate_pair(&gf, x, y);
        prop_assert_eq!(inverse_pair(&gf, p, q), (x, y));
    }

    #[test]
    fn encoding_is_linear((n, k, l) in shape_strategy(), seed in any::<u64>()) {
        let p = CodeParams::new(n, k, l, GaloisField::with_degree(8).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = DataMatrix::random(&p, &mut rng);
        let b = DataMatrix::random(&p, &mut rng);
        let ea = encode(&p, &a).unwrap();
        let eb = encode(&p, &b).unwrap();
        let esum = encode(&p, &a.add(&b).unwrap()).unwrap();
        for (i, s) in esum.as_slice().iter().enumerate() {
            prop_assert_eq!(*s, ea.as_slice()[i] + eb.as_slice()[i]);
        }
        prop_assert_eq!(inverse_conjugate(&p, &ea).unwrap().stage(), Stage::G2);
    }

    #[test]
    fn stripe_text_round_trips((n, k, l) in shape_strategy(), m in prop::sample::select(vec![5u32, 8, 10, 16]), len in 0usize..1000, seed in any::<u64>()) {
        let p = CodeParams::new(n, k, l, GaloisField::with_degree(m).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = encode(&p, &DataMatrix::random(&p, &mut rng)).unwrap();
        let text = write_stripe(&p, &s, len);
        let (header, p2, s2) = read_stripe(&text).unwrap();
        prop_assert_eq!(header.original_len, len);
        prop_assert_eq!(&s2, &s);
        prop_assert_eq!(write_stripe(&p2, &s2, len), text);
    }

    #[test]
    fn payload_bytes_round_trip(bytes in prop::collection::vec(any::<u8>(), 0..80), wide in any::<bool>()) {
        let gf = GaloisField::with_degree(if wide { 16 } else { 8 }).unwrap();
        let mut bytes = bytes;
        if wide && bytes.len() % 2 == 1 {
            bytes.pop();
        }
        let syms = bytes_to_symbols(&gf, &bytes, 80, true).unwrap();
        prop_assert_eq!(symbols_to_bytes(&gf, &syms, bytes.len()).unwrap(), bytes);
    }

    #[test]
    fn repair_rebuilds_any_node((n, k, l) in shape_strategy(), seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let p = CodeParams::new(n, k, l, GaloisField::with_degree(8).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = encode(&p, &DataMatrix::random(&p, &mut rng)).unwrap();
        let node = pick.index(n) + 1;
        let rep = repair_node(&p, &s, node).unwrap();
        prop_assert_eq!(rep.recovered.as_slice(), s.row(node));
        prop_assert_eq!(rep.bandwidth, rep.predicted);
    }

    #[test]
    fn decodes_from_random_survivors((n, k, l) in shape_strategy(), seed in any::<u64>()) {
        // every shape drawn here is MDS over the default degree-16 field
        let p = CodeParams::new(n, k, l, GaloisField::with_degree(16).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = DataMatrix::random(&p, &mut rng);
        let s = encode(&p, &data).unwrap();
        let mut nodes: Vec<usize> = (1..=n).collect();
        nodes.shuffle(&mut rng);
        let shares = Shares::from_stripe(&s, &nodes[..p.r()]);
        prop_assert_eq!(decode_generic(&p, &shares).unwrap(), data);
    }
}
