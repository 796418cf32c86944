use proptest::prelude::*;

use cayley_core::certificate::Certificate;
use cayley_core::dihedral::{
    dihedral_vectors, format_string, good_string, inverse_string, parse_string, string_value, verify_good, DihedralCertificate, Letter,
};
use cayley_core::group::{build_group, CoordPermutation, Group, GroupSpec};
use cayley_core::intmat::IntMatrix;

fn perm(k: usize) -> impl Strategy<Value = CoordPermutation> {
    Just((0..k as u8).collect::<Vec<u8>>())
        .prop_shuffle()
        .prop_map(|v| CoordPermutation::new(v).unwrap())
}

fn matrix(k: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(lo..=hi, k), k).prop_map(|rows| IntMatrix::from_rows(&rows).unwrap())
}

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![Just(Letter::R), Just(Letter::RInv), Just(Letter::S)]
}

proptest! {
    #[test]
    fn group_law_is_associative(spec in prop_oneof![
        Just(GroupSpec::Symmetric(4)),
        Just(GroupSpec::Cyclic(12)),
        Just(GroupSpec::Dihedral(10)),
        Just(GroupSpec::Semidirect { n: 15, m: 4, exp: 2 }),
    ], a in 0usize..1000, b in 0usize..1000, c in 0usize..1000) {
        let g = build_group(&spec).unwrap();
        let n = g.order();
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.inv(a)), 0);
    }

    #[test]
    fn permutation_action_composes(p in perm(6), q in perm(6), x in prop::collection::vec(0u8..5, 6)) {
        prop_assert_eq!(q.apply(&p.apply(&x)), p.then(&q).apply(&x));
        prop_assert_eq!(p.inverse().apply(&p.apply(&x)), x);
    }

    #[test]
    fn mask_action_matches_vector_action(p in perm(8), mask in 0u64..256) {
        let bits: Vec<u8> = (0..8).map(|j| ((mask >> j) & 1) as u8).collect();
        let moved = p.apply(&bits);
        let expect = moved.iter().enumerate().fold(0u64, |acc, (j, &b)| acc | (u64::from(b) << j));
        prop_assert_eq!(p.apply_mask(mask), expect);
    }

    #[test]
    fn unimodular_iff_inverse_exists(m in matrix(3, -2, 2)) {
        let det = m.determinant();
        let unimodular = det == 1.into() || det == (-1).into();
        prop_assert_eq!(m.is_unimodular(), unimodular);
        match m.unimodular_inverse().unwrap() {
            Some(inv) => {
                prop_assert!(unimodular);
                prop_assert_eq!(m.mul(&inv), IntMatrix::identity(3));
            }
            None => prop_assert!(!unimodular),
        }
    }

    #[test]
    fn determinant_is_multiplicative(a in matrix(3, -3, 3), b in matrix(3, -3, 3)) {
        prop_assert_eq!(a.mul(&b).determinant(), a.determinant() * b.determinant());
    }

    #[test]
    fn dihedral_strings_round_trip(k in (3usize..30).prop_map(|h| 2 * h + 1), word in prop::collection::vec(letter(), 1..12)) {
        prop_assert_eq!(parse_string(&format_string(&word)).unwrap(), word.clone());
        let mut both = word.clone();
        both.extend(inverse_string(&word));
        prop_assert_eq!(string_value(k, &both), 0);
    }

    #[test]
    fn good_strings_hit_their_element(k in (3usize..40).prop_map(|h| 2 * h + 1), e in 0usize..1000) {
        let e = e % (2 * k);
        let v = dihedral_vectors(k).unwrap();
        let word = good_string(k, e).unwrap();
        prop_assert_eq!(word.len(), k);
        prop_assert_eq!(string_value(k, &word), e);
        prop_assert!(verify_good(&v, &word));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn dihedral_certificate_json_round_trips(k in (3usize..20).prop_map(|h| 2 * h + 1)) {
        let c = Certificate::Dihedral(DihedralCertificate::build(k).unwrap());
        let text = c.to_json().unwrap();
        let back = Certificate::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json().unwrap(), text);
    }
}
