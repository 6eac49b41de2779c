mod common;

use std::collections::HashSet;

use common::{naive_nbc, naive_rank, rs};
use oscox::coxeter::DEFAULT_GUARD;
use oscox::matroid::{Arrangement, BasisGraph, ReflectionOrder, Word};
use proptest::prelude::*;

fn build(t: &str, order: &str) -> (Arrangement, BasisGraph) {
    let r = rs(t);
    let order = ReflectionOrder::parse(&r, order).unwrap();
    let arr = Arrangement::new(r, order);
    let g = BasisGraph::build(&arr, DEFAULT_GUARD).unwrap();
    (arr, g)
}

const SMALL: [&str; 17] = [
    "A1", "A2", "A3", "A4", "B2", "B3", "D4", "I2(3)", "I2(5)", "I2(8)", "I2(12)", "A1xA1",
    "A2xA1", "B2xA1", "A3xA1", "A2xA2", "A1xA1xA1",
];

#[test]
fn language_matches_naive_definition() {
    for t in SMALL {
        for order in ["default", "simples-last"] {
            let (arr, g) = build(t, order);
            assert!(arr.len() <= 12, "{t}");
            let naive = naive_nbc(arr.root_system(), arr.order());
            let ours: Vec<Word> = g.enumerate(None).collect();
            assert_eq!(ours, naive, "{t} {order}");
        }
    }
}

#[test]
fn language_matches_naive_definition_reversed_order() {
    for t in ["A3", "B3", "D4"] {
        let r = rs(t);
        let n = r.num_positive();
        let perm: Vec<String> = (1..=n).rev().map(|k| k.to_string()).collect();
        let (arr, g) = build(t, &perm.join(","));
        let ours: Vec<Word> = g.enumerate(None).collect();
        assert_eq!(ours, naive_nbc(arr.root_system(), arr.order()), "{t}");
    }
}

#[test]
fn basis_size_is_group_order() {
    for t in ["A5", "B4", "H3", "F4", "D5", "H3xA1", "I2(9)"] {
        let (arr, g) = build(t, "default");
        assert_eq!(g.path_count(), arr.root_system().group_order(), "{t}");
    }
}

#[test]
fn spec_rank_and_circuit_examples() {
    let (arr, _) = build("A3", "reference-a3");
    assert_eq!(arr.rank_of(&[]), 0);
    assert_eq!(arr.rank_of(&[1, 2, 4]), 2);
    assert_eq!(arr.circuit_extension(&Word::from([1, 2])), Some(4));
    assert_eq!(arr.circuit_extension(&Word::from([2, 4, 5])), Some(6));
    assert!(arr.can_extend(&Word::from([2, 4]), 6));
    assert!(!arr.can_extend(&Word::from([2, 4]), 5));
}

#[test]
fn schreier_property_and_determinism() {
    for t in ["A4", "B3", "H3", "D4"] {
        let (_, g) = build(t, "default");
        let words: HashSet<Word> = g.enumerate(None).collect();
        for w in &words {
            for k in 0..w.len() {
                assert!(words.contains(&w.prefix(k)), "{t}: {w}");
            }
        }
        let (_, again) = build(t, "default");
        assert_eq!(again.node_count(), g.node_count());
        assert_eq!(again.edge_count(), g.edge_count());
    }
}

#[test]
fn enumeration_is_lexicographic_and_degree_filtered() {
    let (_, g) = build("B3", "default");
    let all: Vec<Word> = g.enumerate(None).collect();
    assert!(all.windows(2).all(|w| w[0] < w[1]));
    for p in 0..=3 {
        let deg: Vec<Word> = g.enumerate(Some(p)).collect();
        let filtered: Vec<Word> = all.iter().filter(|w| w.len() == p).cloned().collect();
        assert_eq!(deg, filtered);
    }
}

#[test]
fn cache_round_trip_preserves_membership() {
    let (arr, g) = build("H3", "default");
    let mut bytes = Vec::new();
    g.write_to(&mut bytes).unwrap();
    let back = BasisGraph::read_from(&bytes[..]).unwrap();
    assert_eq!(back.node_count(), g.node_count());
    let n = arr.len() as u16;
    for a in 1..=n {
        for b in a + 1..=n {
            let w = Word::from([a, b]);
            assert_eq!(back.contains(&w).unwrap(), g.contains(&w).unwrap());
        }
    }
    let mut wrong_version = bytes.clone();
    wrong_version[8] = 99;
    assert!(BasisGraph::read_from(&wrong_version[..]).is_err());
    let mut flipped = bytes;
    let last = flipped.len() - 5;
    flipped[last] ^= 0xff;
    assert!(BasisGraph::read_from(&flipped[..]).is_err());
}

#[test]
fn guard_refuses_large_builds() {
    let r = rs("E7");
    let arr = Arrangement::new(r.clone(), ReflectionOrder::standard(&r));
    assert!(BasisGraph::build(&arr, DEFAULT_GUARD).is_err());
}

fn subset(bits: u32, n: u16) -> Vec<u16> {
    (1..=n).filter(|&x| bits >> (x - 1) & 1 == 1).collect()
}

proptest! {
    #[test]
    fn rank_is_monotone_and_submodular(a in 0u32..1 << 9, b in 0u32..1 << 9) {
        let (arr, _) = build("B3", "default");
        let n = arr.len() as u16;
        let (x, y) = (subset(a, n), subset(b, n));
        let union = subset(a | b, n);
        let inter = subset(a & b, n);
        let r = |s: &[u16]| arr.rank_of(s);
        prop_assert!(r(&inter) <= r(&x) && r(&x) <= r(&union));
        prop_assert!(r(&union) + r(&inter) <= r(&x) + r(&y));
        prop_assert_eq!(r(&x), naive_rank(arr.root_system(), arr.order(), &x));
    }
}
