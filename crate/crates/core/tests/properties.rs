use hypersimplex_core::automorphism::IndexPermutation;
use hypersimplex_core::{inner_product, is_adjacent, transitive_automorphism, GraphParams, Vertex};
use proptest::prelude::*;
use proptest::sample::subsequence;

/// `(d, k, a, b)` with `a`, `b` two `k`-subsets of `1..=d`.
fn vertex_pair(d_max: u32) -> impl Strategy<Value = (Vertex, Vertex)> {
    (2..=d_max)
        .prop_flat_map(|d| (Just(d), 1..d))
        .prop_flat_map(|(d, k)| {
            let coords: Vec<u32> = (1..=d).collect();
            (
                Just(GraphParams::new(d, k).unwrap()),
                subsequence(coords.clone(), k as usize),
                subsequence(coords, k as usize),
            )
        })
        .prop_map(|(p, a, b)| {
            (
                Vertex::from_subset(p, &a).unwrap(),
                Vertex::from_subset(p, &b).unwrap(),
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn automorphism_contract((x, y) in vertex_pair(12)) {
        let f = transitive_automorphism(x, y).unwrap();
        prop_assert_eq!(f.apply(x).unwrap(), y);
        prop_assert_eq!(f.apply(y).unwrap(), x);
        prop_assert!(f.compose(&f).is_identity());
        let all: Vec<Vertex> = Vertex::all(x.params()).take(40).collect();
        for &a in &all {
            for &b in &all {
                let (fa, fb) = (f.apply(a).unwrap(), f.apply(b).unwrap());
                prop_assert_eq!(inner_product(a, b), inner_product(fa, fb));
            }
        }
    }

    #[test]
    fn random_permutations_keep_popcount(
        perm in Just((1..=7u32).collect::<Vec<_>>()).prop_shuffle(),
        subset in subsequence((1..=7u32).collect::<Vec<_>>(), 3),
    ) {
        let p = GraphParams::new(7, 3).unwrap();
        let f = IndexPermutation::new(perm).unwrap();
        let x = Vertex::from_subset(p, &subset).unwrap();
        prop_assert_eq!(f.apply(x).unwrap().bits().count_ones(), 3);
    }

    #[test]
    fn text_form_round_trips((x, _) in vertex_pair(64)) {
        let s = x.to_string();
        prop_assert_eq!(s.len() as u32, x.params().d());
        prop_assert_eq!(s.parse::<Vertex>().unwrap(), x);
        prop_assert_eq!(Vertex::from_subset(x.params(), &x.subset()).unwrap(), x);
    }

    #[test]
    fn adjacency_is_hamming_two((x, y) in vertex_pair(64)) {
        let hamming = (x.bits() ^ y.bits()).count_ones();
        prop_assert_eq!(is_adjacent(x, y).unwrap(), hamming == 2);
        prop_assert_eq!(is_adjacent(x, y), is_adjacent(y, x));
    }
}
