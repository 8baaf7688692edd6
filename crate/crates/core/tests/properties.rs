//! Property tests for representation invariants and exact deciders,
//! each checked against a naive oracle.

use std::cmp::Ordering;

use arithgraph::fsjump::{h_adjacent, jump_equiv, FinSpace};
use arithgraph::graphings::{e0_adjacent, e0_witness, e0n_adjacent, e0n_witness};
use arithgraph::machines::{
    code1, code2, form, main, pair, special_encode, unpair, Perm, SwapList,
};
use arithgraph::structures::{exception_iso, FinRel, LStruct, TrivialFormula};
use arithgraph::EPSeq;
use proptest::prelude::*;

/// Positions compared by the naive oracles; every generated sequence is
/// periodic well before this.
const HORIZON: usize = 64;

fn seq(alphabet: u64) -> impl Strategy<Value = EPSeq> {
    (
        prop::collection::vec(0..alphabet, 0..5),
        prop::collection::vec(0..alphabet, 1..4),
    )
        .prop_map(|(p, q)| EPSeq::new(p, q).unwrap())
}

fn naive_eventually_equal(x: &EPSeq, y: &EPSeq) -> bool {
    (HORIZON / 2..HORIZON).all(|i| x.at(i) == y.at(i))
}

fn swaps() -> impl Strategy<Value = SwapList> {
    prop::collection::vec((0u64..8, 0u64..8), 0..6).prop_map(|v| {
        let mut s = SwapList::identity();
        for (a, b) in v {
            s.push(a, b);
        }
        s
    })
}

fn structure() -> impl Strategy<Value = LStruct> {
    let default = prop_oneof![
        Just(TrivialFormula::Top),
        Just(TrivialFormula::Bot),
        Just(TrivialFormula::Eq(0, 1)),
    ];
    (default, prop::collection::vec((0u64..4, 0u64..4), 0..4)).prop_map(|(d, exc)| {
        let exc: Vec<Vec<u64>> = exc.into_iter().map(|(a, b)| vec![a, b]).collect();
        let mut uniq = exc.clone();
        uniq.sort();
        uniq.dedup();
        LStruct::new(vec![FinRel::new(2, d, uniq).unwrap()])
    })
}

/// All permutations of `0..n`.
fn permutations(n: u64) -> Vec<Vec<u64>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_form_ignores_unrolling(p in prop::collection::vec(0u64..3, 0..4),
                                        q in prop::collection::vec(0u64..3, 1..4),
                                        k in 0usize..4) {
        let x = EPSeq::new(p.clone(), q.clone()).unwrap();
        let mut p2 = p.clone();
        for i in 0..k {
            p2.push(q[i % q.len()]);
        }
        let rot: Vec<u64> = (0..q.len()).map(|i| q[(i + k) % q.len()]).collect();
        let y = EPSeq::new(p2, rot.repeat(2)).unwrap();
        prop_assert_eq!(&x, &y);
        prop_assert_eq!(x.to_string(), y.to_string());
        prop_assert_eq!(x.to_string().parse::<EPSeq>().unwrap(), x.clone());
        for i in 0..HORIZON {
            prop_assert_eq!(x.at(i), if i < p.len() { p[i] } else { q[(i - p.len()) % q.len()] });
        }
    }

    #[test]
    fn eventual_equality_matches_naive_and_is_an_equivalence(x in seq(2), y in seq(2), z in seq(2)) {
        prop_assert_eq!(x.eventually_equal(&y), naive_eventually_equal(&x, &y));
        prop_assert!(x.eventually_equal(&x));
        prop_assert_eq!(x.eventually_equal(&y), y.eventually_equal(&x));
        if x.eventually_equal(&y) && y.eventually_equal(&z) {
            prop_assert!(x.eventually_equal(&z));
        }
    }

    #[test]
    fn lex_order_matches_first_difference(x in seq(3), y in seq(3)) {
        let naive = (0..HORIZON)
            .find(|&i| x.at(i) != y.at(i))
            .map_or(Ordering::Equal, |i| x.at(i).cmp(&y.at(i)));
        prop_assert_eq!(x.lex_cmp(&y), naive);
        prop_assert_eq!(x.lex_less(&y), naive == Ordering::Less);
        prop_assert_eq!(y.lex_cmp(&x), naive.reverse());
    }

    #[test]
    fn e0_witnesses_join_equivalent_points(x in seq(2), head in prop::collection::vec(0u64..2, 0..6)) {
        let y = x.with_values(&head.iter().copied().enumerate().collect::<Vec<_>>());
        prop_assume!(x != y);
        let w = e0_witness(&x, &y).unwrap();
        prop_assert!(e0_adjacent(&x, &w));
        prop_assert!(e0_adjacent(&y, &w));
        let w = e0n_witness(&x, &y).unwrap();
        prop_assert!(e0n_adjacent(&x, &w) && e0n_adjacent(&y, &w));
    }

    #[test]
    fn swap_lists_are_bijections(s in swaps()) {
        let inv = s.inverse();
        let mut seen = std::collections::BTreeSet::new();
        for n in 0..16u64 {
            prop_assert_eq!(inv.apply(s.apply(n)), n);
            prop_assert!(seen.insert(s.apply(n)));
        }
        let p = Perm::from_swaps(&s);
        for n in 0..16u64 {
            prop_assert_eq!(p.apply(n), s.apply(n));
        }
        let r = p.rank().unwrap();
        prop_assert_eq!(Perm::unrank(r), p);
    }

    #[test]
    fn pairing_and_special_form_round_trip(a in 0u64..5_000, b in 0u64..5_000, c in 0u64..5_000) {
        prop_assert_eq!(unpair(pair(a, b).unwrap()), (a, b));
        let e = special_encode(a, b, c).unwrap();
        prop_assert!(form(e));
        prop_assert_eq!((code1(e).unwrap(), code2(e).unwrap(), main(e).unwrap()), (a, b, c));
    }

    #[test]
    fn exception_iso_matches_brute_force(x in structure(), y in structure()) {
        let m = x.support().iter().chain(y.support().iter()).max().map_or(1, |v| v + 1);
        let brute = permutations(m).into_iter().any(|imgs| {
            x.map(|v| if v < m { imgs[v as usize] } else { v }) == y
        });
        let found = exception_iso(&x, &y, None);
        prop_assert_eq!(found.is_some(), brute);
        if let Some(p) = found {
            prop_assert_eq!(x.map(|v| p.apply(v)), y);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Edges of the jump graph stay inside one class; blocks are components.
    #[test]
    fn h_edges_are_sound(size in 2usize..5, edges in prop::collection::vec((0u64..4, 0u64..4), 0..4),
                         xs in seq(4), zs in seq(4)) {
        let edges: Vec<(u64, u64)> = edges
            .into_iter()
            .map(|(a, b)| (a % size as u64, b % size as u64))
            .filter(|(a, b)| a != b)
            .collect();
        let space = FinSpace::from_edges(size, edges).unwrap();
        let clamp = |s: &EPSeq| s.map(|v| v % size as u64);
        let (xs, zs) = (clamp(&xs), clamp(&zs));
        if h_adjacent(&space, &xs, &zs) {
            prop_assert!(jump_equiv(&space, &xs, &zs));
        }
    }
}
