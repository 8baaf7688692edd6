//! Eventual equality on binary sequences.

use super::{symmetrized, FnRelation, RelFn, Symmetrized};
use crate::error::{Error, Result};
use crate::seq::EPSeq;
use crate::tri::{Fuel, Tri};

/// `n` such that `y` begins with `σ_n = 0^n 1`, if any.
pub fn sigma_index(y: &EPSeq) -> Option<usize> {
    let (start, p) = y.joint_window(y);
    let first = (0..start + p).find(|&i| y.at(i) != 0)?;
    (y.at(first) == 1).then_some(first)
}

/// Raw relation: `y` begins with some `σ_n` and `x(i) = y(i)` for `i ≥ n+1`.
pub fn e0_relation(x: &EPSeq, y: &EPSeq) -> bool {
    match sigma_index(y) {
        Some(n) => x.shift(n + 1) == y.shift(n + 1),
        None => false,
    }
}

/// Adjacency in the symmetrized graph.
pub fn e0_adjacent(x: &EPSeq, y: &EPSeq) -> bool {
    x != y && (e0_relation(x, y) || e0_relation(y, x))
}

/// Last index where two eventually equal sequences differ.
pub(crate) fn last_difference(x: &EPSeq, y: &EPSeq) -> Option<usize> {
    let (start, p) = x.joint_window(y);
    (0..start + p).rev().find(|&i| x.at(i) != y.at(i))
}

/// `σ_n` followed by `x` from index `n+1`, for the least admissible `n`
/// beyond the last disagreement that yields a point different from both inputs.
pub fn e0_witness(x: &EPSeq, y: &EPSeq) -> Result<EPSeq> {
    if !x.is_binary() || !y.is_binary() {
        return Err(Error::domain("E0 points must be binary sequences"));
    }
    if x == y || !x.eventually_equal(y) {
        return Err(Error::domain(
            "witness needs distinct eventually equal sequences",
        ));
    }
    let last = last_difference(x, y).expect("distinct sequences differ somewhere");
    (last..last + 3)
        .map(|n| {
            let mut head = vec![0; n];
            head.push(1);
            x.shift(n + 1).prepend(&head)
        })
        .find(|z| z != x && z != y)
        .ok_or_else(|| Error::domain("no witness found"))
}

pub type E0 = Symmetrized<FnRelation<EPSeq, RelFn<EPSeq>>>;

fn e0_tri(x: &EPSeq, y: &EPSeq, _fuel: Fuel) -> Tri {
    Tri::from_bool(e0_relation(x, y))
}

pub fn e0_graph() -> E0 {
    symmetrized("e0", FnRelation::new(e0_tri as RelFn<EPSeq>), Some(2))
}

/// Exact relation oracle for soundness checks.
pub fn e0_equivalent(x: &EPSeq, y: &EPSeq) -> bool {
    x.eventually_equal(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphings::Graphing;

    fn s(t: &str) -> EPSeq {
        t.parse().unwrap()
    }

    #[test]
    fn adjacency_examples() {
        assert!(e0_adjacent(&s("1,1;0"), &s("0,1;0")));
        assert!(!e0_adjacent(&s(";0"), &s(";1")));
        assert!(!e0_adjacent(&s("1;0"), &s("1;0")));
    }

    #[test]
    fn witness_example() {
        let z = e0_witness(&s("1,1;0"), &s(";0")).unwrap();
        assert_eq!(z, s("0,1;0"));
        assert!(e0_relation(&s("1,1;0"), &z) && e0_relation(&s(";0"), &z));
    }

    #[test]
    fn witness_avoids_inputs() {
        // x already begins with σ_1 and is adjacent to y
        let (x, y) = (s("0,1;0"), s(";0"));
        let z = e0_witness(&x, &y).unwrap();
        assert!(e0_adjacent(&x, &z) && e0_adjacent(&y, &z));
    }

    #[test]
    fn witness_preconditions() {
        assert!(e0_witness(&s(";0"), &s(";0")).is_err());
        assert!(e0_witness(&s(";0"), &s(";1")).is_err());
        assert!(e0_witness(&s(";2"), &s("1;2")).is_err());
    }

    #[test]
    fn graph_is_symmetric() {
        let g = e0_graph();
        let (x, y) = (s("1,1;0"), s("0,1;0"));
        let f = Fuel::default();
        assert_eq!(g.adjacent(&x, &y, f), g.adjacent(&y, &x, f));
        assert_eq!(g.adjacent(&x, &x, f), Tri::Refuted);
    }
}
