//! 1-equivalence and m-equivalence on sets of naturals.
//!
//! For a set `B` with least change point `n` (least `n > 0` with
//! `B(n-1) ≠ B(n)`), candidate reductions range over the bound set `S(n)`:
//! swapping programs moving only numbers below `2n`, and their compositions
//! with programs of index below `n`. The m-variant also admits the
//! composition with the swapping program on the right, which is what the
//! reverse reduction `B → A'` needs.
//!
//! The swapping family is decided exactly: some permutation of `[0, 2n)`
//! carries `A` onto `B` iff they agree from `2n` on and have equally many
//! members below `2n`. Composed candidates get bounded necessary
//! conditions on the inputs below `fuel.inputs`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{symmetrized, FnRelation, Graphing, RelFn, Symmetrized};
use crate::error::{Error, Result};
use crate::machines::{
    code_table, compose, shape, swap_program, table_reduction_check, ProgramCode, ReductionKind,
    RunOutcome, Shape, SwapList,
};
use crate::seq::EPSeq;
use crate::tri::{Fuel, Tri};

/// Least `n > 0` with `b(n-1) ≠ b(n)`; `None` for constant sequences.
pub fn change_point(b: &EPSeq) -> Option<usize> {
    if b.is_constant() {
        return None;
    }
    let (start, p) = b.joint_window(b);
    (1..=start + p).find(|&i| b.at(i - 1) != b.at(i))
}

fn popcount(s: &EPSeq, len: usize) -> usize {
    (0..len).filter(|&i| s.at(i) == 1).count()
}

/// Some permutation of `[0, 2n)` carries `x` onto `y`.
fn swap_family(x: &EPSeq, y: &EPSeq, n: usize) -> bool {
    let w = 2 * n;
    x.shift(w) == y.shift(w) && popcount(x, w) == popcount(y, w)
}

/// `x(m) = y(s(φ(m)))` is still possible for some swapping `s` below `2n`.
fn left_possible(
    table: &[RunOutcome],
    x: &EPSeq,
    y: &EPSeq,
    n: usize,
    kind: ReductionKind,
) -> bool {
    let w = 2 * n;
    let mut need: HashMap<u64, u64> = HashMap::new();
    for (m, out) in table.iter().enumerate() {
        match *out {
            RunOutcome::Loops => return false,
            RunOutcome::OutOfFuel => {}
            RunOutcome::Halted(v) => {
                let bit = x.at(m);
                match need.insert(v, bit) {
                    Some(_) if kind == ReductionKind::OneOne => return false,
                    Some(prev) if prev != bit => return false,
                    _ => {}
                }
            }
        }
    }
    let (mut ones, mut zeros) = (0, 0);
    for (&v, &bit) in &need {
        if v as usize >= w {
            if y.at(v as usize) != bit {
                return false;
            }
        } else if bit == 1 {
            ones += 1;
        } else {
            zeros += 1;
        }
    }
    let have = popcount(y, w);
    ones <= have && zeros <= w - have
}

/// `x(m) = y(φ(s(m)))` is still possible for some swapping `s` below `2n`.
fn right_possible(table: &[RunOutcome], x: &EPSeq, y: &EPSeq, n: usize) -> bool {
    let w = 2 * n;
    let (mut s1, mut s0) = (0, 0);
    for (m, out) in table.iter().enumerate() {
        match *out {
            RunOutcome::Loops => return false,
            RunOutcome::OutOfFuel => {}
            RunOutcome::Halted(v) => {
                let bit = y.at(v as usize);
                if m >= w {
                    if x.at(m) != bit {
                        return false;
                    }
                } else if bit == 1 {
                    s1 += 1;
                } else {
                    s0 += 1;
                }
            }
        }
    }
    let o = popcount(x, w);
    s1 <= o && s0 <= w - o
}

fn binary(s: &EPSeq) -> bool {
    s.is_binary()
}

/// Raw relation `G(x, y)`.
fn family_relation(x: &EPSeq, y: &EPSeq, kind: ReductionKind, fuel: Fuel) -> Tri {
    if !binary(x) || !binary(y) {
        return Tri::Refuted;
    }
    let Some(n) = change_point(y) else {
        return Tri::Refuted;
    };
    if swap_family(x, y, n) {
        return Tri::Verified;
    }
    let (mut forward, mut backward) = (false, kind == ReductionKind::OneOne);
    for c in 0..n as u64 {
        if shape(c) == Shape::Diverge {
            continue;
        }
        let table = code_table(c, fuel);
        forward = forward
            || left_possible(&table, x, y, n, kind)
            || (kind == ReductionKind::ManyOne && right_possible(&table, x, y, n));
        backward =
            backward || left_possible(&table, y, x, n, kind) || right_possible(&table, y, x, n);
        if forward && backward {
            return Tri::Unknown { fuel };
        }
    }
    Tri::Refuted
}

fn exact_or_bounded(e: ProgramCode, a: &EPSeq, b: &EPSeq, kind: ReductionKind, fuel: Fuel) -> Tri {
    if !binary(a) || !binary(b) {
        return Tri::Refuted;
    }
    match shape(e) {
        Shape::Diverge => Tri::Refuted,
        Shape::Swap(p) => {
            // a swapping program is a total bijection, so the check is exact
            let l = p.support_len() as usize;
            let ok = a.shift(l) == b.shift(l)
                && (0..l).all(|m| a.at(m) == b.at(p.apply(m as u64) as usize));
            Tri::from_bool(ok)
        }
        _ => {
            let table = code_table(e, fuel);
            table_reduction_check(&table, a, b, kind, fuel)
        }
    }
}

/// Is `φ_e` a 1-equivalence from `a` to `b`?
pub fn oneequiv_check(e: ProgramCode, a: &EPSeq, b: &EPSeq, fuel: Fuel) -> Tri {
    exact_or_bounded(e, a, b, ReductionKind::OneOne, fuel)
}

/// Is `φ_e` an m-reduction from `a` to `b`?
pub fn mequiv_check(e: ProgramCode, a: &EPSeq, b: &EPSeq, fuel: Fuel) -> Tri {
    exact_or_bounded(e, a, b, ReductionKind::ManyOne, fuel)
}

pub type OneEquiv = Symmetrized<FnRelation<EPSeq, RelFn<EPSeq>>>;
pub type MEquiv = Symmetrized<FnRelation<EPSeq, RelFn<EPSeq>>>;

fn one_tri(x: &EPSeq, y: &EPSeq, fuel: Fuel) -> Tri {
    family_relation(x, y, ReductionKind::OneOne, fuel)
}

fn m_tri(x: &EPSeq, y: &EPSeq, fuel: Fuel) -> Tri {
    family_relation(x, y, ReductionKind::ManyOne, fuel)
}

pub fn oneequiv_graph() -> OneEquiv {
    symmetrized(
        "oneequiv",
        FnRelation::new(one_tri as RelFn<EPSeq>),
        Some(2),
    )
}

pub fn mequiv_graph() -> MEquiv {
    symmetrized("mequiv", FnRelation::new(m_tri as RelFn<EPSeq>), Some(2))
}

pub fn oneequiv_adjacent(a: &EPSeq, b: &EPSeq, fuel: Fuel) -> Tri {
    oneequiv_graph().adjacent(a, b, fuel)
}

pub fn mequiv_adjacent(a: &EPSeq, b: &EPSeq, fuel: Fuel) -> Tri {
    mequiv_graph().adjacent(a, b, fuel)
}

/// A common neighbour `b` of `A` and `A'` with the reductions that place it there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionWitness {
    pub b: EPSeq,
    /// Least change point of `b`.
    pub n: usize,
    /// Transpositions carrying `A` to `b`, applied in order.
    pub swaps: SwapList,
    /// Index of the swapping program `A → b`, when it fits in 64 bits.
    pub via_a: Option<ProgramCode>,
    /// Index of `A' → b`, the swapping program after the hint.
    pub via_a_prime: Option<ProgramCode>,
    /// m-variant only: index of `b → A'`, the reverse hint after the inverse swapping.
    pub back_a_prime: Option<ProgramCode>,
}

fn build(a: &EPSeq, a_prime: &EPSeq, above: u64) -> Result<(EPSeq, usize, SwapList)> {
    if !binary(a) || !binary(a_prime) {
        return Err(Error::domain("points must be binary sequences"));
    }
    if a == a_prime {
        return Err(Error::domain("witness needs distinct sets"));
    }
    if a.is_constant() || a_prime.is_constant() {
        return Err(Error::domain("a constant set is only equivalent to itself"));
    }
    let first = |bit| {
        let (start, p) = a.joint_window(a);
        (0..start + p)
            .find(|&i| a.at(i) == bit)
            .expect("non-constant")
    };
    let n = (above as usize + 1).max(first(0).max(first(1)) + 1);
    let w = 2 * n;
    let mut cur: Vec<u64> = (0..w).map(|i| a.at(i)).collect();
    // at least n of one value lies below 2n; stack it on [0, n) and put the other at n
    let fill = if cur.iter().filter(|&&v| v == 1).count() >= n {
        1
    } else {
        0
    };
    let mut swaps = SwapList::identity();
    // below n the wanted value is fixed, so its partner cursor only moves forward
    let mut cursor = 0;
    for pos in 0..=n {
        let want = if pos < n { fill } else { 1 - fill };
        if cur[pos] != want {
            let from = if pos < n {
                cursor.max(pos + 1)
            } else {
                pos + 1
            };
            let j = (from..w)
                .find(|&j| cur[j] == want)
                .expect("counting guarantees a partner");
            cur.swap(pos, j);
            swaps.push(pos as u64, j as u64);
            cursor = j + 1;
        }
    }
    let edits: Vec<(usize, u64)> = cur.into_iter().enumerate().collect();
    let b = a.with_values(&edits);
    debug_assert_eq!(change_point(&b), Some(n));
    Ok((b, n, swaps))
}

/// Common neighbour of `a` and `a_prime`, given `e` with `φ_e` a
/// 1-equivalence from `a_prime` to `a`.
pub fn oneequiv_witness(a: &EPSeq, a_prime: &EPSeq, e: ProgramCode) -> Result<ReductionWitness> {
    let (b, n, swaps) = build(a, a_prime, e)?;
    let via_a = swap_program(&swaps).ok();
    let via_a_prime = via_a.and_then(|s| compose(s, e).ok());
    Ok(ReductionWitness {
        b,
        n,
        swaps,
        via_a,
        via_a_prime,
        back_a_prime: None,
    })
}

/// Common neighbour of `a` and `a_prime`, given m-reductions `e` from
/// `a_prime` to `a` and `e_back` from `a` to `a_prime`.
pub fn mequiv_witness(
    a: &EPSeq,
    a_prime: &EPSeq,
    e: ProgramCode,
    e_back: ProgramCode,
) -> Result<ReductionWitness> {
    let (b, n, swaps) = build(a, a_prime, e.max(e_back))?;
    let via_a = swap_program(&swaps).ok();
    let via_a_prime = via_a.and_then(|s| compose(s, e).ok());
    let back_a_prime = swap_program(&swaps.inverse())
        .ok()
        .and_then(|s| compose(e_back, s).ok());
    Ok(ReductionWitness {
        b,
        n,
        swaps,
        via_a,
        via_a_prime,
        back_a_prime,
    })
}
