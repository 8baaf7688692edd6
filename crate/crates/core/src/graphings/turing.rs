//! Turing equivalence on binary sequences.
//!
//! `R(x, z)`: `z = σ_n ⌢ y` with `σ_n = 0^n 1`, and some `e0, e1 < n`
//! have `φ_{e0}^x = y` and `φ_{e1}^y = x`. Totality is not finitely
//! checkable, so the relation is never `Verified`; it is `Refuted` once
//! every `e0` or every `e1` below `n` is caught out.

use super::e0::sigma_index;
use super::{symmetrized, FnRelation, Graphing, RelFn, Symmetrized};
use crate::error::{Error, Result};
use crate::machines::{decode, e_star, shape, ProgramCode, RunOutcome, Shape};
use crate::seq::EPSeq;
use crate::tri::{Fuel, Tri};

/// `σ_n = 0^n 1`.
pub fn sigma(n: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    v.push(1);
    v
}

/// Some input below `fuel.inputs` shows `φ_e^oracle ≠ target`.
fn candidate_refuted(e: ProgramCode, oracle: &EPSeq, target: &EPSeq, fuel: Fuel) -> bool {
    if shape(e) == Shape::Diverge {
        return true;
    }
    let p = decode(e);
    (0..fuel.inputs).any(|i| match p.run(i, oracle, fuel.steps) {
        RunOutcome::Halted(v) => v != target.at(i as usize),
        RunOutcome::Loops => true,
        RunOutcome::OutOfFuel => false,
    })
}

pub fn turing_relation(x: &EPSeq, z: &EPSeq, fuel: Fuel) -> Tri {
    if !x.is_binary() || !z.is_binary() {
        return Tri::Refuted;
    }
    let Some(n) = sigma_index(z) else {
        return Tri::Refuted;
    };
    let y = z.shift(n + 1);
    let n = n as u64;
    let there = (0..n).any(|e| !candidate_refuted(e, x, &y, fuel));
    if !there {
        return Tri::Refuted;
    }
    let back = (0..n).any(|e| !candidate_refuted(e, &y, x, fuel));
    if !back {
        return Tri::Refuted;
    }
    Tri::Unknown { fuel }
}

pub type Turing = Symmetrized<FnRelation<EPSeq, RelFn<EPSeq>>>;

pub fn turing_graph() -> Turing {
    symmetrized(
        "turing",
        FnRelation::new(turing_relation as RelFn<EPSeq>),
        Some(2),
    )
}

pub fn turing_adjacent(x: &EPSeq, z: &EPSeq, fuel: Fuel) -> Tri {
    turing_graph().adjacent(x, z, fuel)
}

/// `σ_n ⌢ y` with `n = 1 + max(e*, e0, e1)`, given `φ_{e0}^x = y` and
/// `φ_{e1}^y = x`.
pub fn turing_witness(x: &EPSeq, y: &EPSeq, e0: ProgramCode, e1: ProgramCode) -> Result<EPSeq> {
    if !x.is_binary() || !y.is_binary() {
        return Err(Error::domain("points must be binary sequences"));
    }
    let n = 1 + e_star().max(e0).max(e1);
    let n = usize::try_from(n).map_err(|_| Error::domain("hint index too large"))?;
    Ok(y.prepend(&sigma(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines::identity_code;

    fn s(t: &str) -> EPSeq {
        t.parse().unwrap()
    }

    fn fuel() -> Fuel {
        Fuel::new(5_000, 16).unwrap()
    }

    #[test]
    fn no_sigma_prefix() {
        assert_eq!(turing_relation(&s(";1"), &s(";0"), fuel()), Tri::Refuted);
        assert_eq!(turing_adjacent(&s(";0"), &s(";0"), fuel()), Tri::Refuted);
    }

    #[test]
    fn self_witness_survives() {
        let x = s("1,1,0;1,0,0");
        let z = turing_witness(&x, &x, e_star(), e_star()).unwrap();
        assert_eq!(sigma_index(&z), Some(e_star() as usize + 1));
        assert!(turing_relation(&x, &z, fuel()).is_unknown());
        assert!(!candidate_refuted(e_star(), &x, &x, fuel()));
    }

    #[test]
    fn single_diverging_candidate() {
        // n = 1 leaves only index 0, which never halts
        let y = s(";0");
        let z = y.prepend(&sigma(1));
        assert_eq!(turing_relation(&s(";0"), &z, fuel()), Tri::Refuted);
    }

    #[test]
    fn wrong_values_refute() {
        // below 6 the only halting candidates compute the identity, which
        // disagrees with a binary y at input 2
        assert_eq!(identity_code(), 5);
        let y = s(";0");
        let z = y.prepend(&sigma(6));
        assert_eq!(turing_relation(&s(";0"), &z, fuel()), Tri::Refuted);
    }
}
