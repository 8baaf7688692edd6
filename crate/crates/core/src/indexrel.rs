//! Graphs of index equivalence relations through special-form programs.
//!
//! A presentation `a E b ⟺ ∃k R(a, b, k)` gives the graph
//! `G(a, e) ⟺ Form(e) ∧ [Main(e) = a ∨ (Code₁(e) = a ∧ R(Main(e), a, Code₂(e)))]`.
//! The witness for `R(a, b, k)` is the special-form index with `Main = a`,
//! `Code₁ = b`, `Code₂ = k`; both `a` and `b` are adjacent to it.

use std::fmt;

use crate::error::{Error, Result};
use crate::machines::{
    code1, code2, form, main, run, special_encode, unpair, ProgramCode, RunOutcome,
};
use crate::seq::EPSeq;
use crate::tri::Fuel;

/// A bounded-decidable ternary predicate with a name.
#[derive(Clone, Copy)]
pub struct IndexRelationSpec {
    pub name: &'static str,
    pub about: &'static str,
    /// Step budget the predicate uses internally, if any.
    pub fuel: Option<Fuel>,
    pub r: fn(u64, u64, u64) -> bool,
}

impl fmt::Debug for IndexRelationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IndexRelationSpec")
            .field("name", &self.name)
            .field("fuel", &self.fuel)
            .finish()
    }
}

impl IndexRelationSpec {
    pub fn holds(&self, a: u64, b: u64, k: u64) -> bool {
        (self.r)(a, b, k)
    }
}

fn sum_rel(a: u64, b: u64, k: u64) -> bool {
    a.checked_add(b) == Some(k)
}

fn equal_rel(a: u64, b: u64, _k: u64) -> bool {
    a == b
}

const W_STEPS: u64 = 2_000;

fn halts(e: ProgramCode, i: u64, steps: u64) -> bool {
    let fuel = Fuel { steps, inputs: 1 };
    matches!(run(e, i, &EPSeq::constant(0), fuel), RunOutcome::Halted(_))
}

/// `k = ⟨m, s⟩`: `W_a` and `W_b` agree below `m` when each run gets
/// `min(s, W_STEPS)` steps.
fn w_agree_rel(a: u64, b: u64, k: u64) -> bool {
    let (m, s) = unpair(k);
    let s = s.clamp(1, W_STEPS);
    (0..m.min(64)).all(|i| halts(a, i, s) == halts(b, i, s))
}

const BUILTIN: &[IndexRelationSpec] = &[
    IndexRelationSpec {
        name: "sum",
        about: "toy predicate a + b = k",
        fuel: None,
        r: sum_rel,
    },
    IndexRelationSpec {
        name: "equal",
        about: "a = b, k ignored",
        fuel: None,
        r: equal_rel,
    },
    IndexRelationSpec {
        name: "w-agree",
        about: "k = <m,s>: W_a and W_b agree below min(m,64) at min(s,2000) steps",
        fuel: Some(Fuel {
            steps: W_STEPS,
            inputs: 64,
        }),
        r: w_agree_rel,
    },
];

pub fn builtin_specs() -> &'static [IndexRelationSpec] {
    BUILTIN
}

pub fn spec_by_name(name: &str) -> Result<IndexRelationSpec> {
    BUILTIN
        .iter()
        .find(|s| s.name == name)
        .copied()
        .ok_or_else(|| Error::Config {
            location: "spec".into(),
            msg: format!("unknown index relation spec `{name}`"),
        })
}

pub fn index_adjacent(a: u64, e: ProgramCode, spec: &IndexRelationSpec) -> bool {
    if !form(e) {
        return false;
    }
    let (m, c1, c2) = (
        main(e).expect("special form"),
        code1(e).expect("special form"),
        code2(e).expect("special form"),
    );
    m == a || (c1 == a && spec.holds(m, a, c2))
}

/// Special-form index with `Main = a`, `Code₁ = b`, `Code₂ = k`.
pub fn index_witness(a: u64, b: u64, k: u64, spec: &IndexRelationSpec) -> Result<ProgramCode> {
    if a != b && !spec.holds(a, b, k) {
        return Err(Error::domain(format!(
            "R({a}, {b}, {k}) is false under spec `{}`",
            spec.name
        )));
    }
    special_encode(b, k, a)
}
