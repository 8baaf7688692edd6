//! Eventual equality on Baire space.

use super::e0::last_difference;
use super::{symmetrized, FnRelation, RelFn, Symmetrized};
use crate::error::{Error, Result};
use crate::seq::EPSeq;
use crate::tri::{Fuel, Tri};

/// `x(0) ≠ y(0)` and `x(i) = y(i)` for all `i > max(x(0), y(0))`.
/// Already symmetric and irreflexive.
pub fn e0n_adjacent(x: &EPSeq, y: &EPSeq) -> bool {
    let (a, b) = (x.at(0), y.at(0));
    if a == b {
        return false;
    }
    let from = a.max(b) as usize + 1;
    x.shift(from) == y.shift(from)
}

/// `z(0) = k`, `z(i) = x(i)` for `i > 0`, with `k` the least number above
/// `x(0)` and `y(0)` past which `x` and `y` agree.
pub fn e0n_witness(x: &EPSeq, y: &EPSeq) -> Result<EPSeq> {
    if x == y || !x.eventually_equal(y) {
        return Err(Error::domain(
            "witness needs distinct eventually equal sequences",
        ));
    }
    let last = last_difference(x, y).expect("distinct sequences differ somewhere") as u64;
    let k = (x.at(0) + 1).max(y.at(0) + 1).max(last);
    Ok(x.shift(1).prepend(&[k]))
}

pub type E0N = Symmetrized<FnRelation<EPSeq, RelFn<EPSeq>>>;

fn e0n_tri(x: &EPSeq, y: &EPSeq, _fuel: Fuel) -> Tri {
    Tri::from_bool(e0n_adjacent(x, y))
}

pub fn e0n_graph() -> E0N {
    symmetrized("e0n", FnRelation::new(e0n_tri as RelFn<EPSeq>), Some(2))
}
