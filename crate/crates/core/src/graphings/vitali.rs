//! Rational differences on ℚ.
//!
//! The enumeration `q_1, q_2, …` of ℚ∖ℤ is pinned as follows. Positive
//! non-integers `p/q` in lowest terms (`q ≥ 2`) are listed by increasing
//! `p + q`, ties broken by increasing `p`: `1/2, 1/3, 1/4, 2/3, 3/2, …`.
//! Each is followed by its negative, so `q_{2m-1} = r_m` and `q_{2m} = -r_m`.

use num_integer::Integer;

use super::{symmetrized, FnRelation, RelFn, Symmetrized};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::tri::{Fuel, Tri};

/// `q_1, q_2, …` in the pinned order.
pub fn vitali_enum() -> impl Iterator<Item = Rational> {
    (3i64..)
        .flat_map(|s| (1..=s - 2).map(move |p| (p, s - p)))
        .filter(|&(p, q)| p.gcd(&q) == 1)
        .flat_map(|(p, q)| {
            let r = Rational::new(p, q).unwrap();
            [r, -r]
        })
}

/// 1-based position of `p/q` (positive, reduced, `q ≥ 2`) among the positive terms.
fn positive_rank(p: i64, q: i64) -> u64 {
    let s = p + q;
    let mut count = 0u64;
    for t in 3..s {
        count += (1..=t - 2).filter(|&a| a.gcd(&t) == 1).count() as u64;
    }
    count + (1..p).filter(|&a| a.gcd(&s) == 1).count() as u64 + 1
}

/// Least `n ≥ 1` with `q_n ≡ d (mod 1)`; `None` when `d` is an integer.
pub fn vitali_index(d: Rational) -> Option<u64> {
    if d.is_integer() {
        return None;
    }
    let f = d.frac();
    let (a, q) = (f.num(), f.den());
    // smallest positive representative a/q sits at 2·rank-1,
    // smallest negative one -(q-a)/q at 2·rank
    let pos = 2 * positive_rank(a, q) - 1;
    let neg = 2 * positive_rank(q - a, q);
    Some(pos.min(neg))
}

/// Raw relation: (i) `x − y ∈ ℤ∖{0}`, or (ii) `x ≤ y`, `1 ≤ y`, and some
/// `n ≤ y` has `y − x − q_n ∈ ℤ`.
pub fn vitali_relation(x: Rational, y: Rational) -> bool {
    let d = y - x;
    if d.is_integer() {
        return d != Rational::integer(0);
    }
    if x > y || y < Rational::integer(1) {
        return false;
    }
    let n = vitali_index(d).expect("non-integer difference");
    (n as i128) <= y.floor() as i128
}

pub fn vitali_adjacent(x: Rational, y: Rational) -> bool {
    x != y && (vitali_relation(x, y) || vitali_relation(y, x))
}

/// `max(x, y) + k` for the least `k ≥ 1` making clause (ii) reach the
/// index of `y − x`.
pub fn vitali_witness(x: Rational, y: Rational) -> Result<Rational> {
    if x == y {
        return Err(Error::domain("witness needs distinct points"));
    }
    let (lo, hi) = if x < y { (x, y) } else { (y, x) };
    let need = vitali_index(hi - lo).unwrap_or(1).max(1) as i64;
    let mut k = 1i64;
    while hi + Rational::integer(k) < Rational::integer(need) {
        k = (need - hi.floor()).max(k + 1);
    }
    Ok(hi + Rational::integer(k))
}

pub type Vitali = Symmetrized<FnRelation<Rational, RelFn<Rational>>>;

fn vitali_tri(x: &Rational, y: &Rational, _fuel: Fuel) -> Tri {
    Tri::from_bool(vitali_relation(*x, *y))
}

pub fn vitali_graph() -> Vitali {
    symmetrized(
        "vitali",
        FnRelation::new(vitali_tri as RelFn<Rational>),
        Some(2),
    )
}
