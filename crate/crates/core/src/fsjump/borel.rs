//! The jump graph built from the countable product graph: sequences are
//! adjacent when they enumerate the same set of points or are adjacent in
//! the product.

use std::collections::BTreeMap;

use super::jump::jump_equiv;
use super::space::FinSpace;
use crate::error::{Error, Result};
use crate::graphings::{seq_product_adjacent, Graphing};
use crate::seq::EPSeq;
use crate::tri::{Fuel, Tri};

/// Product graph step: distinct, and every coordinate equal or adjacent.
pub fn product_adjacent_seq(space: &FinSpace, xs: &EPSeq, ys: &EPSeq) -> bool {
    seq_product_adjacent(std::slice::from_ref(space), xs, ys, Fuel::default()).is_verified()
}

pub fn borel_jump_adjacent(space: &FinSpace, xs: &EPSeq, ys: &EPSeq) -> bool {
    xs != ys && (xs.values() == ys.values() || product_adjacent_seq(space, xs, ys))
}

fn first_in_block(space: &FinSpace, xs: &EPSeq) -> BTreeMap<usize, u64> {
    let mut m = BTreeMap::new();
    for i in 0..xs.prefix().len() + xs.period().len() {
        m.entry(space.block_of(xs.at(i))).or_insert(xs.at(i));
    }
    m
}

/// The interleavings `x̃ = (x_n, x_{j_n})_n` and `ỹ = (y_{i_n}, y_n)_n` with
/// `x_n E y_{i_n}` and `x_{j_n} E y_n`, choosing least indices. They
/// enumerate the same points as `xs` and `ys` and are coordinatewise
/// equivalent.
pub fn borel_tilde(space: &FinSpace, xs: &EPSeq, ys: &EPSeq) -> Result<(EPSeq, EPSeq)> {
    space.check_seq(xs)?;
    space.check_seq(ys)?;
    if !jump_equiv(space, xs, ys) {
        return Err(Error::domain("the sequences meet different sets of blocks"));
    }
    let (fx, fy) = (first_in_block(space, xs), first_in_block(space, ys));
    let (start, p) = xs.joint_window(ys);
    let xt = EPSeq::from_fn(2 * start, 2 * p, |i| {
        if i % 2 == 0 {
            xs.at(i / 2)
        } else {
            fx[&space.block_of(ys.at(i / 2))]
        }
    });
    let yt = EPSeq::from_fn(2 * start, 2 * p, |i| {
        if i % 2 == 0 {
            fy[&space.block_of(xs.at(i / 2))]
        } else {
            ys.at(i / 2)
        }
    });
    Ok((xt, yt))
}

/// First step of a shortest path from `a` to `b`, least id first.
fn next_hop(space: &FinSpace, a: u64, b: u64) -> u64 {
    match space.dist(a, b) {
        Some(0) => a,
        Some(d) => *space
            .neighbors(a)
            .iter()
            .find(|&&u| space.dist(u, b) == Some(d - 1))
            .expect("a neighbour one step closer"),
        None => panic!("{a} and {b} lie in different blocks"),
    }
}

/// Product path between coordinatewise equivalent sequences, moving every
/// coordinate one step at a time; listed without `from`.
pub fn product_path(space: &FinSpace, from: &EPSeq, to: &EPSeq) -> Result<Vec<EPSeq>> {
    let (start, p) = from.joint_window(to);
    if (0..start + p).any(|i| space.block_of(from.at(i)) != space.block_of(to.at(i))) {
        return Err(Error::domain(
            "the sequences are not coordinatewise equivalent",
        ));
    }
    let mut path = vec![];
    let mut cur = from.clone();
    while &cur != to {
        cur = cur.zip_with(to, |a, b| next_hop(space, a, b));
        path.push(cur.clone());
    }
    Ok(path)
}

/// `xs → x̃ → … → ỹ → ys`, listed without `xs`; length at most `2 + ℓ`.
pub fn borel_jump_path(space: &FinSpace, xs: &EPSeq, ys: &EPSeq) -> Result<Vec<EPSeq>> {
    let (xt, yt) = borel_tilde(space, xs, ys)?;
    let mut path: Vec<EPSeq> = vec![];
    let hops = std::iter::once(xt.clone())
        .chain(product_path(space, &xt, &yt)?)
        .chain(std::iter::once(ys.clone()));
    for v in hops {
        if path.last().unwrap_or(xs) != &v {
            path.push(v);
        }
    }
    Ok(path)
}

#[derive(Debug, Clone)]
pub struct BorelJumpGraph {
    pub space: FinSpace,
}

impl Graphing for BorelJumpGraph {
    type Point = EPSeq;
    fn name(&self) -> &str {
        "borel-jump"
    }
    fn adjacent(&self, x: &EPSeq, y: &EPSeq, _fuel: Fuel) -> Tri {
        Tri::from_bool(borel_jump_adjacent(&self.space, x, y))
    }
    /// An upper bound, not necessarily attained.
    fn claimed_diameter(&self) -> Option<u64> {
        Some(self.space.diameter() + 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> EPSeq {
        t.parse().unwrap()
    }

    #[test]
    fn tilde_is_coordinatewise_equivalent() {
        let sp = FinSpace::from_edges(5, vec![(0, 1), (1, 2), (3, 4)]).unwrap();
        let (x, y) = (s("0;3,1"), s(";4,2,2"));
        let (xt, yt) = borel_tilde(&sp, &x, &y).unwrap();
        assert_eq!(xt.values(), x.values());
        assert_eq!(yt.values(), y.values());
        for i in 0..50 {
            assert_eq!(sp.block_of(xt.at(i)), sp.block_of(yt.at(i)), "{i}");
        }
    }

    #[test]
    fn borel_paths() {
        let sp = FinSpace::path(3).unwrap();
        for (a, b) in [(";0", ";2"), ("1;0", ";2,1"), (";0,1", ";1,0")] {
            let (x, y) = (s(a), s(b));
            let p = borel_jump_path(&sp, &x, &y).unwrap();
            assert!(p.len() as u64 <= 2 + sp.diameter());
            let mut prev = &x;
            for v in &p {
                assert!(borel_jump_adjacent(&sp, prev, v), "{prev} -> {v}");
                prev = v;
            }
            assert_eq!(prev, &y);
        }
        let d = FinSpace::discrete(2).unwrap();
        assert!(borel_jump_path(&d, &s(";0"), &s(";1")).is_err());
    }
}
