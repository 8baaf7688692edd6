//! The graph `H` on point sequences and the path construction built from
//! the rearrangement step and the midpoint step.

use std::collections::BTreeMap;

use super::descent::{arrange_descents, pair_distinct_form, Descents};
use super::space::{fmt_dist, FinSpace};
use crate::error::{Error, Result};
use crate::graphings::Graphing;
use crate::seq::EPSeq;
use crate::tri::{Fuel, Tri};

/// Index of the first occurrence of every value.
fn first_index(xs: &EPSeq) -> BTreeMap<u64, usize> {
    let mut m = BTreeMap::new();
    for i in 0..xs.prefix().len() + xs.period().len() {
        m.entry(xs.at(i)).or_insert(i);
    }
    m
}

/// Least `j` with `d(v, s_j) ≤ 1`, given the first-occurrence map of `s`.
fn near_first(space: &FinSpace, v: u64, first: &BTreeMap<u64, usize>) -> Option<usize> {
    std::iter::once(v)
        .chain(space.neighbors(v).iter().copied())
        .filter_map(|u| first.get(&u).copied())
        .min()
}

/// Clause (H1): `d(x_i, z_i) ≤ 1` for every `i`.
pub fn h1(space: &FinSpace, xs: &EPSeq, zs: &EPSeq) -> bool {
    let (start, p) = xs.joint_window(zs);
    (0..start + p).all(|i| space.dist(xs.at(i), zs.at(i)).is_some_and(|d| d <= 1))
}

/// Clause (H2) with its `∀n` cut off at `bound`.
pub fn h2_upto(space: &FinSpace, xs: &EPSeq, zs: &EPSeq, bound: usize) -> bool {
    let desc = Descents::of(zs);
    if !desc.infinite() {
        return false;
    }
    let (fx, fz) = (first_index(xs), first_index(zs));
    (0..bound).all(|n| {
        let g = desc.nth(n).expect("infinitely many descents");
        let a = near_first(space, xs.at(n), &fz);
        let b = near_first(space, zs.at(n), &fx);
        a.is_some_and(|j| j <= g) && b.is_some_and(|j| j <= g)
    })
}

/// Cut-off at which (H2) is decided exactly.
///
/// The least witnesses `j_0`, `j_1` for `n` depend only on the values
/// `x_n` and `z_n`, and every first occurrence lies below the end of the
/// joint window. Every value appears below that end too, and `g(z, n) ≥ n`,
/// so indices at or past the end add nothing new.
pub fn h2_bound(xs: &EPSeq, zs: &EPSeq) -> usize {
    let (start, p) = xs.joint_window(zs);
    start + p
}

pub fn h2(space: &FinSpace, xs: &EPSeq, zs: &EPSeq) -> bool {
    h2_upto(space, xs, zs, h2_bound(xs, zs))
}

/// The relation `H(xs, zs)`: (H1) or (H2). Reflexive and not symmetric.
pub fn h_adjacent(space: &FinSpace, xs: &EPSeq, zs: &EPSeq) -> bool {
    h1(space, xs, zs) || h2(space, xs, zs)
}

/// The graph: distinct sequences related by `H` in either direction.
pub fn h_edge(space: &FinSpace, xs: &EPSeq, zs: &EPSeq) -> bool {
    xs != zs && (h_adjacent(space, xs, zs) || h_adjacent(space, zs, xs))
}

/// Same set of blocks met.
pub fn jump_equiv(space: &FinSpace, xs: &EPSeq, ys: &EPSeq) -> bool {
    space.blocks_met(xs) == space.blocks_met(ys)
}

/// Output of the rearrangement step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim1 {
    /// Pair distinct sequence with the same values as the input.
    pub w: EPSeq,
    /// `f(0..=m)`; `f(n) = f(m) + (n − m)` after that. Empty when the input
    /// was constant and is returned unchanged.
    pub f_head: Vec<usize>,
    pub z: EPSeq,
}

impl Claim1 {
    pub fn f(&self, n: usize) -> Option<usize> {
        let m = self.f_head.len().checked_sub(1)?;
        Some(
            self.f_head
                .get(n)
                .copied()
                .unwrap_or(self.f_head[m] + n - m),
        )
    }
}

fn within_one(space: &FinSpace, a: &EPSeq, b: &EPSeq, what: &str) -> Result<()> {
    match space.dist_seq_seq(a, b) {
        Some(d) if d <= 1 => Ok(()),
        d => Err(Error::domain(format!(
            "{what} must be within distance 1 of ws, got {}",
            fmt_dist(d)
        ))),
    }
}

/// Least `c(n)` such that the required witnesses for `n` exist below it.
/// Besides `x_n`, `y_n` and `w_n` it covers the pair partner `w_{n^1}`,
/// since `z_n` may be either element of its pair.
struct Claim1Bound<'a> {
    space: &'a FinSpace,
    seqs: [&'a EPSeq; 3],
    firsts: [BTreeMap<u64, usize>; 3],
}

impl Claim1Bound<'_> {
    fn need(&self, v: u64, which: usize) -> usize {
        near_first(self.space, v, &self.firsts[which]).expect("checked distance")
    }

    fn at(&self, n: usize) -> usize {
        let [xs, ys, w] = self.seqs;
        let mut c = self.need(xs.at(n), 2).max(self.need(ys.at(n), 2));
        for m in [n, n ^ 1] {
            c = c.max(self.need(w.at(m), 0)).max(self.need(w.at(m), 1));
        }
        c + 1
    }
}

pub fn claim1_construct(space: &FinSpace, xs: &EPSeq, ys: &EPSeq, ws: &EPSeq) -> Result<Claim1> {
    for s in [xs, ys, ws] {
        space.check_seq(s)?;
    }
    within_one(space, xs, ws, "xs")?;
    within_one(space, ys, ws, "ys")?;
    if ws.is_constant() {
        return Ok(Claim1 {
            w: ws.clone(),
            f_head: vec![],
            z: ws.clone(),
        });
    }
    let w = pair_distinct_form(ws);
    let (s1, p1) = xs.joint_window(ys);
    let end = s1.max(w.prefix().len()) + num_integer::lcm(p1, w.period().len());
    let bound = Claim1Bound {
        space,
        seqs: [xs, ys, &w],
        firsts: [first_index(xs), first_index(ys), first_index(&w)],
    };
    let k = (0..end).map(|n| bound.at(n)).max().unwrap_or(1);
    let mut f_head: Vec<usize> = Vec::with_capacity(k + 1);
    for n in 0..=k {
        let c = bound.at(n);
        let f = f_head.last().map_or(c, |&prev| c.max(prev + 1));
        f_head.push(f);
    }
    let z = arrange_descents(&w, &f_head);
    let out = Claim1 { w, f_head, z };
    if out.z.values() != ws.values()
        || !h_adjacent(space, xs, &out.z)
        || !h_adjacent(space, ys, &out.z)
    {
        return Err(Error::domain("rearrangement failed its postcondition"));
    }
    Ok(out)
}

/// A rearrangement `z` of `ws` with `H(xs, z)` and `H(ys, z)`.
pub fn claim1_rearrange(space: &FinSpace, xs: &EPSeq, ys: &EPSeq, ws: &EPSeq) -> Result<EPSeq> {
    Ok(claim1_construct(space, xs, ys, ws)?.z)
}

/// For `d(xs, ys) = k + 1 ≥ 2`, a sequence `w` with `d(xs, w) = 1` and
/// `d(ys, w) = k`. Ties go to the least id.
pub fn claim2_midpoint(space: &FinSpace, xs: &EPSeq, ys: &EPSeq) -> Result<EPSeq> {
    space.check_seq(xs)?;
    space.check_seq(ys)?;
    let k = match space.dist_seq_seq(xs, ys) {
        Some(d) if d >= 2 => d - 1,
        d => {
            return Err(Error::domain(format!(
                "midpoint needs a finite distance of at least 2, got {}",
                fmt_dist(d)
            )))
        }
    };
    let (xv, yv) = (xs.values(), ys.values());
    let within = |d: Option<u64>, r: u64| d.is_some_and(|d| d <= r);
    let even = |x: u64| -> u64 {
        if within(space.dist_pt_set(x, &yv), k) {
            return x;
        }
        *space
            .neighbors(x)
            .iter()
            .find(|&&u| space.dist_pt_set(u, &yv) == Some(k))
            .expect("a neighbour one step closer")
    };
    let odd = |y: u64| -> u64 {
        if let Some(&x) = xv.iter().find(|&&x| within(space.dist(y, x), k)) {
            return x;
        }
        xv.iter()
            .filter(|&&x| space.dist(y, x) == Some(k + 1))
            .find_map(|&x| {
                space
                    .neighbors(x)
                    .iter()
                    .copied()
                    .find(|&u| space.dist(u, y) == Some(k))
            })
            .expect("a point of xs at distance k+1 with a neighbour one step closer")
    };
    let (start, p) = xs.joint_window(ys);
    let w = EPSeq::from_fn(2 * start, 2 * p, |i| {
        if i % 2 == 0 {
            even(xs.at(i / 2))
        } else {
            odd(ys.at(i / 2))
        }
    });
    if space.dist_seq_seq(xs, &w) != Some(1) || space.dist_seq_seq(ys, &w) != Some(k) {
        return Err(Error::domain("midpoint failed its postcondition"));
    }
    Ok(w)
}

fn push_hop(path: &mut Vec<EPSeq>, from: &EPSeq, v: EPSeq) {
    if path.last().unwrap_or(from) != &v {
        path.push(v);
    }
}

/// A path in the `H` graph from `xs` to `ys`, listed without `xs`; its
/// length is at most `max(2, ℓ)`.
pub fn jump_path(space: &FinSpace, xs: &EPSeq, ys: &EPSeq) -> Result<Vec<EPSeq>> {
    space.check_seq(xs)?;
    space.check_seq(ys)?;
    if !jump_equiv(space, xs, ys) {
        return Err(Error::domain("the sequences meet different sets of blocks"));
    }
    let mut path = vec![];
    if xs == ys {
        return Ok(path);
    }
    let mut cur = xs.clone();
    loop {
        let d = space.dist_seq_seq(&cur, ys).expect("equivalent sequences");
        if d <= 1 {
            push_hop(&mut path, xs, claim1_rearrange(space, &cur, ys, &cur)?);
            break;
        }
        let w = claim2_midpoint(space, &cur, ys)?;
        if d == 2 {
            push_hop(&mut path, xs, claim1_rearrange(space, &cur, ys, &w)?);
            break;
        }
        let z = claim1_rearrange(space, &cur, &cur, &w)?;
        push_hop(&mut path, xs, z.clone());
        cur = z;
    }
    push_hop(&mut path, xs, ys.clone());
    Ok(path)
}

/// The `H` graph as a graphing of the jump.
#[derive(Debug, Clone)]
pub struct JumpGraph {
    pub space: FinSpace,
}

impl Graphing for JumpGraph {
    type Point = EPSeq;
    fn name(&self) -> &str {
        "jump"
    }
    fn adjacent(&self, x: &EPSeq, y: &EPSeq, _fuel: Fuel) -> Tri {
        Tri::from_bool(h_edge(&self.space, x, y))
    }
    fn claimed_diameter(&self) -> Option<u64> {
        Some(self.space.diameter().max(2))
    }
}
