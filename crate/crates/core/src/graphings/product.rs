//! Products of graphings: coordinates may stay put or move along an edge.

use std::fmt;
use std::str::FromStr;

use super::Graphing;
use crate::error::{Error, Result};
use crate::seq::EPSeq;
use crate::tri::{Fuel, Tri};

fn coord<G: Graphing>(g: &G, a: &G::Point, b: &G::Point, fuel: Fuel) -> Tri {
    if a == b {
        Tri::Verified
    } else {
        g.adjacent(a, b, fuel)
    }
}

/// `(x,y) ~ (x',y')` iff the pairs differ and each coordinate is equal or adjacent.
pub fn product_adjacent<G1: Graphing, G2: Graphing>(
    g1: &G1,
    g2: &G2,
    p: &(G1::Point, G2::Point),
    q: &(G1::Point, G2::Point),
    fuel: Fuel,
) -> Tri {
    if p == q {
        return Tri::Refuted;
    }
    let first = coord(g1, &p.0, &q.0, fuel);
    if first.is_refuted() {
        return first;
    }
    first.and(coord(g2, &p.1, &q.1, fuel))
}

/// Countable product over eventually periodic sequences, coordinate `i`
/// using `gs[min(i, gs.len() - 1)]`.
pub fn seq_product_adjacent<G: Graphing<Point = u64>>(
    gs: &[G],
    xs: &EPSeq,
    ys: &EPSeq,
    fuel: Fuel,
) -> Tri {
    assert!(!gs.is_empty(), "need at least one coordinate graph");
    if xs == ys {
        return Tri::Refuted;
    }
    let (start, p) = xs.joint_window(ys);
    let end = start.max(gs.len() - 1) + p;
    let mut acc = Tri::Verified;
    for i in 0..end {
        let g = &gs[i.min(gs.len() - 1)];
        acc = acc.and(coord(g, &xs.at(i), &ys.at(i), fuel));
        if acc.is_refuted() {
            break;
        }
    }
    acc
}

/// A pair of points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairPoint<A, B>(pub A, pub B);

impl<A: fmt::Display, B: fmt::Display> fmt::Display for PairPoint<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} | {})", self.0, self.1)
    }
}

impl<A: FromStr<Err = Error>, B: FromStr<Err = Error>> FromStr for PairPoint<A, B> {
    type Err = Error;
    /// `"(x | y)"`, as printed.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (a, b) = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|r| r.split_once('|'))
            .ok_or_else(|| Error::parse(t, "expected `(x | y)`"))?;
        Ok(PairPoint(a.trim().parse()?, b.trim().parse()?))
    }
}

pub struct Product<G1, G2> {
    pub name: String,
    pub left: G1,
    pub right: G2,
}

impl<G1: Graphing, G2: Graphing> Product<G1, G2> {
    pub fn new(left: G1, right: G2) -> Self {
        let name = format!("{}x{}", left.name(), right.name());
        Product { name, left, right }
    }
}

impl<G1: Graphing, G2: Graphing> Graphing for Product<G1, G2> {
    type Point = PairPoint<G1::Point, G2::Point>;

    fn name(&self) -> &str {
        &self.name
    }

    fn adjacent(&self, x: &Self::Point, y: &Self::Point, fuel: Fuel) -> Tri {
        product_adjacent(
            &self.left,
            &self.right,
            &(x.0.clone(), x.1.clone()),
            &(y.0.clone(), y.1.clone()),
            fuel,
        )
    }

    fn claimed_diameter(&self) -> Option<u64> {
        Some(
            self.left
                .claimed_diameter()?
                .max(self.right.claimed_diameter()?),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphings::{e0_graph, symmetrized, FnRelation, RelFn};

    fn s(t: &str) -> EPSeq {
        t.parse().unwrap()
    }

    fn two_point(x: &u64, y: &u64, _f: Fuel) -> Tri {
        Tri::from_bool(*x < 2 && *y < 2 && x != y)
    }

    #[test]
    fn diagonal_and_single_move() {
        let f = Fuel::default();
        let (g1, g2) = (e0_graph(), e0_graph());
        let x = s("1,1;0");
        let (y, y2) = (s("1,1;0"), s("0,1;0"));
        assert_eq!(
            product_adjacent(
                &g1,
                &g2,
                &(x.clone(), y.clone()),
                &(x.clone(), y.clone()),
                f
            ),
            Tri::Refuted
        );
        assert_eq!(
            product_adjacent(&g1, &g2, &(x.clone(), y), &(x, y2), f),
            Tri::Verified
        );
    }

    #[test]
    fn countable_product() {
        let f = Fuel::default();
        let g = symmetrized("k2", FnRelation::new(two_point as RelFn<u64>), Some(1));
        let xs = s("0,1;0,1");
        let ys = s("0,1;1,1");
        assert_eq!(
            seq_product_adjacent(std::slice::from_ref(&g), &xs, &ys, f),
            Tri::Verified
        );
        let zs = s("0,2;0,1");
        assert_eq!(seq_product_adjacent(&[g], &xs, &zs, f), Tri::Refuted);
    }

    #[test]
    fn pair_text_round_trip() {
        let p = PairPoint(s("1;0"), s(";0,1"));
        let q: PairPoint<EPSeq, EPSeq> = p.to_string().parse().unwrap();
        assert_eq!(p, q);
        assert!("1;0 | ;0".parse::<PairPoint<EPSeq, EPSeq>>().is_err());
    }
}
