//! Concrete graphings and their witness constructions.
//!
//! A raw relation `R` becomes a graph by [`Symmetrized`]: `x ~ y` iff
//! `x ≠ y` and `R(x,y) ∨ R(y,x)`.

pub mod e0;
pub mod e0n;
pub mod product;
pub mod reductions;
pub mod turing;
pub mod universal;
pub mod vitali;

use std::fmt::{Debug, Display};
use std::marker::PhantomData;

use crate::tri::{Fuel, Tri};

pub use e0::{e0_adjacent, e0_equivalent, e0_graph, e0_relation, e0_witness, E0};
pub use e0n::{e0n_adjacent, e0n_graph, e0n_witness, E0N};
pub use product::{product_adjacent, seq_product_adjacent, PairPoint, Product};
pub use reductions::{
    change_point, mequiv_adjacent, mequiv_check, mequiv_graph, mequiv_witness, oneequiv_adjacent,
    oneequiv_check, oneequiv_graph, oneequiv_witness, MEquiv, OneEquiv, ReductionWitness,
};
pub use turing::{sigma, turing_adjacent, turing_graph, turing_relation, turing_witness, Turing};
pub use universal::{universal_adjacent, universal_path, UVertex, Universal};
pub use vitali::{
    vitali_adjacent, vitali_enum, vitali_graph, vitali_index, vitali_relation, vitali_witness,
    Vitali,
};

/// Plain function pointer form of a relation.
pub type RelFn<P> = fn(&P, &P, Fuel) -> Tri;

/// A possibly non-symmetric relation evaluated with a fuel bound.
pub trait Relation {
    type Point: Clone + PartialEq + Debug + Display;
    fn relate(&self, x: &Self::Point, y: &Self::Point, fuel: Fuel) -> Tri;
}

/// An undirected graph on points.
pub trait Graphing {
    type Point: Clone + PartialEq + Debug + Display;
    fn name(&self) -> &str;
    fn adjacent(&self, x: &Self::Point, y: &Self::Point, fuel: Fuel) -> Tri;
    /// `None` for infinite or unknown diameter.
    fn claimed_diameter(&self) -> Option<u64>;
}

/// Symmetrize a relation and remove the diagonal.
#[derive(Debug, Clone)]
pub struct Symmetrized<R> {
    pub name: String,
    pub relation: R,
    pub diameter: Option<u64>,
}

pub fn symmetrized<R: Relation>(name: &str, relation: R, diameter: Option<u64>) -> Symmetrized<R> {
    Symmetrized {
        name: name.to_string(),
        relation,
        diameter,
    }
}

impl<R: Relation> Graphing for Symmetrized<R> {
    type Point = R::Point;

    fn name(&self) -> &str {
        &self.name
    }

    fn adjacent(&self, x: &R::Point, y: &R::Point, fuel: Fuel) -> Tri {
        if x == y {
            return Tri::Refuted;
        }
        let forward = self.relation.relate(x, y, fuel);
        if forward.is_verified() {
            return forward;
        }
        forward.or(self.relation.relate(y, x, fuel))
    }

    fn claimed_diameter(&self) -> Option<u64> {
        self.diameter
    }
}

/// A relation given by a closure.
#[derive(Clone)]
pub struct FnRelation<P, F> {
    f: F,
    _p: PhantomData<fn(&P)>,
}

impl<P, F> FnRelation<P, F>
where
    F: Fn(&P, &P, Fuel) -> Tri,
{
    pub fn new(f: F) -> Self {
        FnRelation { f, _p: PhantomData }
    }
}

impl<P, F> Relation for FnRelation<P, F>
where
    P: Clone + PartialEq + Debug + Display,
    F: Fn(&P, &P, Fuel) -> Tri,
{
    type Point = P;
    fn relate(&self, x: &P, y: &P, fuel: Fuel) -> Tri {
        (self.f)(x, y, fuel)
    }
}

/// A graph given directly by a closure, without symmetrization. Used for
/// negative controls in the harness.
pub struct RawGraph<P, F> {
    pub name: String,
    f: F,
    diameter: Option<u64>,
    _p: PhantomData<fn(&P)>,
}

impl<P, F> RawGraph<P, F>
where
    F: Fn(&P, &P, Fuel) -> Tri,
{
    pub fn new(name: &str, diameter: Option<u64>, f: F) -> Self {
        RawGraph {
            name: name.to_string(),
            f,
            diameter,
            _p: PhantomData,
        }
    }
}

impl<P, F> Graphing for RawGraph<P, F>
where
    P: Clone + PartialEq + Debug + Display,
    F: Fn(&P, &P, Fuel) -> Tri,
{
    type Point = P;
    fn name(&self) -> &str {
        &self.name
    }
    fn adjacent(&self, x: &P, y: &P, fuel: Fuel) -> Tri {
        (self.f)(x, y, fuel)
    }
    fn claimed_diameter(&self) -> Option<u64> {
        self.diameter
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fuel() -> Fuel {
        Fuel::default()
    }

    fn graph(t: Tri, back: Tri) -> impl Graphing<Point = u64> {
        symmetrized(
            "t",
            FnRelation::new(move |x: &u64, y: &u64, _| if x < y { t } else { back }),
            None,
        )
    }

    #[test]
    fn diagonal_removed() {
        let g = graph(Tri::Verified, Tri::Verified);
        assert_eq!(g.adjacent(&3, &3, fuel()), Tri::Refuted);
    }

    #[test]
    fn one_direction_suffices() {
        let g = graph(Tri::Verified, Tri::Refuted);
        assert_eq!(g.adjacent(&1, &2, fuel()), Tri::Verified);
        assert_eq!(g.adjacent(&2, &1, fuel()), Tri::Verified);
    }

    #[test]
    fn unknown_propagates() {
        let u = Tri::Unknown { fuel: fuel() };
        let g = graph(u, u);
        assert!(g.adjacent(&1, &2, fuel()).is_unknown());
        let g = graph(u, Tri::Refuted);
        assert!(g.adjacent(&2, &1, fuel()).is_unknown());
    }
}
