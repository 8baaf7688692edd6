//! Diameter-3 graph for an equivalence relation given by a ternary
//! predicate `R`: `n E m` iff some `k` has `R(n, m, k)`.
//!
//! Vertices are naturals and triples. The only edges join `a` and
//! `(n, m, k)` when `a ∈ {n, m}` and `R(n, m, k)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Graphing;
use crate::error::{Error, Result};
use crate::tri::{Fuel, Tri};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UVertex {
    Nat(u64),
    Triple(u64, u64, u64),
}

impl fmt::Display for UVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UVertex::Nat(a) => write!(f, "{a}"),
            UVertex::Triple(n, m, k) => write!(f, "({n},{m},{k})"),
        }
    }
}

impl FromStr for UVertex {
    type Err = Error;
    /// `7` or `(3,5,0)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let num = |x: &str| {
            x.trim()
                .parse::<u64>()
                .map_err(|_| Error::parse(x, "expected a natural number"))
        };
        match t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            Some(inner) => {
                let parts: Vec<&str> = inner.split(',').collect();
                if parts.len() != 3 {
                    return Err(Error::parse(s, "a triple needs three entries"));
                }
                Ok(UVertex::Triple(
                    num(parts[0])?,
                    num(parts[1])?,
                    num(parts[2])?,
                ))
            }
            None => Ok(UVertex::Nat(num(t)?)),
        }
    }
}

pub fn universal_adjacent(v: &UVertex, w: &UVertex, r: impl Fn(u64, u64, u64) -> bool) -> bool {
    match (*v, *w) {
        (UVertex::Nat(a), UVertex::Triple(n, m, k))
        | (UVertex::Triple(n, m, k), UVertex::Nat(a)) => (a == n || a == m) && r(n, m, k),
        _ => false,
    }
}

/// `n, (n, m, k), m` for the least `k < bound` with `R(n, m, k)`.
pub fn universal_path(
    n: u64,
    m: u64,
    r: impl Fn(u64, u64, u64) -> bool,
    bound: u64,
) -> Option<Vec<UVertex>> {
    (0..bound)
        .find(|&k| r(n, m, k))
        .map(|k| vec![UVertex::Nat(n), UVertex::Triple(n, m, k), UVertex::Nat(m)])
}

/// The graph for a fixed predicate.
pub struct Universal<F> {
    pub name: String,
    r: F,
}

impl<F: Fn(u64, u64, u64) -> bool> Universal<F> {
    pub fn new(name: &str, r: F) -> Self {
        Universal {
            name: name.to_string(),
            r,
        }
    }

    pub fn predicate(&self, n: u64, m: u64, k: u64) -> bool {
        (self.r)(n, m, k)
    }
}

impl<F: Fn(u64, u64, u64) -> bool> Graphing for Universal<F> {
    type Point = UVertex;

    fn name(&self) -> &str {
        &self.name
    }

    fn adjacent(&self, x: &UVertex, y: &UVertex, _fuel: Fuel) -> Tri {
        Tri::from_bool(universal_adjacent(x, y, &self.r))
    }

    fn claimed_diameter(&self) -> Option<u64> {
        Some(3)
    }
}
