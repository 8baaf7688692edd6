//! Relational structures on ℕ given by a trivial default formula plus
//! finitely many exceptions per symbol.
//!
//! JSON form:
//! `{"arities": [1, 2], "relations": [{"default": "bot", "exceptions": [[0]]}, …]}`.

pub mod ciso;
pub mod formula;
pub mod relational;
pub mod shuffle;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::machines::SwapList;

pub use ciso::{
    biembed_adjacent, biembed_graph, biembed_witness, ciso_adjacent, ciso_graph, ciso_witness,
    embed_check, exception_iso, iso_check, CisoWitness, WitnessCase,
};
pub use formula::TrivialFormula;
pub use relational::{relationalize, FinFunc, FuncDefault, FuncStruct};
pub use shuffle::{
    all_shuffles, has_bad_coding, is_coding, q_change_point, q_find, shuffle_eval,
    struct_bad_coding, synthesize_trivial, QWitness, ShuffleSeq,
};

/// One relation: `default` flipped on the `exceptions`.
#[derive(Debug, Clone)]
pub struct FinRel {
    arity: usize,
    default: TrivialFormula,
    exceptions: BTreeSet<Vec<u64>>,
}

impl FinRel {
    pub fn new(arity: usize, default: TrivialFormula, exceptions: Vec<Vec<u64>>) -> Result<Self> {
        if arity == 0 {
            return Err(Error::repr("relation arity must be at least 1"));
        }
        default.check_arity(arity)?;
        let mut set = BTreeSet::new();
        for t in exceptions {
            if t.len() != arity {
                return Err(Error::repr(format!(
                    "exception {t:?} has length {} but the arity is {arity}",
                    t.len()
                )));
            }
            if !set.insert(t.clone()) {
                return Err(Error::repr(format!("duplicate exception {t:?}")));
            }
        }
        Ok(FinRel {
            arity,
            default,
            exceptions: set,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn default_formula(&self) -> &TrivialFormula {
        &self.default
    }

    pub fn exceptions(&self) -> &BTreeSet<Vec<u64>> {
        &self.exceptions
    }

    pub fn eval(&self, t: &[u64]) -> bool {
        self.default.eval(t) != self.exceptions.contains(t)
    }

    /// Largest number that is not interchangeable with fresh numbers.
    pub fn max_entry(&self) -> u64 {
        let e = self.exceptions.iter().flatten().copied().max().unwrap_or(0);
        let c = self.default.constants().into_iter().max().unwrap_or(0);
        e.max(c)
    }

    /// Defaults agree everywhere. Checked on one tuple per equality type,
    /// also distinguishing the designated constants.
    pub fn same_default(&self, other: &FinRel) -> bool {
        if self.arity != other.arity {
            return false;
        }
        let consts: BTreeSet<u64> = self
            .default
            .constants()
            .into_iter()
            .chain(other.default.constants())
            .collect();
        let fresh = consts.iter().max().map_or(0, |c| c + 1);
        let domain: Vec<u64> = consts
            .iter()
            .copied()
            .chain(fresh..fresh + self.arity as u64)
            .collect();
        let agree =
            tuples(&domain, self.arity).all(|t| self.default.eval(&t) == other.default.eval(&t));
        agree
    }

    /// Relabel through a bijection; exceptions move with it.
    pub fn map(&self, f: impl Fn(u64) -> u64) -> FinRel {
        FinRel {
            arity: self.arity,
            default: self.default.clone(),
            exceptions: self
                .exceptions
                .iter()
                .map(|t| t.iter().map(|&v| f(v)).collect())
                .collect(),
        }
    }
}

impl PartialEq for FinRel {
    fn eq(&self, other: &Self) -> bool {
        self.same_default(other) && self.exceptions == other.exceptions
    }
}

impl Eq for FinRel {}

/// All tuples of the given length over `domain`, in lexicographic order.
pub fn tuples(domain: &[u64], len: usize) -> impl Iterator<Item = Vec<u64>> + '_ {
    let total = domain.len().checked_pow(len as u32).unwrap_or(usize::MAX);
    let d = domain.len().max(1);
    (0..total).map(move |mut r| {
        let mut t = vec![0; len];
        for slot in t.iter_mut().rev() {
            *slot = domain[r % d];
            r /= d;
        }
        t
    })
}

/// One relation per symbol of a finite relational language.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "StructFile", into = "StructFile")]
pub struct LStruct {
    rels: Vec<FinRel>,
}

#[derive(Serialize, Deserialize)]
struct RelFile {
    default: String,
    #[serde(default)]
    exceptions: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct StructFile {
    arities: Vec<usize>,
    relations: Vec<RelFile>,
}

impl TryFrom<StructFile> for LStruct {
    type Error = Error;
    fn try_from(f: StructFile) -> Result<Self> {
        if f.arities.len() != f.relations.len() {
            return Err(Error::repr(format!(
                "{} arities but {} relations",
                f.arities.len(),
                f.relations.len()
            )));
        }
        let rels = f
            .arities
            .into_iter()
            .zip(f.relations)
            .map(|(a, r)| FinRel::new(a, r.default.parse()?, r.exceptions))
            .collect::<Result<Vec<_>>>()?;
        Ok(LStruct { rels })
    }
}

impl From<LStruct> for StructFile {
    fn from(s: LStruct) -> Self {
        StructFile {
            arities: s.arities(),
            relations: s
                .rels
                .into_iter()
                .map(|r| RelFile {
                    default: r.default.to_string(),
                    exceptions: r.exceptions.into_iter().collect(),
                })
                .collect(),
        }
    }
}

impl LStruct {
    pub fn new(rels: Vec<FinRel>) -> Self {
        LStruct { rels }
    }

    pub fn arities(&self) -> Vec<usize> {
        self.rels.iter().map(FinRel::arity).collect()
    }

    pub fn rels(&self) -> &[FinRel] {
        &self.rels
    }

    pub fn rel(&self, i: usize) -> Result<&FinRel> {
        self.rels
            .get(i)
            .ok_or_else(|| Error::domain(format!("no relation symbol {i}")))
    }

    /// `x ⊨ R_i(t)`.
    pub fn eval(&self, i: usize, t: &[u64]) -> Result<bool> {
        let r = self.rel(i)?;
        if t.len() != r.arity {
            return Err(Error::domain(format!(
                "R{i} has arity {} but got {} arguments",
                r.arity,
                t.len()
            )));
        }
        Ok(r.eval(t))
    }

    /// Numbers that occur in exceptions or as designated constants.
    pub fn support(&self) -> BTreeSet<u64> {
        let mut s: BTreeSet<u64> = self
            .rels
            .iter()
            .flat_map(|r| r.exceptions.iter().flatten().copied())
            .collect();
        s.extend(self.constants());
        s
    }

    pub fn constants(&self) -> BTreeSet<u64> {
        self.rels
            .iter()
            .flat_map(|r| r.default.constants())
            .collect()
    }

    pub fn map(&self, f: impl Fn(u64) -> u64) -> LStruct {
        LStruct {
            rels: self.rels.iter().map(|r| r.map(&f)).collect(),
        }
    }
}

/// `f_* x` for the permutation `f` induced by `s`: `R^{f_*x}(f(t)) = R^x(t)`.
pub fn pushforward(x: &LStruct, s: &SwapList) -> Result<LStruct> {
    if let Some(c) = x.constants().into_iter().find(|&c| s.apply(c) != c) {
        return Err(Error::domain(format!(
            "the swapping moves the designated constant {c}"
        )));
    }
    Ok(x.map(|v| s.apply(v)))
}

impl fmt::Display for LStruct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = serde_json::to_string(self).map_err(|_| fmt::Error)?;
        f.write_str(&text)
    }
}

impl FromStr for LStruct {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::parse("structure", e.to_string()))
    }
}
