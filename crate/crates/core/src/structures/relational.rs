//! Replacing function symbols by relation symbols for their graphs.
//!
//! A function is a catalog default (a constant or a coordinate projection)
//! with finitely many overridden values. Its graph `R_f(a, b) ⟺ f(a) = b`
//! is a relation of arity `1 + arity(f)` whose default is `v_n = c` or
//! `v_i = v_n`, and whose exceptions are the two graph tuples that each
//! override moves.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::formula::TrivialFormula;
use super::{FinRel, LStruct};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FuncDefault {
    Const(u64),
    Proj(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinFunc {
    pub arity: usize,
    pub default: FuncDefault,
    /// Overridden values, as `(arguments, value)` pairs.
    #[serde(default)]
    pub overrides: Vec<(Vec<u64>, u64)>,
}

impl FinFunc {
    fn table(&self) -> Result<BTreeMap<Vec<u64>, u64>> {
        if let FuncDefault::Proj(i) = self.default {
            if i >= self.arity {
                return Err(Error::domain(format!(
                    "projection onto {i} for a function of arity {}",
                    self.arity
                )));
            }
        }
        let mut t = BTreeMap::new();
        for (args, v) in &self.overrides {
            if args.len() != self.arity {
                return Err(Error::domain(format!(
                    "override {args:?} has the wrong length"
                )));
            }
            if t.insert(args.clone(), *v).is_some() {
                return Err(Error::domain(format!("override {args:?} given twice")));
            }
        }
        Ok(t)
    }

    fn default_at(&self, args: &[u64]) -> u64 {
        match self.default {
            FuncDefault::Const(c) => c,
            FuncDefault::Proj(i) => args[i],
        }
    }

    pub fn apply(&self, args: &[u64]) -> u64 {
        self.overrides
            .iter()
            .find(|(a, _)| a == args)
            .map_or_else(|| self.default_at(args), |(_, v)| *v)
    }
}

/// Relations followed by functions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuncStruct {
    #[serde(default = "empty")]
    pub relations: LStruct,
    pub functions: Vec<FinFunc>,
}

fn empty() -> LStruct {
    LStruct::new(vec![])
}

/// Keep the relations and add the graph of every function.
pub fn relationalize(s: &FuncStruct) -> Result<LStruct> {
    let mut rels = s.relations.rels().to_vec();
    for f in &s.functions {
        let table = f.table()?;
        let n = f.arity;
        let default = match f.default {
            FuncDefault::Const(c) => TrivialFormula::Val(n, c),
            FuncDefault::Proj(i) => TrivialFormula::Eq(i, n),
        };
        let mut exceptions = vec![];
        for (args, v) in table {
            let d = f.default_at(&args);
            if v == d {
                continue;
            }
            let mut off = args.clone();
            off.push(d);
            let mut on = args;
            on.push(v);
            exceptions.push(off);
            exceptions.push(on);
        }
        rels.push(FinRel::new(n + 1, default, exceptions)?);
    }
    Ok(LStruct::new(rels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::tuples;

    fn graph_agrees(f: &FinFunc, bound: u64) {
        let s = FuncStruct {
            relations: empty(),
            functions: vec![f.clone()],
        };
        let x = relationalize(&s).unwrap();
        let domain: Vec<u64> = (0..=bound).collect();
        for t in tuples(&domain, f.arity + 1) {
            let (args, b) = t.split_at(f.arity);
            assert_eq!(x.eval(0, &t).unwrap(), f.apply(args) == b[0], "{t:?}");
        }
    }

    #[test]
    fn constant_function() {
        let f = FinFunc {
            arity: 1,
            default: FuncDefault::Const(0),
            overrides: vec![],
        };
        graph_agrees(&f, 5);
    }

    #[test]
    fn projection() {
        let f = FinFunc {
            arity: 1,
            default: FuncDefault::Proj(0),
            overrides: vec![],
        };
        let s = FuncStruct {
            relations: empty(),
            functions: vec![f.clone()],
        };
        let x = relationalize(&s).unwrap();
        assert_eq!(x.rels()[0].default_formula(), &TrivialFormula::Eq(0, 1));
        graph_agrees(&f, 5);
    }

    #[test]
    fn identity_with_one_override() {
        let f = FinFunc {
            arity: 1,
            default: FuncDefault::Proj(0),
            overrides: vec![(vec![3], 7)],
        };
        let s = FuncStruct {
            relations: empty(),
            functions: vec![f.clone()],
        };
        let x = relationalize(&s).unwrap();
        let exc: Vec<Vec<u64>> = x.rels()[0].exceptions().iter().cloned().collect();
        assert_eq!(exc, vec![vec![3, 3], vec![3, 7]]);
        graph_agrees(&f, 8);
    }

    #[test]
    fn bad_functions() {
        let f = FinFunc {
            arity: 1,
            default: FuncDefault::Proj(2),
            overrides: vec![],
        };
        let s = FuncStruct {
            relations: empty(),
            functions: vec![f],
        };
        assert!(relationalize(&s).is_err());
    }
}
