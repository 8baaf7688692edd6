//! Shuffles, coding relations, the bad coding property, and the search
//! for the least coding shuffle.
//!
//! A shuffling sequence `π` of arity `k` and length `n` sends `(a_0, …, a_{k-1})`
//! to `(a_{i(0)}, …, a_{i(n-1)})`. Shuffles are ordered by `k`, then by the
//! index list read lexicographically; [`ShuffleSeq::code`] is the position in
//! that order. Tuples are ordered lexicographically.
//!
//! Coding searches are exact: whether a shuffled tuple lies in the relation
//! depends only on its equality type and on which numbers up to the
//! relation's largest exceptional entry it uses, so witnesses can be
//! relabelled below `M = max_entry + k + 2`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::formula::TrivialFormula;
use super::{tuples, FinRel, LStruct};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShuffleSeq {
    pub k: usize,
    pub indices: Vec<usize>,
}

impl ShuffleSeq {
    pub fn new(k: usize, indices: Vec<usize>) -> Result<Self> {
        if k == 0 {
            return Err(Error::repr("shuffle arity must be at least 1"));
        }
        if let Some(&i) = indices.iter().find(|&&i| i >= k) {
            return Err(Error::repr(format!("shuffle index {i} is not below {k}")));
        }
        Ok(ShuffleSeq { k, indices })
    }

    pub fn identity(n: usize) -> Self {
        ShuffleSeq {
            k: n,
            indices: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn apply(&self, a: &[u64]) -> Vec<u64> {
        self.indices.iter().map(|&i| a[i]).collect()
    }

    /// `(R_π)_ρ = R_{π.then(ρ)}`: index `i(t)` becomes `j(i(t))`.
    pub fn then(&self, rho: &ShuffleSeq) -> ShuffleSeq {
        ShuffleSeq {
            k: rho.k,
            indices: self.indices.iter().map(|&i| rho.indices[i]).collect(),
        }
    }

    /// Position in the order on shuffles of this length.
    pub fn code(&self) -> u64 {
        let n = self.len() as u32;
        let before: u64 = (1..self.k as u64).map(|k| k.pow(n)).sum();
        before
            + self
                .indices
                .iter()
                .fold(0u64, |acc, &i| acc * self.k as u64 + i as u64)
    }
}

impl fmt::Display for ShuffleSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "{}:[{}]", self.k, idx.join(","))
    }
}

impl FromStr for ShuffleSeq {
    type Err = Error;
    /// `"k:[i,j,…]"`, as printed.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (k, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(s, "expected `k:[i,…]`"))?;
        let k: usize = k.trim().parse().map_err(|_| Error::parse(k, "bad arity"))?;
        let inner = rest
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::parse(rest, "expected a bracketed index list"))?;
        let indices = inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| Error::parse(t, "bad index")))
            .collect::<Result<Vec<usize>>>()?;
        ShuffleSeq::new(k, indices)
    }
}

/// Shuffles of a relation of arity `n`, all arities `k ≤ n`, in code order.
pub fn all_shuffles(n: usize) -> Vec<ShuffleSeq> {
    let mut out = vec![];
    for k in 1..=n {
        let domain: Vec<u64> = (0..k as u64).collect();
        for t in tuples(&domain, n) {
            out.push(ShuffleSeq {
                k,
                indices: t.into_iter().map(|v| v as usize).collect(),
            });
        }
    }
    out
}

fn check_shuffle(r: &FinRel, pi: &ShuffleSeq) -> Result<()> {
    if pi.len() != r.arity() {
        return Err(Error::domain(format!(
            "shuffle of length {} on a relation of arity {}",
            pi.len(),
            r.arity()
        )));
    }
    Ok(())
}

/// `(R_i^x)_π(t)`.
pub fn shuffle_eval(x: &LStruct, i: usize, pi: &ShuffleSeq, t: &[u64]) -> Result<bool> {
    let r = x.rel(i)?;
    check_shuffle(r, pi)?;
    if t.len() != pi.k {
        return Err(Error::domain(format!(
            "shuffle has arity {} but got {} arguments",
            pi.k,
            t.len()
        )));
    }
    Ok(r.eval(&pi.apply(t)))
}

/// Least coding witness of a `k`-ary relation over the sorted `domain`:
/// least injective `a` (length `k-1`), then least `b`, `c` outside `a`
/// with `q(a,b)` and `¬q(a,c)`.
pub(crate) fn coding_search(
    q: impl Fn(&[u64]) -> bool,
    k: usize,
    domain: &[u64],
) -> Option<(Vec<u64>, u64, u64)> {
    for a in tuples(domain, k - 1) {
        if !injective(&a) {
            continue;
        }
        let mut t = a.clone();
        t.push(0);
        let (mut b, mut c) = (None, None);
        for &m in domain.iter().filter(|m| !a.contains(m)) {
            *t.last_mut().unwrap() = m;
            if q(&t) {
                b = b.or(Some(m));
            } else {
                c = c.or(Some(m));
            }
            if b.is_some() && c.is_some() {
                break;
            }
        }
        if let (Some(b), Some(c)) = (b, c) {
            return Some((a, b, c));
        }
    }
    None
}

fn injective(a: &[u64]) -> bool {
    a.iter().enumerate().all(|(i, v)| !a[..i].contains(v))
}

/// Exception entries and formula constants, followed by the first `fresh`
/// other numbers. A permutation fixing the former is an automorphism, so
/// least witnesses never need a fresh number beyond these, and all fresh
/// numbers outside a tuple behave alike.
fn search_domain(r: &FinRel, fresh: usize) -> Vec<u64> {
    let special: BTreeSet<u64> = r
        .exceptions()
        .iter()
        .flatten()
        .copied()
        .chain(r.default_formula().constants())
        .collect();
    let mut d: Vec<u64> = special.iter().copied().collect();
    d.extend((0u64..).filter(|m| !special.contains(m)).take(fresh));
    d.sort_unstable();
    d
}

fn coding_of(r: &FinRel, pi: &ShuffleSeq) -> Option<(Vec<u64>, u64, u64)> {
    coding_search(|t| r.eval(&pi.apply(t)), pi.k, &search_domain(r, pi.k))
}

/// Is `(R_i^x)_π` a coding relation?
pub fn is_coding(x: &LStruct, i: usize, pi: &ShuffleSeq) -> Result<bool> {
    let r = x.rel(i)?;
    check_shuffle(r, pi)?;
    Ok(coding_of(r, pi).is_some())
}

/// A coding shuffle with its least witness `(a, b, c)`.
type CodingFound = (ShuffleSeq, (Vec<u64>, u64, u64));

fn first_coding_shuffle(r: &FinRel) -> Option<CodingFound> {
    all_shuffles(r.arity())
        .into_iter()
        .find_map(|pi| coding_of(r, &pi).map(|w| (pi, w)))
}

/// No shuffle of `R_i^x` is coding.
pub fn has_bad_coding(x: &LStruct, i: usize) -> Result<bool> {
    Ok(first_coding_shuffle(x.rel(i)?).is_none())
}

pub fn struct_bad_coding(x: &LStruct) -> bool {
    x.rels().iter().all(|r| first_coding_shuffle(r).is_none())
}

/// The least `(i, π)` with a coding shuffle, its least `a`, and least `b`, `c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QWitness {
    pub i: usize,
    pub pi: ShuffleSeq,
    pub a: Vec<u64>,
    pub b: u64,
    pub c: u64,
}

pub fn q_find(x: &LStruct) -> Option<QWitness> {
    x.rels().iter().enumerate().find_map(|(i, r)| {
        first_coding_shuffle(r).map(|(pi, (a, b, c))| QWitness { i, pi, a, b, c })
    })
}

/// The least `m ∉ a` whose value `Q(a, m)` differs from that of every
/// smaller number outside `a`.
pub fn q_change_point(x: &LStruct, q: &QWitness) -> Result<usize> {
    let r = x.rel(q.i)?;
    let value = |m: u64| {
        let mut t = q.a.clone();
        t.push(m);
        r.eval(&q.pi.apply(&t))
    };
    let domain = search_domain(r, q.pi.k);
    let mut outside = domain.iter().copied().filter(|m| !q.a.contains(m));
    let first = outside.next().expect("k fresh numbers leave one outside a");
    let v0 = value(first);
    outside
        .find(|&m| value(m) != v0)
        .map(|m| m as usize)
        .ok_or_else(|| Error::domain("the witness tuple does not code anything"))
}

/// Definition of a bad-coding relation by equalities, built by the
/// induction on arity: a constant value on injective tuples, then for each
/// coincidence `v_i = v_j` the formula of the shuffle that deletes `v_j`
/// and copies `v_i` back into its slot.
pub fn synthesize_trivial(x: &LStruct, i: usize) -> Result<TrivialFormula> {
    let r = x.rel(i)?;
    if let Some((pi, (a, b, c))) = first_coding_shuffle(r) {
        return Err(Error::domain(format!(
            "R{i} has a coding shuffle {pi}: a={a:?}, b={b}, c={c}"
        )));
    }
    let n = r.arity();
    let f = synth(&|t: &[u64]| r.eval(t), n);
    let f = simplest_equivalent(f, n);
    let domain = search_domain(r, n + 3);
    if let Some(t) = tuples(&domain, n).find(|t| f.eval(t) != r.eval(t)) {
        return Err(Error::domain(format!(
            "synthesized formula {f} disagrees with R{i} at {t:?}"
        )));
    }
    Ok(f)
}

fn synth(q: &dyn Fn(&[u64]) -> bool, n: usize) -> TrivialFormula {
    let constant = |b: bool| {
        if b {
            TrivialFormula::Top
        } else {
            TrivialFormula::Bot
        }
    };
    if n == 1 {
        return constant(q(&[0]));
    }
    let ids: Vec<u64> = (0..n as u64).collect();
    let distinct = TrivialFormula::all(
        (0..n).flat_map(|i| (i + 1..n).map(move |j| TrivialFormula::not(TrivialFormula::eq(i, j)))),
    );
    let mut out = TrivialFormula::and(distinct, constant(q(&ids)));
    for j in 0..n {
        // ρ deletes v_j
        let rho: Vec<usize> = (0..n).filter(|&t| t != j).collect();
        for i in (0..n).filter(|&i| i != j) {
            // π puts every variable back in place, with v_i standing in for v_j
            let pos = |v: usize| rho.iter().position(|&r| r == v).unwrap();
            let pi: Vec<usize> = (0..n)
                .map(|t| if t == j { pos(i) } else { pos(t) })
                .collect();
            let sub = move |w: &[u64]| -> bool {
                let t: Vec<u64> = pi.iter().map(|&p| w[p]).collect();
                q(&t)
            };
            let g = synth(&sub, n - 1).substitute(&rho);
            out = TrivialFormula::or(out, TrivialFormula::and(TrivialFormula::eq(i, j), g));
        }
    }
    out
}

/// Replace `f` by a constant or a single (negated) equality when one is equivalent.
fn simplest_equivalent(f: TrivialFormula, n: usize) -> TrivialFormula {
    let ids: Vec<u64> = (0..n as u64).collect();
    let types: Vec<Vec<u64>> = tuples(&ids, n).collect();
    let same = |g: &TrivialFormula| types.iter().all(|t| g.eval(t) == f.eval(t));
    let mut small = vec![TrivialFormula::Top, TrivialFormula::Bot];
    for i in 0..n {
        for j in i + 1..n {
            small.push(TrivialFormula::eq(i, j));
            small.push(TrivialFormula::not(TrivialFormula::eq(i, j)));
        }
    }
    small.into_iter().find(|g| same(g)).unwrap_or(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::LStruct;

    fn st(s: &str) -> LStruct {
        s.parse().unwrap()
    }

    fn one(arity: usize, default: &str, exc: &str) -> LStruct {
        st(&format!(
            r#"{{"arities":[{arity}],"relations":[{{"default":"{default}","exceptions":{exc}}}]}}"#
        ))
    }

    #[test]
    fn shuffle_text_round_trip() {
        let pi = ShuffleSeq::new(3, vec![2, 0, 0, 1]).unwrap();
        assert_eq!(pi.to_string().parse::<ShuffleSeq>().unwrap(), pi);
        assert!("2:[0,2]".parse::<ShuffleSeq>().is_err());
        assert!("2:0,1".parse::<ShuffleSeq>().is_err());
    }

    #[test]
    fn shuffle_eval_selects_indices() {
        let x = one(3, "and eq 0 2 not eq 0 1", "[]");
        let pi = ShuffleSeq::new(2, vec![0, 1, 0]).unwrap();
        for (a, b) in [(1, 2), (3, 3), (0, 5)] {
            assert_eq!(
                shuffle_eval(&x, 0, &pi, &[a, b]).unwrap(),
                x.eval(0, &[a, b, a]).unwrap()
            );
        }
        let id = ShuffleSeq::identity(3);
        assert_eq!(
            shuffle_eval(&x, 0, &id, &[1, 2, 1]).unwrap(),
            x.eval(0, &[1, 2, 1]).unwrap()
        );
        assert!(shuffle_eval(&x, 0, &pi, &[1]).is_err());
    }

    #[test]
    fn codes_follow_order() {
        let all = all_shuffles(3);
        assert_eq!(all.len(), 1 + 8 + 27);
        for (pos, pi) in all.iter().enumerate() {
            assert_eq!(pi.code(), pos as u64);
        }
    }

    #[test]
    fn coding_examples() {
        let id1 = ShuffleSeq::identity(1);
        assert!(is_coding(&one(1, "bot", "[[0]]"), 0, &id1).unwrap());
        assert!(!is_coding(&one(1, "top", "[]"), 0, &id1).unwrap());
        let eq = one(2, "eq 0 1", "[]");
        assert!(!is_coding(&eq, 0, &ShuffleSeq::identity(2)).unwrap());
        assert!(has_bad_coding(&eq, 0).unwrap());
        assert!(!has_bad_coding(&one(2, "bot", "[[0,1]]"), 0).unwrap());
        assert!(struct_bad_coding(&st(
            r#"{"arities":[1,2],"relations":[{"default":"top"},{"default":"top"}]}"#
        )));
    }

    #[test]
    fn q_examples() {
        let all_top = st(r#"{"arities":[1,2],"relations":[{"default":"top"},{"default":"top"}]}"#);
        assert_eq!(q_find(&all_top), None);
        let x = one(1, "bot", "[[0]]");
        let q = q_find(&x).unwrap();
        assert_eq!(
            (q.i, q.pi.clone(), q.a.clone()),
            (0, ShuffleSeq::identity(1), vec![])
        );
        assert_eq!(q_change_point(&x, &q).unwrap(), 1);
        let two = st(
            r#"{"arities":[2,1],"relations":[{"default":"eq 0 1"},{"default":"bot","exceptions":[[3]]}]}"#,
        );
        let q = q_find(&two).unwrap();
        assert_eq!(q.i, 1);
        assert_eq!(q_change_point(&two, &q).unwrap(), 3);
    }

    #[test]
    fn synthesis_examples() {
        assert_eq!(
            synthesize_trivial(&one(1, "top", "[]"), 0).unwrap(),
            TrivialFormula::Top
        );
        assert_eq!(
            synthesize_trivial(&one(2, "eq 0 1", "[]"), 0).unwrap(),
            TrivialFormula::Eq(0, 1)
        );
        assert_eq!(
            synthesize_trivial(&one(3, "eq 0 1", "[]"), 0).unwrap(),
            TrivialFormula::Eq(0, 1)
        );
        assert!(synthesize_trivial(&one(1, "bot", "[[0]]"), 0).is_err());
    }

    #[test]
    fn synthesis_of_irregular_formula() {
        // true when exactly two of the three coordinates coincide
        let f = "or and eq 0 1 not eq 1 2 or and eq 1 2 not eq 0 1 and eq 0 2 not eq 0 1";
        let x = one(3, f, "[]");
        let g = synthesize_trivial(&x, 0).unwrap();
        let domain: Vec<u64> = (0..5).collect();
        for t in tuples(&domain, 3) {
            assert_eq!(g.eval(&t), x.eval(0, &t).unwrap(), "{t:?}");
        }
    }
}
