//! Computable isomorphism and computable biembeddability of structures.
//!
//! `G(x, y)` holds when `y` does not have the bad coding property and,
//! with `(i, π, a)` the least coding data of `y` and `n` the change point
//! of `(R_i^y)_π(a, ·)`, some member of `S(n)` is an isomorphism from `x`
//! to `y` (for biembeddability: embeddings both ways, using the two-sided
//! bound set).
//!
//! Since defaults are invariant under injections, a map is an isomorphism
//! iff defaults agree and it carries the exception sets onto each other.
//! So the swapping family is decided exactly by a backtracking search for
//! such a map on the finitely many exceptional numbers.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::shuffle::{q_change_point, q_find, QWitness};
use super::{pushforward, LStruct};
use crate::error::{Error, Result};
use crate::graphings::{symmetrized, FnRelation, Graphing, RelFn, Symmetrized};
use crate::machines::{code_table, shape, Perm, ProgramCode, RunOutcome, Shape, SwapList};
use crate::tri::{Fuel, Tri};

fn same_defaults(x: &LStruct, y: &LStruct) -> bool {
    x.arities() == y.arities()
        && x.rels()
            .iter()
            .zip(y.rels())
            .all(|(r, s)| r.same_default(s))
}

fn exception_numbers(x: &LStruct) -> BTreeSet<u64> {
    x.rels()
        .iter()
        .flat_map(|r| r.exceptions().iter().flatten().copied())
        .collect()
}

/// A bijection between the exceptional numbers of `x` and `y` carrying
/// exceptions onto exceptions. With `limit = Some(l)`, numbers `≥ l` stay
/// fixed and numbers below `l` stay below `l`. Designated constants stay fixed.
pub fn exception_iso(x: &LStruct, y: &LStruct, limit: Option<u64>) -> Option<Perm> {
    if !same_defaults(x, y) {
        return None;
    }
    if x.rels()
        .iter()
        .zip(y.rels())
        .any(|(r, s)| r.exceptions().len() != s.exceptions().len())
    {
        return None;
    }
    let dom: Vec<u64> = exception_numbers(x).into_iter().collect();
    let targets: Vec<u64> = exception_numbers(y).into_iter().collect();
    if dom.len() != targets.len() {
        return None;
    }
    let consts = x.constants();
    // exceptions of x touching each number, for pruning
    let mut touching: HashMap<u64, Vec<(usize, &Vec<u64>)>> = HashMap::new();
    for (i, r) in x.rels().iter().enumerate() {
        for t in r.exceptions() {
            for v in t.iter().collect::<BTreeSet<_>>() {
                touching.entry(*v).or_default().push((i, t));
            }
        }
    }
    let mut map: BTreeMap<u64, u64> = BTreeMap::new();
    let mut used: BTreeSet<u64> = BTreeSet::new();
    let ok = search(
        0, &dom, &targets, limit, &consts, &touching, y, &mut map, &mut used,
    );
    ok.then(|| extend_to_perm(&map))
}

#[allow(clippy::too_many_arguments)]
fn search(
    at: usize,
    dom: &[u64],
    targets: &[u64],
    limit: Option<u64>,
    consts: &BTreeSet<u64>,
    touching: &HashMap<u64, Vec<(usize, &Vec<u64>)>>,
    y: &LStruct,
    map: &mut BTreeMap<u64, u64>,
    used: &mut BTreeSet<u64>,
) -> bool {
    let Some(&d) = dom.get(at) else {
        return true;
    };
    for &t in targets {
        if used.contains(&t) {
            continue;
        }
        let fixed =
            consts.contains(&d) || consts.contains(&t) || limit.is_some_and(|l| d >= l || t >= l);
        if fixed && t != d {
            continue;
        }
        map.insert(d, t);
        let consistent = touching[&d].iter().all(|(i, tup)| {
            let image: Option<Vec<u64>> = tup.iter().map(|v| map.get(v).copied()).collect();
            image.is_none_or(|im| y.rels()[*i].exceptions().contains(&im))
        });
        if consistent {
            used.insert(t);
            if search(at + 1, dom, targets, limit, consts, touching, y, map, used) {
                return true;
            }
            used.remove(&t);
        }
        map.remove(&d);
    }
    false
}

/// Finite permutation extending an injection between equinumerous sets.
fn extend_to_perm(map: &BTreeMap<u64, u64>) -> Perm {
    let image: BTreeSet<u64> = map.values().copied().collect();
    let free_src: Vec<u64> = image
        .iter()
        .copied()
        .filter(|v| !map.contains_key(v))
        .collect();
    let free_dst: Vec<u64> = map.keys().copied().filter(|v| !image.contains(v)).collect();
    let mut full = map.clone();
    full.extend(free_src.into_iter().zip(free_dst));
    let top = full.keys().copied().max().map_or(0, |m| m + 1);
    let images = (0..top)
        .map(|v| full.get(&v).copied().unwrap_or(v))
        .collect();
    Perm::from_images(images).expect("a bijection on a finite set")
}

/// Exact check on the halted part of `φ`: injective, and exceptions of `x`
/// among tuples of halted inputs correspond to exceptions of `y`.
fn halted_part_consistent(
    h: &BTreeMap<u64, u64>,
    x: &LStruct,
    y: &LStruct,
    keep: impl Fn(u64) -> bool,
) -> bool {
    let inv: BTreeMap<u64, u64> = h.iter().map(|(&a, &b)| (b, a)).collect();
    if inv.len() != h.len() {
        return false;
    }
    for (r, s) in x.rels().iter().zip(y.rels()) {
        for t in r.exceptions() {
            if t.iter().all(|v| keep(*v) && h.contains_key(v)) {
                let im: Vec<u64> = t.iter().map(|v| h[v]).collect();
                if !s.exceptions().contains(&im) {
                    return false;
                }
            }
        }
        for u in s.exceptions() {
            let pre: Option<Vec<u64>> = u.iter().map(|v| inv.get(v).copied()).collect();
            if let Some(pre) = pre {
                if pre.iter().all(|v| keep(*v)) && !r.exceptions().contains(&pre) {
                    return false;
                }
            }
        }
    }
    true
}

fn halted_map(table: &[RunOutcome]) -> Option<BTreeMap<u64, u64>> {
    let mut h = BTreeMap::new();
    for (m, out) in table.iter().enumerate() {
        match *out {
            RunOutcome::Loops => return None,
            RunOutcome::Halted(v) => {
                h.insert(m as u64, v);
            }
            RunOutcome::OutOfFuel => {}
        }
    }
    Some(h)
}

fn morphism_check(e: ProgramCode, x: &LStruct, y: &LStruct, fuel: Fuel) -> Tri {
    if !same_defaults(x, y) {
        return Tri::Refuted;
    }
    match shape(e) {
        Shape::Diverge => Tri::Refuted,
        Shape::Swap(p) => {
            // a swapping program is a total bijection: decide y = p_* x
            let moved = x.constants().into_iter().any(|c| p.apply(c) != c);
            Tri::from_bool(!moved && x.map(|v| p.apply(v)) == *y)
        }
        _ => {
            let table = code_table(e, fuel);
            match halted_map(&table) {
                Some(h) if halted_part_consistent(&h, x, y, |_| true) => Tri::Unknown { fuel },
                _ => Tri::Refuted,
            }
        }
    }
}

/// Is `φ_e` an isomorphism from `x` to `y`?
pub fn iso_check(e: ProgramCode, x: &LStruct, y: &LStruct, fuel: Fuel) -> Tri {
    morphism_check(e, x, y, fuel)
}

/// Is `φ_e` an embedding of `x` into `y`? Same bounded test: an injection
/// preserving every relation in both directions.
pub fn embed_check(e: ProgramCode, x: &LStruct, y: &LStruct, fuel: Fuel) -> Tri {
    morphism_check(e, x, y, fuel)
}

/// `s ∘ φ` from `x` to `y` is still possible: only tuples landing at or
/// above `2n` are pinned down.
fn left_possible(h: &BTreeMap<u64, u64>, x: &LStruct, y: &LStruct, n: u64) -> bool {
    let high: BTreeMap<u64, u64> = h
        .iter()
        .filter(|(_, &v)| v >= 2 * n)
        .map(|(&a, &b)| (a, b))
        .collect();
    if h.values().collect::<BTreeSet<_>>().len() != h.len() {
        return false;
    }
    let counts_ok = x.rels().iter().zip(y.rels()).all(|(r, s)| {
        let inside = r
            .exceptions()
            .iter()
            .filter(|t| t.iter().all(|v| h.contains_key(v)))
            .count();
        inside <= s.exceptions().len()
    });
    counts_ok && halted_part_consistent(&high, x, y, |_| true)
}

/// `φ ∘ s` from `x` to `y` is still possible: `s` fixes inputs `≥ 2n`.
fn right_possible(h: &BTreeMap<u64, u64>, x: &LStruct, y: &LStruct, n: u64) -> bool {
    if h.values().collect::<BTreeSet<_>>().len() != h.len() {
        return false;
    }
    let high: BTreeMap<u64, u64> = h.range(2 * n..).map(|(&a, &b)| (a, b)).collect();
    halted_part_consistent(&high, x, y, |v| v >= 2 * n)
}

fn relation(x: &LStruct, y: &LStruct, embed: bool, fuel: Fuel) -> Tri {
    if x.arities() != y.arities() || !same_defaults(x, y) {
        return Tri::Refuted;
    }
    let Some(q) = q_find(y) else {
        return Tri::Refuted;
    };
    let n = match q_change_point(y, &q) {
        Ok(n) => n as u64,
        Err(_) => return Tri::Refuted,
    };
    if !embed && exception_iso(x, y, None).is_none() {
        return Tri::Refuted;
    }
    if exception_iso(x, y, Some(2 * n)).is_some() {
        return Tri::Verified;
    }
    let (mut forward, mut backward) = (false, !embed);
    for c in 0..n {
        if shape(c) == Shape::Diverge {
            continue;
        }
        let table = code_table(c, fuel);
        let Some(h) = halted_map(&table) else {
            continue;
        };
        forward = forward || left_possible(&h, x, y, n) || (embed && right_possible(&h, x, y, n));
        backward = backward || left_possible(&h, y, x, n) || right_possible(&h, y, x, n);
        if forward && backward {
            return Tri::Unknown { fuel };
        }
    }
    Tri::Refuted
}

pub type CIso = Symmetrized<FnRelation<LStruct, RelFn<LStruct>>>;

fn ciso_tri(x: &LStruct, y: &LStruct, fuel: Fuel) -> Tri {
    relation(x, y, false, fuel)
}

fn biembed_tri(x: &LStruct, y: &LStruct, fuel: Fuel) -> Tri {
    relation(x, y, true, fuel)
}

pub fn ciso_graph() -> CIso {
    symmetrized("ciso", FnRelation::new(ciso_tri as RelFn<LStruct>), Some(2))
}

pub fn biembed_graph() -> CIso {
    symmetrized(
        "biembed",
        FnRelation::new(biembed_tri as RelFn<LStruct>),
        Some(2),
    )
}

pub fn ciso_adjacent(x: &LStruct, y: &LStruct, fuel: Fuel) -> Tri {
    ciso_graph().adjacent(x, y, fuel)
}

pub fn biembed_adjacent(x: &LStruct, y: &LStruct, fuel: Fuel) -> Tri {
    biembed_graph().adjacent(x, y, fuel)
}

/// Which branch placed the change point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessCase {
    /// `n` already had the minority value.
    One,
    /// `n` had the majority value and was first swapped into `[k, n-1]`.
    Two,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CisoWitness {
    pub y: LStruct,
    pub swaps: SwapList,
    pub n: usize,
    pub q: QWitness,
    pub case: WitnessCase,
    /// The value true on fewer than `n - k` numbers, so the roles flipped.
    pub roles_swapped: bool,
    /// `a` was not `(0, …, k-1)` and was relabelled first.
    pub relabeled: bool,
}

fn build(x: &LStruct, x_prime: &LStruct, above: u64) -> Result<CisoWitness> {
    if x == x_prime {
        return Err(Error::domain("witness needs distinct structures"));
    }
    if x.arities() != x_prime.arities() {
        return Err(Error::domain("structures over different languages"));
    }
    let q = q_find(x).ok_or_else(|| {
        Error::domain("the structure has the bad coding property, so it is alone in its class")
    })?;
    let k = q.a.len();
    let a_top = q.a.iter().max().map_or(0, |m| m + 1);
    let n = 1 + (k as u64).max(above).max(q.b).max(q.c).max(a_top);
    let n = usize::try_from(n).map_err(|_| Error::domain("hint index too large"))?;
    let w = 2 * n;
    let mut swaps = SwapList::identity();
    for (idx, &ai) in q.a.iter().enumerate() {
        let cur = swaps.apply(ai);
        swaps.push(cur, idx as u64);
    }
    let relabeled = !swaps.is_empty();
    let r = x.rel(q.i)?;
    let back = swaps.inverse();
    let value = |m: usize| {
        let mut t = q.a.clone();
        t.push(back.apply(m as u64));
        r.eval(&q.pi.apply(&t))
    };
    let mut cur: Vec<bool> = (0..w).map(|m| m >= k && value(m)).collect();
    let trues = (k..w).filter(|&m| cur[m]).count();
    let roles_swapped = trues < n - k;
    let major = !roles_swapped;
    let case = if cur[n] == major {
        WitnessCase::Two
    } else {
        WitnessCase::One
    };
    for pos in k..=n {
        let want = if pos < n { major } else { !major };
        if cur[pos] != want {
            let j = (pos + 1..w)
                .find(|&j| cur[j] == want)
                .expect("counting leaves a partner");
            cur.swap(pos, j);
            swaps.push(pos as u64, j as u64);
        }
    }
    let y = pushforward(x, &swaps)?;
    let got = q_find(&y).ok_or_else(|| Error::domain("pushforward lost its coding relation"))?;
    let expect_a: Vec<u64> = (0..k as u64).collect();
    if got.i != q.i || got.pi != q.pi || got.a != expect_a || q_change_point(&y, &got)? != n {
        return Err(Error::domain("witness postcondition failed"));
    }
    Ok(CisoWitness {
        y,
        swaps,
        n,
        q: got,
        case,
        roles_swapped,
        relabeled,
    })
}

/// Common neighbour of `x` and `x_prime`, given `e` with `φ_e` an
/// isomorphism from `x_prime` to `x`.
pub fn ciso_witness(x: &LStruct, x_prime: &LStruct, e: ProgramCode) -> Result<CisoWitness> {
    build(x, x_prime, e)
}

/// Common neighbour for biembeddability, given embeddings `e1` from
/// `x_prime` into `x` and `e2` from `x` into `x_prime`.
pub fn biembed_witness(
    x: &LStruct,
    x_prime: &LStruct,
    e1: ProgramCode,
    e2: ProgramCode,
) -> Result<CisoWitness> {
    build(x, x_prime, e1.max(e2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines::{perm_program, swap_program, zero_code};

    fn st(s: &str) -> LStruct {
        s.parse().unwrap()
    }

    fn fuel() -> Fuel {
        Fuel::new(2_000, 16).unwrap()
    }

    fn unary(set: &[u64]) -> LStruct {
        let exc: Vec<Vec<u64>> = set.iter().map(|&v| vec![v]).collect();
        st(&format!(
            r#"{{"arities":[1],"relations":[{{"default":"bot","exceptions":{exc:?}}}]}}"#
        ))
    }

    #[test]
    fn bad_coding_target_refuted() {
        let top = st(r#"{"arities":[1],"relations":[{"default":"top"}]}"#);
        assert_eq!(ciso_adjacent(&unary(&[0]), &top, fuel()), Tri::Refuted);
    }

    #[test]
    fn different_exception_counts_refuted() {
        assert_eq!(
            ciso_adjacent(&unary(&[0]), &unary(&[0, 1]), fuel()),
            Tri::Refuted
        );
    }

    #[test]
    fn pushforward_is_adjacent() {
        let x = unary(&[0]);
        let y = unary(&[3]);
        assert_eq!(ciso_adjacent(&x, &y, fuel()), Tri::Verified);
        let s = SwapList::new(vec![(0, 3)]).unwrap();
        let e = swap_program(&s).unwrap();
        assert_eq!(iso_check(e, &x, &y, fuel()), Tri::Verified);
    }

    #[test]
    fn exception_iso_respects_limit() {
        let x = st(r#"{"arities":[2],"relations":[{"default":"bot","exceptions":[[0,1],[1,5]]}]}"#);
        let y = st(r#"{"arities":[2],"relations":[{"default":"bot","exceptions":[[2,0],[0,5]]}]}"#);
        let p = exception_iso(&x, &y, Some(4)).unwrap();
        assert_eq!(x.map(|v| p.apply(v)), y);
        assert!(exception_iso(&x, &y, Some(2)).is_none());
        let z = st(r#"{"arities":[2],"relations":[{"default":"bot","exceptions":[[2,0],[5,0]]}]}"#);
        assert!(exception_iso(&x, &z, None).is_none());
    }

    #[test]
    fn unary_witness() {
        let (x, xp) = (unary(&[0]), unary(&[1]));
        let e = swap_program(&SwapList::new(vec![(0, 1)]).unwrap()).unwrap();
        assert_eq!(iso_check(e, &xp, &x, fuel()), Tri::Verified);
        let w = ciso_witness(&x, &xp, e).unwrap();
        assert_eq!(w.y, unary(&[w.n as u64]));
        assert!(!ciso_adjacent(&x, &w.y, fuel()).is_refuted());
        assert!(!ciso_adjacent(&xp, &w.y, fuel()).is_refuted());
        let b = biembed_witness(&x, &xp, e, e).unwrap();
        assert_eq!(b.y, w.y);
        assert!(!biembed_adjacent(&xp, &b.y, fuel()).is_refuted());
        assert!(ciso_witness(&x, &x, e).is_err());
    }

    #[test]
    fn binary_relabel_witness() {
        // R(a, m) holds for m ∈ {4, 6} when a = 2; least coding a is (2)
        let x = st(r#"{"arities":[2],"relations":[{"default":"bot","exceptions":[[2,4],[2,6]]}]}"#);
        let p = Perm::from_images(vec![0, 1, 3, 2]).unwrap();
        let xp = x.map(|v| p.apply(v));
        let e = perm_program(&p).unwrap();
        assert_eq!(iso_check(e, &xp, &x, fuel()), Tri::Verified);
        let w = ciso_witness(&x, &xp, e).unwrap();
        assert!(w.relabeled);
        assert_eq!(w.q.a, vec![0]);
        assert!(!ciso_adjacent(&x, &w.y, fuel()).is_refuted());
        assert!(!ciso_adjacent(&xp, &w.y, fuel()).is_refuted());
    }

    #[test]
    fn non_injective_embedding_refuted() {
        let x = unary(&[0]);
        assert_eq!(embed_check(zero_code(), &x, &x, fuel()), Tri::Refuted);
    }
}
