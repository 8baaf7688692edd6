//! The numbering of programs. See `docs/encoding.md` for the bit-exact layout.

use super::perm::{Perm, SwapList};
use super::{Instr, Program, MAX_REGISTER};
use crate::error::{Error, Result};

/// Index of a program. Every natural is a legal index.
pub type ProgramCode = u64;

const TAG_RAW: u64 = 0;
const TAG_SWAP: u64 = 1;
const TAG_COMPOSE: u64 = 2;
const TAG_SPECIAL: u64 = 3;

fn overflow() -> Error {
    Error::repr("program code exceeds 64 bits")
}

/// Cantor pairing `(a+b)(a+b+1)/2 + b`.
pub fn pair(a: u64, b: u64) -> Result<u64> {
    let s = (a as u128) + (b as u128);
    let v = s * (s + 1) / 2 + b as u128;
    u64::try_from(v).map_err(|_| overflow())
}

pub fn unpair(z: u64) -> (u64, u64) {
    let z = z as u128;
    // w = floor((sqrt(8z+1) - 1) / 2), corrected for float error
    let mut w = (((8.0 * z as f64 + 1.0).sqrt() - 1.0) / 2.0) as u128;
    while w * (w + 1) / 2 > z {
        w -= 1;
    }
    while (w + 1) * (w + 2) / 2 <= z {
        w += 1;
    }
    let b = z - w * (w + 1) / 2;
    ((w - b) as u64, b as u64)
}

fn tagged(tag: u64, payload: u64) -> Result<u64> {
    payload
        .checked_mul(4)
        .and_then(|v| v.checked_add(1 + tag))
        .ok_or_else(overflow)
}

fn instr_code(ins: &Instr) -> Result<u64> {
    let (payload, tag) = match *ins {
        Instr::Halt => (0, 0),
        Instr::Inc(r) => (r as u64, 1),
        Instr::Dec(r) => (r as u64, 2),
        Instr::Jz(r, t) => (pair(r as u64, t as u64)?, 3),
        Instr::Oracle(r, s) => (pair(r as u64, s as u64)?, 4),
    };
    payload
        .checked_mul(5)
        .and_then(|v| v.checked_add(tag))
        .ok_or_else(overflow)
}

fn decode_instr(c: u64) -> Option<Instr> {
    let (payload, tag) = (c / 5, c % 5);
    let reg = |r: u64| u32::try_from(r).ok().filter(|&r| r <= MAX_REGISTER);
    match tag {
        0 if payload == 0 => Some(Instr::Halt),
        0 => None,
        1 => reg(payload).map(Instr::Inc),
        2 => reg(payload).map(Instr::Dec),
        3 => {
            let (r, t) = unpair(payload);
            Some(Instr::Jz(reg(r)?, usize::try_from(t).ok()?))
        }
        _ => {
            let (r, s) = unpair(payload);
            Some(Instr::Oracle(reg(r)?, reg(s)?))
        }
    }
}

/// Code of a program, always in the raw family.
pub fn encode(p: &Program) -> Result<ProgramCode> {
    let mut list = 0u64;
    for ins in p.instrs().iter().rev() {
        list = pair(instr_code(ins)?, list)?
            .checked_add(1)
            .ok_or_else(overflow)?;
    }
    tagged(TAG_RAW, list)
}

fn decode_raw(mut list: u64) -> Option<Program> {
    let mut instrs = vec![];
    while list > 0 {
        let (c, rest) = unpair(list - 1);
        instrs.push(decode_instr(c)?);
        list = rest;
    }
    Program::new(instrs).ok()
}

/// What a code denotes before compilation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    /// 0 and every malformed raw code.
    Diverge,
    Raw(Program),
    Swap(Perm),
    /// `Compose(e1, e2)` computes `φ_{e1} ∘ φ_{e2}`.
    Compose(ProgramCode, ProgramCode),
    Special {
        a: u64,
        b: u64,
        c: ProgramCode,
    },
}

pub fn shape(e: ProgramCode) -> Shape {
    if e == 0 {
        return Shape::Diverge;
    }
    let (tag, payload) = ((e - 1) % 4, (e - 1) / 4);
    match tag {
        TAG_RAW => decode_raw(payload).map_or(Shape::Diverge, Shape::Raw),
        TAG_SWAP => Shape::Swap(Perm::unrank(payload)),
        TAG_COMPOSE => {
            let (e1, e2) = unpair(payload);
            Shape::Compose(e1, e2)
        }
        _ => {
            let (a, bc) = unpair(payload);
            let (b, c) = unpair(bc);
            Shape::Special { a, b, c }
        }
    }
}

/// The program with index `e`. Total: malformed codes give
/// [`Program::diverging`].
pub fn decode(e: ProgramCode) -> Program {
    match shape(e) {
        Shape::Diverge => Program::diverging(),
        Shape::Raw(p) => p,
        Shape::Swap(p) => compile_perm(&p),
        Shape::Compose(e1, e2) => compile_compose(&decode(e1), &decode(e2)),
        Shape::Special { a, b, c } => compile_special(a, b, &decode(c)),
    }
}

fn relocate(ins: Instr, offset: usize) -> Instr {
    match ins {
        Instr::Jz(r, t) => Instr::Jz(r, t + offset),
        other => other,
    }
}

fn compile_perm(p: &Perm) -> Program {
    let m = p.support_len() as usize;
    let mut out = Vec::with_capacity(4 * m + 2);
    // decrement r0 step by step, branching out when it hits zero at step i
    let mut targets = vec![];
    for _ in 0..m {
        targets.push(out.len());
        out.push(Instr::Jz(0, 0));
        out.push(Instr::Dec(0));
    }
    // input ≥ m: restore and halt
    out.extend(std::iter::repeat_n(Instr::Inc(0), m));
    out.push(Instr::Halt);
    for (i, &at) in targets.iter().enumerate() {
        out[at] = Instr::Jz(0, out.len());
        out.extend(std::iter::repeat_n(
            Instr::Inc(0),
            p.apply(i as u64) as usize,
        ));
        out.push(Instr::Halt);
    }
    Program::from_parts_unchecked(out)
}

fn compile_compose(outer: &Program, inner: &Program) -> Program {
    let zero = outer.max_register().max(inner.max_register()) + 1;
    let len2 = inner.len();
    let mut out: Vec<Instr> = inner
        .instrs()
        .iter()
        .map(|&ins| match ins {
            Instr::Halt => Instr::Jz(zero, len2),
            other => other,
        })
        .collect();
    for r in 1..=inner.max_register() {
        let start = out.len();
        out.push(Instr::Jz(r, start + 3));
        out.push(Instr::Dec(r));
        out.push(Instr::Jz(zero, start));
    }
    let offset = out.len();
    out.extend(outer.instrs().iter().map(|&ins| relocate(ins, offset)));
    Program::from_parts_unchecked(out)
}

fn compile_special(a: u64, b: u64, body: &Program) -> Program {
    let mut out = Vec::with_capacity(2 * (a + b) as usize + body.len());
    for _ in 0..a {
        out.push(Instr::Inc(1));
        out.push(Instr::Dec(1));
    }
    for _ in 0..b {
        out.push(Instr::Inc(2));
        out.push(Instr::Dec(2));
    }
    let offset = out.len();
    out.extend(body.instrs().iter().map(|&ins| relocate(ins, offset)));
    Program::from_parts_unchecked(out)
}

/// Index of the program computing the permutation induced by `s`.
pub fn swap_program(s: &SwapList) -> Result<ProgramCode> {
    tagged(TAG_SWAP, Perm::from_swaps(s).rank()?)
}

pub fn perm_program(p: &Perm) -> Result<ProgramCode> {
    tagged(TAG_SWAP, p.rank()?)
}

/// Index of `φ_{e1} ∘ φ_{e2}`.
pub fn compose(e1: ProgramCode, e2: ProgramCode) -> Result<ProgramCode> {
    tagged(TAG_COMPOSE, pair(e1, e2)?)
}

/// Index that adds zero `a` times to `r1`, `b` times to `r2`, then runs `c`.
pub fn special_encode(a: u64, b: u64, c: ProgramCode) -> Result<ProgramCode> {
    tagged(TAG_SPECIAL, pair(a, pair(b, c)?)?)
}

pub fn form(e: ProgramCode) -> bool {
    e > 0 && (e - 1) % 4 == TAG_SPECIAL
}

fn special_parts(e: ProgramCode) -> Result<(u64, u64, u64)> {
    match shape(e) {
        Shape::Special { a, b, c } => Ok((a, b, c)),
        _ => Err(Error::domain(format!("{e} is not of special form"))),
    }
}

pub fn code1(e: ProgramCode) -> Result<u64> {
    special_parts(e).map(|t| t.0)
}

pub fn code2(e: ProgramCode) -> Result<u64> {
    special_parts(e).map(|t| t.1)
}

pub fn main(e: ProgramCode) -> Result<ProgramCode> {
    special_parts(e).map(|t| t.2)
}

/// An index above `bound` with the same behaviour as `e`, up to
/// `2k` extra steps of prologue.
pub fn pad(e: ProgramCode, bound: u64) -> Result<ProgramCode> {
    let code = |k: u64| special_encode(k, 0, e);
    if code(0)? > bound {
        return code(0);
    }
    // code(k) is strictly increasing in k: binary search for the least k above bound
    let (mut lo, mut hi) = (0u64, 1u64);
    while code(hi)? <= bound {
        lo = hi;
        hi = hi.checked_mul(2).ok_or_else(overflow)?;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if code(mid)? > bound {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    code(hi)
}

/// Membership in the bound set `S(n)`: swapping programs whose
/// transpositions stay below `2n`, and compositions of such a program
/// (on the left) with an index below `n`.
pub fn in_bound_set(e: ProgramCode, n: u64) -> bool {
    let small_swap =
        |c: ProgramCode| matches!(shape(c), Shape::Swap(p) if p.support_len() <= 2 * n);
    match shape(e) {
        Shape::Swap(_) => small_swap(e),
        Shape::Compose(e1, e2) => e2 < n && small_swap(e1),
        _ => false,
    }
}

/// [`in_bound_set`] plus compositions with the swapping program on the
/// right, `φ_{e'} ∘ s` with `e' < n`. Used where reductions run both ways.
pub fn in_bound_set_two_sided(e: ProgramCode, n: u64) -> bool {
    in_bound_set(e, n)
        || matches!(shape(e), Shape::Compose(e1, e2)
            if e1 < n && matches!(shape(e2), Shape::Swap(p) if p.support_len() <= 2 * n))
}

fn fixed(instrs: Vec<Instr>) -> ProgramCode {
    encode(&Program::new(instrs).expect("well-formed")).expect("small code")
}

/// `HALT`: the identity function.
pub fn identity_code() -> ProgramCode {
    fixed(vec![Instr::Halt])
}

/// `INC r0; HALT`.
pub fn successor_code() -> ProgramCode {
    fixed(vec![Instr::Inc(0), Instr::Halt])
}

/// Constant zero: count `r0` down, then halt.
pub fn zero_code() -> ProgramCode {
    fixed(vec![
        Instr::Jz(0, 3),
        Instr::Dec(0),
        Instr::Jz(1, 0),
        Instr::Halt,
    ])
}

/// `e*`: `ORACLE r0 r0; HALT`, so that `φ_{e*}^x = x`.
pub fn e_star() -> ProgramCode {
    fixed(vec![Instr::Oracle(0, 0), Instr::Halt])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machines::RunOutcome;
    use crate::seq::EPSeq;

    fn zero() -> EPSeq {
        EPSeq::constant(0)
    }

    #[test]
    fn known_codes() {
        // hand-computed from the layout in docs/encoding.md
        assert_eq!(identity_code(), 5);
        assert_eq!(successor_code(), 21);
        assert_eq!(e_star(), 69);
        assert_eq!(decode(0), Program::diverging());
    }

    #[test]
    fn pairing_round_trip() {
        for a in 0..60 {
            for b in 0..60 {
                assert_eq!(unpair(pair(a, b).unwrap()), (a, b));
            }
        }
        let big = pair(1 << 31, 12345).unwrap();
        assert_eq!(unpair(big), (1 << 31, 12345));
    }

    #[test]
    fn raw_round_trip() {
        let p = Program::new(vec![Instr::Halt]).unwrap();
        assert_eq!(decode(encode(&p).unwrap()), p);
        let q = Program::new(vec![Instr::Inc(0), Instr::Halt]).unwrap();
        assert_ne!(encode(&p).unwrap(), encode(&q).unwrap());
        for e in 0..2000u64 {
            if let Shape::Raw(p) = shape(e) {
                assert_eq!(encode(&p).unwrap(), e);
            }
        }
    }

    #[test]
    fn swap_program_runs_permutation() {
        let s = SwapList::new(vec![(0, 1), (1, 2)]).unwrap();
        let e = swap_program(&s).unwrap();
        for n in 0..10 {
            assert_eq!(
                decode(e).run(n, &zero(), 10_000),
                RunOutcome::Halted(s.apply(n))
            );
        }
        assert_eq!(swap_program(&SwapList::identity()).unwrap(), 2);
    }

    #[test]
    fn compose_semantics() {
        let f = |e| decode(e).run(0, &zero(), 10_000);
        let ss = compose(successor_code(), successor_code()).unwrap();
        assert_eq!(f(ss), RunOutcome::Halted(2));
        let d = compose(successor_code(), 0).unwrap();
        assert_eq!(f(d), RunOutcome::Loops);
        let s = SwapList::new(vec![(0, 3)]).unwrap();
        let c = compose(swap_program(&s).unwrap(), successor_code()).unwrap();
        for n in 0..8 {
            assert_eq!(
                decode(c).run(n, &zero(), 10_000),
                RunOutcome::Halted(s.apply(n + 1))
            );
        }
    }

    #[test]
    fn compose_clears_scratch_registers() {
        // inner leaves r1 = 1; outer adds r1 into r0
        let inner: Program = "INC r1\nHALT".parse().unwrap();
        let outer: Program = "JZ r1 3\nDEC r1\nINC r0\nHALT".parse().unwrap();
        let c = compose(encode(&outer).unwrap(), encode(&inner).unwrap()).unwrap();
        assert_eq!(decode(c).run(4, &zero(), 1000), RunOutcome::Halted(4));
    }

    #[test]
    fn special_form() {
        let e = special_encode(5, 7, 9).unwrap();
        assert!(form(e));
        assert_eq!(
            (code1(e).unwrap(), code2(e).unwrap(), main(e).unwrap()),
            (5, 7, 9)
        );
        assert!(!form(identity_code()));
        assert!(code1(identity_code()).is_err());
        let id = special_encode(3, 2, identity_code()).unwrap();
        assert_eq!(decode(id).run(4, &zero(), 1000), RunOutcome::Halted(4));
    }

    #[test]
    fn padding() {
        let e = identity_code();
        assert!(pad(e, e).unwrap() > e);
        let p = pad(e, 1000).unwrap();
        assert!(p > 1000);
        for n in 0..10 {
            assert_eq!(decode(p).run(n, &zero(), 10_000), RunOutcome::Halted(n));
        }
        assert!(pad(p, 5000).unwrap() > 5000);
    }

    #[test]
    fn bound_set_examples() {
        let s01 = swap_program(&SwapList::new(vec![(0, 1)]).unwrap()).unwrap();
        assert!(in_bound_set(s01, 1));
        for n in 1..6u64 {
            let s = swap_program(&SwapList::new(vec![(0, 2 * n)]).unwrap()).unwrap();
            assert!(!in_bound_set(s, n));
        }
        let c = compose(s01, 7).unwrap();
        assert!(in_bound_set(c, 8));
        assert!(!in_bound_set(c, 7));
        assert!(!in_bound_set(identity_code(), 10));
    }
}
