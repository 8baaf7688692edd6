//! Register machines, their numeric codes, and the program transformations
//! (padding, composition, swapping programs, special forms) built on them.
//!
//! Calling convention: the input is placed in `r0`, every other register
//! starts at 0, and the output is `r0` when the machine halts. Running past
//! the last instruction also halts.

mod code;
mod perm;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::seq::EPSeq;
use crate::tri::{Fuel, Tri};

pub use code::{
    code1, code2, compose, decode, e_star, encode, form, identity_code, in_bound_set,
    in_bound_set_two_sided, main, pad, pair, perm_program, shape, special_encode, successor_code,
    swap_program, unpair, zero_code, ProgramCode, Shape,
};
pub use perm::{swap_apply, Perm, SwapList};

/// Registers above this index make a code malformed.
pub const MAX_REGISTER: u32 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Instr {
    Inc(u32),
    /// Decrement, saturating at 0.
    Dec(u32),
    /// Jump to the target if the register is 0.
    Jz(u32, usize),
    /// `Oracle(r, s)` stores `oracle(value of r)` in `s`.
    Oracle(u32, u32),
    Halt,
}

impl Instr {
    fn registers(&self) -> impl Iterator<Item = u32> {
        let v: [Option<u32>; 2] = match *self {
            Instr::Inc(r) | Instr::Dec(r) | Instr::Jz(r, _) => [Some(r), None],
            Instr::Oracle(r, s) => [Some(r), Some(s)],
            Instr::Halt => [None, None],
        };
        v.into_iter().flatten()
    }
}

impl fmt::Display for Instr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instr::Inc(r) => write!(f, "INC r{r}"),
            Instr::Dec(r) => write!(f, "DEC r{r}"),
            Instr::Jz(r, t) => write!(f, "JZ r{r} {t}"),
            Instr::Oracle(r, s) => write!(f, "ORACLE r{r} r{s}"),
            Instr::Halt => f.write_str("HALT"),
        }
    }
}

/// A well-formed instruction list: jump targets in range, at least one
/// `HALT`, registers at most [`MAX_REGISTER`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Program {
    instrs: Vec<Instr>,
}

impl Program {
    pub fn new(instrs: Vec<Instr>) -> Result<Self> {
        let len = instrs.len();
        for (i, ins) in instrs.iter().enumerate() {
            if let Instr::Jz(_, t) = ins {
                if *t >= len {
                    return Err(Error::repr(format!(
                        "instruction {i}: jump target {t} out of range"
                    )));
                }
            }
            if ins.registers().any(|r| r > MAX_REGISTER) {
                return Err(Error::repr(format!(
                    "instruction {i}: register above r{MAX_REGISTER}"
                )));
            }
        }
        if !instrs.contains(&Instr::Halt) {
            return Err(Error::repr("program has no HALT"));
        }
        Ok(Program { instrs })
    }

    pub(crate) fn from_parts_unchecked(instrs: Vec<Instr>) -> Self {
        debug_assert!(Program::new(instrs.clone()).is_ok());
        Program { instrs }
    }

    /// The canonical diverging program: `JZ r1 0; HALT`.
    pub fn diverging() -> Self {
        Program {
            instrs: vec![Instr::Jz(1, 0), Instr::Halt],
        }
    }

    pub fn instrs(&self) -> &[Instr] {
        &self.instrs
    }

    pub fn len(&self) -> usize {
        self.instrs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instrs.is_empty()
    }

    pub fn max_register(&self) -> u32 {
        self.instrs
            .iter()
            .flat_map(|i| i.registers())
            .max()
            .unwrap_or(0)
    }

    pub fn run(&self, input: u64, oracle: &EPSeq, steps: u64) -> RunOutcome {
        let mut regs = vec![0u64; self.max_register() as usize + 1];
        regs[0] = input;
        let mut pc = 0usize;
        let mut used = 0u64;
        // Brent-style snapshot: a repeated configuration proves divergence
        let mut snap = (pc, regs.clone());
        let mut next_snap = 1u64;
        while pc < self.instrs.len() {
            if used == steps {
                return RunOutcome::OutOfFuel;
            }
            if used == next_snap {
                snap = (pc, regs.clone());
                next_snap *= 2;
            } else if used > 0 && snap.0 == pc && snap.1 == regs {
                return RunOutcome::Loops;
            }
            used += 1;
            match self.instrs[pc] {
                Instr::Inc(r) => {
                    regs[r as usize] = regs[r as usize].saturating_add(1);
                    pc += 1;
                }
                Instr::Dec(r) => {
                    regs[r as usize] = regs[r as usize].saturating_sub(1);
                    pc += 1;
                }
                Instr::Jz(r, t) => {
                    pc = if regs[r as usize] == 0 { t } else { pc + 1 };
                }
                Instr::Oracle(r, s) => {
                    regs[s as usize] = oracle.at(regs[r as usize] as usize);
                    pc += 1;
                }
                Instr::Halt => return RunOutcome::Halted(regs[0]),
            }
        }
        RunOutcome::Halted(regs[0])
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ins in &self.instrs {
            writeln!(f, "{ins}")?;
        }
        Ok(())
    }
}

fn parse_reg(t: &str) -> Result<u32> {
    let t = t.trim_end_matches(',');
    t.strip_prefix('r')
        .or_else(|| t.strip_prefix('R'))
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| Error::parse(t, "expected a register like r0"))
}

impl FromStr for Program {
    type Err = Error;
    /// One instruction per line; `#` starts a comment.
    fn from_str(s: &str) -> Result<Self> {
        let mut instrs = vec![];
        for line in s.lines() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let want = |n: usize| -> Result<()> {
                if toks.len() == n {
                    Ok(())
                } else {
                    Err(Error::parse(line, format!("expected {} operand(s)", n - 1)))
                }
            };
            let ins = match toks[0].to_ascii_uppercase().as_str() {
                "INC" => {
                    want(2)?;
                    Instr::Inc(parse_reg(toks[1])?)
                }
                "DEC" => {
                    want(2)?;
                    Instr::Dec(parse_reg(toks[1])?)
                }
                "JZ" => {
                    want(3)?;
                    let t = toks[2]
                        .parse()
                        .map_err(|_| Error::parse(toks[2], "bad jump target"))?;
                    Instr::Jz(parse_reg(toks[1])?, t)
                }
                "ORACLE" => {
                    want(3)?;
                    Instr::Oracle(parse_reg(toks[1])?, parse_reg(toks[2])?)
                }
                "HALT" => {
                    want(1)?;
                    Instr::Halt
                }
                other => return Err(Error::parse(other, "unknown instruction")),
            };
            instrs.push(ins);
        }
        Program::new(instrs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RunOutcome {
    Halted(u64),
    OutOfFuel,
    /// A configuration repeated, so the run never halts.
    Loops,
}

impl RunOutcome {
    pub fn value(self) -> Option<u64> {
        match self {
            RunOutcome::Halted(v) => Some(v),
            _ => None,
        }
    }
}

/// `φ_e^oracle(input)` with at most `fuel.steps` steps.
pub fn run(e: ProgramCode, input: u64, oracle: &EPSeq, fuel: Fuel) -> RunOutcome {
    decode(e).run(input, oracle, fuel.steps)
}

/// Outcomes of one program on the inputs `0..fuel.inputs`.
pub fn run_table(p: &Program, oracle: &EPSeq, fuel: Fuel) -> Vec<RunOutcome> {
    (0..fuel.inputs)
        .map(|n| p.run(n, oracle, fuel.steps))
        .collect()
}

type TableCache = HashMap<(ProgramCode, Fuel), Arc<Vec<RunOutcome>>>;

/// Oracle-free outcome table of code `e`, memoized per `(e, fuel)` since
/// the graph relations rerun the same small codes on every query.
pub fn code_table(e: ProgramCode, fuel: Fuel) -> Arc<Vec<RunOutcome>> {
    static CACHE: OnceLock<Mutex<TableCache>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().expect("cache lock").get(&(e, fuel)) {
        return Arc::clone(t);
    }
    let t = Arc::new(run_table(&decode(e), &EPSeq::constant(0), fuel));
    let mut map = cache.lock().expect("cache lock");
    // bound memory: the working set is a few dozen small codes
    if map.len() >= 4096 {
        map.clear();
    }
    map.insert((e, fuel), Arc::clone(&t));
    t
}

/// How strong a reduction check is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionKind {
    /// Injective, membership-preserving (bijectivity is not finitely refutable).
    OneOne,
    /// Membership-preserving only.
    ManyOne,
}

/// Bounded check that `φ_e` reduces `a` to `b`: `a(n) = b(φ_e(n))` on every
/// checked input where the program halts, plus injectivity for
/// [`ReductionKind::OneOne`]. Never `Verified`: totality is not decidable.
pub fn reduction_check(
    e: ProgramCode,
    a: &EPSeq,
    b: &EPSeq,
    kind: ReductionKind,
    fuel: Fuel,
) -> Tri {
    table_reduction_check(&code_table(e, fuel), a, b, kind, fuel)
}

pub(crate) fn table_reduction_check(
    table: &[RunOutcome],
    a: &EPSeq,
    b: &EPSeq,
    kind: ReductionKind,
    fuel: Fuel,
) -> Tri {
    let mut seen = std::collections::HashSet::new();
    for (n, out) in table.iter().enumerate() {
        if *out == RunOutcome::Loops {
            return Tri::Refuted;
        }
        if let RunOutcome::Halted(v) = *out {
            if a.at(n) != b.at(v as usize) {
                return Tri::Refuted;
            }
            if kind == ReductionKind::OneOne && !seen.insert(v) {
                return Tri::Refuted;
            }
        }
    }
    Tri::Unknown { fuel }
}
