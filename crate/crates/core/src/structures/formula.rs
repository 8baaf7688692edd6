//! Quantifier-free formulas over variable equalities.
//!
//! Text form is prefix notation: `top`, `bot`, `eq i j`, `not f`,
//! `and f g`, `or f g`. The extra atom `val i c` (`v_i = c`) exists only
//! for defaults produced by relationalization.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TrivialFormula {
    Top,
    Bot,
    Eq(usize, usize),
    /// Designated-value atom `v_i = c`.
    Val(usize, u64),
    Not(Box<TrivialFormula>),
    And(Box<TrivialFormula>, Box<TrivialFormula>),
    Or(Box<TrivialFormula>, Box<TrivialFormula>),
}

use TrivialFormula::*;

impl TrivialFormula {
    pub fn eq(i: usize, j: usize) -> Self {
        if i == j {
            Top
        } else {
            Eq(i, j)
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: TrivialFormula) -> Self {
        match f {
            Top => Bot,
            Bot => Top,
            Not(g) => *g,
            g => Not(Box::new(g)),
        }
    }

    pub fn and(f: TrivialFormula, g: TrivialFormula) -> Self {
        match (f, g) {
            (Bot, _) | (_, Bot) => Bot,
            (Top, h) | (h, Top) => h,
            (f, g) if f == g => f,
            (f, g) => And(Box::new(f), Box::new(g)),
        }
    }

    pub fn or(f: TrivialFormula, g: TrivialFormula) -> Self {
        match (f, g) {
            (Top, _) | (_, Top) => Top,
            (Bot, h) | (h, Bot) => h,
            (f, g) if f == g => f,
            (f, g) => Or(Box::new(f), Box::new(g)),
        }
    }

    pub fn all(fs: impl IntoIterator<Item = TrivialFormula>) -> Self {
        fs.into_iter().fold(Top, TrivialFormula::and)
    }

    pub fn any(fs: impl IntoIterator<Item = TrivialFormula>) -> Self {
        fs.into_iter().fold(Bot, TrivialFormula::or)
    }

    pub fn eval(&self, t: &[u64]) -> bool {
        match self {
            Top => true,
            Bot => false,
            Eq(i, j) => t[*i] == t[*j],
            Val(i, c) => t[*i] == *c,
            Not(f) => !f.eval(t),
            And(f, g) => f.eval(t) && g.eval(t),
            Or(f, g) => f.eval(t) || g.eval(t),
        }
    }

    /// Largest variable index mentioned.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Top | Bot => None,
            Eq(i, j) => Some(*i.max(j)),
            Val(i, _) => Some(*i),
            Not(f) => f.max_var(),
            And(f, g) | Or(f, g) => f.max_var().max(g.max_var()),
        }
    }

    /// Constants of `val` atoms.
    pub fn constants(&self) -> Vec<u64> {
        let mut out = vec![];
        self.walk(&mut |f| {
            if let Val(_, c) = f {
                out.push(*c);
            }
        });
        out
    }

    pub fn uses_val(&self) -> bool {
        !self.constants().is_empty()
    }

    fn walk(&self, visit: &mut impl FnMut(&TrivialFormula)) {
        visit(self);
        match self {
            Not(f) => f.walk(visit),
            And(f, g) | Or(f, g) => {
                f.walk(visit);
                g.walk(visit);
            }
            _ => {}
        }
    }

    /// Replace variable `v_m` by `v_{map[m]}`.
    pub fn substitute(&self, map: &[usize]) -> TrivialFormula {
        match self {
            Top => Top,
            Bot => Bot,
            Eq(i, j) => TrivialFormula::eq(map[*i], map[*j]),
            Val(i, c) => Val(map[*i], *c),
            Not(f) => TrivialFormula::not(f.substitute(map)),
            And(f, g) => TrivialFormula::and(f.substitute(map), g.substitute(map)),
            Or(f, g) => TrivialFormula::or(f.substitute(map), g.substitute(map)),
        }
    }

    pub fn check_arity(&self, arity: usize) -> Result<()> {
        match self.max_var() {
            Some(v) if v >= arity => Err(Error::repr(format!(
                "formula mentions v{v} but the arity is {arity}"
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for TrivialFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Top => write!(f, "top"),
            Bot => write!(f, "bot"),
            Eq(i, j) => write!(f, "eq {i} {j}"),
            Val(i, c) => write!(f, "val {i} {c}"),
            Not(g) => write!(f, "not {g}"),
            And(g, h) => write!(f, "and {g} {h}"),
            Or(g, h) => write!(f, "or {g} {h}"),
        }
    }
}

fn parse_tokens<'a>(toks: &mut impl Iterator<Item = &'a str>) -> Result<TrivialFormula> {
    let head = toks
        .next()
        .ok_or_else(|| Error::parse("", "formula ended early"))?;
    let mut num = |what: &str| -> Result<u64> {
        let t = toks
            .next()
            .ok_or_else(|| Error::parse(head, format!("missing {what}")))?;
        t.parse()
            .map_err(|_| Error::parse(t, format!("expected {what}")))
    };
    Ok(match head {
        "top" => Top,
        "bot" => Bot,
        "eq" => Eq(num("variable")? as usize, num("variable")? as usize),
        "val" => Val(num("variable")? as usize, num("constant")?),
        "not" => Not(Box::new(parse_tokens(toks)?)),
        "and" => And(Box::new(parse_tokens(toks)?), Box::new(parse_tokens(toks)?)),
        "or" => Or(Box::new(parse_tokens(toks)?), Box::new(parse_tokens(toks)?)),
        other => return Err(Error::parse(other, "unknown formula head")),
    })
}

impl FromStr for TrivialFormula {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut toks = s.split_whitespace();
        let f = parse_tokens(&mut toks)?;
        match toks.next() {
            Some(t) => Err(Error::parse(t, "trailing input after formula")),
            None => Ok(f),
        }
    }
}
