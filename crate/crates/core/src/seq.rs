//! Eventually periodic sequences of naturals in canonical form.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_integer::lcm;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `prefix` followed by `period` repeated forever.
///
/// The period is primitive and the prefix is as short as possible, so two
/// sequences are equal as functions exactly when their fields are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct EPSeq {
    prefix: Vec<u64>,
    period: Vec<u64>,
}

fn primitive_root(period: &[u64]) -> usize {
    let n = period.len();
    (1..=n)
        .find(|&d| n.is_multiple_of(d) && (d..n).all(|i| period[i] == period[i - d]))
        .unwrap_or(n)
}

impl EPSeq {
    /// Canonical form of `prefix · period^ω`.
    pub fn new(prefix: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::repr("empty period"));
        }
        let mut prefix = prefix;
        let mut period = period;
        let d = primitive_root(&period);
        period.truncate(d);
        while let (Some(&p), Some(&q)) = (prefix.last(), period.last()) {
            if p != q {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        Ok(EPSeq { prefix, period })
    }

    pub fn constant(v: u64) -> Self {
        EPSeq {
            prefix: vec![],
            period: vec![v],
        }
    }

    /// Builds the sequence whose value at `i` is `f(i)`, where `f` is assumed
    /// periodic with period `period_len` from index `prefix_len` on.
    pub fn from_fn(prefix_len: usize, period_len: usize, f: impl Fn(usize) -> u64) -> Self {
        assert!(period_len > 0, "period length must be positive");
        let prefix = (0..prefix_len).map(&f).collect();
        let period = (prefix_len..prefix_len + period_len).map(&f).collect();
        Self::new(prefix, period).expect("nonempty period")
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    pub fn at(&self, i: usize) -> u64 {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    /// Index range `[0, end)` that determines every pointwise comparison
    /// between `self` and `other`: both prefixes plus one common period.
    pub fn joint_window(&self, other: &EPSeq) -> (usize, usize) {
        let start = self.prefix.len().max(other.prefix.len());
        let p = lcm(self.period.len(), other.period.len());
        (start, p)
    }

    pub fn is_binary(&self) -> bool {
        self.prefix
            .iter()
            .chain(self.period.iter())
            .all(|&v| v <= 1)
    }

    pub fn max_value(&self) -> u64 {
        self.prefix
            .iter()
            .chain(self.period.iter())
            .copied()
            .max()
            .unwrap_or(0)
    }

    /// All values that occur somewhere in the sequence.
    pub fn values(&self) -> BTreeSet<u64> {
        self.prefix
            .iter()
            .chain(self.period.iter())
            .copied()
            .collect()
    }

    /// Whether the sequence takes a single value everywhere.
    pub fn is_constant(&self) -> bool {
        self.prefix.is_empty() && self.period.len() == 1
    }

    /// The sequence `i ↦ self(i + k)`.
    pub fn shift(&self, k: usize) -> EPSeq {
        if k <= self.prefix.len() {
            return EPSeq::new(self.prefix[k..].to_vec(), self.period.clone()).unwrap();
        }
        let r = (k - self.prefix.len()) % self.period.len();
        let mut period = self.period.clone();
        period.rotate_left(r);
        EPSeq::new(vec![], period).unwrap()
    }

    /// `head` followed by `self`.
    pub fn prepend(&self, head: &[u64]) -> EPSeq {
        let mut prefix = head.to_vec();
        prefix.extend_from_slice(&self.prefix);
        EPSeq::new(prefix, self.period.clone()).unwrap()
    }

    pub fn map(&self, f: impl Fn(u64) -> u64) -> EPSeq {
        EPSeq::new(
            self.prefix.iter().map(|&v| f(v)).collect(),
            self.period.iter().map(|&v| f(v)).collect(),
        )
        .unwrap()
    }

    /// Pointwise combination of two sequences.
    pub fn zip_with(&self, other: &EPSeq, f: impl Fn(u64, u64) -> u64) -> EPSeq {
        let (start, p) = self.joint_window(other);
        EPSeq::from_fn(start, p, |i| f(self.at(i), other.at(i)))
    }

    /// Replace finitely many positions.
    pub fn with_values(&self, edits: &[(usize, u64)]) -> EPSeq {
        let end = edits.iter().map(|&(i, _)| i + 1).max().unwrap_or(0);
        let start = self.prefix.len().max(end);
        // later edits win
        let edits: HashMap<usize, u64> = edits.iter().copied().collect();
        EPSeq::from_fn(start, self.period.len(), |i| {
            edits.get(&i).copied().unwrap_or_else(|| self.at(i))
        })
    }

    /// Eventual equality: the tails agree from some index on.
    pub fn eventually_equal(&self, other: &EPSeq) -> bool {
        let (start, p) = self.joint_window(other);
        (start..start + p).all(|i| self.at(i) == other.at(i))
    }

    /// Least index at which the two sequences differ, if any.
    pub fn first_difference(&self, other: &EPSeq) -> Option<usize> {
        let (start, p) = self.joint_window(other);
        (0..start + p).find(|&i| self.at(i) != other.at(i))
    }

    /// Lexicographic strict order.
    pub fn lex_less(&self, other: &EPSeq) -> bool {
        match self.first_difference(other) {
            Some(i) => self.at(i) < other.at(i),
            None => false,
        }
    }

    pub fn lex_cmp(&self, other: &EPSeq) -> Ordering {
        match self.first_difference(other) {
            Some(i) => self.at(i).cmp(&other.at(i)),
            None => Ordering::Equal,
        }
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for EPSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", join(&self.prefix), join(&self.period))
    }
}

fn parse_list(s: &str, whole: &str) -> Result<Vec<u64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::parse(t.trim(), format!("not a natural number in `{whole}`")))
        })
        .collect()
}

impl FromStr for EPSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (pre, per) = s
            .split_once(';')
            .ok_or_else(|| Error::parse(s, "expected `prefix;period`"))?;
        let prefix = parse_list(pre, s)?;
        let period = parse_list(per, s)?;
        if period.is_empty() {
            return Err(Error::parse(s, "empty period"));
        }
        EPSeq::new(prefix, period)
    }
}

impl TryFrom<String> for EPSeq {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<EPSeq> for String {
    fn from(x: EPSeq) -> String {
        x.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> EPSeq {
        t.parse().unwrap()
    }

    #[test]
    fn normalize_examples() {
        let a = EPSeq::new(vec![0, 1], vec![0, 1]).unwrap();
        assert_eq!((a.prefix(), a.period()), (&[][..], &[0, 1][..]));
        let b = EPSeq::new(vec![], vec![1, 1, 1]).unwrap();
        assert_eq!((b.prefix(), b.period()), (&[][..], &[1][..]));
        let c = EPSeq::new(vec![1], vec![0, 0]).unwrap();
        assert_eq!((c.prefix(), c.period()), (&[1][..], &[0][..]));
        assert!(EPSeq::new(vec![1], vec![]).is_err());
    }

    #[test]
    fn at_examples() {
        assert_eq!(s(";0").at(7), 0);
        assert_eq!(s("1;0").at(0), 1);
        assert_eq!(s("0,0,1;0").at(2), 1);
    }

    #[test]
    fn eventual_equality_examples() {
        assert!(s("1;0").eventually_equal(&s(";0")));
        assert!(!s(";0,1").eventually_equal(&s(";1,0")));
        let x = s("3,1;2,5");
        assert!(x.eventually_equal(&x));
    }

    #[test]
    fn lex_examples() {
        assert!(s(";0").lex_less(&s(";1")));
        let x = s("0,1;0");
        assert!(!x.lex_less(&x));
        assert!(!s("0,1;0").lex_less(&s("0,0;1")));
    }

    #[test]
    fn shift_and_prepend() {
        let x = s("5;1,2");
        assert_eq!(x.shift(1), s(";1,2"));
        assert_eq!(x.shift(2), s(";2,1"));
        assert_eq!(x.shift(2).prepend(&[5, 1]), x);
    }

    #[test]
    fn with_values_edits() {
        let x = s(";0,1");
        let y = x.with_values(&[(4, 7)]);
        assert_eq!(y.at(4), 7);
        for i in (0..12).filter(|&i| i != 4) {
            assert_eq!(y.at(i), x.at(i));
        }
    }

    #[test]
    fn text_round_trip() {
        for t in ["0,0,1;0", ";0", "1,2;3,4"] {
            assert_eq!(s(t).to_string(), t);
        }
        assert!("1,x;0".parse::<EPSeq>().is_err());
        assert!("1,2".parse::<EPSeq>().is_err());
    }
}
