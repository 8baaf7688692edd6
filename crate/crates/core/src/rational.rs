//! Reduced rationals with `i64` parts.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `num / den` in lowest terms with `den > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::repr("zero denominator"));
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        Ok(Rational { num: n, den: d })
    }

    pub fn integer(n: i64) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn floor(&self) -> i64 {
        Integer::div_floor(&self.num, &self.den)
    }

    /// Representative of `self mod 1` in `[0, 1)`.
    pub fn frac(&self) -> Rational {
        Rational {
            num: self.num.mod_floor(&self.den),
            den: self.den,
        }
    }

    fn from_i128(num: i128, den: i128) -> Self {
        let g = num.gcd(&den);
        let (n, d) = (num / g, den / g);
        Rational {
            num: i64::try_from(n).expect("rational numerator overflow"),
            den: i64::try_from(d).expect("rational denominator overflow"),
        }
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, o: Rational) -> Rational {
        let num = self.num as i128 * o.den as i128 + o.num as i128 * self.den as i128;
        Rational::from_i128(num, self.den as i128 * o.den as i128)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, o: Rational) -> Rational {
        self + (-o)
    }
}

impl Ord for Rational {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.num as i128 * o.den as i128).cmp(&(o.num as i128 * self.den as i128))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Rational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (p, q) = t.split_once('/').unwrap_or((t, "1"));
        let p: i64 = p
            .trim()
            .parse()
            .map_err(|_| Error::parse(s, "bad numerator"))?;
        let q: i64 = q
            .trim()
            .parse()
            .map_err(|_| Error::parse(s, "bad denominator"))?;
        if q == 0 {
            return Err(Error::parse(s, "zero denominator"));
        }
        Rational::new(p, q)
    }
}

impl TryFrom<String> for Rational {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Rational> for String {
    fn from(r: Rational) -> String {
        r.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn reduces_and_orders() {
        assert_eq!(q("2/4"), q("1/2"));
        assert_eq!(q("3/-6"), q("-1/2"));
        assert!(q("1/3") < q("1/2"));
        assert_eq!(q("3/2") - q("1/2"), Rational::integer(1));
    }

    #[test]
    fn floor_and_frac() {
        assert_eq!(q("-1/2").floor(), -1);
        assert_eq!(q("-1/2").frac(), q("1/2"));
        assert_eq!(q("7/3").frac(), q("1/3"));
    }

    #[test]
    fn text() {
        assert_eq!(q("5").to_string(), "5/1");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("a/2".parse::<Rational>().is_err());
    }
}
