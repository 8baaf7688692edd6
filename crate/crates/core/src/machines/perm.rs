//! Finite swappings: lists of transpositions and the permutations they induce.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite list of transpositions, applied in list order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u64, u64)>", into = "Vec<(u64, u64)>")]
pub struct SwapList(Vec<(u64, u64)>);

impl SwapList {
    pub fn new(pairs: Vec<(u64, u64)>) -> Result<Self> {
        if let Some(&(a, _)) = pairs.iter().find(|(a, b)| a == b) {
            return Err(Error::repr(format!(
                "transposition ({a},{a}) is not a swap"
            )));
        }
        Ok(SwapList(pairs))
    }

    pub fn identity() -> Self {
        SwapList(vec![])
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, a: u64, b: u64) {
        if a != b {
            self.0.push((a, b));
        }
    }

    /// Concatenation: `self` first, then `other`.
    pub fn then(&self, other: &SwapList) -> SwapList {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SwapList(v)
    }

    pub fn inverse(&self) -> SwapList {
        SwapList(self.0.iter().rev().copied().collect())
    }

    pub fn max_entry(&self) -> Option<u64> {
        self.0.iter().map(|&(a, b)| a.max(b)).max()
    }

    pub fn apply(&self, n: u64) -> u64 {
        self.0.iter().fold(n, |v, &(a, b)| {
            if v == a {
                b
            } else if v == b {
                a
            } else {
                v
            }
        })
    }
}

/// Transpositions applied in list order.
pub fn swap_apply(s: &SwapList, n: u64) -> u64 {
    s.apply(n)
}

impl TryFrom<Vec<(u64, u64)>> for SwapList {
    type Error = Error;
    fn try_from(v: Vec<(u64, u64)>) -> Result<Self> {
        SwapList::new(v)
    }
}

impl From<SwapList> for Vec<(u64, u64)> {
    fn from(s: SwapList) -> Self {
        s.0
    }
}

impl fmt::Display for SwapList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for SwapList {
    type Err = Error;
    /// `"0-1,2-5"`; the empty string is the identity.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(SwapList::identity());
        }
        let mut v = vec![];
        for t in s.split(',') {
            let (a, b) = t
                .split_once('-')
                .ok_or_else(|| Error::parse(t, "expected `a-b`"))?;
            let a = a
                .trim()
                .parse()
                .map_err(|_| Error::parse(t, "bad number"))?;
            let b = b
                .trim()
                .parse()
                .map_err(|_| Error::parse(t, "bad number"))?;
            v.push((a, b));
        }
        SwapList::new(v)
    }
}

/// A permutation of ℕ moving only points below `images.len()`.
/// Trailing fixed points are trimmed, so equality is equality of maps.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<u64>,
}

impl Perm {
    pub fn identity() -> Self {
        Perm { images: vec![] }
    }

    fn trimmed(mut images: Vec<u64>) -> Self {
        while let Some(&last) = images.last() {
            if last as usize + 1 == images.len() {
                images.pop();
            } else {
                break;
            }
        }
        Perm { images }
    }

    pub fn from_images(images: Vec<u64>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &v in &images {
            if v as usize >= m || seen[v as usize] {
                return Err(Error::repr("images do not form a permutation"));
            }
            seen[v as usize] = true;
        }
        Ok(Self::trimmed(images))
    }

    pub fn from_swaps(s: &SwapList) -> Self {
        let m = s.max_entry().map_or(0, |v| v as usize + 1);
        // holder[v] is the point currently sitting at v
        let mut holder: Vec<u64> = (0..m as u64).collect();
        for &(a, b) in s.pairs() {
            holder.swap(a as usize, b as usize);
        }
        let mut images = vec![0; m];
        for (v, &i) in holder.iter().enumerate() {
            images[i as usize] = v as u64;
        }
        Self::trimmed(images)
    }

    /// One past the largest moved point (0 for the identity).
    pub fn support_len(&self) -> u64 {
        self.images.len() as u64
    }

    pub fn images(&self) -> &[u64] {
        &self.images
    }

    pub fn apply(&self, n: u64) -> u64 {
        self.images.get(n as usize).copied().unwrap_or(n)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u64;
        }
        Perm { images: inv }
    }

    /// Transpositions that realise this permutation (all entries below `support_len`).
    /// A cycle `c0 → c1 → … → c_{k-1}` becomes `(c0,c1), (c0,c2), …, (c0,c_{k-1})`.
    pub fn to_swaps(&self) -> SwapList {
        let mut out = SwapList::identity();
        let mut done = vec![false; self.images.len()];
        for start in 0..self.images.len() {
            if done[start] {
                continue;
            }
            done[start] = true;
            let mut c = self.images[start] as usize;
            while c != start {
                done[c] = true;
                out.push(start as u64, c as u64);
                c = self.images[c] as usize;
            }
        }
        out
    }

    /// Lehmer rank: `Σ c_i · i!` with `c_i = #{j < i : p(j) > p(i)}`.
    /// A bijection between finitary permutations and ℕ.
    pub fn rank(&self) -> Result<u64> {
        let mut rank: u64 = 0;
        let mut fact: u64 = 1;
        for i in 0..self.images.len() {
            if i > 0 {
                fact = match fact.checked_mul(i as u64) {
                    Some(f) => f,
                    None => return Err(Error::repr("permutation rank exceeds 64 bits")),
                };
            }
            let c = self.images[..i]
                .iter()
                .filter(|&&v| v > self.images[i])
                .count() as u64;
            rank = c
                .checked_mul(fact)
                .and_then(|t| rank.checked_add(t))
                .ok_or_else(|| Error::repr("permutation rank exceeds 64 bits"))?;
        }
        Ok(rank)
    }

    pub fn unrank(mut r: u64) -> Perm {
        let mut digits = vec![0u64];
        let mut base = 2u64;
        while r > 0 {
            digits.push(r % base);
            r /= base;
            base += 1;
        }
        // digits[i] is c_i with weight i!
        let m = digits.len();
        let mut remaining: Vec<u64> = (0..m as u64).collect();
        let mut images = vec![0; m];
        for i in (0..m).rev() {
            let pos = i - digits[i] as usize;
            images[i] = remaining.remove(pos);
        }
        Self::trimmed(images)
    }
}
