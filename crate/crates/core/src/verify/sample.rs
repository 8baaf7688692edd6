//! Seeded point generators.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::machines::SwapList;
use crate::rational::Rational;
use crate::seq::EPSeq;
use crate::structures::{FinRel, LStruct, TrivialFormula};

/// Independent stream number `stream` of `seed`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Eventually periodic sequences with bounded prefix, period and alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeqGen {
    pub max_prefix: usize,
    pub max_period: usize,
    pub alphabet: u64,
}

impl SeqGen {
    pub fn binary() -> Self {
        SeqGen {
            max_prefix: 6,
            max_period: 4,
            alphabet: 2,
        }
    }

    pub fn sample(&self, rng: &mut impl Rng) -> EPSeq {
        let pre = rng.gen_range(0..=self.max_prefix);
        let per = rng.gen_range(1..=self.max_period.max(1));
        let mut v = || rng.gen_range(0..self.alphabet.max(1));
        let prefix = (0..pre).map(|_| v()).collect();
        let period = (0..per).map(|_| v()).collect();
        EPSeq::new(prefix, period).expect("nonempty period")
    }

    pub fn non_constant(&self, rng: &mut impl Rng) -> EPSeq {
        assert!(self.alphabet >= 2, "need two letters");
        loop {
            let x = self.sample(rng);
            if !x.is_constant() {
                return x;
            }
        }
    }

    /// `x` with between one and three positions below `window` rewritten,
    /// differing from `x`.
    pub fn edit(&self, x: &EPSeq, window: usize, rng: &mut impl Rng) -> EPSeq {
        loop {
            let k = rng.gen_range(1..=3);
            let edits: Vec<(usize, u64)> = (0..k)
                .map(|_| (rng.gen_range(0..window), rng.gen_range(0..self.alphabet)))
                .collect();
            let y = x.with_values(&edits);
            if &y != x {
                return y;
            }
        }
    }
}

pub fn rational(rng: &mut impl Rng, max_num: i64, max_den: i64) -> Rational {
    let q = rng.gen_range(1..=max_den);
    let p = rng.gen_range(-max_num..=max_num);
    Rational::new(p, q).expect("positive denominator")
}

/// Between one and `max_swaps` transpositions of numbers up to `max_entry`.
pub fn swap_list(rng: &mut impl Rng, max_swaps: usize, max_entry: u64) -> SwapList {
    let k = rng.gen_range(1..=max_swaps);
    let mut s = SwapList::identity();
    while s.pairs().len() < k {
        let (a, b) = (rng.gen_range(0..=max_entry), rng.gen_range(0..=max_entry));
        s.push(a, b);
    }
    s
}

/// Structures over a random language of one or two symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructGen {
    pub max_symbols: usize,
    pub max_arity: usize,
    pub max_exceptions: usize,
    pub max_entry: u64,
}

impl Default for StructGen {
    fn default() -> Self {
        StructGen {
            max_symbols: 2,
            max_arity: 2,
            max_exceptions: 3,
            max_entry: 4,
        }
    }
}

impl StructGen {
    pub fn language(&self, rng: &mut impl Rng) -> Vec<usize> {
        let n = rng.gen_range(1..=self.max_symbols.max(1));
        (0..n)
            .map(|_| rng.gen_range(1..=self.max_arity.max(1)))
            .collect()
    }

    pub fn relation(&self, arity: usize, rng: &mut impl Rng) -> FinRel {
        let mut defaults = vec![TrivialFormula::Top, TrivialFormula::Bot];
        if arity >= 2 {
            defaults.push(TrivialFormula::Eq(0, 1));
            defaults.push(TrivialFormula::not(TrivialFormula::Eq(0, 1)));
        }
        let default = defaults.choose(rng).expect("nonempty").clone();
        let m = rng.gen_range(0..=self.max_exceptions);
        let mut exc: Vec<Vec<u64>> = vec![];
        for _ in 0..m {
            let t: Vec<u64> = (0..arity)
                .map(|_| rng.gen_range(0..=self.max_entry))
                .collect();
            if !exc.contains(&t) {
                exc.push(t);
            }
        }
        FinRel::new(arity, default, exc).expect("well-formed relation")
    }

    pub fn structure(&self, arities: &[usize], rng: &mut impl Rng) -> LStruct {
        LStruct::new(arities.iter().map(|&a| self.relation(a, rng)).collect())
    }

    pub fn sample(&self, rng: &mut impl Rng) -> LStruct {
        let lang = self.language(rng);
        self.structure(&lang, rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let g = SeqGen::binary();
        let a: Vec<EPSeq> = (0..5).map(|_| g.sample(&mut rng_for(7, 1))).collect();
        let mut r = rng_for(7, 1);
        let first = g.sample(&mut r);
        assert!(a.iter().all(|x| x == &first));
        let mut r1 = rng_for(7, 1);
        let mut r2 = rng_for(7, 2);
        let xs: Vec<EPSeq> = (0..10).map(|_| g.sample(&mut r1)).collect();
        let ys: Vec<EPSeq> = (0..10).map(|_| g.sample(&mut r2)).collect();
        assert_ne!(xs, ys);
    }

    #[test]
    fn generated_values_respect_bounds() {
        let g = SeqGen {
            max_prefix: 2,
            max_period: 2,
            alphabet: 3,
        };
        let mut r = rng_for(1, 0);
        for _ in 0..100 {
            let x = g.sample(&mut r);
            assert!(x.max_value() < 3);
            assert!(x.prefix().len() <= 2 && x.period().len() <= 2);
            assert_ne!(g.edit(&x, 4, &mut r), x);
        }
    }
}
