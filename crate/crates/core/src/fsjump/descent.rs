//! Descents `x_{2i+1} < x_{2i}` of a point sequence and the function `g`
//! that enumerates them.

use num_integer::{gcd, lcm};

use crate::seq::EPSeq;

/// Descent positions of the pair sequence `i ↦ (x_{2i}, x_{2i+1})`, which is
/// eventually periodic: `head` lists the descents below `start`, and from
/// `start` on the descents are `start + q·cycle_len + c` for `c ∈ cycle`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Descents {
    head: Vec<usize>,
    start: usize,
    cycle_len: usize,
    cycle: Vec<usize>,
}

fn is_descent(xs: &EPSeq, i: usize) -> bool {
    xs.at(2 * i + 1) < xs.at(2 * i)
}

impl Descents {
    pub fn of(xs: &EPSeq) -> Self {
        let p = xs.period().len();
        let start = xs.prefix().len().div_ceil(2);
        let cycle_len = p / gcd(p, 2);
        Descents {
            head: (0..start).filter(|&i| is_descent(xs, i)).collect(),
            start,
            cycle_len,
            cycle: (0..cycle_len)
                .filter(|&c| is_descent(xs, start + c))
                .collect(),
        }
    }

    /// Infinitely many descents.
    pub fn infinite(&self) -> bool {
        !self.cycle.is_empty()
    }

    /// The `(n+1)`st descent.
    pub fn nth(&self, n: usize) -> Option<usize> {
        if let Some(&i) = self.head.get(n) {
            return Some(i);
        }
        if self.cycle.is_empty() {
            return None;
        }
        let m = n - self.head.len();
        let (q, r) = (m / self.cycle.len(), m % self.cycle.len());
        Some(self.start + q * self.cycle_len + self.cycle[r])
    }
}

/// `g(xs, n)`: the `(n+1)`st `i` with `x_{2i+1} < x_{2i}`.
pub fn g_eval(xs: &EPSeq, n: usize) -> Option<usize> {
    Descents::of(xs).nth(n)
}

/// Membership in `C`: infinitely many descents.
pub fn in_c(xs: &EPSeq) -> bool {
    Descents::of(xs).infinite()
}

/// Whether `w_{2i} ≠ w_{2i+1}` for every `i`.
pub fn pairs_distinct(ws: &EPSeq) -> bool {
    let end = ws.prefix().len().div_ceil(2) + lcm(ws.period().len(), 2);
    (0..end).all(|i| ws.at(2 * i) != ws.at(2 * i + 1))
}

/// A sequence with the same set of values as `ws` whose pairs are all
/// distinct: `ws` itself when it already qualifies, otherwise
/// `w_0, a(w_0), w_1, a(w_1), …` where `a(v)` is the least other value.
/// `ws` must take at least two values.
pub fn pair_distinct_form(ws: &EPSeq) -> EPSeq {
    if pairs_distinct(ws) {
        return ws.clone();
    }
    let values = ws.values();
    assert!(
        values.len() >= 2,
        "a constant sequence has no pair distinct form"
    );
    let alt = |v: u64| *values.iter().find(|&&u| u != v).unwrap();
    EPSeq::from_fn(2 * ws.prefix().len(), 2 * ws.period().len(), |i| {
        let v = ws.at(i / 2);
        if i % 2 == 0 {
            v
        } else {
            alt(v)
        }
    })
}

/// Reorder the pairs of a pair distinct `ws` so that the descents are
/// exactly the pair indices `f(0) < f(1) < …`, where `f` is given by its
/// values on `0..=m` and continues as `f(n) = f(m) + (n − m)`.
pub fn arrange_descents(ws: &EPSeq, f_head: &[usize]) -> EPSeq {
    assert!(!f_head.is_empty(), "f needs at least one value");
    assert!(
        f_head.windows(2).all(|w| w[0] < w[1]),
        "f must be strictly increasing"
    );
    let last = *f_head.last().unwrap();
    let descent = |i: usize| i > last || f_head.binary_search(&i).is_ok();
    let prefix_len = (2 * (last + 1)).max(ws.prefix().len().next_multiple_of(2));
    EPSeq::from_fn(prefix_len, lcm(ws.period().len(), 2), |j| {
        let (a, b) = (ws.at(j & !1), ws.at(j | 1));
        let (hi, lo) = (a.max(b), a.min(b));
        let first = if descent(j / 2) { hi } else { lo };
        if j % 2 == 0 {
            first
        } else if first == hi {
            lo
        } else {
            hi
        }
    })
}
