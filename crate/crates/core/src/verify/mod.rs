//! Property checks for graphings: axioms, soundness against an
//! equivalence oracle, witness paths, and diameters of induced subgraphs.
//!
//! Every check returns a [`CheckReport`] with pass, fail and unknown counts.
//! Unknown results are never folded into passes. Counterexamples are sorted
//! and truncated so that reports do not depend on evaluation order.

pub mod sample;
pub mod scenario;
pub mod suites;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graphings::Graphing;
use crate::tri::{Fuel, Tri};

pub use scenario::{bundled, bundled_names, run_suite, Entry, Scenario};

/// Report layout version, bumped on incompatible changes.
pub const SCHEMA_VERSION: u32 = 1;

/// Counterexamples kept per check.
pub const MAX_COUNTEREXAMPLES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    pub clause: String,
    pub points: Vec<String>,
    pub fuel: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub target: String,
    pub pass: u64,
    pub fail: u64,
    pub unknown: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl CheckReport {
    pub fn new(check: &str, target: &str) -> Self {
        CheckReport {
            check: check.to_string(),
            target: target.to_string(),
            pass: 0,
            fail: 0,
            unknown: 0,
            counterexamples: vec![],
        }
    }

    pub fn passed(&self) -> bool {
        self.fail == 0
    }

    pub fn ok(&mut self) {
        self.pass += 1;
    }

    pub fn unknown(&mut self) {
        self.unknown += 1;
    }

    pub fn fail(&mut self, clause: impl Into<String>, points: Vec<String>, fuel: Option<Fuel>) {
        self.fail += 1;
        self.counterexamples.push(Counterexample {
            clause: clause.into(),
            points,
            fuel: fuel.map(|f| f.to_string()),
        });
    }

    /// Record a boolean outcome.
    pub fn record(&mut self, ok: bool, clause: impl Into<String>, points: Vec<String>) {
        if ok {
            self.ok();
        } else {
            self.fail(clause, points, None);
        }
    }

    /// Sort counterexamples canonically and keep the first few.
    pub fn finish(mut self) -> Self {
        self.counterexamples.sort();
        self.counterexamples.dedup();
        self.counterexamples.truncate(MAX_COUNTEREXAMPLES);
        self
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "[{tag}] {} {}: pass={} fail={} unknown={}",
            self.target, self.check, self.pass, self.fail, self.unknown
        )?;
        for c in &self.counterexamples {
            write!(f, "\n    {}: {}", c.clause, c.points.join(" | "))?;
            if let Some(fuel) = &c.fuel {
                write!(f, " (fuel {fuel})")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub scenario: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
    /// Wall-clock time; the only field allowed to differ between runs.
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(scenario: &str, seed: u64, checks: Vec<CheckReport>, elapsed_ms: u64) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            scenario: scenario.to_string(),
            seed,
            passed: checks.iter().all(CheckReport::passed),
            checks,
            elapsed_ms,
        }
    }

    /// JSON with the timing field zeroed, for run-to-run comparison.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.elapsed_ms = 0;
        serde_json::to_string(&r).expect("reports serialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scenario {} (seed {})", self.scenario, self.seed)?;
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        write!(
            f,
            "{} in {} ms",
            if self.passed { "PASSED" } else { "FAILED" },
            self.elapsed_ms
        )
    }
}

fn pts<P: fmt::Display>(ps: &[&P]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

/// Irreflexivity on every sampled point and symmetry on every sampled pair.
pub fn check_axioms<G: Graphing>(g: &G, pairs: &[(G::Point, G::Point)], fuel: Fuel) -> CheckReport {
    let mut r = CheckReport::new("axioms", g.name());
    for (x, y) in pairs {
        for p in [x, y] {
            match g.adjacent(p, p, fuel) {
                Tri::Refuted => r.ok(),
                t => r.fail(format!("diagonal is {}", t.label()), pts(&[p]), Some(fuel)),
            }
        }
        let (a, b) = (g.adjacent(x, y, fuel), g.adjacent(y, x, fuel));
        if a.label() == b.label() {
            r.ok();
        } else {
            r.fail(
                format!("asymmetric: {} one way, {} the other", a.label(), b.label()),
                pts(&[x, y]),
                Some(fuel),
            );
        }
    }
    r.finish()
}

/// Adjacent pairs must be equivalent. With `strict`, pairs whose
/// adjacency is Unknown are held to the same standard as Verified ones.
pub fn check_soundness<G: Graphing>(
    g: &G,
    oracle: impl Fn(&G::Point, &G::Point, Fuel) -> Tri,
    pairs: &[(G::Point, G::Point)],
    fuel: Fuel,
    strict: bool,
) -> CheckReport {
    let mut r = CheckReport::new("soundness", g.name());
    for (x, y) in pairs {
        let adj = g.adjacent(x, y, fuel);
        let judged = adj.is_verified() || (strict && adj.is_unknown());
        if adj.is_refuted() {
            r.ok();
        } else if !judged {
            r.unknown();
        } else {
            match oracle(x, y, fuel) {
                Tri::Verified => r.ok(),
                Tri::Refuted => r.fail(
                    format!("adjacency {} but not equivalent", adj.label()),
                    pts(&[x, y]),
                    Some(fuel),
                ),
                Tri::Unknown { .. } => r.unknown(),
            }
        }
    }
    r.finish()
}

/// A connecting path produced for an equivalent pair.
#[derive(Debug, Clone)]
pub struct Built<P> {
    /// Vertices strictly between `x` and `y`.
    pub path: Vec<P>,
    /// Decidable side conditions of the construction.
    pub clauses: Vec<(String, bool)>,
    /// Further vertices to include in the induced subgraph for diameter checks.
    pub extra: Vec<P>,
}

impl<P> Built<P> {
    pub fn through(z: P) -> Self {
        Built {
            path: vec![z],
            clauses: vec![],
            extra: vec![],
        }
    }
}

#[derive(Debug, Clone)]
pub struct WitnessCase<P> {
    pub x: P,
    pub y: P,
    pub built: std::result::Result<Built<P>, String>,
}

impl<P> WitnessCase<P> {
    pub fn new(x: P, y: P, built: Result<Built<P>>) -> Self {
        WitnessCase {
            x,
            y,
            built: built.map_err(|e| e.to_string()),
        }
    }
}

/// Every hop of the constructed path must be an edge (Verified when
/// `decidable`, otherwise not Refuted, with Unknown hops counted apart),
/// the side conditions must hold, and the length must respect `max_len`.
pub fn check_witness<G: Graphing>(
    g: &G,
    cases: &[WitnessCase<G::Point>],
    fuel: Fuel,
    decidable: bool,
    max_len: Option<u64>,
) -> CheckReport {
    let mut r = CheckReport::new("witness", g.name());
    for case in cases {
        let b = match &case.built {
            Ok(b) => b,
            Err(e) => {
                r.fail(
                    format!("construction failed: {e}"),
                    pts(&[&case.x, &case.y]),
                    None,
                );
                continue;
            }
        };
        let mut all: Vec<&G::Point> = vec![&case.x];
        all.extend(b.path.iter());
        all.push(&case.y);
        let mut bad = None;
        let mut unsure = false;
        if let Some((name, _)) = b.clauses.iter().find(|(_, ok)| !ok) {
            bad = Some(format!("side condition {name} false"));
        }
        if let Some(m) = max_len {
            if all.len() as u64 - 1 > m {
                bad = bad.or(Some(format!(
                    "path of length {} exceeds {m}",
                    all.len() - 1
                )));
            }
        }
        for w in all.windows(2) {
            match g.adjacent(w[0], w[1], fuel) {
                Tri::Verified => {}
                Tri::Unknown { .. } if !decidable => unsure = true,
                t => {
                    bad = bad.or(Some(format!("hop {} -> {} is {}", w[0], w[1], t.label())));
                }
            }
        }
        match bad {
            Some(clause) => r.fail(clause, pts(&all), Some(fuel)),
            None if unsure => r.unknown(),
            None => r.ok(),
        }
    }
    r.finish()
}

/// All-pairs BFS distances on the subgraph induced by `vs`, using the
/// Verified edges. Also reports whether any edge was Unknown.
pub fn induced_distances<G: Graphing>(
    g: &G,
    vs: &[G::Point],
    fuel: Fuel,
) -> (Vec<Vec<Option<u64>>>, bool) {
    let n = vs.len();
    let mut adj = vec![vec![]; n];
    let mut unsure = false;
    for i in 0..n {
        for j in i + 1..n {
            match g.adjacent(&vs[i], &vs[j], fuel) {
                Tri::Verified => {
                    adj[i].push(j);
                    adj[j].push(i);
                }
                Tri::Unknown { .. } => unsure = true,
                Tri::Refuted => {}
            }
        }
    }
    let dist = (0..n)
        .map(|s| {
            let mut d = vec![None; n];
            d[s] = Some(0);
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &v in &adj[u] {
                    if d[v].is_none() {
                        d[v] = Some(d[u].unwrap() + 1);
                        q.push_back(v);
                    }
                }
            }
            d
        })
        .collect();
    (dist, unsure)
}

/// Connected pairs in each induced subgraph lie within `expected`; with
/// `exact`, some pair attains it.
pub fn check_diameter<G: Graphing>(
    g: &G,
    sets: &[Vec<G::Point>],
    expected: u64,
    exact: bool,
    fuel: Fuel,
) -> CheckReport {
    let mut r = CheckReport::new("diameter", g.name());
    let mut max_seen = 0;
    for vs in sets {
        let (dist, unsure) = induced_distances(g, vs, fuel);
        let mut worst: Option<(u64, usize, usize)> = None;
        for (i, row) in dist.iter().enumerate() {
            for (j, d) in row.iter().enumerate() {
                if let Some(d) = *d {
                    max_seen = max_seen.max(d);
                    if d > expected && worst.is_none_or(|(w, _, _)| d > w) {
                        worst = Some((d, i, j));
                    }
                }
            }
        }
        match worst {
            None => r.ok(),
            Some(_) if unsure => r.unknown(),
            Some((d, i, j)) => r.fail(
                format!("distance {d} exceeds {expected}"),
                pts(&[&vs[i], &vs[j]]),
                Some(fuel),
            ),
        }
    }
    if exact && max_seen != expected {
        r.fail(
            format!("largest distance {max_seen}, expected exactly {expected}"),
            vec![],
            None,
        );
    }
    r.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphings::{e0_graph, e0_relation, RawGraph};
    use crate::seq::EPSeq;

    fn s(t: &str) -> EPSeq {
        t.parse().unwrap()
    }

    #[test]
    fn axioms_catch_asymmetry() {
        let bad = RawGraph::new("half-e0", Some(2), |x: &EPSeq, y: &EPSeq, _| {
            Tri::from_bool(e0_relation(x, y))
        });
        let pairs = vec![(s("1;0"), s("0,1;0"))];
        let r = check_axioms(&bad, &pairs, Fuel::default());
        assert!(!r.passed());
        assert!(!r.counterexamples.is_empty());
        assert!(check_axioms(&e0_graph(), &pairs, Fuel::default()).passed());
    }

    #[test]
    fn soundness_catches_bad_oracle() {
        let pairs = vec![(s(";0"), s("1;0"))];
        let g = e0_graph();
        let r = check_soundness(&g, |_, _, _| Tri::Refuted, &pairs, Fuel::default(), false);
        assert_eq!(r.fail, 1);
    }

    #[test]
    fn diameter_of_path() {
        let g = e0_graph();
        let (x, y) = (s(";0"), s("0,1,1;0"));
        let z = crate::graphings::e0_witness(&x, &y).unwrap();
        let sets = vec![vec![x, y, z]];
        assert!(check_diameter(&g, &sets, 2, true, Fuel::default()).passed());
        assert!(!check_diameter(&g, &sets, 1, false, Fuel::default()).passed());
    }
}
