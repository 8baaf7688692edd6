//! Scenario files and the suite runner.
//!
//! ```json
//! {"name": "demo", "seed": 7, "entries": [
//!   {"family": "e0", "pairs": 1000, "witnesses": 500, "expected_diameter": 2, "exact_diameter": true}
//! ]}
//! ```
//!
//! Families: `e0`, `e0n`, `vitali`, `oneequiv`, `mequiv`, `turing`,
//! `universal`, `ciso`, `biembed`, `jump`, `borel-jump`, and the broken
//! `e0-asymmetric`. Negative controls can also set `"oracle": "inverted"`
//! or `"witness": "identity"`.

use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::sample::{rational, rng_for, swap_list, SeqGen, StructGen};
use super::{
    check_axioms, check_diameter, check_soundness, check_witness, Built, CheckReport, Report,
    WitnessCase,
};
use crate::error::{Error, Result};
use crate::fsjump::{borel_jump_path, jump_equiv, jump_path, BorelJumpGraph, FinSpace, JumpGraph};
use crate::graphings::{
    change_point, e0_equivalent, e0_graph, e0_relation, e0_witness, e0n_graph, e0n_witness,
    mequiv_check, mequiv_graph, mequiv_witness, oneequiv_check, oneequiv_graph, oneequiv_witness,
    turing_graph, vitali_graph, vitali_witness, Graphing, RawGraph, ReductionWitness, UVertex,
    Universal,
};
use crate::machines::{in_bound_set, in_bound_set_two_sided, swap_program, SwapList};
use crate::rational::Rational;
use crate::seq::EPSeq;
use crate::structures::{biembed_graph, ciso_graph};
use crate::structures::{
    biembed_witness, ciso_witness, exception_iso, pushforward, q_change_point, q_find, CisoWitness,
    LStruct,
};
use crate::tri::{Fuel, Tri};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub seed: u64,
    #[serde(default)]
    pub fuel: Option<Fuel>,
    pub entries: Vec<Entry>,
}

fn default_pairs() -> usize {
    100
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub family: String,
    /// Random pairs for the axiom and soundness checks.
    #[serde(default = "default_pairs")]
    pub pairs: usize,
    /// Constructed equivalent pairs for the witness and diameter checks.
    #[serde(default)]
    pub witnesses: usize,
    /// Defaults to the graphing's claimed diameter.
    #[serde(default)]
    pub expected_diameter: Option<u64>,
    #[serde(default)]
    pub exact_diameter: bool,
    #[serde(default)]
    pub oracle: Option<String>,
    #[serde(default)]
    pub witness: Option<String>,
    #[serde(default)]
    pub fuel: Option<Fuel>,
    #[serde(default)]
    pub sequences: Option<SeqGen>,
    #[serde(default)]
    pub structures: Option<StructGen>,
    #[serde(default)]
    pub space: Option<FinSpace>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::config(
                format!("line {} column {}", e.line(), e.column()),
                e.to_string(),
            )
        })
    }
}

const BUNDLED: &[(&str, &str)] = &[
    (
        "all-decidable",
        include_str!("../../scenarios/all-decidable.json"),
    ),
    (
        "negative-controls",
        include_str!("../../scenarios/negative-controls.json"),
    ),
    (
        "reductions",
        include_str!("../../scenarios/reductions.json"),
    ),
    (
        "structures",
        include_str!("../../scenarios/structures.json"),
    ),
    ("jumps", include_str!("../../scenarios/jumps.json")),
];

/// Text of a bundled scenario. Accepts `name`, `name.json` and `bundled-name.json`.
pub fn bundled(name: &str) -> Option<&'static str> {
    let base = name.trim_end_matches(".json");
    let base = base.strip_prefix("bundled-").unwrap_or(base);
    BUNDLED.iter().find(|(n, _)| *n == base).map(|(_, t)| *t)
}

pub fn bundled_names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _)| *n).collect()
}

/// Run every entry; `seed` overrides the scenario's seed.
pub fn run_suite(scenario: &Scenario, seed: Option<u64>) -> Result<Report> {
    let start = Instant::now();
    let seed = seed.unwrap_or(scenario.seed);
    let mut checks = vec![];
    for (i, e) in scenario.entries.iter().enumerate() {
        let fuel = e.fuel.or(scenario.fuel).unwrap_or_default();
        let mut rng = rng_for(seed, i as u64);
        let loc = |field: &str| format!("entries[{i}].{field}");
        if let Some(o) = &e.oracle {
            if o != "inverted" {
                return Err(Error::config(
                    loc("oracle"),
                    format!("unknown oracle override `{o}`"),
                ));
            }
        }
        if let Some(w) = &e.witness {
            if w != "identity" {
                return Err(Error::config(
                    loc("witness"),
                    format!("unknown witness override `{w}`"),
                ));
            }
        }
        let got = run_entry(e, fuel, &mut rng).map_err(|err| match err {
            Error::Config { msg, .. } => Error::config(loc("family"), msg),
            other => Error::config(format!("entries[{i}]"), other.to_string()),
        })?;
        checks.extend(got);
    }
    Ok(Report::new(
        &scenario.name,
        seed,
        checks,
        start.elapsed().as_millis() as u64,
    ))
}

/// One family's sampling plan.
struct Plan<P, FS, FO, FW> {
    sample_pair: FS,
    oracle: FO,
    witness: FW,
    decidable: bool,
    _p: std::marker::PhantomData<P>,
}

fn plan<P, FS, FO, FW>(
    sample_pair: FS,
    oracle: FO,
    witness: FW,
    decidable: bool,
) -> Plan<P, FS, FO, FW> {
    Plan {
        sample_pair,
        oracle,
        witness,
        decidable,
        _p: std::marker::PhantomData,
    }
}

fn execute<G, FS, FO, FW>(
    g: &G,
    e: &Entry,
    fuel: Fuel,
    rng: &mut ChaCha8Rng,
    mut p: Plan<G::Point, FS, FO, FW>,
) -> Vec<CheckReport>
where
    G: Graphing,
    FS: FnMut(&mut ChaCha8Rng) -> (G::Point, G::Point),
    FO: Fn(&G::Point, &G::Point, Fuel) -> Tri,
    FW: FnMut(&mut ChaCha8Rng) -> Option<WitnessCase<G::Point>>,
{
    let pairs: Vec<(G::Point, G::Point)> = (0..e.pairs).map(|_| (p.sample_pair)(rng)).collect();
    let inverted = e.oracle.as_deref() == Some("inverted");
    let oracle = |x: &G::Point, y: &G::Point, f: Fuel| {
        let t = (p.oracle)(x, y, f);
        if inverted {
            t.not()
        } else {
            t
        }
    };
    let mut out = vec![
        check_axioms(g, &pairs, fuel),
        check_soundness(g, oracle, &pairs, fuel, false),
    ];
    if e.witnesses == 0 {
        return out;
    }
    let mut cases: Vec<WitnessCase<G::Point>> =
        (0..e.witnesses).filter_map(|_| (p.witness)(rng)).collect();
    if e.witness.as_deref() == Some("identity") {
        for c in &mut cases {
            c.built = Ok(Built::through(c.x.clone()));
        }
    }
    out.push(check_witness(
        g,
        &cases,
        fuel,
        p.decidable,
        g.claimed_diameter(),
    ));
    if let Some(k) = e.expected_diameter.or(g.claimed_diameter()) {
        let sets: Vec<Vec<G::Point>> = cases
            .iter()
            .filter_map(|c| {
                let b = c.built.as_ref().ok()?;
                let mut vs = vec![c.x.clone()];
                vs.extend(b.path.iter().cloned());
                vs.push(c.y.clone());
                vs.extend(b.extra.iter().cloned());
                Some(vs)
            })
            .collect();
        out.push(check_diameter(g, &sets, k, e.exact_diameter, fuel));
    }
    out
}

fn run_entry(e: &Entry, fuel: Fuel, rng: &mut ChaCha8Rng) -> Result<Vec<CheckReport>> {
    let seqs = e.sequences.unwrap_or_else(SeqGen::binary);
    Ok(match e.family.as_str() {
        "e0" => run_e0(&e0_graph(), e, fuel, rng, seqs),
        "e0-asymmetric" => {
            let g = RawGraph::new("e0-asymmetric", Some(2), |x: &EPSeq, y: &EPSeq, _| {
                Tri::from_bool(e0_relation(x, y))
            });
            run_e0(&g, e, fuel, rng, seqs)
        }
        "e0n" => {
            let seqs = e.sequences.unwrap_or(SeqGen {
                alphabet: 4,
                ..SeqGen::binary()
            });
            let p = plan(
                move |r: &mut ChaCha8Rng| edit_or_fresh(&seqs, r),
                |x: &EPSeq, y: &EPSeq, _| Tri::from_bool(x.eventually_equal(y)),
                move |r: &mut ChaCha8Rng| {
                    let x = seqs.sample(r);
                    let y = seqs.edit(&x, 8, r);
                    Some(WitnessCase::new(
                        x.clone(),
                        y.clone(),
                        e0n_witness(&x, &y).map(Built::through),
                    ))
                },
                true,
            );
            execute(&e0n_graph(), e, fuel, rng, p)
        }
        "vitali" => {
            let p = plan(
                |r: &mut ChaCha8Rng| (rational(r, 60, 12), rational(r, 60, 12)),
                // every rational differs from every other by a rational
                |_: &Rational, _: &Rational, _| Tri::Verified,
                |r: &mut ChaCha8Rng| {
                    let x = rational(r, 60, 12);
                    let y = loop {
                        let y = x + rational(r, 30, 12);
                        if y != x {
                            break y;
                        }
                    };
                    Some(WitnessCase::new(
                        x,
                        y,
                        vitali_witness(x, y).map(Built::through),
                    ))
                },
                true,
            );
            execute(&vitali_graph(), e, fuel, rng, p)
        }
        "oneequiv" | "mequiv" => {
            let m = e.family == "mequiv";
            let g = if m { mequiv_graph() } else { oneequiv_graph() };
            let p = plan(
                move |r: &mut ChaCha8Rng| {
                    let x = seqs.non_constant(r);
                    let y = if r.gen_bool(0.5) {
                        swap_image(&x, &swap_list(r, 3, 9))
                    } else {
                        seqs.sample(r)
                    };
                    (x, y)
                },
                move |x: &EPSeq, y: &EPSeq, _| Tri::from_bool(set_equiv(x, y, m)),
                move |r: &mut ChaCha8Rng| Some(reduction_case(&seqs, r, m, fuel).0),
                false,
            );
            execute(&g, e, fuel, rng, p)
        }
        "turing" => {
            let p = plan(
                move |r: &mut ChaCha8Rng| (seqs.sample(r), seqs.sample(r)),
                // eventually periodic sequences are computable, hence all of one degree
                |_: &EPSeq, _: &EPSeq, _| Tri::Verified,
                |_: &mut ChaCha8Rng| None,
                false,
            );
            execute(&turing_graph(), e, fuel, rng, p)
        }
        "universal" => {
            let g = Universal::new("universal", |n: u64, m: u64, k: u64| {
                n.checked_add(m) == Some(k)
            });
            let p = plan(
                |r: &mut ChaCha8Rng| (uvertex(r), uvertex(r)),
                |x: &UVertex, y: &UVertex, _| {
                    Tri::from_bool(x == y || (sum_class(x) && sum_class(y)))
                },
                |r: &mut ChaCha8Rng| {
                    let n = r.gen_range(0..30u64);
                    let m = (n + r.gen_range(1..30u64)) % 30;
                    let built = Built {
                        path: vec![UVertex::Triple(n, m, n + m)],
                        clauses: vec![],
                        extra: vec![UVertex::Triple(n, n, 2 * n)],
                    };
                    Some(WitnessCase::new(
                        UVertex::Nat(n),
                        UVertex::Nat(m),
                        Ok(built),
                    ))
                },
                true,
            );
            execute(&g, e, fuel, rng, p)
        }
        "ciso" | "biembed" => {
            let embed = e.family == "biembed";
            let g = if embed { biembed_graph() } else { ciso_graph() };
            let sg = e.structures.unwrap_or_default();
            let p = plan(
                move |r: &mut ChaCha8Rng| {
                    let x = sg.sample(r);
                    let y = if r.gen_bool(0.5) {
                        pushforward(&x, &swap_list(r, 2, 6)).expect("no constants")
                    } else {
                        sg.structure(&x.arities(), r)
                    };
                    (x, y)
                },
                move |x: &LStruct, y: &LStruct, f: Fuel| {
                    let iso = exception_iso(x, y, None).is_some();
                    match (iso, embed) {
                        (true, _) => Tri::Verified,
                        (false, false) => Tri::Refuted,
                        (false, true) => Tri::Unknown { fuel: f },
                    }
                },
                move |r: &mut ChaCha8Rng| structure_case(&sg, r, embed, fuel).map(|c| c.0),
                false,
            );
            execute(&g, e, fuel, rng, p)
        }
        "jump" | "borel-jump" => {
            let space = match &e.space {
                Some(s) => s.clone(),
                None => FinSpace::path(3)?,
            };
            let seqs = e.sequences.unwrap_or(SeqGen {
                max_prefix: 2,
                max_period: 2,
                alphabet: space.size() as u64,
            });
            if seqs.alphabet > space.size() as u64 {
                return Err(Error::config("sequences", "alphabet larger than the space"));
            }
            let borel = e.family == "borel-jump";
            let sp = space.clone();
            let sp2 = space.clone();
            let sp3 = space.clone();
            let p = plan(
                move |r: &mut ChaCha8Rng| (seqs.sample(r), seqs.sample(r)),
                move |x: &EPSeq, y: &EPSeq, _| Tri::from_bool(jump_equiv(&sp, x, y)),
                move |r: &mut ChaCha8Rng| {
                    let x = seqs.sample(r);
                    let y = (0..1000)
                        .map(|_| seqs.sample(r))
                        .find(|y| y != &x && jump_equiv(&sp2, &x, y))?;
                    let path = if borel {
                        borel_jump_path(&sp2, &x, &y)
                    } else {
                        jump_path(&sp2, &x, &y)
                    };
                    let built = path.map(|mut p| {
                        p.pop();
                        Built {
                            path: p,
                            clauses: vec![],
                            extra: vec![],
                        }
                    });
                    Some(WitnessCase::new(x, y, built))
                },
                true,
            );
            if borel {
                execute(&BorelJumpGraph { space: sp3 }, e, fuel, rng, p)
            } else {
                execute(&JumpGraph { space: sp3 }, e, fuel, rng, p)
            }
        }
        other => return Err(Error::config("family", format!("unknown family `{other}`"))),
    })
}

fn edit_or_fresh(g: &SeqGen, r: &mut ChaCha8Rng) -> (EPSeq, EPSeq) {
    let x = g.sample(r);
    let y = if r.gen_bool(0.5) {
        g.edit(&x, 8, r)
    } else {
        g.sample(r)
    };
    (x, y)
}

fn run_e0<G: Graphing<Point = EPSeq>>(
    g: &G,
    e: &Entry,
    fuel: Fuel,
    rng: &mut ChaCha8Rng,
    seqs: SeqGen,
) -> Vec<CheckReport> {
    let p = plan(
        move |r: &mut ChaCha8Rng| edit_or_fresh(&seqs, r),
        |x: &EPSeq, y: &EPSeq, _| Tri::from_bool(e0_equivalent(x, y)),
        move |r: &mut ChaCha8Rng| {
            let x = seqs.sample(r);
            let y = seqs.edit(&x, 8, r);
            Some(WitnessCase::new(
                x.clone(),
                y.clone(),
                e0_witness(&x, &y).map(Built::through),
            ))
        },
        true,
    );
    execute(g, e, fuel, rng, p)
}

fn sum_class(v: &UVertex) -> bool {
    match *v {
        UVertex::Nat(_) => true,
        UVertex::Triple(n, m, k) => n.checked_add(m) == Some(k),
    }
}

fn uvertex(r: &mut ChaCha8Rng) -> UVertex {
    let (n, m) = (r.gen_range(0..30u64), r.gen_range(0..30u64));
    match r.gen_range(0..3) {
        0 => UVertex::Nat(n),
        1 => UVertex::Triple(n, m, n + m),
        _ => UVertex::Triple(n, m, r.gen_range(0..60)),
    }
}

/// Number of members (`bit = 1`) or non-members, `None` when infinite.
pub fn card(s: &EPSeq, bit: u64) -> Option<usize> {
    if s.period().contains(&bit) {
        None
    } else {
        Some(s.prefix().iter().filter(|&&v| v == bit).count())
    }
}

/// Exact 1-equivalence (`m = false`) or m-equivalence of eventually
/// periodic sets. Decidable sets are 1-equivalent iff they have equally
/// many members and non-members, and m-equivalent iff they agree on being
/// empty and on being everything.
pub fn set_equiv(a: &EPSeq, b: &EPSeq, m: bool) -> bool {
    if m {
        (card(a, 1) == Some(0)) == (card(b, 1) == Some(0))
            && (card(a, 0) == Some(0)) == (card(b, 0) == Some(0))
    } else {
        card(a, 1) == card(b, 1) && card(a, 0) == card(b, 0)
    }
}

/// `{s(m) : m ∈ a}`.
pub fn swap_image(a: &EPSeq, s: &SwapList) -> EPSeq {
    let inv = s.inverse();
    let top = s.max_entry().map_or(0, |v| v as usize + 1);
    EPSeq::from_fn(a.prefix().len().max(top), a.period().len(), |n| {
        a.at(inv.apply(n as u64) as usize)
    })
}

/// A 1- or m-equivalence witness case: `A`, `A' = s[A]`, the hint codes and
/// the decidable side conditions of the construction.
pub fn reduction_case(
    seqs: &SeqGen,
    r: &mut ChaCha8Rng,
    m: bool,
    fuel: Fuel,
) -> (WitnessCase<EPSeq>, Option<ReductionWitness>) {
    let (a, a_prime, s) = loop {
        let a = seqs.non_constant(r);
        let s = swap_list(r, 2, 6);
        let ap = swap_image(&a, &s);
        if ap != a {
            break (a, ap, s);
        }
    };
    // φ_e: A' → A is s⁻¹, φ_back: A → A' is s
    let e = swap_program(&s.inverse()).expect("small swap lists have small codes");
    let e_back = swap_program(&s).expect("small swap lists have small codes");
    let w = if m {
        mequiv_witness(&a, &a_prime, e, e_back)
    } else {
        oneequiv_witness(&a, &a_prime, e)
    };
    let built = w.clone().map(|w| {
        let n = w.n as u64;
        let structural = w.swaps.max_entry().is_none_or(|v| v < 2 * n) && e < n;
        let check = |code: ProgramCodeOpt, from: &EPSeq| match code {
            Some(c) if m => !mequiv_check(c, from, &w.b, fuel).is_refuted(),
            Some(c) => !oneequiv_check(c, from, &w.b, fuel).is_refuted(),
            None => true,
        };
        let mut clauses = vec![
            ("(i) B not constant".to_string(), !w.b.is_constant()),
            ("change point".to_string(), change_point(&w.b) == Some(w.n)),
            ("S(n) structural".to_string(), structural),
            (
                "(ii) A to B".to_string(),
                w.via_a.is_none_or(|c| {
                    if m {
                        mequiv_check(c, &a, &w.b, fuel).is_verified()
                    } else {
                        oneequiv_check(c, &a, &w.b, fuel).is_verified()
                    }
                }),
            ),
            ("(ii) A' to B".to_string(), check(w.via_a_prime, &a_prime)),
        ];
        if let Some(c) = w.via_a {
            clauses.push(("S(n) via A".to_string(), in_bound_set(c, n)));
        }
        if let Some(c) = w.via_a_prime {
            clauses.push(("S(n) via A'".to_string(), in_bound_set(c, n)));
        }
        if m {
            if let Some(c) = w.back_a_prime {
                clauses.push(("S(n) back to A'".to_string(), in_bound_set_two_sided(c, n)));
                clauses.push((
                    "B to A'".to_string(),
                    !mequiv_check(c, &w.b, &a_prime, fuel).is_refuted(),
                ));
            }
        }
        Built {
            path: vec![w.b.clone()],
            clauses,
            extra: vec![],
        }
    });
    (WitnessCase::new(a, a_prime, built), w.ok())
}

type ProgramCodeOpt = Option<crate::machines::ProgramCode>;

/// A ciso or biembed witness case for `x` and a pushforward of it, or
/// `None` when `x` has the bad coding property.
pub fn structure_case(
    sg: &StructGen,
    r: &mut ChaCha8Rng,
    embed: bool,
    fuel: Fuel,
) -> Option<(WitnessCase<LStruct>, Option<CisoWitness>)> {
    let x = (0..200)
        .map(|_| sg.sample(r))
        .find(|x| q_find(x).is_some())?;
    let (xp, s) = loop {
        let s = swap_list(r, 2, 6);
        let xp = pushforward(&x, &s).expect("no constants");
        if xp != x {
            break (xp, s);
        }
    };
    Some(structure_case_for(&x, &xp, &s, embed, fuel))
}

/// Witness case for `x` and `x' = s_* x`.
pub fn structure_case_for(
    x: &LStruct,
    xp: &LStruct,
    s: &SwapList,
    embed: bool,
    _fuel: Fuel,
) -> (WitnessCase<LStruct>, Option<CisoWitness>) {
    let e = swap_program(&s.inverse()).unwrap_or(0);
    let e2 = swap_program(s).unwrap_or(0);
    let w = if embed {
        biembed_witness(x, xp, e, e2)
    } else {
        ciso_witness(x, xp, e)
    };
    let built = w.clone().map(|w| {
        let q0 = q_find(x).expect("witness exists only for coding structures");
        let k = q0.a.len() as u64;
        let clauses = vec![
            ("same (i, pi)".to_string(), w.q.i == q0.i && w.q.pi == q0.pi),
            (
                "a = (0..k-1)".to_string(),
                w.q.a == (0..k).collect::<Vec<_>>(),
            ),
            (
                "change point".to_string(),
                q_change_point(&w.y, &w.q).ok() == Some(w.n),
            ),
        ];
        Built {
            path: vec![w.y.clone()],
            clauses,
            extra: vec![],
        }
    });
    (WitnessCase::new(x.clone(), xp.clone(), built), w.ok())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_scenarios_parse() {
        for n in bundled_names() {
            Scenario::from_json(bundled(n).unwrap()).unwrap();
        }
        assert!(bundled("bundled-all-decidable.json").is_some());
        assert!(bundled("nope").is_none());
    }

    #[test]
    fn malformed_scenario_names_location() {
        let e =
            Scenario::from_json(r#"{"name":"x","seed":1,"entries":[{"family":"e0","bogus":1}]}"#)
                .unwrap_err();
        assert!(matches!(e, Error::Config { .. }));
        let s =
            Scenario::from_json(r#"{"name":"x","seed":1,"entries":[{"family":"nope"}]}"#).unwrap();
        match run_suite(&s, None).unwrap_err() {
            Error::Config { location, .. } => assert_eq!(location, "entries[0].family"),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn set_equivalence_oracle() {
        let s = |t: &str| t.parse::<EPSeq>().unwrap();
        assert!(set_equiv(&s("1;0"), &s("0,0,1;0"), false));
        assert!(!set_equiv(&s("1;0"), &s("1,1;0"), false));
        assert!(set_equiv(&s("1;0"), &s("1,1;0"), true));
        assert!(!set_equiv(&s(";0"), &s("1;0"), true));
        assert!(set_equiv(&s(";0,1"), &s("1;1,0,0"), false));
    }

    #[test]
    fn small_suite_is_deterministic() {
        let s = Scenario::from_json(
            r#"{"name":"t","seed":3,"entries":[{"family":"e0","pairs":50,"witnesses":20,"expected_diameter":2,"exact_diameter":true}]}"#,
        )
        .unwrap();
        let a = run_suite(&s, None).unwrap();
        let b = run_suite(&s, None).unwrap();
        assert!(a.passed, "{a}");
        assert_eq!(a.canonical_json(), b.canonical_json());
    }
}
