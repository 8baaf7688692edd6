//! Acceptance criteria, one line each. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use arithgraph::verify::suites::{self, Criterion, REDUCTION_FUEL};
use arithgraph::verify::{bundled, bundled_names, run_suite, Scenario};
use arithgraph::Fuel;

const SEED: u64 = 20_261_015;

// Criterion 1
const DECIDABLE_FAMILIES: [&str; 3] = ["e0", "e0n", "vitali"];
const DECIDABLE_PAIRS: usize = 1_000;
const DECIDABLE_WITNESSES: usize = 500;
const DECIDABLE_DIAMETER: u64 = 2;
const DECIDABLE_LIMIT: Duration = Duration::from_secs(10);
// Criterion 2
const REDUCTION_PAIRS: usize = 300;
const REDUCTION_STEPS: u64 = 100_000;
const REDUCTION_INPUTS: u64 = 64;
const REDUCTION_LIMIT: Duration = Duration::from_secs(60);
// Criterion 4
const SHUFFLE_LIMIT: Duration = Duration::from_secs(120);
// Criterion 5
const CISO_PAIRS: usize = 200;
const CISO_PER_BRANCH: usize = 10;
// Criterion 6
const JUMP_MAX_POINTS: usize = 4;
const JUMP_MAX_SPACES: usize = 200;
const JUMP_LIMIT: Duration = Duration::from_secs(120);

struct Line {
    id: u32,
    ok: bool,
    text: String,
}

fn timed(f: impl Fn() -> Criterion) -> (Criterion, Duration) {
    let t = Instant::now();
    let c = f();
    (c, t.elapsed())
}

fn judge(
    c: &Criterion,
    took: Duration,
    limit: Option<Duration>,
    extra: Result<(), String>,
) -> Line {
    let within = limit.is_none_or(|l| took < l);
    let ok = c.passed() && within && extra.is_ok();
    let mut text = format!("{} in {:.2?}", c.title, took);
    if let Some(l) = limit {
        text.push_str(&format!(" (limit {l:?})"));
    }
    if let Err(e) = extra {
        text.push_str(&format!(" [{e}]"));
    }
    text.push_str(&format!(" :: {}", c.summary()));
    if !c.passed() {
        for ch in c.checks.iter().filter(|ch| !ch.passed()) {
            for ce in ch.counterexamples.iter().take(3) {
                text.push_str(&format!(
                    "\n      {}: {} at {:?}",
                    ch.check, ce.clause, ce.points
                ));
            }
        }
    }
    Line { id: c.id, ok, text }
}

/// The bundled scenario must carry the pinned sizes.
fn decidable_parameters() -> Result<(), String> {
    let s = Scenario::from_json(bundled("all-decidable").unwrap()).map_err(|e| e.to_string())?;
    for fam in DECIDABLE_FAMILIES {
        let e = s
            .entries
            .iter()
            .find(|e| e.family == fam)
            .ok_or(format!("{fam} missing"))?;
        if e.pairs != DECIDABLE_PAIRS
            || e.witnesses != DECIDABLE_WITNESSES
            || e.expected_diameter != Some(DECIDABLE_DIAMETER)
            || !e.exact_diameter
        {
            return Err(format!("{fam} entry does not match the pinned sizes"));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let mut lines = vec![];
    let mut runs: Vec<(u32, String)> = vec![];

    let (c, t) = timed(|| suites::decidable(SEED));
    lines.push(judge(&c, t, Some(DECIDABLE_LIMIT), decidable_parameters()));
    runs.push((1, c.canonical_json()));

    let fuel_ok = if REDUCTION_FUEL
        == (Fuel {
            steps: REDUCTION_STEPS,
            inputs: REDUCTION_INPUTS,
        }) {
        Ok(())
    } else {
        Err("reduction fuel differs from the pinned budget".to_string())
    };
    let (c, t) = timed(|| suites::reductions(SEED, REDUCTION_PAIRS));
    lines.push(judge(&c, t, Some(REDUCTION_LIMIT), fuel_ok));
    runs.push((2, c.canonical_json()));

    let (c, t) = timed(suites::index_relation);
    lines.push(judge(&c, t, None, Ok(())));
    runs.push((3, c.canonical_json()));

    let (c, t) = timed(suites::shuffles);
    lines.push(judge(&c, t, Some(SHUFFLE_LIMIT), Ok(())));
    runs.push((4, c.canonical_json()));

    let (c, t) = timed(|| suites::ciso(SEED, CISO_PAIRS, CISO_PER_BRANCH));
    lines.push(judge(&c, t, None, Ok(())));
    runs.push((5, c.canonical_json()));

    let spaces = suites::small_spaces(JUMP_MAX_POINTS).len();
    let bounded = if spaces <= JUMP_MAX_SPACES {
        Ok(())
    } else {
        Err(format!("{spaces} spaces exceed {JUMP_MAX_SPACES}"))
    };
    let (c, t) = timed(|| suites::jumps(JUMP_MAX_POINTS));
    lines.push(judge(&c, t, Some(JUMP_LIMIT), bounded));
    runs.push((6, c.canonical_json()));

    // Criterion 7: a second run of every suite and bundled scenario.
    let again: Vec<(u32, String)> = vec![
        (1, suites::decidable(SEED).canonical_json()),
        (
            2,
            suites::reductions(SEED, REDUCTION_PAIRS).canonical_json(),
        ),
        (3, suites::index_relation().canonical_json()),
        (4, suites::shuffles().canonical_json()),
        (
            5,
            suites::ciso(SEED, CISO_PAIRS, CISO_PER_BRANCH).canonical_json(),
        ),
        (6, suites::jumps(JUMP_MAX_POINTS).canonical_json()),
    ];
    let mut differing: Vec<String> = runs
        .iter()
        .zip(&again)
        .filter(|(a, b)| a.1 != b.1)
        .map(|(a, _)| format!("criterion {}", a.0))
        .collect();
    for name in bundled_names() {
        let s = Scenario::from_json(bundled(name).unwrap()).unwrap();
        let a = run_suite(&s, Some(7)).unwrap().canonical_json();
        let b = run_suite(&s, Some(7)).unwrap().canonical_json();
        if a != b {
            differing.push(format!("scenario {name}"));
        }
    }
    lines.push(Line {
        id: 7,
        ok: differing.is_empty(),
        text: if differing.is_empty() {
            format!(
                "determinism: {} suites and {} scenarios reproduce exactly",
                again.len(),
                bundled_names().len()
            )
        } else {
            format!("determinism: reports differ for {}", differing.join(", "))
        },
    });

    let mut all = true;
    for l in &lines {
        all &= l.ok;
        println!(
            "criterion {}: {} {}",
            l.id,
            if l.ok { "PASS" } else { "FAIL" },
            l.text
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
