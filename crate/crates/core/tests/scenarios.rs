use arithgraph::verify::{bundled, bundled_names, run_suite, Scenario};

fn run(name: &str) -> arithgraph::verify::Report {
    let s = Scenario::from_json(bundled(name).unwrap()).unwrap();
    run_suite(&s, None).unwrap()
}

#[test]
fn positive_scenarios_pass() {
    for name in bundled_names() {
        if name == "negative-controls" {
            continue;
        }
        let r = run(name);
        assert!(r.passed, "{r}");
    }
}

#[test]
fn every_negative_control_is_caught() {
    let r = run("negative-controls");
    assert!(!r.passed);
    let failing: Vec<&str> = r
        .checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| c.check.as_str())
        .collect();
    // asymmetry, inverted oracle, identity witness, diameter 1
    assert_eq!(
        failing,
        ["axioms", "soundness", "witness", "diameter"],
        "{r}"
    );
}

#[test]
fn reports_are_reproducible() {
    let s = Scenario::from_json(bundled("jumps").unwrap()).unwrap();
    let a = run_suite(&s, Some(99)).unwrap();
    let b = run_suite(&s, Some(99)).unwrap();
    assert_eq!(a.canonical_json(), b.canonical_json());
    assert_eq!(a.seed, 99);
}
