//! End-to-end runs of the `arithgraph` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use arithgraph::graphings::{PairPoint, UVertex};
use arithgraph::machines::{swap_program, SwapList};
use arithgraph::structures::LStruct;
use arithgraph::{EPSeq, Error, Rational};
use jsonschema::{Retrieve, Uri, Validator};
use proptest::prelude::*;
use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arithgraph"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("arithgraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

/// Values after `key: ` on each output line that starts with it.
fn field<'a>(out: &'a str, key: &str) -> Vec<&'a str> {
    out.lines()
        .filter_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
        .collect()
}

struct SchemaDir;

impl Retrieve for SchemaDir {
    fn retrieve(
        &self,
        uri: &Uri<String>,
    ) -> Result<Value, Box<dyn std::error::Error + Send + Sync>> {
        let name = uri
            .as_str()
            .rsplit('/')
            .next()
            .unwrap_or_default()
            .to_string();
        let text = std::fs::read_to_string(root().join("docs/schemas").join(name))?;
        Ok(serde_json::from_str(&text)?)
    }
}

fn validator(name: &str) -> Validator {
    let text = std::fs::read_to_string(root().join("docs/schemas").join(name)).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    jsonschema::options()
        .with_base_uri("file:///schemas/")
        .with_retriever(SchemaDir)
        .build(&schema)
        .expect("schema compiles")
}

fn assert_valid(v: &Validator, doc: &Value) {
    let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?} in {doc}");
}

const EQUALITY: &str = r#"{"arities":[2],"relations":[{"default":"eq 0 1"}]}"#;

#[test]
fn e0_adjacency_example() {
    let o = bin(&["adj", "e0", "1,1;0", "0,1;0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "adjacent: true");
    let o = bin(&["adj", "e0", "1,1;0", "1;0"]);
    assert_eq!(stdout(&o).trim(), "adjacent: false");
}

#[test]
fn synthesis_example_from_file() {
    let p = temp_file("equality.json", EQUALITY);
    let o = bin(&["synth", p.to_str().unwrap(), "0"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(field(&stdout(&o), "formula"), ["eq 0 1"]);
    let o = bin(&["struct", "synth", EQUALITY, "0"]);
    assert_eq!(field(&stdout(&o), "formula"), ["eq 0 1"]);
}

#[test]
fn bundled_suite_passes_and_negative_controls_fail() {
    let o = bin(&["verify", "bundled-all-decidable.json", "--seed", "7"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("(seed 7)"));
    let o = bin(&["verify", "negative-controls"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAILED"));
}

#[test]
fn scenario_files_run_from_disk() {
    let p = temp_file(
        "small.json",
        r#"{"name":"small","seed":3,"entries":[{"family":"vitali","pairs":20,"witnesses":10}]}"#,
    );
    let o = bin(&["verify", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let bad = temp_file(
        "bad.json",
        r#"{"name":"bad","seed":3,"entries":[{"family":"nope"}]}"#,
    );
    let o = bin(&["verify", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("entries[0].family"), "{}", stderr(&o));
}

#[test]
fn explain_topics() {
    let t = stdout(&bin(&["explain", "oneequiv"]));
    assert!(t.contains("(i)") && t.contains("(ii)") && t.contains("S(n)"));
    let t = stdout(&bin(&["explain", "vitali"]));
    assert!(t.contains("1/2, 1/3, 1/4, 2/3, 3/2"));
    let t = stdout(&bin(&["explain", "jump"]));
    assert!(t.contains("Claim 1") && t.contains("Claim 2"));
    let o = bin(&["explain", "frobnicate"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("`frobnicate`"));
}

#[test]
fn exit_codes_by_failure_class() {
    // parse errors name the token
    let o = bin(&["adj", "e0", "1,x;0", ";0"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("`x`"), "{}", stderr(&o));
    let o = bin(&["adj", "mystery", "1", "2"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("`mystery`"));
    let o = bin(&["adj", "e0", ";0", ";1", "--bogus"]);
    assert_eq!(code(&o), 2);
    let o = bin(&["adj", "e0", ";0", ";1", "--fuel", "ten"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("`ten`"));
    let o = bin(&["indexrel", "adj", "1", "2", "--spec", "nope"]);
    assert_eq!(code(&o), 2);
    // domain errors carry the module's message
    let o = bin(&["witness", "e0", "1;0", ";1"]);
    assert_eq!(code(&o), 3);
    assert!(stderr(&o).contains("eventually equal"), "{}", stderr(&o));
    let o = bin(&["witness", "turing", ";0", ";0"]);
    assert_eq!(code(&o), 3);
    let o = bin(&["indexrel", "witness", "2", "3", "6", "--spec", "sum"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn witnesses_for_each_graphing() {
    let cases: [(&str, &str, &str); 5] = [
        ("e0", "1,1;0", "0,1;0"),
        ("e0n", "3,1;0", "0,2;0"),
        ("vitali", "1/2", "-3/4"),
        ("universal", "3", "5"),
        ("product", "(1;0 | 1,1;0)", "(0,1;0 | 1;0)"),
    ];
    for (g, x, y) in cases {
        let o = bin(&["witness", g, x, y]);
        assert_eq!(code(&o), 0, "{g}: {}", stderr(&o));
        let out = stdout(&o);
        assert!(!field(&out, "witness").is_empty(), "{g}: {out}");
        assert!(!out.contains(": false"), "{g}: {out}");
    }
}

#[test]
fn reduction_witnesses_with_hints() {
    let a: EPSeq = "1,0,0,1;0,1".parse().unwrap();
    let s: SwapList = "0-3,1-5".parse().unwrap();
    let inv = s.inverse();
    let ap = EPSeq::from_fn(6, 2, |n| a.at(inv.apply(n as u64) as usize));
    let e = swap_program(&s.inverse()).unwrap();
    let back = swap_program(&s).unwrap();
    let (a, ap) = (a.to_string(), ap.to_string());
    let o = bin(&["witness", "oneequiv", &a, &ap, "--hint", &e.to_string()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    let b: EPSeq = field(&out, "witness")[0].parse().unwrap();
    assert!(!out.contains(": false"), "{out}");
    assert_eq!(field(&out, "change_point").len(), 1);
    let hint = format!("{e},{back}");
    let o = bin(&["witness", "mequiv", &a, &ap, "--hint", &hint]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let b2: EPSeq = field(&stdout(&o), "witness")[0].parse().unwrap();
    assert_eq!(b, b2);
}

#[test]
fn index_relation_commands() {
    let o = bin(&["indexrel", "witness", "2", "3", "5", "--spec", "sum"]);
    assert_eq!(code(&o), 0);
    let e = field(&stdout(&o), "witness")[0].to_string();
    for a in ["2", "3"] {
        let o = bin(&["indexrel", "adj", a, &e, "--spec", "sum"]);
        assert_eq!(stdout(&o).trim(), "adjacent: true");
    }
    let o = bin(&["indexrel", "adj", "4", &e, "--spec", "sum"]);
    assert_eq!(stdout(&o).trim(), "adjacent: false");
}

#[test]
fn structure_commands() {
    let unary = r#"{"arities":[1],"relations":[{"default":"bot","exceptions":[[0],[2]]}]}"#;
    let o = bin(&["struct", "eval", unary, "0", "2"]);
    assert_eq!(stdout(&o).trim(), "value: true");
    let o = bin(&["struct", "badcoding", EQUALITY]);
    assert_eq!(stdout(&o).trim(), "bad coding: true");
    let o = bin(&["struct", "coding", unary]);
    assert_eq!(code(&o), 0);
    let pi = field(&stdout(&o), "shuffle")[0].to_string();
    let o = bin(&["struct", "coding", unary, "0", &pi]);
    assert_eq!(stdout(&o).trim(), "coding: true");
    let o = bin(&["struct", "pushforward", unary, "0-5"]);
    let y: LStruct = stdout(&o).trim().parse().unwrap();
    assert!(y.eval(0, &[5]).unwrap() && !y.eval(0, &[0]).unwrap());
    let o = bin(&["struct", "ciso-adj", unary, unary]);
    assert_eq!(stdout(&o).trim(), "adjacent: false");
}

#[test]
fn ciso_witness_from_hint() {
    let x = r#"{"arities":[1],"relations":[{"default":"bot","exceptions":[[0],[2]]}]}"#;
    let xp = r#"{"arities":[1],"relations":[{"default":"bot","exceptions":[[1],[2]]}]}"#;
    let s: SwapList = "0-1".parse().unwrap();
    let e = swap_program(&s).unwrap().to_string();
    let o = bin(&["struct", "ciso-witness", x, xp, "--hint", &e]);
    assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));
    let out = stdout(&o);
    let _: LStruct = field(&out, "witness")[0].parse().unwrap();
    assert!(!out.contains(": false"), "{out}");
}

#[test]
fn jump_commands() {
    let sp = r#"{"size":3,"blocks":[[0,1,2]],"edges":[[0,1],[1,2]]}"#;
    let o = bin(&["jump", "dist", sp, ";0", ";2"]);
    assert_eq!(stdout(&o).trim(), "distance: 2");
    let o = bin(&["jump", "adj", sp, ";0", ";1"]);
    assert_eq!(stdout(&o).trim(), "adjacent: true");
    let o = bin(&["jump", "path", sp, "0,2;1", "1;2,0"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(field(&out, "edges checked"), ["true"]);
    let steps: Vec<EPSeq> = out
        .lines()
        .filter(|l| l.starts_with("step "))
        .map(|l| l.split_once(": ").unwrap().1.parse().unwrap())
        .collect();
    assert_eq!(steps.first().unwrap().to_string(), "0,2;1");
    assert_eq!(steps.last().unwrap().to_string(), "1;2,0");
    let o = bin(&["jump", "adj", sp, ";0", ";7"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn vm_commands() {
    let o = bin(&["vm", "run", "21", "4"]);
    assert_eq!(stdout(&o).trim(), "halted: 5");
    let o = bin(&["vm", "run", "69", "2", "--oracle", "5,6,7;0"]);
    assert_eq!(stdout(&o).trim(), "halted: 7");
    let p = temp_file("succ.txt", "INC r0\nHALT\n");
    let o = bin(&["vm", "encode", p.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "code: 21");
    let o = bin(&["vm", "decode", "21"]);
    assert_eq!(stdout(&o), "INC r0\nHALT\n");
    let o = bin(&["vm", "run", "21", "4", "--fuel", "1:1"]);
    assert!(stdout(&o).starts_with("out of fuel"));
}

#[test]
fn json_outputs_match_schema() {
    let v = validator("cli-output.schema.json");
    let unary = r#"{"arities":[1],"relations":[{"default":"bot","exceptions":[[0],[2]]}]}"#;
    let runs: Vec<Vec<&str>> = vec![
        vec!["adj", "e0", "1,1;0", "0,1;0"],
        vec!["adj", "turing", "1;0", "0,1;0", "--fuel", "200:4"],
        vec!["witness", "vitali", "1/2", "-3/4"],
        vec!["witness", "universal", "(3,5,8)", "5"],
        vec!["indexrel", "witness", "2", "3", "5", "--spec", "sum"],
        vec!["synth", EQUALITY, "0"],
        vec!["struct", "coding", unary],
        vec!["struct", "pushforward", unary, "0-5"],
        vec![
            "jump",
            "dist",
            r#"{"size":2,"blocks":[[0],[1]],"edges":[]}"#,
            ";0",
            ";1",
        ],
        vec!["vm", "run", "21", "4"],
        vec!["verify", "jumps", "--seed", "3"],
        vec!["explain", "jump"],
    ];
    for mut args in runs {
        args.extend(["--format", "json"]);
        let o = bin(&args);
        assert!(code(&o) == 0 || code(&o) == 1, "{args:?}: {}", stderr(&o));
        let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(doc["schema_version"], 1);
        assert_valid(&v, &doc);
    }
}

#[test]
fn bundled_files_match_schemas() {
    let sc = validator("scenario.schema.json");
    for e in std::fs::read_dir(root().join("crates/core/scenarios")).unwrap() {
        let doc: Value =
            serde_json::from_str(&std::fs::read_to_string(e.unwrap().path()).unwrap()).unwrap();
        assert_valid(&sc, &doc);
    }
    let st = validator("structure.schema.json");
    assert_valid(&st, &serde_json::from_str(EQUALITY).unwrap());
    let rep = validator("report.schema.json");
    let o = bin(&["verify", "negative-controls", "--format", "json"]);
    assert_valid(&rep, &serde_json::from_str(&stdout(&o)).unwrap());
}

fn reparses<T: std::str::FromStr<Err = Error> + ToString>(s: &str) -> bool {
    s.parse::<T>().map(|v| v.to_string() == s).unwrap_or(false)
}

fn seq_text() -> impl Strategy<Value = String> {
    (
        prop::collection::vec(0u64..2, 0..4),
        prop::collection::vec(0u64..2, 1..3),
    )
        .prop_map(|(p, q)| EPSeq::new(p, q).unwrap().to_string())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Every point the CLI prints parses back to itself.
    #[test]
    fn printed_points_reparse(x in seq_text(), y in seq_text(), p in -9i64..9, q in 2i64..6) {
        let o = bin(&["witness", "product", &format!("({x} | {y})"), &format!("({y} | {x})")]);
        for w in field(&stdout(&o), "witness") {
            prop_assert!(reparses::<PairPoint<EPSeq, EPSeq>>(w), "{w}");
        }
        let r = Rational::new(p, q).unwrap();
        let o = bin(&["witness", "vitali", &r.to_string(), "1/2"]);
        for w in field(&stdout(&o), "witness") {
            prop_assert!(reparses::<Rational>(w), "{w}");
        }
        let o = bin(&["witness", "universal", &p.unsigned_abs().to_string(), &q.to_string()]);
        for w in field(&stdout(&o), "witness") {
            prop_assert!(reparses::<UVertex>(w), "{w}");
        }
    }
}
