//! `arithgraph`: adjacency queries, witnesses, synthesis, jump paths, VM
//! runs and suite execution from the command line.

mod explain;

use std::fmt::Display;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use arithgraph::fsjump::{fmt_dist, h_adjacent, h_edge, jump_path, FinSpace};
use arithgraph::graphings::{
    e0_graph, e0_witness, e0n_graph, e0n_witness, mequiv_graph, mequiv_witness, oneequiv_graph,
    oneequiv_witness, turing_graph, turing_witness, universal_path, vitali_graph, vitali_witness,
    Graphing, PairPoint, Product, ReductionWitness, UVertex, Universal,
};
use arithgraph::indexrel::{index_adjacent, index_witness, spec_by_name, IndexRelationSpec};
use arithgraph::machines::{decode, encode, Program, ProgramCode, RunOutcome, SwapList};
use arithgraph::structures::{
    ciso_adjacent, ciso_witness, has_bad_coding, is_coding, pushforward, q_find, struct_bad_coding,
    synthesize_trivial, CisoWitness, LStruct, ShuffleSeq,
};
use arithgraph::verify::{bundled, run_suite, Scenario};
use arithgraph::{EPSeq, Error, Fuel, Rational, Tri};

/// Version of every JSON document the CLI prints.
const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "arithgraph",
    version,
    about = "Graph constructions whose components are equivalence classes"
)]
struct Cli {
    /// Step budget `N` or `N:M` with `M` the input bound.
    #[arg(long, global = true)]
    fuel: Option<String>,
    /// Seed for suite runs.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Comma-separated program codes used as witness hints.
    #[arg(long, global = true)]
    hint: Option<String>,
    /// Named index relation predicate (sum, equal, w-agree).
    #[arg(long, global = true)]
    spec: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide adjacency of two points.
    Adj {
        graphing: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Build a short path between equivalent points.
    Witness {
        graphing: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Index relation graphs.
    Indexrel {
        #[command(subcommand)]
        cmd: IndexCmd,
    },
    /// Structures given as JSON files or inline JSON.
    Struct {
        #[command(subcommand)]
        cmd: StructCmd,
    },
    /// Trivial formula defining relation `i` of a structure.
    Synth { structure: String, symbol: usize },
    /// Jump graphs over a finite space.
    Jump {
        #[command(subcommand)]
        cmd: JumpCmd,
    },
    /// Register machine utilities.
    Vm {
        #[command(subcommand)]
        cmd: VmCmd,
    },
    /// Run a scenario file or a bundled scenario.
    Verify { scenario: String },
    /// Describe a construction and how this implementation realizes it.
    Explain { topic: String },
}

#[derive(Subcommand)]
enum IndexCmd {
    Adj { a: String, e: String },
    Witness { a: String, b: String, k: String },
}

#[derive(Subcommand)]
enum StructCmd {
    /// Value of relation `i` at a comma-separated tuple.
    Eval {
        structure: String,
        symbol: usize,
        tuple: String,
    },
    /// Least coding data, or whether `(i, pi)` is coding.
    Coding {
        structure: String,
        symbol: Option<usize>,
        shuffle: Option<String>,
    },
    /// Bad coding property of one relation or the whole structure.
    Badcoding {
        structure: String,
        symbol: Option<usize>,
    },
    Synth {
        structure: String,
        symbol: usize,
    },
    /// Image under a swap list such as `0-1,2-5`.
    Pushforward {
        structure: String,
        swaps: String,
    },
    CisoAdj {
        x: String,
        y: String,
    },
    CisoWitness {
        x: String,
        x_prime: String,
    },
}

#[derive(Subcommand)]
enum JumpCmd {
    Path {
        space: String,
        xs: String,
        ys: String,
    },
    Adj {
        space: String,
        xs: String,
        ys: String,
    },
    Dist {
        space: String,
        xs: String,
        ys: String,
    },
}

#[derive(Subcommand)]
enum VmCmd {
    /// Run a program file or numeric code on one input.
    Run {
        program: String,
        input: String,
        #[arg(long, default_value = ";0", allow_hyphen_values = true)]
        oracle: String,
    },
    Encode {
        program: String,
    },
    Decode {
        code: String,
    },
}

/// Failure classes with their exit codes.
enum Failure {
    Parse(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Config { .. } => Failure::Parse(e.to_string()),
            Error::Domain(_) | Error::Representation(_) => Failure::Domain(e.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

/// Result of one command: text lines, a JSON body and a pass flag.
struct Out {
    text: Vec<String>,
    json: Value,
    ok: bool,
}

impl Out {
    fn new(text: Vec<String>, json: Value) -> Self {
        Out {
            text,
            json,
            ok: true,
        }
    }
}

struct Ctx {
    fuel: Fuel,
    hint: Vec<ProgramCode>,
    spec: Option<String>,
    seed: Option<u64>,
}

fn parse<T: FromStr<Err = Error>>(s: &str) -> Res<T> {
    Ok(s.parse()?)
}

fn num(s: &str) -> Res<u64> {
    s.trim()
        .parse()
        .map_err(|_| Failure::Parse(format!("parse error at `{s}`: expected a natural number")))
}

fn parse_fuel(s: &str) -> Res<Fuel> {
    let (steps, inputs) = match s.split_once(':') {
        Some((a, b)) => (num(a)?, num(b)?),
        None => (num(s)?, Fuel::default().inputs),
    };
    Ok(Fuel::new(steps, inputs)?)
}

fn parse_hint(s: &str) -> Res<Vec<ProgramCode>> {
    s.split(',').map(num).collect()
}

/// File contents, or the argument itself when it is inline JSON.
fn load(arg: &str) -> Res<String> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| Failure::Parse(format!("cannot read `{arg}`: {e}")))
}

fn structure(arg: &str) -> Res<LStruct> {
    let text = load(arg)?;
    text.parse::<LStruct>().map_err(|e| match e {
        Error::Parse { msg, .. } => Failure::Parse(format!("parse error at `{arg}`: {msg}")),
        other => other.into(),
    })
}

fn space(arg: &str) -> Res<FinSpace> {
    let text = load(arg)?;
    serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("parse error at `{arg}`: {e}")))
}

fn tri_json(t: Tri) -> Value {
    match t {
        Tri::Verified => json!(true),
        Tri::Refuted => json!(false),
        Tri::Unknown { .. } => Value::Null,
    }
}

fn tri_text(t: Tri) -> String {
    match t {
        Tri::Verified => "true".into(),
        Tri::Refuted => "false".into(),
        u => u.to_string(),
    }
}

fn bool_out(key: &str, b: bool) -> Out {
    Out::new(
        vec![format!("{key}: {b}")],
        json!({ key.replace(' ', "_"): b }),
    )
}

fn adjacency<G>(g: &G, x: &str, y: &str, fuel: Fuel) -> Res<Out>
where
    G: Graphing,
    G::Point: FromStr<Err = Error>,
{
    let (x, y): (G::Point, G::Point) = (parse(x)?, parse(y)?);
    let t = g.adjacent(&x, &y, fuel);
    Ok(Out::new(
        vec![format!("adjacent: {}", tri_text(t))],
        json!({
            "graphing": g.name(),
            "x": x.to_string(),
            "y": y.to_string(),
            "adjacent": tri_json(t),
            "result": t.label(),
        }),
    ))
}

fn universal_for(spec: &IndexRelationSpec) -> Universal<impl Fn(u64, u64, u64) -> bool> {
    Universal::new(spec.name, spec.r)
}

fn spec_of(ctx: &Ctx) -> Res<IndexRelationSpec> {
    Ok(spec_by_name(ctx.spec.as_deref().unwrap_or("sum"))?)
}

fn product() -> Product<arithgraph::graphings::E0, arithgraph::graphings::E0> {
    Product::new(e0_graph(), e0_graph())
}

fn cmd_adj(ctx: &Ctx, graphing: &str, x: &str, y: &str) -> Res<Out> {
    let f = ctx.fuel;
    match graphing {
        "e0" => adjacency(&e0_graph(), x, y, f),
        "e0n" => adjacency(&e0n_graph(), x, y, f),
        "vitali" => adjacency(&vitali_graph(), x, y, f),
        "turing" => adjacency(&turing_graph(), x, y, f),
        "oneequiv" => adjacency(&oneequiv_graph(), x, y, f),
        "mequiv" => adjacency(&mequiv_graph(), x, y, f),
        "universal" => adjacency(&universal_for(&spec_of(ctx)?), x, y, f),
        "product" => adjacency(&product(), x, y, f),
        other => Err(Failure::Parse(format!(
            "parse error at `{other}`: unknown graphing"
        ))),
    }
}

/// Checks every edge of `path` and reports the interior points.
fn path_out<G: Graphing>(g: &G, path: Vec<G::Point>, fuel: Fuel, extra: Value) -> Out {
    let path: Vec<G::Point> = path.into_iter().fold(vec![], |mut acc, p| {
        match acc.iter().position(|q| q == &p) {
            Some(i) => acc.truncate(i + 1),
            None => acc.push(p),
        }
        acc
    });
    let mut text: Vec<String> = path[1..path.len() - 1]
        .iter()
        .map(|w| format!("witness: {w}"))
        .collect();
    let mut edges = vec![];
    let mut ok = true;
    for w in path.windows(2) {
        let t = g.adjacent(&w[0], &w[1], fuel);
        ok &= !t.is_refuted();
        text.push(format!("{} ~ {}: {}", w[0], w[1], tri_text(t)));
        edges.push(
            json!({ "from": w[0].to_string(), "to": w[1].to_string(), "adjacent": tri_json(t) }),
        );
    }
    let mut body = json!({
        "graphing": g.name(),
        "path": path.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "edges": edges,
    });
    if let (Value::Object(b), Value::Object(e)) = (&mut body, extra) {
        for (k, v) in e {
            text.push(format!(
                "{k}: {}",
                v.as_str().map_or_else(|| v.to_string(), str::to_string)
            ));
            b.insert(k, v);
        }
    }
    Out {
        text,
        json: body,
        ok,
    }
}

fn need_hints(ctx: &Ctx, n: usize, what: &str) -> Res<Vec<ProgramCode>> {
    if ctx.hint.len() == n {
        Ok(ctx.hint.clone())
    } else {
        Err(Failure::Domain(format!(
            "domain error: {what} needs --hint with {n} program code(s)"
        )))
    }
}

fn reduction_extra(w: &ReductionWitness) -> Value {
    json!({
        "change_point": w.n,
        "swaps": w.swaps.to_string(),
        "via_a": w.via_a,
        "via_a_prime": w.via_a_prime,
        "back_a_prime": w.back_a_prime,
    })
}

fn seq_pair(x: &str, y: &str) -> Res<(EPSeq, EPSeq)> {
    Ok((parse(x)?, parse(y)?))
}

/// Steps from a triple to its first coordinate.
fn to_nat(v: UVertex) -> u64 {
    match v {
        UVertex::Nat(n) => n,
        UVertex::Triple(n, _, _) => n,
    }
}

fn cmd_witness(ctx: &Ctx, graphing: &str, x: &str, y: &str) -> Res<Out> {
    let f = ctx.fuel;
    let none = json!({});
    match graphing {
        "e0" => {
            let (x, y) = seq_pair(x, y)?;
            let w = e0_witness(&x, &y)?;
            Ok(path_out(&e0_graph(), vec![x, w, y], f, none))
        }
        "e0n" => {
            let (x, y) = seq_pair(x, y)?;
            let w = e0n_witness(&x, &y)?;
            Ok(path_out(&e0n_graph(), vec![x, w, y], f, none))
        }
        "vitali" => {
            let (x, y): (Rational, Rational) = (parse(x)?, parse(y)?);
            let w = vitali_witness(x, y)?;
            Ok(path_out(&vitali_graph(), vec![x, w, y], f, none))
        }
        "turing" => {
            let (x, y) = seq_pair(x, y)?;
            let h = need_hints(ctx, 2, "turing witness")?;
            let w = turing_witness(&x, &y, h[0], h[1])?;
            Ok(path_out(&turing_graph(), vec![x, w, y], f, none))
        }
        "oneequiv" => {
            let (a, ap) = seq_pair(x, y)?;
            let h = need_hints(ctx, 1, "oneequiv witness")?;
            let w = oneequiv_witness(&a, &ap, h[0])?;
            let extra = reduction_extra(&w);
            Ok(path_out(&oneequiv_graph(), vec![a, w.b, ap], f, extra))
        }
        "mequiv" => {
            let (a, ap) = seq_pair(x, y)?;
            let h = need_hints(ctx, 2, "mequiv witness")?;
            let w = mequiv_witness(&a, &ap, h[0], h[1])?;
            let extra = reduction_extra(&w);
            Ok(path_out(&mequiv_graph(), vec![a, w.b, ap], f, extra))
        }
        "universal" => {
            let spec = spec_of(ctx)?;
            let g = universal_for(&spec);
            let (u, v): (UVertex, UVertex) = (parse(x)?, parse(y)?);
            let (n, m) = (to_nat(u), to_nat(v));
            let mid = if n == m {
                vec![UVertex::Nat(n)]
            } else {
                universal_path(n, m, spec.r, f.steps).ok_or_else(|| {
                    Failure::Domain(format!(
                        "domain error: no k below {} with R({n}, {m}, k) under spec `{}`",
                        f.steps, spec.name
                    ))
                })?
            };
            let mut path = vec![u];
            path.extend(mid);
            path.push(v);
            Ok(path_out(&g, path, f, none))
        }
        "product" => {
            let (p, q): (PairPoint<EPSeq, EPSeq>, PairPoint<EPSeq, EPSeq>) = (parse(x)?, parse(y)?);
            let coord = |a: &EPSeq, b: &EPSeq| {
                if a == b {
                    Ok(a.clone())
                } else {
                    e0_witness(a, b)
                }
            };
            let w = PairPoint(coord(&p.0, &q.0)?, coord(&p.1, &q.1)?);
            Ok(path_out(&product(), vec![p, w, q], f, none))
        }
        other => Err(Failure::Parse(format!(
            "parse error at `{other}`: unknown graphing"
        ))),
    }
}

fn cmd_index(ctx: &Ctx, cmd: &IndexCmd) -> Res<Out> {
    let spec = spec_of(ctx)?;
    match cmd {
        IndexCmd::Adj { a, e } => {
            let (a, e) = (num(a)?, num(e)?);
            let adj = index_adjacent(a, e, &spec);
            Ok(Out::new(
                vec![format!("adjacent: {adj}")],
                json!({ "spec": spec.name, "a": a, "e": e, "adjacent": adj }),
            ))
        }
        IndexCmd::Witness { a, b, k } => {
            let (a, b, k) = (num(a)?, num(b)?, num(k)?);
            let e = index_witness(a, b, k, &spec)?;
            let (ea, eb) = (index_adjacent(a, e, &spec), index_adjacent(b, e, &spec));
            let mut out = Out::new(
                vec![
                    format!("witness: {e}"),
                    format!("{a} ~ {e}: {ea}"),
                    format!("{b} ~ {e}: {eb}"),
                ],
                json!({ "spec": spec.name, "a": a, "b": b, "k": k, "witness": e,
                        "a_adjacent": ea, "b_adjacent": eb }),
            );
            out.ok = ea && eb;
            Ok(out)
        }
    }
}

fn tuple(s: &str) -> Res<Vec<u64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(num)
        .collect()
}

fn ciso_out(w: &CisoWitness, x: &LStruct, xp: &LStruct, fuel: Fuel) -> Out {
    let (tx, txp) = (ciso_adjacent(x, &w.y, fuel), ciso_adjacent(xp, &w.y, fuel));
    let text = vec![
        format!("witness: {}", w.y),
        format!("change point: {}", w.n),
        format!("swaps: {}", w.swaps),
        format!("case: {:?}", w.case),
        format!("x ~ witness: {}", tri_text(tx)),
        format!("x' ~ witness: {}", tri_text(txp)),
    ];
    let body = json!({
        "witness": serde_json::to_value(&w.y).expect("structures serialize"),
        "change_point": w.n,
        "swaps": w.swaps.to_string(),
        "case": format!("{:?}", w.case),
        "roles_swapped": w.roles_swapped,
        "relabeled": w.relabeled,
        "x_adjacent": tri_json(tx),
        "x_prime_adjacent": tri_json(txp),
    });
    Out {
        text,
        json: body,
        ok: !tx.is_refuted() && !txp.is_refuted(),
    }
}

fn synth_out(s: &str, i: usize) -> Res<Out> {
    let x = structure(s)?;
    let f = synthesize_trivial(&x, i)?;
    Ok(Out::new(
        vec![format!("formula: {f}")],
        json!({ "symbol": i, "formula": f.to_string() }),
    ))
}

fn cmd_struct(ctx: &Ctx, cmd: &StructCmd) -> Res<Out> {
    match cmd {
        StructCmd::Eval {
            structure: s,
            symbol,
            tuple: t,
        } => {
            let x = structure(s)?;
            let v = x.eval(*symbol, &tuple(t)?)?;
            Ok(bool_out("value", v))
        }
        StructCmd::Coding {
            structure: s,
            symbol,
            shuffle,
        } => {
            let x = structure(s)?;
            match (symbol, shuffle) {
                (Some(i), Some(pi)) => {
                    let pi: ShuffleSeq = parse(pi)?;
                    Ok(bool_out("coding", is_coding(&x, *i, &pi)?))
                }
                (None, None) => Ok(match q_find(&x) {
                    Some(q) => Out::new(
                        vec![
                            format!("symbol: {}", q.i),
                            format!("shuffle: {}", q.pi),
                            format!("a: {:?}", q.a),
                            format!("b: {}", q.b),
                            format!("c: {}", q.c),
                        ],
                        json!({ "coding": true, "symbol": q.i, "shuffle": q.pi.to_string(),
                                "a": q.a, "b": q.b, "c": q.c }),
                    ),
                    None => bool_out("coding", false),
                }),
                _ => Err(Failure::Parse(
                    "parse error at `coding`: give both a symbol and a shuffle, or neither".into(),
                )),
            }
        }
        StructCmd::Badcoding {
            structure: s,
            symbol,
        } => {
            let x = structure(s)?;
            let b = match symbol {
                Some(i) => has_bad_coding(&x, *i)?,
                None => struct_bad_coding(&x),
            };
            Ok(bool_out("bad coding", b))
        }
        StructCmd::Synth {
            structure: s,
            symbol,
        } => synth_out(s, *symbol),
        StructCmd::Pushforward {
            structure: s,
            swaps,
        } => {
            let x = structure(s)?;
            let sw: SwapList = parse(swaps)?;
            let y = pushforward(&x, &sw)?;
            Ok(Out::new(
                vec![y.to_string()],
                json!({ "structure": serde_json::to_value(&y).expect("structures serialize") }),
            ))
        }
        StructCmd::CisoAdj { x, y } => {
            let (x, y) = (structure(x)?, structure(y)?);
            let t = ciso_adjacent(&x, &y, ctx.fuel);
            Ok(Out::new(
                vec![format!("adjacent: {}", tri_text(t))],
                json!({ "adjacent": tri_json(t), "result": t.label() }),
            ))
        }
        StructCmd::CisoWitness { x, x_prime } => {
            let (x, xp) = (structure(x)?, structure(x_prime)?);
            let h = need_hints(ctx, 1, "ciso-witness")?;
            let w = ciso_witness(&x, &xp, h[0])?;
            Ok(ciso_out(&w, &x, &xp, ctx.fuel))
        }
    }
}

fn cmd_jump(cmd: &JumpCmd) -> Res<Out> {
    let (sp, xs, ys) = match cmd {
        JumpCmd::Path { space, xs, ys }
        | JumpCmd::Adj { space, xs, ys }
        | JumpCmd::Dist { space, xs, ys } => (space, xs, ys),
    };
    let sp = space(sp)?;
    let (xs, ys) = seq_pair(xs, ys)?;
    sp.check_seq(&xs)?;
    sp.check_seq(&ys)?;
    match cmd {
        JumpCmd::Path { .. } => {
            let mut path = vec![xs.clone()];
            path.extend(jump_path(&sp, &xs, &ys)?);
            let ok = path.windows(2).all(|w| h_edge(&sp, &w[0], &w[1]))
                && path.first() == Some(&xs)
                && path.last() == Some(&ys);
            let mut text = vec![format!("length: {}", path.len() - 1)];
            text.extend(
                path.iter()
                    .enumerate()
                    .map(|(i, p)| format!("step {i}: {p}")),
            );
            text.push(format!("edges checked: {ok}"));
            Ok(Out {
                text,
                json: json!({ "length": path.len() - 1,
                              "path": path.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                              "edges_checked": ok }),
                ok,
            })
        }
        JumpCmd::Adj { .. } => Ok(bool_out("adjacent", h_adjacent(&sp, &xs, &ys))),
        JumpCmd::Dist { .. } => {
            let d = fmt_dist(sp.dist_seq_seq(&xs, &ys));
            Ok(Out::new(
                vec![format!("distance: {d}")],
                json!({ "distance": d }),
            ))
        }
    }
}

fn program(arg: &str) -> Res<ProgramCode> {
    if arg.chars().all(|c| c.is_ascii_digit()) && !arg.is_empty() {
        return num(arg);
    }
    let text = std::fs::read_to_string(arg)
        .map_err(|e| Failure::Parse(format!("cannot read `{arg}`: {e}")))?;
    let p: Program = parse(&text)?;
    Ok(encode(&p)?)
}

fn cmd_vm(ctx: &Ctx, cmd: &VmCmd) -> Res<Out> {
    match cmd {
        VmCmd::Run {
            program: p,
            input,
            oracle,
        } => {
            let e = program(p)?;
            let (input, oracle): (u64, EPSeq) = (num(input)?, parse(oracle)?);
            let r = arithgraph::machines::run(e, input, &oracle, ctx.fuel);
            let (line, body) = match r {
                RunOutcome::Halted(v) => (
                    format!("halted: {v}"),
                    json!({ "outcome": "halted", "value": v }),
                ),
                RunOutcome::OutOfFuel => (
                    format!("out of fuel ({})", ctx.fuel),
                    json!({ "outcome": "out_of_fuel", "fuel": ctx.fuel.to_string() }),
                ),
                RunOutcome::Loops => ("loops".into(), json!({ "outcome": "loops" })),
            };
            let mut out = Out::new(vec![line], body);
            out.json["code"] = json!(e);
            Ok(out)
        }
        VmCmd::Encode { program: p } => {
            let e = program(p)?;
            Ok(Out::new(vec![format!("code: {e}")], json!({ "code": e })))
        }
        VmCmd::Decode { code } => {
            let p = decode(num(code)?);
            let text = p.to_string();
            Ok(Out::new(
                text.lines().map(str::to_string).collect(),
                json!({ "program": text }),
            ))
        }
    }
}

fn cmd_verify(ctx: &Ctx, name: &str) -> Res<Out> {
    let text = match std::fs::read_to_string(name) {
        Ok(t) => t,
        Err(_) => bundled(name)
            .ok_or_else(|| {
                Failure::Parse(format!(
                    "parse error at `{name}`: no such file or bundled scenario"
                ))
            })?
            .to_string(),
    };
    let sc = Scenario::from_json(&text)?;
    let report = run_suite(&sc, ctx.seed)?;
    let body: Value = serde_json::from_str(&report.to_json()).expect("reports are JSON");
    Ok(Out {
        text: report.to_string().lines().map(str::to_string).collect(),
        json: body,
        ok: report.passed,
    })
}

fn dispatch(cli: &Cli) -> Res<(&'static str, Out)> {
    let ctx = Ctx {
        fuel: cli
            .fuel
            .as_deref()
            .map(parse_fuel)
            .transpose()?
            .unwrap_or_default(),
        hint: cli
            .hint
            .as_deref()
            .map(parse_hint)
            .transpose()?
            .unwrap_or_default(),
        spec: cli.spec.clone(),
        seed: cli.seed,
    };
    Ok(match &cli.cmd {
        Cmd::Adj { graphing, x, y } => ("adj", cmd_adj(&ctx, graphing, x, y)?),
        Cmd::Witness { graphing, x, y } => ("witness", cmd_witness(&ctx, graphing, x, y)?),
        Cmd::Indexrel { cmd } => ("indexrel", cmd_index(&ctx, cmd)?),
        Cmd::Struct { cmd } => ("struct", cmd_struct(&ctx, cmd)?),
        Cmd::Synth { structure, symbol } => ("synth", synth_out(structure, *symbol)?),
        Cmd::Jump { cmd } => ("jump", cmd_jump(cmd)?),
        Cmd::Vm { cmd } => ("vm", cmd_vm(&ctx, cmd)?),
        Cmd::Verify { scenario } => ("verify", cmd_verify(&ctx, scenario)?),
        Cmd::Explain { topic } => {
            let text = explain::text(topic).ok_or_else(|| {
                Failure::Parse(format!(
                    "parse error at `{topic}`: unknown subcommand; try one of {}",
                    explain::TOPICS.join(", ")
                ))
            })?;
            (
                "explain",
                Out::new(
                    text.lines().map(str::to_string).collect(),
                    json!({ "topic": topic, "text": text }),
                ),
            )
        }
    })
}

fn print<T: Display>(v: T) {
    println!("{v}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok((command, out)) => {
            match cli.format {
                Format::Text => out.text.iter().for_each(print),
                Format::Json => {
                    let mut body = out.json;
                    if let Value::Object(m) = &mut body {
                        m.insert("schema_version".into(), json!(SCHEMA_VERSION));
                        m.insert("command".into(), json!(command));
                        m.insert("ok".into(), json!(out.ok));
                    }
                    print(serde_json::to_string_pretty(&body).expect("values serialize"));
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(3)
        }
    }
}
