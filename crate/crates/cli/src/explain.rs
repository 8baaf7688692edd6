//! Static descriptions for `arithgraph explain <topic>`.

pub const TOPICS: [&str; 13] = [
    "e0",
    "e0n",
    "vitali",
    "turing",
    "oneequiv",
    "mequiv",
    "universal",
    "product",
    "indexrel",
    "struct",
    "jump",
    "vm",
    "verify",
];

const E0: &str = "\
e0: eventual equality on binary sequences.
Edge: x ~ y when one of them, say y, has the form sigma_n followed by x from
index n+1, where sigma_n = 0^n 1.
Witness: sigma_n then x, for the least admissible n past the last
disagreement. Adjacency is decided exactly; the diameter is 2.
Points: eventually periodic sequences written \"prefix;period\".";

const E0N: &str = "\
e0n: eventual equality on Baire space.
Edge: x(0) != y(0) and x, y agree beyond max(x(0), y(0)).
Witness: x with its first entry replaced by a large enough k.
Adjacency is decided exactly; the diameter is 2.";

const VITALI: &str = "\
vitali: rational differences, with an integer difference counted separately.
Clause (i): x - y is a nonzero integer.
Clause (ii): x <= y, 1 <= y, and y - x - q_n is an integer for some n <= y.
Pinned enumeration q_1, q_2, ... of the non-integer rationals: positive p/q in
lowest terms with q >= 2, listed by increasing p + q and then by increasing p
(1/2, 1/3, 1/4, 2/3, 3/2, ...), each followed by its negative.
Adjacency is decided exactly; the diameter is 2.";

const TURING: &str = "\
turing: Turing equivalence on binary sequences.
Edge: z = sigma_n followed by y with programs e0, e1 < n computing y from x
and x from y using the register machine with oracle.
Totality cannot be confirmed in finite time, so adjacency is never verified;
it is refuted once every candidate program below n is caught disagreeing
within the fuel budget. The witness needs --hint e0,e1.";

const ONEEQUIV: &str = "\
oneequiv: 1-equivalence on sets of naturals.
Clause (i): B is neither empty nor all of the naturals.
Clause (ii): with n the least number > 0 such that B(n-1) != B(n), some
program from the bound set for n is a 1-reduction of A to B.
Deviation, the S(n) substitution: the bound set is the finite set S(n) of
swapping programs moving only numbers below 2n, and their compositions with a
program of index below n. The swapping family is decided exactly; composed
candidates are checked on inputs below the fuel bound.
The witness needs --hint e with e a reduction from the second set to the first.";

const MEQUIV: &str = "\
mequiv: m-equivalence on sets of naturals.
Clauses (i)/(ii) as for oneequiv, with the S(n) substitution. The bound set
also admits the composition with the swapping program on the right, which
the reverse reduction needs.
The witness needs --hint e,e_back for reductions in both directions.";

const UNIVERSAL: &str = "\
universal: diameter-3 graph for n E m iff R(n, m, k) for some k.
Vertices are naturals and triples (n,m,k); a natural a is joined to (n,m,k)
when a is n or m and R(n, m, k) holds. The predicate is chosen with --spec.
Diameter 3 is measured between naturals; two triples can be 4 apart.";

const PRODUCT: &str = "\
product: e0 x e0. Points are written \"(x | y)\".
Two distinct pairs are adjacent when each coordinate is equal or adjacent.
The witness is built coordinatewise from the e0 witness.";

const INDEXREL: &str = "\
indexrel: graphs of index equivalence relations through special-form programs.
Edge: a ~ e when e has special form and either Main(e) = a, or Code1(e) = a
and R(Main(e), a, Code2(e)).
Witness for R(a, b, k): the special-form index with Main = a, Code1 = b,
Code2 = k. Specs: sum, equal, w-agree (choose with --spec).";

const STRUCT: &str = "\
struct: computable isomorphism and biembeddability of structures on the
naturals, each relation a trivial default formula flipped on finitely many
exceptions.
Edge: y lacks the bad coding property, and with (i, pi, a) the least coding
data of y and n the change point of the coded set, some member of the bound
set S(n) is an isomorphism from x to y.
The witness pushes x forward along swaps so that the coded set changes
exactly at n. Coding searches run over exceptional numbers, formula constants
and a few fresh numbers; fresh numbers are interchangeable, so this is exact.";

const JUMP: &str = "\
jump: the graph H on sequences of points of a finite space.
Clause (H1): corresponding points are at distance at most 1.
Clause (H2): decided exactly by cutting the quantifier off at the end of the
joint window of the two sequences.
Claim 1 (rearrangement): one H step turns a sequence into a pair distinct
sequence with the same values.
Claim 2 (midpoint): for distance k + 1 >= 2 there is w at distance 1 from xs
and k from ys.
jump path combines Claims 1 and 2 into a path of length at most max(2, l);
repeated consecutive points are dropped.";

const VM: &str = "\
vm: register machines with an oracle instruction, numbered by codes.
Code c >= 1 has tag (c-1) mod 4: raw program, swap program, composition
pair(e1, e2), or special form pair(a, pair(b, c)). Identity is 5, successor
21, and e* = 69 copies the oracle.
vm run takes a program file or a numeric code, an input, --oracle and --fuel.";

const VERIFY: &str = "\
verify: run a scenario file or a bundled scenario by name.
Checks: symmetry and irreflexivity, soundness against an independent oracle,
witness completeness, and induced-subgraph diameter. Reports are JSON with a
schema_version field; --seed overrides the scenario seed.";

pub fn text(topic: &str) -> Option<&'static str> {
    Some(match topic {
        "e0" => E0,
        "e0n" => E0N,
        "vitali" => VITALI,
        "turing" => TURING,
        "oneequiv" => ONEEQUIV,
        "mequiv" => MEQUIV,
        "universal" => UNIVERSAL,
        "product" => PRODUCT,
        "indexrel" => INDEXREL,
        "struct" | "ciso" => STRUCT,
        "jump" => JUMP,
        "vm" => VM,
        "verify" => VERIFY,
        _ => return None,
    })
}
