//! Program families for the benchmarks.

use std::fmt::Write as _;

use ordlp::{parse_program, OrderedProgram};

/// `k` independent choices `a_i` / `b_i`, each `a` rule preferred over its
/// `b` rule. `2^k` answer sets, one of them preferred.
pub fn choices(k: usize) -> OrderedProgram {
    let mut text = String::new();
    for i in 0..k {
        let _ = writeln!(text, "ra{i}: a{i} :- not b{i}.");
        let _ = writeln!(text, "rb{i}: b{i} :- not a{i}.");
        let _ = writeln!(text, "ra{i} < rb{i}.");
    }
    parse_program(&text).expect("well-formed")
}

/// A chain `p0. p1 :- p0. ...` of `n` rules under a total order, with a
/// defeasible exception at the end.
pub fn chain(n: usize) -> OrderedProgram {
    let mut text = String::from("r0: p0.\n");
    for i in 1..n {
        let _ = writeln!(text, "r{i}: p{i} :- p{}.", i - 1);
    }
    let last = n.saturating_sub(1);
    let _ = writeln!(text, "x1: q :- p{last}, not -q.");
    let _ = writeln!(text, "x2: -q :- p0, not q.");
    let _ = writeln!(text, "x1 < x2.");
    for i in 1..n {
        let _ = writeln!(text, "r{} < r{i}.", i - 1);
    }
    parse_program(&text).expect("well-formed")
}
