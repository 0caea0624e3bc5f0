use crate::error::{Error, Result};
use crate::model::{Closure, LiteralSet, PartialOrder, Program};
use crate::semantics::{generating_positions, is_answer_set, t_ext};

/// A total order under which `x` is the unique W-preferred answer set.
///
/// Generating rules are ranked by the stage at which their prerequisites
/// become derivable (earlier stages rank higher, ties broken by source
/// order); all remaining rules go below them.
pub fn witness_order(program: &Program, x: &LiteralSet) -> Result<PartialOrder> {
    if !is_answer_set(program, x) {
        return Err(Error::NotAnswerSet);
    }
    // stages of T_{Π,X} iterated from the empty set
    let mut stages: Vec<LiteralSet> = vec![LiteralSet::new()];
    loop {
        let last = stages.last().expect("non-empty");
        let next = match t_ext(program, x, &Closure::Consistent(last.clone())) {
            Closure::Consistent(s) => s,
            Closure::Lit => unreachable!("answer sets are consistent"),
        };
        if &next == last {
            break;
        }
        stages.push(next);
    }
    let level = |i: usize| {
        let rule = program.rule(i);
        stages
            .iter()
            .position(|s| rule.pbody.iter().all(|l| s.contains(l)))
            .expect("generating rules have derivable prerequisites")
    };
    let generating = generating_positions(program, x);
    let mut ranked: Vec<(usize, usize)> = generating.iter().map(|&i| (level(i), i)).collect();
    ranked.sort();
    let mut sequence: Vec<usize> = ranked.into_iter().map(|(_, i)| i).collect();
    sequence.extend((0..program.len()).filter(|i| !generating.contains(i)));

    let names: Vec<&str> = sequence
        .iter()
        .map(|&i| program.rule(i).name.as_str())
        .collect();
    let pairs = names
        .iter()
        .enumerate()
        .flat_map(|(hi, &h)| names[hi + 1..].iter().map(move |&l| (l, h)));
    PartialOrder::build(pairs)
}
