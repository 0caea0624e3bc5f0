//! B-preference on totally ordered programs: the defeat filter, evaluation
//! of prerequisites, the sequential operator, the linear-extension oracle and
//! the polynomial criterion over generating rules.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{Closure, LiteralSet, OrderedProgram, PartialOrder, Program, Rule};
use crate::semantics::{generating_positions, is_answer_set};

/// Default bound on the number of linear extensions the oracle will visit.
pub const DEFAULT_EXTENSION_CAP: usize = 5040;

/// Drops every rule whose head is in `x` but which `x` defeats; the order is
/// restricted to the surviving rules.
pub fn e_filter(op: &OrderedProgram, x: &LiteralSet) -> OrderedProgram {
    let rules: Vec<Rule> = op
        .rules()
        .iter()
        .filter(|r| !(x.contains(&r.head) && r.nbody.iter().any(|l| x.contains(l))))
        .cloned()
        .collect();
    let program = Program::new(rules).expect("subset of unique names");
    let order = op.order().restrict(|n| program.position(n).is_some());
    OrderedProgram::new(program, order).expect("restricted order names surviving rules")
}

/// Positions ordered from most to least preferred. Requires a total order.
fn descending(op: &OrderedProgram) -> Vec<usize> {
    let ranks = op.ranks();
    let mut positions: Vec<usize> = (0..op.len()).collect();
    positions.sort_by_key(|&i| ranks.higher(i).len());
    positions
}

/// Keeps rules with pbody ⊆ x, each reduced to `head ← not nbody`. Rules
/// with identical reducts collapse into one, named and ranked after the
/// most preferred original.
pub fn prereq_reduce(op: &OrderedProgram, x: &LiteralSet) -> Result<OrderedProgram> {
    if !op.is_total() {
        return Err(Error::NotTotal);
    }
    let mut kept: Vec<(usize, Rule)> = Vec::new();
    for i in descending(op) {
        let rule = &op.rules()[i];
        if !rule.pbody.iter().all(|l| x.contains(l)) {
            continue;
        }
        let reduced = Rule {
            pbody: Vec::new(),
            ..rule.clone()
        };
        if !kept.iter().any(|(_, r)| r.same_shape(&reduced)) {
            kept.push((i, reduced));
        }
    }
    kept.sort_by_key(|(i, _)| *i);
    let names: BTreeSet<String> = kept.iter().map(|(_, r)| r.name.clone()).collect();
    let program = Program::new(kept.into_iter().map(|(_, r)| r).collect())?;
    let order = op.order().restrict(|n| names.contains(n));
    OrderedProgram::new(program, order)
}

/// One step of the sequential operator: the rule considered and the set
/// after considering it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BStep {
    pub rule: String,
    pub applied: bool,
    pub set: LiteralSet,
}

/// Walks the rules from most to least preferred, adding each head unless the
/// rule is defeated by what has been collected so far. The candidate set
/// only matters through the filtering the caller applies beforehand.
pub fn b_operator_trace(op: &OrderedProgram, _x: &LiteralSet) -> Result<(Closure, Vec<BStep>)> {
    if !op.program().is_prerequisite_free() {
        return Err(Error::NotPrerequisiteFree);
    }
    if !op.is_total() {
        return Err(Error::NotTotal);
    }
    let mut current = LiteralSet::new();
    let mut steps = Vec::with_capacity(op.len());
    for i in descending(op) {
        let rule = &op.rules()[i];
        let applied = !rule.nbody.iter().any(|l| current.contains(l));
        if applied {
            current.insert(rule.head.clone());
        }
        steps.push(BStep {
            rule: rule.name.clone(),
            applied,
            set: current.clone(),
        });
    }
    Ok((Closure::from_set(current), steps))
}

pub fn b_operator(op: &OrderedProgram, x: &LiteralSet) -> Result<Closure> {
    b_operator_trace(op, x).map(|(c, _)| c)
}

/// B-preference for a fully ordered program: `x` is an answer set and the
/// sequential operator on the filtered, prerequisite-evaluated program
/// reproduces `x`.
pub fn is_b_preferred_total(op: &OrderedProgram, x: &LiteralSet) -> Result<bool> {
    if !op.is_total() {
        return Err(Error::NotTotal);
    }
    if !is_answer_set(op.program(), x) {
        return Ok(false);
    }
    let reduced = prereq_reduce(op, x)?;
    Ok(b_operator(&e_filter(&reduced, x), x)?.equals_set(x))
}

/// All linear extensions of the program's order, each listed from most to
/// least preferred. Fails once more than `cap` extensions exist.
pub fn linear_extensions(op: &OrderedProgram, cap: usize) -> Result<Vec<Vec<usize>>> {
    fn go(
        op: &OrderedProgram,
        placed: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        let n = op.len();
        if placed.len() == n {
            if out.len() == cap {
                return Err(Error::CapExceeded {
                    heads: cap + 1,
                    cap,
                });
            }
            out.push(placed.clone());
            return Ok(());
        }
        for i in 0..n {
            if used[i] || op.ranks().higher(i).iter().any(|&j| !used[j]) {
                continue;
            }
            used[i] = true;
            placed.push(i);
            go(op, placed, used, out, cap)?;
            placed.pop();
            used[i] = false;
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(op, &mut Vec::new(), &mut vec![false; op.len()], &mut out, cap)?;
    Ok(out)
}

fn total_order_from(op: &OrderedProgram, sequence: &[usize]) -> PartialOrder {
    let names: Vec<&str> = sequence
        .iter()
        .map(|&i| op.rules()[i].name.as_str())
        .collect();
    let pairs = names
        .iter()
        .enumerate()
        .flat_map(|(hi, &h)| names[hi + 1..].iter().map(move |&l| (l, h)));
    PartialOrder::build(pairs).expect("a sequence is acyclic")
}

/// B-preference by definition: some total extension of the order makes `x`
/// B-preferred.
pub fn b_extension_oracle(op: &OrderedProgram, x: &LiteralSet, cap: usize) -> Result<bool> {
    for ext in linear_extensions(op, cap)? {
        let total = op.with_order(total_order_from(op, &ext))?;
        if is_b_preferred_total(&total, x)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Polynomial B check. Every rule whose prerequisites hold in `x` but whose
/// head is missing must sit below a generating rule that defeats it. With a
/// partial order the placement is searched for top-down: a rule can be
/// placed once all its superiors are, and such a rule needs one of its
/// defeaters placed first. Placing a rule never disables another, so the
/// greedy walk succeeds iff some linear extension satisfies the criterion.
pub fn b_lemma_check(op: &OrderedProgram, x: &LiteralSet) -> Result<bool> {
    if !is_answer_set(op.program(), x) {
        return Err(Error::NotAnswerSet);
    }
    let filtered = e_filter(op, x);
    let rules = filtered.rules();
    let ranks = filtered.ranks();
    let generating: BTreeSet<usize> = generating_positions(filtered.program(), x)
        .into_iter()
        .collect();
    let defeaters: Vec<Option<Vec<usize>>> = rules
        .iter()
        .map(|r| {
            let blocked = r.pbody.iter().all(|l| x.contains(l)) && !x.contains(&r.head);
            blocked.then(|| {
                generating
                    .iter()
                    .copied()
                    .filter(|&g| r.nbody.contains(&rules[g].head))
                    .collect()
            })
        })
        .collect();

    let n = rules.len();
    let mut placed = vec![false; n];
    let mut remaining = n;
    loop {
        let next = (0..n).find(|&i| {
            !placed[i]
                && ranks.higher(i).iter().all(|&j| placed[j])
                && defeaters[i]
                    .as_ref()
                    .is_none_or(|ds| ds.iter().any(|&d| placed[d]))
        });
        match next {
            Some(i) => {
                placed[i] = true;
                remaining -= 1;
            }
            None => return Ok(remaining == 0),
        }
    }
}
