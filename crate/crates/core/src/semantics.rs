//! Standard answer-set machinery: reducts, consequence operators, closures,
//! brute-force enumeration and generating rules.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::model::{Closure, Literal, LiteralSet, Program, Rule};

/// Largest number of distinct head literals `enumerate_answer_sets` accepts
/// by default.
pub const DEFAULT_CAP: usize = 22;

/// A program whose rules all have an empty negative body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicProgram(Program);

impl BasicProgram {
    pub fn new(program: Program) -> Option<BasicProgram> {
        program.is_basic().then_some(BasicProgram(program))
    }

    pub fn program(&self) -> &Program {
        &self.0
    }

    pub fn rules(&self) -> &[Rule] {
        self.0.rules()
    }
}

pub fn is_active(rule: &Rule, x: &LiteralSet, y: &LiteralSet) -> bool {
    rule.is_active(x, y)
}

/// Gelfond-Lifschitz reduct: drop rules defeated by `x`, strip `not` from the rest.
pub fn reduct(program: &Program, x: &LiteralSet) -> BasicProgram {
    let rules = program
        .rules()
        .iter()
        .filter(|r| !r.nbody.iter().any(|l| x.contains(l)))
        .map(|r| Rule {
            nbody: Vec::new(),
            ..r.clone()
        })
        .collect();
    BasicProgram(Program::new(rules).expect("names stay unique"))
}

/// Immediate consequence operator of a basic program.
pub fn t_basic(program: &BasicProgram, x: &Closure) -> Closure {
    match x {
        Closure::Lit => Closure::Lit,
        Closure::Consistent(x) => Closure::Consistent(
            program
                .rules()
                .iter()
                .filter(|r| r.pbody.iter().all(|l| x.contains(l)))
                .map(|r| r.head.clone())
                .collect(),
        ),
    }
}

/// Extended operator: heads of rules active wrt `(x, y)`.
pub fn t_ext(program: &Program, y: &LiteralSet, x: &Closure) -> Closure {
    match x {
        Closure::Lit => Closure::Lit,
        Closure::Consistent(x) => Closure::Consistent(
            program
                .rules()
                .iter()
                .filter(|r| r.is_active(x, y))
                .map(|r| r.head.clone())
                .collect(),
        ),
    }
}

/// Least logically closed set closed under `program`. Each rule fires once,
/// as soon as its last prerequisite is derived.
pub fn cn(program: &BasicProgram) -> Closure {
    let rules = program.rules();
    let mut missing: Vec<usize> = rules.iter().map(|r| r.pbody.len()).collect();
    let mut watchers: HashMap<&Literal, Vec<usize>> = HashMap::new();
    for (i, r) in rules.iter().enumerate() {
        for l in &r.pbody {
            watchers.entry(l).or_default().push(i);
        }
    }
    let mut queue: Vec<usize> = (0..rules.len()).filter(|&i| missing[i] == 0).collect();
    let mut derived = LiteralSet::new();
    while let Some(i) = queue.pop() {
        let head = &rules[i].head;
        if derived.contains(head) {
            continue;
        }
        if derived.contains(&head.complement()) {
            return Closure::Lit;
        }
        derived.insert(head.clone());
        for &j in watchers.get(head).into_iter().flatten() {
            missing[j] -= 1;
            if missing[j] == 0 {
                queue.push(j);
            }
        }
    }
    Closure::Consistent(derived)
}

/// `cn(reduct(program, x))`.
pub fn c_op(program: &Program, x: &LiteralSet) -> Closure {
    cn(&reduct(program, x))
}

pub fn is_answer_set(program: &Program, x: &LiteralSet) -> bool {
    c_op(program, x).equals_set(x)
}

/// All consistent answer sets, found by checking every subset of the
/// distinct head literals. Sets are returned in ascending order.
pub fn enumerate_answer_sets(program: &Program, cap: usize) -> Result<Vec<LiteralSet>> {
    let heads: Vec<_> = program.heads().into_iter().collect();
    if heads.len() > cap {
        return Err(Error::CapExceeded {
            heads: heads.len(),
            cap,
        });
    }
    let mut found = BTreeSet::new();
    for mask in 0u64..(1u64 << heads.len()) {
        let candidate: LiteralSet = heads
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, l)| l.clone())
            .collect();
        if crate::model::is_consistent(&candidate) && is_answer_set(program, &candidate) {
            found.insert(candidate);
        }
    }
    Ok(found.into_iter().collect())
}

/// Positions of rules with pbody ⊆ x and nbody ∩ x = ∅.
pub fn generating_positions(program: &Program, x: &LiteralSet) -> Vec<usize> {
    program
        .rules()
        .iter()
        .enumerate()
        .filter(|(_, r)| r.is_active(x, x))
        .map(|(i, _)| i)
        .collect()
}

pub fn generating_rules(program: &Program, x: &LiteralSet) -> BTreeSet<String> {
    generating_positions(program, x)
        .into_iter()
        .map(|i| program.rule(i).name.clone())
        .collect()
}
