#![allow(dead_code)]

use ordlp::{Literal, OrderedProgram, PartialOrder, Program, Rule};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const ATOMS: [&str; 4] = ["a", "b", "c", "d"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn literal(rng: &mut impl Rng, atoms: &[&str], classical: bool) -> Literal {
    let atom = atoms[rng.gen_range(0..atoms.len())];
    if classical && rng.gen_bool(0.3) {
        Literal::parse(&format!("-{atom}")).unwrap()
    } else {
        Literal::parse(atom).unwrap()
    }
}

fn body(rng: &mut impl Rng, atoms: &[&str], classical: bool) -> Vec<Literal> {
    let len = rng.gen_range(0..=2);
    (0..len).map(|_| literal(rng, atoms, classical)).collect()
}

fn build(rng: &mut impl Rng, heads: Vec<Literal>, atoms: &[&str], classical: bool) -> Program {
    let rules = heads
        .into_iter()
        .enumerate()
        .map(|(i, head)| {
            let pbody = body(rng, atoms, classical);
            let nbody = body(rng, atoms, classical);
            Rule::new(format!("r{}", i + 1), head, pbody, nbody)
        })
        .collect();
    Program::new(rules).unwrap()
}

/// Up to `max_rules` rules over up to four atoms, with classical negation.
pub fn program(rng: &mut impl Rng, max_rules: usize) -> Program {
    let atoms = &ATOMS[..rng.gen_range(1..=ATOMS.len())];
    let n = rng.gen_range(1..=max_rules);
    let heads = (0..n).map(|_| literal(rng, atoms, true)).collect();
    build(rng, heads, atoms, true)
}

/// Like `program`, with pairwise distinct heads.
pub fn distinct_heads_program(rng: &mut impl Rng, max_rules: usize) -> Program {
    let atoms = &ATOMS[..rng.gen_range(1..=ATOMS.len())];
    let mut pool: Vec<Literal> = atoms
        .iter()
        .flat_map(|a| [Literal::parse(a).unwrap(), Literal::parse(&format!("-{a}")).unwrap()])
        .collect();
    pool.shuffle(rng);
    let n = rng.gen_range(1..=max_rules.min(pool.len()));
    pool.truncate(n);
    build(rng, pool, atoms, true)
}

/// A random normal program that admits a stratification.
pub fn stratified_program(rng: &mut impl Rng, max_rules: usize) -> Program {
    loop {
        let atoms = &ATOMS[..rng.gen_range(1..=ATOMS.len())];
        let n = rng.gen_range(1..=max_rules);
        let heads = (0..n).map(|_| literal(rng, atoms, false)).collect();
        let p = build(rng, heads, atoms, false);
        if ordlp::stratify(&p).unwrap().is_some() {
            return p;
        }
    }
}

fn shuffled_names(rng: &mut impl Rng, program: &Program) -> Vec<String> {
    let mut names: Vec<String> = program.rules().iter().map(|r| r.name.clone()).collect();
    names.shuffle(rng);
    names
}

/// A strict partial order: a random linear arrangement of the rules, each
/// compatible pair kept with probability one half.
pub fn order(rng: &mut impl Rng, program: &Program) -> PartialOrder {
    let names = shuffled_names(rng, program);
    let mut pairs = Vec::new();
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            if rng.gen_bool(0.5) {
                pairs.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    PartialOrder::build(pairs).unwrap()
}

pub fn total_order(rng: &mut impl Rng, program: &Program) -> PartialOrder {
    let names = shuffled_names(rng, program);
    let pairs = names.windows(2).map(|w| (w[0].clone(), w[1].clone()));
    PartialOrder::build(pairs).unwrap()
}

/// Random subset of the pairs of `order`; its closure stays inside `order`.
pub fn sub_order(rng: &mut impl Rng, order: &PartialOrder) -> PartialOrder {
    let pairs: Vec<_> = order
        .closure()
        .iter()
        .filter(|_| rng.gen_bool(0.5))
        .cloned()
        .collect();
    PartialOrder::build(pairs).unwrap()
}

pub fn ordered(rng: &mut impl Rng, max_rules: usize) -> OrderedProgram {
    let p = program(rng, max_rules);
    let o = order(rng, &p);
    OrderedProgram::new(p, o).unwrap()
}

pub fn totally_ordered(rng: &mut impl Rng, max_rules: usize) -> OrderedProgram {
    let p = program(rng, max_rules);
    let o = total_order(rng, &p);
    OrderedProgram::new(p, o).unwrap()
}

/// Random subset of the distinct head literals of `op`.
pub fn head_subset(rng: &mut impl Rng, program: &Program) -> ordlp::LiteralSet {
    program
        .heads()
        .into_iter()
        .filter(|_| rng.gen_bool(0.5))
        .collect()
}
