//! Compilation of ordered programs into standard programs over a language
//! extended with control atoms `ap`, `bl`, `ok`, `okp` and `prec`. The
//! answer sets of the compiled program project onto the W- (or D-) preferred
//! answer sets of the source.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::model::{
    is_consistent, Atom, Closure, Literal, LiteralSet, OrderedProgram, Program, Rule, Strategy,
    Tag,
};
use crate::semantics::{cn, enumerate_answer_sets, generating_positions, is_answer_set, reduct};

/// The rule schema a compiled rule was instantiated from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Schema {
    Ap1,
    Ap2,
    Bl1,
    Bl2,
    Ok1,
    Ok2,
    Ok3,
    Ok4,
    Ok5,
    T,
    As,
    /// A preference fact of a statically ordered program.
    Prec,
}

impl Schema {
    pub fn label(self) -> &'static str {
        match self {
            Schema::Ap1 => "ap1",
            Schema::Ap2 => "ap2",
            Schema::Bl1 => "bl1",
            Schema::Bl2 => "bl2",
            Schema::Ok1 => "ok1",
            Schema::Ok2 => "ok2",
            Schema::Ok3 => "ok3",
            Schema::Ok4 => "ok4",
            Schema::Ok5 => "ok5",
            Schema::T => "t",
            Schema::As => "as",
            Schema::Prec => "prec",
        }
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Where a compiled rule came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Origin {
    pub schema: Schema,
    /// Source rule names the schema was instantiated with.
    pub sources: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledProgram {
    pub program: Program,
    /// Atoms of the source language.
    pub base: BTreeSet<Atom>,
    /// Parallel to `program.rules()`.
    pub origin: Vec<Origin>,
}

impl CompiledProgram {
    pub fn count(&self, schema: Schema) -> usize {
        self.origin.iter().filter(|o| o.schema == schema).count()
    }

    /// Copy without the rules of the given schema.
    pub fn without(&self, schema: Schema) -> CompiledProgram {
        let (rules, origin): (Vec<Rule>, Vec<Origin>) = self
            .program
            .rules()
            .iter()
            .zip(&self.origin)
            .filter(|(_, o)| o.schema != schema)
            .map(|(r, o)| (r.clone(), o.clone()))
            .unzip();
        CompiledProgram {
            program: Program::new(rules).expect("subset of unique names"),
            base: self.base.clone(),
            origin,
        }
    }
}

/// Rule count predicted for a compiled program: per source rule its two
/// `ap` rules, one `bl` rule per body literal and its `ok1` rule, plus
/// `k·n²` pairwise `ok` rules (`k` = 4 for W, 3 for D), `n³` transitivity and
/// `n²` antisymmetry rules. Preference facts are not included.
pub fn expected_rule_count(program: &Program, strategy: Strategy) -> usize {
    let n = program.len();
    let per_pair = if strategy == Strategy::D { 3 } else { 4 };
    let per_rule: usize = program
        .rules()
        .iter()
        .map(|r| 3 + r.pbody.len() + r.nbody.len())
        .sum();
    per_rule + per_pair * n * n + n * n * n + n * n
}

/// The source program together with one `prec(r, r')` fact for every pair
/// `r < r'` of the order's transitive closure.
pub fn encode_static(op: &OrderedProgram) -> Program {
    let mut rules = op.rules().to_vec();
    rules.extend(prec_facts(op));
    Program::new(rules).expect("prec fact names are fresh")
}

fn prec_facts(op: &OrderedProgram) -> Vec<Rule> {
    op.order()
        .closure()
        .iter()
        .map(|(lower, higher)| {
            Rule::new(
                format!("prec_{lower}_{higher}"),
                Literal::pos(Atom::prec(lower, higher)),
                [],
                [],
            )
        })
        .collect()
}

/// Compiles a statically ordered program. The source rules are translated
/// and the preference facts are appended as they are: a fact is never
/// subject to preference, so translating it would only add rules that
/// derive the same `prec` atom.
pub fn compile_static(op: &OrderedProgram, strategy: Strategy) -> Result<CompiledProgram> {
    let compiled = translate_for(op.program(), strategy)?;
    let mut rules = compiled.program.into_rules();
    let mut origin = compiled.origin;
    for fact in prec_facts(op) {
        let Atom::Tagged { args, .. } = &fact.head.atom else {
            unreachable!("prec facts are tagged")
        };
        origin.push(Origin {
            schema: Schema::Prec,
            sources: args.clone(),
        });
        rules.push(fact);
    }
    Ok(CompiledProgram {
        program: Program::new(rules).expect("prec fact names are fresh"),
        base: compiled.base,
        origin,
    })
}

fn tagged(tag: Tag, args: &[&str]) -> Literal {
    Literal::pos(Atom::tagged(tag, args))
}

fn atoms_of(program: &Program) -> BTreeSet<Atom> {
    program
        .rules()
        .iter()
        .flat_map(Rule::literals)
        .map(|l| l.atom.clone())
        .collect()
}

fn translate(p: &Program, strategy: Strategy) -> CompiledProgram {
    let mut rules = Vec::new();
    let mut origin = Vec::new();
    let mut emit = |rule: Rule, schema: Schema, sources: &[&str]| {
        rules.push(rule);
        origin.push(Origin {
            schema,
            sources: sources.iter().map(|s| s.to_string()).collect(),
        });
    };
    let mut by_name: Vec<&Rule> = p.rules().iter().collect();
    by_name.sort_by(|a, b| a.name.cmp(&b.name));

    for r in p.rules() {
        let n = r.name.as_str();
        let ok = tagged(Tag::Ok, &[n]);
        let ap = tagged(Tag::Ap, &[n]);
        let bl = tagged(Tag::Bl, &[n]);
        emit(
            Rule::new(format!("ap1_{n}"), r.head.clone(), [ap.clone()], []),
            Schema::Ap1,
            &[n],
        );
        emit(
            Rule::new(
                format!("ap2_{n}"),
                ap.clone(),
                std::iter::once(ok.clone()).chain(r.pbody.iter().cloned()),
                r.nbody.iter().cloned(),
            ),
            Schema::Ap2,
            &[n],
        );
        for (k, l) in r.pbody.iter().enumerate() {
            emit(
                Rule::new(format!("bl1_{n}_{}", k + 1), bl.clone(), [ok.clone()], [l.clone()]),
                Schema::Bl1,
                &[n],
            );
        }
        for (k, l) in r.nbody.iter().enumerate() {
            emit(
                Rule::new(format!("bl2_{n}_{}", k + 1), bl.clone(), [ok.clone(), l.clone()], []),
                Schema::Bl2,
                &[n],
            );
        }
        emit(
            Rule::new(
                format!("ok1_{n}"),
                ok.clone(),
                p.rules().iter().map(|o| tagged(Tag::Okp, &[n, &o.name])),
                [],
            ),
            Schema::Ok1,
            &[n],
        );
        for other in &by_name {
            let m = other.name.as_str();
            let okp = tagged(Tag::Okp, &[n, m]);
            let prec = tagged(Tag::Prec, &[n, m]);
            emit(
                Rule::new(format!("ok2_{n}_{m}"), okp.clone(), [], [prec.clone()]),
                Schema::Ok2,
                &[n, m],
            );
            emit(
                Rule::new(
                    format!("ok3_{n}_{m}"),
                    okp.clone(),
                    [prec.clone(), tagged(Tag::Ap, &[m])],
                    [],
                ),
                Schema::Ok3,
                &[n, m],
            );
            emit(
                Rule::new(
                    format!("ok4_{n}_{m}"),
                    okp.clone(),
                    [prec.clone(), tagged(Tag::Bl, &[m])],
                    [],
                ),
                Schema::Ok4,
                &[n, m],
            );
            if strategy != Strategy::D {
                emit(
                    Rule::new(
                        format!("ok5_{n}_{m}"),
                        okp,
                        [prec, other.head.clone()],
                        [],
                    ),
                    Schema::Ok5,
                    &[n, m],
                );
            }
        }
    }
    for a in p.rules() {
        for b in p.rules() {
            for c in p.rules() {
                let (a, b, c) = (a.name.as_str(), b.name.as_str(), c.name.as_str());
                emit(
                    Rule::new(
                        format!("t_{a}_{b}_{c}"),
                        tagged(Tag::Prec, &[a, c]),
                        [tagged(Tag::Prec, &[a, b]), tagged(Tag::Prec, &[b, c])],
                        [],
                    ),
                    Schema::T,
                    &[a, b, c],
                );
            }
        }
    }
    for a in p.rules() {
        for b in p.rules() {
            let (a, b) = (a.name.as_str(), b.name.as_str());
            emit(
                Rule::new(
                    format!("as_{a}_{b}"),
                    Literal::neg(Atom::prec(b, a)),
                    [tagged(Tag::Prec, &[a, b])],
                    [],
                ),
                Schema::As,
                &[a, b],
            );
        }
    }
    CompiledProgram {
        program: Program::new(rules).expect("compiled rule names are unique"),
        base: atoms_of(p),
        origin,
    }
}

/// W translation of a dynamically ordered program.
pub fn translate_w(p: &Program) -> CompiledProgram {
    translate(p, Strategy::W)
}

/// D translation: the W translation without its `ok5` rules.
pub fn translate_d(p: &Program) -> CompiledProgram {
    translate(p, Strategy::D)
}

pub fn translate_for(p: &Program, strategy: Strategy) -> Result<CompiledProgram> {
    match strategy {
        Strategy::D | Strategy::W => Ok(translate(p, strategy)),
        other => Err(Error::Usage(format!(
            "no compilation for strategy {other}; use d or w"
        ))),
    }
}

/// Canonical extension of an answer set `x` of a dynamically ordered program
/// `p` to the extended language: `ap` for generating rules, `bl` for the
/// rest, every `ok`/`okp` atom, and the `prec` pairs of `x` together with
/// the negated reversals the antisymmetry rules derive.
pub fn tag_completion_dynamic(p: &Program, x: &LiteralSet) -> Result<LiteralSet> {
    if !is_answer_set(p, x) {
        return Err(Error::NotAnswerSet);
    }
    Ok(completion(p, x.clone()))
}

/// Tag completion of an answer set of a statically ordered program; the
/// order's closure supplies the `prec` atoms.
pub fn tag_completion(op: &OrderedProgram, x: &LiteralSet) -> Result<LiteralSet> {
    if !is_answer_set(op.program(), x) {
        return Err(Error::NotAnswerSet);
    }
    Ok(completion(op.program(), with_prec_facts(op, x)))
}

fn completion(p: &Program, x: LiteralSet) -> LiteralSet {
    let generating = generating_positions(p, &x);
    let mut y = x;
    for (i, r) in p.rules().iter().enumerate() {
        let n = r.name.as_str();
        if generating.contains(&i) {
            y.insert(tagged(Tag::Ap, &[n]));
        } else {
            y.insert(tagged(Tag::Bl, &[n]));
        }
        y.insert(tagged(Tag::Ok, &[n]));
        for o in p.rules() {
            y.insert(tagged(Tag::Okp, &[n, &o.name]));
        }
    }
    let reversed: Vec<Literal> = y
        .iter()
        .filter(|l| !l.negated)
        .filter_map(|l| match &l.atom {
            Atom::Tagged {
                tag: Tag::Prec,
                args,
            } => Some(Literal::neg(Atom::prec(&args[1], &args[0]))),
            _ => None,
        })
        .collect();
    y.extend(reversed);
    y
}

fn with_prec_facts(op: &OrderedProgram, x: &LiteralSet) -> LiteralSet {
    let mut out = x.clone();
    out.extend(
        op.order()
            .closure()
            .iter()
            .map(|(l, h)| Literal::pos(Atom::prec(l, h))),
    );
    out
}

/// Keeps the literals whose atom belongs to `base`.
pub fn project(y: &LiteralSet, base: &BTreeSet<Atom>) -> LiteralSet {
    y.iter().filter(|l| base.contains(&l.atom)).cloned().collect()
}

/// Drops every literal over a tagged atom.
pub fn project_plain(y: &LiteralSet) -> LiteralSet {
    y.iter().filter(|l| !l.atom.is_tagged()).cloned().collect()
}

/// Preferred answer sets through the compiled program: each standard answer
/// set is kept when its tag completion is an answer set of the translation.
pub fn solve_compiled(op: &OrderedProgram, strategy: Strategy, cap: usize) -> Result<Vec<LiteralSet>> {
    let compiled = compile_static(op, strategy)?;
    let mut out = Vec::new();
    for x in enumerate_answer_sets(op.program(), cap)? {
        let y = tag_completion(op, &x)?;
        if is_answer_set(&compiled.program, &y) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Compiled solving for programs carrying their own `prec` atoms. Results
/// keep the source-language `prec` literals.
pub fn solve_compiled_dynamic(p: &Program, strategy: Strategy, cap: usize) -> Result<Vec<LiteralSet>> {
    let compiled = translate_for(p, strategy)?;
    let mut out = Vec::new();
    for x in enumerate_answer_sets(p, cap)? {
        let y = tag_completion_dynamic(p, &x)?;
        if is_answer_set(&compiled.program, &y) {
            out.push(project(&y, &compiled.base));
        }
    }
    Ok(out)
}

/// All answer sets of `program`, found by guessing which literals under
/// default negation hold. Each guess fixes the reduct; the guess is kept
/// when the resulting closure agrees with it. `cap` bounds the number of
/// distinct default-negated literals.
pub fn answer_sets_by_guessing(program: &Program, cap: usize) -> Result<Vec<LiteralSet>> {
    let guessed: Vec<Literal> = program
        .rules()
        .iter()
        .flat_map(|r| r.nbody.iter().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if guessed.len() > cap {
        return Err(Error::CapExceeded {
            heads: guessed.len(),
            cap,
        });
    }
    let mut found = BTreeSet::new();
    for mask in 0u64..(1u64 << guessed.len()) {
        let guess: LiteralSet = guessed
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, l)| l.clone())
            .collect();
        let Closure::Consistent(y) = cn(&reduct(program, &guess)) else {
            continue;
        };
        let agrees = guessed
            .iter()
            .all(|l| y.contains(l) == guess.contains(l));
        if agrees && is_consistent(&y) {
            found.insert(y);
        }
    }
    Ok(found.into_iter().collect())
}

/// Preferred answer sets read off every answer set of the compiled program.
/// Independent of tag completion; meant for cross-checking small programs.
pub fn solve_compiled_brute(
    op: &OrderedProgram,
    strategy: Strategy,
    cap: usize,
) -> Result<Vec<LiteralSet>> {
    let compiled = compile_static(op, strategy)?;
    brute_projections(&compiled, &compiled.base, cap)
}

pub fn brute_projections(
    compiled: &CompiledProgram,
    base: &BTreeSet<Atom>,
    cap: usize,
) -> Result<Vec<LiteralSet>> {
    let projected: BTreeSet<LiteralSet> = answer_sets_by_guessing(&compiled.program, cap)?
        .iter()
        .map(|y| project(y, base))
        .collect();
    Ok(projected.into_iter().collect())
}

/// Number of compiled answer sets projecting onto each source set.
pub fn projection_multiplicity(
    compiled: &CompiledProgram,
    base: &BTreeSet<Atom>,
    cap: usize,
) -> Result<BTreeMap<LiteralSet, usize>> {
    let mut counts = BTreeMap::new();
    for y in answer_sets_by_guessing(&compiled.program, cap)? {
        *counts.entry(project(&y, base)).or_insert(0) += 1;
    }
    Ok(counts)
}
