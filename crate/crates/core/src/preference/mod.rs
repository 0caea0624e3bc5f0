//! Preference-aware consequence operators for the D, W and B strategies and
//! the preferred-answer-set deciders built on them.
//!
//! All three step operators share the same shape. A rule `r` fires on the
//! current conclusions `X` (with `Y` the putative answer set) when
//!
//! * (I) it is active: wrt `(X, Y)` for D and W, wrt `(Y, Y)` for B;
//! * (II) no higher-ranked rule `r'` is still pending, i.e. active wrt
//!   `(Y, X)` while its head is not yet in `X` (W, B) or while `r'` itself
//!   has not fired (D).
//!
//! The limit of iterating from the empty set is the strategy's closure
//! `c_pref`; `Y` is preferred when that limit equals `Y`.

mod brewka;
mod witness;

use std::collections::BTreeSet;

pub use brewka::{
    b_extension_oracle, b_lemma_check, b_operator, b_operator_trace, e_filter,
    is_b_preferred_total, linear_extensions, prereq_reduce, BStep, DEFAULT_EXTENSION_CAP,
};
pub use witness::witness_order;

use crate::error::{Error, Result};
use crate::model::{
    is_consistent, Atom, Closure, LiteralSet, OrderedProgram, PartialOrder, Strategy, Tag, Trace,
    TraceStep,
};
use crate::semantics::{enumerate_answer_sets, is_answer_set};

/// Snapshot of one operator iteration. `applied` holds the positions of the
/// rules whose heads make up `derived`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationState {
    pub derived: Closure,
    pub applied: BTreeSet<usize>,
    pub step: usize,
}

impl IterationState {
    pub fn initial() -> IterationState {
        IterationState {
            derived: Closure::empty(),
            applied: BTreeSet::new(),
            step: 0,
        }
    }
}

fn step(
    op: &OrderedProgram,
    strategy: Strategy,
    y: &LiteralSet,
    state: &IterationState,
) -> IterationState {
    let x = match &state.derived {
        Closure::Lit => {
            return IterationState {
                step: state.step + 1,
                ..state.clone()
            }
        }
        Closure::Consistent(x) => x,
    };
    let rules = op.rules();
    let ranks = op.ranks();
    let pending = |j: usize| {
        let higher = &rules[j];
        let unsettled = match strategy {
            Strategy::D => !state.applied.contains(&j),
            _ => !x.contains(&higher.head),
        };
        higher.is_active(y, x) && unsettled
    };
    let fired: BTreeSet<usize> = (0..rules.len())
        .filter(|&i| {
            let rule = &rules[i];
            let active = match strategy {
                Strategy::B => rule.is_active(y, y),
                _ => rule.is_active(x, y),
            };
            active
                && (strategy == Strategy::None || !ranks.higher(i).iter().any(|&j| pending(j)))
        })
        .collect();
    let heads: LiteralSet = fired.iter().map(|&i| rules[i].head.clone()).collect();
    IterationState {
        derived: Closure::from_set(heads),
        applied: fired,
        step: state.step + 1,
    }
}

/// One application of the W operator.
pub fn t_w(op: &OrderedProgram, y: &LiteralSet, state: &IterationState) -> IterationState {
    step(op, Strategy::W, y, state)
}

/// One application of the D operator: a higher-ranked rule only stops
/// blocking once it has fired itself.
pub fn t_d(op: &OrderedProgram, y: &LiteralSet, state: &IterationState) -> IterationState {
    step(op, Strategy::D, y, state)
}

/// One application of the B operator: activeness of the firing rule is
/// judged against the candidate alone.
pub fn t_b(op: &OrderedProgram, y: &LiteralSet, state: &IterationState) -> IterationState {
    step(op, Strategy::B, y, state)
}

fn run(op: &OrderedProgram, strategy: Strategy, y: &LiteralSet, trace: bool) -> (Closure, Trace) {
    let mut state = IterationState::initial();
    let mut out = Trace::default();
    let record = |out: &mut Trace, s: &IterationState| {
        if trace {
            out.iterations.push(TraceStep {
                derived: s.derived.clone(),
                fired: s
                    .applied
                    .iter()
                    .map(|&i| op.rules()[i].name.clone())
                    .collect(),
            });
        }
    };
    record(&mut out, &state);
    // the chain is monotone, so it settles after at most |rules| + 1 steps
    for _ in 0..=op.len() + 1 {
        let next = step(op, strategy, y, &state);
        if next.derived == state.derived && next.applied == state.applied {
            return (state.derived, out);
        }
        debug_assert!(state.derived.is_subset(&next.derived));
        state = next;
        record(&mut out, &state);
    }
    unreachable!("preference operator failed to stabilise")
}

/// Limit of the strategy's step operator iterated from the empty set.
/// `Strategy::None` ignores the order and yields the standard `C` operator.
pub fn c_pref(op: &OrderedProgram, strategy: Strategy, y: &LiteralSet) -> Closure {
    run(op, strategy, y, false).0
}

pub fn c_pref_traced(op: &OrderedProgram, strategy: Strategy, y: &LiteralSet) -> (Closure, Trace) {
    run(op, strategy, y, true)
}

/// Fixpoint decider. For B the candidate must be an answer set and is
/// checked against the filtered program.
pub fn is_preferred(op: &OrderedProgram, strategy: Strategy, x: &LiteralSet) -> bool {
    if !is_consistent(x) {
        return false;
    }
    match strategy {
        Strategy::None => is_answer_set(op.program(), x),
        Strategy::D | Strategy::W => c_pref(op, strategy, x).equals_set(x),
        Strategy::B => {
            is_answer_set(op.program(), x)
                && c_pref(&e_filter(op, x), Strategy::B, x).equals_set(x)
        }
    }
}

/// Standard answer sets filtered by the fixpoint decider, in ascending order.
pub fn preferred_answer_sets(
    op: &OrderedProgram,
    strategy: Strategy,
    cap: usize,
) -> Result<Vec<LiteralSet>> {
    Ok(enumerate_answer_sets(op.program(), cap)?
        .into_iter()
        .filter(|x| is_preferred(op, strategy, x))
        .collect())
}

/// Preference pairs read off `prec(lower, higher)` atoms of a candidate set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DynamicRelation {
    pub pairs: BTreeSet<(String, String)>,
}

impl DynamicRelation {
    pub fn to_order(&self) -> PartialOrder {
        PartialOrder::build(self.pairs.iter().cloned()).expect("checked strict on construction")
    }
}

/// Extracts the preference relation encoded in `y`. Fails unless the
/// relation is irreflexive and transitive.
pub fn dynamic_relation(y: &LiteralSet) -> Result<DynamicRelation> {
    let pairs: BTreeSet<(String, String)> = y
        .iter()
        .filter(|l| !l.negated)
        .filter_map(|l| match &l.atom {
            Atom::Tagged {
                tag: Tag::Prec,
                args,
            } => Some((args[0].clone(), args[1].clone())),
            _ => None,
        })
        .collect();
    match PartialOrder::build(pairs.iter().cloned()) {
        Ok(order) if order.closure() == &pairs => Ok(DynamicRelation { pairs }),
        _ => Err(Error::NonStrictDynamicOrder),
    }
}

/// Resolves the rule order from the candidate's own `prec` atoms. Pairs that
/// mention names outside the program are ignored.
fn dynamic_program(op: &OrderedProgram, x: &LiteralSet) -> Option<OrderedProgram> {
    let relation = dynamic_relation(x).ok()?;
    let program = op.program();
    let order = relation
        .to_order()
        .restrict(|n| program.position(n).is_some());
    op.with_order(order).ok()
}

/// Fixpoint decider for dynamically ordered programs: the order is taken
/// from the candidate. A candidate whose preference atoms are not a strict
/// order is never preferred.
pub fn is_preferred_dynamic(op: &OrderedProgram, strategy: Strategy, x: &LiteralSet) -> Result<bool> {
    if !op.order().is_empty() {
        return Err(Error::Usage(
            "dynamic preferences require an empty static order".into(),
        ));
    }
    Ok(dynamic_program(op, x).is_some_and(|dyn_op| is_preferred(&dyn_op, strategy, x)))
}

pub fn preferred_answer_sets_dynamic(
    op: &OrderedProgram,
    strategy: Strategy,
    cap: usize,
) -> Result<Vec<LiteralSet>> {
    let mut out = Vec::new();
    for x in enumerate_answer_sets(op.program(), cap)? {
        if is_preferred_dynamic(op, strategy, &x)? {
            out.push(x);
        }
    }
    Ok(out)
}
