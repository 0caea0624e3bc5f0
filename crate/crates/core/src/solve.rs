//! One entry point over the interchangeable deciders.

use std::fmt;
use std::str::FromStr;

use crate::compile::{
    compile_static, solve_compiled, solve_compiled_dynamic, tag_completion,
    tag_completion_dynamic, translate_for,
};
use crate::error::{Error, Result};
use crate::model::{LiteralSet, OrderedProgram, Strategy};
use crate::preference::{
    b_lemma_check, is_preferred, is_preferred_dynamic, preferred_answer_sets,
    preferred_answer_sets_dynamic,
};
use crate::preserve::{is_order_preserving, preserving_answer_sets};
use crate::semantics::{enumerate_answer_sets, is_answer_set};

/// How preference is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Via {
    Fixpoint,
    OrderCheck,
    /// Compiled program; D and W only.
    Compiled,
    /// Greedy lemma check; B only.
    Lemma,
}

impl Via {
    pub fn name(self) -> &'static str {
        match self {
            Via::Fixpoint => "fixpoint",
            Via::OrderCheck => "order-check",
            Via::Compiled => "compiled",
            Via::Lemma => "lemma",
        }
    }

    /// Lemma for B, fixpoint otherwise.
    pub fn default_for(strategy: Strategy) -> Via {
        if strategy == Strategy::B {
            Via::Lemma
        } else {
            Via::Fixpoint
        }
    }

    pub fn supports(self, strategy: Strategy) -> bool {
        match self {
            Via::Compiled => matches!(strategy, Strategy::D | Strategy::W),
            Via::Lemma => strategy == Strategy::B,
            Via::Fixpoint | Via::OrderCheck => true,
        }
    }
}

impl fmt::Display for Via {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Via {
    type Err = Error;

    fn from_str(s: &str) -> Result<Via> {
        match s {
            "fixpoint" => Ok(Via::Fixpoint),
            "order-check" => Ok(Via::OrderCheck),
            "compiled" => Ok(Via::Compiled),
            "lemma" => Ok(Via::Lemma),
            other => Err(Error::Usage(format!("unknown decider `{other}`"))),
        }
    }
}

fn check_support(strategy: Strategy, via: Via) -> Result<()> {
    if via.supports(strategy) {
        Ok(())
    } else {
        Err(Error::Usage(format!(
            "--via {via} is not available for strategy {strategy}"
        )))
    }
}

/// Preferred answer sets of a statically ordered program, ascending.
pub fn solve(
    op: &OrderedProgram,
    strategy: Strategy,
    via: Via,
    cap: usize,
) -> Result<Vec<LiteralSet>> {
    check_support(strategy, via)?;
    match via {
        Via::Fixpoint => preferred_answer_sets(op, strategy, cap),
        Via::OrderCheck => preserving_answer_sets(op, strategy, cap),
        Via::Compiled => solve_compiled(op, strategy, cap),
        Via::Lemma => {
            let mut out = Vec::new();
            for x in enumerate_answer_sets(op.program(), cap)? {
                if b_lemma_check(op, &x)? {
                    out.push(x);
                }
            }
            Ok(out)
        }
    }
}

/// Preferred answer sets of a program whose order is given by its own
/// `prec` atoms. Fixpoint and compiled deciders only.
pub fn solve_dynamic(
    op: &OrderedProgram,
    strategy: Strategy,
    via: Via,
    cap: usize,
) -> Result<Vec<LiteralSet>> {
    check_support(strategy, via)?;
    match via {
        Via::Fixpoint => preferred_answer_sets_dynamic(op, strategy, cap),
        Via::Compiled => {
            if !op.order().is_empty() {
                return Err(Error::Usage(
                    "dynamic preferences require an empty static order".into(),
                ));
            }
            solve_compiled_dynamic(op.program(), strategy, cap)
        }
        other => Err(Error::Usage(format!(
            "--via {other} does not support dynamic preferences"
        ))),
    }
}

/// Decides a single candidate. Sets that are not answer sets of the
/// program are never preferred.
pub fn decide(op: &OrderedProgram, strategy: Strategy, via: Via, x: &LiteralSet) -> Result<bool> {
    check_support(strategy, via)?;
    if !is_answer_set(op.program(), x) {
        return Ok(false);
    }
    match via {
        Via::Fixpoint => Ok(is_preferred(op, strategy, x)),
        Via::OrderCheck => Ok(is_order_preserving(op, strategy, x)?.0),
        Via::Compiled => {
            let compiled = compile_static(op, strategy)?;
            Ok(is_answer_set(&compiled.program, &tag_completion(op, x)?))
        }
        Via::Lemma => b_lemma_check(op, x),
    }
}

/// `decide` for programs carrying their own `prec` atoms.
pub fn decide_dynamic(
    op: &OrderedProgram,
    strategy: Strategy,
    via: Via,
    x: &LiteralSet,
) -> Result<bool> {
    check_support(strategy, via)?;
    if !is_answer_set(op.program(), x) {
        return Ok(false);
    }
    match via {
        Via::Fixpoint => is_preferred_dynamic(op, strategy, x),
        Via::Compiled => {
            let compiled = translate_for(op.program(), strategy)?;
            Ok(is_answer_set(
                &compiled.program,
                &tag_completion_dynamic(op.program(), x)?,
            ))
        }
        other => Err(Error::Usage(format!(
            "--via {other} does not support dynamic preferences"
        ))),
    }
}
