//! Order preservation: a candidate is preferred when its generating rules
//! can be enumerated compatibly with the rule order, with groundedness (for
//! D and, weakened, for W) and with the blockage of higher-ranked rules.
//!
//! Each condition only depends on which rules have been placed so far, so the
//! search runs over sets of placed rules with a memo of dead ends.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::model::{LiteralSet, OrderedProgram, Strategy};
use crate::semantics::{generating_positions, is_answer_set};

/// Rule names in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationWitness(pub Vec<String>);

struct Search<'a> {
    op: &'a OrderedProgram,
    strategy: Strategy,
    x: &'a LiteralSet,
    generating: Vec<usize>,
    is_generating: Vec<bool>,
    dead: HashSet<Vec<bool>>,
}

impl Search<'_> {
    fn placeable(&self, candidate: usize, placed: &[bool], prefix: &LiteralSet) -> bool {
        let rules = self.op.rules();
        let ranks = self.op.ranks();
        let rule = &rules[candidate];

        let grounded = rule.pbody.iter().all(|l| prefix.contains(l));
        let ok_ground = match self.strategy {
            Strategy::D => grounded,
            Strategy::W => grounded || prefix.contains(&rule.head),
            Strategy::B | Strategy::None => true,
        };
        if !ok_ground {
            return false;
        }
        // every generating rule above the candidate comes first
        if ranks
            .higher(candidate)
            .iter()
            .any(|&j| self.is_generating[j] && !placed[j])
        {
            return false;
        }
        // higher-ranked non-generating rules must already be blocked
        ranks
            .higher(candidate)
            .iter()
            .filter(|&&j| !self.is_generating[j])
            .all(|&j| {
                let other = &rules[j];
                let no_prereq = !other.pbody.iter().all(|l| self.x.contains(l));
                let defeated = other.nbody.iter().any(|l| prefix.contains(l));
                let head_seen = match self.strategy {
                    Strategy::D => false,
                    Strategy::W => prefix.contains(&other.head),
                    Strategy::B | Strategy::None => self.x.contains(&other.head),
                };
                no_prereq || defeated || head_seen
            })
    }

    fn extend(&mut self, sequence: &mut Vec<usize>, placed: &mut Vec<bool>) -> bool {
        if sequence.len() == self.generating.len() {
            return true;
        }
        if self.dead.contains(placed) {
            return false;
        }
        let prefix: LiteralSet = sequence
            .iter()
            .map(|&i| self.op.rules()[i].head.clone())
            .collect();
        for k in 0..self.generating.len() {
            let candidate = self.generating[k];
            if placed[candidate] || !self.placeable(candidate, placed, &prefix) {
                continue;
            }
            placed[candidate] = true;
            sequence.push(candidate);
            if self.extend(sequence, placed) {
                return true;
            }
            sequence.pop();
            placed[candidate] = false;
        }
        self.dead.insert(placed.clone());
        false
    }
}

/// Decides preference by searching for an order-preserving enumeration of
/// the generating rules of `x`. Candidates are tried in source order, so the
/// returned witness is deterministic. `Strategy::None` accepts every answer
/// set with its generating rules in source order.
pub fn is_order_preserving(
    op: &OrderedProgram,
    strategy: Strategy,
    x: &LiteralSet,
) -> Result<(bool, Option<EnumerationWitness>)> {
    if !is_answer_set(op.program(), x) {
        return Err(Error::NotAnswerSet);
    }
    let generating = generating_positions(op.program(), x);
    let names = |seq: &[usize]| {
        EnumerationWitness(seq.iter().map(|&i| op.rules()[i].name.clone()).collect())
    };
    if strategy == Strategy::None {
        return Ok((true, Some(names(&generating))));
    }
    let mut is_generating = vec![false; op.len()];
    for &i in &generating {
        is_generating[i] = true;
    }
    let mut search = Search {
        op,
        strategy,
        x,
        generating,
        is_generating,
        dead: HashSet::new(),
    };
    let mut sequence = Vec::new();
    let mut placed = vec![false; op.len()];
    if search.extend(&mut sequence, &mut placed) {
        Ok((true, Some(names(&sequence))))
    } else {
        Ok((false, None))
    }
}

/// Preferred answer sets via order preservation, in ascending order.
pub fn preserving_answer_sets(
    op: &OrderedProgram,
    strategy: Strategy,
    cap: usize,
) -> Result<Vec<LiteralSet>> {
    let mut out = Vec::new();
    for x in crate::semantics::enumerate_answer_sets(op.program(), cap)? {
        if is_order_preserving(op, strategy, &x)?.0 {
            out.push(x);
        }
    }
    Ok(out)
}
