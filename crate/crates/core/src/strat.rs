//! Stratification of normal programs, perfect models and the rule order a
//! stratification induces.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{Closure, LiteralSet, PartialOrder, Program};
use crate::semantics::t_ext;

/// Partition of a program into layers, lowest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratification {
    /// Rule names per layer, each in source order.
    pub layers: Vec<Vec<String>>,
    pub layer_of: BTreeMap<String, usize>,
}

impl Stratification {
    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }
}

/// Least-layer stratification: each rule sits at the lowest layer such that
/// rules defining its positive body are at the same or a lower layer and
/// rules defining its negative body are strictly lower. Returns `None` when
/// a negative dependency lies on a cycle.
pub fn stratify(program: &Program) -> Result<Option<Stratification>> {
    if !program.is_normal() {
        return Err(Error::NotNormal);
    }
    let rules = program.rules();
    let n = rules.len();
    // (dependent, dependency, strict)
    let mut edges = Vec::new();
    for (i, r) in rules.iter().enumerate() {
        for (j, s) in rules.iter().enumerate() {
            if r.pbody.contains(&s.head) {
                edges.push((i, j, false));
            }
            if r.nbody.contains(&s.head) {
                edges.push((i, j, true));
            }
        }
    }
    let mut layer = vec![0usize; n];
    let mut changed = true;
    while changed {
        changed = false;
        for &(i, j, strict) in &edges {
            let need = layer[j] + usize::from(strict);
            if layer[i] < need {
                if need >= n.max(1) {
                    return Ok(None);
                }
                layer[i] = need;
                changed = true;
            }
        }
    }
    let count = layer.iter().max().map_or(0, |m| m + 1);
    let mut layers = vec![Vec::new(); count];
    let mut layer_of = BTreeMap::new();
    for (i, r) in rules.iter().enumerate() {
        layers[layer[i]].push(r.name.clone());
        layer_of.insert(r.name.clone(), layer[i]);
    }
    Ok(Some(Stratification { layers, layer_of }))
}

/// Evaluates the layers bottom-up. Each layer is closed under its rules,
/// with default negation read against the model of the layers below.
pub fn perfect_model(program: &Program, s: &Stratification) -> LiteralSet {
    let mut model = LiteralSet::new();
    for names in &s.layers {
        let layer = Program::new(
            names
                .iter()
                .filter_map(|n| program.get(n).cloned())
                .collect(),
        )
        .expect("names are unique");
        let below = model.clone();
        loop {
            let derived = match t_ext(&layer, &below, &Closure::Consistent(model.clone())) {
                Closure::Consistent(set) => set,
                Closure::Lit => unreachable!("normal programs never derive complements"),
            };
            let before = model.len();
            model.extend(derived);
            if model.len() == before {
                break;
            }
        }
    }
    model
}

/// `r1 < r2` whenever `r1` lies in a higher layer than `r2`.
pub fn induced_order(s: &Stratification) -> PartialOrder {
    let pairs = s.layer_of.iter().flat_map(|(lower, &li)| {
        s.layer_of
            .iter()
            .filter(move |(_, &hi)| li > hi)
            .map(move |(higher, _)| (lower.clone(), higher.clone()))
    });
    PartialOrder::build(pairs).expect("layer order is strict")
}
