//! Ordered extended logic programs and their preferred answer sets.
//!
//! A program is a set of named rules with classical and default negation,
//! together with a strict partial order on rule names (`r1 < r2` ranks `r2`
//! higher). Three preference strategies are supported:
//!
//! * **D** couples preference with strict groundedness,
//! * **W** tolerates rules whose head was already derived,
//! * **B** separates preference from groundedness altogether.
//!
//! Every D-preferred answer set is W-preferred, every W-preferred one is
//! B-preferred, and every B-preferred one is a standard answer set.

pub mod compile;
pub mod error;
pub mod model;
pub mod preference;
pub mod preserve;
pub mod semantics;
pub mod solve;
pub mod strat;
pub mod text;

pub use error::{Error, Result};
pub use model::{
    lits, render_set, Atom, Closure, Literal, LiteralSet, OrderedProgram, PartialOrder, Program,
    Rule, Strategy, Tag, Trace, TraceStep,
};
pub use preference::{c_pref, c_pref_traced, is_preferred, preferred_answer_sets};
pub use preserve::{is_order_preserving, EnumerationWitness};
pub use semantics::{enumerate_answer_sets, is_answer_set, DEFAULT_CAP};
pub use solve::{decide, solve, Via};
pub use strat::{stratify, Stratification};
pub use text::{parse_program, serialize_program};
