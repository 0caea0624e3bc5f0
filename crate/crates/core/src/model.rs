//! Value types shared by every other module: literals, rules, programs,
//! rule orders and closures.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Functors reserved for the tag-extended language produced by compilation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    Ap,
    Bl,
    Ok,
    Okp,
    Prec,
}

impl Tag {
    pub const ALL: [Tag; 5] = [Tag::Ap, Tag::Bl, Tag::Ok, Tag::Okp, Tag::Prec];

    pub fn functor(self) -> &'static str {
        match self {
            Tag::Ap => "ap",
            Tag::Bl => "bl",
            Tag::Ok => "ok",
            Tag::Okp => "okp",
            Tag::Prec => "prec",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Tag::Ap | Tag::Bl | Tag::Ok => 1,
            Tag::Okp | Tag::Prec => 2,
        }
    }

    pub fn from_functor(name: &str) -> Option<Tag> {
        Tag::ALL.into_iter().find(|t| t.functor() == name)
    }
}

/// A propositional atom. Plain atoms form the user language; tagged atoms
/// only ever appear in compiled programs and dynamic preference atoms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// Canonical text of the atom, e.g. `p` or `edge(a,b)`.
    Plain(String),
    Tagged { tag: Tag, args: Vec<String> },
}

impl Atom {
    pub fn plain(name: impl Into<String>) -> Atom {
        Atom::Plain(name.into())
    }

    /// Builds a tagged atom. Panics if the argument count does not match the
    /// functor's arity.
    pub fn tagged(tag: Tag, args: &[&str]) -> Atom {
        assert_eq!(args.len(), tag.arity(), "wrong arity for {}", tag.functor());
        Atom::Tagged {
            tag,
            args: args.iter().map(|a| a.to_string()).collect(),
        }
    }

    pub fn prec(lower: &str, higher: &str) -> Atom {
        Atom::tagged(Tag::Prec, &[lower, higher])
    }

    pub fn is_tagged(&self) -> bool {
        matches!(self, Atom::Tagged { .. })
    }

    pub fn tag(&self) -> Option<Tag> {
        match self {
            Atom::Plain(_) => None,
            Atom::Tagged { tag, .. } => Some(*tag),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Plain(name) => f.write_str(name),
            Atom::Tagged { tag, args } => write!(f, "{}({})", tag.functor(), args.join(",")),
        }
    }
}

/// An atom or its classical negation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub negated: bool,
    pub atom: Atom,
}

impl Literal {
    pub fn pos(atom: Atom) -> Literal {
        Literal { negated: false, atom }
    }

    pub fn neg(atom: Atom) -> Literal {
        Literal { negated: true, atom }
    }

    pub fn complement(&self) -> Literal {
        Literal {
            negated: !self.negated,
            atom: self.atom.clone(),
        }
    }

    /// Parses the shorthand used throughout tests and the CLI: `p`, `-p`,
    /// `edge(a,b)`. Tag functors are accepted here; use the program parser for
    /// validated user input.
    pub fn parse(text: &str) -> Result<Literal> {
        crate::text::parse_literal(text, crate::text::ParseMode::Extended)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("-")?;
        }
        self.atom.fmt(f)
    }
}

pub type LiteralSet = BTreeSet<Literal>;

/// True if the set contains no complementary pair.
pub fn is_consistent(set: &LiteralSet) -> bool {
    set.iter()
        .filter(|l| !l.negated)
        .all(|l| !set.contains(&l.complement()))
}

/// Convenience constructor: `lits(&["p", "-f"])`.
pub fn lits(items: &[&str]) -> LiteralSet {
    items
        .iter()
        .map(|s| Literal::parse(s).expect("valid literal"))
        .collect()
}

/// Renders a literal set in canonical order (sorted by rendered text).
pub fn render_set(set: &LiteralSet) -> Vec<String> {
    let mut out: Vec<String> = set.iter().map(ToString::to_string).collect();
    out.sort();
    out
}

/// `head ← pbody, not nbody`. Bodies are kept sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub name: String,
    pub head: Literal,
    pub pbody: Vec<Literal>,
    pub nbody: Vec<Literal>,
}

impl Rule {
    pub fn new(
        name: impl Into<String>,
        head: Literal,
        pbody: impl IntoIterator<Item = Literal>,
        nbody: impl IntoIterator<Item = Literal>,
    ) -> Rule {
        let pbody: BTreeSet<Literal> = pbody.into_iter().collect();
        let nbody: BTreeSet<Literal> = nbody.into_iter().collect();
        Rule {
            name: name.into(),
            head,
            pbody: pbody.into_iter().collect(),
            nbody: nbody.into_iter().collect(),
        }
    }

    /// Shorthand for tests: `Rule::from_strs("r1", "-f", &["p"], &["f"])`.
    pub fn from_strs(name: &str, head: &str, pbody: &[&str], nbody: &[&str]) -> Rule {
        let parse = |s: &&str| Literal::parse(s).expect("valid literal");
        Rule::new(
            name,
            parse(&head),
            pbody.iter().map(parse),
            nbody.iter().map(parse),
        )
    }

    pub fn is_fact(&self) -> bool {
        self.pbody.is_empty() && self.nbody.is_empty()
    }

    /// Structural equality on (head, pbody, nbody), ignoring the name.
    pub fn same_shape(&self, other: &Rule) -> bool {
        self.head == other.head && self.pbody == other.pbody && self.nbody == other.nbody
    }

    /// pbody ⊆ x and nbody ∩ y = ∅.
    pub fn is_active(&self, x: &LiteralSet, y: &LiteralSet) -> bool {
        self.pbody.iter().all(|l| x.contains(l)) && !self.nbody.iter().any(|l| y.contains(l))
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        std::iter::once(&self.head)
            .chain(self.pbody.iter())
            .chain(self.nbody.iter())
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.head)?;
        if !self.pbody.is_empty() || !self.nbody.is_empty() {
            f.write_str(" :- ")?;
            let body: Vec<String> = self
                .pbody
                .iter()
                .map(ToString::to_string)
                .chain(self.nbody.iter().map(|l| format!("not {l}")))
                .collect();
            f.write_str(&body.join(", "))?;
        }
        f.write_str(".")
    }
}

/// A finite list of uniquely named rules, kept in source order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Program {
    rules: Vec<Rule>,
    index: HashMap<String, usize>,
}

impl Program {
    pub fn new(rules: Vec<Rule>) -> Result<Program> {
        let mut index = HashMap::with_capacity(rules.len());
        for (i, rule) in rules.iter().enumerate() {
            if index.insert(rule.name.clone(), i).is_some() {
                return Err(Error::DuplicateRuleName(rule.name.clone()));
            }
        }
        Ok(Program { rules, index })
    }

    pub fn empty() -> Program {
        Program::default()
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn rule(&self, i: usize) -> &Rule {
        &self.rules[i]
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn get(&self, name: &str) -> Option<&Rule> {
        self.position(name).map(|i| &self.rules[i])
    }

    pub fn into_rules(self) -> Vec<Rule> {
        self.rules
    }

    /// Distinct head literals.
    pub fn heads(&self) -> LiteralSet {
        self.rules.iter().map(|r| r.head.clone()).collect()
    }

    pub fn is_basic(&self) -> bool {
        self.rules.iter().all(|r| r.nbody.is_empty())
    }

    /// No classical negation anywhere.
    pub fn is_normal(&self) -> bool {
        self.rules
            .iter()
            .all(|r| r.literals().all(|l| !l.negated))
    }

    pub fn is_prerequisite_free(&self) -> bool {
        self.rules.iter().all(|r| r.pbody.is_empty())
    }
}

/// A strict partial order over rule names. `(lower, higher)` means the
/// second rule has higher priority. Two orders are equal when their
/// transitive closures are.
#[derive(Debug, Clone, Default)]
pub struct PartialOrder {
    asserted: BTreeSet<(String, String)>,
    closure: BTreeSet<(String, String)>,
}

impl PartialEq for PartialOrder {
    fn eq(&self, other: &PartialOrder) -> bool {
        self.closure == other.closure
    }
}

impl Eq for PartialOrder {}

impl PartialOrder {
    pub fn empty() -> PartialOrder {
        PartialOrder::default()
    }

    /// Transitively closes `pairs`; fails if the closure relates a name to itself.
    pub fn build<I, A, B>(pairs: I) -> Result<PartialOrder>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        let asserted: BTreeSet<(String, String)> = pairs
            .into_iter()
            .map(|(a, b)| (a.into(), b.into()))
            .collect();
        let closure = transitive_closure(&asserted);
        if let Some((a, _)) = closure.iter().find(|(a, b)| a == b) {
            return Err(Error::CyclicOrder(a.clone()));
        }
        Ok(PartialOrder { asserted, closure })
    }

    pub fn asserted(&self) -> &BTreeSet<(String, String)> {
        &self.asserted
    }

    pub fn closure(&self) -> &BTreeSet<(String, String)> {
        &self.closure
    }

    /// `lower < higher`.
    pub fn less(&self, lower: &str, higher: &str) -> bool {
        self.closure
            .contains(&(lower.to_string(), higher.to_string()))
    }

    pub fn is_empty(&self) -> bool {
        self.closure.is_empty()
    }

    pub fn names(&self) -> BTreeSet<&str> {
        self.asserted
            .iter()
            .flat_map(|(a, b)| [a.as_str(), b.as_str()])
            .collect()
    }

    /// Restricts the closure to pairs whose both ends satisfy `keep`.
    pub fn restrict(&self, keep: impl Fn(&str) -> bool) -> PartialOrder {
        let closure: BTreeSet<_> = self
            .closure
            .iter()
            .filter(|(a, b)| keep(a) && keep(b))
            .cloned()
            .collect();
        PartialOrder {
            asserted: closure.clone(),
            closure,
        }
    }
}

fn transitive_closure(pairs: &BTreeSet<(String, String)>) -> BTreeSet<(String, String)> {
    let mut succ: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for (a, b) in pairs {
        succ.entry(a.as_str()).or_default().insert(b.as_str());
    }
    let mut closure = BTreeSet::new();
    for start in succ.keys().copied() {
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        let mut stack: Vec<&str> = succ[start].iter().copied().collect();
        while let Some(n) = stack.pop() {
            if seen.insert(n) {
                if let Some(next) = succ.get(n) {
                    stack.extend(next.iter().copied());
                }
            }
        }
        for n in seen {
            closure.insert((start.to_string(), n.to_string()));
        }
    }
    closure
}

/// Position-indexed view of a rule order, used by the deciders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleOrder {
    less: Vec<Vec<bool>>,
    higher: Vec<Vec<usize>>,
}

impl RuleOrder {
    pub fn new(program: &Program, order: &PartialOrder) -> RuleOrder {
        let n = program.len();
        let mut less = vec![vec![false; n]; n];
        let mut higher = vec![Vec::new(); n];
        for (a, b) in order.closure() {
            if let (Some(i), Some(j)) = (program.position(a), program.position(b)) {
                less[i][j] = true;
            }
        }
        for (i, row) in less.iter().enumerate() {
            higher[i] = (0..n).filter(|&j| row[j]).collect();
        }
        RuleOrder { less, higher }
    }

    /// Rule `i` has lower priority than rule `j`.
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.less[i][j]
    }

    /// Positions of rules with higher priority than `i`.
    pub fn higher(&self, i: usize) -> &[usize] {
        &self.higher[i]
    }

    pub fn len(&self) -> usize {
        self.less.len()
    }

    pub fn is_empty(&self) -> bool {
        self.less.is_empty()
    }

    /// Every pair of distinct rules is comparable.
    pub fn is_total(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (i + 1..n).all(|j| self.less[i][j] || self.less[j][i]))
    }
}

/// A program together with a strict partial order over its rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedProgram {
    program: Program,
    order: PartialOrder,
    ranks: RuleOrder,
}

impl OrderedProgram {
    pub fn new(program: Program, order: PartialOrder) -> Result<OrderedProgram> {
        if let Some(name) = order.names().into_iter().find(|n| program.position(n).is_none()) {
            return Err(Error::UnknownRuleName(name.to_string()));
        }
        let ranks = RuleOrder::new(&program, &order);
        Ok(OrderedProgram {
            program,
            order,
            ranks,
        })
    }

    pub fn unordered(program: Program) -> OrderedProgram {
        OrderedProgram::new(program, PartialOrder::empty()).expect("empty order is valid")
    }

    pub fn program(&self) -> &Program {
        &self.program
    }

    pub fn order(&self) -> &PartialOrder {
        &self.order
    }

    pub fn ranks(&self) -> &RuleOrder {
        &self.ranks
    }

    pub fn rules(&self) -> &[Rule] {
        self.program.rules()
    }

    pub fn len(&self) -> usize {
        self.program.len()
    }

    pub fn is_empty(&self) -> bool {
        self.program.is_empty()
    }

    pub fn is_total(&self) -> bool {
        self.ranks.is_total()
    }

    pub fn with_order(&self, order: PartialOrder) -> Result<OrderedProgram> {
        OrderedProgram::new(self.program.clone(), order)
    }
}

/// Result of a closure computation: a consistent set or the inconsistent
/// value `Lit`, which sits above every consistent set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Closure {
    Consistent(LiteralSet),
    Lit,
}

impl Closure {
    /// Wraps `set`, collapsing to `Lit` if it holds a complementary pair.
    pub fn from_set(set: LiteralSet) -> Closure {
        if is_consistent(&set) {
            Closure::Consistent(set)
        } else {
            Closure::Lit
        }
    }

    pub fn empty() -> Closure {
        Closure::Consistent(LiteralSet::new())
    }

    pub fn as_set(&self) -> Option<&LiteralSet> {
        match self {
            Closure::Consistent(s) => Some(s),
            Closure::Lit => None,
        }
    }

    pub fn is_lit(&self) -> bool {
        matches!(self, Closure::Lit)
    }

    /// Equal to the given consistent set.
    pub fn equals_set(&self, set: &LiteralSet) -> bool {
        self.as_set() == Some(set)
    }

    /// Inclusion with `Lit` as top element.
    pub fn is_subset(&self, other: &Closure) -> bool {
        match (self, other) {
            (_, Closure::Lit) => true,
            (Closure::Lit, Closure::Consistent(_)) => false,
            (Closure::Consistent(a), Closure::Consistent(b)) => a.is_subset(b),
        }
    }
}

impl fmt::Display for Closure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Closure::Lit => f.write_str("Lit"),
            Closure::Consistent(s) => write!(f, "{{{}}}", render_set(s).join(", ")),
        }
    }
}

/// Preference strategy. `None` ignores the order altogether.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    D,
    W,
    B,
    None,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::D => "d",
            Strategy::W => "w",
            Strategy::B => "b",
            Strategy::None => "none",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Strategy> {
        match s.to_ascii_lowercase().as_str() {
            "d" => Ok(Strategy::D),
            "w" => Ok(Strategy::W),
            "b" => Ok(Strategy::B),
            "none" => Ok(Strategy::None),
            other => Err(Error::Usage(format!("unknown strategy `{other}`"))),
        }
    }
}

/// One snapshot per iteration of a preference operator.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    pub iterations: Vec<TraceStep>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub derived: Closure,
    pub fired: BTreeSet<String>,
}

impl Trace {
    /// One line per iteration: step index, derived literals, fired rules.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, step) in self.iterations.iter().enumerate() {
            let derived = match &step.derived {
                Closure::Lit => "Lit".to_string(),
                Closure::Consistent(s) => render_set(s).join(" "),
            };
            let fired: Vec<&str> = step.fired.iter().map(String::as_str).collect();
            out.push_str(&format!("{i}: {{{derived}}} [{}]\n", fired.join(" ")));
        }
        out
    }
}
