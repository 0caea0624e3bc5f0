//! Concrete syntax for ordered programs and result sets.
//!
//! ```text
//! % comment to end of line
//! r1: -f :- p, not f.      % named rule
//! b :- p.                  % unnamed rule, gets the name r<k> (k = position)
//! r2 < r1.                 % r1 has HIGHER priority than r2
//! ```
//!
//! Classical negation is written `-`, default negation `not`. Atoms are
//! identifiers, optionally applied to identifier arguments (`edge(a,b)`).
//! The functors `ap`, `bl`, `ok`, `okp` and `prec` belong to compiled
//! programs and are rejected in user input.

use std::collections::HashSet;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::model::{
    render_set, Atom, Literal, LiteralSet, OrderedProgram, PartialOrder, Program, Rule, Tag,
};

/// Which atoms the parser admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseMode {
    /// User programs: tag functors are rejected.
    User,
    /// Compiled programs and dynamically ordered programs: tag functors are
    /// accepted with their fixed arities.
    Extended,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Colon,
    If,
    Dot,
    Lt,
    Minus,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::If => "`:-`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err<T>(line: usize, col: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        col,
        message: message.into(),
    })
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        let tok = match c {
            '%' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump(&mut chars);
                }
                continue;
            }
            c if c.is_whitespace() => {
                bump(&mut chars);
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                Tok::Ident(s)
            }
            '(' => {
                bump(&mut chars);
                Tok::LParen
            }
            ')' => {
                bump(&mut chars);
                Tok::RParen
            }
            ',' => {
                bump(&mut chars);
                Tok::Comma
            }
            '.' => {
                bump(&mut chars);
                Tok::Dot
            }
            '<' => {
                bump(&mut chars);
                Tok::Lt
            }
            '-' => {
                bump(&mut chars);
                Tok::Minus
            }
            ':' => {
                bump(&mut chars);
                if chars.peek() == Some(&'-') {
                    bump(&mut chars);
                    Tok::If
                } else {
                    Tok::Colon
                }
            }
            other => return err(tl, tc, format!("unexpected character `{other}`")),
        };
        out.push(Token {
            tok,
            line: tl,
            col: tc,
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    mode: ParseMode,
}

struct RawRule {
    name: Option<(String, usize, usize)>,
    rule: Rule,
}

struct RawOrder {
    lower: String,
    higher: String,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, context: &str) -> Result<Token> {
        let t = self.next();
        if t.tok == want {
            Ok(t)
        } else {
            err(
                t.line,
                t.col,
                format!(
                    "expected {} {context}, found {}",
                    want.describe(),
                    t.tok.describe()
                ),
            )
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, usize, usize)> {
        let t = self.next();
        match t.tok {
            Tok::Ident(s) => Ok((s, t.line, t.col)),
            other => err(
                t.line,
                t.col,
                format!("expected {what}, found {}", other.describe()),
            ),
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        let (functor, line, col) = self.ident("an atom")?;
        if functor == "not" {
            return err(line, col, "`not` is reserved for default negation");
        }
        let mut args = Vec::new();
        if self.peek().tok == Tok::LParen {
            self.next();
            loop {
                let (arg, _, _) = self.ident("an argument")?;
                args.push(arg);
                let t = self.next();
                match t.tok {
                    Tok::Comma => continue,
                    Tok::RParen => break,
                    other => {
                        return err(
                            t.line,
                            t.col,
                            format!("expected `,` or `)`, found {}", other.describe()),
                        )
                    }
                }
            }
        }
        match Tag::from_functor(&functor) {
            Some(tag) => {
                if self.mode == ParseMode::User {
                    return err(
                        line,
                        col,
                        format!("`{functor}` is reserved for compiled programs"),
                    );
                }
                if args.len() != tag.arity() {
                    return err(
                        line,
                        col,
                        format!("`{functor}` takes {} argument(s)", tag.arity()),
                    );
                }
                Ok(Atom::Tagged { tag, args })
            }
            None if args.is_empty() => Ok(Atom::Plain(functor)),
            None => Ok(Atom::Plain(format!("{functor}({})", args.join(",")))),
        }
    }

    fn literal(&mut self) -> Result<Literal> {
        let negated = if self.peek().tok == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        Ok(Literal {
            negated,
            atom: self.atom()?,
        })
    }

    fn rule_rest(&mut self, name: Option<(String, usize, usize)>) -> Result<RawRule> {
        let head = self.literal()?;
        let mut pbody = Vec::new();
        let mut nbody = Vec::new();
        if self.peek().tok == Tok::If {
            self.next();
            loop {
                let is_naf = matches!(&self.peek().tok, Tok::Ident(s) if s == "not")
                    && matches!(self.peek_at(1), Tok::Ident(_) | Tok::Minus);
                if is_naf {
                    self.next();
                    nbody.push(self.literal()?);
                } else {
                    pbody.push(self.literal()?);
                }
                let t = self.next();
                match t.tok {
                    Tok::Comma => continue,
                    Tok::Dot => break,
                    other => {
                        return err(
                            t.line,
                            t.col,
                            format!("expected `,` or `.` in rule body, found {}", other.describe()),
                        )
                    }
                }
            }
        } else {
            self.expect(Tok::Dot, "after rule head")?;
        }
        Ok(RawRule {
            name,
            rule: Rule::new(String::new(), head, pbody, nbody),
        })
    }

    fn statement(&mut self) -> Result<Result<RawRule, RawOrder>> {
        if let Tok::Ident(first) = self.peek().tok.clone() {
            match self.peek_at(1) {
                Tok::Lt => {
                    self.next();
                    self.next();
                    let (higher, _, _) = self.ident("a rule name")?;
                    self.expect(Tok::Dot, "after order declaration")?;
                    return Ok(Err(RawOrder {
                        lower: first,
                        higher,
                    }));
                }
                Tok::Colon => {
                    let t = self.next();
                    self.next();
                    return self.rule_rest(Some((first, t.line, t.col))).map(Ok);
                }
                _ => {}
            }
        }
        self.rule_rest(None).map(Ok)
    }
}

/// Parses a user program (tag functors rejected).
pub fn parse_program(text: &str) -> Result<OrderedProgram> {
    parse_program_with(text, ParseMode::User)
}

pub fn parse_program_with(text: &str, mode: ParseMode) -> Result<OrderedProgram> {
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
        mode,
    };
    let mut raw_rules = Vec::new();
    let mut raw_orders = Vec::new();
    while parser.peek().tok != Tok::Eof {
        match parser.statement()? {
            Ok(r) => raw_rules.push(r),
            Err(o) => raw_orders.push(o),
        }
    }

    let mut seen = HashSet::new();
    let mut rules = Vec::with_capacity(raw_rules.len());
    for (k, raw) in raw_rules.into_iter().enumerate() {
        let name = match raw.name {
            Some((name, _, _)) => name,
            None => format!("r{}", k + 1),
        };
        if !seen.insert(name.clone()) {
            return Err(Error::DuplicateRuleName(name));
        }
        rules.push(Rule { name, ..raw.rule });
    }
    let program = Program::new(rules)?;
    for o in &raw_orders {
        for n in [&o.lower, &o.higher] {
            if program.position(n).is_none() {
                return Err(Error::UnknownRuleName(n.clone()));
            }
        }
    }
    let order = PartialOrder::build(raw_orders.into_iter().map(|o| (o.lower, o.higher)))?;
    OrderedProgram::new(program, order)
}

/// Parses a single literal such as `-f` or `prec(r1,r2)`.
pub fn parse_literal(text: &str, mode: ParseMode) -> Result<Literal> {
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
        mode,
    };
    let lit = parser.literal()?;
    let t = parser.next();
    if t.tok != Tok::Eof {
        return err(t.line, t.col, format!("trailing {}", t.tok.describe()));
    }
    Ok(lit)
}

/// Parses a comma-separated literal list, e.g. `"p, -f, w"`. Empty input
/// yields the empty set.
pub fn parse_literal_list(text: &str, mode: ParseMode) -> Result<LiteralSet> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_literal(s, mode))
        .collect()
}

/// Rules one per line in source order.
pub fn serialize_rules(program: &Program) -> String {
    let mut out = String::new();
    for rule in program.rules() {
        out.push_str(&rule.to_string());
        out.push('\n');
    }
    out
}

/// Canonical text: rules in source order, then the asserted order
/// declarations sorted lexicographically.
pub fn serialize_program(op: &OrderedProgram) -> String {
    let mut out = serialize_rules(op.program());
    for (lower, higher) in op.order().asserted() {
        out.push_str(&format!("{lower} < {higher}.\n"));
    }
    out
}

/// Hex SHA-256 of the canonical serialization.
pub fn program_hash(op: &OrderedProgram) -> String {
    hex::encode(Sha256::digest(serialize_program(op).as_bytes()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResultFormat {
    Text,
    Structured,
}

#[derive(Serialize)]
struct ResultDocument<'a> {
    #[serde(rename = "program-hash")]
    program_hash: &'a str,
    strategy: &'a str,
    #[serde(rename = "answer-sets")]
    answer_sets: Vec<Vec<String>>,
}

fn sorted_rendered(sets: &[LiteralSet]) -> Vec<Vec<String>> {
    let mut rendered: Vec<Vec<String>> = sets.iter().map(render_set).collect();
    rendered.sort_by_key(|s| s.join(" "));
    rendered
}

/// Text: one set per line, literals sorted. Structured: a JSON document with
/// `program-hash`, `strategy` and `answer-sets`.
pub fn serialize_result(
    sets: &[LiteralSet],
    format: ResultFormat,
    program_hash: &str,
    strategy: &str,
) -> String {
    let rendered = sorted_rendered(sets);
    match format {
        ResultFormat::Text => rendered
            .iter()
            .map(|s| format!("{}\n", s.join(" ")))
            .collect(),
        ResultFormat::Structured => {
            let doc = ResultDocument {
                program_hash,
                strategy,
                answer_sets: rendered,
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
    }
}
