//! Command-line front end for `ordlp`.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 semantic error (cyclic
//! order, cap exceeded, program not normal, ...), 3 failed self-check in
//! `compare`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use ordlp::compile::{compile_static, translate_for};
use ordlp::preference::{c_pref_traced, e_filter};
use ordlp::solve::{decide_dynamic, solve_dynamic};
use ordlp::strat::{induced_order, perfect_model};
use ordlp::text::{
    parse_literal_list, parse_program_with, program_hash, serialize_result, serialize_rules,
    ParseMode, ResultFormat,
};
use ordlp::{
    decide, enumerate_answer_sets, is_order_preserving, render_set, solve, stratify, Error,
    LiteralSet, OrderedProgram, Strategy, Via, DEFAULT_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_SEMANTIC: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ordlp", version, about = "Preferred answer sets of ordered logic programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Program file.
    file: PathBuf,
    /// Read `prec(n, m)` atoms in the program as dynamic preferences.
    #[arg(long)]
    dynamic: bool,
    /// Largest number of distinct head literals to enumerate over.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the preferred answer sets.
    Solve {
        #[command(flatten)]
        input: Input,
        /// none, d, w or b.
        #[arg(long, default_value = "w")]
        strategy: Strategy,
        /// fixpoint, order-check, compiled (d, w) or lemma (b).
        #[arg(long)]
        via: Option<Via>,
        /// Show how each answer set was decided.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Write the compiled program.
    Compile {
        #[command(flatten)]
        input: Input,
        /// d or w.
        #[arg(long)]
        strategy: Strategy,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Decide whether one candidate set is preferred.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        strategy: Strategy,
        /// Comma-separated literals, e.g. "p,b,-f,w".
        #[arg(long)]
        candidate: String,
        #[arg(long)]
        via: Option<Via>,
        #[arg(long)]
        trace: bool,
    },
    /// Compute every strategy and verify D within W within B within AS.
    Compare {
        #[command(flatten)]
        input: Input,
    },
    /// Print layers, perfect model and induced order of a normal program.
    Stratify {
        #[command(flatten)]
        input: Input,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Core(e)
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Usage(_) => EXIT_USAGE,
        _ => EXIT_SEMANTIC,
    }
}

/// Runs the command line `argv` (program name first).
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut out = Output::default();
    match execute(cli.command, &mut out) {
        Ok(code) => out.code = code,
        Err(Failure::Usage(msg)) => {
            out.code = EXIT_USAGE;
            out.stderr.push_str(&format!("error: {msg}\n"));
        }
        Err(Failure::Core(e)) => {
            out.code = exit_code(&e);
            out.stderr.push_str(&format!("error: {e}\n"));
        }
    }
    out
}

fn load(input: &Input) -> Result<OrderedProgram, Failure> {
    let text = fs::read_to_string(&input.file)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", input.file.display())))?;
    Ok(parse_program_with(&text, mode(input))?)
}

fn mode(input: &Input) -> ParseMode {
    if input.dynamic {
        ParseMode::Extended
    } else {
        ParseMode::User
    }
}

fn pick_via(via: Option<Via>, strategy: Strategy, dynamic: bool) -> Via {
    match via {
        Some(v) => v,
        None if dynamic => Via::Fixpoint,
        None => Via::default_for(strategy),
    }
}

fn solve_any(op: &OrderedProgram, s: Strategy, via: Via, input: &Input) -> ordlp::Result<Vec<LiteralSet>> {
    if input.dynamic {
        solve_dynamic(op, s, via, input.cap)
    } else {
        solve(op, s, via, input.cap)
    }
}

fn braces(set: &LiteralSet) -> String {
    format!("{{{}}}", render_set(set).join(" "))
}

/// How `via` reaches its verdict on `x`, one `%`-prefixed line each.
fn explain(op: &OrderedProgram, s: Strategy, via: Via, x: &LiteralSet, dynamic: bool) -> ordlp::Result<String> {
    let mut lines = String::new();
    match via {
        Via::Fixpoint if !dynamic => {
            let target = if s == Strategy::B { e_filter(op, x) } else { op.clone() };
            let (limit, trace) = c_pref_traced(&target, s, x);
            for line in trace.render().lines() {
                let _ = writeln!(lines, "%   {line}");
            }
            let limit = limit.as_set().map_or_else(|| "Lit".to_string(), braces);
            let _ = writeln!(lines, "%   limit: {limit}");
        }
        Via::OrderCheck => match is_order_preserving(op, s, x) {
            Ok((_, Some(w))) => {
                let _ = writeln!(lines, "%   witness: {}", w.0.join(" "));
            }
            Ok((_, None)) => {
                let _ = writeln!(lines, "%   witness: none");
            }
            Err(Error::NotAnswerSet) => {
                let _ = writeln!(lines, "%   not an answer set");
            }
            Err(e) => return Err(e),
        },
        _ => {}
    }
    Ok(lines)
}

fn execute(command: Command, out: &mut Output) -> Result<i32, Failure> {
    match command {
        Command::Solve {
            input,
            strategy,
            via,
            trace,
            json,
        } => {
            let op = load(&input)?;
            let via = pick_via(via, strategy, input.dynamic);
            let sets = solve_any(&op, strategy, via, &input)?;
            if trace {
                let mut text = String::new();
                for x in enumerate_answer_sets(op.program(), input.cap)? {
                    let _ = writeln!(text, "% candidate {}", braces(&x));
                    text.push_str(&explain(&op, strategy, via, &x, input.dynamic)?);
                    let _ = writeln!(text, "%   preferred: {}", sets.contains(&x));
                }
                if json {
                    out.stderr.push_str(&text);
                } else {
                    out.stdout.push_str(&text);
                }
            }
            let format = if json { ResultFormat::Structured } else { ResultFormat::Text };
            out.stdout
                .push_str(&serialize_result(&sets, format, &program_hash(&op), strategy.name()));
            Ok(EXIT_OK)
        }
        Command::Compile {
            input,
            strategy,
            output,
        } => {
            let op = load(&input)?;
            let compiled = if input.dynamic {
                if !op.order().is_empty() {
                    return Err(Failure::Usage(
                        "dynamic programs cannot also declare a static order".into(),
                    ));
                }
                translate_for(op.program(), strategy)?
            } else {
                compile_static(&op, strategy)?
            };
            let text = serialize_rules(&compiled.program);
            match output {
                Some(path) => write_file(&path, &text)?,
                None => out.stdout.push_str(&text),
            }
            Ok(EXIT_OK)
        }
        Command::Check {
            input,
            strategy,
            candidate,
            via,
            trace,
        } => {
            let op = load(&input)?;
            let x = parse_literal_list(&candidate, mode(&input))?;
            let via = pick_via(via, strategy, input.dynamic);
            let verdict = if input.dynamic {
                decide_dynamic(&op, strategy, via, &x)?
            } else {
                decide(&op, strategy, via, &x)?
            };
            if trace {
                out.stdout.push_str(&explain(&op, strategy, via, &x, input.dynamic)?);
            }
            let _ = writeln!(out.stdout, "{verdict}");
            Ok(EXIT_OK)
        }
        Command::Compare { input } => {
            let op = load(&input)?;
            let mut results = Vec::new();
            for (label, s) in [
                ("AS", Strategy::None),
                ("AS_B", Strategy::B),
                ("AS_W", Strategy::W),
                ("AS_D", Strategy::D),
            ] {
                let sets = solve_any(&op, s, pick_via(None, s, input.dynamic), &input)?;
                let _ = writeln!(out.stdout, "{label}: {}", sets.len());
                for line in serialize_result(&sets, ResultFormat::Text, "", s.name()).lines() {
                    let _ = writeln!(out.stdout, "  {{{line}}}");
                }
                results.push((label, sets));
            }
            let mut broken = Vec::new();
            for pair in results.windows(2) {
                let (outer, inner) = (&pair[0], &pair[1]);
                if !inner.1.iter().all(|x| outer.1.contains(x)) {
                    broken.push(format!("{} not within {}", inner.0, outer.0));
                }
            }
            if broken.is_empty() {
                out.stdout.push_str("chain: ok\n");
                Ok(EXIT_OK)
            } else {
                let _ = writeln!(out.stdout, "chain: violated ({})", broken.join(", "));
                Ok(EXIT_CHECK_FAILED)
            }
        }
        Command::Stratify { input } => {
            let op = load(&input)?;
            let Some(s) = stratify(op.program())? else {
                out.stdout.push_str("not stratifiable\n");
                return Ok(EXIT_OK);
            };
            out.stdout.push_str("layers:\n");
            for (i, layer) in s.layers.iter().enumerate() {
                let _ = writeln!(out.stdout, "  {}: {}", i + 1, layer.join(" "));
            }
            let model = perfect_model(op.program(), &s);
            let _ = writeln!(out.stdout, "perfect model: {}", braces(&model));
            out.stdout.push_str("induced order:\n");
            for (lower, higher) in induced_order(&s).closure() {
                let _ = writeln!(out.stdout, "{lower} < {higher}.");
            }
            Ok(EXIT_OK)
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}
