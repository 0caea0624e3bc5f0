//! Acceptance suite. Prints one line per criterion and exits non-zero if
//! any of them fails. Run with `cargo test -p ordlp --test acceptance`.

mod common;

use std::panic;
use std::process::ExitCode;

use ordlp::compile::{
    brute_projections, compile_static, expected_rule_count, solve_compiled_brute, tag_completion,
    translate_d, translate_w, Schema,
};
use ordlp::preference::{
    b_extension_oracle, b_lemma_check, b_operator_trace, c_pref_traced, e_filter,
    linear_extensions, witness_order, DEFAULT_EXTENSION_CAP,
};
use ordlp::strat::{induced_order, perfect_model};
use ordlp::text::{parse_program_with, ParseMode};
use ordlp::*;

type Outcome = Result<(), String>;

const BH: &str = include_str!("../../../programs/bh.olp");
const INC: &str = include_str!("../../../programs/inc.olp");
const INC2: &str = include_str!("../../../programs/inc2.olp");
const DVSW: &str = include_str!("../../../programs/dvsw.olp");
const DVSW2: &str = include_str!("../../../programs/dvsw2.olp");
const THREE: &str = include_str!("../../../programs/three.olp");
const FIVE_ONE: &str = include_str!("../../../programs/five_one.olp");
const DWVSB: &str = include_str!("../../../programs/dwvsb.olp");
const STRAT: &str = include_str!("../../../programs/strat.olp");

const CAP: usize = DEFAULT_CAP;

fn op(text: &str) -> OrderedProgram {
    parse_program(text).expect("shipped program parses")
}

fn pref(o: &OrderedProgram, s: Strategy) -> Vec<LiteralSet> {
    preferred_answer_sets(o, s, CAP).expect("within cap")
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn show(o: &OrderedProgram) -> String {
    serialize_program(o).replace('\n', " ")
}

fn bird_golden() -> Outcome {
    let o = op(BH);
    let x = lits(&["p", "b", "-f", "w"]);
    let x2 = lits(&["p", "b", "f", "w"]);
    let mut all = vec![x.clone(), x2.clone()];
    all.sort();
    expect("answer sets", enumerate_answer_sets(o.program(), CAP).unwrap(), all.clone())?;
    expect("W", pref(&o, Strategy::W), vec![x.clone()])?;
    expect("D", pref(&o, Strategy::D), vec![x])?;
    expect("B", pref(&o, Strategy::B), all)
}

fn bird_trace() -> Outcome {
    let o = op(BH);
    let x = lits(&["p", "b", "-f", "w"]);
    let (limit, trace) = c_pref_traced(&o, Strategy::W, &x);
    let sets: Vec<Closure> = trace.iterations.iter().map(|s| s.derived.clone()).collect();
    let want: Vec<Closure> = [
        lits(&[]),
        lits(&["p"]),
        lits(&["p", "b", "-f"]),
        lits(&["p", "b", "-f", "w"]),
    ]
    .into_iter()
    .map(Closure::Consistent)
    .collect();
    expect("iteration for X", sets, want)?;
    expect("limit for X", limit, Closure::Consistent(x))?;
    let (limit, _) = c_pref_traced(&o, Strategy::W, &lits(&["p", "b", "f", "w"]));
    expect("limit for X'", limit, Closure::Consistent(lits(&["p", "b"])))
}

fn incompatible_preferences() -> Outcome {
    for text in [INC, INC2] {
        let o = op(text);
        if enumerate_answer_sets(o.program(), CAP).unwrap().is_empty() {
            return Err(format!("no answer set for {}", show(&o)));
        }
        expect("W", pref(&o, Strategy::W), vec![])?;
        expect("D", pref(&o, Strategy::D), vec![])?;
    }
    Ok(())
}

fn d_versus_w() -> Outcome {
    for text in [DVSW, DVSW2] {
        let o = op(text);
        expect("W", pref(&o, Strategy::W), vec![lits(&["a", "b"])])?;
        expect("D", pref(&o, Strategy::D), vec![])?;
    }
    Ok(())
}

fn no_b_preferred() -> Outcome {
    let o = op(THREE);
    expect("B", pref(&o, Strategy::B), vec![])?;
    let x = lits(&["a", "b"]);
    let (_, steps) = b_operator_trace(&o, &x).map_err(|e| e.to_string())?;
    let unfiltered: Vec<LiteralSet> = steps.iter().map(|s| s.set.clone()).collect();
    expect(
        "unfiltered sequence",
        unfiltered,
        vec![lits(&["a"]), lits(&["a"]), lits(&["a"]), lits(&["a", "b"])],
    )?;
    let (_, steps) = b_operator_trace(&e_filter(&o, &x), &x).map_err(|e| e.to_string())?;
    let filtered: Vec<(String, LiteralSet)> =
        steps.iter().map(|s| (s.rule.clone(), s.set.clone())).collect();
    expect(
        "filtered sequence",
        filtered,
        vec![
            ("r2".to_string(), lits(&["-a"])),
            ("r3".to_string(), lits(&["-a"])),
            ("r4".to_string(), lits(&["-a", "b"])),
        ],
    )
}

fn b_only(text: &str) -> Outcome {
    let o = op(text);
    expect("B", pref(&o, Strategy::B), vec![lits(&["a", "b"])])?;
    expect("W", pref(&o, Strategy::W), vec![])?;
    expect("D", pref(&o, Strategy::D), vec![])
}

fn hierarchy() -> Outcome {
    let mut rng = common::rng(8);
    for _ in 0..500 {
        let o = common::ordered(&mut rng, 6);
        let all = enumerate_answer_sets(o.program(), CAP).unwrap();
        let b = pref(&o, Strategy::B);
        let w = pref(&o, Strategy::W);
        let d = pref(&o, Strategy::D);
        let within = |inner: &[LiteralSet], outer: &[LiteralSet]| inner.iter().all(|x| outer.contains(x));
        if !(within(&d, &w) && within(&w, &b) && within(&b, &all)) {
            return Err(format!("hierarchy violated on {}", show(&o)));
        }
    }
    Ok(())
}

fn cross_method() -> Outcome {
    let mut rng = common::rng(9);
    let mut disagreements = Vec::new();
    for _ in 0..500 {
        let o = common::ordered(&mut rng, 6);
        let compiled_w = compile_static(&o, Strategy::W).unwrap();
        let compiled_d = compile_static(&o, Strategy::D).unwrap();
        let extensions_ok = linear_extensions(&o, DEFAULT_EXTENSION_CAP).is_ok();
        for x in enumerate_answer_sets(o.program(), CAP).unwrap() {
            for s in [Strategy::D, Strategy::W, Strategy::B] {
                let fixpoint = is_preferred(&o, s, &x);
                let mut verdicts = vec![("order-check", is_order_preserving(&o, s, &x).unwrap().0)];
                match s {
                    Strategy::B => {
                        verdicts.push(("lemma", b_lemma_check(&o, &x).unwrap()));
                        if extensions_ok {
                            let oracle = b_extension_oracle(&o, &x, DEFAULT_EXTENSION_CAP).unwrap();
                            verdicts.push(("extension oracle", oracle));
                        }
                    }
                    _ => {
                        let compiled = if s == Strategy::W { &compiled_w } else { &compiled_d };
                        let y = tag_completion(&o, &x).unwrap();
                        verdicts.push(("compiled", is_answer_set(&compiled.program, &y)));
                    }
                }
                for (name, v) in verdicts {
                    if v != fixpoint {
                        disagreements.push(format!(
                            "{s} {name} says {v} for {:?} on {}",
                            render_set(&x),
                            show(&o)
                        ));
                    }
                }
            }
        }
        if o.len() <= 2 {
            for s in [Strategy::D, Strategy::W] {
                let brute = solve_compiled_brute(&o, s, CAP).unwrap();
                if brute != pref(&o, s) {
                    disagreements.push(format!("{s} brute-force compiled path on {}", show(&o)));
                }
            }
        }
    }
    match disagreements.first() {
        None => Ok(()),
        Some(first) => Err(format!("{} disagreements, first: {first}", disagreements.len())),
    }
}

fn neutrality() -> Outcome {
    let mut rng = common::rng(10);
    for _ in 0..200 {
        let o = OrderedProgram::unordered(common::program(&mut rng, 6));
        let all = enumerate_answer_sets(o.program(), CAP).unwrap();
        for s in [Strategy::D, Strategy::W, Strategy::B] {
            if pref(&o, s) != all {
                return Err(format!("{s} differs from answer sets on {}", show(&o)));
            }
        }
    }
    Ok(())
}

fn anti_monotonicity() -> Outcome {
    let mut rng = common::rng(11);
    let mut checked = 0;
    while checked < 500 {
        let o = common::ordered(&mut rng, 6);
        let y2 = common::head_subset(&mut rng, o.program());
        if !ordlp::model::is_consistent(&y2) {
            continue;
        }
        let y1: LiteralSet = y2.iter().filter(|_| rand::Rng::gen_bool(&mut rng, 0.5)).cloned().collect();
        for s in [Strategy::W, Strategy::D] {
            let big = c_pref(&o, s, &y2);
            let small = c_pref(&o, s, &y1);
            if !big.is_subset(&small) {
                return Err(format!(
                    "{s}: c({:?}) = {big} not within c({:?}) = {small} on {}",
                    render_set(&y2),
                    render_set(&y1),
                    show(&o)
                ));
            }
        }
        checked += 1;
    }
    Ok(())
}

fn total_order_cardinality() -> Outcome {
    let mut rng = common::rng(12);
    for _ in 0..200 {
        let o = common::totally_ordered(&mut rng, 6);
        let w = pref(&o, Strategy::W);
        if w.len() > 1 {
            return Err(format!("{} W-preferred sets on {}", w.len(), show(&o)));
        }
    }
    Ok(())
}

fn witness_orders() -> Outcome {
    let mut rng = common::rng(13);
    let mut checked = 0;
    while checked < 100 {
        let p = common::program(&mut rng, 6);
        let all = enumerate_answer_sets(&p, CAP).unwrap();
        if all.is_empty() {
            continue;
        }
        let x = all[rand::Rng::gen_range(&mut rng, 0..all.len())].clone();
        let order = witness_order(&p, &x).unwrap();
        let o = OrderedProgram::new(p, order).unwrap();
        if pref(&o, Strategy::W) != vec![x.clone()] {
            return Err(format!("witness order fails for {:?} on {}", render_set(&x), show(&o)));
        }
        checked += 1;
    }
    Ok(())
}

fn stratified() -> Outcome {
    let mut rng = common::rng(14);
    let mut programs: Vec<Program> = vec![op(STRAT).program().clone()];
    while programs.len() < 200 {
        programs.push(common::stratified_program(&mut rng, 6));
    }
    for p in programs {
        let s = stratify(&p).unwrap().expect("stratified");
        let model = perfect_model(&p, &s);
        if enumerate_answer_sets(&p, CAP).unwrap() != vec![model.clone()] {
            return Err(format!("perfect model is not the unique answer set of {}", serialize_program(&OrderedProgram::unordered(p))));
        }
        let order = common::sub_order(&mut rng, &induced_order(&s));
        let o = OrderedProgram::new(p, order).unwrap();
        for st in [Strategy::D, Strategy::W, Strategy::B] {
            if pref(&o, st) != vec![model.clone()] {
                return Err(format!("{st} misses the perfect model on {}", show(&o)));
            }
        }
    }
    Ok(())
}

fn distinct_heads() -> Outcome {
    let mut rng = common::rng(15);
    for _ in 0..200 {
        let p = common::distinct_heads_program(&mut rng, 6);
        let order = common::order(&mut rng, &p);
        let o = OrderedProgram::new(p, order).unwrap();
        if pref(&o, Strategy::D) != pref(&o, Strategy::W) {
            return Err(format!("D and W differ on {}", show(&o)));
        }
    }
    Ok(())
}

fn schema_counts() -> Outcome {
    let mut programs: Vec<OrderedProgram> = [BH, INC, INC2, DVSW, DVSW2, THREE, FIVE_ONE, DWVSB, STRAT]
        .iter()
        .map(|t| op(t))
        .collect();
    let mut rng = common::rng(16);
    programs.extend((0..100).map(|_| common::ordered(&mut rng, 6)));
    for o in &programs {
        let n = o.len();
        let w = compile_static(o, Strategy::W).unwrap();
        let d = compile_static(o, Strategy::D).unwrap();
        for (s, c) in [(Strategy::W, &w), (Strategy::D, &d)] {
            expect(
                &format!("{s} rule count on {}", show(o)),
                c.without(Schema::Prec).program.len(),
                expected_rule_count(o.program(), s),
            )?;
            expect("prec facts", c.count(Schema::Prec), o.order().closure().len())?;
        }
        expect("ok5 rules", w.count(Schema::Ok5), n * n)?;
        expect("W without ok5", w.without(Schema::Ok5).program, d.program.clone())?;
        expect("D ok5 rules", d.count(Schema::Ok5), 0)?;
        let (tw, td) = (translate_w(o.program()), translate_d(o.program()));
        expect("translate W", tw.program.len(), expected_rule_count(o.program(), Strategy::W))?;
        expect("translate D", td.program.len(), expected_rule_count(o.program(), Strategy::D))?;
    }
    let dynamic = parse_program_with(include_str!("../../../programs/dynamic.olp"), ParseMode::Extended)
        .map_err(|e| e.to_string())?;
    expect(
        "dynamic program",
        translate_w(dynamic.program()).program.len(),
        expected_rule_count(dynamic.program(), Strategy::W),
    )
}

fn ok3_subsumption() -> Outcome {
    let mut rng = common::rng(17);
    for _ in 0..100 {
        let o = common::ordered(&mut rng, 2);
        let w = compile_static(&o, Strategy::W).unwrap();
        let with = brute_projections(&w, &w.base, CAP).unwrap();
        let without = brute_projections(&w.without(Schema::Ok3), &w.base, CAP).unwrap();
        if with != without {
            return Err(format!("dropping ok3 changes the projections of {}", show(&o)));
        }
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 17] = [
        ("bird program golden answer sets", bird_golden),
        ("bird program W iteration", bird_trace),
        ("incompatible preferences yield nothing", incompatible_preferences),
        ("W accepts what D rejects", d_versus_w),
        ("no B-preferred set and operator sequences", no_b_preferred),
        ("B-only preferred set with a prerequisite", || b_only(FIVE_ONE)),
        ("B-only preferred set with a fact", || b_only(DWVSB)),
        ("D within W within B within answer sets", hierarchy),
        ("deciders agree", cross_method),
        ("empty order is neutral", neutrality),
        ("anti-monotonicity", anti_monotonicity),
        ("total orders admit at most one W-preferred set", total_order_cardinality),
        ("witness orders single out their answer set", witness_orders),
        ("stratified programs prefer the perfect model", stratified),
        ("distinct heads make D and W coincide", distinct_heads),
        ("compiled rule counts", schema_counts),
        ("ok3 rules are redundant", ok3_subsumption),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
