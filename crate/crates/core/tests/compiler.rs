use std::collections::BTreeSet;

use rtmkit::bisim::{check_dp_branching, fully_deterministic_computation, FrontierMode};
use rtmkit::calculus::*;
use rtmkit::compiler::*;
use rtmkit::lts::*;
use rtmkit::rtm::{empty_rtm, fig1_right, Move, Rtm, Rule, Tape};

fn act(s: &str) -> Action {
    Action::parse(s).unwrap()
}

fn dp(l1: &FiniteLts, l2: &FiniteLts) -> bool {
    check_dp_branching(l1, l2, FrontierMode::Pessimistic).is_related()
}

fn two_rule_machine() -> Rtm {
    Rtm::new(
        [sym("p"), sym("q")],
        sym("p"),
        [sym("q")],
        [sym("1")],
        [Rule::new("p", "_", Action::plain("a"), "1", Move::R, "q"), Rule::new("q", "_", Action::plain("b"), "_", Move::L, "p")],
    )
    .unwrap()
}

#[test]
fn per_configuration_equations_mirror_the_machine() {
    let l = explore(&spec_infinite_of_rtm(&empty_rtm()), 5, 10);
    assert_eq!(l.num_states(), 1);
    assert!(l.is_final(0));
    let m = fig1_right();
    let by_spec = explore(&spec_infinite_of_rtm(&m), 10, 1000);
    let by_machine = explore_states(&m, 10, 1000);
    assert!(dp(&by_spec, &by_machine.lts));
    let g = spec_infinite_of_rtm(&m);
    for c in &by_machine.states {
        let name = ProcessExpr::name(&config_name(c));
        let from_spec: Vec<(Action, ProcessExpr)> = g.out(&name);
        let from_machine: Vec<(Action, ProcessExpr)> =
            m.step(c).into_iter().map(|(a, d)| (a, ProcessExpr::name(&config_name(&d)))).collect();
        assert_eq!(from_spec.into_iter().collect::<BTreeSet<_>>(), from_machine.into_iter().collect::<BTreeSet<_>>());
        assert_eq!(g.fin(&name), m.is_final(&c.state));
    }
}

/// Visible actions offered after `trace`, allowing τ-steps anywhere.
fn offers_after<G: LtsGenerator>(g: &G, trace: &[&str], depth: usize) -> BTreeSet<Action> {
    let ex = explore_states_observable(g, trace.len() + 1, 200_000);
    let l = &ex.lts;
    let mut current: BTreeSet<usize> = l.tau_closure(l.initial()).into_iter().collect();
    for a in trace {
        let a = act(a);
        current = current.iter().flat_map(|&s| l.out(s)).filter(|t| t.action == a).flat_map(|t| l.tau_closure(t.dst)).collect();
    }
    assert!(depth > 0);
    current.iter().flat_map(|&s| l.out(s)).map(|t| t.action.clone()).filter(|a| !a.is_tau()).collect()
}

#[test]
fn the_finite_queue() {
    let spec = queue_finite_spec(&[sym("x"), sym("y")]);
    assert_eq!(spec.len(), 6);
    for (name, _) in spec.equations() {
        let p = ProcessExpr::name(name);
        assert_eq!(sos_out(&spec, &p).unwrap().len(), 2);
        assert!(terminates(&spec, &p));
    }
    let q = lts_of(spec, ProcessExpr::name(&queue_finite_name("i", "o", "l"))).unwrap();
    let sends: Vec<Action> = offers_after(&q, &["i?x", "i?y"], 4).into_iter().filter(|a| matches!(a, Action::Send(..))).collect();
    assert_eq!(sends, vec![act("o!x")]);
    let sends: Vec<Action> =
        offers_after(&q, &["i?y", "i?x", "o!y"], 4).into_iter().filter(|a| matches!(a, Action::Send(..))).collect();
    assert_eq!(sends, vec![act("o!x")]);
}

#[test]
fn the_unbounded_tape() {
    let alphabet = [sym("_"), sym("1"), sym("#")];
    let t = tape_infinite_gen(&alphabet);
    let s0 = t.initial();
    let out = t.out(&s0);
    assert!(out.iter().any(|(a, _)| *a == act("r!_")));
    let left = out.iter().find(|(a, _)| *a == act("m?L")).unwrap();
    assert_eq!(left.1, s0);
    let t2 = tape_infinite_from(&alphabet, &Tape::new(&[], "1", &["#"]));
    let written = t2.out(&t2.initial()).into_iter().find(|(a, _)| *a == act("w?_")).unwrap().1;
    assert_eq!(written, ProcessExpr::name(&tape_name(&Tape::new(&[], "_", &["#"]))));
    let q = queue_infinite_gen(&[sym("x")]);
    let out = q.out(&q.initial());
    assert!(q.fin(&q.initial()));
    assert_eq!(out.iter().map(|(a, _)| a.clone()).collect::<Vec<_>>(), vec![act("i?x")]);
}

#[test]
fn tape_controller_equation_count() {
    let d = [sym("_"), sym("1"), sym("#")];
    let spec = tape_controller_spec(&d);
    assert_eq!(spec.len(), 4 * d.len() + 2);
    for head in ["H", "HL", "HR", "Fwd"] {
        assert_eq!(spec.equations().filter(|(n, _)| split_name(n).0 == head).count(), d.len());
    }
    assert!(spec.get("Back").is_some() && spec.get("FwdEnd").is_some());
}

#[test]
fn head_moves_are_deterministic_internal_computations() {
    let d = [sym("_"), sym("1")];
    let spec = Union(tape_controller_spec(&d), QueueEquations { alphabet: queue_alphabet(&d) });
    let start = ProcessExpr::par(["i", "o"], ProcessExpr::name(&make_name("H", &["_"])), ProcessExpr::name(&queue_name(&["⊥"])));
    let mut expr = start;
    let mut tape = Tape::blank();
    for instruction in ["w?1", "m?R", "w?1", "m?R", "m?L", "m?L", "m?L", "m?L", "m?R", "m?R", "m?R"] {
        let g = SpecLts::lazy(spec.clone(), expr.clone());
        expr = g.out(&expr).into_iter().find(|(a, _)| *a == act(instruction)).unwrap().1;
        match instruction {
            "w?1" => tape = tape.replace_head("1"),
            "m?L" => tape = tape.write_move(&tape.head().clone(), Move::L),
            _ => tape = tape.write_move(&tape.head().clone(), Move::R),
        }
        if instruction.starts_with('m') {
            let ex = explore_states_observable(&SpecLts::lazy(spec.clone(), expr.clone()), 1, 10_000);
            let c = fully_deterministic_computation(&ex.lts, ex.lts.initial()).unwrap().expect("deterministic computation");
            expr = ex.states[c.endpoint()].clone();
        }
        let ProcessExpr::Par(_, left, _) = &expr else { panic!("{expr}") };
        assert_eq!(**left, ProcessExpr::name(&make_name("H", &[tape.head()])), "after {instruction}");
    }
    let composite = explore_observable(&SpecLts::lazy(spec, expr), 3, 20_000);
    let reference = explore_observable(&tape_infinite_from(&d, &tape), 3, 20_000);
    assert!(dp(&composite, &reference));
}

#[test]
fn finite_control_equations() {
    let m = two_rule_machine();
    let spec = finite_control_spec(&m);
    assert_eq!(spec.len(), 4);
    assert_eq!(spec.get(&control_name("p", "1")), Some(&ProcessExpr::Deadlock));
    assert_eq!(spec.get(&control_name("q", "1")), Some(&ProcessExpr::Skip));
    let mut p = ProcessExpr::name(&control_name("p", "_"));
    let mut labels = Vec::new();
    for _ in 0..3 {
        let out = sos_out(&spec, &p).unwrap();
        assert_eq!(out.len(), 1);
        labels.push(out[0].0.to_string());
        p = out[0].1.clone();
    }
    assert_eq!(labels, ["a", "w!1", "m!R"]);
    let reads: Vec<String> = sos_out(&spec, &p).unwrap().into_iter().map(|(a, _)| a.to_string()).collect();
    assert_eq!(reads, ["r?1", "r?_"]);
}

#[test]
fn compiled_empty_machine() {
    let (spec, root) = compile(&empty_rtm()).unwrap();
    let l = explore(&lts_of(spec, root).unwrap(), 12, 20_000);
    let one = FiniteLts::from_triples(1, 0, &[], &[0]).unwrap();
    assert!(dp(&l, &one));
}

#[test]
fn compiled_sender_starts_with_its_first_words() {
    let l = explore_observable(&compile_unbounded_queue(&fig1_right()).unwrap(), 5, 20_000);
    let want: Vec<Action> = ["i!1", "i!#", "i!1", "i!1", "i!#"].iter().map(|a| act(a)).collect();
    assert!(observable_traces(&l, 5).contains(&want));
}

#[test]
fn compiled_two_rule_machine_is_equivalent() {
    let m = two_rule_machine();
    let (spec, root) = compile(&m).unwrap();
    let compiled = explore_observable(&lts_of(spec, root).unwrap(), 2, 20_000);
    assert!(dp(&compiled, &explore_observable(&m, 2, 20_000)));
}

#[test]
fn reserved_channels_are_rejected() {
    let m = Rtm::new([sym("s")], sym("s"), [], [], [Rule::new("s", "_", Action::send("r", "_"), "_", Move::R, "s")]).unwrap();
    assert!(matches!(compile(&m), Err(CompileError::ReservedChannel(_))));
    let m = Rtm::new([sym("s")], sym("s"), [], [sym("$")], []).unwrap();
    assert!(matches!(compile(&m), Err(CompileError::ReservedSymbol(_))));
}
