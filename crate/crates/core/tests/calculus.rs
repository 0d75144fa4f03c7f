use std::collections::BTreeSet;

use proptest::prelude::*;
use rtmkit::bisim::{check_dp_branching, FrontierMode};
use rtmkit::calculus::*;
use rtmkit::compiler::{queue_finite_name, queue_finite_spec, queue_infinite_gen};
use rtmkit::lts::*;
use rtmkit::rtm::{Move, Rtm, Rule};

fn act(s: &str) -> Action {
    Action::parse(s).unwrap()
}

fn expr(s: &str) -> ProcessExpr {
    parse_expr(s).unwrap()
}

#[test]
fn parsing_a_single_equation() {
    let (spec, root) = parse("X = a.X + 1\nroot: X\n").unwrap();
    assert_eq!(spec.len(), 1);
    assert_eq!(root, ProcessExpr::name("X"));
    assert_eq!(spec.get("X"), Some(&ProcessExpr::choice(ProcessExpr::prefix(act("a"), ProcessExpr::name("X")), ProcessExpr::Skip)));
}

#[test]
fn printing_and_parsing_the_queue_round_trips() {
    let spec = queue_finite_spec(&[sym("x"), sym("y")]);
    let root = ProcessExpr::name(&queue_finite_name("i", "o", "l"));
    let text = print(&spec, &root);
    let (spec2, root2) = parse(&text).unwrap();
    assert_eq!((spec2, root2), (spec, root));
    assert_eq!(print(&parse(&text).unwrap().0, &parse(&text).unwrap().1), text);
}

#[test]
fn malformed_specifications_are_rejected() {
    assert_eq!(parse("X = Y\nroot: X\n").unwrap_err(), CalcError::UndefinedName("Y".into()));
    assert_eq!(parse("X = 1\nX = 0\nroot: X\n").unwrap_err(), CalcError::DuplicateEquation("X".into()));
    assert!(matches!(parse("X = a.\nroot: X\n"), Err(CalcError::Syntax { line: 1, .. })));
    assert!(matches!(parse("X = 1\n"), Err(CalcError::Syntax { .. })));
}

#[test]
fn termination() {
    let none = RecSpec::new();
    assert!(terminates(&none, &ProcessExpr::Skip));
    assert!(!terminates(&none, &expr("<1 || a.1>_{}")));
    assert!(terminates(&none, &expr("a.0 + 1")));
    assert!(!terminates(&none, &ProcessExpr::Deadlock));
    let mut looping = RecSpec::new();
    looping.define("N", ProcessExpr::name("N")).unwrap();
    assert!(!terminates(&looping, &ProcessExpr::name("N")));
    assert_eq!(sos_out(&looping, &ProcessExpr::name("N")), Err(CalcError::Unguarded("N".into())));
    assert!(lts_of(looping, ProcessExpr::name("N")).is_err());
}

#[test]
fn operational_rules() {
    let none = RecSpec::new();
    assert_eq!(sos_out(&none, &expr("a.1 + b.0")).unwrap(), vec![(act("a"), ProcessExpr::Skip), (act("b"), ProcessExpr::Deadlock)]);
    assert_eq!(sos_out(&none, &expr("<c!d.1 || c?d.1>_{c}")).unwrap(), vec![(Action::Tau, expr("<1 || 1>_{c}"))]);
    let open = sos_out(&none, &expr("<c!d.1 || c?d.1>_{}")).unwrap();
    assert_eq!(open.iter().map(|(a, _)| a.to_string()).collect::<Vec<_>>(), ["c!d", "c?d"]);
    let interleaved = sos_out(&none, &expr("<a.1 || b.1>_{}")).unwrap();
    assert_eq!(interleaved, vec![(act("a"), expr("<1 || b.1>_{}")), (act("b"), expr("<a.1 || 1>_{}"))]);
}

#[test]
fn the_empty_specification_with_skip() {
    let l = explore(&lts_of(RecSpec::new(), ProcessExpr::Skip).unwrap(), 5, 10);
    assert_eq!((l.num_states(), l.transitions().len()), (1, 0));
    assert!(l.is_final(0));
}

#[test]
fn per_configuration_equations_of_a_two_state_machine() {
    let m = Rtm::new(
        [sym("p"), sym("q")],
        sym("p"),
        [sym("q")],
        [],
        [Rule::new("p", "_", Action::plain("a"), "_", Move::R, "q"), Rule::new("q", "_", Action::plain("b"), "_", Move::L, "p")],
    )
    .unwrap();
    let (spec, root) = parse("P = a.Q\nQ = b.P + 1\nroot: P\n").unwrap();
    let by_spec = explore(&lts_of(spec, root).unwrap(), usize::MAX, 100);
    let by_machine = explore(&m, usize::MAX, 100);
    assert!(by_machine.frontier().is_empty());
    assert!(check_dp_branching(&by_spec, &by_machine, FrontierMode::Pessimistic).is_related());
}

#[test]
fn the_unbounded_queue_is_first_in_first_out() {
    let q = queue_infinite_gen(&[sym("x"), sym("y")]);
    let s0 = q.initial();
    assert!(q.fin(&s0));
    assert!(q.out(&s0).iter().all(|(a, _)| matches!(a, Action::Recv(c, _) if &**c == "i")));
    let step = |s: &ProcessExpr, a: &str| q.out(s).into_iter().find(|(b, _)| *b == act(a)).unwrap().1;
    let s2 = step(&step(&s0, "i?x"), "i?y");
    let sends: Vec<Action> = q.out(&s2).into_iter().map(|(a, _)| a).filter(|a| matches!(a, Action::Send(..))).collect();
    assert_eq!(sends, vec![act("o!x")]);
}

fn arb_expr() -> impl Strategy<Value = ProcessExpr> {
    let leaf = prop_oneof![
        Just(ProcessExpr::Deadlock),
        Just(ProcessExpr::Skip),
        Just(ProcessExpr::name("X")),
        Just(ProcessExpr::name("Y")),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (prop::sample::select(vec!["a", "tau", "c!d", "c?d"]), inner.clone()).prop_map(|(a, p)| ProcessExpr::prefix(act(a), p)),
            (inner.clone(), inner.clone()).prop_map(|(p, q)| ProcessExpr::choice(p, q)),
            (any::<bool>(), inner.clone(), inner).prop_map(|(sync, p, q)| {
                let chans: BTreeSet<&str> = if sync { BTreeSet::from(["c"]) } else { BTreeSet::new() };
                ProcessExpr::par(chans, p, q)
            }),
        ]
    })
}

proptest! {
    #[test]
    fn printed_expressions_parse_back(p in arb_expr(), q in arb_expr()) {
        let mut spec = RecSpec::new();
        spec.define("X", ProcessExpr::prefix(act("a"), p.clone())).unwrap();
        spec.define("Y", q).unwrap();
        let text = print(&spec, &p);
        prop_assert_eq!(parse(&text).unwrap(), (spec.clone(), p.clone()));
        if check_guarded(&spec).is_ok() {
            let out = sos_out(&spec, &p).unwrap();
            prop_assert_eq!(sos_out(&spec, &p).unwrap(), out);
        }
    }
}
