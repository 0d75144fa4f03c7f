mod common;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use rtmkit::lts::*;
use rtmkit::rtm::*;

use common::{random_rtm, reference_run, visible};

fn tape(text: &str) -> Tape {
    RawTape::parse(text).normalize().unwrap()
}

fn config(state: &str, text: &str) -> Configuration {
    Configuration { state: sym(state), tape: tape(text) }
}

fn no_rules() -> Rtm {
    Rtm::new([sym("s")], sym("s"), [], [sym("1")], []).unwrap()
}

/// Two rules of one state and read symbol conflict if they share an action
/// or one of them is internal.
fn deterministic_by_pairs(m: &Rtm) -> bool {
    let rules = m.rules();
    rules.iter().enumerate().all(|(i, r)| {
        rules[i + 1..].iter().all(|q| {
            r.state != q.state || r.read != q.read || (r.action != q.action && !r.action.is_tau() && !q.action.is_tau())
        })
    })
}

#[test]
fn determinism_of_machines() {
    assert!(rtm_is_deterministic(&no_rules()));
    for b in 1..4 {
        assert!(!rtm_is_deterministic(&counterexample_rtm(b)));
    }
    for m in [fig1_left(), fig1_right(), emitter(&BigUint::from(5u32), "u")] {
        assert_eq!(rtm_is_deterministic(&m), deterministic_by_pairs(&m));
        assert!(rtm_is_deterministic(&m));
    }
}

#[test]
fn normalizing_tape_instances() {
    assert_eq!(tape("_ [1] _"), Tape::new(&[], "1", &[]));
    assert_eq!(tape("[_]"), Tape::blank());
    assert_eq!(tape("_ _ [_] 1"), Tape::new(&[], "_", &["1"]));
    assert!(RawTape::parse("1 1").normalize().is_err());
    assert!(RawTape::parse("[1] [1]").normalize().is_err());
}

#[test]
fn placing_strings_on_the_tape() {
    assert_eq!(place_left(&[]).normalize().unwrap(), Tape::blank());
    assert_eq!(place_left(&["1", "#"]).normalize().unwrap(), Tape::new(&["1"], "#", &[]));
    assert_eq!(place_right(&["#", "1"]).normalize().unwrap(), Tape::new(&[], "#", &["1"]));
}

#[test]
fn stepping_configurations() {
    let right = fig1_right();
    assert_eq!(right.step(&config("ei", "[_]")), vec![(Action::Tau, config("e1", "1 [_]"))]);
    assert!(no_rules().step(&config("s", "1 [1]")).is_empty());
    let left_mover = Rtm::new([sym("s")], sym("s"), [], [], [Rule::new("s", "_", Action::plain("a"), "_", Move::L, "s")]).unwrap();
    assert_eq!(left_mover.step(&config("s", "[_]")), vec![(Action::plain("a"), config("s", "[_]"))]);
}

#[test]
fn transition_systems_of_machines() {
    let l = explore(&empty_rtm(), 10, 10);
    assert_eq!((l.num_states(), l.transitions().len(), l.finals().len()), (1, 0, 1));
    let traces = observable_traces(&explore(&fig1_right(), 60, 1000), 5);
    let want: Vec<Action> = ["i!1", "i!#", "i!1", "i!1", "i!#"].iter().map(|s| Action::parse(s).unwrap()).collect();
    assert!(traces.contains(&want));
    let m = counterexample_rtm(2);
    let a_rules = m.rules().iter().filter(|r| r.state == *m.initial_state() && r.action == Action::plain("a")).count();
    assert_eq!(m.step(&m.initial_configuration()).len(), a_rules);
    assert_eq!(a_rules, 4);
}

#[test]
fn fixture_sizes() {
    assert_eq!((fig1_right().states().len(), fig1_right().rules().len()), (4, 6));
    assert_eq!((counterexample_rtm(1).states().len(), counterexample_rtm(1).rules().len()), (4, 3));
}

#[test]
fn the_left_machine_echoes_even_strings() {
    let feeder = Rtm::new(
        ["f0", "f1", "f2", "f3"].map(sym),
        sym("f0"),
        [sym("f3")],
        [],
        [
            Rule::new("f0", "_", Action::send("i", "1"), "_", Move::R, "f1"),
            Rule::new("f1", "_", Action::send("i", "1"), "_", Move::L, "f2"),
            Rule::new("f2", "_", Action::send("i", "#"), "_", Move::R, "f3"),
        ],
    )
    .unwrap();
    let l = explore(&parallel_compose(fig1_left(), feeder, [sym("i")].into()), 60, 10000);
    let want: Vec<Action> = ["o!1", "o!1", "o!#"].iter().map(|s| Action::parse(s).unwrap()).collect();
    assert!(observable_traces(&l, 3).contains(&want));
}

#[test]
fn godel_coding_round_trips() {
    for m in [fig1_left(), fig1_right(), empty_rtm(), counterexample_rtm(3)] {
        assert_eq!(godel_decode(&godel_encode(&m)).unwrap(), m);
    }
    assert!(godel_decode(&BigUint::from(0u32)).is_err());
}

#[test]
fn emitters_send_their_code_in_unary() {
    let run = visible(&reference_run(&emitter(&BigUint::from(0u32), "u"), 100));
    assert_eq!(run, ["u!⟦", "u!1", "u!⟧"]);
    let run = visible(&reference_run(&emitter(&BigUint::from(2u32), "u"), 1000));
    assert_eq!(run.iter().filter(|a| *a == "u!1").count(), 3);
    assert_eq!((run.first().unwrap().as_str(), run.last().unwrap().as_str()), ("u!⟦", "u!⟧"));
    let l = explore(&emitter(&BigUint::from(2u32), "u"), 1000, 1000);
    assert!(l.frontier().is_empty());
    assert!(rtm_is_deterministic(&emitter(&BigUint::from(2u32), "u")));
}

#[test]
fn text_format_round_trips() {
    for m in [fig1_left(), counterexample_rtm(2), empty_rtm()] {
        assert_eq!(parse_rtm(&m.to_text()).unwrap(), m);
    }
    assert!(matches!(parse_rtm("states: a\ninitial: b\n"), Err(RtmError::UnknownState(_))));
    assert!(matches!(parse_rtm("states: a\ninitial: a\nrule a _ -> tau 1 R a\n"), Err(RtmError::UnknownSymbol(_))));
    assert!(matches!(parse_rtm("bogus"), Err(RtmError::Parse { line: 1, .. })));
}

#[test]
fn first_choice_runs_agree_with_the_reference() {
    for m in [fig1_right(), emitter(&BigUint::from(3u32), "u"), fig1_left()] {
        assert_eq!(first_choice_trace(&m, 500, usize::MAX), reference_run(&m, 500).into_iter().filter(|a| !a.is_tau()).collect::<Vec<_>>());
    }
}

proptest! {
    #[test]
    fn steps_are_normalized_and_bounded_by_rules(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let m = random_rtm(&mut rng, 4, 10);
        let ex = explore_states(&m, 6, 300);
        for c in &ex.states {
            let succ = m.step(c);
            prop_assert!(succ.len() <= m.rules_for(&c.state, c.tape.head()).len());
            for (_, next) in succ {
                prop_assert_eq!(next.tape.normalize(), next.tape.clone());
                prop_assert_eq!(next.tape.normalize().normalize(), next.tape.normalize());
            }
        }
        if rtm_is_deterministic(&m) {
            prop_assert!(is_deterministic(&ex.lts));
        }
    }

    #[test]
    fn godel_round_trip_on_random_machines(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let m = random_rtm(&mut rng, 6, 12);
        prop_assert_eq!(godel_decode(&godel_encode(&m)).unwrap(), m);
    }
}
