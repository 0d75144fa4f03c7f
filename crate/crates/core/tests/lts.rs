mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use rtmkit::lts::*;
use rtmkit::rtm::{counterexample_rtm, empty_rtm, fig1_left, fig1_right};

use common::{product_oracle, random_labelled_lts, reference_run, visible};

fn chain(labels: &[&str]) -> FiniteLts {
    let triples: Vec<(usize, &str, usize)> = labels.iter().enumerate().map(|(i, l)| (i, *l, i + 1)).collect();
    FiniteLts::from_triples(labels.len() + 1, 0, &triples, &[labels.len()]).unwrap()
}

#[test]
fn action_labels_round_trip() {
    for label in ["tau", "a", "c!d", "c?_", "i!#"] {
        assert_eq!(Action::parse(label).unwrap().to_string(), label);
    }
    assert!(Action::parse("c!").is_err());
    assert_ne!(Action::Tau, Action::plain("tau_"));
}

#[test]
fn exploring_a_single_final_state() {
    let l = explore(&empty_rtm(), 5, 10);
    assert_eq!(l.num_states(), 1);
    assert!(l.transitions().is_empty());
    assert_eq!(l.finals(), &BTreeSet::from([0]));
    assert!(l.frontier().is_empty());
}

#[test]
fn exploring_the_sender_follows_its_rules() {
    let l = explore(&fig1_right(), 8, 100);
    let expected: Vec<String> = reference_run(&fig1_right(), 6).iter().map(|a| a.to_string()).collect();
    let mut s = l.initial();
    let mut path = Vec::new();
    while let [t] = l.out(s) {
        path.push(t.action.to_string());
        s = t.dst;
    }
    assert_eq!(path[..6], expected[..]);
    assert_eq!(expected, ["tau", "tau", "tau", "tau", "i!1", "i!#"]);
}

#[test]
fn zero_depth_keeps_only_the_initial_state() {
    let l = explore(&fig1_right(), 0, 10);
    assert_eq!(l.num_states(), 1);
    assert_eq!(l.frontier(), &BTreeSet::from([l.initial()]));
}

#[test]
fn branching_degrees() {
    assert_eq!(branching_degree(&explore(&empty_rtm(), 3, 10)), 0);
    let m = counterexample_rtm(2);
    let rules_at_start = m.rules().iter().filter(|r| r.state == *m.initial_state() && &*r.read == BLANK).count();
    assert_eq!(branching_degree(&explore(&m, 1, 100)), rules_at_start);
    let right = fig1_right();
    let ex = explore_states(&right, 20, 1000);
    let widest = ex.states.iter().map(|c| right.step(c).len()).max().unwrap();
    assert_eq!(branching_degree(&ex.lts), widest);
    assert_eq!(widest, 1);
}

#[test]
fn determinism_of_systems() {
    assert!(is_deterministic(&FiniteLts::from_triples(1, 0, &[], &[]).unwrap()));
    assert!(!is_deterministic(&FiniteLts::from_triples(2, 0, &[(0, "tau", 1), (0, "a", 1)], &[]).unwrap()));
    let right = fig1_right();
    let ex = explore_states(&right, 20, 1000);
    let by_definition = ex.states.iter().all(|c| right.rules_for(&c.state, c.tape.head()).len() <= 1);
    assert_eq!(is_deterministic(&ex.lts), by_definition);
    assert!(by_definition);
}

#[test]
fn composing_terminated_components() {
    let stop = FiniteLts::from_triples(1, 0, &[], &[0]).unwrap();
    let l = explore(&parallel_compose(stop.clone(), stop, BTreeSet::from([sym("c")])), 5, 10);
    assert_eq!(l.num_states(), 1);
    assert!(l.transitions().is_empty());
    assert!(l.is_final(0));
}

#[test]
fn composing_sender_and_echo_outputs_even_strings() {
    let l = explore(&parallel_compose(fig1_left(), fig1_right(), BTreeSet::from([sym("i")])), 40, 20000);
    let mut s = l.initial();
    let mut outputs = Vec::new();
    while let Some(t) = l.out(s).first() {
        if !t.action.is_tau() {
            outputs.push(t.action.to_string());
        }
        s = t.dst;
    }
    assert!(outputs.starts_with(&["o!1".to_string(), "o!1".to_string(), "o!#".to_string()]), "{outputs:?}");
}

#[test]
fn communication_becomes_a_single_tau() {
    let send = chain(&["c!d"]);
    let recv = chain(&["c?d"]);
    let channels = BTreeSet::from([sym("c")]);
    let l = explore(&parallel_compose(send.clone(), recv.clone(), channels.clone()), 5, 10);
    assert_eq!(l.transitions().len(), 1);
    assert!(l.transitions()[0].action.is_tau());
    assert!(l.is_final(l.transitions()[0].dst));
    assert_eq!(product_oracle(&send, &recv, &channels), (l.num_states(), 1, 1));
}

#[test]
fn observable_trace_sets() {
    let empty = FiniteLts::from_triples(1, 0, &[], &[]).unwrap();
    assert_eq!(observable_traces(&empty, 3), BTreeSet::from([vec![]]));
    let ab = chain(&["a", "b"]);
    let expected: BTreeSet<Vec<Action>> =
        [vec![], vec![Action::plain("a")], vec![Action::plain("a"), Action::plain("b")]].into_iter().collect();
    assert_eq!(observable_traces(&ab, 5), expected);
    let l = explore(&fig1_right(), 60, 1000);
    let want: Vec<Action> = ["i!1", "i!#", "i!1", "i!1", "i!#", "i!1"].iter().map(|s| Action::parse(s).unwrap()).collect();
    assert!(observable_traces(&l, 6).contains(&want));
    assert_eq!(visible(&reference_run(&fig1_right(), 40))[..6], ["i!1", "i!#", "i!1", "i!1", "i!#", "i!1"]);
}

#[test]
fn lts_text_format_round_trips() {
    let l = explore(&fig1_right(), 7, 100);
    assert_eq!(parse_lts(&l.to_text()).unwrap(), l);
    assert!(parse_lts("des (0, 1, 1)\n(0, \"a\", 3)\n").is_err());
}

fn random_pair(seed: u64, labels: &[&str]) -> (FiniteLts, FiniteLts) {
    let mut rng = StdRng::seed_from_u64(seed);
    (random_labelled_lts(&mut rng, 6, labels, 0.15), random_labelled_lts(&mut rng, 6, labels, 0.15))
}

proptest! {
    #[test]
    fn explore_is_monotone(seed in any::<u64>(), d in 0usize..6, n in 1usize..20) {
        let (l, _) = random_pair(seed, &["tau", "a", "b"]);
        let small = explore(&l, d, n);
        let big = explore(&l, d + 1, n + 5);
        prop_assert!(small.num_states() <= big.num_states());
        prop_assert!(small.transitions().iter().all(|t| big.transitions().contains(t)));
    }

    #[test]
    fn products_match_the_pairwise_construction(seed in any::<u64>(), sync in any::<bool>()) {
        let (l1, l2) = random_pair(seed, &["tau", "a", "c!x", "c?x"]);
        let channels: BTreeSet<Sym> = if sync { BTreeSet::from([sym("c")]) } else { BTreeSet::new() };
        let p = explore(&parallel_compose(l1.clone(), l2.clone(), channels.clone()), usize::MAX, 1000);
        let (states, transitions, finals) = product_oracle(&l1, &l2, &channels);
        prop_assert_eq!(p.num_states(), states);
        prop_assert_eq!(p.transitions().len(), transitions);
        prop_assert_eq!(p.finals().len(), finals);
        if !sync {
            prop_assert!(branching_degree(&p) <= branching_degree(&l1) + branching_degree(&l2));
        }
    }

    #[test]
    fn deterministic_systems_branch_at_most_once_per_action(seed in any::<u64>()) {
        let (l, _) = random_pair(seed, &["tau", "a", "b"]);
        if is_deterministic(&l) {
            prop_assert!(branching_degree(&l) <= l.actions().len());
        }
    }
}
