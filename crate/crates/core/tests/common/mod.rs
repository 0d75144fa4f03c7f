#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use rand::rngs::StdRng;
use rand::Rng;
use rtmkit::lts::{sym, Action, FiniteLts, Sym, Transition, BLANK};
use rtmkit::rtm::{Move, Rtm, Rule};

pub const LABELS: [&str; 3] = ["tau", "a", "b"];

/// Random system with `1..=max_states` states over `a`, `b` and τ.
pub fn random_lts(rng: &mut StdRng, max_states: usize, density: f64) -> FiniteLts {
    let n = rng.gen_range(1..=max_states);
    let mut transitions = Vec::new();
    for src in 0..n {
        for dst in 0..n {
            for label in LABELS {
                if rng.gen_bool(density) {
                    transitions.push(Transition { src, action: Action::parse(label).unwrap(), dst });
                }
            }
        }
    }
    let finals = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
    FiniteLts::new(n, 0, transitions, finals, BTreeSet::new()).unwrap()
}

/// A system bisimilar to `l` by construction: some states are duplicated
/// (the copy gets the same outgoing transitions, and incoming transitions
/// are redirected at random) and some transitions get an inert τ-prefix
/// state in front of their target.
pub fn bisimilar_variant(rng: &mut StdRng, l: &FiniteLts) -> FiniteLts {
    let n = l.num_states();
    let mut copy_of: Vec<usize> = (0..n).collect();
    for s in 0..n {
        if rng.gen_bool(0.3) {
            copy_of.push(s);
        }
    }
    let copies: Vec<Vec<usize>> = (0..n).map(|s| (0..copy_of.len()).filter(|&c| copy_of[c] == s).collect()).collect();
    let base = copy_of.len();
    let mut transitions = Vec::new();
    for src in 0..base {
        for t in l.out(copy_of[src]) {
            let targets = &copies[t.dst];
            let mut dst = targets[rng.gen_range(0..targets.len())];
            if !t.action.is_tau() && rng.gen_bool(0.2) {
                // A fresh copy of the target with an extra τ-step into it.
                let mid = copy_of.len();
                copy_of.push(t.dst);
                transitions.push(Transition { src: mid, action: Action::Tau, dst });
                for u in l.out(t.dst) {
                    transitions.push(Transition { src: mid, action: u.action.clone(), dst: copies[u.dst][0] });
                }
                dst = mid;
            }
            transitions.push(Transition { src, action: t.action.clone(), dst });
        }
    }
    let finals = (0..copy_of.len()).filter(|&c| l.is_final(copy_of[c])).collect();
    FiniteLts::new(copy_of.len(), l.initial(), transitions, finals, BTreeSet::new()).unwrap()
}

/// Random system over the given labels.
pub fn random_labelled_lts(rng: &mut StdRng, max_states: usize, labels: &[&str], density: f64) -> FiniteLts {
    let n = rng.gen_range(1..=max_states);
    let mut transitions = Vec::new();
    for src in 0..n {
        for dst in 0..n {
            for label in labels {
                if rng.gen_bool(density) {
                    transitions.push(Transition { src, action: Action::parse(label).unwrap(), dst });
                }
            }
        }
    }
    let finals = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
    FiniteLts::new(n, 0, transitions, finals, BTreeSet::new()).unwrap()
}

/// Runs `m` on a cell map, taking the first rule in listing order, and
/// returns all actions taken (τ included).
pub fn reference_run(m: &Rtm, steps: usize) -> Vec<Action> {
    let mut tape: HashMap<i64, Sym> = HashMap::new();
    let mut head = 0i64;
    let mut state = m.initial_state().clone();
    let mut actions = Vec::new();
    for _ in 0..steps {
        let read = tape.get(&head).cloned().unwrap_or_else(|| sym(BLANK));
        let Some(r) = m.rules().iter().find(|r| r.state == state && r.read == read) else { break };
        actions.push(r.action.clone());
        tape.insert(head, r.write.clone());
        head += if r.mv == Move::L { -1 } else { 1 };
        state = r.next.clone();
    }
    actions
}

pub fn visible(actions: &[Action]) -> Vec<String> {
    actions.iter().filter(|a| !a.is_tau()).map(|a| a.to_string()).collect()
}

/// Reachable states, transitions and final states of the product of two
/// complete systems, built pair by pair.
pub fn product_oracle(l1: &FiniteLts, l2: &FiniteLts, channels: &BTreeSet<Sym>) -> (usize, usize, usize) {
    let on = |a: &Action| a.channel().is_some_and(|c| channels.contains(c));
    let start = (l1.initial(), l2.initial());
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    let mut transitions = BTreeSet::new();
    while let Some((s1, s2)) = stack.pop() {
        let mut succ = Vec::new();
        for t in l1.out(s1).iter().filter(|t| !on(&t.action)) {
            succ.push((t.action.clone(), (t.dst, s2)));
        }
        for t in l2.out(s2).iter().filter(|t| !on(&t.action)) {
            succ.push((t.action.clone(), (s1, t.dst)));
        }
        for t in l1.out(s1).iter().filter(|t| on(&t.action)) {
            for u in l2.out(s2) {
                let matched = match (&t.action, &u.action) {
                    (Action::Send(c, d), Action::Recv(c2, d2)) | (Action::Recv(c, d), Action::Send(c2, d2)) => {
                        c == c2 && d == d2
                    }
                    _ => false,
                };
                if matched {
                    succ.push((Action::Tau, (t.dst, u.dst)));
                }
            }
        }
        for (a, dst) in succ {
            transitions.insert(((s1, s2), a, dst));
            if seen.insert(dst) {
                stack.push(dst);
            }
        }
    }
    let finals = seen.iter().filter(|(s1, s2)| l1.is_final(*s1) && l2.is_final(*s2)).count();
    (seen.len(), transitions.len(), finals)
}

/// Random machine with up to `max_states` states over `{1, #}`.
pub fn random_rtm(rng: &mut StdRng, max_states: usize, max_rules: usize) -> Rtm {
    let n = rng.gen_range(1..=max_states);
    let states: Vec<String> = (0..n).map(|i| format!("q{i}")).collect();
    let symbols = ["_", "1", "#"];
    let labels = ["tau", "a", "c!1", "c?#"];
    let rules: Vec<Rule> = (0..rng.gen_range(0..=max_rules))
        .map(|_| {
            Rule::new(
                &states[rng.gen_range(0..n)],
                symbols[rng.gen_range(0..3)],
                Action::parse(labels[rng.gen_range(0..4)]).unwrap(),
                symbols[rng.gen_range(0..3)],
                if rng.gen_bool(0.5) { Move::L } else { Move::R },
                &states[rng.gen_range(0..n)],
            )
        })
        .collect();
    let finals: Vec<Sym> = states.iter().filter(|_| rng.gen_bool(0.3)).map(|s| sym(s)).collect();
    Rtm::new(states.iter().map(|s| sym(s)), sym(&states[0]), finals, [sym("1"), sym("#")], rules).unwrap()
}
