use super::{Move, Rtm, Rule};
use crate::lts::{sym, Action, Sym};

fn build(states: &[&str], initial: &str, finals: &[&str], alphabet: &[&str], rules: Vec<Rule>) -> Rtm {
    Rtm::new(
        states.iter().map(|s| sym(s)),
        sym(initial),
        finals.iter().map(|s| sym(s)),
        alphabet.iter().map(|s| sym(s)),
        rules,
    )
    .expect("fixture machines are well formed")
}

fn rule(state: &str, read: &str, action: &str, write: &str, mv: Move, next: &str) -> Rule {
    Rule::new(state, read, Action::parse(action).expect("fixture label"), write, mv, next)
}

/// Reads a string `1^n #` on channel `i`, and outputs it on channel `o` iff
/// `n` is even; then starts over.
pub fn fig1_left() -> Rtm {
    use Move::*;
    build(
        &["i1", "i2", "e", "o", "f", "b"],
        "i1",
        &[],
        &["1", "#"],
        vec![
            rule("i1", "_", "i?1", "1", R, "i1"),
            rule("i1", "_", "i?#", "#", L, "i2"),
            rule("i2", "1", "tau", "1", L, "i2"),
            rule("i2", "_", "tau", "_", R, "e"),
            rule("e", "1", "tau", "1", R, "o"),
            rule("o", "1", "tau", "1", R, "e"),
            rule("e", "#", "tau", "_", L, "f"),
            rule("o", "#", "tau", "_", L, "b"),
            rule("f", "1", "o!1", "_", L, "f"),
            rule("f", "_", "o!#", "_", R, "i1"),
            rule("b", "1", "tau", "_", L, "b"),
            rule("b", "_", "tau", "_", R, "i1"),
        ],
    )
}

/// Sends `1 # 1 1 # 1 1 1 # ...` on channel `i`.
pub fn fig1_right() -> Rtm {
    use Move::*;
    build(
        &["ei", "e1", "e2", "e3"],
        "ei",
        &[],
        &["1", "#"],
        vec![
            rule("ei", "_", "tau", "1", R, "e1"),
            rule("e1", "_", "tau", "_", L, "e2"),
            rule("e2", "1", "tau", "1", L, "e2"),
            rule("e2", "_", "tau", "_", R, "e3"),
            rule("e3", "1", "i!1", "1", R, "e3"),
            rule("e3", "_", "i!#", "1", R, "e1"),
        ],
    )
}

/// Machine whose initial configuration has `b + 2` `a`-transitions, to the
/// states `0..=b+1`; only `0` is final.
pub fn counterexample_rtm(b: usize) -> Rtm {
    let targets: Vec<Sym> = (0..=b + 1).map(|i| sym(&i.to_string())).collect();
    let mut states: Vec<Sym> = vec![sym("up")];
    states.extend(targets.iter().cloned());
    let rules = targets.iter().map(|t| Rule::new("up", "_", Action::plain("a"), "_", Move::R, t));
    Rtm::new(states, sym("up"), [sym("0")], [], rules).expect("fixture machines are well formed")
}

/// A single final state without rules.
pub fn empty_rtm() -> Rtm {
    build(&["s"], "s", &["s"], &[], Vec::new())
}

/// Two rules from one state: `a` writes a `1` and repeats, `b` stops in a
/// final state. Its transition system is infinite.
pub fn two_rule_rtm() -> Rtm {
    build(
        &["s0", "s1"],
        "s0",
        &["s1"],
        &["1"],
        vec![rule("s0", "_", "a", "1", Move::R, "s0"), rule("s0", "_", "b", "_", Move::L, "s1")],
    )
}

