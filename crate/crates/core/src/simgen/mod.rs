//! Generation of a reactive Turing machine that simulates a finite,
//! boundedly branching transition system.
//!
//! The machine first writes a table of the system followed by the code of
//! the initial state. It then repeats three phases: look up the entry of
//! the current state and copy its menu (final flag and actions) behind the
//! current code; decode the menu into a selection state that offers
//! exactly those transitions; after a choice, replace the current code by
//! the code of the chosen target and clean up.
//!
//! Tape layout: `⟦ E0 E1 ... ⟧ C ⟦ M ⟧`. The entry of state `s` is
//! `# 1^(f+1) (| 1^a | 1^(t+1))*`, with `f` the final flag, `a` the index of
//! an action and `t` a target. `C = 1^(c+1)` codes the current state `c`,
//! and the menu is `M = 1^(f+1) (| 1^a)*`. Numbers are unary throughout.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use thiserror::Error;

use crate::lts::{branching_degree, explore, parallel_compose, sym, Action, FiniteLts, Sym, BLANK};
use crate::rtm::{Move, Rtm, RtmError, Rule};

pub const ONE: &str = "1";
pub const OPEN: &str = "⟦";
pub const CLOSE: &str = "⟧";
pub const SEP: &str = "|";
pub const HASH: &str = "#";
/// Counted digit of the current code.
const COUNTED: &str = "x";
/// Entry separator passed while counting.
const VISITED: &str = "y";
/// Digit already copied.
const COPIED: &str = "z";
/// Separator already copied.
const COPIED_SEP: &str = "w";

/// Prefix of the names of selection states.
pub const SELECTION_PREFIX: &str = "sel_";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimgenError {
    #[error("the system has unexplored frontier states")]
    Frontier,
    #[error("branching degree {degree} exceeds the bound {bound}")]
    DegreeExceedsBound { degree: usize, bound: usize },
    #[error("product not finite within budget")]
    ProductNotFinite,
    #[error(transparent)]
    Rtm(#[from] RtmError),
}

/// The final flag and the actions of a state, in transition order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Menu {
    pub final_flag: bool,
    pub actions: Vec<Action>,
}

pub fn menu_of(ts: &FiniteLts, s: usize) -> Menu {
    Menu { final_flag: ts.is_final(s), actions: ts.out(s).iter().map(|t| t.action.clone()).collect() }
}

/// Number of possible menus with at most `bound` actions over an alphabet
/// of `alphabet_size` actions: the sum of `2 * n^k` for `k` up to `bound`.
pub fn menu_count(bound: usize, alphabet_size: usize) -> BigUint {
    let n = BigUint::from(alphabet_size);
    let mut power = BigUint::from(1u32);
    let mut total = BigUint::from(0u32);
    for _ in 0..=bound {
        total += &power * 2u32;
        power *= &n;
    }
    total
}

/// Names of the selection states of a generated machine.
pub fn selection_states(m: &Rtm) -> Vec<Sym> {
    m.states().iter().filter(|s| s.starts_with(SELECTION_PREFIX)).cloned().collect()
}

fn unary(n: usize) -> impl Iterator<Item = &'static str> {
    std::iter::repeat_n(ONE, n)
}

struct Builder {
    states: BTreeSet<Sym>,
    finals: BTreeSet<Sym>,
    rules: Vec<Rule>,
}

impl Builder {
    fn rule(&mut self, state: &str, read: &str, action: Action, write: &str, mv: Move, next: &str) {
        self.states.insert(sym(state));
        self.states.insert(sym(next));
        self.rules.push(Rule::new(state, read, action, write, mv, next));
    }

    /// Internal step that writes `write` over `read`.
    fn tau(&mut self, state: &str, read: &str, write: &str, mv: Move, next: &str) {
        self.rule(state, read, Action::Tau, write, mv, next);
    }

    /// Internal step that leaves `read` in place.
    fn go(&mut self, state: &str, read: &str, mv: Move, next: &str) {
        self.tau(state, read, read, mv, next);
    }

    /// Moves over every symbol in `reads` without changing state.
    fn skip(&mut self, state: &str, reads: &[&str], mv: Move) {
        for r in reads {
            self.go(state, r, mv, state);
        }
    }
}

fn selection_name(menu: &[&str]) -> String {
    let mut name = String::from(SELECTION_PREFIX);
    name.push_str(&decoder_name(menu)["dec_".len()..]);
    name
}

/// Decoder state after reading `prefix` of a menu: the lengths of its
/// runs of `1`.
fn decoder_name(prefix: &[&str]) -> String {
    let runs: Vec<String> = prefix.split(|s| *s == SEP).map(|run| run.len().to_string()).collect();
    format!("dec_{}", runs.join("_"))
}

fn write_lookup(b: &mut Builder) {
    use Move::*;
    b.skip("lookup", &[ONE, SEP, HASH, VISITED], R);
    b.go("lookup", CLOSE, R, "count");
    b.go("count", COUNTED, R, "count");
    b.tau("count", ONE, COUNTED, L, "back");
    b.go("count", BLANK, L, "found");
    b.skip("back", &[COUNTED, CLOSE, ONE, SEP, HASH, VISITED], L);
    b.go("back", OPEN, R, "seek");
    b.skip("seek", &[ONE, SEP, VISITED], R);
    b.tau("seek", HASH, VISITED, R, "lookup");
    b.skip("found", &[COUNTED, CLOSE, ONE, SEP, HASH], L);
    b.go("found", VISITED, R, "menu_open");
    b.skip("menu_open", &[ONE, SEP, HASH, CLOSE, COUNTED], R);
    b.tau("menu_open", BLANK, OPEN, L, "ret_cpF");
}

fn write_menu_copy(b: &mut Builder) {
    use Move::*;
    let plain = [ONE, SEP, HASH, CLOSE, COUNTED, OPEN];
    for phase in ["cpF", "cpA"] {
        let carry = format!("carry_{phase}");
        let ret = format!("ret_{phase}");
        b.tau(phase, ONE, COPIED, R, &carry);
        b.skip(&carry, &plain, R);
        b.tau(&carry, BLANK, ONE, L, &ret);
        b.skip(&ret, &plain, L);
        for mark in [COPIED, COPIED_SEP, VISITED] {
            b.go(&ret, mark, R, phase);
        }
    }
    b.tau("cpF", SEP, COPIED_SEP, R, "sepw_cpA");
    b.tau("cpA", SEP, COPIED_SEP, R, "skipT");
    b.go("skipT", ONE, R, "skipT");
    b.tau("skipT", SEP, COPIED_SEP, R, "sepw_cpA");
    for end in [HASH, CLOSE] {
        b.go("cpF", end, R, "close");
        b.go("skipT", end, R, "close");
    }
    b.skip("sepw_cpA", &plain, R);
    b.tau("sepw_cpA", BLANK, SEP, L, "ret_cpA");
    b.skip("close", &plain, R);
    b.tau("close", BLANK, CLOSE, L, "restore");
    b.tau("restore", COPIED, ONE, L, "restore");
    b.tau("restore", COPIED_SEP, SEP, L, "restore");
    b.skip("restore", &plain, L);
    b.go("restore", VISITED, R, "to_menu");
    b.skip("to_menu", &[ONE, SEP, HASH, CLOSE, COUNTED], R);
    b.go("to_menu", OPEN, R, &decoder_name(&[]));
}

/// Trie of the menus, one state per proper prefix, ending in the
/// selection state of each menu.
fn write_decoder(b: &mut Builder, menus: &BTreeMap<Vec<&'static str>, Menu>) {
    for (code, menu) in menus {
        for j in 0..code.len() {
            b.go(&decoder_name(&code[..j]), code[j], Move::R, &decoder_name(&code[..=j]));
        }
        let sel = selection_name(code);
        b.go(&decoder_name(code), CLOSE, Move::R, &sel);
        if menu.final_flag {
            b.finals.insert(sym(&sel));
        }
        for (i, a) in menu.actions.iter().enumerate() {
            b.rule(&sel, BLANK, a.clone(), BLANK, Move::L, &format!("ri{}_erase", i + 1));
        }
    }
}

/// Erases the menu and the current code, then copies the target of the
/// `i`-th transition of the current entry as the new code.
fn write_reinit(b: &mut Builder, i: usize) {
    use Move::*;
    let st = |s: &str| format!("ri{i}_{s}");
    for d in [ONE, SEP, CLOSE, OPEN] {
        b.tau(&st("erase"), d, BLANK, L, &st("erase"));
    }
    b.tau(&st("erase"), COUNTED, BLANK, L, &st("eraseC"));
    b.tau(&st("eraseC"), COUNTED, BLANK, L, &st("eraseC"));
    b.go(&st("eraseC"), CLOSE, L, &st("find"));
    b.skip(&st("find"), &[ONE, SEP, HASH], L);
    b.go(&st("find"), VISITED, R, &st("F"));
    b.go(&st("F"), ONE, R, &st("F"));
    b.go(&st("F"), SEP, R, &st("A1"));
    for j in 1..=i {
        let a = st(&format!("A{j}"));
        b.go(&a, ONE, R, &a);
        if j == i {
            b.go(&a, SEP, R, "ri_cp");
        } else {
            let t = st(&format!("T{j}"));
            b.go(&a, SEP, R, &t);
            b.go(&t, ONE, R, &t);
            b.go(&t, SEP, R, &st(&format!("A{}", j + 1)));
        }
    }
}

fn write_reinit_shared(b: &mut Builder) {
    use Move::*;
    let plain = [ONE, SEP, HASH, CLOSE];
    b.tau("ri_cp", ONE, COPIED, R, "ri_carry");
    for end in [SEP, HASH, CLOSE] {
        b.go("ri_cp", end, L, "ri_restore");
    }
    b.skip("ri_carry", &plain, R);
    b.tau("ri_carry", BLANK, ONE, L, "ri_ret");
    b.skip("ri_ret", &plain, L);
    b.go("ri_ret", COPIED, R, "ri_cp");
    b.tau("ri_restore", COPIED, ONE, L, "ri_restore");
    b.tau("ri_restore", VISITED, HASH, L, "ri_restore");
    b.skip("ri_restore", &plain, L);
    b.go("ri_restore", OPEN, R, "lookup");
}

/// Builds a machine whose transition system is divergence-preserving
/// branching bisimilar to `ts`. Every computation between two selection
/// states is internal and fully deterministic, and a deterministic `ts`
/// yields a deterministic machine.
pub fn build_simulator(ts: &FiniteLts, bound: usize) -> Result<Rtm, SimgenError> {
    if !ts.frontier().is_empty() {
        return Err(SimgenError::Frontier);
    }
    let degree = branching_degree(ts);
    if degree > bound {
        return Err(SimgenError::DegreeExceedsBound { degree, bound });
    }
    let actions: Vec<Action> = ts.actions().into_iter().collect();
    let index = |a: &Action| actions.iter().position(|b| b == a).expect("action of ts") + 1;

    let mut table = vec![OPEN];
    for s in 0..ts.num_states() {
        table.push(HASH);
        table.extend(unary(usize::from(ts.is_final(s)) + 1));
        for t in ts.out(s) {
            table.push(SEP);
            table.extend(unary(index(&t.action)));
            table.push(SEP);
            table.extend(unary(t.dst + 1));
        }
    }
    table.push(CLOSE);
    table.extend(unary(ts.initial() + 1));

    let mut menus: BTreeMap<Vec<&'static str>, Menu> = BTreeMap::new();
    for s in reachable(ts) {
        let menu = menu_of(ts, s);
        let mut code: Vec<&'static str> = unary(usize::from(menu.final_flag) + 1).collect();
        for a in &menu.actions {
            code.push(SEP);
            code.extend(unary(index(a)));
        }
        menus.insert(code, menu);
    }

    let mut b = Builder { states: BTreeSet::new(), finals: BTreeSet::new(), rules: Vec::new() };
    for (j, d) in table.iter().enumerate() {
        let next = if j + 1 == table.len() { "rewind".to_string() } else { format!("init_{}", j + 1) };
        b.tau(&format!("init_{j}"), BLANK, d, Move::R, &next);
    }
    b.go("rewind", BLANK, Move::L, "rewind");
    b.skip("rewind", &[ONE, SEP, HASH, CLOSE], Move::L);
    b.go("rewind", OPEN, Move::R, "lookup");
    write_lookup(&mut b);
    write_menu_copy(&mut b);
    write_decoder(&mut b, &menus);
    let max_k = menus.values().map(|m| m.actions.len()).max().unwrap_or(0);
    for i in 1..=max_k {
        write_reinit(&mut b, i);
    }
    if max_k > 0 {
        write_reinit_shared(&mut b);
    }
    let alphabet = [ONE, OPEN, CLOSE, SEP, HASH, COUNTED, VISITED, COPIED, COPIED_SEP].map(sym);
    Ok(Rtm::new(b.states, sym("init_0"), b.finals, alphabet, b.rules)?)
}

fn reachable(ts: &FiniteLts) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([ts.initial()]);
    let mut stack = vec![ts.initial()];
    while let Some(s) = stack.pop() {
        for t in ts.out(s) {
            if seen.insert(t.dst) {
                stack.push(t.dst);
            }
        }
    }
    seen
}

/// Explores the parallel composition of `m1` and `m2` over `channels` and
/// builds a single machine simulating it. Fails if the product is not
/// completely explored within `depth` and `state_bound`.
pub fn simulate_parallel(
    m1: &Rtm,
    m2: &Rtm,
    channels: &BTreeSet<Sym>,
    depth: usize,
    bound: usize,
    state_bound: usize,
) -> Result<Rtm, SimgenError> {
    let product = explore(&parallel_compose(m1, m2, channels.clone()), depth, state_bound);
    if !product.frontier().is_empty() {
        return Err(SimgenError::ProductNotFinite);
    }
    build_simulator(&product, bound)
}
