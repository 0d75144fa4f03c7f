//! Reactive Turing machines and their configuration semantics.

mod emitter;
mod fixtures;
mod format;
mod godel;
mod tape;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

pub use emitter::emitter;
pub use fixtures::{counterexample_rtm, empty_rtm, fig1_left, fig1_right, two_rule_rtm};
pub use format::parse_rtm;
pub use godel::{godel_decode, godel_encode};
pub use tape::{place_left, place_right, Move, RawTape, Tape};

use crate::lts::{sym, Action, LtsGenerator, Sym, BLANK};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RtmError {
    #[error("not a tape instance")]
    NotTapeInstance,
    #[error("not an RTM code")]
    NotAnRtmCode,
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("symbol `{0}` is not in the tape alphabet")]
    UnknownSymbol(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A transition rule: in `state` reading `read`, perform `action`, write
/// `write`, move the head and continue in `next`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub state: Sym,
    pub read: Sym,
    pub action: Action,
    pub write: Sym,
    pub mv: Move,
    pub next: Sym,
}

impl Rule {
    pub fn new(state: &str, read: &str, action: Action, write: &str, mv: Move, next: &str) -> Self {
        Rule { state: sym(state), read: sym(read), action, write: sym(write), mv, next: sym(next) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub state: Sym,
    pub tape: Tape,
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.state, self.tape)
    }
}

/// A validated machine. Rules are kept sorted and free of duplicates; the
/// machine is itself the generator of its transition system, whose states
/// are configurations.
#[derive(Clone, Debug)]
pub struct Rtm {
    states: BTreeSet<Sym>,
    initial: Sym,
    finals: BTreeSet<Sym>,
    alphabet: BTreeSet<Sym>,
    rules: Vec<Rule>,
    index: HashMap<(Sym, Sym), (usize, usize)>,
}

impl PartialEq for Rtm {
    fn eq(&self, other: &Self) -> bool {
        self.states == other.states
            && self.initial == other.initial
            && self.finals == other.finals
            && self.alphabet == other.alphabet
            && self.rules == other.rules
    }
}

impl Eq for Rtm {}

impl Rtm {
    /// Validates and builds a machine. `alphabet` is the data alphabet
    /// without the blank.
    pub fn new(
        states: impl IntoIterator<Item = Sym>,
        initial: Sym,
        finals: impl IntoIterator<Item = Sym>,
        alphabet: impl IntoIterator<Item = Sym>,
        rules: impl IntoIterator<Item = Rule>,
    ) -> Result<Rtm, RtmError> {
        let states: BTreeSet<Sym> = states.into_iter().collect();
        let finals: BTreeSet<Sym> = finals.into_iter().collect();
        let alphabet: BTreeSet<Sym> = alphabet.into_iter().filter(|s| &**s != BLANK).collect();
        let mut rules: Vec<Rule> = rules.into_iter().collect();
        let known_state = |s: &Sym| if states.contains(s) { Ok(()) } else { Err(RtmError::UnknownState(s.to_string())) };
        let known_symbol = |s: &Sym| {
            if &**s == BLANK || alphabet.contains(s) {
                Ok(())
            } else {
                Err(RtmError::UnknownSymbol(s.to_string()))
            }
        };
        known_state(&initial)?;
        finals.iter().try_for_each(known_state)?;
        for r in &rules {
            known_state(&r.state)?;
            known_state(&r.next)?;
            known_symbol(&r.read)?;
            known_symbol(&r.write)?;
        }
        rules.sort();
        rules.dedup();
        let mut index = HashMap::new();
        let mut i = 0;
        while i < rules.len() {
            let j = i + rules[i..].iter().take_while(|r| r.state == rules[i].state && r.read == rules[i].read).count();
            index.insert((rules[i].state.clone(), rules[i].read.clone()), (i, j));
            i = j;
        }
        Ok(Rtm { states, initial, finals, alphabet, rules, index })
    }

    pub fn states(&self) -> &BTreeSet<Sym> {
        &self.states
    }

    pub fn initial_state(&self) -> &Sym {
        &self.initial
    }

    pub fn finals(&self) -> &BTreeSet<Sym> {
        &self.finals
    }

    /// Data alphabet without the blank.
    pub fn alphabet(&self) -> &BTreeSet<Sym> {
        &self.alphabet
    }

    /// Tape alphabet: the data alphabet plus the blank.
    pub fn tape_alphabet(&self) -> BTreeSet<Sym> {
        let mut a = self.alphabet.clone();
        a.insert(sym(BLANK));
        a
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Rules applicable in `state` when reading `read`.
    pub fn rules_for(&self, state: &str, read: &str) -> &[Rule] {
        match self.index.get(&(sym(state), sym(read))) {
            Some(&(i, j)) => &self.rules[i..j],
            None => &[],
        }
    }

    pub fn initial_configuration(&self) -> Configuration {
        Configuration { state: self.initial.clone(), tape: Tape::blank() }
    }

    /// All transitions from `c`, ordered as the matching rules.
    pub fn step(&self, c: &Configuration) -> Vec<(Action, Configuration)> {
        self.rules_for(&c.state, c.tape.head())
            .iter()
            .map(|r| {
                let tape = c.tape.write_move(&r.write, r.mv);
                (r.action.clone(), Configuration { state: r.next.clone(), tape })
            })
            .collect()
    }

    pub fn is_final(&self, state: &str) -> bool {
        self.finals.contains(state)
    }

    /// Serialises to the `.rtm` text format.
    pub fn to_text(&self) -> String {
        format::write_rtm(self)
    }
}

impl LtsGenerator for Rtm {
    type State = Configuration;

    fn initial(&self) -> Configuration {
        self.initial_configuration()
    }
    fn out(&self, c: &Configuration) -> Vec<(Action, Configuration)> {
        self.step(c)
    }
    fn fin(&self, c: &Configuration) -> bool {
        self.is_final(&c.state)
    }
}

/// Per state and read symbol: at most one rule per action, and a τ-rule
/// excludes every other rule.
pub fn rtm_is_deterministic(m: &Rtm) -> bool {
    m.index.values().all(|&(i, j)| {
        let group = &m.rules[i..j];
        let has_tau = group.iter().any(|r| r.action.is_tau());
        (!has_tau || group.len() == 1) && group.windows(2).all(|w| w[0].action != w[1].action)
    })
}

/// Visible actions of the run of `m` that always takes the first
/// applicable rule, stopping after `max_steps` transitions, after
/// `max_visible` visible actions, or when no rule applies.
pub fn first_choice_trace(m: &Rtm, max_steps: usize, max_visible: usize) -> Vec<Action> {
    let states: Vec<&Sym> = m.states.iter().collect();
    let symbols: Vec<Sym> = m.tape_alphabet().into_iter().collect();
    let state_id = |s: &Sym| states.binary_search(&s).expect("known state");
    let symbol_id = |s: &Sym| symbols.binary_search(s).expect("known symbol");
    let mut table: Vec<Option<(&Action, usize, Move, usize)>> = vec![None; states.len() * symbols.len()];
    for r in m.rules.iter().rev() {
        table[state_id(&r.state) * symbols.len() + symbol_id(&r.read)] =
            Some((&r.action, symbol_id(&r.write), r.mv, state_id(&r.next)));
    }
    let blank = symbol_id(&sym(BLANK));
    let mut cells = vec![blank];
    let mut head = 0usize;
    let mut state = state_id(&m.initial);
    let mut trace = Vec::new();
    for _ in 0..max_steps {
        if trace.len() >= max_visible {
            break;
        }
        let Some((action, write, mv, next)) = table[state * symbols.len() + cells[head]] else { break };
        if !action.is_tau() {
            trace.push(action.clone());
        }
        cells[head] = write;
        match mv {
            Move::L if head == 0 => cells.insert(0, blank),
            Move::L => head -= 1,
            Move::R => {
                head += 1;
                if head == cells.len() {
                    cells.push(blank);
                }
            }
        }
        state = next;
    }
    trace
}
