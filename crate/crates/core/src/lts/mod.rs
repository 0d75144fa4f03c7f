//! Labelled transition systems: actions, lazy generators and explored
//! finite fragments.

mod compose;
mod explore;
mod format;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use thiserror::Error;

pub use compose::{parallel_compose, Parallel};
pub use explore::{explore, explore_observable, explore_states, explore_states_observable, Explored};
pub use format::parse_lts;

/// Interned string used for symbols, channel names and state names.
pub type Sym = Arc<str>;

/// The blank tape symbol, written `_` in every text format.
pub const BLANK: &str = "_";

pub fn sym(s: &str) -> Sym {
    Arc::from(s)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LtsError {
    #[error("invalid action label `{0}`")]
    BadLabel(String),
    #[error("transition endpoint {0} out of range")]
    BadState(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// An action: the silent step, a plain action name, or a send/receive of a
/// datum along a channel.
///
/// The derived order is the canonical one: kind first (`tau`, plain, send,
/// receive), then channel (or name), then datum.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Action {
    Tau,
    Plain(Sym),
    Send(Sym, Sym),
    Recv(Sym, Sym),
}

impl Action {
    pub fn plain(name: &str) -> Self {
        Action::Plain(sym(name))
    }

    pub fn send(channel: &str, datum: &str) -> Self {
        Action::Send(sym(channel), sym(datum))
    }

    pub fn recv(channel: &str, datum: &str) -> Self {
        Action::Recv(sym(channel), sym(datum))
    }

    pub fn is_tau(&self) -> bool {
        matches!(self, Action::Tau)
    }

    /// Channel of a send or receive action.
    pub fn channel(&self) -> Option<&str> {
        match self {
            Action::Send(c, _) | Action::Recv(c, _) => Some(c),
            _ => None,
        }
    }

    /// True if this is `c!d` or `c?d` for some `c` in `channels`.
    pub fn on_channels(&self, channels: &BTreeSet<Sym>) -> bool {
        self.channel().is_some_and(|c| channels.contains(c))
    }

    /// Whether `self` and `other` form a matching send/receive pair.
    pub fn complements(&self, other: &Action) -> bool {
        match (self, other) {
            (Action::Send(c, d), Action::Recv(c2, d2)) | (Action::Recv(c, d), Action::Send(c2, d2)) => {
                c == c2 && d == d2
            }
            _ => false,
        }
    }

    /// Parses `tau`, `name`, `c!d` or `c?d`.
    pub fn parse(label: &str) -> Result<Action, LtsError> {
        let bad = || LtsError::BadLabel(label.to_string());
        if label == "tau" {
            return Ok(Action::Tau);
        }
        if label.is_empty() || label.chars().any(|c| c.is_whitespace() || c == '"') {
            return Err(bad());
        }
        if let Some(i) = label.find(['!', '?']) {
            let (chan, rest) = label.split_at(i);
            let datum = &rest[1..];
            if !is_identifier(chan) || datum.is_empty() || datum.contains(['!', '?']) {
                return Err(bad());
            }
            return Ok(if rest.starts_with('!') {
                Action::send(chan, datum)
            } else {
                Action::recv(chan, datum)
            });
        }
        if !is_identifier(label) {
            return Err(bad());
        }
        Ok(Action::plain(label))
    }
}

/// `[A-Za-z][A-Za-z0-9_]*`
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Tau => write!(f, "tau"),
            Action::Plain(a) => write!(f, "{a}"),
            Action::Send(c, d) => write!(f, "{c}!{d}"),
            Action::Recv(c, d) => write!(f, "{c}?{d}"),
        }
    }
}

/// A lazily computed transition system.
///
/// Implementations must be pure: `out` and `fin` return the same result,
/// in the same order, every time they are called on the same state.
pub trait LtsGenerator {
    type State: Clone + Eq + Hash;

    fn initial(&self) -> Self::State;
    fn out(&self, s: &Self::State) -> Vec<(Action, Self::State)>;
    fn fin(&self, s: &Self::State) -> bool;

    /// States whose out-set is known to be incomplete. Exploration records
    /// them as frontier without expanding them.
    fn truncated(&self, _s: &Self::State) -> bool {
        false
    }
}

impl<G: LtsGenerator + ?Sized> LtsGenerator for &G {
    type State = G::State;

    fn initial(&self) -> Self::State {
        (**self).initial()
    }
    fn out(&self, s: &Self::State) -> Vec<(Action, Self::State)> {
        (**self).out(s)
    }
    fn fin(&self, s: &Self::State) -> bool {
        (**self).fin(s)
    }
    fn truncated(&self, s: &Self::State) -> bool {
        (**self).truncated(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub src: usize,
    pub action: Action,
    pub dst: usize,
}

/// A finite explored fragment. Transitions are kept sorted by
/// `(src, action, dst)` and free of duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLts {
    num_states: usize,
    initial: usize,
    transitions: Vec<Transition>,
    offsets: Vec<usize>,
    finals: BTreeSet<usize>,
    frontier: BTreeSet<usize>,
}

impl FiniteLts {
    pub fn new(
        num_states: usize,
        initial: usize,
        mut transitions: Vec<Transition>,
        finals: BTreeSet<usize>,
        frontier: BTreeSet<usize>,
    ) -> Result<Self, LtsError> {
        if initial >= num_states {
            return Err(LtsError::BadState(initial));
        }
        for t in &transitions {
            if t.src >= num_states {
                return Err(LtsError::BadState(t.src));
            }
            if t.dst >= num_states {
                return Err(LtsError::BadState(t.dst));
            }
        }
        if let Some(&s) = finals.iter().chain(frontier.iter()).find(|&&s| s >= num_states) {
            return Err(LtsError::BadState(s));
        }
        transitions.sort();
        transitions.dedup();
        let mut offsets = vec![0; num_states + 1];
        for t in &transitions {
            offsets[t.src + 1] += 1;
        }
        for i in 0..num_states {
            offsets[i + 1] += offsets[i];
        }
        Ok(FiniteLts { num_states, initial, transitions, offsets, finals, frontier })
    }

    /// Builds an LTS from `(src, label, dst)` triples; handy in tests.
    pub fn from_triples(
        num_states: usize,
        initial: usize,
        triples: &[(usize, &str, usize)],
        finals: &[usize],
    ) -> Result<Self, LtsError> {
        let transitions = triples
            .iter()
            .map(|&(src, label, dst)| Ok(Transition { src, action: Action::parse(label)?, dst }))
            .collect::<Result<Vec<_>, LtsError>>()?;
        FiniteLts::new(num_states, initial, transitions, finals.iter().copied().collect(), BTreeSet::new())
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn out(&self, s: usize) -> &[Transition] {
        &self.transitions[self.offsets[s]..self.offsets[s + 1]]
    }

    pub fn finals(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn frontier(&self) -> &BTreeSet<usize> {
        &self.frontier
    }

    pub fn is_final(&self, s: usize) -> bool {
        self.finals.contains(&s)
    }

    pub fn is_frontier(&self, s: usize) -> bool {
        self.frontier.contains(&s)
    }

    /// All actions occurring on transitions.
    pub fn actions(&self) -> BTreeSet<Action> {
        self.transitions.iter().map(|t| t.action.clone()).collect()
    }

    /// Same system with the frontier marks dropped, so that frontier states
    /// become ordinary states without outgoing transitions.
    pub fn without_frontier(&self) -> FiniteLts {
        FiniteLts { frontier: BTreeSet::new(), ..self.clone() }
    }

    /// Sorted set of states reachable from `s` by zero or more τ-steps.
    pub fn tau_closure(&self, s: usize) -> Vec<usize> {
        let mut seen = HashSet::from([s]);
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for t in self.out(x) {
                if t.action.is_tau() && seen.insert(t.dst) {
                    stack.push(t.dst);
                }
            }
        }
        let mut v: Vec<usize> = seen.into_iter().collect();
        v.sort_unstable();
        v
    }

    /// Serialises to the `.lts` text format.
    pub fn to_text(&self) -> String {
        format::write_lts(self)
    }
}

impl LtsGenerator for FiniteLts {
    type State = usize;

    fn initial(&self) -> usize {
        self.initial
    }
    fn out(&self, s: &usize) -> Vec<(Action, usize)> {
        self.out(*s).iter().map(|t| (t.action.clone(), t.dst)).collect()
    }
    fn fin(&self, s: &usize) -> bool {
        self.is_final(*s)
    }
    fn truncated(&self, s: &usize) -> bool {
        self.is_frontier(*s)
    }
}

/// Maximum number of recorded outgoing transitions of any state.
pub fn branching_degree(lts: &FiniteLts) -> usize {
    (0..lts.num_states()).map(|s| lts.out(s).len()).max().unwrap_or(0)
}

/// Every action leads to at most one state, and a τ-transition is the only
/// outgoing transition of its source.
pub fn is_deterministic(lts: &FiniteLts) -> bool {
    (0..lts.num_states()).all(|s| {
        let out = lts.out(s);
        let has_tau = out.iter().any(|t| t.action.is_tau());
        if has_tau && out.len() > 1 {
            return false;
        }
        out.windows(2).all(|w| w[0].action != w[1].action)
    })
}

/// All sequences of visible actions of length at most `max_len` performed by
/// paths from the initial state, τ-steps skipped.
pub fn observable_traces(lts: &FiniteLts, max_len: usize) -> BTreeSet<Vec<Action>> {
    let mut result = BTreeSet::new();
    let mut layer: Vec<(Vec<Action>, BTreeSet<usize>)> =
        vec![(Vec::new(), lts.tau_closure(lts.initial()).into_iter().collect())];
    for len in 0..=max_len {
        let mut next: std::collections::BTreeMap<Vec<Action>, BTreeSet<usize>> = Default::default();
        for (trace, states) in &layer {
            result.insert(trace.clone());
            if len == max_len {
                continue;
            }
            for &s in states {
                for t in lts.out(s) {
                    if t.action.is_tau() {
                        continue;
                    }
                    let mut longer = trace.clone();
                    longer.push(t.action.clone());
                    next.entry(longer).or_default().extend(lts.tau_closure(t.dst));
                }
            }
        }
        layer = next.into_iter().collect();
    }
    result
}

/// Visible actions along one path, following the unique successor of every
/// state until a branch, a deadlock or `max_steps` transitions.
pub fn linear_trace(lts: &FiniteLts, max_steps: usize) -> Vec<Action> {
    let mut trace = Vec::new();
    let mut s = lts.initial();
    for _ in 0..max_steps {
        let out = lts.out(s);
        if out.len() != 1 {
            break;
        }
        if !out[0].action.is_tau() {
            trace.push(out[0].action.clone());
        }
        s = out[0].dst;
    }
    trace
}
