//! Persistent Turing machines, their macrostep semantics, interactive
//! transition systems, and the translations between interactive and
//! labelled transition systems.
//!
//! A persistent machine has a read-only input tape, a work tape that is
//! kept between macrosteps and a write-only output tape. A macrostep runs
//! the machine on an input word from the current work contents to a
//! halting state. Its interactive transition system has the reachable work
//! contents as states, plus a state `∞` entered by diverging macrosteps.

mod format;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

pub use format::parse_ptm;

use crate::lts::{sym, Action, FiniteLts, LtsGenerator, Sym, BLANK};

/// Channel receiving the input of a macrostep.
pub const CHAN_IN: &str = "i";
/// Channel sending the output of a macrostep.
pub const CHAN_OUT: &str = "o";
/// Datum closing an input or output word.
pub const END_OF_WORD: &str = "#";
/// Written where a rule emits nothing.
pub const NO_EMIT: &str = "-";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PtmError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),
    #[error("`{0}` is reserved and cannot be a data symbol")]
    ReservedSymbol(String),
    #[error("invalid interactive transition system: {0}")]
    InvalidIts(String),
    #[error("action `{0}` is neither τ, an input on `i` nor an output on `o`")]
    UnexpectedAction(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InputMove {
    Advance,
    Stay,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WorkMove {
    L,
    R,
    S,
}

/// In `state`, reading `input` (the blank past the end of the input) and
/// `work`: continue in `next`, possibly advance the input head, write
/// `write` on the work tape, move its head and possibly emit a symbol.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PtmRule {
    pub state: Sym,
    pub input: Sym,
    pub work: Sym,
    pub next: Sym,
    pub input_move: InputMove,
    pub write: Sym,
    pub work_move: WorkMove,
    pub emit: Option<Sym>,
}

impl PtmRule {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        state: &str,
        input: &str,
        work: &str,
        next: &str,
        input_move: InputMove,
        write: &str,
        work_move: WorkMove,
        emit: Option<&str>,
    ) -> Self {
        PtmRule {
            state: sym(state),
            input: sym(input),
            work: sym(work),
            next: sym(next),
            input_move,
            write: sym(write),
            work_move,
            emit: emit.map(sym),
        }
    }
}

/// A validated persistent machine with rules kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ptm {
    states: BTreeSet<Sym>,
    initial: Sym,
    halting: BTreeSet<Sym>,
    alphabet: BTreeSet<Sym>,
    rules: Vec<PtmRule>,
}

impl Ptm {
    /// Validates and builds a machine. `alphabet` is the data alphabet,
    /// shared by all three tapes, without the blank.
    pub fn new(
        states: impl IntoIterator<Item = Sym>,
        initial: Sym,
        halting: impl IntoIterator<Item = Sym>,
        alphabet: impl IntoIterator<Item = Sym>,
        rules: impl IntoIterator<Item = PtmRule>,
    ) -> Result<Ptm, PtmError> {
        let states: BTreeSet<Sym> = states.into_iter().collect();
        let halting: BTreeSet<Sym> = halting.into_iter().collect();
        let alphabet: BTreeSet<Sym> = alphabet.into_iter().collect();
        let mut rules: Vec<PtmRule> = rules.into_iter().collect();
        if let Some(d) = alphabet.iter().find(|d| [BLANK, END_OF_WORD, NO_EMIT].contains(&&***d)) {
            return Err(PtmError::ReservedSymbol(d.to_string()));
        }
        let known_state = |s: &Sym| if states.contains(s) { Ok(()) } else { Err(PtmError::UnknownState(s.to_string())) };
        let known_symbol = |s: &Sym| {
            if &**s == BLANK || alphabet.contains(s) {
                Ok(())
            } else {
                Err(PtmError::UnknownSymbol(s.to_string()))
            }
        };
        known_state(&initial)?;
        halting.iter().try_for_each(known_state)?;
        for r in &rules {
            known_state(&r.state)?;
            known_state(&r.next)?;
            known_symbol(&r.input)?;
            known_symbol(&r.work)?;
            known_symbol(&r.write)?;
            if let Some(e) = &r.emit {
                if !alphabet.contains(e) {
                    return Err(PtmError::UnknownSymbol(e.to_string()));
                }
            }
        }
        rules.sort();
        rules.dedup();
        Ok(Ptm { states, initial, halting, alphabet, rules })
    }

    pub fn states(&self) -> &BTreeSet<Sym> {
        &self.states
    }

    pub fn initial_state(&self) -> &Sym {
        &self.initial
    }

    pub fn halting(&self) -> &BTreeSet<Sym> {
        &self.halting
    }

    pub fn alphabet(&self) -> &BTreeSet<Sym> {
        &self.alphabet
    }

    pub fn rules(&self) -> &[PtmRule] {
        &self.rules
    }

    fn rules_for<'a>(&'a self, state: &'a str, input: &'a str, work: &'a str) -> impl Iterator<Item = &'a PtmRule> {
        self.rules.iter().filter(move |r| &*r.state == state && &*r.input == input && &*r.work == work)
    }

    /// Serialises to the `.ptm` text format.
    pub fn to_text(&self) -> String {
        format::write_ptm(self)
    }
}

/// Why a macrostep is judged divergent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Divergence {
    /// A configuration repeats, so some computation runs forever.
    Cycle,
    /// The fuel ran out before all computations were decided.
    FuelExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MacroResult {
    Halt { work: Vec<Sym>, output: Vec<Sym> },
    Diverge(Divergence),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Macrostep {
    pub input: Vec<Sym>,
    pub result: MacroResult,
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Core {
    state: Sym,
    in_pos: usize,
    work: Vec<Sym>,
    work_pos: usize,
}

fn trim_blanks(cells: &[Sym]) -> Vec<Sym> {
    let end = cells.iter().rposition(|c| &**c != BLANK).map_or(0, |i| i + 1);
    cells[..end].to_vec()
}

fn step(m: &Ptm, input: &[Sym], c: &Core) -> Vec<(Core, Option<Sym>)> {
    let blank = sym(BLANK);
    let read_in = input.get(c.in_pos).unwrap_or(&blank);
    let read_work = c.work.get(c.work_pos).unwrap_or(&blank);
    m.rules_for(&c.state, read_in, read_work)
        .map(|r| {
            let mut work = c.work.clone();
            if c.work_pos >= work.len() {
                work.resize(c.work_pos + 1, blank.clone());
            }
            work[c.work_pos] = r.write.clone();
            let work_pos = match r.work_move {
                WorkMove::L => c.work_pos.saturating_sub(1),
                WorkMove::R => c.work_pos + 1,
                WorkMove::S => c.work_pos,
            };
            let in_pos = match r.input_move {
                InputMove::Advance => (c.in_pos + 1).min(input.len()),
                InputMove::Stay => c.in_pos,
            };
            (Core { state: r.next.clone(), in_pos, work: trim_blanks(&work), work_pos }, r.emit.clone())
        })
        .collect()
}

fn has_cycle(edges: &HashMap<Core, Vec<Core>>) -> bool {
    // 1 = on the current path, 2 = finished.
    let mut colour: HashMap<&Core, u8> = HashMap::new();
    for start in edges.keys() {
        if colour.contains_key(start) {
            continue;
        }
        colour.insert(start, 1);
        let mut stack: Vec<(&Core, usize)> = vec![(start, 0)];
        while let Some(&(n, i)) = stack.last() {
            let succ = edges.get(n).map(Vec::as_slice).unwrap_or(&[]);
            if i < succ.len() {
                stack.last_mut().expect("non-empty").1 += 1;
                match colour.get(&succ[i]) {
                    Some(1) => return true,
                    Some(_) => {}
                    None => {
                        colour.insert(&succ[i], 1);
                        stack.push((&succ[i], 0));
                    }
                }
            } else {
                colour.insert(n, 2);
                stack.pop();
            }
        }
    }
    false
}

/// All macrosteps of `m` on `input` from the work contents `work`.
///
/// Configurations are explored breadth first, expanding at most `fuel` of
/// them. Every halting configuration gives a result; a repeated
/// configuration (output aside) or running out of fuel gives a single
/// divergence result.
pub fn macrosteps(m: &Ptm, work: &[Sym], input: &[Sym], fuel: usize) -> BTreeSet<Macrostep> {
    let start = (Core { state: m.initial.clone(), in_pos: 0, work: trim_blanks(work), work_pos: 0 }, Vec::<Sym>::new());
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut edges: HashMap<Core, Vec<Core>> = HashMap::new();
    let mut results = BTreeSet::new();
    let mut expanded = 0;
    let mut exhausted = false;
    while let Some((core, output)) = queue.pop_front() {
        if m.halting.contains(&core.state) {
            let result = MacroResult::Halt { work: core.work.clone(), output };
            results.insert(Macrostep { input: input.to_vec(), result });
            continue;
        }
        if expanded == fuel {
            exhausted = true;
            break;
        }
        expanded += 1;
        for (next, emit) in step(m, input, &core) {
            edges.entry(core.clone()).or_default().push(next.clone());
            let mut out = output.clone();
            out.extend(emit);
            let config = (next, out);
            if seen.insert(config.clone()) {
                queue.push_back(config);
            }
        }
    }
    let divergence = if has_cycle(&edges) {
        Some(Divergence::Cycle)
    } else if exhausted {
        Some(Divergence::FuelExhausted)
    } else {
        None
    };
    if let Some(d) = divergence {
        results.insert(Macrostep { input: input.to_vec(), result: MacroResult::Diverge(d) });
    }
    results
}

/// Output of an interactive transition: a word, or `μ` for divergence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ItsOutput {
    Word(Vec<Sym>),
    Mu,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ItsEdge {
    pub src: usize,
    pub input: Vec<Sym>,
    pub output: ItsOutput,
    pub dst: usize,
}

/// A finite interactive transition system over a data alphabet. States
/// are numbered and carry names; `infinity`, if present, is the state `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Its {
    names: Vec<String>,
    initial: usize,
    infinity: Option<usize>,
    alphabet: BTreeSet<Sym>,
    edges: BTreeSet<ItsEdge>,
}

/// Name of a work word: its symbols separated by spaces, or `ε`.
pub fn word_name(w: &[Sym]) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        w.iter().map(|s| &**s).collect::<Vec<_>>().join(" ")
    }
}

impl Its {
    /// Validates and builds a system: transitions into `∞` and only those
    /// carry `μ`, transitions out of `∞` return to it, words are over the
    /// alphabet and every state is reachable from the initial one.
    pub fn new(
        names: Vec<String>,
        initial: usize,
        infinity: Option<usize>,
        alphabet: BTreeSet<Sym>,
        edges: impl IntoIterator<Item = ItsEdge>,
    ) -> Result<Its, PtmError> {
        let bad = |msg: String| Err(PtmError::InvalidIts(msg));
        let n = names.len();
        if initial >= n || infinity.is_some_and(|i| i >= n) {
            return bad("state index out of range".into());
        }
        if names.iter().collect::<BTreeSet<_>>().len() != n {
            return bad("duplicate state names".into());
        }
        if let Some(d) = alphabet.iter().find(|d| &***d == END_OF_WORD) {
            return Err(PtmError::ReservedSymbol(d.to_string()));
        }
        let edges: BTreeSet<ItsEdge> = edges.into_iter().collect();
        for e in &edges {
            if e.src >= n || e.dst >= n {
                return bad("transition endpoint out of range".into());
            }
            let words = e.input.iter().chain(match &e.output {
                ItsOutput::Word(w) => w.as_slice(),
                ItsOutput::Mu => &[],
            });
            if let Some(d) = words.into_iter().find(|d| !alphabet.contains(*d)) {
                return Err(PtmError::UnknownSymbol(d.to_string()));
            }
            let into_inf = Some(e.dst) == infinity;
            if into_inf != (e.output == ItsOutput::Mu) {
                return bad(format!("transition {} -> {} must carry μ exactly when it enters ∞", names[e.src], names[e.dst]));
            }
            if Some(e.src) == infinity && !into_inf {
                return bad("transition leaving ∞".into());
            }
        }
        let mut seen = BTreeSet::from([initial]);
        let mut stack = vec![initial];
        while let Some(s) = stack.pop() {
            for e in edges.iter().filter(|e| e.src == s) {
                if seen.insert(e.dst) {
                    stack.push(e.dst);
                }
            }
        }
        if seen.len() != n {
            return bad("unreachable state".into());
        }
        Ok(Its { names, initial, infinity, alphabet, edges })
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn infinity(&self) -> Option<usize> {
        self.infinity
    }

    pub fn alphabet(&self) -> &BTreeSet<Sym> {
        &self.alphabet
    }

    pub fn edges(&self) -> &BTreeSet<ItsEdge> {
        &self.edges
    }
}

impl fmt::Display for Its {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "initial: {}", self.names[self.initial])?;
        for e in &self.edges {
            let out = match &e.output {
                ItsOutput::Word(w) => word_name(w),
                ItsOutput::Mu => "μ".to_string(),
            };
            writeln!(f, "{} --{}/{}--> {}", self.names[e.src], word_name(&e.input), out, self.names[e.dst])?;
        }
        Ok(())
    }
}

/// All words over `alphabet` of length at most `max_len`, shortest first.
pub fn words_up_to(alphabet: &BTreeSet<Sym>, max_len: usize) -> Vec<Vec<Sym>> {
    let mut all = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<Sym>| {
                alphabet.iter().map(move |d| {
                    let mut longer = w.clone();
                    longer.push(d.clone());
                    longer
                })
            })
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

/// The interactive transition system of `m` from the empty work tape,
/// over inputs of length at most `max_input_len` from the machine's
/// alphabet. At most `max_states` work contents are expanded; `∞` is
/// present iff some macrostep diverges.
pub fn its_of_ptm(m: &Ptm, max_input_len: usize, fuel: usize, max_states: usize) -> Its {
    let inputs = words_up_to(&m.alphabet, max_input_len);
    let mut ids: BTreeMap<Vec<Sym>, usize> = BTreeMap::from([(Vec::new(), 0)]);
    let mut order: Vec<Vec<Sym>> = vec![Vec::new()];
    let mut raw: Vec<(usize, Vec<Sym>, Option<(Vec<Sym>, Vec<Sym>)>)> = Vec::new();
    let mut next = 0;
    while next < order.len() && next < max_states {
        let work = order[next].clone();
        for input in &inputs {
            for step in macrosteps(m, &work, input, fuel) {
                match step.result {
                    MacroResult::Halt { work: w, output } => {
                        if !ids.contains_key(&w) {
                            ids.insert(w.clone(), order.len());
                            order.push(w.clone());
                        }
                        raw.push((next, step.input, Some((w, output))));
                    }
                    MacroResult::Diverge(_) => raw.push((next, step.input, None)),
                }
            }
        }
        next += 1;
    }
    let mut names: Vec<String> = order.iter().map(|w| word_name(w)).collect();
    let infinity = raw.iter().any(|r| r.2.is_none()).then(|| {
        names.push("∞".to_string());
        names.len() - 1
    });
    let edges = raw.into_iter().map(|(src, input, result)| match result {
        Some((w, output)) => ItsEdge { src, input, output: ItsOutput::Word(output), dst: ids[&w] },
        None => ItsEdge { src, input, output: ItsOutput::Mu, dst: infinity.expect("divergence seen") },
    });
    Its::new(names, 0, infinity, m.alphabet.clone(), edges).expect("constructed systems satisfy the invariants")
}

/// State of the transition system of an interactive system.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ItsLtsState {
    /// Receiving input in state `.0`, having received `.1` so far.
    Input(usize, Vec<Sym>),
    /// Sending the rest `.1` of the output, then continuing in state `.0`.
    Output(usize, Vec<Sym>),
    /// Diverging after entering `∞`.
    Diverging(usize),
}

/// Generator of the transition system of an interactive system: input
/// words are received on `i` and closed by `#`, output words are sent on
/// `o` and closed by `#`, and `μ` becomes a τ-loop.
#[derive(Clone, Debug)]
pub struct ItsLts {
    its: Its,
    by_input: HashMap<(usize, Vec<Sym>), Vec<ItsEdge>>,
    input_bound: Option<usize>,
}

impl ItsLts {
    /// The same system without input words longer than `bound`. When no
    /// transition of the interactive system has a longer input, the result
    /// is finite and yields the same macrosteps.
    pub fn with_input_bound(mut self, bound: usize) -> Self {
        self.input_bound = Some(bound);
        self
    }
}

/// Longest input or output word on a transition.
pub fn max_word_len(its: &Its) -> usize {
    its.edges
        .iter()
        .map(|e| match &e.output {
            ItsOutput::Word(w) => e.input.len().max(w.len()),
            ItsOutput::Mu => e.input.len(),
        })
        .max()
        .unwrap_or(0)
}

pub fn lts_of_its(its: &Its) -> ItsLts {
    let mut by_input: HashMap<(usize, Vec<Sym>), Vec<ItsEdge>> = HashMap::new();
    for e in &its.edges {
        by_input.entry((e.src, e.input.clone())).or_default().push(e.clone());
    }
    ItsLts { its: its.clone(), by_input, input_bound: None }
}

impl LtsGenerator for ItsLts {
    type State = ItsLtsState;

    fn initial(&self) -> ItsLtsState {
        ItsLtsState::Input(self.its.initial, Vec::new())
    }

    fn out(&self, s: &ItsLtsState) -> Vec<(Action, ItsLtsState)> {
        match s {
            ItsLtsState::Input(n, w) => {
                let open = self.input_bound.is_none_or(|b| w.len() < b);
                let mut out: Vec<(Action, ItsLtsState)> = self
                    .its
                    .alphabet
                    .iter()
                    .filter(|_| open)
                    .map(|d| {
                        let mut longer = w.clone();
                        longer.push(d.clone());
                        (Action::recv(CHAN_IN, d), ItsLtsState::Input(*n, longer))
                    })
                    .collect();
                for e in self.by_input.get(&(*n, w.clone())).into_iter().flatten() {
                    let target = match &e.output {
                        ItsOutput::Word(o) => ItsLtsState::Output(e.dst, o.clone()),
                        ItsOutput::Mu => ItsLtsState::Diverging(e.dst),
                    };
                    out.push((Action::recv(CHAN_IN, END_OF_WORD), target));
                }
                out
            }
            ItsLtsState::Output(n, w) => match w.split_first() {
                Some((d, rest)) => vec![(Action::send(CHAN_OUT, d), ItsLtsState::Output(*n, rest.to_vec()))],
                None => vec![(Action::send(CHAN_OUT, END_OF_WORD), ItsLtsState::Input(*n, Vec::new()))],
            },
            ItsLtsState::Diverging(n) => vec![(Action::Tau, ItsLtsState::Diverging(*n))],
        }
    }

    fn fin(&self, _s: &ItsLtsState) -> bool {
        false
    }
}

enum Shape {
    Tau,
    In(Sym),
    Out(Sym),
}

fn shape(a: &Action) -> Result<Shape, PtmError> {
    match a {
        Action::Tau => Ok(Shape::Tau),
        Action::Recv(c, d) if &**c == CHAN_IN => Ok(Shape::In(d.clone())),
        Action::Send(c, d) if &**c == CHAN_OUT => Ok(Shape::Out(d.clone())),
        other => Err(PtmError::UnexpectedAction(other.to_string())),
    }
}

fn on_tau_cycle(l: &FiniteLts, s: usize) -> bool {
    let reach = l.tau_closure(s);
    reach.iter().any(|&x| l.out(x).iter().any(|t| t.action.is_tau() && l.tau_closure(t.dst).contains(&x)))
}

/// The interactive transition system read off a finite transition system.
///
/// From a state, a macrostep receives `i?d1 ... i?dn i?#` and then either
/// sends `o!e1 ... o!em o!#`, ending in its target, or can reach a τ-cycle
/// by τ-steps, entering `∞`. Input and output words longer than `max_len`
/// are not followed. States are named after the originating state ids.
pub fn its_of_lts(l: &FiniteLts, max_len: usize) -> Result<Its, PtmError> {
    let mut alphabet = BTreeSet::new();
    for t in l.transitions() {
        if let Shape::In(d) | Shape::Out(d) = shape(&t.action)? {
            if &*d != END_OF_WORD {
                alphabet.insert(d);
            }
        }
    }
    let mut ids: BTreeMap<usize, usize> = BTreeMap::from([(l.initial(), 0)]);
    let mut order = vec![l.initial()];
    let mut raw: Vec<(usize, Vec<Sym>, Option<(Vec<Sym>, usize)>)> = Vec::new();
    let mut next = 0;
    while next < order.len() {
        let s = order[next];
        let mut inputs = vec![(s, Vec::<Sym>::new())];
        while let Some((x, w)) = inputs.pop() {
            for t in l.out(x) {
                let Shape::In(d) = shape(&t.action)? else { continue };
                if &*d != END_OF_WORD {
                    if w.len() < max_len {
                        let mut longer = w.clone();
                        longer.push(d);
                        inputs.push((t.dst, longer));
                    }
                    continue;
                }
                if on_tau_cycle(l, t.dst) {
                    raw.push((next, w.clone(), None));
                }
                let mut outputs = vec![(t.dst, Vec::<Sym>::new())];
                while let Some((y, o)) = outputs.pop() {
                    for u in l.out(y) {
                        let Shape::Out(e) = shape(&u.action)? else { continue };
                        if &*e == END_OF_WORD {
                            if let std::collections::btree_map::Entry::Vacant(e) = ids.entry(u.dst) {
                                e.insert(order.len());
                                order.push(u.dst);
                            }
                            raw.push((next, w.clone(), Some((o.clone(), u.dst))));
                        } else if o.len() < max_len {
                            let mut longer = o.clone();
                            longer.push(e);
                            outputs.push((u.dst, longer));
                        }
                    }
                }
            }
        }
        next += 1;
    }
    let mut names: Vec<String> = order.iter().map(|s| format!("s{s}")).collect();
    let infinity = raw.iter().any(|r| r.2.is_none()).then(|| {
        names.push("∞".to_string());
        names.len() - 1
    });
    let edges = raw.into_iter().map(|(src, input, result)| match result {
        Some((output, dst)) => ItsEdge { src, input, output: ItsOutput::Word(output), dst: ids[&dst] },
        None => ItsEdge { src, input, output: ItsOutput::Mu, dst: infinity.expect("divergence seen") },
    });
    Its::new(names, 0, infinity, alphabet, edges)
}

fn label(e: &ItsEdge) -> (&[Sym], &ItsOutput) {
    (&e.input, &e.output)
}

/// Sorted labels of outgoing and incoming transitions, with the roles of a
/// state; isomorphisms preserve it.
fn signature(its: &Its, s: usize) -> (bool, bool, Vec<(&[Sym], &ItsOutput)>, Vec<(&[Sym], &ItsOutput)>) {
    let mut out: Vec<_> = its.edges.iter().filter(|e| e.src == s).map(label).collect();
    let mut inc: Vec<_> = its.edges.iter().filter(|e| e.dst == s).map(label).collect();
    out.sort();
    inc.sort();
    (s == its.initial, Some(s) == its.infinity, out, inc)
}

fn is_isomorphism(a: &Its, b: &Its, map: &[usize]) -> bool {
    a.edges.iter().all(|e| {
        b.edges.contains(&ItsEdge { src: map[e.src], input: e.input.clone(), output: e.output.clone(), dst: map[e.dst] })
    })
}

/// Whether there is a bijection between the states mapping the initial
/// state to the initial state, `∞` to `∞` and transitions to transitions
/// with the same labels. Identical state names are tried first.
pub fn its_isomorphic(a: &Its, b: &Its) -> bool {
    let n = a.num_states();
    if n != b.num_states() || a.edges.len() != b.edges.len() || a.infinity.is_some() != b.infinity.is_some() {
        return false;
    }
    let by_name: HashMap<&str, usize> = b.names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    if let Some(map) = a.names.iter().map(|s| by_name.get(s.as_str()).copied()).collect::<Option<Vec<usize>>>() {
        if map[a.initial] == b.initial && a.infinity.map(|i| map[i]) == b.infinity && is_isomorphism(a, b, &map) {
            return true;
        }
    }
    let sig_b: Vec<_> = (0..n).map(|s| signature(b, s)).collect();
    let candidates: Vec<Vec<usize>> =
        (0..n).map(|s| (0..n).filter(|&t| sig_b[t] == signature(a, s)).collect()).collect();
    if candidates.iter().any(Vec::is_empty) {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend_map(a, b, &candidates, 0, &mut map, &mut used)
}

fn extend_map(a: &Its, b: &Its, cand: &[Vec<usize>], s: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if s == map.len() {
        return is_isomorphism(a, b, map);
    }
    for &t in &cand[s] {
        if used[t] {
            continue;
        }
        map[s] = t;
        let consistent = a.edges.iter().filter(|e| e.src <= s && e.dst <= s && (e.src == s || e.dst == s)).all(|e| {
            b.edges.contains(&ItsEdge { src: map[e.src], input: e.input.clone(), output: e.output.clone(), dst: map[e.dst] })
        });
        if consistent {
            used[t] = true;
            if extend_map(a, b, cand, s + 1, map, used) {
                return true;
            }
            used[t] = false;
        }
    }
    map[s] = usize::MAX;
    false
}

fn rule(state: &str, input: &str, work: &str, next: &str, im: InputMove, write: &str, wm: WorkMove, emit: Option<&str>) -> PtmRule {
    PtmRule::new(state, input, work, next, im, write, wm, emit)
}

fn build(states: &[&str], initial: &str, halting: &[&str], alphabet: &[&str], rules: Vec<PtmRule>) -> Ptm {
    Ptm::new(
        states.iter().map(|s| sym(s)),
        sym(initial),
        halting.iter().map(|s| sym(s)),
        alphabet.iter().map(|s| sym(s)),
        rules,
    )
    .expect("fixture machines are well formed")
}

/// Halts immediately, over the alphabet `{a, b}`.
pub fn halting_ptm() -> Ptm {
    build(&["h"], "h", &["h"], &["a", "b"], Vec::new())
}

/// Copies its input to the output, then halts; the work tape stays empty.
pub fn echo_ptm() -> Ptm {
    use InputMove::*;
    let mut rules: Vec<PtmRule> =
        ["a", "b"].iter().map(|d| rule("q", d, BLANK, "q", Advance, BLANK, WorkMove::S, Some(d))).collect();
    rules.push(rule("q", BLANK, BLANK, "h", Stay, BLANK, WorkMove::S, None));
    build(&["q", "h"], "q", &["h"], &["a", "b"], rules)
}

/// Loops forever without touching its tapes.
pub fn diverging_ptm() -> Ptm {
    let mut rules = Vec::new();
    for input in ["a", "b", BLANK] {
        for work in ["a", "b", BLANK] {
            rules.push(rule("q", input, work, "q", InputMove::Stay, work, WorkMove::S, None));
        }
    }
    build(&["q"], "q", &[], &["a", "b"], rules)
}

/// Ignores its input and alternates between writing `a` on the empty work
/// tape while emitting `a`, and erasing it while emitting `b`.
pub fn toggle_ptm() -> Ptm {
    use InputMove::*;
    use WorkMove::*;
    let mut rules = Vec::new();
    for input in ["a", "b", BLANK] {
        rules.push(rule("q", input, BLANK, "h", Stay, "a", S, Some("a")));
        rules.push(rule("q", input, "a", "h", Stay, BLANK, S, Some("b")));
    }
    build(&["q", "h"], "q", &["h"], &["a", "b"], rules)
}
