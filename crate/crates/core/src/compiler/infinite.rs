//! Infinite specifications realised lazily: one name per configuration,
//! queue content or tape instance, with its equation produced on demand.

use crate::calculus::{make_name, split_name, Equations, ProcessExpr, SpecLts};
use crate::lts::{sym, Action, Sym};
use crate::rtm::{Configuration, Move, Rtm, Tape};

use super::{CHAN_I, CHAN_M, CHAN_O, CHAN_R, CHAN_W};

fn tape_args(tape: &Tape) -> Vec<String> {
    let mut args = vec![tape.left().len().to_string()];
    args.extend(tape.cells().map(|s| s.to_string()));
    args
}

fn tape_from_args(args: &[&str]) -> Option<Tape> {
    let (k, cells) = args.split_first()?;
    let k: usize = k.parse().ok()?;
    let head = cells.get(k)?;
    Some(Tape::new(&cells[..k], head, &cells[k + 1..]))
}

/// Name of the equation for configuration `c`: `Config[state,k,cells...]`
/// with the head on cell `k`.
pub fn config_name(c: &Configuration) -> String {
    let mut args = vec![c.state.to_string()];
    args.extend(tape_args(&c.tape));
    make_name("Config", &args)
}

fn parse_config(name: &str) -> Option<Configuration> {
    let (head, args) = split_name(name);
    if head != "Config" {
        return None;
    }
    let (state, rest) = args.split_first()?;
    Some(Configuration { state: sym(state), tape: tape_from_args(rest)? })
}

/// One equation per configuration of a machine: a choice over its
/// transitions, with a skip summand when the configuration is final.
#[derive(Clone, Debug)]
pub struct MachineEquations {
    pub machine: Rtm,
}

impl Equations for MachineEquations {
    fn body(&self, name: &str) -> Option<ProcessExpr> {
        let c = parse_config(name)?;
        if !self.machine.states().contains(&c.state) {
            return None;
        }
        let mut summands: Vec<ProcessExpr> = self
            .machine
            .step(&c)
            .into_iter()
            .map(|(a, next)| ProcessExpr::prefix(a, ProcessExpr::name(&config_name(&next))))
            .collect();
        if self.machine.is_final(&c.state) {
            summands.push(ProcessExpr::Skip);
        }
        Some(ProcessExpr::sum(summands))
    }
}

/// The per-configuration specification of `m`, rooted at the name of the
/// initial configuration.
pub fn spec_infinite_of_rtm(m: &Rtm) -> SpecLts<MachineEquations> {
    let root = ProcessExpr::name(&config_name(&m.initial_configuration()));
    SpecLts::lazy(MachineEquations { machine: m.clone() }, root)
}

/// Name of the queue holding `content`, written tail first:
/// `Queue[x1,...,xn]` outputs `xn` next. The empty queue is `Queue`.
pub fn queue_name<S: AsRef<str>>(content: &[S]) -> String {
    make_name("Queue", content)
}

/// The unbounded queue with input channel `i` and output channel `o`.
#[derive(Clone, Debug)]
pub struct QueueEquations {
    pub alphabet: Vec<Sym>,
}

impl Equations for QueueEquations {
    fn body(&self, name: &str) -> Option<ProcessExpr> {
        let (head, content) = split_name(name);
        if head != "Queue" || content.iter().any(|d| !self.alphabet.iter().any(|a| &**a == *d)) {
            return None;
        }
        let mut summands = Vec::new();
        if let Some((front, rest)) = content.split_last() {
            summands.push(ProcessExpr::prefix(Action::send(CHAN_O, front), ProcessExpr::name(&queue_name(rest))));
        }
        for e in &self.alphabet {
            let mut grown: Vec<&str> = vec![e];
            grown.extend(content.iter().copied());
            summands.push(ProcessExpr::prefix(Action::recv(CHAN_I, e), ProcessExpr::name(&queue_name(&grown))));
        }
        summands.push(ProcessExpr::Skip);
        Some(ProcessExpr::sum(summands))
    }
}

/// The unbounded queue over `alphabet`, started empty.
pub fn queue_infinite_gen(alphabet: &[Sym]) -> SpecLts<QueueEquations> {
    let empty: [&str; 0] = [];
    SpecLts::lazy(QueueEquations { alphabet: alphabet.to_vec() }, ProcessExpr::name(&queue_name(&empty)))
}

/// Name of the tape in state `tape`: `Tape[k,cells...]`.
pub fn tape_name(tape: &Tape) -> String {
    make_name("Tape", &tape_args(tape))
}

/// The tape over `alphabet` (which includes the blank): it outputs the
/// symbol under the head on `r`, accepts a replacement on `w` and head
/// moves on `m`, and is always final.
#[derive(Clone, Debug)]
pub struct TapeEquations {
    pub alphabet: Vec<Sym>,
}

impl Equations for TapeEquations {
    fn body(&self, name: &str) -> Option<ProcessExpr> {
        let (head, args) = split_name(name);
        if head != "Tape" {
            return None;
        }
        let tape = tape_from_args(&args)?;
        let d = tape.head().clone();
        let to = |t: &Tape| ProcessExpr::name(&tape_name(t));
        let mut summands = vec![ProcessExpr::prefix(Action::send(CHAN_R, &d), to(&tape))];
        for e in &self.alphabet {
            summands.push(ProcessExpr::prefix(Action::recv(CHAN_W, e), to(&tape.replace_head(e))));
        }
        summands.push(ProcessExpr::prefix(Action::recv(CHAN_M, "L"), to(&tape.write_move(&d, Move::L))));
        summands.push(ProcessExpr::prefix(Action::recv(CHAN_M, "R"), to(&tape.write_move(&d, Move::R))));
        summands.push(ProcessExpr::Skip);
        Some(ProcessExpr::sum(summands))
    }
}

/// The tape over `alphabet`, started on the all-blank instance.
pub fn tape_infinite_gen(alphabet: &[Sym]) -> SpecLts<TapeEquations> {
    tape_infinite_from(alphabet, &Tape::blank())
}

/// The tape over `alphabet`, started on `tape`.
pub fn tape_infinite_from(alphabet: &[Sym], tape: &Tape) -> SpecLts<TapeEquations> {
    SpecLts::lazy(TapeEquations { alphabet: alphabet.to_vec() }, ProcessExpr::name(&tape_name(tape)))
}
