//! Translation of reactive Turing machines into finite recursive
//! specifications: a finite control talking to a tape, where the tape is a
//! controller process keeping the cells in a queue, and the queue is the
//! classic six-equation specification.
//!
//! Infinite reference specifications (one name per configuration, queue
//! content or tape instance) are provided as lazily evaluated equation
//! systems for comparison.

mod infinite;

use thiserror::Error;

pub use infinite::{
    config_name, queue_infinite_gen, queue_name, spec_infinite_of_rtm, tape_infinite_from, tape_infinite_gen,
    tape_name, MachineEquations, QueueEquations, TapeEquations,
};

use crate::calculus::{is_word, make_name, CalcError, ProcessExpr, RecSpec, SpecLts, Union};
use crate::lts::{sym, Action, Sym, BLANK};
use crate::rtm::{Move, Rtm};

/// Read channel of the tape.
pub const CHAN_R: &str = "r";
/// Write channel of the tape.
pub const CHAN_W: &str = "w";
/// Move channel of the tape.
pub const CHAN_M: &str = "m";
/// Input channel of a queue.
pub const CHAN_I: &str = "i";
/// Output channel of a queue.
pub const CHAN_O: &str = "o";
/// Auxiliary channel of the finite queue.
pub const CHAN_L: &str = "l";

/// Marks where the cells right of the head end inside the tape queue.
pub const END_MARKER: &str = "⊥";
/// Marks the start of a rotation of the tape queue.
pub const ROTATION_MARKER: &str = "$";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompileError {
    #[error("machine action `{0}` uses a channel reserved for the tape")]
    ReservedChannel(String),
    #[error("`{0}` cannot be written in a specification")]
    UnprintableSymbol(String),
    #[error("symbol `{0}` is reserved as a tape marker")]
    ReservedSymbol(String),
    #[error(transparent)]
    Calc(#[from] CalcError),
}

fn move_datum(mv: Move) -> &'static str {
    match mv {
        Move::L => "L",
        Move::R => "R",
    }
}

fn name1(head: &str, arg: &str) -> ProcessExpr {
    ProcessExpr::name(&make_name(head, &[arg]))
}

fn recv(chan: &str, d: &str, then: ProcessExpr) -> ProcessExpr {
    ProcessExpr::prefix(Action::recv(chan, d), then)
}

fn send(chan: &str, d: &str, then: ProcessExpr) -> ProcessExpr {
    ProcessExpr::prefix(Action::send(chan, d), then)
}

/// Name of the finite queue that reads on `j`, writes on `k` and uses `p`
/// internally.
pub fn queue_finite_name(j: &str, k: &str, p: &str) -> String {
    make_name("Q", &[j, k, p])
}

/// The six equations of the finite queue over `alphabet`, one for each
/// assignment of the roles input, output and auxiliary to the channels
/// `i`, `o` and `l`. Every state of the queue is final.
pub fn queue_finite_spec(alphabet: &[Sym]) -> RecSpec {
    let mut spec = RecSpec::new();
    let roles = [
        (CHAN_I, CHAN_O, CHAN_L),
        (CHAN_I, CHAN_L, CHAN_O),
        (CHAN_O, CHAN_I, CHAN_L),
        (CHAN_O, CHAN_L, CHAN_I),
        (CHAN_L, CHAN_I, CHAN_O),
        (CHAN_L, CHAN_O, CHAN_I),
    ];
    for (j, k, p) in roles {
        let mut summands: Vec<ProcessExpr> = alphabet
            .iter()
            .map(|d| {
                let rest = ProcessExpr::name(&queue_finite_name(j, p, k));
                let out = ProcessExpr::choice(
                    ProcessExpr::Skip,
                    send(k, d, ProcessExpr::name(&queue_finite_name(p, k, j))),
                );
                recv(j, d, ProcessExpr::par([p], rest, out))
            })
            .collect();
        summands.push(ProcessExpr::Skip);
        spec.define(&queue_finite_name(j, k, p), ProcessExpr::sum(summands)).expect("distinct role assignments");
    }
    spec
}

/// The tape controller over the tape alphabet `alphabet` (blank
/// included). `H[d]` holds `d` under the head; the remaining equations
/// rotate the queue to move the head.
pub fn tape_controller_spec(alphabet: &[Sym]) -> RecSpec {
    let mut spec = RecSpec::new();
    let mut define = |name: String, body: ProcessExpr| spec.define(&name, body).expect("fresh name");
    let over = |f: &dyn Fn(&str) -> ProcessExpr| alphabet.iter().map(|e| f(e)).collect::<Vec<_>>();
    let h = |d: &str| name1("H", d);
    for d in alphabet {
        let mut summands = vec![send(CHAN_R, d, h(d))];
        summands.extend(over(&|e| recv(CHAN_W, e, h(e))));
        summands.push(recv(CHAN_M, "L", name1("HL", d)));
        summands.push(recv(CHAN_M, "R", name1("HR", d)));
        summands.push(ProcessExpr::Skip);
        define(make_name("H", &[d]), ProcessExpr::sum(summands));
    }
    for d in alphabet {
        let mut inner = over(&|e| recv(CHAN_O, e, h(e)));
        inner.push(recv(
            CHAN_O,
            END_MARKER,
            send(CHAN_I, ROTATION_MARKER, send(CHAN_I, END_MARKER, ProcessExpr::name("Back"))),
        ));
        define(make_name("HL", &[d]), send(CHAN_I, d, ProcessExpr::sum(inner)));
    }
    let mut back = over(&|d| recv(CHAN_O, d, send(CHAN_I, d, ProcessExpr::name("Back"))));
    back.push(recv(CHAN_O, ROTATION_MARKER, h(BLANK)));
    define("Back".to_string(), ProcessExpr::sum(back));
    for d in alphabet {
        let mut inner = over(&|e| recv(CHAN_O, e, name1("Fwd", e)));
        inner.push(recv(CHAN_O, END_MARKER, ProcessExpr::name("FwdEnd")));
        define(make_name("HR", &[d]), send(CHAN_I, ROTATION_MARKER, send(CHAN_I, d, ProcessExpr::sum(inner))));
    }
    for d in alphabet {
        let mut summands = over(&|e| recv(CHAN_O, e, send(CHAN_I, d, name1("Fwd", e))));
        summands.push(recv(CHAN_O, END_MARKER, send(CHAN_I, d, ProcessExpr::name("FwdEnd"))));
        summands.push(recv(CHAN_O, ROTATION_MARKER, h(d)));
        define(make_name("Fwd", &[d]), ProcessExpr::sum(summands));
    }
    let mut fwd_end = over(&|e| recv(CHAN_O, e, send(CHAN_I, END_MARKER, name1("Fwd", e))));
    fwd_end.push(recv(CHAN_O, ROTATION_MARKER, send(CHAN_I, END_MARKER, h(BLANK))));
    define("FwdEnd".to_string(), ProcessExpr::sum(fwd_end));
    spec
}

/// Name of the control process for state `s` reading `d`.
pub fn control_name(s: &str, d: &str) -> String {
    make_name("C", &[s, d])
}

/// One equation per state and tape symbol: for every applicable rule,
/// perform its action, then write, move and read the new head symbol; a
/// skip summand is added for final states.
pub fn finite_control_spec(m: &Rtm) -> RecSpec {
    let mut spec = RecSpec::new();
    let symbols = m.tape_alphabet();
    for s in m.states() {
        for d in &symbols {
            let mut summands: Vec<ProcessExpr> = m
                .rules_for(s, d)
                .iter()
                .map(|r| {
                    let read = ProcessExpr::sum(
                        symbols.iter().map(|f| recv(CHAN_R, f, ProcessExpr::name(&control_name(&r.next, f)))),
                    );
                    ProcessExpr::prefix(r.action.clone(), send(CHAN_W, &r.write, send(CHAN_M, move_datum(r.mv), read)))
                })
                .collect();
            if m.is_final(s) {
                summands.push(ProcessExpr::Skip);
            }
            spec.define(&control_name(s, d), ProcessExpr::sum(summands)).expect("distinct state and symbol");
        }
    }
    spec
}

/// The tape process: the controller holding a blank, next to a finite
/// queue that initially contains only the end marker. Like every queue
/// state, the pending output of the marker may also terminate.
pub fn tape_assembly() -> ProcessExpr {
    let pending = send(CHAN_O, END_MARKER, ProcessExpr::name(&queue_finite_name(CHAN_L, CHAN_O, CHAN_I)));
    let queue = ProcessExpr::par(
        [CHAN_L],
        ProcessExpr::name(&queue_finite_name(CHAN_I, CHAN_L, CHAN_O)),
        ProcessExpr::choice(ProcessExpr::Skip, pending),
    );
    ProcessExpr::par([CHAN_I, CHAN_O], name1("H", BLANK), queue)
}

/// Symbols stored in the tape queue: the tape alphabet and both markers.
pub fn queue_alphabet(tape_alphabet: &[Sym]) -> Vec<Sym> {
    let mut a = tape_alphabet.to_vec();
    a.push(sym(END_MARKER));
    a.push(sym(ROTATION_MARKER));
    a
}

fn validate(m: &Rtm) -> Result<(), CompileError> {
    for d in m.tape_alphabet() {
        if &*d == END_MARKER || &*d == ROTATION_MARKER {
            return Err(CompileError::ReservedSymbol(d.to_string()));
        }
        if !is_word(&d) {
            return Err(CompileError::UnprintableSymbol(d.to_string()));
        }
    }
    for s in m.states() {
        if !is_word(s) {
            return Err(CompileError::UnprintableSymbol(s.to_string()));
        }
    }
    for r in m.rules() {
        if let Some(c) = r.action.channel() {
            if [CHAN_R, CHAN_W, CHAN_M].contains(&c) {
                return Err(CompileError::ReservedChannel(r.action.to_string()));
            }
        }
        if let Action::Send(_, d) | Action::Recv(_, d) = &r.action {
            if !is_word(d) {
                return Err(CompileError::UnprintableSymbol(d.to_string()));
            }
        }
    }
    Ok(())
}

fn control_and_tape(m: &Rtm, tape: ProcessExpr) -> Result<(RecSpec, ProcessExpr), CompileError> {
    validate(m)?;
    let symbols: Vec<Sym> = m.tape_alphabet().into_iter().collect();
    let mut spec = finite_control_spec(m);
    spec.extend(tape_controller_spec(&symbols))?;
    let root = ProcessExpr::par([CHAN_R, CHAN_W, CHAN_M], ProcessExpr::name(&control_name(m.initial_state(), BLANK)), tape);
    Ok((spec, root))
}

/// The finite specification of `m`: its finite control in parallel with
/// the tape process, communicating over `r`, `w` and `m`.
pub fn compile(m: &Rtm) -> Result<(RecSpec, ProcessExpr), CompileError> {
    let (mut spec, root) = control_and_tape(m, tape_assembly())?;
    let symbols: Vec<Sym> = m.tape_alphabet().into_iter().collect();
    spec.extend(queue_finite_spec(&queue_alphabet(&symbols)))?;
    spec.check_interpretable(&root)?;
    Ok((spec, root))
}

/// The compiled control and tape controller of `m` with the unbounded
/// queue in place of the six-equation one. Every pass of a datum through
/// the finite queue doubles the length of later internal computations, so
/// this variant is the one that can be explored deeply.
pub fn compile_unbounded_queue(m: &Rtm) -> Result<SpecLts<Union<RecSpec, QueueEquations>>, CompileError> {
    let queue = ProcessExpr::name(&queue_name(&[END_MARKER]));
    let (spec, root) = control_and_tape(m, ProcessExpr::par([CHAN_I, CHAN_O], name1("H", BLANK), queue))?;
    let symbols: Vec<Sym> = m.tape_alphabet().into_iter().collect();
    crate::calculus::check_guarded(&spec)?;
    Ok(SpecLts::lazy(Union(spec, QueueEquations { alphabet: queue_alphabet(&symbols) }), root))
}
