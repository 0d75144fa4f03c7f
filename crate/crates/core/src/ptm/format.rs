use std::fmt::Write;

use super::{InputMove, Ptm, PtmError, PtmRule, WorkMove, NO_EMIT};
use crate::lts::{sym, Sym};

pub(super) fn write_ptm(m: &Ptm) -> String {
    let join = |it: &mut dyn Iterator<Item = &Sym>| it.map(|s| format!(" {s}")).collect::<String>();
    let mut out = String::new();
    let _ = writeln!(out, "states:{}", join(&mut m.states().iter()));
    let _ = writeln!(out, "initial: {}", m.initial_state());
    let _ = writeln!(out, "halting:{}", join(&mut m.halting().iter()));
    let _ = writeln!(out, "alphabet:{}", join(&mut m.alphabet().iter()));
    for r in m.rules() {
        let adv = match r.input_move {
            InputMove::Advance => "adv",
            InputMove::Stay => "stay",
        };
        let mv = match r.work_move {
            WorkMove::L => "L",
            WorkMove::R => "R",
            WorkMove::S => "S",
        };
        let emit = r.emit.as_deref().unwrap_or(NO_EMIT);
        let _ = writeln!(out, "rule {} {} {} -> {} {adv} {} {mv} {emit}", r.state, r.input, r.work, r.next, r.write);
    }
    out
}

/// Parses the `.ptm` text format. Blank lines and lines starting with `//`
/// are ignored.
///
/// ```text
/// states: q h
/// initial: q
/// halting: h
/// alphabet: a b
/// rule q a _ -> q adv _ S a
/// ```
pub fn parse_ptm(text: &str) -> Result<Ptm, PtmError> {
    let mut states = None;
    let mut initial = None;
    let mut halting = Vec::new();
    let mut alphabet = Vec::new();
    let mut rules = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let err = |msg: String| PtmError::Parse { line: n, msg };
        let line = raw.trim();
        if line.is_empty() || line.starts_with("//") {
            continue;
        }
        let words = |rest: &str| rest.split_whitespace().map(sym).collect::<Vec<Sym>>();
        if let Some(rest) = line.strip_prefix("states:") {
            states = Some(words(rest));
        } else if let Some(rest) = line.strip_prefix("initial:") {
            match words(rest)[..] {
                [ref s] => initial = Some(s.clone()),
                _ => return Err(err("expected exactly one initial state".into())),
            }
        } else if let Some(rest) = line.strip_prefix("halting:") {
            halting.extend(words(rest));
        } else if let Some(rest) = line.strip_prefix("alphabet:") {
            alphabet.extend(words(rest));
        } else if let Some(rest) = line.strip_prefix("rule ") {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            let [state, input, work, "->", next, adv, write, mv, emit] = toks[..] else {
                return Err(err(format!(
                    "expected `rule <state> <in> <work> -> <state> <adv|stay> <write> <L|R|S> <emit|->`, found `{line}`"
                )));
            };
            let adv = match adv {
                "adv" => InputMove::Advance,
                "stay" => InputMove::Stay,
                other => return Err(err(format!("unknown input move `{other}`"))),
            };
            let mv = match mv {
                "L" => WorkMove::L,
                "R" => WorkMove::R,
                "S" => WorkMove::S,
                other => return Err(err(format!("unknown work move `{other}`"))),
            };
            let emit = (emit != NO_EMIT).then_some(emit);
            rules.push(PtmRule::new(state, input, work, next, adv, write, mv, emit));
        } else {
            return Err(err(format!("unrecognised line `{line}`")));
        }
    }
    let missing = |what: &str| PtmError::Parse { line: 0, msg: format!("missing `{what}` line") };
    Ptm::new(states.ok_or_else(|| missing("states:"))?, initial.ok_or_else(|| missing("initial:"))?, halting, alphabet, rules)
}
