use std::fmt::Write;

use super::{Move, Rtm, RtmError, Rule};
use crate::lts::{sym, Action, Sym};

pub(super) fn write_rtm(m: &Rtm) -> String {
    let join = |it: &mut dyn Iterator<Item = &Sym>| it.map(|s| format!(" {s}")).collect::<String>();
    let mut out = String::new();
    let _ = writeln!(out, "states:{}", join(&mut m.states().iter()));
    let _ = writeln!(out, "initial: {}", m.initial_state());
    let _ = writeln!(out, "final:{}", join(&mut m.finals().iter()));
    let _ = writeln!(out, "alphabet:{}", join(&mut m.alphabet().iter()));
    for r in m.rules() {
        let mv = match r.mv {
            Move::L => "L",
            Move::R => "R",
        };
        let _ = writeln!(out, "rule {} {} -> {} {} {} {}", r.state, r.read, r.action, r.write, mv, r.next);
    }
    out
}

/// Parses the `.rtm` text format. Blank lines and lines starting with `//`
/// are ignored.
pub fn parse_rtm(text: &str) -> Result<Rtm, RtmError> {
    let mut states = None;
    let mut initial = None;
    let mut finals = Vec::new();
    let mut alphabet = Vec::new();
    let mut rules = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let err = |msg: String| RtmError::Parse { line: n, msg };
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
        } else if let Some(rest) = line.strip_prefix("final:") {
            finals.extend(words(rest));
        } else if let Some(rest) = line.strip_prefix("alphabet:") {
            alphabet.extend(words(rest));
        } else if let Some(rest) = line.strip_prefix("rule ") {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            let [state, read, "->", action, write, mv, next] = toks[..] else {
                return Err(err(format!("expected `rule <state> <read> -> <action> <write> <L|R> <state>`, found `{line}`")));
            };
            let action = Action::parse(action).map_err(|e| err(e.to_string()))?;
            let mv = match mv {
                "L" => Move::L,
                "R" => Move::R,
                other => return Err(err(format!("unknown move `{other}`"))),
            };
            rules.push(Rule::new(state, read, action, write, mv, next));
        } else {
            return Err(err(format!("unrecognised line `{line}`")));
        }
    }
    let missing = |what: &str| RtmError::Parse { line: 0, msg: format!("missing `{what}` line") };
    Rtm::new(states.ok_or_else(|| missing("states:"))?, initial.ok_or_else(|| missing("initial:"))?, finals, alphabet, rules)
}
