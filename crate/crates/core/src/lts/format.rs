use std::collections::BTreeSet;
use std::fmt::Write;

use super::{Action, FiniteLts, LtsError, Transition};

pub(super) fn write_lts(lts: &FiniteLts) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "des ({}, {}, {})", lts.initial(), lts.transitions().len(), lts.num_states());
    for t in lts.transitions() {
        let _ = writeln!(out, "({}, \"{}\", {})", t.src, t.action, t.dst);
    }
    let ids = |set: &BTreeSet<usize>| set.iter().map(|s| format!(" {s}")).collect::<String>();
    let _ = writeln!(out, "final:{}", ids(lts.finals()));
    let _ = writeln!(out, "frontier:{}", ids(lts.frontier()));
    out
}

fn parse_id(text: &str, line: usize) -> Result<usize, LtsError> {
    text.trim().parse().map_err(|_| LtsError::Parse { line, msg: format!("expected a state id, found `{}`", text.trim()) })
}

fn parse_ids(text: &str, line: usize) -> Result<BTreeSet<usize>, LtsError> {
    text.split_whitespace().map(|s| parse_id(s, line)).collect()
}

/// Parses the `.lts` text format.
pub fn parse_lts(text: &str) -> Result<FiniteLts, LtsError> {
    let err = |line: usize, msg: &str| LtsError::Parse { line, msg: msg.to_string() };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| err(1, "empty input"))?;
    let inner = header
        .strip_prefix("des")
        .map(str::trim)
        .and_then(|h| h.strip_prefix('('))
        .and_then(|h| h.strip_suffix(')'))
        .ok_or_else(|| err(hline, "expected `des (<initial>, <#transitions>, <#states>)`"))?;
    let fields: Vec<&str> = inner.split(',').collect();
    if fields.len() != 3 {
        return Err(err(hline, "header needs three fields"));
    }
    let initial = parse_id(fields[0], hline)?;
    let num_transitions = parse_id(fields[1], hline)?;
    let num_states = parse_id(fields[2], hline)?;

    let mut transitions = Vec::with_capacity(num_transitions);
    let mut finals = None;
    let mut frontier = None;
    for (n, line) in lines {
        if let Some(rest) = line.strip_prefix("final:") {
            finals = Some(parse_ids(rest, n)?);
        } else if let Some(rest) = line.strip_prefix("frontier:") {
            frontier = Some(parse_ids(rest, n)?);
        } else {
            if finals.is_some() || frontier.is_some() {
                return Err(err(n, "transition after the final/frontier lines"));
            }
            transitions.push(parse_transition(line, n)?);
        }
    }
    if transitions.len() != num_transitions {
        return Err(err(hline, &format!("header announces {num_transitions} transitions, found {}", transitions.len())));
    }
    FiniteLts::new(num_states, initial, transitions, finals.unwrap_or_default(), frontier.unwrap_or_default())
}

fn parse_transition(line: &str, n: usize) -> Result<Transition, LtsError> {
    let bad = || LtsError::Parse { line: n, msg: format!("malformed transition `{line}`") };
    let inner = line.strip_prefix('(').and_then(|l| l.strip_suffix(')')).ok_or_else(bad)?;
    let open = inner.find('"').ok_or_else(bad)?;
    let close = inner.rfind('"').filter(|&c| c > open).ok_or_else(bad)?;
    let src = inner[..open].trim().strip_suffix(',').ok_or_else(bad)?;
    let dst = inner[close + 1..].trim().strip_prefix(',').ok_or_else(bad)?;
    let action = Action::parse(&inner[open + 1..close]).map_err(|e| LtsError::Parse { line: n, msg: e.to_string() })?;
    Ok(Transition { src: parse_id(src, n)?, action, dst: parse_id(dst, n)? })
}
