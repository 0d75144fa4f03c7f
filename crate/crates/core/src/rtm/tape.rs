use std::fmt;

use super::RtmError;
use crate::lts::{sym, Sym, BLANK};

/// A tape instance in canonical form: no blanks beyond the outermost
/// non-blank symbols except under the head.
///
/// `left` runs from the leftmost symbol towards the head; `right_rev` holds
/// the cells right of the head with the nearest cell last, so head moves
/// are stack operations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tape {
    left: Vec<Sym>,
    head: Sym,
    right_rev: Vec<Sym>,
}

/// A tape instance as an explicit cell list, not necessarily canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTape {
    pub cells: Vec<(Sym, bool)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    L,
    R,
}

fn is_blank(s: &str) -> bool {
    s == BLANK
}

impl Tape {
    /// The all-blank tape.
    pub fn blank() -> Self {
        Tape { left: Vec::new(), head: sym(BLANK), right_rev: Vec::new() }
    }

    pub fn new(left: &[&str], head: &str, right: &[&str]) -> Self {
        RawTape::from_parts(left, head, right).normalize().expect("exactly one marked cell")
    }

    pub fn head(&self) -> &Sym {
        &self.head
    }

    pub fn left(&self) -> &[Sym] {
        &self.left
    }

    /// Cells right of the head, in left-to-right order.
    pub fn right(&self) -> Vec<Sym> {
        self.right_rev.iter().rev().cloned().collect()
    }

    /// Writes `symbol` under the head and moves the head one cell.
    pub fn write_move(&self, symbol: &Sym, mv: Move) -> Tape {
        let mut t = self.clone();
        match mv {
            Move::L => {
                if !(t.right_rev.is_empty() && is_blank(symbol)) {
                    t.right_rev.push(symbol.clone());
                }
                t.head = t.left.pop().unwrap_or_else(|| sym(BLANK));
            }
            Move::R => {
                if !(t.left.is_empty() && is_blank(symbol)) {
                    t.left.push(symbol.clone());
                }
                t.head = t.right_rev.pop().unwrap_or_else(|| sym(BLANK));
            }
        }
        t
    }

    pub fn to_raw(&self) -> RawTape {
        let mut cells: Vec<(Sym, bool)> = self.left.iter().map(|s| (s.clone(), false)).collect();
        cells.push((self.head.clone(), true));
        cells.extend(self.right_rev.iter().rev().map(|s| (s.clone(), false)));
        RawTape { cells }
    }

    pub fn normalize(&self) -> Tape {
        self.to_raw().normalize().expect("canonical tapes have one mark")
    }

    /// The tape with `symbol` under the head instead.
    pub fn replace_head(&self, symbol: &str) -> Tape {
        Tape { left: self.left.clone(), head: sym(symbol), right_rev: self.right_rev.clone() }
    }

    /// All cells from left to right.
    pub fn cells(&self) -> impl Iterator<Item = &Sym> {
        self.left.iter().chain(std::iter::once(&self.head)).chain(self.right_rev.iter().rev())
    }

    /// All symbols occurring on the tape.
    pub fn symbols(&self) -> impl Iterator<Item = &Sym> {
        self.left.iter().chain(std::iter::once(&self.head)).chain(self.right_rev.iter())
    }
}

impl fmt::Display for Tape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.left {
            write!(f, "{s} ")?;
        }
        write!(f, "[{}]", self.head)?;
        for s in self.right_rev.iter().rev() {
            write!(f, " {s}")?;
        }
        Ok(())
    }
}

impl RawTape {
    pub fn from_parts(left: &[&str], head: &str, right: &[&str]) -> Self {
        let mut cells: Vec<(Sym, bool)> = left.iter().map(|s| (sym(s), false)).collect();
        cells.push((sym(head), true));
        cells.extend(right.iter().map(|s| (sym(s), false)));
        RawTape { cells }
    }

    /// Strips unmarked boundary blanks.
    pub fn normalize(&self) -> Result<Tape, RtmError> {
        let marks: Vec<usize> = self.cells.iter().enumerate().filter(|(_, c)| c.1).map(|(i, _)| i).collect();
        let [pos] = marks[..] else { return Err(RtmError::NotTapeInstance) };
        let start = self.cells[..pos].iter().position(|c| !is_blank(&c.0)).unwrap_or(pos);
        let end = self.cells[pos + 1..].iter().rposition(|c| !is_blank(&c.0)).map_or(pos + 1, |i| pos + 2 + i);
        Ok(Tape {
            left: self.cells[start..pos].iter().map(|c| c.0.clone()).collect(),
            head: self.cells[pos].0.clone(),
            right_rev: self.cells[pos + 1..end].iter().rev().map(|c| c.0.clone()).collect(),
        })
    }

    /// Parses `a b [c] d`: whitespace-separated symbols, the head in brackets.
    pub fn parse(text: &str) -> RawTape {
        let cells = text
            .split_whitespace()
            .map(|tok| match tok.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
                Some(inner) if !inner.is_empty() => (sym(inner), true),
                _ => (sym(tok), false),
            })
            .collect();
        RawTape { cells }
    }
}

/// Marks the rightmost symbol of `s`, or a blank if `s` is empty.
pub fn place_left(s: &[&str]) -> RawTape {
    match s.split_last() {
        Some((last, init)) => RawTape::from_parts(init, last, &[]),
        None => RawTape::from_parts(&[], BLANK, &[]),
    }
}

/// Marks the leftmost symbol of `s`, or a blank if `s` is empty.
pub fn place_right(s: &[&str]) -> RawTape {
    match s.split_first() {
        Some((first, rest)) => RawTape::from_parts(&[], first, rest),
        None => RawTape::from_parts(&[], BLANK, &[]),
    }
}
