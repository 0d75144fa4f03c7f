//! The `.tcp` text format.
//!
//! ```text
//! // comment
//! X = a.X + <c!d.1 || c?d.1>_{c}
//! root: X
//! ```
//!
//! Prefix binds tighter than `+`, and `+` associates to the right. Names
//! are identifiers optionally followed by a bracketed argument list such
//! as `C[s0,_]`.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::{CalcError, ProcessExpr, RecSpec};
use crate::lts::{is_identifier, Action, Sym};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Dot,
    Plus,
    LParen,
    RParen,
    Open,
    Bar,
    Close,
    RBrace,
    Comma,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
}

fn is_special(c: char) -> bool {
    c.is_whitespace() || ".+()<>|{},=".contains(c)
}

fn lex(text: &str, line: usize) -> Result<Lexer, CalcError> {
    let err = |col: usize, msg: &str| CalcError::Syntax { line, col, msg: msg.to_string() };
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '.' => Some(Tok::Dot),
            '+' => Some(Tok::Plus),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '<' => Some(Tok::Open),
            '}' => Some(Tok::RBrace),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = simple {
            toks.push((t, col));
            i += 1;
        } else if c == '|' {
            if chars.get(i + 1) != Some(&'|') {
                return Err(err(col, "expected `||`"));
            }
            toks.push((Tok::Bar, col));
            i += 2;
        } else if c == '>' {
            if chars.get(i + 1) != Some(&'_') || chars.get(i + 2) != Some(&'{') {
                return Err(err(col, "expected `>_{`"));
            }
            toks.push((Tok::Close, col));
            i += 3;
        } else if is_special(c) {
            return Err(err(col, &format!("unexpected `{c}`")));
        } else {
            let start = i;
            let mut depth = 0usize;
            while i < chars.len() && (depth > 0 || !is_special(chars[i])) {
                match chars[i] {
                    '[' => depth += 1,
                    ']' if depth == 0 => return Err(err(i + 1, "unbalanced `]`")),
                    ']' => depth -= 1,
                    _ => {}
                }
                if depth > 0 && chars[i].is_whitespace() {
                    return Err(err(i + 1, "whitespace inside brackets"));
                }
                i += 1;
            }
            if depth > 0 {
                return Err(err(start + 1, "unclosed `[`"));
            }
            toks.push((Tok::Word(chars[start..i].iter().collect()), col));
        }
    }
    Ok(Lexer { toks, pos: 0, line })
}

/// Whether `s` can be written as a datum or name argument: non-empty and
/// free of whitespace, brackets and the operator characters.
pub fn is_word(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| is_special(c) || c == '[' || c == ']')
}

/// `Ident` or `Ident[arg,...]` with non-empty arguments.
fn is_name(word: &str) -> bool {
    match word.find('[') {
        None => is_identifier(word),
        Some(i) => {
            let (head, rest) = word.split_at(i);
            is_identifier(head)
                && rest.ends_with(']')
                && rest[1..rest.len() - 1].split(',').all(|a| !a.is_empty() && !a.contains(['[', ']']))
        }
    }
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or_else(|| self.toks.last().map_or(1, |(_, c)| c + 1), |(_, c)| *c)
    }

    fn err(&self, msg: &str) -> CalcError {
        CalcError::Syntax { line: self.line, col: self.col(), msg: msg.to_string() }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), CalcError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<ProcessExpr, CalcError> {
        let left = self.term()?;
        if self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            let right = self.expr()?;
            return Ok(ProcessExpr::choice(left, right));
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<ProcessExpr, CalcError> {
        match self.peek().cloned() {
            Some(Tok::Word(w)) => {
                let at = self.col();
                self.pos += 1;
                if self.peek() == Some(&Tok::Dot) {
                    self.pos += 1;
                    let action = Action::parse(&w).map_err(|_| CalcError::Syntax {
                        line: self.line,
                        col: at,
                        msg: format!("invalid action `{w}`"),
                    })?;
                    return Ok(ProcessExpr::prefix(action, self.term()?));
                }
                match w.as_str() {
                    "0" => Ok(ProcessExpr::Deadlock),
                    "1" => Ok(ProcessExpr::Skip),
                    _ if is_name(&w) => Ok(ProcessExpr::name(&w)),
                    _ => Err(CalcError::Syntax { line: self.line, col: at, msg: format!("invalid name `{w}`") }),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let p = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(p)
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let left = self.expr()?;
                self.expect(Tok::Bar, "`||`")?;
                let right = self.expr()?;
                self.expect(Tok::Close, "`>_{`")?;
                let mut channels = BTreeSet::new();
                if self.peek() != Some(&Tok::RBrace) {
                    loop {
                        match self.peek().cloned() {
                            Some(Tok::Word(c)) if is_identifier(&c) => {
                                self.pos += 1;
                                channels.insert(Sym::from(c.as_str()));
                            }
                            _ => return Err(self.err("expected a channel name")),
                        }
                        if self.peek() == Some(&Tok::Comma) {
                            self.pos += 1;
                        } else {
                            break;
                        }
                    }
                }
                self.expect(Tok::RBrace, "`}`")?;
                Ok(ProcessExpr::Par(Arc::new(channels), Arc::new(left), Arc::new(right)))
            }
            _ => Err(self.err("expected an expression")),
        }
    }

    fn finish(&self) -> Result<(), CalcError> {
        if self.pos < self.toks.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(())
    }
}

/// Parses a single expression.
pub fn parse_expr(text: &str) -> Result<ProcessExpr, CalcError> {
    let mut lx = lex(text, 1)?;
    let p = lx.expr()?;
    lx.finish()?;
    Ok(p)
}

/// Parses a specification with its `root:` line and checks that every name
/// used has a defining equation.
pub fn parse(text: &str) -> Result<(RecSpec, ProcessExpr), CalcError> {
    let mut spec = RecSpec::new();
    let mut root = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split("//").next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let err = |col: usize, msg: &str| CalcError::Syntax { line, col, msg: msg.to_string() };
        if let Some(rest) = content.trim_start().strip_prefix("root:") {
            if root.is_some() {
                return Err(err(1, "duplicate `root:` line"));
            }
            let offset = content.len() - rest.len();
            let mut lx = lex(rest, line).map_err(|e| shift(e, offset))?;
            let p = lx.expr().map_err(|e| shift(e, offset))?;
            lx.finish().map_err(|e| shift(e, offset))?;
            root = Some(p);
            continue;
        }
        let Some(eq) = content.find('=') else { return Err(err(1, "expected `Name = expr` or `root: expr`")) };
        let name = content[..eq].trim();
        if !is_name(name) {
            return Err(err(1, &format!("invalid name `{name}`")));
        }
        let rest = &content[eq + 1..];
        let offset = eq + 1;
        let mut lx = lex(rest, line).map_err(|e| shift(e, offset))?;
        let body = lx.expr().map_err(|e| shift(e, offset))?;
        lx.finish().map_err(|e| shift(e, offset))?;
        spec.define(name, body)?;
    }
    let root = root.ok_or(CalcError::Syntax { line: text.lines().count().max(1), col: 1, msg: "missing `root:` line".into() })?;
    spec.check_interpretable(&root)?;
    Ok((spec, root))
}

fn shift(e: CalcError, offset: usize) -> CalcError {
    match e {
        CalcError::Syntax { line, col, msg } => CalcError::Syntax { line, col: col + offset, msg },
        other => other,
    }
}

fn write_expr(p: &ProcessExpr, out: &mut String) {
    match p {
        ProcessExpr::Choice(l, r) => {
            write_term(l, out);
            out.push_str(" + ");
            write_expr(r, out);
        }
        _ => write_term(p, out),
    }
}

fn write_term(p: &ProcessExpr, out: &mut String) {
    match p {
        ProcessExpr::Deadlock => out.push('0'),
        ProcessExpr::Skip => out.push('1'),
        ProcessExpr::Name(n) => out.push_str(n),
        ProcessExpr::Prefix(a, body) => {
            out.push_str(&a.to_string());
            out.push('.');
            write_term(body, out);
        }
        ProcessExpr::Choice(..) => {
            out.push('(');
            write_expr(p, out);
            out.push(')');
        }
        ProcessExpr::Par(chans, l, r) => {
            out.push('<');
            write_expr(l, out);
            out.push_str(" || ");
            write_expr(r, out);
            out.push_str(">_{");
            out.push_str(&chans.iter().map(|c| &**c).collect::<Vec<_>>().join(","));
            out.push('}');
        }
    }
}

pub(crate) fn print_expr(p: &ProcessExpr) -> String {
    let mut out = String::new();
    write_expr(p, &mut out);
    out
}

/// Prints a specification and its root in the format read by [`parse`].
pub fn print(spec: &RecSpec, root: &ProcessExpr) -> String {
    let mut out = String::new();
    for (name, body) in spec.equations() {
        out.push_str(name);
        out.push_str(" = ");
        write_expr(body, &mut out);
        out.push('\n');
    }
    out.push_str("root: ");
    write_expr(root, &mut out);
    out.push('\n');
    out
}
