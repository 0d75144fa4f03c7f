//! Process expressions with deadlock, skip, action prefix, choice and
//! channel-restricted parallel composition, recursive specifications and
//! their structural operational semantics.

mod parse;
mod sos;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;
use thiserror::Error;

pub use parse::{is_word, parse, parse_expr, print};
pub use sos::{check_guarded, lts_of, sos_out, terminates, SpecLts};

use crate::lts::{Action, Sym};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CalcError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("undefined name `{0}`")]
    UndefinedName(String),
    #[error("duplicate defining equation for `{0}`")]
    DuplicateEquation(String),
    #[error("unguarded recursion at name {0}")]
    Unguarded(String),
}

/// A process expression. Children are shared, so cloning is cheap.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProcessExpr {
    Deadlock,
    Skip,
    Prefix(Action, Arc<ProcessExpr>),
    Choice(Arc<ProcessExpr>, Arc<ProcessExpr>),
    Par(Arc<BTreeSet<Sym>>, Arc<ProcessExpr>, Arc<ProcessExpr>),
    Name(Sym),
}

impl ProcessExpr {
    pub fn prefix(action: Action, body: ProcessExpr) -> Self {
        ProcessExpr::Prefix(action, Arc::new(body))
    }

    pub fn choice(left: ProcessExpr, right: ProcessExpr) -> Self {
        ProcessExpr::Choice(Arc::new(left), Arc::new(right))
    }

    pub fn par<'a>(channels: impl IntoIterator<Item = &'a str>, left: ProcessExpr, right: ProcessExpr) -> Self {
        let channels = channels.into_iter().map(Sym::from).collect();
        ProcessExpr::Par(Arc::new(channels), Arc::new(left), Arc::new(right))
    }

    pub fn name(name: &str) -> Self {
        ProcessExpr::Name(Sym::from(name))
    }

    /// Right-folded choice over `summands`; the empty sum is deadlock.
    pub fn sum(summands: impl IntoIterator<Item = ProcessExpr>) -> Self {
        let mut items: Vec<ProcessExpr> = summands.into_iter().collect();
        let Some(mut acc) = items.pop() else { return ProcessExpr::Deadlock };
        while let Some(p) = items.pop() {
            acc = ProcessExpr::choice(p, acc);
        }
        acc
    }

    /// Names occurring anywhere in the expression.
    pub fn names(&self) -> BTreeSet<Sym> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(p) = stack.pop() {
            match p {
                ProcessExpr::Deadlock | ProcessExpr::Skip => {}
                ProcessExpr::Prefix(_, q) => stack.push(q),
                ProcessExpr::Choice(l, r) | ProcessExpr::Par(_, l, r) => {
                    stack.push(l);
                    stack.push(r);
                }
                ProcessExpr::Name(n) => {
                    out.insert(n.clone());
                }
            }
        }
        out
    }
}

impl fmt::Display for ProcessExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&parse::print_expr(self))
    }
}

/// A source of defining equations.
pub trait Equations {
    /// Right-hand side of the defining equation for `name`.
    fn body(&self, name: &str) -> Option<ProcessExpr>;
}

/// Looks names up in the first system, then in the second.
#[derive(Clone, Debug)]
pub struct Union<A, B>(pub A, pub B);

impl<A: Equations, B: Equations> Equations for Union<A, B> {
    fn body(&self, name: &str) -> Option<ProcessExpr> {
        self.0.body(name).or_else(|| self.1.body(name))
    }
}

impl Equations for RecSpec {
    fn body(&self, name: &str) -> Option<ProcessExpr> {
        self.equations.get(name).cloned()
    }
}

/// Splits `Head[a,b,c]` into `Head` and its arguments; a bare `Head` has
/// none.
pub fn split_name(name: &str) -> (&str, Vec<&str>) {
    match name.find('[') {
        Some(i) if name.ends_with(']') => (&name[..i], name[i + 1..name.len() - 1].split(',').collect()),
        _ => (name, Vec::new()),
    }
}

/// `Head` or `Head[a,b,c]`.
pub fn make_name<S: AsRef<str>>(head: &str, args: &[S]) -> String {
    if args.is_empty() {
        return head.to_string();
    }
    let args: Vec<&str> = args.iter().map(AsRef::as_ref).collect();
    format!("{head}[{}]", args.join(","))
}

/// A set of defining equations, kept in insertion order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RecSpec {
    equations: IndexMap<Sym, ProcessExpr>,
}

impl RecSpec {
    pub fn new() -> Self {
        RecSpec::default()
    }

    /// Adds the defining equation `name = body`.
    pub fn define(&mut self, name: &str, body: ProcessExpr) -> Result<(), CalcError> {
        if self.equations.contains_key(name) {
            return Err(CalcError::DuplicateEquation(name.to_string()));
        }
        self.equations.insert(Sym::from(name), body);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&ProcessExpr> {
        self.equations.get(name)
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn equations(&self) -> impl Iterator<Item = (&Sym, &ProcessExpr)> {
        self.equations.iter()
    }

    /// Adds all equations of `other`.
    pub fn extend(&mut self, other: RecSpec) -> Result<(), CalcError> {
        for (name, body) in other.equations {
            self.define(&name, body)?;
        }
        Ok(())
    }

    /// Checks that every name used in a right-hand side or in `root` has a
    /// defining equation.
    pub fn check_interpretable(&self, root: &ProcessExpr) -> Result<(), CalcError> {
        let used = self.equations.values().chain(std::iter::once(root)).flat_map(|p| p.names());
        for name in used {
            if !self.equations.contains_key(&name) {
                return Err(CalcError::UndefinedName(name.to_string()));
            }
        }
        Ok(())
    }
}
