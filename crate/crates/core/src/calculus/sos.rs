use std::collections::HashMap;
use std::sync::Arc;

use super::{CalcError, Equations, ProcessExpr, RecSpec};
use crate::lts::{Action, LtsGenerator, Sym};

/// Whether `p` can terminate. A name whose evaluation revisits itself
/// contributes `false` on that path.
pub fn terminates(spec: &dyn Equations, p: &ProcessExpr) -> bool {
    fn go(spec: &dyn Equations, p: &ProcessExpr, visiting: &mut Vec<Sym>) -> bool {
        match p {
            ProcessExpr::Skip => true,
            ProcessExpr::Deadlock | ProcessExpr::Prefix(..) => false,
            ProcessExpr::Choice(l, r) => go(spec, l, visiting) || go(spec, r, visiting),
            ProcessExpr::Par(_, l, r) => go(spec, l, visiting) && go(spec, r, visiting),
            ProcessExpr::Name(n) => {
                if visiting.contains(n) {
                    return false;
                }
                let Some(body) = spec.body(n) else { return false };
                visiting.push(n.clone());
                let result = go(spec, &body, visiting);
                visiting.pop();
                result
            }
        }
    }
    go(spec, p, &mut Vec::new())
}

fn derive(
    spec: &dyn Equations,
    p: &ProcessExpr,
    visiting: &mut Vec<Sym>,
    out: &mut Vec<(Action, ProcessExpr)>,
) -> Result<(), CalcError> {
    match p {
        ProcessExpr::Deadlock | ProcessExpr::Skip => {}
        ProcessExpr::Prefix(a, body) => out.push((a.clone(), (**body).clone())),
        ProcessExpr::Choice(l, r) => {
            derive(spec, l, visiting, out)?;
            derive(spec, r, visiting, out)?;
        }
        ProcessExpr::Name(n) => {
            if visiting.contains(n) {
                return Err(CalcError::Unguarded(n.to_string()));
            }
            let body = spec.body(n).ok_or_else(|| CalcError::UndefinedName(n.to_string()))?;
            visiting.push(n.clone());
            derive(spec, &body, visiting, out)?;
            visiting.pop();
        }
        ProcessExpr::Par(chans, l, r) => {
            let mut lo = Vec::new();
            let mut ro = Vec::new();
            derive(spec, l, visiting, &mut lo)?;
            derive(spec, r, visiting, &mut ro)?;
            let par = |a: ProcessExpr, b: ProcessExpr| ProcessExpr::Par(chans.clone(), Arc::new(a), Arc::new(b));
            for (a, l2) in &lo {
                if !a.on_channels(chans) {
                    out.push((a.clone(), par(l2.clone(), (**r).clone())));
                }
            }
            for (a, r2) in &ro {
                if !a.on_channels(chans) {
                    out.push((a.clone(), par((**l).clone(), r2.clone())));
                }
            }
            for (a, l2) in lo.iter().filter(|(a, _)| a.on_channels(chans)) {
                for (_, r2) in ro.iter().filter(|(b, _)| a.complements(b)) {
                    out.push((Action::Tau, par(l2.clone(), r2.clone())));
                }
            }
        }
    }
    Ok(())
}

/// All transitions of `p` derivable by the operational rules, sorted by
/// action and then target, without duplicates. Unfolding a name again
/// while deriving its own transitions is reported as unguarded recursion.
pub fn sos_out(spec: &dyn Equations, p: &ProcessExpr) -> Result<Vec<(Action, ProcessExpr)>, CalcError> {
    let mut out = Vec::new();
    derive(spec, p, &mut Vec::new(), &mut out)?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Rejects specifications in which some name can be reached from its own
/// right-hand side without passing an action prefix.
pub fn check_guarded(spec: &RecSpec) -> Result<(), CalcError> {
    fn unguarded(p: &ProcessExpr, acc: &mut Vec<Sym>) {
        match p {
            ProcessExpr::Deadlock | ProcessExpr::Skip | ProcessExpr::Prefix(..) => {}
            ProcessExpr::Choice(l, r) | ProcessExpr::Par(_, l, r) => {
                unguarded(l, acc);
                unguarded(r, acc);
            }
            ProcessExpr::Name(n) => acc.push(n.clone()),
        }
    }
    let edges: HashMap<Sym, Vec<Sym>> = spec
        .equations()
        .map(|(n, body)| {
            let mut acc = Vec::new();
            unguarded(body, &mut acc);
            (n.clone(), acc)
        })
        .collect();
    // 1 = on the current path, 2 = finished.
    let mut colour: HashMap<Sym, u8> = HashMap::new();
    for (start, _) in spec.equations() {
        if colour.contains_key(start) {
            continue;
        }
        colour.insert(start.clone(), 1);
        let mut stack: Vec<(Sym, usize)> = vec![(start.clone(), 0)];
        while let Some((n, i)) = stack.last().cloned() {
            let succ = edges.get(&n).map(Vec::as_slice).unwrap_or(&[]);
            if i < succ.len() {
                stack.last_mut().expect("non-empty").1 += 1;
                let m = &succ[i];
                match colour.get(m) {
                    Some(1) => return Err(CalcError::Unguarded(m.to_string())),
                    Some(_) => {}
                    None => {
                        colour.insert(m.clone(), 1);
                        stack.push((m.clone(), 0));
                    }
                }
            } else {
                colour.insert(n, 2);
                stack.pop();
            }
        }
    }
    Ok(())
}

/// The transition system of a root expression under a set of equations.
#[derive(Clone, Debug)]
pub struct SpecLts<E = RecSpec> {
    spec: Arc<E>,
    root: ProcessExpr,
}

impl<E: Equations> SpecLts<E> {
    /// A transition system over equations that are produced on demand.
    /// Unguarded recursion in them makes exploration panic.
    pub fn lazy(spec: E, root: ProcessExpr) -> Self {
        SpecLts { spec: Arc::new(spec), root }
    }

    pub fn spec(&self) -> &E {
        &self.spec
    }

    pub fn root(&self) -> &ProcessExpr {
        &self.root
    }
}

/// Builds the transition system of `root`, after checking that the
/// specification interprets it and is guarded.
pub fn lts_of(spec: RecSpec, root: ProcessExpr) -> Result<SpecLts, CalcError> {
    spec.check_interpretable(&root)?;
    check_guarded(&spec)?;
    Ok(SpecLts { spec: Arc::new(spec), root })
}

impl<E: Equations> LtsGenerator for SpecLts<E> {
    type State = ProcessExpr;

    fn initial(&self) -> ProcessExpr {
        self.root.clone()
    }

    fn out(&self, s: &ProcessExpr) -> Vec<(Action, ProcessExpr)> {
        sos_out(&*self.spec, s).unwrap_or_else(|e| panic!("{e}"))
    }

    fn fin(&self, s: &ProcessExpr) -> bool {
        terminates(&*self.spec, s)
    }
}
