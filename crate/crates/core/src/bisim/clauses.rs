use std::cell::OnceCell;
use std::collections::{HashMap, HashSet};

use crate::lts::FiniteLts;

/// How frontier states are treated when evaluating clauses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Horizon {
    /// Frontier marks are ignored.
    Strict,
    /// Pairs with a frontier component are exempt; witnesses must be
    /// concrete states.
    Pessimistic,
    /// As pessimistic, and a state that can silently reach the frontier
    /// may still do anything, so the clauses it would have to answer hold.
    Optimistic,
}

/// One transition system with lazily computed τ-reachability.
pub(crate) struct Side<'a> {
    pub lts: &'a FiniteLts,
    plus: Vec<OnceCell<Vec<usize>>>,
    star_frontier: Vec<OnceCell<bool>>,
}

impl<'a> Side<'a> {
    pub fn new(lts: &'a FiniteLts) -> Self {
        let n = lts.num_states();
        Side { lts, plus: (0..n).map(|_| OnceCell::new()).collect(), star_frontier: (0..n).map(|_| OnceCell::new()).collect() }
    }

    /// States reachable by one or more τ-steps, sorted.
    pub fn plus(&self, s: usize) -> &[usize] {
        self.plus[s].get_or_init(|| {
            let mut seen = HashSet::new();
            let mut stack: Vec<usize> = Vec::new();
            for t in self.lts.out(s).iter().filter(|t| t.action.is_tau()) {
                if seen.insert(t.dst) {
                    stack.push(t.dst);
                }
            }
            while let Some(x) = stack.pop() {
                for t in self.lts.out(x).iter().filter(|t| t.action.is_tau()) {
                    if seen.insert(t.dst) {
                        stack.push(t.dst);
                    }
                }
            }
            let mut v: Vec<usize> = seen.into_iter().collect();
            v.sort_unstable();
            v
        })
    }

    /// `s` followed by the states of [`Side::plus`].
    pub fn star(&self, s: usize) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(s).chain(self.plus(s).iter().copied().filter(move |&t| t != s))
    }

    fn reaches_frontier(&self, s: usize) -> bool {
        *self.star_frontier[s].get_or_init(|| self.star(s).any(|t| self.lts.is_frontier(t)))
    }
}

/// Evaluates the six clauses of a (divergence-preserving) branching
/// bisimulation for single pairs, relative to a relation given as a
/// predicate.
pub(crate) struct Clauses<'a> {
    pub left: Side<'a>,
    pub right: Side<'a>,
    pub horizon: Horizon,
    pub divergence: bool,
}

struct Oriented<'s, 'a> {
    a: &'s Side<'a>,
    b: &'s Side<'a>,
    horizon: Horizon,
    rel: &'s dyn Fn(usize, usize) -> bool,
}

impl Oriented<'_, '_> {
    fn exempt(&self, x: usize, y: usize) -> bool {
        self.horizon != Horizon::Strict && (self.a.lts.is_frontier(x) || self.b.lts.is_frontier(y))
    }

    fn related(&self, x: usize, y: usize) -> bool {
        self.exempt(x, y) || (self.rel)(x, y)
    }

    fn concrete_b(&self, y: usize) -> bool {
        self.horizon == Horizon::Strict || !self.b.lts.is_frontier(y)
    }

    fn waived(&self, y: usize) -> bool {
        self.horizon == Horizon::Optimistic && self.b.reaches_frontier(y)
    }

    /// Every step of `x` is matched from `y` after inert τ-steps.
    fn transfer(&self, x: usize, y: usize) -> bool {
        if self.waived(y) {
            return true;
        }
        self.a.lts.out(x).iter().all(|t| {
            self.b.star(y).any(|mid| {
                self.concrete_b(mid)
                    && self.related(x, mid)
                    && ((t.action.is_tau() && self.related(t.dst, mid))
                        || self.b.lts.out(mid).iter().any(|u| u.action == t.action && self.related(t.dst, u.dst)))
            })
        })
    }

    /// Termination of `x` is matched from `y` after inert τ-steps.
    fn termination(&self, x: usize, y: usize) -> bool {
        if !self.a.lts.is_final(x) || self.waived(y) {
            return true;
        }
        self.b.star(y).any(|t| self.concrete_b(t) && self.b.lts.is_final(t) && self.related(x, t))
    }

    /// An infinite τ-path from `x` related to `y` throughout is matched by
    /// at least one τ-step of `y` to a state related to some state on the
    /// path. On finite systems the unmatched case is a path through
    /// related, unmatched states that reaches a cycle.
    fn divergence(&self, x: usize, y: usize) -> bool {
        if self.waived(y) {
            return true;
        }
        let bad = |t: usize| {
            self.related(t, y) && !self.b.plus(y).iter().any(|&u| self.related(t, u))
        };
        if !bad(x) {
            return true;
        }
        // Iterative DFS with colours over the τ-edges inside `bad`.
        let mut colour: HashMap<usize, u8> = HashMap::from([(x, 1)]);
        let mut stack: Vec<(usize, usize)> = vec![(x, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, i) = *top;
            top.1 += 1;
            let out = self.a.lts.out(v);
            if i < out.len() {
                let t = &out[i];
                if !t.action.is_tau() {
                    continue;
                }
                match colour.get(&t.dst) {
                    Some(1) => return false,
                    Some(_) => {}
                    None => {
                        if bad(t.dst) {
                            colour.insert(t.dst, 1);
                            stack.push((t.dst, 0));
                        } else {
                            colour.insert(t.dst, 2);
                        }
                    }
                }
            } else {
                colour.insert(v, 2);
                stack.pop();
            }
        }
        true
    }
}

impl<'a> Clauses<'a> {
    pub fn new(left: &'a FiniteLts, right: &'a FiniteLts, horizon: Horizon, divergence: bool) -> Self {
        Clauses { left: Side::new(left), right: Side::new(right), horizon, divergence }
    }

    pub fn exempt(&self, s1: usize, s2: usize) -> bool {
        self.horizon != Horizon::Strict && (self.left.lts.is_frontier(s1) || self.right.lts.is_frontier(s2))
    }

    /// First clause (1..=6) violated by `(s1, s2)`, relative to `rel`.
    pub fn violated(&self, s1: usize, s2: usize, rel: &dyn Fn(usize, usize) -> bool) -> Option<u8> {
        if self.exempt(s1, s2) {
            return None;
        }
        let flipped = |y: usize, x: usize| rel(x, y);
        let fwd = Oriented { a: &self.left, b: &self.right, horizon: self.horizon, rel };
        let bwd = Oriented { a: &self.right, b: &self.left, horizon: self.horizon, rel: &flipped };
        if !fwd.transfer(s1, s2) {
            Some(1)
        } else if !bwd.transfer(s2, s1) {
            Some(2)
        } else if !fwd.termination(s1, s2) {
            Some(3)
        } else if !bwd.termination(s2, s1) {
            Some(4)
        } else if self.divergence && !fwd.divergence(s1, s2) {
            Some(5)
        } else if self.divergence && !bwd.divergence(s2, s1) {
            Some(6)
        } else {
            None
        }
    }
}
