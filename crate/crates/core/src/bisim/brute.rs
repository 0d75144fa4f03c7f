//! Naive greatest-fixpoint oracle on explicit pair matrices.

use super::{BisimError, BisimVerdict, FrontierMode, Relation, Violation};
use crate::lts::FiniteLts;

/// Largest total number of states the oracle accepts.
pub const BRUTE_FORCE_LIMIT: usize = 40;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Strict,
    Pessimistic,
    Optimistic,
}

struct Sys<'a> {
    lts: &'a FiniteLts,
    /// `star[s][t]`: `t` reachable from `s` by zero or more τ-steps.
    star: Vec<Vec<bool>>,
    /// `plus[s][t]`: `t` reachable from `s` by one or more τ-steps.
    plus: Vec<Vec<bool>>,
    frontier: Vec<bool>,
}

impl<'a> Sys<'a> {
    fn new(lts: &'a FiniteLts, mode: Mode) -> Self {
        let n = lts.num_states();
        let mut plus = vec![vec![false; n]; n];
        for t in lts.transitions() {
            if t.action.is_tau() {
                plus[t.src][t.dst] = true;
            }
        }
        for k in 0..n {
            for i in 0..n {
                if plus[i][k] {
                    for j in 0..n {
                        if plus[k][j] {
                            plus[i][j] = true;
                        }
                    }
                }
            }
        }
        let mut star = plus.clone();
        for (i, row) in star.iter_mut().enumerate() {
            row[i] = true;
        }
        let frontier = (0..n).map(|s| mode != Mode::Strict && lts.is_frontier(s)).collect();
        Sys { lts, star, plus, frontier }
    }
}

struct Oracle<'a> {
    a: &'a Sys<'a>,
    b: &'a Sys<'a>,
    mode: Mode,
}

impl Oracle<'_> {
    /// `rel[x][y]` relates state `x` of `a` to state `y` of `b`.
    fn waived(&self, y: usize) -> bool {
        self.mode == Mode::Optimistic && (0..self.b.lts.num_states()).any(|z| self.b.star[y][z] && self.b.frontier[z])
    }

    fn clause_step(&self, rel: &[Vec<bool>], x: usize, y: usize) -> bool {
        if self.waived(y) {
            return true;
        }
        let nb = self.b.lts.num_states();
        for t in self.a.lts.out(x) {
            let mut matched = false;
            for mid in 0..nb {
                if !self.b.star[y][mid] || self.b.frontier[mid] || !rel[x][mid] {
                    continue;
                }
                if t.action.is_tau() && rel[t.dst][mid] {
                    matched = true;
                }
                for u in self.b.lts.out(mid) {
                    if u.action == t.action && rel[t.dst][u.dst] {
                        matched = true;
                    }
                }
            }
            if !matched {
                return false;
            }
        }
        true
    }

    fn clause_final(&self, rel: &[Vec<bool>], x: usize, y: usize) -> bool {
        if !self.a.lts.is_final(x) || self.waived(y) {
            return true;
        }
        (0..self.b.lts.num_states())
            .any(|z| self.b.star[y][z] && !self.b.frontier[z] && self.b.lts.is_final(z) && rel[x][z])
    }

    fn clause_divergence(&self, rel: &[Vec<bool>], x: usize, y: usize) -> bool {
        if self.waived(y) {
            return true;
        }
        let na = self.a.lts.num_states();
        let nb = self.b.lts.num_states();
        let mut stay: Vec<bool> = (0..na)
            .map(|t| rel[t][y] && !(0..nb).any(|u| self.b.plus[y][u] && rel[t][u]))
            .collect();
        loop {
            let mut changed = false;
            for t in 0..na {
                if stay[t] && !self.a.lts.out(t).iter().any(|e| e.action.is_tau() && stay[e.dst]) {
                    stay[t] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        !stay[x]
    }
}

fn transpose(m: &[Vec<bool>], rows: usize, cols: usize) -> Vec<Vec<bool>> {
    (0..cols).map(|j| (0..rows).map(|i| m[i][j]).collect()).collect()
}

fn run(l1: &FiniteLts, l2: &FiniteLts, divergence: bool, mode: Mode) -> Result<BisimVerdict, BisimError> {
    let (n1, n2) = (l1.num_states(), l2.num_states());
    if n1 + n2 > BRUTE_FORCE_LIMIT {
        return Err(BisimError::TooLarge { limit: BRUTE_FORCE_LIMIT, got: n1 + n2 });
    }
    let s1 = Sys::new(l1, mode);
    let s2 = Sys::new(l2, mode);
    let fwd = Oracle { a: &s1, b: &s2, mode };
    let bwd = Oracle { a: &s2, b: &s1, mode };
    let exempt = |x: usize, y: usize| s1.frontier[x] || s2.frontier[y];
    let mut rel = vec![vec![true; n2]; n1];
    let mut removed_by = vec![vec![0u8; n2]; n1];
    loop {
        let mut changed = false;
        for x in 0..n1 {
            for y in 0..n2 {
                if !rel[x][y] || exempt(x, y) {
                    continue;
                }
                let inv = transpose(&rel, n1, n2);
                let clause = if !fwd.clause_step(&rel, x, y) {
                    1
                } else if !bwd.clause_step(&inv, y, x) {
                    2
                } else if !fwd.clause_final(&rel, x, y) {
                    3
                } else if !bwd.clause_final(&inv, y, x) {
                    4
                } else if divergence && !fwd.clause_divergence(&rel, x, y) {
                    5
                } else if divergence && !bwd.clause_divergence(&inv, y, x) {
                    6
                } else {
                    0
                };
                if clause != 0 {
                    rel[x][y] = false;
                    removed_by[x][y] = clause;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let (i1, i2) = (l1.initial(), l2.initial());
    if rel[i1][i2] {
        let witness: Relation =
            (0..n1).flat_map(|x| (0..n2).map(move |y| (x, y))).filter(|&(x, y)| rel[x][y] && !exempt(x, y)).collect();
        let mut witness = witness;
        witness.insert((i1, i2));
        Ok(BisimVerdict::Related { witness })
    } else {
        Ok(BisimVerdict::Unrelated { counterexample: Violation { pair: (i1, i2), clause: removed_by[i1][i2] } })
    }
}

/// Independent oracle: starts from the full relation and deletes violating
/// pairs until none is left. Frontier marks are ignored.
pub fn brute_force_bisim(l1: &FiniteLts, l2: &FiniteLts, divergence: bool) -> Result<BisimVerdict, BisimError> {
    run(l1, l2, divergence, Mode::Strict)
}

/// The oracle with the horizon reading of frontier states.
pub fn brute_force_bisim_horizon(
    l1: &FiniteLts,
    l2: &FiniteLts,
    divergence: bool,
    mode: FrontierMode,
) -> Result<BisimVerdict, BisimError> {
    let mode = match mode {
        FrontierMode::Pessimistic => Mode::Pessimistic,
        FrontierMode::Optimistic => Mode::Optimistic,
    };
    run(l1, l2, divergence, mode)
}
