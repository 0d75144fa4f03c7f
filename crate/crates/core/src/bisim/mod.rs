//! Branching bisimilarity and divergence-preserving branching bisimilarity
//! on finite transition systems.
//!
//! Systems without frontier states are decided exactly by partition
//! refinement on their disjoint union. Explored fragments with frontier
//! states are compared up to their horizon: a pair with a frontier
//! component is always considered related, because nothing is known about
//! the behaviour beyond it. In [`FrontierMode::Pessimistic`] every other
//! obligation must be met by concrete states, so a positive verdict means
//! the fragments agree on everything they record. In
//! [`FrontierMode::Optimistic`] a state that can silently reach the
//! frontier is moreover assumed to be able to answer any challenge, so a
//! negative verdict means the systems genuinely differ.

mod brute;
mod clauses;
mod computation;
mod refine;

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

pub use brute::{brute_force_bisim, brute_force_bisim_horizon, BRUTE_FORCE_LIMIT};
pub use computation::{fully_deterministic_computation, DeterministicComputation};

use crate::lts::FiniteLts;
use clauses::{Clauses, Horizon};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FrontierMode {
    Pessimistic,
    Optimistic,
}

impl FrontierMode {
    fn horizon(self) -> Horizon {
        match self {
            FrontierMode::Pessimistic => Horizon::Pessimistic,
            FrontierMode::Optimistic => Horizon::Optimistic,
        }
    }
}

/// Pairs of a state of the left system and a state of the right system.
pub type Relation = BTreeSet<(usize, usize)>;

/// A pair together with the first clause (1..=6) it violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub pair: (usize, usize),
    pub clause: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BisimVerdict {
    Related { witness: Relation },
    Unrelated { counterexample: Violation },
}

impl BisimVerdict {
    pub fn is_related(&self) -> bool {
        matches!(self, BisimVerdict::Related { .. })
    }

    pub fn witness(&self) -> Option<&Relation> {
        match self {
            BisimVerdict::Related { witness } => Some(witness),
            BisimVerdict::Unrelated { .. } => None,
        }
    }

    pub fn counterexample(&self) -> Option<Violation> {
        match self {
            BisimVerdict::Related { .. } => None,
            BisimVerdict::Unrelated { counterexample } => Some(*counterexample),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BisimError {
    #[error("brute-force oracle limited to {limit} states in total, got {got}")]
    TooLarge { limit: usize, got: usize },
    #[error("divergent deterministic computation from state {0}")]
    DivergentDeterministic(usize),
}

/// Decides branching bisimilarity of the initial states.
pub fn check_branching(l1: &FiniteLts, l2: &FiniteLts, mode: FrontierMode) -> BisimVerdict {
    check(l1, l2, mode, false)
}

/// Decides divergence-preserving branching bisimilarity of the initial
/// states.
pub fn check_dp_branching(l1: &FiniteLts, l2: &FiniteLts, mode: FrontierMode) -> BisimVerdict {
    check(l1, l2, mode, true)
}

fn check(l1: &FiniteLts, l2: &FiniteLts, mode: FrontierMode, divergence: bool) -> BisimVerdict {
    if l1.frontier().is_empty() && l2.frontier().is_empty() {
        check_complete(l1, l2, divergence)
    } else {
        check_horizon(l1, l2, mode, divergence)
    }
}

fn check_complete(l1: &FiniteLts, l2: &FiniteLts, divergence: bool) -> BisimVerdict {
    let n1 = l1.num_states();
    let g = refine::Graph::union(&[l1, l2]);
    let block = refine::refine(&g, divergence);
    let mut members: HashMap<usize, Vec<usize>> = HashMap::new();
    for s2 in 0..l2.num_states() {
        members.entry(block[n1 + s2]).or_default().push(s2);
    }
    let related = |s1: usize, s2: usize| block[s1] == block[n1 + s2];
    if related(l1.initial(), l2.initial()) {
        let witness = (0..n1)
            .flat_map(|s1| members.get(&block[s1]).into_iter().flatten().map(move |&s2| (s1, s2)))
            .collect();
        BisimVerdict::Related { witness }
    } else {
        let clauses = Clauses::new(l1, l2, Horizon::Strict, divergence);
        let pairs: Vec<(usize, usize)> = (0..n1)
            .flat_map(|s1| members.get(&block[s1]).into_iter().flatten().map(move |&s2| (s1, s2)))
            .collect();
        BisimVerdict::Unrelated { counterexample: explain(&clauses, l1, l2, &related, pairs) }
    }
}

/// Finds a clause violation once the initial pair is added to the largest
/// bisimulation `related`. The initial pair is examined first.
fn explain(
    clauses: &Clauses,
    l1: &FiniteLts,
    l2: &FiniteLts,
    related: &dyn Fn(usize, usize) -> bool,
    pairs: Vec<(usize, usize)>,
) -> Violation {
    let init = (l1.initial(), l2.initial());
    let extended = |s1: usize, s2: usize| (s1, s2) == init || related(s1, s2);
    std::iter::once(init)
        .chain(pairs)
        .find_map(|(s1, s2)| clauses.violated(s1, s2, &extended).map(|clause| Violation { pair: (s1, s2), clause }))
        .unwrap_or(Violation { pair: init, clause: 0 })
}

/// Greatest fixpoint over the pairs reachable from the initial pair.
/// Queried pairs enter the relation optimistically and are removed when they
/// violate a clause; sweeps repeat until nothing changes.
fn check_horizon(l1: &FiniteLts, l2: &FiniteLts, mode: FrontierMode, divergence: bool) -> BisimVerdict {
    let clauses = Clauses::new(l1, l2, mode.horizon(), divergence);
    let status: RefCell<HashMap<(usize, usize), bool>> = RefCell::new(HashMap::new());
    let order: RefCell<Vec<(usize, usize)>> = RefCell::new(Vec::new());
    let rel = |x: usize, y: usize| {
        if let Some(&alive) = status.borrow().get(&(x, y)) {
            return alive;
        }
        status.borrow_mut().insert((x, y), true);
        order.borrow_mut().push((x, y));
        true
    };
    let init = (l1.initial(), l2.initial());
    rel(init.0, init.1);
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < order.borrow().len() {
            let (x, y) = order.borrow()[i];
            i += 1;
            let alive = status.borrow()[&(x, y)];
            if alive && clauses.violated(x, y, &rel).is_some() {
                status.borrow_mut().insert((x, y), false);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let status = status.into_inner();
    let alive = |x: usize, y: usize| clauses.exempt(x, y) || status.get(&(x, y)).copied().unwrap_or(false);
    if alive(init.0, init.1) {
        let mut witness: Relation =
            status.iter().filter(|&(&(x, y), &ok)| ok && !clauses.exempt(x, y)).map(|(&pair, _)| pair).collect();
        witness.insert(init);
        BisimVerdict::Related { witness }
    } else {
        let pairs: Vec<(usize, usize)> = order.into_inner().into_iter().filter(|&(x, y)| alive(x, y)).collect();
        BisimVerdict::Unrelated { counterexample: explain(&clauses, l1, l2, &alive, pairs) }
    }
}

/// Checks every pair of `r` against every clause, frontier marks ignored.
pub fn verify_relation(r: &Relation, l1: &FiniteLts, l2: &FiniteLts, divergence: bool) -> Result<(), Violation> {
    verify_with(r, Clauses::new(l1, l2, Horizon::Strict, divergence))
}

/// Checks `r` up to the horizon of explored fragments: pairs with a
/// frontier component count as related, and the clause obligations are
/// read as in `mode`.
pub fn verify_relation_horizon(
    r: &Relation,
    l1: &FiniteLts,
    l2: &FiniteLts,
    divergence: bool,
    mode: FrontierMode,
) -> Result<(), Violation> {
    verify_with(r, Clauses::new(l1, l2, mode.horizon(), divergence))
}

fn verify_with(r: &Relation, clauses: Clauses) -> Result<(), Violation> {
    let rel = |x: usize, y: usize| r.contains(&(x, y));
    for &(s1, s2) in r {
        if let Some(clause) = clauses.violated(s1, s2, &rel) {
            return Err(Violation { pair: (s1, s2), clause });
        }
    }
    Ok(())
}
