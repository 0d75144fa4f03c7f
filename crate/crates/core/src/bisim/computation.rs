use std::collections::HashSet;

use super::BisimError;
use crate::lts::FiniteLts;

/// A maximal τ-path on which every state but the last has exactly one
/// outgoing transition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterministicComputation {
    /// The states along the path, from the start state to the endpoint.
    pub path: Vec<usize>,
}

impl DeterministicComputation {
    /// Number of τ-steps.
    pub fn len(&self) -> usize {
        self.path.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn endpoint(&self) -> usize {
        *self.path.last().expect("path starts at a state")
    }

    /// All states on the path except the endpoint.
    pub fn intermediate(&self) -> &[usize] {
        &self.path[..self.path.len() - 1]
    }
}

fn single_tau(lts: &FiniteLts, s: usize) -> Option<usize> {
    match lts.out(s) {
        [t] if t.action.is_tau() => Some(t.dst),
        _ => None,
    }
}

/// The maximal fully deterministic internal computation from `s`, or
/// `None` when `s` does not have a single outgoing τ-transition.
pub fn fully_deterministic_computation(lts: &FiniteLts, s: usize) -> Result<Option<DeterministicComputation>, BisimError> {
    let Some(mut next) = single_tau(lts, s) else { return Ok(None) };
    let mut path = vec![s];
    let mut seen = HashSet::from([s]);
    loop {
        if !seen.insert(next) {
            return Err(BisimError::DivergentDeterministic(s));
        }
        path.push(next);
        match single_tau(lts, next) {
            Some(t) => next = t,
            None => return Ok(Some(DeterministicComputation { path })),
        }
    }
}
