use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use super::{FiniteLts, LtsGenerator, Transition};

/// An explored fragment together with the generator state behind every id.
pub struct Explored<S> {
    pub lts: FiniteLts,
    pub states: Vec<S>,
}

struct Builder<'g, G: LtsGenerator> {
    gen: &'g G,
    ids: HashMap<G::State, usize>,
    states: Vec<G::State>,
    transitions: Vec<Transition>,
    finals: BTreeSet<usize>,
    expanded: Vec<bool>,
    state_bound: usize,
    exhausted: bool,
}

impl<'g, G: LtsGenerator> Builder<'g, G> {
    fn new(gen: &'g G, state_bound: usize) -> Self {
        let init = gen.initial();
        let mut b = Builder {
            gen,
            ids: HashMap::new(),
            states: Vec::new(),
            transitions: Vec::new(),
            finals: BTreeSet::new(),
            expanded: Vec::new(),
            state_bound: state_bound.max(1),
            exhausted: false,
        };
        b.intern(init);
        b
    }

    fn intern(&mut self, s: G::State) -> (usize, bool) {
        if let Some(&id) = self.ids.get(&s) {
            return (id, false);
        }
        let id = self.states.len();
        if self.gen.fin(&s) {
            self.finals.insert(id);
        }
        self.ids.insert(s.clone(), id);
        self.states.push(s);
        self.expanded.push(false);
        (id, true)
    }

    /// Expands `id` unless the state is truncated or its new successors
    /// would exceed the state budget; once the budget is hit no further
    /// state is expanded. Returns the successor ids with their actions.
    fn expand(&mut self, id: usize) -> Option<Vec<(bool, usize, bool)>> {
        if self.exhausted || self.gen.truncated(&self.states[id]) {
            return None;
        }
        let out = self.gen.out(&self.states[id]);
        let fresh: HashSet<&G::State> =
            out.iter().map(|(_, t)| t).filter(|t| !self.ids.contains_key(*t)).collect();
        if self.states.len() + fresh.len() > self.state_bound {
            self.exhausted = true;
            return None;
        }
        self.expanded[id] = true;
        let mut succ = Vec::with_capacity(out.len());
        for (action, target) in out {
            let (dst, new) = self.intern(target);
            succ.push((action.is_tau(), dst, new));
            self.transitions.push(Transition { src: id, action, dst });
        }
        Some(succ)
    }

    fn finish(self) -> Explored<G::State> {
        let frontier = (0..self.states.len()).filter(|&s| !self.expanded[s]).collect();
        let lts = FiniteLts::new(self.states.len(), 0, self.transitions, self.finals, frontier)
            .expect("explored ids are dense");
        Explored { lts, states: self.states }
    }
}

/// Breadth-first exploration. States at distance below `depth_bound` are
/// expanded while the number of states stays within `state_bound`; every
/// state that was reached but not expanded is marked as frontier.
pub fn explore<G: LtsGenerator>(gen: &G, depth_bound: usize, state_bound: usize) -> FiniteLts {
    explore_states(gen, depth_bound, state_bound).lts
}

pub fn explore_states<G: LtsGenerator>(gen: &G, depth_bound: usize, state_bound: usize) -> Explored<G::State> {
    let mut b = Builder::new(gen, state_bound);
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    while let Some((id, depth)) = queue.pop_front() {
        if depth >= depth_bound {
            continue;
        }
        let Some(succ) = b.expand(id) else { continue };
        for (_, dst, new) in succ {
            if new {
                queue.push_back((dst, depth + 1));
            }
        }
    }
    b.finish()
}

/// Exploration bounded by the number of visible actions: τ-steps cost
/// nothing, so internal computations started within the horizon run to
/// completion (subject to `state_bound`). States first reached after
/// `obs_depth` visible actions are frontier.
pub fn explore_observable<G: LtsGenerator>(gen: &G, obs_depth: usize, state_bound: usize) -> FiniteLts {
    explore_states_observable(gen, obs_depth, state_bound).lts
}

pub fn explore_states_observable<G: LtsGenerator>(
    gen: &G,
    obs_depth: usize,
    state_bound: usize,
) -> Explored<G::State> {
    let mut b = Builder::new(gen, state_bound);
    let mut dist = vec![0usize];
    let mut done = vec![false];
    let mut deque = VecDeque::from([0usize]);
    while let Some(id) = deque.pop_front() {
        if done[id] {
            continue;
        }
        done[id] = true;
        let d = dist[id];
        if d >= obs_depth {
            continue;
        }
        let Some(succ) = b.expand(id) else { continue };
        for (tau, dst, _) in succ {
            if dst >= dist.len() {
                dist.resize(dst + 1, usize::MAX);
                done.resize(dst + 1, false);
            }
            let nd = if tau { d } else { d + 1 };
            if nd < dist[dst] {
                dist[dst] = nd;
                if tau {
                    deque.push_front(dst);
                } else {
                    deque.push_back(dst);
                }
            }
        }
    }
    b.finish()
}
