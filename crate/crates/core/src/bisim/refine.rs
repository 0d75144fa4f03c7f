//! Signature-based partition refinement for branching bisimilarity, with
//! an optional divergence marker.

use std::collections::{BTreeSet, HashMap};

use crate::lts::{Action, FiniteLts, Transition};

const FINAL: u32 = u32::MAX;
const DIVERGENT: u32 = u32::MAX - 1;

/// A graph with interned actions (`0` is τ).
pub(crate) struct Graph {
    pub n: usize,
    /// Outgoing `(action, target)` per state.
    pub out: Vec<Vec<(u32, usize)>>,
    pub finals: Vec<bool>,
}

impl Graph {
    /// The disjoint union of the given systems; states of the `k`-th system
    /// are shifted by the sizes of the earlier ones.
    pub fn union(parts: &[&FiniteLts]) -> Graph {
        let mut actions: HashMap<Action, u32> = HashMap::from([(Action::Tau, 0)]);
        let n: usize = parts.iter().map(|l| l.num_states()).sum();
        let mut g = Graph { n, out: vec![Vec::new(); n], finals: vec![false; n] };
        let mut offset = 0;
        for lts in parts {
            for Transition { src, action, dst } in lts.transitions() {
                let next = actions.len() as u32;
                let a = *actions.entry(action.clone()).or_insert(next);
                g.out[offset + src].push((a, offset + dst));
            }
            for &f in lts.finals() {
                g.finals[offset + f] = true;
            }
            offset += lts.num_states();
        }
        g
    }
}

/// Strongly connected components of the inert τ-graph, in an order where
/// every component comes after all components it can reach.
fn inert_sccs(g: &Graph, block: &[usize]) -> (Vec<usize>, Vec<Vec<usize>>) {
    const UNSEEN: usize = usize::MAX;
    let inert = |v: usize| g.out[v].iter().filter(move |&&(a, w)| a == 0 && block[w] == block[v]).map(|&(_, w)| w);
    let mut index = vec![UNSEEN; g.n];
    let mut low = vec![0; g.n];
    let mut on_stack = vec![false; g.n];
    let mut comp = vec![UNSEEN; g.n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut stack = Vec::new();
    let mut counter = 0;
    for root in 0..g.n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, Vec<usize>, usize)> = Vec::new();
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        call.push((root, inert(root).collect(), 0));
        while let Some(frame) = call.last_mut() {
            let v = frame.0;
            if frame.2 < frame.1.len() {
                let w = frame.1[frame.2];
                frame.2 += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, inert(w).collect(), 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(parent) = call.last() {
                    low[parent.0] = low[parent.0].min(low[v]);
                }
                if low[v] == index[v] {
                    let id = comps.len();
                    let mut members = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = id;
                        members.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comps.push(members);
                }
            }
        }
    }
    (comp, comps)
}

/// Block numbers of the coarsest partition that is a branching bisimulation
/// on `g` (a divergence-preserving one when `divergence` is set).
pub(crate) fn refine(g: &Graph, divergence: bool) -> Vec<usize> {
    let mut block = vec![0usize; g.n];
    let mut count = usize::from(g.n > 0);
    loop {
        let (comp, comps) = inert_sccs(g, &block);
        let mut sigs: Vec<BTreeSet<(u32, usize)>> = Vec::with_capacity(comps.len());
        let mut div: Vec<bool> = Vec::with_capacity(comps.len());
        for (id, members) in comps.iter().enumerate() {
            let mut sig = BTreeSet::new();
            let mut d = members.len() > 1;
            for &v in members {
                if g.finals[v] {
                    sig.insert((FINAL, 0));
                }
                for &(a, w) in &g.out[v] {
                    if a == 0 && block[w] == block[v] {
                        if comp[w] == id {
                            d = true;
                        } else {
                            sig.extend(sigs[comp[w]].iter().copied());
                            d |= div[comp[w]];
                        }
                    } else {
                        sig.insert((a, block[w]));
                    }
                }
            }
            if divergence && d {
                sig.insert((DIVERGENT, 0));
            }
            sigs.push(sig);
            div.push(d);
        }
        let mut ids: HashMap<(usize, &BTreeSet<(u32, usize)>), usize> = HashMap::new();
        let mut next = vec![0usize; g.n];
        for v in 0..g.n {
            let len = ids.len();
            next[v] = *ids.entry((block[v], &sigs[comp[v]])).or_insert(len);
        }
        let new_count = ids.len();
        drop(ids);
        block = next;
        if new_count == count {
            return block;
        }
        count = new_count;
    }
}
