use std::collections::BTreeSet;

use super::{Action, LtsGenerator, Sym};

/// Parallel composition of two generators, synchronising sends and receives
/// on `channels` into τ and hiding their unmatched halves.
#[derive(Clone, Debug)]
pub struct Parallel<G1, G2> {
    pub left: G1,
    pub right: G2,
    pub channels: BTreeSet<Sym>,
}

pub fn parallel_compose<G1: LtsGenerator, G2: LtsGenerator>(
    left: G1,
    right: G2,
    channels: BTreeSet<Sym>,
) -> Parallel<G1, G2> {
    Parallel { left, right, channels }
}

impl<G1: LtsGenerator, G2: LtsGenerator> LtsGenerator for Parallel<G1, G2> {
    type State = (G1::State, G2::State);

    fn initial(&self) -> Self::State {
        (self.left.initial(), self.right.initial())
    }

    fn out(&self, (s1, s2): &Self::State) -> Vec<(Action, Self::State)> {
        let out1 = self.left.out(s1);
        let out2 = self.right.out(s2);
        let mut result = Vec::new();
        for (a, t1) in &out1 {
            if !a.on_channels(&self.channels) {
                result.push((a.clone(), (t1.clone(), s2.clone())));
            }
        }
        for (b, t2) in &out2 {
            if !b.on_channels(&self.channels) {
                result.push((b.clone(), (s1.clone(), t2.clone())));
            }
        }
        for (a, t1) in out1.iter().filter(|(a, _)| a.on_channels(&self.channels)) {
            for (_, t2) in out2.iter().filter(|(b, _)| a.complements(b)) {
                result.push((Action::Tau, (t1.clone(), t2.clone())));
            }
        }
        result
    }

    fn fin(&self, (s1, s2): &Self::State) -> bool {
        self.left.fin(s1) && self.right.fin(s2)
    }

    fn truncated(&self, (s1, s2): &Self::State) -> bool {
        self.left.truncated(s1) || self.right.truncated(s2)
    }
}
