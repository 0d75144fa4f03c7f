use num_bigint::BigUint;

use super::{Move, Rtm, Rule};
use crate::lts::{sym, Action};

/// Deterministic machine sending `⟦`, then `code + 1` times `1`, then `⟧`
/// along `channel`, and then terminating.
///
/// The machine writes `code` in binary (the first write is labelled with the
/// opening bracket), then repeatedly sends a `1` from the right end of the
/// number and decrements it. A borrow running off the left end means the
/// counter was zero; the closing bracket is sent and the machine stops.
pub fn emitter(code: &BigUint, channel: &str) -> Rtm {
    let bits = code.to_radix_be(2);
    let send = |d: &str| Action::send(channel, d);
    let write_state = |j: usize| format!("w{j}");
    let mut rules = Vec::new();
    for (j, bit) in bits.iter().enumerate() {
        let action = if j == 0 { send("⟦") } else { Action::Tau };
        rules.push(Rule::new(&write_state(j), "_", action, &bit.to_string(), Move::R, &write_state(j + 1)));
    }
    let end = write_state(bits.len());
    rules.push(Rule::new(&end, "_", send("1"), "_", Move::L, "dec"));
    rules.push(Rule::new("dec", "1", Action::Tau, "0", Move::R, "ret"));
    rules.push(Rule::new("dec", "0", Action::Tau, "1", Move::L, "dec"));
    rules.push(Rule::new("dec", "_", send("⟧"), "_", Move::R, "done"));
    rules.push(Rule::new("ret", "0", Action::Tau, "0", Move::R, "ret"));
    rules.push(Rule::new("ret", "1", Action::Tau, "1", Move::R, "ret"));
    rules.push(Rule::new("ret", "_", send("1"), "_", Move::L, "dec"));
    let mut states: Vec<String> = (0..=bits.len()).map(write_state).collect();
    states.extend(["dec", "ret", "done"].map(String::from));
    Rtm::new(states.iter().map(|s| sym(s)), sym("w0"), [sym("done")], [sym("0"), sym("1")], rules)
        .expect("emitter rules use declared states")
}
