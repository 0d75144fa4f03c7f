//! Integer coding of machines.
//!
//! A code is a sequence of naturals packed into one integer: a leading `1`
//! bit followed by the Elias-gamma code of `x + 1` for every element `x`.
//! The sequence starts with a string table (all state names, symbols,
//! channels and action names, sorted, each as the big-endian integer of its
//! UTF-8 bytes behind a `1` byte), followed by the states, the initial
//! state, the final states, the alphabet and the rules as indices into the
//! table. Actions and rules are single naturals built with the Cantor
//! pairing function.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::{Move, Rtm, RtmError, Rule};
use crate::lts::{sym, Action, Sym};

fn pair(a: BigUint, b: BigUint) -> BigUint {
    let s = &a + &b;
    (&s * (&s + 1u32)) / 2u32 + b
}

fn unpair(z: &BigUint) -> (BigUint, BigUint) {
    let w = ((z * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let b = z - t;
    let a = w - &b;
    (a, b)
}

fn string_code(s: &str) -> BigUint {
    let mut bytes = vec![1u8];
    bytes.extend_from_slice(s.as_bytes());
    BigUint::from_bytes_be(&bytes)
}

fn string_decode(n: &BigUint) -> Option<String> {
    let bytes = n.to_bytes_be();
    match bytes.split_first() {
        Some((1, rest)) => String::from_utf8(rest.to_vec()).ok(),
        _ => None,
    }
}

fn pack(seq: &[BigUint]) -> BigUint {
    let mut bits = vec![1u8];
    for x in seq {
        let digits = (x + 1u32).to_radix_be(2);
        bits.extend(std::iter::repeat_n(0, digits.len() - 1));
        bits.extend(digits);
    }
    BigUint::from_radix_be(&bits, 2).expect("binary digits")
}

fn unpack(code: &BigUint) -> Option<Vec<BigUint>> {
    if code.is_zero() {
        return None;
    }
    let bits = code.to_radix_be(2);
    let mut pos = 1;
    let mut seq = Vec::new();
    while pos < bits.len() {
        let zeros = bits[pos..].iter().take_while(|&&b| b == 0).count();
        let end = pos + 2 * zeros + 1;
        if end > bits.len() {
            return None;
        }
        let value = BigUint::from_radix_be(&bits[pos + zeros..end], 2)?;
        seq.push(value - 1u32);
        pos = end;
    }
    Some(seq)
}

fn big(n: usize) -> BigUint {
    BigUint::from(n)
}

/// Encodes a machine as a natural number.
pub fn godel_encode(m: &Rtm) -> BigUint {
    let mut table: BTreeSet<Sym> = BTreeSet::new();
    table.extend(m.states().iter().cloned());
    table.extend(m.alphabet().iter().cloned());
    for r in m.rules() {
        table.insert(r.read.clone());
        table.insert(r.write.clone());
        match &r.action {
            Action::Tau => {}
            Action::Plain(a) => {
                table.insert(a.clone());
            }
            Action::Send(c, d) | Action::Recv(c, d) => {
                table.insert(c.clone());
                table.insert(d.clone());
            }
        }
    }
    let table: Vec<Sym> = table.into_iter().collect();
    let idx = |s: &Sym| big(table.binary_search(s).expect("symbol in table"));

    let mut seq = vec![big(table.len())];
    seq.extend(table.iter().map(|s| string_code(s)));
    seq.push(big(m.states().len()));
    seq.extend(m.states().iter().map(idx));
    seq.push(idx(m.initial_state()));
    seq.push(big(m.finals().len()));
    seq.extend(m.finals().iter().map(idx));
    seq.push(big(m.alphabet().len()));
    seq.extend(m.alphabet().iter().map(idx));
    seq.push(big(m.rules().len()));
    for r in m.rules() {
        let action = match &r.action {
            Action::Tau => pair(BigUint::zero(), BigUint::zero()),
            Action::Plain(a) => pair(big(1), idx(a)),
            Action::Send(c, d) => pair(big(2), pair(idx(c), idx(d))),
            Action::Recv(c, d) => pair(big(3), pair(idx(c), idx(d))),
        };
        let mv = match r.mv {
            Move::L => BigUint::zero(),
            Move::R => BigUint::one(),
        };
        let code = pair(
            idx(&r.state),
            pair(idx(&r.read), pair(action, pair(idx(&r.write), pair(mv, idx(&r.next))))),
        );
        seq.push(code);
    }
    pack(&seq)
}

struct Reader {
    seq: Vec<BigUint>,
    pos: usize,
}

impl Reader {
    fn next(&mut self) -> Option<BigUint> {
        let x = self.seq.get(self.pos)?.clone();
        self.pos += 1;
        Some(x)
    }

    fn count(&mut self) -> Option<usize> {
        let n = self.next()?.to_usize()?;
        (n <= self.seq.len() - self.pos).then_some(n)
    }
}

fn decode_parts(code: &BigUint) -> Option<Result<Rtm, RtmError>> {
    let mut r = Reader { seq: unpack(code)?, pos: 0 };
    let n = r.count()?;
    let table = (0..n).map(|_| r.next().and_then(|c| string_decode(&c)).map(|s| sym(&s))).collect::<Option<Vec<Sym>>>()?;
    let lookup = |i: BigUint| i.to_usize().and_then(|i| table.get(i).cloned());
    let entries = |r: &mut Reader| -> Option<Vec<Sym>> {
        let k = r.count()?;
        (0..k).map(|_| r.next().and_then(lookup)).collect()
    };
    let states = entries(&mut r)?;
    let initial = r.next().and_then(lookup)?;
    let finals = entries(&mut r)?;
    let alphabet = entries(&mut r)?;
    let k = r.count()?;
    let mut rules = Vec::with_capacity(k);
    for _ in 0..k {
        let (state, rest) = unpair(&r.next()?);
        let (read, rest) = unpair(&rest);
        let (action, rest) = unpair(&rest);
        let (write, rest) = unpair(&rest);
        let (mv, next) = unpair(&rest);
        let (kind, payload) = unpair(&action);
        let action = match kind.to_u8()? {
            0 if payload.is_zero() => Action::Tau,
            1 => Action::Plain(lookup(payload)?),
            2 | 3 => {
                let (c, d) = unpair(&payload);
                let (c, d) = (lookup(c)?, lookup(d)?);
                if kind == big(2) {
                    Action::Send(c, d)
                } else {
                    Action::Recv(c, d)
                }
            }
            _ => return None,
        };
        let mv = match mv.to_u8()? {
            0 => Move::L,
            1 => Move::R,
            _ => return None,
        };
        rules.push(Rule { state: lookup(state)?, read: lookup(read)?, action, write: lookup(write)?, mv, next: lookup(next)? });
    }
    if r.pos != r.seq.len() {
        return None;
    }
    Some(Rtm::new(states, initial, finals, alphabet, rules))
}

/// Decodes a natural number produced by [`godel_encode`].
pub fn godel_decode(code: &BigUint) -> Result<Rtm, RtmError> {
    match decode_parts(code) {
        Some(Ok(m)) => Ok(m),
        _ => Err(RtmError::NotAnRtmCode),
    }
}
