//! Direct DFA constructions from the definitions of `K_n` and `J_n`, used as
//! ground truth independent of the conversions.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::oneway::OneWayDfa;

use super::{check_n, ALPHABET};

/// Largest `n` for which [`kn_reference_dfa`] is built: the automaton keeps
/// the set of blocks seen so far.
pub const KN_REFERENCE_CAP: usize = 3;
pub const JN_REFERENCE_CAP: usize = 8;

/// Breadth-first construction of the reachable part of a DFA given by a
/// step function on keys.
fn explore<K: Clone + Eq + Hash>(
    init: K,
    step: impl Fn(&K, usize) -> K,
    accept: impl Fn(&K) -> bool,
) -> OneWayDfa {
    let mut dfa = OneWayDfa::new(ALPHABET);
    let mut ids = HashMap::new();
    let mut keys = Vec::new();
    let mut queue = VecDeque::new();
    let mut intern = |k: K, dfa: &mut OneWayDfa, keys: &mut Vec<K>, queue: &mut VecDeque<usize>| -> usize {
        *ids.entry(k.clone()).or_insert_with(|| {
            let id = dfa.add_state(format!("r{}", keys.len()));
            dfa.set_final(id, accept(&k));
            keys.push(k);
            queue.push_back(id);
            id
        })
    };
    let s = intern(init, &mut dfa, &mut keys, &mut queue);
    dfa.set_initial(s);
    while let Some(id) = queue.pop_front() {
        let k = keys[id].clone();
        for a in 0..ALPHABET.len() {
            let t = intern(step(&k, a), &mut dfa, &mut keys, &mut queue);
            dfa.set_transition(id, a, t);
        }
    }
    dfa
}

/// Partial block as (length, bits), letter index `a = 0`, `b = 1`.
type Partial = (usize, u32);

fn push(p: Partial, a: usize) -> Partial {
    (p.0 + 1, p.1 << 1 | a as u32)
}

fn cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { what, value: n, cap });
    }
    Ok(())
}

/// States: blocks seen so far (bitmask over the `2^n` blocks), the current
/// partial block, and whether the last completed block had been seen before.
pub fn kn_reference_dfa(n: usize) -> Result<OneWayDfa> {
    check_n(n)?;
    cap("kn reference n", n, KN_REFERENCE_CAP)?;
    #[derive(Clone, PartialEq, Eq, Hash)]
    struct K {
        seen: u64,
        partial: Partial,
        hit: bool,
    }
    let init = K { seen: 0, partial: (0, 0), hit: false };
    Ok(explore(
        init,
        |k, a| {
            let p = push(k.partial, a);
            if p.0 < n {
                return K { partial: p, ..k.clone() };
            }
            let bit = 1u64 << p.1;
            K { seen: k.seen | bit, partial: (0, 0), hit: k.seen & bit != 0 }
        },
        |k| k.hit && k.partial.0 == 0,
    ))
}

/// States: the first block (or its prefix), then the current partial block
/// and whether some completed later block equalled the first one.
pub fn jn_reference_dfa(n: usize) -> Result<OneWayDfa> {
    check_n(n)?;
    cap("jn reference n", n, JN_REFERENCE_CAP)?;
    #[derive(Clone, PartialEq, Eq, Hash)]
    enum K {
        First(Partial),
        Later { first: u32, partial: Partial, found: bool },
    }
    Ok(explore(
        K::First((0, 0)),
        |k, a| match *k {
            K::First(p) => {
                let p = push(p, a);
                if p.0 < n {
                    K::First(p)
                } else {
                    K::Later { first: p.1, partial: (0, 0), found: false }
                }
            }
            K::Later { first, partial, found } => {
                let p = push(partial, a);
                if p.0 < n {
                    K::Later { first, partial: p, found }
                } else {
                    K::Later { first, partial: (0, 0), found: found || p.1 == first }
                }
            }
        },
        |k| matches!(k, K::Later { partial: (0, _), found: true, .. }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convert::minimize_dfa;
    use crate::witness::{jn_member, kn_member};
    use crate::words::words_up_to;

    #[test]
    fn references_match_oracles() {
        for n in 1..=3 {
            let k = kn_reference_dfa(n).unwrap();
            let j = jn_reference_dfa(n).unwrap();
            for w in words_up_to(&ALPHABET, 9) {
                assert_eq!(k.accepts(&w).unwrap(), kn_member(n, &w).unwrap(), "K n={n} {w}");
                assert_eq!(j.accepts(&w).unwrap(), jn_member(n, &w).unwrap(), "J n={n} {w}");
            }
        }
    }

    #[test]
    fn minimal_sizes_respect_lower_bounds() {
        assert!(minimize_dfa(&kn_reference_dfa(1).unwrap()).num_states() >= 4);
        assert!(minimize_dfa(&jn_reference_dfa(3).unwrap()).num_states() >= 8);
        assert!(matches!(kn_reference_dfa(4), Err(Error::CapExceeded { .. })));
    }
}
