//! Bounded language comparison, random machines, and the size-gap
//! experiment.

mod gap;
mod random;

pub use gap::{gap_experiment, gap_experiment_with, BoundCheck, GapOptions, GapReport, GapRow, RowStatus};
pub use random::{random_domla, random_la};

use crate::convert::Equivalence;
use crate::error::{Error, Result};
use crate::exec::Runner;
use crate::format::Machine;
use crate::par::{self, Strategy};
use crate::words::words_up_to;

/// Longest word length [`language_equiv_bounded`] accepts.
pub const MAX_EQUIV_LEN: usize = 20;

enum Prepared<'a> {
    La(Runner<'a>),
    Other(&'a Machine),
}

impl<'a> Prepared<'a> {
    fn new(m: &'a Machine) -> Result<Self> {
        Ok(match m {
            Machine::La(la) => Prepared::La(Runner::new(la)?),
            other => Prepared::Other(other),
        })
    }

    fn accepts(&self, w: &str) -> Result<bool> {
        match self {
            Prepared::La(r) => r.accepts(w),
            Prepared::Other(Machine::Nfa(a)) => a.accepts(w),
            Prepared::Other(Machine::Dfa(a)) => a.accepts(w),
            Prepared::Other(Machine::La(_)) => unreachable!("limited automata are prepared as runners"),
        }
    }
}

pub fn language_equiv_bounded(a: &Machine, b: &Machine, max_len: usize) -> Result<Equivalence> {
    language_equiv_bounded_with(a, b, max_len, Strategy::default())
}

/// Compares acceptance on every word of length at most `max_len`. The
/// counterexample, if any, is the first disagreement in shortlex order.
pub fn language_equiv_bounded_with(a: &Machine, b: &Machine, max_len: usize, strategy: Strategy) -> Result<Equivalence> {
    if a.input_alphabet() != b.input_alphabet() {
        return Err(Error::AlphabetMismatch { left: a.input_alphabet().to_vec(), right: b.input_alphabet().to_vec() });
    }
    if max_len > MAX_EQUIV_LEN {
        return Err(Error::CapExceeded { what: "max word length", value: max_len, cap: MAX_EQUIV_LEN });
    }
    let (pa, pb) = (Prepared::new(a)?, Prepared::new(b)?);
    let differs = |w: &str| -> Result<bool> { Ok(pa.accepts(w)? != pb.accepts(w)?) };
    let words = words_up_to(a.input_alphabet(), max_len);
    // errors count as disagreement here and are surfaced below
    let first = par::position_first(strategy, &words, |w| differs(w).unwrap_or(true));
    match first {
        None => Ok(Equivalence::Equal),
        Some(i) => {
            differs(&words[i])?;
            Ok(Equivalence::Counterexample(words[i].clone()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{gen_jn_damla, gen_kn_omla, jn_member, kn_member, kn_reference_dfa};

    #[test]
    fn witnesses_against_references() {
        let k1 = Machine::La(gen_kn_omla(1).unwrap());
        let r1 = Machine::Dfa(kn_reference_dfa(1).unwrap());
        assert_eq!(language_equiv_bounded(&k1, &k1, 6).unwrap(), Equivalence::Equal);
        assert_eq!(language_equiv_bounded(&k1, &r1, 8).unwrap(), Equivalence::Equal);
        let j1 = Machine::La(gen_jn_damla(1).unwrap());
        for s in [Strategy::Sequential, Strategy::Parallel] {
            let Equivalence::Counterexample(w) = language_equiv_bounded_with(&k1, &j1, 8, s).unwrap() else {
                panic!("K_1 and J_1 differ");
            };
            assert_ne!(kn_member(1, &w).unwrap(), jn_member(1, &w).unwrap());
            assert_eq!(w, "aab");
        }
    }

    #[test]
    fn caps_and_alphabets() {
        let k1 = Machine::La(gen_kn_omla(1).unwrap());
        assert!(matches!(language_equiv_bounded(&k1, &k1, 40), Err(Error::CapExceeded { .. })));
        let other = Machine::Dfa(crate::oneway::OneWayDfa::new(['a']));
        assert!(matches!(language_equiv_bounded(&k1, &other, 3), Err(Error::AlphabetMismatch { .. })));
    }
}
