use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::{self, Strategy};

use super::{check_n, ALPHABET};

/// Largest `n` for which [`jn_fooling_set`] is generated (`2^n` pairs).
pub const FOOLING_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoolingPair {
    pub u: String,
    pub v: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FoolingVerdict {
    /// Every NFA for the language needs at least this many states.
    Certified(usize),
    /// Pair `i` fails (`i == j`: `u_i v_i` is not in the language), or pairs
    /// `i` and `j` cross into the language both ways.
    Violation(usize, usize),
}

/// `{(x, x) : x ∈ {a,b}^n}`, in lexicographic order of `x`.
pub fn jn_fooling_set(n: usize) -> Result<Vec<FoolingPair>> {
    check_n(n)?;
    if n > FOOLING_CAP {
        return Err(Error::CapExceeded { what: "fooling set n", value: n, cap: FOOLING_CAP });
    }
    Ok((0..1u32 << n)
        .map(|bits| {
            let x: String = (0..n).rev().map(|i| ALPHABET[(bits >> i & 1) as usize]).collect();
            FoolingPair { u: x.clone(), v: x }
        })
        .collect())
}

/// Checks the fooling-set conditions against a membership oracle.
pub fn verify_fooling_set<F>(member: F, pairs: &[FoolingPair]) -> FoolingVerdict
where
    F: Fn(&str) -> bool + Sync + Send,
{
    verify_fooling_set_with(member, pairs, Strategy::default())
}

pub fn verify_fooling_set_with<F>(member: F, pairs: &[FoolingPair], strategy: Strategy) -> FoolingVerdict
where
    F: Fn(&str) -> bool + Sync + Send,
{
    let cat = |a: &str, b: &str| format!("{a}{b}");
    if let Some(i) = pairs.iter().position(|p| !member(&cat(&p.u, &p.v))) {
        return FoolingVerdict::Violation(i, i);
    }
    let rows: Vec<usize> = (0..pairs.len()).collect();
    let crossing = |&i: &usize| {
        (i + 1..pairs.len()).find(|&j| member(&cat(&pairs[i].u, &pairs[j].v)) && member(&cat(&pairs[j].u, &pairs[i].v)))
    };
    match par::position_first(strategy, &rows, |i| crossing(i).is_some()) {
        Some(i) => FoolingVerdict::Violation(i, crossing(&i).expect("found above")),
        None => FoolingVerdict::Certified(pairs.len()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::jn_member;

    #[test]
    fn certified_and_violations() {
        let set = jn_fooling_set(1).unwrap();
        assert_eq!(set, vec![FoolingPair { u: "a".into(), v: "a".into() }, FoolingPair { u: "b".into(), v: "b".into() }]);
        let jn3 = |w: &str| jn_member(3, w).unwrap();
        assert_eq!(verify_fooling_set(jn3, &jn_fooling_set(3).unwrap()), FoolingVerdict::Certified(8));
        let single = [FoolingPair { u: "ab".into(), v: "ab".into() }];
        assert_eq!(verify_fooling_set(|w| jn_member(2, w).unwrap(), &single), FoolingVerdict::Certified(1));
        // both pairs accept each other's suffixes
        let broken = [FoolingPair { u: "a".into(), v: "a".into() }, FoolingPair { u: "a".into(), v: "ba".into() }];
        assert_eq!(verify_fooling_set(|w| jn_member(1, w).unwrap(), &broken), FoolingVerdict::Violation(0, 1));
        let bad = [FoolingPair { u: "a".into(), v: "b".into() }];
        assert_eq!(verify_fooling_set(|w| jn_member(1, w).unwrap(), &bad), FoolingVerdict::Violation(0, 0));
    }
}
