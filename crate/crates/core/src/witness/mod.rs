//! The block languages `K_n` and `J_n` over `{a, b}`.
//!
//! A word is a list of blocks of length `n`. `K_n` asks whether the last
//! block occurs among the earlier ones, `J_n` whether the first block occurs
//! among the later ones, so `J_n` is the reversal of `K_n`.

mod fooling;
mod jn;
mod kn;
mod reference;

use serde::{Deserialize, Serialize};

pub use fooling::{jn_fooling_set, verify_fooling_set, verify_fooling_set_with, FoolingPair, FoolingVerdict, FOOLING_CAP};
pub use jn::gen_jn_damla;
pub use kn::gen_kn_omla;
pub use reference::{jn_reference_dfa, kn_reference_dfa, JN_REFERENCE_CAP, KN_REFERENCE_CAP};

use crate::error::{Error, Result};

pub const ALPHABET: [char; 2] = ['a', 'b'];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Kn,
    Jn,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Kn => "kn",
            Family::Jn => "jn",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "kn" | "k" => Ok(Family::Kn),
            "jn" | "j" => Ok(Family::Jn),
            other => Err(Error::InvalidParameter(format!("unknown family {other:?} (expected kn or jn)"))),
        }
    }
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("block length n must be at least 1".into()));
    }
    Ok(())
}

fn blocks(n: usize, w: &str) -> Result<Option<Vec<&str>>> {
    check_n(n)?;
    if let Some(c) = w.chars().find(|c| !ALPHABET.contains(c)) {
        return Err(Error::LetterNotInAlphabet(c));
    }
    if !w.len().is_multiple_of(n) || w.len() < 2 * n {
        return Ok(None);
    }
    Ok(Some((0..w.len() / n).map(|i| &w[i * n..(i + 1) * n]).collect()))
}

pub fn kn_member(n: usize, w: &str) -> Result<bool> {
    Ok(blocks(n, w)?.is_some_and(|bs| {
        let (last, earlier) = bs.split_last().expect("at least two blocks");
        earlier.contains(last)
    }))
}

pub fn jn_member(n: usize, w: &str) -> Result<bool> {
    Ok(blocks(n, w)?.is_some_and(|bs| {
        let (first, later) = bs.split_first().expect("at least two blocks");
        later.contains(first)
    }))
}

pub fn member(family: Family, n: usize, w: &str) -> Result<bool> {
    match family {
        Family::Kn => kn_member(n, w),
        Family::Jn => jn_member(n, w),
    }
}
