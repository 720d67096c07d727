//! Tape symbols and head directions.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A symbol that may appear on the tape of a 1-limited automaton.
///
/// Letters are single ASCII alphanumeric characters. A [`TapeSymbol::Marked`]
/// letter is the marked copy of an input letter and is rendered with a
/// trailing prime (`a'`). End-markers render as `|-` and `-|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TapeSymbol {
    LeftEnd,
    Input(char),
    Marked(char),
    Work(char),
    RightEnd,
}

impl TapeSymbol {
    pub fn is_end_marker(self) -> bool {
        matches!(self, TapeSymbol::LeftEnd | TapeSymbol::RightEnd)
    }

    /// The base letter, if the symbol carries one.
    pub fn letter(self) -> Option<char> {
        match self {
            TapeSymbol::Input(c) | TapeSymbol::Marked(c) | TapeSymbol::Work(c) => Some(c),
            TapeSymbol::LeftEnd | TapeSymbol::RightEnd => None,
        }
    }

    /// The marked version of an input letter; other symbols have none.
    pub fn marked(self) -> Option<TapeSymbol> {
        match self {
            TapeSymbol::Input(c) => Some(TapeSymbol::Marked(c)),
            _ => None,
        }
    }
}

impl fmt::Display for TapeSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TapeSymbol::LeftEnd => f.write_str("|-"),
            TapeSymbol::RightEnd => f.write_str("-|"),
            TapeSymbol::Input(c) | TapeSymbol::Work(c) => write!(f, "{c}"),
            TapeSymbol::Marked(c) => write!(f, "{c}'"),
        }
    }
}

/// Whether `c` can be used as a letter name.
pub fn is_letter_char(c: char) -> bool {
    c.is_ascii_alphanumeric()
}

/// Head movement of a single transition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dir {
    Left,
    Right,
}

impl Dir {
    pub fn offset(self) -> isize {
        match self {
            Dir::Left => -1,
            Dir::Right => 1,
        }
    }

    pub fn reverse(self) -> Dir {
        match self {
            Dir::Left => Dir::Right,
            Dir::Right => Dir::Left,
        }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dir::Left => f.write_str("-1"),
            Dir::Right => f.write_str("+1"),
        }
    }
}
