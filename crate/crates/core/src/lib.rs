//! One-limited automata: single-tape machines that may rewrite a cell only
//! on its first visit.
//!
//! The crate covers the machine model and its once-marking and
//! always-marking variants, exact execution, conversions to one-way finite
//! automata, a compiler from deterministic once-marking machines to
//! write-free two-way DFAs, the `K_n`/`J_n` witness families, and tooling
//! for measuring state-complexity gaps.
//!
//! ```
//! use limited_automata::witness::{gen_jn_damla, jn_member};
//! use limited_automata::exec::accepts;
//!
//! let m = gen_jn_damla(2).unwrap();
//! assert!(accepts(&m, "abab").unwrap());
//! assert_eq!(jn_member(2, "abab").unwrap(), true);
//! ```

pub mod analysis;
pub mod convert;
mod error;
pub mod exec;
pub mod format;
pub mod machine;
pub mod oneway;
pub mod par;
mod symbol;
pub mod twoway;
pub mod validate;
pub mod witness;
pub mod words;

pub use error::{Error, Result};
pub use machine::{LaBuilder, LimitedAutomaton, Move, StateId, Transition};
pub use oneway::{OneWayDfa, OneWayNfa};
pub use symbol::{is_letter_char, Dir, TapeSymbol};
pub use validate::{classify, validate, Diagnostic, DiagnosticKind, VariantProfile};
