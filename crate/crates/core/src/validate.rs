//! Well-formedness diagnostics and structural classification of machines.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::machine::{LimitedAutomaton, StateId, Transition};
use crate::symbol::{is_letter_char, Dir, TapeSymbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DiagnosticKind {
    /// A transition on a non end-marker writes an end-marker.
    EndMarkerWritten,
    /// A transition on an end-marker writes something else.
    EndMarkerModified,
    StateOutOfRange,
    InitialStateMissing,
    FinalStateMissing,
    SymbolNotInAlphabet,
    MarkedLetterNotInput,
    WorkLetterShadowsInput,
    BadLetter,
    DuplicateStateName,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub message: String,
    pub transition: Option<Transition>,
    pub state: Option<StateId>,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn describe(t: &Transition) -> String {
    format!("{}, {} -> {}, {}, {}", t.from, t.read, t.to, t.write, t.dir)
}

/// Checks every well-formedness invariant of `la`. An empty result means the
/// machine may be executed and converted.
pub fn validate(la: &LimitedAutomaton) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let n = la.num_states();
    let mut push = |kind, message: String, transition, state| {
        out.push(Diagnostic { kind, message, transition, state });
    };

    let mut seen = BTreeSet::new();
    for (i, name) in la.state_names().iter().enumerate() {
        if !seen.insert(name.as_str()) {
            push(
                DiagnosticKind::DuplicateStateName,
                format!("duplicate state name {name:?}"),
                None,
                Some(i),
            );
        }
    }
    if la.initial() >= n {
        push(
            DiagnosticKind::InitialStateMissing,
            format!("initial state {} is not a state", la.initial()),
            None,
            Some(la.initial()),
        );
    }
    for &f in la.finals() {
        if f >= n {
            push(
                DiagnosticKind::FinalStateMissing,
                format!("final state {f} is not a state"),
                None,
                Some(f),
            );
        }
    }
    for &c in la.input_alphabet() {
        if !is_letter_char(c) {
            push(DiagnosticKind::BadLetter, format!("input letter {c:?} is not ASCII alphanumeric"), None, None);
        }
    }
    for &sym in la.work_alphabet() {
        match sym {
            TapeSymbol::Marked(c) if !la.has_letter(c) => push(
                DiagnosticKind::MarkedLetterNotInput,
                format!("marked letter {sym} has no base letter in the input alphabet"),
                None,
                None,
            ),
            TapeSymbol::Work(c) if la.has_letter(c) => push(
                DiagnosticKind::WorkLetterShadowsInput,
                format!("work letter {c:?} coincides with an input letter"),
                None,
                None,
            ),
            TapeSymbol::Work(c) if !is_letter_char(c) => push(
                DiagnosticKind::BadLetter,
                format!("work letter {c:?} is not ASCII alphanumeric"),
                None,
                None,
            ),
            TapeSymbol::Input(c) if !la.has_letter(c) => push(
                DiagnosticKind::SymbolNotInAlphabet,
                format!("input symbol {c:?} is not in the input alphabet"),
                None,
                None,
            ),
            _ => {}
        }
    }

    for t in la.transitions() {
        if t.from >= n || t.to >= n {
            push(
                DiagnosticKind::StateOutOfRange,
                format!("transition {} uses an unknown state", describe(t)),
                Some(*t),
                Some(t.from.max(t.to)),
            );
        }
        for sym in [t.read, t.write] {
            if la.symbol_index(sym).is_none() {
                push(
                    DiagnosticKind::SymbolNotInAlphabet,
                    format!("transition {} uses {sym}, which is not in the work alphabet", describe(t)),
                    Some(*t),
                    None,
                );
            }
        }
        if t.read.is_end_marker() {
            if t.write != t.read {
                push(
                    DiagnosticKind::EndMarkerModified,
                    format!("transition {} modifies an end-marker", describe(t)),
                    Some(*t),
                    None,
                );
            }
        } else if t.write.is_end_marker() {
            push(
                DiagnosticKind::EndMarkerWritten,
                format!("end-marker written by transition {}", describe(t)),
                Some(*t),
                None,
            );
        }
    }
    out
}

pub(crate) fn ensure_valid(la: &LimitedAutomaton) -> Result<()> {
    let diags = validate(la);
    if diags.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidMachine(diags))
    }
}

/// Structural properties of a machine, computed from its transition relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct VariantProfile {
    pub deterministic: bool,
    pub structurally_once_marking: bool,
    pub structurally_always_marking: bool,
    pub sweeping: bool,
    pub write_free: bool,
}

pub fn classify(la: &LimitedAutomaton) -> Result<VariantProfile> {
    ensure_valid(la)?;
    Ok(VariantProfile {
        deterministic: is_deterministic(la),
        structurally_once_marking: once_marking_split(la).is_some(),
        structurally_always_marking: is_always_marking(la),
        sweeping: is_syntactically_sweeping(la),
        write_free: la.transitions().iter().all(|t| !t.rewrites()),
    })
}

pub fn is_deterministic(la: &LimitedAutomaton) -> bool {
    la.transitions()
        .windows(2)
        .all(|w| (w[0].from, w[0].read) != (w[1].from, w[1].read))
}

/// Marking variants may only use `Σ ∪ marked Σ ∪ {⊢, ⊣}`.
fn uses_marking_alphabet(la: &LimitedAutomaton) -> bool {
    la.work_alphabet().iter().all(|s| !matches!(s, TapeSymbol::Work(_)))
}

fn is_always_marking(la: &LimitedAutomaton) -> bool {
    uses_marking_alphabet(la)
        && la.transitions().iter().all(|t| match t.read {
            TapeSymbol::Input(_) => t.read.marked() == Some(t.write),
            _ => t.write == t.read,
        })
}

/// The split `(Q_pre, Q_post)` witnessing the structural once-marking
/// discipline, or `None` if the machine does not follow it.
///
/// `Q_post` is the smallest set containing every marking target and closed
/// under transitions; if that set contains a marking source no split exists.
/// Machines without any marking transition are not considered once-marking.
pub fn once_marking_split(la: &LimitedAutomaton) -> Option<(Vec<StateId>, Vec<StateId>)> {
    if !uses_marking_alphabet(la) {
        return None;
    }
    if !la
        .transitions()
        .iter()
        .all(|t| t.write == t.read || t.is_marking())
    {
        return None;
    }
    let n = la.num_states();
    let mut post = vec![false; n];
    let mut stack: Vec<StateId> = la
        .transitions()
        .iter()
        .filter(|t| t.is_marking())
        .map(|t| t.to)
        .collect();
    if stack.is_empty() {
        return None;
    }
    while let Some(q) = stack.pop() {
        if std::mem::replace(&mut post[q], true) {
            continue;
        }
        stack.extend(la.transitions().iter().filter(|t| t.from == q).map(|t| t.to));
    }
    if la.transitions().iter().any(|t| t.is_marking() && post[t.from]) {
        return None;
    }
    let pre = (0..n).filter(|&q| !post[q]).collect();
    let post = (0..n).filter(|&q| post[q]).collect();
    Some((pre, post))
}

/// Sufficient syntactic condition for sweeping: each state moves in a single
/// direction on non end-marker cells, and every transition enters a state
/// whose direction agrees with the move just made. Head reversals can then
/// only happen while scanning an end-marker.
pub fn is_syntactically_sweeping(la: &LimitedAutomaton) -> bool {
    let n = la.num_states();
    let mut dirs: Vec<Option<Dir>> = vec![None; n];
    for t in la.transitions().iter().filter(|t| !t.read.is_end_marker()) {
        match dirs[t.from] {
            None => dirs[t.from] = Some(t.dir),
            Some(d) if d != t.dir => return false,
            _ => {}
        }
    }
    la.transitions()
        .iter()
        .all(|t| dirs[t.to].is_none_or(|d| d == t.dir))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::LaBuilder;
    use TapeSymbol::*;

    fn two_state_write_free() -> LimitedAutomaton {
        let mut b = LaBuilder::new(['a', 'b']);
        let (p, q) = (b.state("p"), b.state("q"));
        b.keep(p, Input('a'), q, Dir::Right)
            .keep(q, Input('b'), p, Dir::Right)
            .keep(p, RightEnd, q, Dir::Right);
        b.accept(q);
        b.build()
    }

    #[test]
    fn left_end_written_is_reported() {
        let mut b = LaBuilder::new(['a']);
        let q = b.state("q");
        b.rule(q, Input('a'), q, LeftEnd, Dir::Right);
        let d = validate(&b.build());
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].kind, DiagnosticKind::EndMarkerWritten);
        assert!(d[0].message.contains("end-marker written"));
    }

    #[test]
    fn write_free_machine_is_valid() {
        assert!(validate(&two_state_write_free()).is_empty());
    }

    #[test]
    fn end_marker_modification_and_bad_states() {
        let mut b = LaBuilder::new(['a']);
        let q = b.state("q");
        b.rule(q, RightEnd, q, Input('a'), Dir::Left);
        b.keep(q, Input('a'), 7, Dir::Right);
        b.initial(3).accept(9);
        let kinds: Vec<_> = validate(&b.build()).into_iter().map(|d| d.kind).collect();
        assert!(kinds.contains(&DiagnosticKind::EndMarkerModified));
        assert!(kinds.contains(&DiagnosticKind::StateOutOfRange));
        assert!(kinds.contains(&DiagnosticKind::InitialStateMissing));
        assert!(kinds.contains(&DiagnosticKind::FinalStateMissing));
    }

    #[test]
    fn marked_letter_needs_input_base() {
        let mut b = LaBuilder::new(['a']);
        let q = b.state("q");
        b.rule(q, Input('a'), q, Marked('z'), Dir::Right);
        let kinds: Vec<_> = validate(&b.build()).into_iter().map(|d| d.kind).collect();
        assert_eq!(kinds, vec![DiagnosticKind::MarkedLetterNotInput]);
    }

    #[test]
    fn write_free_is_not_once_marking() {
        let p = classify(&two_state_write_free()).unwrap();
        assert!(p.write_free);
        assert!(!p.structurally_once_marking);
        assert!(p.deterministic);
    }

    #[test]
    fn classify_rejects_invalid() {
        let mut b = LaBuilder::new(['a']);
        let q = b.state("q");
        b.rule(q, Input('a'), q, RightEnd, Dir::Right);
        assert!(matches!(classify(&b.build()), Err(Error::InvalidMachine(_))));
    }

    #[test]
    fn once_marking_split_rejects_post_to_pre() {
        let mut b = LaBuilder::new(['a']);
        let (p, q) = (b.state("p"), b.state("q"));
        b.rule(p, Input('a'), q, Marked('a'), Dir::Right);
        b.keep(q, RightEnd, p, Dir::Left);
        assert!(once_marking_split(&b.build()).is_none());
    }

    #[test]
    fn once_marking_split_found() {
        let mut b = LaBuilder::new(['a']);
        let (p, q, r) = (b.state("p"), b.state("q"), b.state("r"));
        b.keep(p, Input('a'), p, Dir::Right);
        b.keep(p, RightEnd, r, Dir::Left);
        b.rule(r, Input('a'), q, Marked('a'), Dir::Left);
        b.keep(q, Input('a'), q, Dir::Left);
        let (pre, post) = once_marking_split(&b.build()).unwrap();
        assert_eq!(pre, vec![p, r]);
        assert_eq!(post, vec![q]);
    }

    #[test]
    fn sweeping_detects_inner_reversal() {
        let mut b = LaBuilder::new(['a']);
        let (p, q) = (b.state("p"), b.state("q"));
        b.keep(p, Input('a'), q, Dir::Right);
        b.keep(q, Input('a'), p, Dir::Left);
        assert!(!is_syntactically_sweeping(&b.build()));
        let mut b = LaBuilder::new(['a']);
        let (p, q) = (b.state("p"), b.state("q"));
        b.keep(p, Input('a'), p, Dir::Right);
        b.keep(p, RightEnd, q, Dir::Left);
        b.keep(q, Input('a'), q, Dir::Left);
        b.keep(q, LeftEnd, p, Dir::Right);
        assert!(is_syntactically_sweeping(&b.build()));
    }
}
