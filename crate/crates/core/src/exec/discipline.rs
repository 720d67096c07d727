//! Runtime checks of the marking disciplines over all computations on a word.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::explore::{ExploreOptions, Graph};
use super::{initial_raw, Raw, Trace};
use crate::error::Result;
use crate::machine::{LimitedAutomaton, StateId};
use crate::symbol::TapeSymbol;
use crate::validate::ensure_valid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Discipline {
    /// At most one cell is ever rewritten, and only by marking it; accepting
    /// computations mark exactly one cell.
    OnceMarking,
    /// Every first visit to an input cell marks it.
    AlwaysMarking,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViolationKind {
    NonMarkingRewrite,
    SecondMarking,
    AcceptedWithoutMarking,
    FirstVisitNotMarked,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisciplineViolation {
    pub kind: ViolationKind,
    /// Computation from the initial configuration up to and including the
    /// offending step.
    pub witness: Trace,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisciplineReport {
    pub discipline: Discipline,
    pub explored: usize,
    pub violation: Option<DisciplineViolation>,
}

impl DisciplineReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

fn changed_cells(c: &Raw, original: &[u16]) -> usize {
    c.tape.iter().zip(original).filter(|(a, b)| a != b).count()
}

/// Explores every computation of `la` on `word` (breadth-first, so the
/// witness of a violation is as short as possible).
pub fn verify_marking_discipline(la: &LimitedAutomaton, word: &str, discipline: Discipline) -> Result<DisciplineReport> {
    ensure_valid(la)?;
    let root = initial_raw(la, word)?;
    let original = root.tape.clone();
    let syms = la.work_alphabet();
    let mut graph = Graph::new(root, ExploreOptions::default().max_configurations);
    let mut frontier = VecDeque::from([0usize]);
    let mut succ = Vec::new();

    let report = |graph: &Graph, violation| DisciplineReport {
        discipline,
        explored: graph.nodes.len(),
        violation,
    };

    while let Some(id) = frontier.pop_front() {
        let node = graph.nodes[id].clone();
        let h = node.head as usize;
        let inner = h >= 1 && h + 1 < node.tape.len();
        let fresh = inner && h > node.reach as usize;
        let read = syms[node.tape[h] as usize];
        succ.clear();
        node.successors(la, &mut succ);
        for (next, m) in succ.drain(..) {
            let kind = match discipline {
                Discipline::OnceMarking => {
                    if m.write != read && read.marked() != Some(m.write) {
                        Some(ViolationKind::NonMarkingRewrite)
                    } else if m.write != read && changed_cells(&node, &original) >= 1 {
                        Some(ViolationKind::SecondMarking)
                    } else if next.is_terminal()
                        && la.is_final(next.state as StateId)
                        && changed_cells(&next, &original) != 1
                    {
                        Some(ViolationKind::AcceptedWithoutMarking)
                    } else {
                        None
                    }
                }
                Discipline::AlwaysMarking => match read {
                    TapeSymbol::Input(_) if fresh && read.marked() != Some(m.write) => {
                        Some(ViolationKind::FirstVisitNotMarked)
                    }
                    _ => None,
                },
            };
            if let Some(kind) = kind {
                let witness = graph.trace_to(la, id, Some(&next));
                return Ok(report(&graph, Some(DisciplineViolation { kind, witness })));
            }
            if next.is_terminal() {
                continue;
            }
            if let Some(nid) = graph.insert(next, id)? {
                frontier.push_back(nid);
            }
        }
    }
    Ok(report(&graph, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::LaBuilder;
    use crate::symbol::Dir;
    use TapeSymbol::*;

    /// Marks every `a` it meets while sweeping right, then accepts.
    fn marks_all_as() -> LimitedAutomaton {
        let mut b = LaBuilder::new(['a', 'b']);
        let (q, f) = (b.state("q"), b.state("f"));
        b.rule(q, Input('a'), q, Marked('a'), Dir::Right);
        b.keep(q, Input('b'), q, Dir::Right);
        b.keep(q, RightEnd, f, Dir::Right);
        b.accept(f);
        b.build()
    }

    #[test]
    fn two_markings_are_caught_with_witness() {
        let la = marks_all_as();
        let r = verify_marking_discipline(&la, "aba", Discipline::OnceMarking).unwrap();
        let v = r.violation.unwrap();
        assert_eq!(v.kind, ViolationKind::SecondMarking);
        // the witness ends with the second marking applied
        let last = v.witness.last().unwrap();
        assert_eq!(last.tape[1], Marked('a'));
        assert_eq!(last.tape[3], Marked('a'));
        assert!(verify_marking_discipline(&la, "ab", Discipline::OnceMarking).unwrap().holds());
    }

    #[test]
    fn unmarked_first_visit_is_caught() {
        let r = verify_marking_discipline(&marks_all_as(), "ab", Discipline::AlwaysMarking).unwrap();
        assert_eq!(r.violation.unwrap().kind, ViolationKind::FirstVisitNotMarked);
        assert!(verify_marking_discipline(&marks_all_as(), "aa", Discipline::AlwaysMarking).unwrap().holds());
    }

    #[test]
    fn acceptance_without_marking_is_caught() {
        let r = verify_marking_discipline(&marks_all_as(), "bb", Discipline::OnceMarking).unwrap();
        assert_eq!(r.violation.unwrap().kind, ViolationKind::AcceptedWithoutMarking);
    }

    #[test]
    fn work_symbol_write_is_not_a_marking() {
        let mut b = LaBuilder::new(['a']);
        let q = b.state("q");
        b.rule(q, Input('a'), q, Work('X'), Dir::Right);
        let r = verify_marking_discipline(&b.build(), "a", Discipline::OnceMarking).unwrap();
        assert_eq!(r.violation.unwrap().kind, ViolationKind::NonMarkingRewrite);
    }
}
