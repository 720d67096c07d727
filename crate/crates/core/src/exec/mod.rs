//! Exact semantics of 1-limited automata.
//!
//! A configuration is the state, the head position and the whole tape. The
//! tape has `|w| + 2` cells: cell 0 holds `⊢`, cell `|w| + 1` holds `⊣`.
//! Position `|w| + 2` is the terminal position reached by moving right from
//! `⊣`; a run accepts when it gets there in a final state.
//!
//! Each inner cell may be rewritten only during its first visit. Since the
//! head starts on cell 1 and moves one cell at a time, the visited inner
//! cells always form a prefix `1..=reach`; the engine stores that bound
//! instead of a flag per cell.

mod discipline;
mod explore;

pub use discipline::{verify_marking_discipline, Discipline, DisciplineReport, DisciplineViolation, ViolationKind};
pub use explore::{
    accepts, decide_acceptance, decide_acceptance_with, sweeping_on, trace_deterministic, DeterministicRun, Runner,
    ExploreOptions, LoopKind, LoopReport, Outcome, RunVerdict, SearchOrder,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::machine::{LimitedAutomaton, Move, StateId};
use crate::symbol::{Dir, TapeSymbol};

/// A node of the computation graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Configuration {
    pub state: StateId,
    pub head: usize,
    pub tape: Vec<TapeSymbol>,
    /// `true` for inner cells that have not been visited yet. End-marker
    /// cells can never be rewritten and are always reported as frozen.
    pub first_visit: Vec<bool>,
}

impl Configuration {
    pub fn is_terminal(&self) -> bool {
        self.head == self.tape.len()
    }

    pub fn word_len(&self) -> usize {
        self.tape.len() - 2
    }
}

/// An ordered list of configurations, each obtained from the previous one by
/// a single transition.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub steps: Vec<Configuration>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn last(&self) -> Option<&Configuration> {
        self.steps.last()
    }

    /// Whether the trace ends past the right end-marker in a final state.
    pub fn is_accepting(&self, la: &LimitedAutomaton) -> bool {
        self.last().is_some_and(|c| c.is_terminal() && la.is_final(c.state))
    }
}

/// Compact configuration used by the search engines. Tape cells hold
/// indices into the machine's work alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Raw {
    pub state: u32,
    pub head: u32,
    pub reach: u32,
    pub tape: Box<[u16]>,
}

impl Raw {
    pub fn is_terminal(&self) -> bool {
        self.head as usize == self.tape.len()
    }

    fn is_fresh_cell(&self, pos: usize) -> bool {
        pos >= 1 && pos + 1 < self.tape.len() && pos > self.reach as usize
    }

    pub fn to_public(&self, la: &LimitedAutomaton) -> Configuration {
        let syms = la.work_alphabet();
        Configuration {
            state: self.state as StateId,
            head: self.head as usize,
            tape: self.tape.iter().map(|&i| syms[i as usize]).collect(),
            first_visit: (0..self.tape.len()).map(|p| self.is_fresh_cell(p)).collect(),
        }
    }

    pub fn from_public(la: &LimitedAutomaton, c: &Configuration) -> Result<Raw> {
        let tape = c
            .tape
            .iter()
            .map(|&s| la.symbol_index(s).map(|i| i as u16))
            .collect::<Option<Box<[u16]>>>()
            .ok_or_else(|| Error::InvalidParameter("configuration uses symbols outside the work alphabet".into()))?;
        let reach = (1..tape.len().saturating_sub(1))
            .take_while(|&p| !c.first_visit.get(p).copied().unwrap_or(true))
            .last()
            .unwrap_or(0);
        Ok(Raw {
            state: c.state as u32,
            head: c.head as u32,
            reach: reach as u32,
            tape,
        })
    }

    /// Appends every legal successor together with the move that produced it.
    pub fn successors(&self, la: &LimitedAutomaton, out: &mut Vec<(Raw, Move)>) {
        let h = self.head as usize;
        if h >= self.tape.len() {
            return;
        }
        let sym = self.tape[h];
        let fresh = self.is_fresh_cell(h);
        for m in la.moves_at(self.state as StateId, sym as usize) {
            if !fresh && m.write_idx != sym {
                continue;
            }
            let head = match m.dir {
                Dir::Left if h == 0 => continue,
                Dir::Left => h - 1,
                Dir::Right => h + 1,
            };
            let tape = if m.write_idx != sym {
                let mut t = self.tape.clone();
                t[h] = m.write_idx;
                t
            } else {
                self.tape.clone()
            };
            out.push((
                Raw {
                    state: m.to as u32,
                    head: head as u32,
                    reach: if fresh { h as u32 } else { self.reach },
                    tape,
                },
                *m,
            ));
        }
    }
}

/// Tape contents `⊢ w ⊣` as work-alphabet indices.
pub(crate) fn encode_word(la: &LimitedAutomaton, word: &str) -> Result<Box<[u16]>> {
    let idx = |s: TapeSymbol| la.symbol_index(s).expect("end-markers and input letters are in the work alphabet") as u16;
    let mut tape = Vec::with_capacity(word.len() + 2);
    tape.push(idx(TapeSymbol::LeftEnd));
    for c in word.chars() {
        if !la.has_letter(c) {
            return Err(Error::LetterNotInAlphabet(c));
        }
        tape.push(idx(TapeSymbol::Input(c)));
    }
    tape.push(idx(TapeSymbol::RightEnd));
    Ok(tape.into_boxed_slice())
}

pub(crate) fn initial_raw(la: &LimitedAutomaton, word: &str) -> Result<Raw> {
    Ok(Raw {
        state: la.initial() as u32,
        head: 1,
        reach: 0,
        tape: encode_word(la, word)?,
    })
}

/// The starting configuration on `word`: initial state, head on cell 1.
pub fn initial_configuration(la: &LimitedAutomaton, word: &str) -> Result<Configuration> {
    Ok(initial_raw(la, word)?.to_public(la))
}

/// All configurations reachable from `c` in one step. Transitions that would
/// rewrite a frozen cell or move left of `⊢` yield nothing.
pub fn step_successors(la: &LimitedAutomaton, c: &Configuration) -> Result<Vec<Configuration>> {
    let raw = Raw::from_public(la, c)?;
    let mut out = Vec::new();
    raw.successors(la, &mut out);
    Ok(out.into_iter().map(|(r, _)| r.to_public(la)).collect())
}
