//! The 1-limited automaton data model.
//!
//! A [`LimitedAutomaton`] is stored in canonical form: alphabets, transitions
//! and final states are sorted and deduplicated, so two machines built from
//! the same rules in any order compare equal. Construction never fails;
//! well-formedness is checked separately by [`crate::validate`], which lets
//! malformed machines be inspected and reported instead of rejected outright.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::symbol::{Dir, TapeSymbol};

pub type StateId = usize;

/// One rule of the transition relation: in `from`, scanning `read`, go to
/// `to`, overwrite the cell with `write` and move in direction `dir`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transition {
    pub from: StateId,
    pub read: TapeSymbol,
    pub to: StateId,
    pub write: TapeSymbol,
    pub dir: Dir,
}

impl Transition {
    pub fn rewrites(&self) -> bool {
        self.read != self.write
    }

    pub fn is_marking(&self) -> bool {
        self.read.marked() == Some(self.write)
    }
}

/// The target of a transition as seen from a `(state, symbol)` key.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub to: StateId,
    pub write: TapeSymbol,
    pub dir: Dir,
    pub(crate) write_idx: u16,
}

#[derive(Clone, Debug)]
pub struct LimitedAutomaton {
    states: Vec<String>,
    input_alphabet: Vec<char>,
    work_alphabet: Vec<TapeSymbol>,
    transitions: Vec<Transition>,
    initial: StateId,
    finals: Vec<StateId>,
    // derived, dense [state * |work| + symbol]
    table: Vec<Vec<Move>>,
    final_flags: Vec<bool>,
}

impl PartialEq for LimitedAutomaton {
    fn eq(&self, other: &Self) -> bool {
        self.states == other.states
            && self.input_alphabet == other.input_alphabet
            && self.work_alphabet == other.work_alphabet
            && self.transitions == other.transitions
            && self.initial == other.initial
            && self.finals == other.finals
    }
}

impl Eq for LimitedAutomaton {}

impl LimitedAutomaton {
    /// Assembles a machine in canonical form. The work alphabet always
    /// receives the input letters and both end-markers in addition to
    /// `extra_work`.
    pub fn new(
        states: Vec<String>,
        input_alphabet: impl IntoIterator<Item = char>,
        extra_work: impl IntoIterator<Item = TapeSymbol>,
        transitions: impl IntoIterator<Item = Transition>,
        initial: StateId,
        finals: impl IntoIterator<Item = StateId>,
    ) -> Self {
        let mut input_alphabet: Vec<char> = input_alphabet.into_iter().collect();
        input_alphabet.sort_unstable();
        input_alphabet.dedup();

        let mut work_alphabet: Vec<TapeSymbol> = extra_work
            .into_iter()
            .chain(input_alphabet.iter().map(|&c| TapeSymbol::Input(c)))
            .chain([TapeSymbol::LeftEnd, TapeSymbol::RightEnd])
            .collect();
        work_alphabet.sort_unstable();
        work_alphabet.dedup();

        let mut transitions: Vec<Transition> = transitions.into_iter().collect();
        transitions.sort_unstable();
        transitions.dedup();

        let mut finals: Vec<StateId> = finals.into_iter().collect();
        finals.sort_unstable();
        finals.dedup();

        let mut la = LimitedAutomaton {
            states,
            input_alphabet,
            work_alphabet,
            transitions,
            initial,
            finals,
            table: Vec::new(),
            final_flags: Vec::new(),
        };
        la.reindex();
        la
    }

    fn reindex(&mut self) {
        let n = self.states.len();
        let k = self.work_alphabet.len();
        let mut table = vec![Vec::new(); n * k];
        for t in &self.transitions {
            let (Some(r), Some(w)) = (self.symbol_index(t.read), self.symbol_index(t.write)) else {
                continue;
            };
            if t.from >= n || t.to >= n {
                continue;
            }
            table[t.from * k + r].push(Move {
                to: t.to,
                write: t.write,
                dir: t.dir,
                write_idx: w as u16,
            });
        }
        self.table = table;
        let mut flags = vec![false; n];
        for &f in &self.finals {
            if f < n {
                flags[f] = true;
            }
        }
        self.final_flags = flags;
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.states[q]
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name)
    }

    pub fn input_alphabet(&self) -> &[char] {
        &self.input_alphabet
    }

    pub fn work_alphabet(&self) -> &[TapeSymbol] {
        &self.work_alphabet
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn finals(&self) -> &[StateId] {
        &self.finals
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.final_flags.get(q).copied().unwrap_or(false)
    }

    pub fn symbol_index(&self, sym: TapeSymbol) -> Option<usize> {
        self.work_alphabet.binary_search(&sym).ok()
    }

    pub fn has_letter(&self, c: char) -> bool {
        self.input_alphabet.binary_search(&c).is_ok()
    }

    /// All moves available in state `q` while scanning `sym`.
    pub fn moves(&self, q: StateId, sym: TapeSymbol) -> &[Move] {
        match self.symbol_index(sym) {
            Some(i) => self.moves_at(q, i),
            None => &[],
        }
    }

    pub(crate) fn moves_at(&self, q: StateId, sym_idx: usize) -> &[Move] {
        self.table
            .get(q * self.work_alphabet.len() + sym_idx)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// The unique move of a deterministic machine, if any.
    pub fn single_move(&self, q: StateId, sym: TapeSymbol) -> Option<Move> {
        self.moves(q, sym).first().copied()
    }

    /// Number of (state, symbol) keys with at least one transition.
    pub fn defined_keys(&self) -> usize {
        self.table.iter().filter(|m| !m.is_empty()).count()
    }
}

impl fmt::Display for LimitedAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::serialize_la(self))
    }
}

/// Incremental construction of a [`LimitedAutomaton`] with named states.
#[derive(Clone, Debug, Default)]
pub struct LaBuilder {
    states: Vec<String>,
    input: Vec<char>,
    work: Vec<TapeSymbol>,
    transitions: Vec<Transition>,
    initial: StateId,
    finals: Vec<StateId>,
}

impl LaBuilder {
    pub fn new(input: impl IntoIterator<Item = char>) -> Self {
        LaBuilder {
            input: input.into_iter().collect(),
            ..Default::default()
        }
    }

    /// Returns the id of the state called `name`, creating it on first use.
    pub fn state(&mut self, name: impl Into<String>) -> StateId {
        let name = name.into();
        if let Some(i) = self.states.iter().position(|s| *s == name) {
            return i;
        }
        self.states.push(name);
        self.states.len() - 1
    }

    pub fn work_symbol(&mut self, sym: TapeSymbol) -> &mut Self {
        self.work.push(sym);
        self
    }

    pub fn rule(&mut self, from: StateId, read: TapeSymbol, to: StateId, write: TapeSymbol, dir: Dir) -> &mut Self {
        for s in [read, write] {
            if !s.is_end_marker() && !matches!(s, TapeSymbol::Input(_)) {
                self.work.push(s);
            }
        }
        self.transitions.push(Transition { from, read, to, write, dir });
        self
    }

    /// A rule that leaves the scanned symbol unchanged.
    pub fn keep(&mut self, from: StateId, read: TapeSymbol, to: StateId, dir: Dir) -> &mut Self {
        self.rule(from, read, to, read, dir)
    }

    pub fn initial(&mut self, q: StateId) -> &mut Self {
        self.initial = q;
        self
    }

    pub fn accept(&mut self, q: StateId) -> &mut Self {
        self.finals.push(q);
        self
    }

    pub fn build(&self) -> LimitedAutomaton {
        LimitedAutomaton::new(
            self.states.clone(),
            self.input.iter().copied(),
            self.work.iter().copied(),
            self.transitions.iter().copied(),
            self.initial,
            self.finals.iter().copied(),
        )
    }
}
