//! Classical one-way finite automata.

use crate::error::{Error, Result};
use crate::machine::StateId;

fn letter_index(alphabet: &[char], c: char) -> Result<usize> {
    alphabet.binary_search(&c).map_err(|_| Error::LetterNotInAlphabet(c))
}

fn normalize(alphabet: impl IntoIterator<Item = char>) -> Vec<char> {
    let mut a: Vec<char> = alphabet.into_iter().collect();
    a.sort_unstable();
    a.dedup();
    a
}

/// One-way nondeterministic automaton with a single initial state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneWayNfa {
    alphabet: Vec<char>,
    names: Vec<String>,
    delta: Vec<Vec<StateId>>,
    initial: StateId,
    finals: Vec<bool>,
}

impl OneWayNfa {
    pub fn new(alphabet: impl IntoIterator<Item = char>) -> Self {
        OneWayNfa {
            alphabet: normalize(alphabet),
            names: Vec::new(),
            delta: Vec::new(),
            initial: 0,
            finals: Vec::new(),
        }
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> StateId {
        self.names.push(name.into());
        self.finals.push(false);
        self.delta.extend(std::iter::repeat_n(Vec::new(), self.alphabet.len()));
        self.names.len() - 1
    }

    pub fn add_transition(&mut self, from: StateId, letter: usize, to: StateId) {
        let k = self.alphabet.len();
        let cell = &mut self.delta[from * k + letter];
        if let Err(pos) = cell.binary_search(&to) {
            cell.insert(pos, to);
        }
    }

    pub fn set_initial(&mut self, q: StateId) {
        self.initial = q;
    }

    pub fn set_final(&mut self, q: StateId, is_final: bool) {
        self.finals[q] = is_final;
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.names[q]
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn successors(&self, q: StateId, letter: usize) -> &[StateId] {
        &self.delta[q * self.alphabet.len() + letter]
    }

    pub fn letter_index(&self, c: char) -> Result<usize> {
        letter_index(&self.alphabet, c)
    }

    /// Every transition as `(from, letter index, to)`.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, usize, StateId)> + '_ {
        let k = self.alphabet.len();
        self.delta
            .iter()
            .enumerate()
            .flat_map(move |(i, ts)| ts.iter().map(move |&t| (i / k, i % k, t)))
    }

    pub fn is_deterministic(&self) -> bool {
        self.delta.iter().all(|t| t.len() <= 1)
    }

    pub fn accepts(&self, word: &str) -> Result<bool> {
        let n = self.num_states();
        if n == 0 {
            return Ok(false);
        }
        let mut current = vec![false; n];
        current[self.initial] = true;
        for c in word.chars() {
            let a = self.letter_index(c)?;
            let mut next = vec![false; n];
            for q in (0..n).filter(|&q| current[q]) {
                for &r in self.successors(q, a) {
                    next[r] = true;
                }
            }
            current = next;
        }
        Ok((0..n).any(|q| current[q] && self.finals[q]))
    }
}

/// One-way deterministic automaton; the transition function may be partial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneWayDfa {
    alphabet: Vec<char>,
    names: Vec<String>,
    delta: Vec<Option<StateId>>,
    initial: StateId,
    finals: Vec<bool>,
}

impl OneWayDfa {
    pub fn new(alphabet: impl IntoIterator<Item = char>) -> Self {
        OneWayDfa {
            alphabet: normalize(alphabet),
            names: Vec::new(),
            delta: Vec::new(),
            initial: 0,
            finals: Vec::new(),
        }
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> StateId {
        self.names.push(name.into());
        self.finals.push(false);
        self.delta.extend(std::iter::repeat_n(None, self.alphabet.len()));
        self.names.len() - 1
    }

    pub fn set_transition(&mut self, from: StateId, letter: usize, to: StateId) {
        let k = self.alphabet.len();
        self.delta[from * k + letter] = Some(to);
    }

    pub fn set_initial(&mut self, q: StateId) {
        self.initial = q;
    }

    pub fn set_final(&mut self, q: StateId, is_final: bool) {
        self.finals[q] = is_final;
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.names[q]
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn next(&self, q: StateId, letter: usize) -> Option<StateId> {
        self.delta[q * self.alphabet.len() + letter]
    }

    pub fn letter_index(&self, c: char) -> Result<usize> {
        letter_index(&self.alphabet, c)
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, usize, StateId)> + '_ {
        let k = self.alphabet.len();
        self.delta
            .iter()
            .enumerate()
            .filter_map(move |(i, t)| t.map(|t| (i / k, i % k, t)))
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(Option::is_some)
    }

    /// Runs the automaton; `None` once the run falls off a partial function.
    pub fn run(&self, word: &str) -> Result<Option<StateId>> {
        if self.num_states() == 0 {
            return Ok(None);
        }
        let mut q = Some(self.initial);
        for c in word.chars() {
            let a = self.letter_index(c)?;
            q = q.and_then(|q| self.next(q, a));
        }
        Ok(q)
    }

    pub fn accepts(&self, word: &str) -> Result<bool> {
        Ok(self.run(word)?.is_some_and(|q| self.finals[q]))
    }

    /// The same automaton with every missing transition sent to a fresh
    /// non-final sink. Already complete automata are returned unchanged.
    pub fn completed(&self) -> OneWayDfa {
        if self.is_complete() && self.num_states() > 0 {
            return self.clone();
        }
        let mut d = self.clone();
        let sink = d.add_state("sink");
        for slot in d.delta.iter_mut() {
            slot.get_or_insert(sink);
        }
        d
    }

    /// Views the automaton as an NFA with the same states.
    pub fn to_nfa(&self) -> OneWayNfa {
        let mut n = OneWayNfa::new(self.alphabet.iter().copied());
        for q in 0..self.num_states() {
            n.add_state(self.names[q].clone());
            n.set_final(q, self.finals[q]);
        }
        n.set_initial(self.initial);
        for (p, a, q) in self.transitions() {
            n.add_transition(p, a, q);
        }
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ends_with_a() -> OneWayNfa {
        let mut n = OneWayNfa::new(['a', 'b']);
        let (p, q) = (n.add_state("p"), n.add_state("q"));
        n.add_transition(p, 0, p);
        n.add_transition(p, 1, p);
        n.add_transition(p, 0, q);
        n.set_final(q, true);
        n
    }

    #[test]
    fn nfa_runs() {
        let n = ends_with_a();
        assert!(n.accepts("ba").unwrap());
        assert!(!n.accepts("ab").unwrap());
        assert!(!n.accepts("").unwrap());
        assert!(n.accepts("c").is_err());
        assert!(!n.is_deterministic());
    }

    #[test]
    fn completion_adds_sink_once() {
        let mut d = OneWayDfa::new(['a']);
        let q = d.add_state("q");
        d.set_final(q, true);
        let c = d.completed();
        assert_eq!(c.num_states(), 2);
        assert!(c.is_complete());
        assert!(c.accepts("").unwrap());
        assert!(!c.accepts("a").unwrap());
        assert_eq!(c.completed(), c);
    }
}
