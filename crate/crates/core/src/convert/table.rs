//! Transition tables of frozen tape segments.
//!
//! The table of a segment `⊢z` holds the pairs `(p, q)` such that the
//! machine, entering the rightmost cell of the segment in state `p`, can
//! leave the segment to the right in state `q`. Cells of the segment are
//! frozen, so only transitions that write back the scanned symbol apply.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::machine::{LimitedAutomaton, StateId};
use crate::symbol::{Dir, TapeSymbol};

/// A relation over `Q`, stored as one bitset row per state. Equal relations
/// have equal representations, so tables can be hashed and compared.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransitionTable {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl TransitionTable {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        TransitionTable { n, words, bits: vec![0; n * words] }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (StateId, StateId)>) -> Self {
        let mut t = Self::empty(n);
        for (p, q) in pairs {
            t.insert(p, q);
        }
        t
    }

    pub fn num_states(&self) -> usize {
        self.n
    }

    pub fn contains(&self, p: StateId, q: StateId) -> bool {
        self.bits[p * self.words + q / 64] >> (q % 64) & 1 == 1
    }

    /// Adds `(p, q)`; returns whether it was new.
    pub fn insert(&mut self, p: StateId, q: StateId) -> bool {
        let w = &mut self.bits[p * self.words + q / 64];
        let bit = 1u64 << (q % 64);
        let new = *w & bit == 0;
        *w |= bit;
        new
    }

    /// The states `q` with `(p, q)` in the relation, ascending.
    pub fn row(&self, p: StateId) -> impl Iterator<Item = StateId> + '_ {
        let words = &self.bits[p * self.words..(p + 1) * self.words];
        words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    /// Ors row `src` of `other` into row `dst` of `self`; returns whether
    /// anything changed.
    fn absorb_row(&mut self, dst: StateId, other: &TransitionTable, src: StateId) -> bool {
        let mut changed = false;
        for i in 0..self.words {
            let a = &mut self.bits[dst * self.words + i];
            let b = other.bits[src * other.words + i];
            if b & !*a != 0 {
                *a |= b;
                changed = true;
            }
        }
        changed
    }

    /// All pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(StateId, StateId)> {
        (0..self.n).flat_map(|p| self.row(p).map(move |q| (p, q))).collect()
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }
}

impl fmt::Debug for TransitionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// A state of the one-way simulation: the table of the frozen part left of
/// the head and the state reaching the current cell for the first time.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrontierState {
    pub table: TransitionTable,
    pub arrival: StateId,
}

/// Table of the segment holding only `⊢`.
pub fn base_table(la: &LimitedAutomaton) -> TransitionTable {
    let mut t = TransitionTable::empty(la.num_states());
    for p in 0..la.num_states() {
        for m in la.moves(p, TapeSymbol::LeftEnd) {
            if m.dir == Dir::Right && m.write == TapeSymbol::LeftEnd {
                t.insert(p, m.to);
            }
        }
    }
    t
}

/// Table of the segment `τ` extended on the right by a frozen cell holding
/// `x`, computed as a least fixpoint.
pub fn extend_table(la: &LimitedAutomaton, tau: &TransitionTable, x: TapeSymbol) -> Result<TransitionTable> {
    if x.is_end_marker() {
        return Err(Error::EndMarkerSymbol(x));
    }
    let n = la.num_states();
    let mut ext = TransitionTable::empty(n);
    // jump[p]: states in which the head comes back onto x after bouncing
    // into the segment
    let mut jump = TransitionTable::empty(n);
    for p in 0..n {
        for m in la.moves(p, x).iter().filter(|m| m.write == x) {
            match m.dir {
                Dir::Right => {
                    ext.insert(p, m.to);
                }
                Dir::Left => {
                    jump.absorb_row(p, tau, m.to);
                }
            }
        }
    }
    let targets: Vec<Vec<StateId>> = (0..n).map(|p| jump.row(p).collect()).collect();
    loop {
        let mut changed = false;
        let snapshot = ext.clone();
        for (p, qs) in targets.iter().enumerate() {
            for &q in qs {
                changed |= ext.absorb_row(p, &snapshot, q);
            }
        }
        if !changed {
            return Ok(ext);
        }
    }
}

/// Whether the machine, standing on `⊣` in state `q` with the frozen tape to
/// the left summarized by `tau`, can move past `⊣` into a final state.
pub fn accept_closure(la: &LimitedAutomaton, tau: &TransitionTable, q: StateId) -> bool {
    let n = la.num_states();
    let mut seen = vec![false; n];
    seen[q] = true;
    let mut stack = vec![q];
    while let Some(p) = stack.pop() {
        for m in la.moves(p, TapeSymbol::RightEnd) {
            if m.write != TapeSymbol::RightEnd {
                continue;
            }
            match m.dir {
                Dir::Right if la.is_final(m.to) => return true,
                Dir::Right => {}
                Dir::Left => {
                    for r in tau.row(m.to) {
                        if !seen[r] {
                            seen[r] = true;
                            stack.push(r);
                        }
                    }
                }
            }
        }
    }
    false
}

/// Interned tables with memoized extension and acceptance; one per
/// conversion call.
pub(crate) struct TableArena<'a> {
    la: &'a LimitedAutomaton,
    pub tables: Vec<TransitionTable>,
    index: HashMap<TransitionTable, usize>,
    extensions: HashMap<(usize, TapeSymbol), usize>,
    closures: HashMap<(usize, StateId), bool>,
}

impl<'a> TableArena<'a> {
    pub fn new(la: &'a LimitedAutomaton) -> Self {
        TableArena {
            la,
            tables: Vec::new(),
            index: HashMap::new(),
            extensions: HashMap::new(),
            closures: HashMap::new(),
        }
    }

    pub fn intern(&mut self, t: TransitionTable) -> usize {
        if let Some(&id) = self.index.get(&t) {
            return id;
        }
        let id = self.tables.len();
        self.index.insert(t.clone(), id);
        self.tables.push(t);
        id
    }

    pub fn extend(&mut self, id: usize, x: TapeSymbol) -> Result<usize> {
        if let Some(&e) = self.extensions.get(&(id, x)) {
            return Ok(e);
        }
        let t = extend_table(self.la, &self.tables[id], x)?;
        let e = self.intern(t);
        self.extensions.insert((id, x), e);
        Ok(e)
    }

    pub fn accepts(&mut self, id: usize, q: StateId) -> bool {
        let la = self.la;
        let tables = &self.tables;
        *self.closures.entry((id, q)).or_insert_with(|| accept_closure(la, &tables[id], q))
    }

    /// Successors of the frontier state `(id, q)` on input letter `a`, as
    /// `(table, arrival)` pairs.
    pub fn step(&mut self, id: usize, q: StateId, a: char, out: &mut Vec<(usize, StateId)>) -> Result<()> {
        let la = self.la;
        for m in la.moves(q, TapeSymbol::Input(a)) {
            let next = self.extend(id, m.write)?;
            match m.dir {
                Dir::Right => out.push((next, m.to)),
                Dir::Left => {
                    let (tau, ext) = (&self.tables[id], &self.tables[next]);
                    for back in tau.row(m.to) {
                        out.extend(ext.row(back).map(|r| (next, r)));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::LaBuilder;
    use TapeSymbol::*;

    #[test]
    fn bitset_rows() {
        let mut t = TransitionTable::empty(70);
        assert!(t.insert(3, 65));
        assert!(!t.insert(3, 65));
        t.insert(3, 1);
        assert_eq!(t.row(3).collect::<Vec<_>>(), vec![1, 65]);
        assert_eq!(t.len(), 2);
        assert_eq!(t, TransitionTable::from_pairs(70, [(3, 65), (3, 1)]));
    }

    #[test]
    fn base_table_cases() {
        let mut b = LaBuilder::new(['a']);
        let (q0, q1) = (b.state("q0"), b.state("q1"));
        b.keep(q0, LeftEnd, q1, Dir::Right);
        b.keep(q1, LeftEnd, q0, Dir::Left);
        assert_eq!(base_table(&b.build()).pairs(), vec![(q0, q1)]);
        let empty = LaBuilder::new(['a']).build();
        assert!(base_table(&empty).is_empty());
    }

    #[test]
    fn extend_without_bounces_and_end_marker_error() {
        let mut b = LaBuilder::new(['a']);
        let (p, q) = (b.state("p"), b.state("q"));
        b.keep(p, Marked('a'), q, Dir::Right);
        b.keep(q, Marked('a'), q, Dir::Left);
        let la = b.build();
        let tau = TransitionTable::empty(2);
        assert_eq!(extend_table(&la, &tau, Marked('a')).unwrap().pairs(), vec![(p, q)]);
        assert_eq!(extend_table(&la, &tau, RightEnd), Err(Error::EndMarkerSymbol(RightEnd)));
    }

    #[test]
    fn bounce_through_segment() {
        // p on a goes left as r; the segment sends r back as s; s on a exits
        let mut b = LaBuilder::new(['a']);
        let (p, r, s, t) = (b.state("p"), b.state("r"), b.state("s"), b.state("t"));
        b.keep(p, Input('a'), r, Dir::Left);
        b.keep(s, Input('a'), t, Dir::Right);
        let la = b.build();
        let tau = TransitionTable::from_pairs(4, [(r, s)]);
        let e = extend_table(&la, &tau, Input('a')).unwrap();
        assert_eq!(e.pairs(), vec![(p, t), (s, t)]);
    }

    #[test]
    fn accept_closure_cases() {
        let mut b = LaBuilder::new(['a']);
        let (q, u, v, f) = (b.state("q"), b.state("u"), b.state("v"), b.state("f"));
        b.keep(q, RightEnd, u, Dir::Left);
        b.keep(v, RightEnd, f, Dir::Right);
        b.accept(f);
        let la = b.build();
        assert!(accept_closure(&la, &TransitionTable::from_pairs(4, [(u, v)]), q));
        assert!(!accept_closure(&la, &TransitionTable::empty(4), q));
        assert!(accept_closure(&la, &TransitionTable::empty(4), v));
    }
}
