//! Deterministic once-marking machines compiled into write-free two-way DFAs.
//!
//! The compiled machine never writes. It simulates the original directly
//! until the marking would happen, then remembers the marking state `s` and
//! letter `σ` instead of writing. Afterwards, each time the simulation scans
//! an unmarked `σ`, it decides whether this is the marked cell by searching
//! backwards from configuration `(s, here)` for the initial configuration.
//! The search is a depth-first traversal of the predecessor tree that keeps
//! only the current node in its finite control, so it needs `O(n)` states
//! per carried state and record.
//!
//! A marking attempt on a cell that was already visited kills the original
//! computation. Before committing to a marking the compiled machine
//! therefore rewinds, replays the computation, and runs the same search at
//! every earlier visit to a `σ` cell.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::machine::{LimitedAutomaton, Move, StateId, Transition};
use crate::symbol::{Dir, TapeSymbol};
use crate::validate::{classify, ensure_valid};

/// State and letter of the marking step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MarkRecord {
    pub mark_state: StateId,
    pub mark_letter: char,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SearchContext {
    /// Deciding whether the scanned `σ` is the marked cell.
    After,
    /// Deciding whether the cell about to be marked was visited earlier.
    FreshCheck,
}

/// Position of the depth-first search relative to the node `(p, i)` being
/// expanded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SearchPhase {
    /// At `i + 1`, looking for a child that moved left into `p`.
    ProbeRight(StateId),
    /// Back at `i` after the right-hand children of `p`.
    BackFromRight(StateId),
    /// At `i - 1`, looking for a child that moved right into `p`.
    ProbeLeft(StateId),
    /// At `i`, every child of `p` explored.
    Exhausted(StateId),
    /// One cell left of a node in the initial state, testing for `⊢`.
    PeekInit,
    /// Back on a node in the initial state that is not the initial
    /// configuration.
    PeekReturn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComposedState {
    Before(StateId),
    Rewind(MarkRecord),
    Verify(StateId, MarkRecord),
    After(StateId, MarkRecord),
    Search {
        context: SearchContext,
        carried: StateId,
        rec: MarkRecord,
        phase: SearchPhase,
    },
    Rollback {
        carried: StateId,
        rec: MarkRecord,
        sim: StateId,
    },
}

/// Renders a composed state name; `names` are the original state names.
struct Named<'a>(&'a ComposedState, &'a [String]);

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = |q: &StateId| &self.1[*q];
        let r = |rec: &MarkRecord| format!("{};{}", n(&rec.mark_state), rec.mark_letter);
        match self.0 {
            ComposedState::Before(q) => write!(f, "B({})", n(q)),
            ComposedState::Rewind(rec) => write!(f, "W({})", r(rec)),
            ComposedState::Verify(q, rec) => write!(f, "V({};{})", n(q), r(rec)),
            ComposedState::After(q, rec) => write!(f, "A({};{})", n(q), r(rec)),
            ComposedState::Rollback { carried, rec, sim } => write!(f, "R({};{};{})", n(carried), r(rec), n(sim)),
            ComposedState::Search { context, carried, rec, phase } => {
                let ctx = match context {
                    SearchContext::After => "S",
                    SearchContext::FreshCheck => "F",
                };
                let phase = match phase {
                    SearchPhase::ProbeRight(p) => format!("pr:{}", n(p)),
                    SearchPhase::BackFromRight(p) => format!("br:{}", n(p)),
                    SearchPhase::ProbeLeft(p) => format!("pl:{}", n(p)),
                    SearchPhase::Exhausted(p) => format!("ex:{}", n(p)),
                    SearchPhase::PeekInit => "pi".into(),
                    SearchPhase::PeekReturn => "pu".into(),
                };
                write!(f, "{ctx}({};{};{phase})", n(carried), r(rec))
            }
        }
    }
}

/// Outcome of one search step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SearchStep {
    Move(SearchPhase, Dir),
    /// The initial configuration was found; the head is on `⊢`.
    Found,
    /// The tree is exhausted; the head is back on the root cell.
    Exhausted,
    /// The machine has no move here (cannot happen on a tree node).
    Stuck,
}

/// Predecessor tables of a deterministic machine, restricted to
/// symbol-preserving transitions.
struct Inverse<'a> {
    la: &'a LimitedAutomaton,
    // (scanned, direction, target) -> ascending sources
    preds: HashMap<(TapeSymbol, Dir, StateId), Vec<StateId>>,
}

impl<'a> Inverse<'a> {
    fn new(la: &'a LimitedAutomaton) -> Self {
        let mut preds: HashMap<_, Vec<StateId>> = HashMap::new();
        for t in la.transitions() {
            if t.write == t.read {
                preds.entry((t.read, t.dir, t.to)).or_default().push(t.from);
            }
        }
        for v in preds.values_mut() {
            v.sort_unstable();
        }
        Inverse { la, preds }
    }

    fn delta(&self, q: StateId, sym: TapeSymbol) -> Option<Move> {
        self.la.single_move(q, sym)
    }

    fn sources(&self, sym: TapeSymbol, dir: Dir, to: StateId) -> &[StateId] {
        self.preds.get(&(sym, dir, to)).map_or(&[], Vec::as_slice)
    }

    /// Entering node `(p, here)` with `scanned` under the head.
    fn descend(&self, p: StateId, scanned: TapeSymbol) -> SearchStep {
        if p == self.la.initial() && scanned != TapeSymbol::LeftEnd {
            SearchStep::Move(SearchPhase::PeekInit, Dir::Left)
        } else {
            self.expand(p, scanned)
        }
    }

    fn expand(&self, p: StateId, scanned: TapeSymbol) -> SearchStep {
        if scanned != TapeSymbol::RightEnd {
            SearchStep::Move(SearchPhase::ProbeRight(p), Dir::Right)
        } else {
            SearchStep::Move(SearchPhase::ProbeLeft(p), Dir::Left)
        }
    }

    /// All children of node `(p, here)` are done; climb to its parent and
    /// continue with the next sibling.
    fn exhausted(&self, p: StateId, scanned: TapeSymbol) -> SearchStep {
        let Some(m) = self.delta(p, scanned) else {
            return SearchStep::Stuck;
        };
        if m.write != scanned {
            return SearchStep::Exhausted;
        }
        let siblings = self.sources(scanned, m.dir, m.to);
        if let Some(&next) = siblings.iter().find(|&&p2| p2 > p) {
            return self.descend(next, scanned);
        }
        match m.dir {
            Dir::Left => SearchStep::Move(SearchPhase::BackFromRight(m.to), Dir::Left),
            Dir::Right => SearchStep::Move(SearchPhase::Exhausted(m.to), Dir::Right),
        }
    }

    fn step(&self, phase: SearchPhase, scanned: TapeSymbol) -> SearchStep {
        match phase {
            SearchPhase::ProbeRight(p) => match self.sources(scanned, Dir::Left, p).first() {
                Some(&child) => self.descend(child, scanned),
                None => SearchStep::Move(SearchPhase::BackFromRight(p), Dir::Left),
            },
            SearchPhase::BackFromRight(p) if scanned != TapeSymbol::LeftEnd => {
                SearchStep::Move(SearchPhase::ProbeLeft(p), Dir::Left)
            }
            SearchPhase::BackFromRight(p) => self.exhausted(p, scanned),
            SearchPhase::ProbeLeft(p) => match self.sources(scanned, Dir::Right, p).first() {
                Some(&child) => self.descend(child, scanned),
                None => SearchStep::Move(SearchPhase::Exhausted(p), Dir::Right),
            },
            SearchPhase::Exhausted(p) => self.exhausted(p, scanned),
            SearchPhase::PeekInit if scanned == TapeSymbol::LeftEnd => SearchStep::Found,
            SearchPhase::PeekInit => SearchStep::Move(SearchPhase::PeekReturn, Dir::Right),
            SearchPhase::PeekReturn => self.expand(self.la.initial(), scanned),
        }
    }
}

/// Symbol-preserving predecessors of `q`: pairs `(p, d)` such that the
/// machine in `p` moves into `q` with direction `d` without changing the
/// scanned symbol. `right` and `left` are the symbols of the cells to the
/// right and to the left of the current one, if any. Left movers (coming
/// from the right cell) come first, each group by ascending state.
pub fn backward_predecessors(
    la: &LimitedAutomaton,
    q: StateId,
    left: Option<TapeSymbol>,
    right: Option<TapeSymbol>,
) -> Vec<(StateId, Dir)> {
    let inv = Inverse::new(la);
    let mut out = Vec::new();
    if let Some(r) = right {
        out.extend(inv.sources(r, Dir::Left, q).iter().map(|&p| (p, Dir::Left)));
    }
    if let Some(l) = left {
        out.extend(inv.sources(l, Dir::Right, q).iter().map(|&p| (p, Dir::Right)));
    }
    out
}

/// Whether the computation from the initial configuration reaches state
/// `rec.mark_state` on cell `j` using only symbol-preserving steps on the
/// unmodified input, decided by the same stackless depth-first search the
/// compiled machine performs.
pub fn sipser_search(la: &LimitedAutomaton, word: &str, rec: MarkRecord, j: usize) -> Result<bool> {
    ensure_valid(la)?;
    let mut tape = vec![TapeSymbol::LeftEnd];
    for c in word.chars() {
        if !la.has_letter(c) {
            return Err(Error::LetterNotInAlphabet(c));
        }
        tape.push(TapeSymbol::Input(c));
    }
    tape.push(TapeSymbol::RightEnd);
    if j == 0 || j + 1 >= tape.len() {
        return Err(Error::InvalidParameter(format!("cell {j} is not an input cell")));
    }
    let inv = Inverse::new(la);
    let mut head = j;
    let mut step = inv.descend(rec.mark_state, tape[head]);
    loop {
        match step {
            SearchStep::Found => return Ok(true),
            SearchStep::Exhausted | SearchStep::Stuck => return Ok(false),
            SearchStep::Move(phase, dir) => {
                head = match dir {
                    Dir::Left => head.checked_sub(1).expect("search stays on the tape"),
                    Dir::Right => head + 1,
                };
                step = inv.step(phase, tape[head]);
            }
        }
    }
}

/// Upper bound on the number of composed states for an `n`-state machine
/// over `k` letters.
pub fn composed_state_bound(n: usize, k: usize) -> usize {
    let r = n * k;
    n + r + 6 * n * r + 9 * n * n * r
}

/// The compiled machine with the composed state behind each of its states.
#[derive(Clone, Debug)]
pub struct Compiled {
    pub machine: LimitedAutomaton,
    pub states: Vec<ComposedState>,
}

struct Compiler<'a> {
    la: &'a LimitedAutomaton,
    inv: Inverse<'a>,
}

impl Compiler<'_> {
    fn record(&self, q: StateId, scanned: TapeSymbol) -> Option<(MarkRecord, Move)> {
        let m = self.inv.delta(q, scanned)?;
        match scanned {
            TapeSymbol::Input(c) if m.write == TapeSymbol::Marked(c) => {
                Some((MarkRecord { mark_state: q, mark_letter: c }, m))
            }
            _ => None,
        }
    }

    fn search(
        &self,
        context: SearchContext,
        carried: StateId,
        rec: MarkRecord,
        step: SearchStep,
    ) -> Option<(ComposedState, Dir)> {
        let sigma = TapeSymbol::Input(rec.mark_letter);
        match step {
            SearchStep::Move(phase, dir) => Some((ComposedState::Search { context, carried, rec, phase }, dir)),
            SearchStep::Stuck => None,
            SearchStep::Found => match context {
                SearchContext::After => Some((ComposedState::Rollback { carried, rec, sim: self.la.initial() }, Dir::Right)),
                // the cell about to be marked is frozen
                SearchContext::FreshCheck => None,
            },
            SearchStep::Exhausted => {
                let m = self.inv.delta(carried, sigma)?;
                match context {
                    SearchContext::After => Some((ComposedState::After(m.to, rec), m.dir)),
                    SearchContext::FreshCheck => Some((ComposedState::Verify(m.to, rec), m.dir)),
                }
            }
        }
    }

    fn step(&self, cs: ComposedState, b: TapeSymbol) -> Option<(ComposedState, Dir)> {
        use ComposedState::*;
        match cs {
            Before(q) => {
                if let Some((rec, _)) = self.record(q, b) {
                    return Some((Rewind(rec), Dir::Left));
                }
                let m = self.inv.delta(q, b)?;
                Some((Before(m.to), m.dir))
            }
            Rewind(rec) if b == TapeSymbol::LeftEnd => Some((Verify(self.la.initial(), rec), Dir::Right)),
            Rewind(rec) => Some((Rewind(rec), Dir::Left)),
            Verify(q, rec) => {
                let m = self.inv.delta(q, b)?;
                if self.record(q, b).is_some() {
                    Some((After(m.to, rec), m.dir))
                } else if b == TapeSymbol::Input(rec.mark_letter) {
                    let start = self.inv.descend(rec.mark_state, b);
                    self.search(SearchContext::FreshCheck, q, rec, start)
                } else {
                    Some((Verify(m.to, rec), m.dir))
                }
            }
            After(q, rec) => {
                let sigma = rec.mark_letter;
                if b == TapeSymbol::Input(sigma) {
                    let plain = self.inv.delta(q, b).map(|m| (m.to, m.dir));
                    let marked = self.inv.delta(q, TapeSymbol::Marked(sigma)).map(|m| (m.to, m.dir));
                    if plain != marked {
                        let start = self.inv.descend(rec.mark_state, b);
                        return self.search(SearchContext::After, q, rec, start);
                    }
                }
                let m = self.inv.delta(q, b)?;
                Some((After(m.to, rec), m.dir))
            }
            Search { context, carried, rec, phase } => self.search(context, carried, rec, self.inv.step(phase, b)),
            Rollback { carried, rec, sim } => {
                let m = self.inv.delta(sim, b)?;
                if self.record(sim, b).is_some() {
                    let resumed = self.inv.delta(carried, TapeSymbol::Marked(rec.mark_letter))?;
                    Some((After(resumed.to, rec), resumed.dir))
                } else {
                    Some((Rollback { carried, rec, sim: m.to }, m.dir))
                }
            }
        }
    }
}

/// Compiles a deterministic, structurally once-marking machine into an
/// equivalent deterministic machine that never writes.
pub fn domla_to_twdfa(la: &LimitedAutomaton) -> Result<LimitedAutomaton> {
    Ok(compile_domla(la)?.machine)
}

pub fn compile_domla(la: &LimitedAutomaton) -> Result<Compiled> {
    let profile = classify(la)?;
    if !profile.deterministic {
        return Err(Error::NotDeterministic);
    }
    if !profile.structurally_once_marking {
        return Err(Error::NotOnceMarking);
    }
    let compiler = Compiler { la, inv: Inverse::new(la) };
    let scanned: Vec<TapeSymbol> = std::iter::once(TapeSymbol::LeftEnd)
        .chain(la.input_alphabet().iter().map(|&c| TapeSymbol::Input(c)))
        .chain([TapeSymbol::RightEnd])
        .collect();

    let start = ComposedState::Before(la.initial());
    let mut ids = HashMap::from([(start, 0usize)]);
    let mut states = vec![start];
    let mut queue = VecDeque::from([start]);
    let mut transitions = Vec::new();
    while let Some(cs) = queue.pop_front() {
        let from = ids[&cs];
        for &b in &scanned {
            let Some((next, dir)) = compiler.step(cs, b) else {
                continue;
            };
            let to = *ids.entry(next).or_insert_with(|| {
                states.push(next);
                queue.push_back(next);
                states.len() - 1
            });
            transitions.push(Transition { from, read: b, to, write: b, dir });
        }
    }
    let names: Vec<String> = states.iter().map(|s| Named(s, la.state_names()).to_string()).collect();
    let finals: Vec<StateId> = states
        .iter()
        .enumerate()
        .filter(|(_, s)| match s {
            ComposedState::Before(q) | ComposedState::After(q, _) => la.is_final(*q),
            _ => false,
        })
        .map(|(i, _)| i)
        .collect();
    let machine = LimitedAutomaton::new(names, la.input_alphabet().iter().copied(), [], transitions, 0, finals);
    Ok(Compiled { machine, states })
}
