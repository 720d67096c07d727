use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{initial_raw, Configuration, Raw, Trace};
use crate::error::{Error, Result};
use crate::machine::{LimitedAutomaton, StateId};
use crate::symbol::Dir;
use crate::validate::{ensure_valid, is_deterministic};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Accept,
    Reject,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SearchOrder {
    #[default]
    BreadthFirst,
    DepthFirst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExploreOptions {
    pub max_configurations: usize,
    pub order: SearchOrder,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions {
            max_configurations: 2_000_000,
            order: SearchOrder::BreadthFirst,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunVerdict {
    pub outcome: Outcome,
    /// An accepting computation, present exactly when the outcome is `Accept`.
    pub certificate: Option<Trace>,
    pub explored: usize,
}

impl RunVerdict {
    pub fn accepted(&self) -> bool {
        self.outcome == Outcome::Accept
    }
}

/// Memoized configuration graph with parent links for trace recovery.
pub(super) struct Graph {
    pub nodes: Vec<Raw>,
    pub parent: Vec<usize>,
    index: HashMap<Raw, usize>,
    limit: usize,
}

impl Graph {
    pub fn new(root: Raw, limit: usize) -> Self {
        let mut g = Graph {
            nodes: Vec::new(),
            parent: Vec::new(),
            index: HashMap::new(),
            limit,
        };
        g.index.insert(root.clone(), 0);
        g.nodes.push(root);
        g.parent.push(usize::MAX);
        g
    }

    /// Inserts `raw` if unseen and returns its index.
    pub fn insert(&mut self, raw: Raw, parent: usize) -> Result<Option<usize>> {
        if self.index.contains_key(&raw) {
            return Ok(None);
        }
        if self.nodes.len() >= self.limit {
            return Err(Error::ResourceCap { limit: self.limit });
        }
        let id = self.nodes.len();
        self.index.insert(raw.clone(), id);
        self.nodes.push(raw);
        self.parent.push(parent);
        Ok(Some(id))
    }

    pub fn trace_to(&self, la: &LimitedAutomaton, mut id: usize, tail: Option<&Raw>) -> Trace {
        let mut steps = Vec::new();
        if let Some(t) = tail {
            steps.push(t.to_public(la));
        }
        while id != usize::MAX {
            steps.push(self.nodes[id].to_public(la));
            id = self.parent[id];
        }
        steps.reverse();
        Trace { steps }
    }
}

pub fn decide_acceptance(la: &LimitedAutomaton, word: &str) -> Result<RunVerdict> {
    decide_acceptance_with(la, word, ExploreOptions::default())
}

/// Decides whether some computation on `word` ends past `⊣` in a final
/// state, by exhaustive exploration of the configuration graph.
pub fn decide_acceptance_with(la: &LimitedAutomaton, word: &str, opts: ExploreOptions) -> Result<RunVerdict> {
    ensure_valid(la)?;
    let root = initial_raw(la, word)?;
    let mut graph = Graph::new(root, opts.max_configurations.max(1));
    let mut frontier = VecDeque::from([0usize]);
    let mut succ = Vec::new();
    while let Some(id) = match opts.order {
        SearchOrder::BreadthFirst => frontier.pop_front(),
        SearchOrder::DepthFirst => frontier.pop_back(),
    } {
        succ.clear();
        graph.nodes[id].successors(la, &mut succ);
        for (next, _) in succ.drain(..) {
            if next.is_terminal() {
                if la.is_final(next.state as StateId) {
                    return Ok(RunVerdict {
                        outcome: Outcome::Accept,
                        certificate: Some(graph.trace_to(la, id, Some(&next))),
                        explored: graph.nodes.len(),
                    });
                }
                continue;
            }
            if let Some(nid) = graph.insert(next, id)? {
                frontier.push_back(nid);
            }
        }
    }
    Ok(RunVerdict {
        outcome: Outcome::Reject,
        certificate: None,
        explored: graph.nodes.len(),
    })
}

/// Runs a deterministic machine without recording history.
///
/// Between two first visits the tape is fixed, so more than
/// `|Q| · (|w| + 2)` consecutive steps without reaching a fresh cell means
/// the run is looping.
pub(crate) fn run_deterministic(la: &LimitedAutomaton, mut c: Raw) -> bool {
    let len = c.tape.len();
    let budget = la.num_states() * len + 1;
    let mut since_fresh = 0usize;
    loop {
        let h = c.head as usize;
        if h == len {
            return la.is_final(c.state as StateId);
        }
        let sym = c.tape[h];
        let Some(m) = la.moves_at(c.state as StateId, sym as usize).first() else {
            return false;
        };
        let fresh = h >= 1 && h + 1 < len && h > c.reach as usize;
        if fresh {
            c.tape[h] = m.write_idx;
            c.reach = h as u32;
            since_fresh = 0;
        } else {
            if m.write_idx != sym {
                return false;
            }
            since_fresh += 1;
            if since_fresh > budget {
                return false;
            }
        }
        c.state = m.to as u32;
        c.head = match m.dir {
            Dir::Left if h == 0 => return false,
            Dir::Left => (h - 1) as u32,
            Dir::Right => (h + 1) as u32,
        };
    }
}

/// Membership test that picks the cheapest exact procedure for `la`.
pub fn accepts(la: &LimitedAutomaton, word: &str) -> Result<bool> {
    Runner::new(la)?.accepts(word)
}

/// A validated machine ready for repeated membership queries.
#[derive(Clone, Copy, Debug)]
pub struct Runner<'a> {
    la: &'a LimitedAutomaton,
    deterministic: bool,
    opts: ExploreOptions,
}

impl<'a> Runner<'a> {
    pub fn new(la: &'a LimitedAutomaton) -> Result<Self> {
        ensure_valid(la)?;
        Ok(Runner {
            la,
            deterministic: is_deterministic(la),
            opts: ExploreOptions::default(),
        })
    }

    pub fn with_options(mut self, opts: ExploreOptions) -> Self {
        self.opts = opts;
        self
    }

    pub fn accepts(&self, word: &str) -> Result<bool> {
        let root = initial_raw(self.la, word)?;
        if self.deterministic {
            return Ok(run_deterministic(self.la, root));
        }
        let mut graph = Graph::new(root, self.opts.max_configurations.max(1));
        let mut frontier = vec![0usize];
        let mut succ = Vec::new();
        while let Some(id) = frontier.pop() {
            succ.clear();
            graph.nodes[id].successors(self.la, &mut succ);
            for (next, _) in succ.drain(..) {
                if next.is_terminal() {
                    if self.la.is_final(next.state as StateId) {
                        return Ok(true);
                    }
                } else if let Some(nid) = graph.insert(next, id)? {
                    frontier.push(nid);
                }
            }
        }
        Ok(false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LoopKind {
    /// A configuration occurred twice: the run never halts.
    Repeat,
    /// The step budget ran out before the run halted.
    Budget,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopReport {
    pub kind: LoopKind,
    pub trace: Trace,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeterministicRun {
    /// The run halted; `accepted` tells whether it left `⊣` in a final state.
    Halted { trace: Trace, accepted: bool },
    Loop(LoopReport),
}

impl DeterministicRun {
    pub fn accepted(&self) -> bool {
        matches!(self, DeterministicRun::Halted { accepted: true, .. })
    }

    pub fn trace(&self) -> &Trace {
        match self {
            DeterministicRun::Halted { trace, .. } => trace,
            DeterministicRun::Loop(r) => &r.trace,
        }
    }
}

/// The unique computation of a deterministic machine, step by step.
pub fn trace_deterministic(la: &LimitedAutomaton, word: &str, max_steps: usize) -> Result<DeterministicRun> {
    ensure_valid(la)?;
    if !is_deterministic(la) {
        return Err(Error::NotDeterministic);
    }
    let mut current = initial_raw(la, word)?;
    let mut seen = HashSet::new();
    let mut steps: Vec<Configuration> = vec![current.to_public(la)];
    let mut succ = Vec::new();
    for _ in 0..max_steps {
        seen.insert(current.clone());
        succ.clear();
        current.successors(la, &mut succ);
        let Some((next, _)) = succ.pop() else {
            return Ok(DeterministicRun::Halted { trace: Trace { steps }, accepted: false });
        };
        steps.push(next.to_public(la));
        if next.is_terminal() {
            let accepted = la.is_final(next.state as StateId);
            return Ok(DeterministicRun::Halted { trace: Trace { steps }, accepted });
        }
        if seen.contains(&next) {
            return Ok(DeterministicRun::Loop(LoopReport { kind: LoopKind::Repeat, trace: Trace { steps } }));
        }
        current = next;
    }
    Ok(DeterministicRun::Loop(LoopReport { kind: LoopKind::Budget, trace: Trace { steps } }))
}

/// Whether every computation on `word` reverses the head only while
/// scanning an end-marker.
pub fn sweeping_on(la: &LimitedAutomaton, word: &str) -> Result<bool> {
    ensure_valid(la)?;
    let limit = ExploreOptions::default().max_configurations;
    let root = (initial_raw(la, word)?, None::<Dir>);
    let mut seen = HashSet::from([root.clone()]);
    let mut frontier = vec![root];
    let mut succ = Vec::new();
    while let Some((c, last)) = frontier.pop() {
        let h = c.head as usize;
        let inner = h >= 1 && h + 1 < c.tape.len();
        succ.clear();
        c.successors(la, &mut succ);
        for (next, m) in succ.drain(..) {
            if inner && last.is_some_and(|d| d != m.dir) {
                return Ok(false);
            }
            if next.is_terminal() {
                continue;
            }
            let key = (next, Some(m.dir));
            if seen.insert(key.clone()) {
                if seen.len() > limit {
                    return Err(Error::ResourceCap { limit });
                }
                frontier.push(key);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::LaBuilder;
    use crate::symbol::TapeSymbol::*;

    fn ping_pong() -> LimitedAutomaton {
        let mut b = LaBuilder::new(['a']);
        let q = b.state("q");
        b.keep(q, Input('a'), q, Dir::Left);
        b.keep(q, LeftEnd, q, Dir::Right);
        b.build()
    }

    #[test]
    fn loop_on_left_end_is_detected() {
        match trace_deterministic(&ping_pong(), "a", 100).unwrap() {
            DeterministicRun::Loop(r) => {
                assert_eq!(r.kind, LoopKind::Repeat);
                assert_eq!(r.trace.len(), 4);
            }
            other => panic!("expected loop, got {other:?}"),
        }
    }

    #[test]
    fn zero_budget() {
        match trace_deterministic(&ping_pong(), "a", 0).unwrap() {
            DeterministicRun::Loop(r) => assert_eq!(r.kind, LoopKind::Budget),
            other => panic!("expected budget report, got {other:?}"),
        }
    }

    #[test]
    fn looping_machine_rejects() {
        assert!(!decide_acceptance(&ping_pong(), "a").unwrap().accepted());
        assert!(!accepts(&ping_pong(), "aaa").unwrap());
    }

    #[test]
    fn nondeterministic_trace_refused() {
        let mut b = LaBuilder::new(['a']);
        let q = b.state("q");
        b.keep(q, Input('a'), q, Dir::Left);
        b.keep(q, Input('a'), q, Dir::Right);
        assert_eq!(trace_deterministic(&b.build(), "a", 5), Err(Error::NotDeterministic));
    }

    #[test]
    fn resource_cap_is_distinct_from_reject() {
        let mut b = LaBuilder::new(['a']);
        let q = b.state("q");
        b.keep(q, Input('a'), q, Dir::Right);
        b.keep(q, RightEnd, q, Dir::Left);
        b.keep(q, Input('a'), q, Dir::Left);
        b.keep(q, LeftEnd, q, Dir::Right);
        let opts = ExploreOptions { max_configurations: 3, order: SearchOrder::BreadthFirst };
        assert_eq!(
            decide_acceptance_with(&b.build(), "aaaa", opts),
            Err(Error::ResourceCap { limit: 3 })
        );
    }

    #[test]
    fn sweeping_semantics() {
        assert!(!sweeping_on(&ping_pong(), "aa").unwrap());
        let mut b = LaBuilder::new(['a']);
        let q = b.state("q");
        b.keep(q, Input('a'), q, Dir::Right);
        b.keep(q, RightEnd, q, Dir::Right);
        assert!(sweeping_on(&b.build(), "aaa").unwrap());
    }
}
