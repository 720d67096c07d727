//! From limited automata to one-way finite automata.
//!
//! The one-way simulation keeps, for the frozen prefix left of the head, its
//! transition table, together with the state that first reached the current
//! cell. Computations that die inside the frozen zone simply contribute no
//! successor.

mod dfa;
mod table;

use std::collections::{HashMap, VecDeque};

pub use dfa::{determinize, dfa_equiv, minimize_dfa, prefix_tree_dfa, truncate_dfa, Equivalence};
pub use table::{accept_closure, base_table, extend_table, FrontierState, TransitionTable};

use crate::error::{Error, Result};
use crate::machine::{LimitedAutomaton, StateId};
use crate::oneway::{OneWayDfa, OneWayNfa};
use crate::symbol::TapeSymbol;
use crate::validate::{classify, ensure_valid};
use table::TableArena;

/// The one-way NFA together with the frontier state behind each NFA state.
#[derive(Clone, Debug)]
pub struct FrontierNfa {
    pub nfa: OneWayNfa,
    pub states: Vec<FrontierState>,
}

pub fn la_to_ownfa(la: &LimitedAutomaton) -> Result<OneWayNfa> {
    Ok(la_to_ownfa_with_frontier(la)?.nfa)
}

/// Builds the reachable part of the frontier-state NFA.
pub fn la_to_ownfa_with_frontier(la: &LimitedAutomaton) -> Result<FrontierNfa> {
    ensure_valid(la)?;
    let letters = la.input_alphabet().to_vec();
    let mut arena = TableArena::new(la);
    let base = arena.intern(base_table(la));
    let mut nfa = OneWayNfa::new(letters.iter().copied());
    let mut ids: HashMap<(usize, StateId), StateId> = HashMap::new();
    let mut keys = Vec::new();
    let mut queue = VecDeque::new();

    let mut add = |key: (usize, StateId), nfa: &mut OneWayNfa, keys: &mut Vec<_>, queue: &mut VecDeque<_>| {
        *ids.entry(key).or_insert_with(|| {
            let id = nfa.add_state(format!("t{}_{}", key.0, la.state_name(key.1)));
            keys.push(key);
            queue.push_back(id);
            id
        })
    };

    let start = add((base, la.initial()), &mut nfa, &mut keys, &mut queue);
    nfa.set_initial(start);
    let mut succ = Vec::new();
    while let Some(id) = queue.pop_front() {
        let (t, q) = keys[id];
        nfa.set_final(id, arena.accepts(t, q));
        for (ai, &a) in letters.iter().enumerate() {
            succ.clear();
            arena.step(t, q, a, &mut succ)?;
            for &key in &succ {
                let to = add(key, &mut nfa, &mut keys, &mut queue);
                nfa.add_transition(id, ai, to);
            }
        }
    }
    let states = keys
        .into_iter()
        .map(|(t, q)| FrontierState { table: arena.tables[t].clone(), arrival: q })
        .collect();
    Ok(FrontierNfa { nfa, states })
}

/// Complete DFA for an always-marking machine: the table component is
/// determined by the input prefix, and the arrival states are tracked as a
/// set. All pairs with an empty set collapse into one sink.
pub fn amla_to_owdfa(la: &LimitedAutomaton) -> Result<OneWayDfa> {
    if !classify(la)?.structurally_always_marking {
        return Err(Error::NotAlwaysMarking);
    }
    let letters = la.input_alphabet().to_vec();
    let mut arena = TableArena::new(la);
    let base = arena.intern(base_table(la));
    let mut dfa = OneWayDfa::new(letters.iter().copied());
    let sink = dfa.add_state("sink");
    for ai in 0..letters.len() {
        dfa.set_transition(sink, ai, sink);
    }
    let mut ids: HashMap<(usize, Vec<StateId>), StateId> = HashMap::new();
    let mut keys: Vec<(usize, Vec<StateId>)> = vec![(usize::MAX, Vec::new())];
    let mut queue = VecDeque::new();

    let start_key = (base, vec![la.initial()]);
    let start = dfa.add_state("s1");
    ids.insert(start_key.clone(), start);
    keys.push(start_key);
    queue.push_back(start);
    dfa.set_initial(start);

    let mut succ = Vec::new();
    while let Some(id) = queue.pop_front() {
        let (t, set) = keys[id].clone();
        let accepting = set.iter().any(|&q| arena.accepts(t, q));
        dfa.set_final(id, accepting);
        for (ai, &a) in letters.iter().enumerate() {
            let next_t = arena.extend(t, TapeSymbol::Marked(a))?;
            succ.clear();
            for &q in &set {
                arena.step(t, q, a, &mut succ)?;
            }
            debug_assert!(succ.iter().all(|&(nt, _)| nt == next_t));
            let mut next: Vec<StateId> = succ.iter().map(|&(_, r)| r).collect();
            next.sort_unstable();
            next.dedup();
            let to = if next.is_empty() {
                sink
            } else {
                let key = (next_t, next);
                match ids.get(&key) {
                    Some(&to) => to,
                    None => {
                        let to = dfa.add_state(format!("s{}", keys.len()));
                        ids.insert(key.clone(), to);
                        keys.push(key);
                        queue.push_back(to);
                        to
                    }
                }
            };
            dfa.set_transition(id, ai, to);
        }
    }
    Ok(dfa)
}

/// One-way DFA for a write-free two-way machine.
pub fn twofa_to_owdfa(la: &LimitedAutomaton) -> Result<OneWayDfa> {
    if !classify(la)?.write_free {
        return Err(Error::NotWriteFree);
    }
    Ok(determinize(&la_to_ownfa(la)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::decide_acceptance;
    use crate::machine::LaBuilder;
    use crate::symbol::Dir;
    use crate::words::words_up_to;
    use TapeSymbol::*;

    /// Two-way, write-free: accepts words whose last letter equals the first,
    /// by walking to `⊣`, reading the last letter, and returning to `⊢`.
    fn first_equals_last() -> LimitedAutomaton {
        let mut b = LaBuilder::new(['a', 'b']);
        let s = b.state("s");
        let go = b.state("go");
        let back_a = b.state("ba");
        let back_b = b.state("bb");
        let check_a = b.state("ca");
        let check_b = b.state("cb");
        let last = b.state("last");
        let out = b.state("out");
        let f = b.state("f");
        b.keep(s, LeftEnd, go, Dir::Right);
        b.keep(go, Input('a'), go, Dir::Right);
        b.keep(go, Input('b'), go, Dir::Right);
        b.keep(go, RightEnd, last, Dir::Left);
        b.keep(last, Input('a'), back_a, Dir::Left);
        b.keep(last, Input('b'), back_b, Dir::Left);
        for (back, check) in [(back_a, check_a), (back_b, check_b)] {
            b.keep(back, Input('a'), back, Dir::Left);
            b.keep(back, Input('b'), back, Dir::Left);
            b.keep(back, LeftEnd, check, Dir::Right);
        }
        b.keep(check_a, Input('a'), out, Dir::Right);
        b.keep(check_b, Input('b'), out, Dir::Right);
        b.keep(out, Input('a'), out, Dir::Right);
        b.keep(out, Input('b'), out, Dir::Right);
        b.keep(out, RightEnd, f, Dir::Right);
        b.initial(s);
        b.accept(f);
        b.build()
    }

    #[test]
    fn two_way_machine_converts_exactly() {
        let la = first_equals_last();
        let nfa = la_to_ownfa(&la).unwrap();
        assert!(nfa.is_deterministic());
        let dfa = twofa_to_owdfa(&la).unwrap();
        for w in words_up_to(&['a', 'b'], 7) {
            let expected = decide_acceptance(&la, &w).unwrap().accepted();
            assert_eq!(nfa.accepts(&w).unwrap(), expected, "{w}");
            assert_eq!(dfa.accepts(&w).unwrap(), expected, "{w}");
        }
    }

    #[test]
    fn writing_machine_refused_by_twofa() {
        let mut b = LaBuilder::new(['a']);
        let q = b.state("q");
        b.rule(q, Input('a'), q, Marked('a'), Dir::Right);
        assert_eq!(twofa_to_owdfa(&b.build()), Err(Error::NotWriteFree));
        assert_eq!(amla_to_owdfa(&first_equals_last()), Err(Error::NotAlwaysMarking));
    }

    #[test]
    fn always_marking_sink() {
        // marks a's, dies on b
        let mut b = LaBuilder::new(['a', 'b']);
        let (q, f) = (b.state("q"), b.state("f"));
        b.rule(q, Input('a'), q, Marked('a'), Dir::Right);
        b.keep(q, RightEnd, f, Dir::Right);
        b.accept(f);
        let la = b.build();
        let dfa = amla_to_owdfa(&la).unwrap();
        assert!(dfa.is_complete());
        assert!(dfa.accepts("aaa").unwrap());
        assert!(!dfa.accepts("aba").unwrap());
        let sink = dfa.run("b").unwrap().unwrap();
        assert!(!dfa.is_final(sink));
        assert_eq!(dfa.run("bab").unwrap(), Some(sink));
    }
}
