use std::collections::HashSet;

use limited_automata::analysis::random_la;
use limited_automata::convert::{
    amla_to_owdfa, base_table, determinize, dfa_equiv, extend_table, la_to_ownfa, minimize_dfa, Equivalence,
    TransitionTable,
};
use limited_automata::exec::{accepts, decide_acceptance_with, ExploreOptions, SearchOrder};
use limited_automata::words::words_up_to;
use limited_automata::{Dir, LimitedAutomaton, TapeSymbol, Transition};
use proptest::prelude::*;

/// Pairs `(p, q)` such that entering the last cell of `⊢ segment` in `p`
/// can leave it to the right in `q`, by search over `(state, cell)`.
fn brute_table(la: &LimitedAutomaton, segment: &[TapeSymbol]) -> TransitionTable {
    let tape: Vec<TapeSymbol> = std::iter::once(TapeSymbol::LeftEnd).chain(segment.iter().copied()).collect();
    let last = tape.len() - 1;
    let n = la.num_states();
    let mut out = TransitionTable::empty(n);
    for p in 0..n {
        let mut seen = HashSet::new();
        let mut stack = vec![(p, last)];
        while let Some((q, i)) = stack.pop() {
            if !seen.insert((q, i)) {
                continue;
            }
            for m in la.moves(q, tape[i]).iter().filter(|m| m.write == tape[i]) {
                match m.dir {
                    Dir::Right if i == last => {
                        out.insert(p, m.to);
                    }
                    Dir::Right => stack.push((m.to, i + 1)),
                    Dir::Left if i > 0 => stack.push((m.to, i - 1)),
                    Dir::Left => {}
                }
            }
        }
    }
    out
}

/// Keeps only the transitions compatible with always-marking.
fn always_marking_variant(la: &LimitedAutomaton) -> LimitedAutomaton {
    let ts: Vec<Transition> = la
        .transitions()
        .iter()
        .filter(|t| !matches!(t.read, TapeSymbol::Work(_)))
        .map(|t| match t.read {
            TapeSymbol::Input(_) => Transition { write: t.read.marked().expect("letter"), ..*t },
            _ => Transition { write: t.read, ..*t },
        })
        .collect();
    LimitedAutomaton::new(
        la.state_names().to_vec(),
        la.input_alphabet().iter().copied(),
        la.input_alphabet().iter().map(|&c| TapeSymbol::Marked(c)),
        ts,
        la.initial(),
        la.finals().iter().copied(),
    )
}

fn frozen_symbol() -> impl Strategy<Value = TapeSymbol> {
    prop_oneof![
        Just(TapeSymbol::Input('a')),
        Just(TapeSymbol::Input('b')),
        Just(TapeSymbol::Marked('a')),
        Just(TapeSymbol::Marked('b')),
        Just(TapeSymbol::Work('X')),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extend_table_matches_segment_search(seed in any::<u64>(), states in 1usize..5, segment in prop::collection::vec(frozen_symbol(), 0..6)) {
        let la = random_la(seed, states).unwrap();
        let mut tau = base_table(&la);
        for &x in &segment {
            tau = extend_table(&la, &tau, x).unwrap();
        }
        prop_assert_eq!(tau, brute_table(&la, &segment));
    }

    #[test]
    fn ownfa_agrees_with_exploration(seed in any::<u64>(), states in 1usize..5) {
        let la = random_la(seed, states).unwrap();
        let nfa = la_to_ownfa(&la).unwrap();
        for w in words_up_to(&['a', 'b'], 6) {
            prop_assert_eq!(nfa.accepts(&w).unwrap(), accepts(&la, &w).unwrap(), "word {:?}", w);
        }
    }

    #[test]
    fn search_order_does_not_change_verdicts(seed in any::<u64>(), states in 1usize..5, w in "[ab]{0,7}") {
        let la = random_la(seed, states).unwrap();
        let bfs = decide_acceptance_with(&la, &w, ExploreOptions { order: SearchOrder::BreadthFirst, ..Default::default() }).unwrap();
        let dfs = decide_acceptance_with(&la, &w, ExploreOptions { order: SearchOrder::DepthFirst, ..Default::default() }).unwrap();
        prop_assert_eq!(bfs.accepted(), dfs.accepted());
    }

    #[test]
    fn always_marking_dfa_matches_subset_construction(seed in any::<u64>(), states in 1usize..5) {
        let la = always_marking_variant(&random_la(seed, states).unwrap());
        let direct = amla_to_owdfa(&la).unwrap();
        let via_nfa = determinize(&la_to_ownfa(&la).unwrap());
        prop_assert!(dfa_equiv(&direct, &via_nfa).unwrap().is_equal());
        prop_assert_eq!(minimize_dfa(&direct).num_states(), minimize_dfa(&via_nfa).num_states());
    }

    #[test]
    fn minimization_preserves_language(seed in any::<u64>(), states in 1usize..5) {
        let dfa = determinize(&la_to_ownfa(&random_la(seed, states).unwrap()).unwrap());
        let min = minimize_dfa(&dfa);
        prop_assert!(min.num_states() <= dfa.num_states().max(1));
        prop_assert!(dfa_equiv(&dfa, &min).unwrap().is_equal());
        prop_assert_eq!(minimize_dfa(&min).num_states(), min.num_states());
    }

    #[test]
    fn counterexamples_are_shortlex_least(s1 in any::<u64>(), s2 in any::<u64>()) {
        let d1 = determinize(&la_to_ownfa(&random_la(s1, 3).unwrap()).unwrap());
        let d2 = determinize(&la_to_ownfa(&random_la(s2, 3).unwrap()).unwrap());
        let words = words_up_to(&['a', 'b'], 8);
        let first = words.iter().find(|w| d1.accepts(w).unwrap() != d2.accepts(w).unwrap());
        match dfa_equiv(&d1, &d2).unwrap() {
            Equivalence::Equal => prop_assert!(first.is_none()),
            Equivalence::Counterexample(w) => {
                prop_assert_ne!(d1.accepts(&w).unwrap(), d2.accepts(&w).unwrap());
                if let Some(f) = first {
                    prop_assert_eq!(&w, f);
                }
            }
        }
    }
}

#[test]
fn end_markers_cannot_extend_tables() {
    let la = random_la(7, 3).unwrap();
    let tau = base_table(&la);
    assert!(extend_table(&la, &tau, TapeSymbol::RightEnd).is_err());
    assert!(extend_table(&la, &tau, TapeSymbol::LeftEnd).is_err());
}
