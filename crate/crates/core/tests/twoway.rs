use std::collections::HashSet;

use limited_automata::analysis::random_domla;
use limited_automata::exec::accepts;
use limited_automata::twoway::{backward_predecessors, composed_state_bound, domla_to_twdfa, sipser_search, MarkRecord};
use limited_automata::words::words_up_to;
use limited_automata::{classify, Dir, LimitedAutomaton, TapeSymbol};
use proptest::prelude::*;

/// Configurations `(state, cell)` visited by the run on the untouched input
/// before its first rewrite.
fn plain_run(la: &LimitedAutomaton, word: &str) -> HashSet<(usize, usize)> {
    let tape: Vec<TapeSymbol> = std::iter::once(TapeSymbol::LeftEnd)
        .chain(word.chars().map(TapeSymbol::Input))
        .chain([TapeSymbol::RightEnd])
        .collect();
    let mut seen = HashSet::new();
    let (mut q, mut i) = (la.initial(), 1);
    while i < tape.len() && seen.insert((q, i)) {
        let Some(m) = la.single_move(q, tape[i]) else { break };
        if m.write != tape[i] {
            break;
        }
        match m.dir {
            Dir::Right => i += 1,
            Dir::Left if i == 0 => break,
            Dir::Left => i -= 1,
        }
        q = m.to;
    }
    seen
}

fn marking_records(la: &LimitedAutomaton) -> Vec<MarkRecord> {
    la.transitions()
        .iter()
        .filter(|t| t.is_marking())
        .map(|t| MarkRecord {
            mark_state: t.from,
            mark_letter: match t.read {
                TapeSymbol::Input(c) => c,
                _ => unreachable!("marking reads a letter"),
            },
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn search_matches_forward_run(seed in any::<u64>(), w in "[ab]{1,9}") {
        let la = random_domla(seed, 6).unwrap();
        let visited = plain_run(&la, &w);
        for rec in marking_records(&la) {
            for (j, c) in w.chars().enumerate().map(|(i, c)| (i + 1, c)) {
                if c != rec.mark_letter {
                    continue;
                }
                prop_assert_eq!(sipser_search(&la, &w, rec, j).unwrap(), visited.contains(&(rec.mark_state, j)), "cell {}", j);
            }
        }
    }

    #[test]
    fn predecessors_are_exactly_the_preserving_moves(seed in any::<u64>()) {
        let la = random_domla(seed, 6).unwrap();
        let syms = [TapeSymbol::LeftEnd, TapeSymbol::Input('a'), TapeSymbol::Input('b'), TapeSymbol::Marked('a'), TapeSymbol::RightEnd];
        for q in 0..la.num_states() {
            for &l in &syms {
                for &r in &syms {
                    let got = backward_predecessors(&la, q, Some(l), Some(r));
                    let mut want: Vec<(usize, Dir)> = (0..la.num_states())
                        .filter(|&p| la.single_move(p, r).is_some_and(|m| m.to == q && m.dir == Dir::Left && m.write == r))
                        .map(|p| (p, Dir::Left))
                        .collect();
                    want.extend(
                        (0..la.num_states())
                            .filter(|&p| la.single_move(p, l).is_some_and(|m| m.to == q && m.dir == Dir::Right && m.write == l))
                            .map(|p| (p, Dir::Right)),
                    );
                    prop_assert_eq!(got, want);
                }
            }
        }
    }
}

#[test]
fn compiled_machines_agree_on_random_inputs() {
    for seed in 1000..1040 {
        let la = random_domla(seed, 5).unwrap();
        let out = domla_to_twdfa(&la).unwrap();
        let p = classify(&out).unwrap();
        assert!(p.deterministic && p.write_free, "seed {seed}");
        assert!(out.num_states() <= composed_state_bound(la.num_states(), 2), "seed {seed}");
        for w in words_up_to(&['a', 'b'], 8) {
            assert_eq!(accepts(&out, &w).unwrap(), accepts(&la, &w).unwrap(), "seed {seed} word {w:?}");
        }
    }
}
