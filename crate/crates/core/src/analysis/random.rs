use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::machine::{LimitedAutomaton, StateId, Transition};
use crate::symbol::{Dir, TapeSymbol};

const LETTERS: [char; 2] = ['a', 'b'];

fn dir(rng: &mut ChaCha8Rng) -> Dir {
    if rng.gen_bool(0.5) {
        Dir::Right
    } else {
        Dir::Left
    }
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("q{i}")).collect()
}

/// A deterministic, structurally once-marking machine over `{a, b}` with
/// between 2 and `state_budget` states. States `0..k` may only move among
/// themselves or mark into `k..n`; states `k..n` never mark and never leave.
/// At least one marking transition is always present.
pub fn random_domla(seed: u64, state_budget: usize) -> Result<LimitedAutomaton> {
    if state_budget < 2 {
        return Err(Error::InvalidParameter("state budget must be at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=state_budget);
    let k = rng.gen_range(1..n);
    let (pre, post): (Vec<StateId>, Vec<StateId>) = ((0..k).collect(), (k..n).collect());
    let mut transitions = Vec::new();
    let mut marking = Vec::new();

    for q in 0..n {
        let group = if q < k { &pre } else { &post };
        let pick = |rng: &mut ChaCha8Rng| *group.choose(rng).expect("non-empty group");
        let mut symbols = vec![TapeSymbol::LeftEnd, TapeSymbol::RightEnd];
        symbols.extend(LETTERS.map(TapeSymbol::Input));
        if q >= k {
            symbols.extend(LETTERS.map(TapeSymbol::Marked));
        }
        for read in symbols {
            if rng.gen_bool(0.2) {
                continue;
            }
            let t = match read {
                TapeSymbol::LeftEnd => Transition { from: q, read, to: pick(&mut rng), write: read, dir: Dir::Right },
                TapeSymbol::Input(c) if q < k && rng.gen_bool(0.35) => {
                    let t = Transition {
                        from: q,
                        read,
                        to: *post.choose(&mut rng).expect("post states"),
                        write: TapeSymbol::Marked(c),
                        dir: dir(&mut rng),
                    };
                    marking.push(transitions.len());
                    t
                }
                _ => Transition { from: q, read, to: pick(&mut rng), write: read, dir: dir(&mut rng) },
            };
            transitions.push(t);
        }
    }
    if marking.is_empty() {
        let from = rng.gen_range(0..k);
        let c = *LETTERS.choose(&mut rng).expect("letters");
        let read = TapeSymbol::Input(c);
        transitions.retain(|t| !(t.from == from && t.read == read));
        transitions.push(Transition {
            from,
            read,
            to: *post.choose(&mut rng).expect("post states"),
            write: TapeSymbol::Marked(c),
            dir: dir(&mut rng),
        });
    }
    let finals: Vec<StateId> = (0..n).filter(|_| rng.gen_bool(0.35)).collect();
    let work = LETTERS.map(TapeSymbol::Marked);
    Ok(LimitedAutomaton::new(names(n), LETTERS, work, transitions, 0, finals))
}

/// An unrestricted, usually nondeterministic machine over `{a, b}` with
/// `states` states and one extra work symbol `X`.
pub fn random_la(seed: u64, states: usize) -> Result<LimitedAutomaton> {
    if states == 0 {
        return Err(Error::InvalidParameter("at least one state is required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters: Vec<TapeSymbol> = LETTERS
        .iter()
        .flat_map(|&c| [TapeSymbol::Input(c), TapeSymbol::Marked(c)])
        .chain([TapeSymbol::Work('X')])
        .collect();
    let mut transitions = Vec::new();
    for q in 0..states {
        for read in letters.iter().copied().chain([TapeSymbol::LeftEnd, TapeSymbol::RightEnd]) {
            let count = [0, 1, 1, 2, 2][rng.gen_range(0..5)];
            for _ in 0..count {
                let write = if read.is_end_marker() || rng.gen_bool(0.5) {
                    read
                } else {
                    *letters.choose(&mut rng).expect("letters")
                };
                let dir = match read {
                    TapeSymbol::LeftEnd => Dir::Right,
                    _ => dir(&mut rng),
                };
                transitions.push(Transition { from: q, read, to: rng.gen_range(0..states), write, dir });
            }
        }
    }
    let finals: Vec<StateId> = (0..states).filter(|_| rng.gen_bool(0.5)).collect();
    let work = letters.into_iter().filter(|s| !matches!(s, TapeSymbol::Input(_)));
    Ok(LimitedAutomaton::new(names(states), LETTERS, work, transitions, 0, finals))
}
