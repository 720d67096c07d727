//! Sweeping once-marking machine for `K_n` with `10n + 1` states.
//!
//! State layout:
//!
//! | states          | count | role                                               |
//! |-----------------|-------|----------------------------------------------------|
//! | `pre{c}`        | n     | first sweep before marking, `c` cells read mod n   |
//! | `post{c}[e]`    | 2n    | first sweep after marking; `e`: a cell followed it |
//! | `back{v}{ph}`   | 6n    | right-to-left sweep, counter `v`, phase `ph`       |
//! | `lr{i}`         | n - 1 | left-to-right sweep before iteration `i`           |
//! | `acc`, `fin`    | 2     | final left-to-right sweep and exit                 |
//!
//! The first sweep guesses the last cell of a block and marks it, and checks
//! that the length is a multiple of `n` with at least one block after the
//! mark. Iteration `i` then compares the `(n - i)`th symbols of the last
//! block and of the marked block: starting from `⊣` with the counter at
//! `(i + 1) mod n` and decrementing it at every move, the counter is zero
//! exactly on the `(n - i)`th cell of every block. At `⊢` the counter holds
//! `i`, so the next iteration number need not be carried right-to-left.
//! Phases `ph` of a right-to-left sweep: `s` looking for the symbol of the
//! last block, `h{τ}` holding it and looking for the mark, `f{τ}` inside the
//! marked block, `ok` after a successful comparison.

use crate::error::Result;
use crate::machine::{LaBuilder, LimitedAutomaton};
use crate::symbol::{Dir, TapeSymbol};

use super::{check_n, ALPHABET};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Phase {
    SeekLast,
    Holding(char),
    InMarked(char),
    Ok,
}

impl Phase {
    const ALL: [Phase; 6] = [
        Phase::SeekLast,
        Phase::Holding('a'),
        Phase::Holding('b'),
        Phase::InMarked('a'),
        Phase::InMarked('b'),
        Phase::Ok,
    ];

    fn index(self) -> usize {
        Phase::ALL.iter().position(|&p| p == self).expect("listed phase")
    }

    fn tag(self) -> String {
        match self {
            Phase::SeekLast => "s".into(),
            Phase::Holding(c) => format!("h{c}"),
            Phase::InMarked(c) => format!("f{c}"),
            Phase::Ok => "ok".into(),
        }
    }
}

pub fn gen_kn_omla(n: usize) -> Result<LimitedAutomaton> {
    check_n(n)?;
    use TapeSymbol::*;
    let mut b = LaBuilder::new(ALPHABET);
    let pre: Vec<_> = (0..n).map(|c| b.state(format!("pre{c}"))).collect();
    let post: Vec<[_; 2]> = (0..n).map(|c| [b.state(format!("post{c}")), b.state(format!("post{c}e"))]).collect();
    let back: Vec<Vec<_>> = (0..n)
        .map(|v| Phase::ALL.iter().map(|ph| b.state(format!("back{v}{}", ph.tag()))).collect())
        .collect();
    let lr: Vec<_> = (1..n).map(|i| b.state(format!("lr{i}"))).collect();
    let acc = b.state("acc");
    let fin = b.state("fin");
    b.initial(pre[0]);
    b.accept(fin);

    // first sweep
    for c in 0..n {
        let next = (c + 1) % n;
        for x in ALPHABET {
            b.keep(pre[c], Input(x), pre[next], Dir::Right);
            if c == n - 1 {
                b.rule(pre[c], Input(x), post[0][0], Marked(x), Dir::Right);
            }
            for e in 0..2 {
                b.keep(post[c][e], Input(x), post[next][1], Dir::Right);
            }
        }
    }
    let state = |v: usize, ph: Phase| back[v][ph.index()];
    b.keep(post[0][1], RightEnd, state(0, Phase::SeekLast), Dir::Left);

    // right-to-left sweeps
    for v in 0..n {
        let left = (v + n - 1) % n;
        let here = v == 0;
        for x in ALPHABET {
            let seek = if here { Phase::Holding(x) } else { Phase::SeekLast };
            b.keep(state(v, Phase::SeekLast), Input(x), state(left, seek), Dir::Left);
            for tau in ALPHABET {
                b.keep(state(v, Phase::Holding(tau)), Input(x), state(left, Phase::Holding(tau)), Dir::Left);
                if !here {
                    b.keep(state(v, Phase::Holding(tau)), Marked(x), state(left, Phase::InMarked(tau)), Dir::Left);
                    b.keep(state(v, Phase::InMarked(tau)), Input(x), state(left, Phase::InMarked(tau)), Dir::Left);
                } else if x == tau {
                    b.keep(state(v, Phase::Holding(tau)), Marked(x), state(left, Phase::Ok), Dir::Left);
                    b.keep(state(v, Phase::InMarked(tau)), Input(x), state(left, Phase::Ok), Dir::Left);
                }
            }
            b.keep(state(v, Phase::Ok), Input(x), state(left, Phase::Ok), Dir::Left);
            b.keep(state(v, Phase::Ok), Marked(x), state(left, Phase::Ok), Dir::Left);
        }
        // at ⊢ the counter equals the number of the finished iteration
        let after = lr.get(v).copied().unwrap_or(acc);
        b.keep(state(v, Phase::Ok), LeftEnd, after, Dir::Right);
    }

    // left-to-right sweeps
    for (k, &q) in lr.iter().enumerate() {
        let i = k + 1;
        for x in ALPHABET {
            b.keep(q, Input(x), q, Dir::Right);
            b.keep(q, Marked(x), q, Dir::Right);
        }
        b.keep(q, RightEnd, state(i, Phase::SeekLast), Dir::Left);
    }
    for x in ALPHABET {
        b.keep(acc, Input(x), acc, Dir::Right);
        b.keep(acc, Marked(x), acc, Dir::Right);
    }
    b.keep(acc, RightEnd, fin, Dir::Right);
    Ok(b.build())
}
