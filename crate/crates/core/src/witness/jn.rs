//! Deterministic always-marking machine for `J_n` with `8n + 3` states.
//!
//! | states           | count | role                                               |
//! |------------------|-------|----------------------------------------------------|
//! | `mark{c}`        | n     | marks the first block                              |
//! | `walk{c}{m}`     | 2n    | from `⊢` to the first unmarked cell, position mod n |
//! | `verify{c}`      | n     | a block matched; checks the length mod n           |
//! | `home{x}{c}`     | 2n    | carries a fetched letter and its position to `⊢`   |
//! | `seek{x}{r}`     | 2n    | counts down to position `r` of the first block     |
//! | `ret{m}`         | 2     | back to `⊢` after a comparison                     |
//! | `fin`            | 1     | exit                                               |
//!
//! The mode `m` is `y` while the block under inspection matches the first
//! block so far and `n` otherwise. Every cell is marked on its first visit,
//! so the first unmarked cell is always the next one to inspect, and its
//! position in its block is recovered by counting from `⊢`.

use crate::error::Result;
use crate::machine::{LaBuilder, LimitedAutomaton};
use crate::symbol::{Dir, TapeSymbol};

use super::{check_n, ALPHABET};

pub fn gen_jn_damla(n: usize) -> Result<LimitedAutomaton> {
    check_n(n)?;
    use TapeSymbol::*;
    let mut b = LaBuilder::new(ALPHABET);
    let mark: Vec<_> = (1..=n).map(|c| b.state(format!("mark{c}"))).collect();
    // walk[c][matched], c = position mod n
    let walk: Vec<[_; 2]> = (0..n).map(|c| [b.state(format!("walk{c}n")), b.state(format!("walk{c}y"))]).collect();
    let verify: Vec<_> = (0..n).map(|c| b.state(format!("verify{c}"))).collect();
    let home: Vec<Vec<_>> = ALPHABET
        .iter()
        .map(|x| (0..n).map(|c| b.state(format!("home{x}{c}"))).collect())
        .collect();
    let seek: Vec<Vec<_>> = ALPHABET
        .iter()
        .map(|x| (1..=n).map(|r| b.state(format!("seek{x}{r}"))).collect())
        .collect();
    let ret = [b.state("retn"), b.state("rety")];
    let fin = b.state("fin");
    b.initial(mark[0]);
    b.accept(fin);

    let start = 1 % n;
    let letter = |x: char| ALPHABET.iter().position(|&y| y == x).expect("letter");

    for c in 0..n {
        for x in ALPHABET {
            let next = if c + 1 < n { mark[c + 1] } else { walk[(n + 1) % n][0] };
            b.rule(mark[c], Input(x), next, Marked(x), Dir::Right);
        }
    }

    for c in 0..n {
        let next = (c + 1) % n;
        for (m, &q) in walk[c].iter().enumerate() {
            let matched = m == 1;
            for x in ALPHABET {
                b.keep(q, Marked(x), walk[next][m], Dir::Right);
                if matched && c == start {
                    b.rule(q, Input(x), verify[next], Marked(x), Dir::Right);
                } else if !matched && c != start {
                    b.rule(q, Input(x), walk[next][0], Marked(x), Dir::Right);
                } else {
                    b.rule(q, Input(x), home[letter(x)][c], Marked(x), Dir::Left);
                }
            }
            if matched && c == start {
                b.keep(q, RightEnd, fin, Dir::Right);
            }
        }
        for x in ALPHABET {
            b.rule(verify[c], Input(x), verify[next], Marked(x), Dir::Right);
        }
    }
    b.keep(verify[start], RightEnd, fin, Dir::Right);

    for (xi, x) in ALPHABET.into_iter().enumerate() {
        for (c, &h) in home[xi].iter().enumerate() {
            for y in ALPHABET {
                b.keep(h, Marked(y), h, Dir::Left);
            }
            let r = if c == 0 { n } else { c };
            b.keep(h, LeftEnd, seek[xi][r - 1], Dir::Right);
        }
        for r in 1..=n {
            let s = seek[xi][r - 1];
            for y in ALPHABET {
                if r > 1 {
                    b.keep(s, Marked(y), seek[xi][r - 2], Dir::Right);
                } else {
                    b.keep(s, Marked(y), ret[usize::from(x == y)], Dir::Left);
                }
            }
        }
    }
    for (m, &q) in ret.iter().enumerate() {
        for y in ALPHABET {
            b.keep(q, Marked(y), q, Dir::Left);
        }
        b.keep(q, LeftEnd, walk[start][m], Dir::Right);
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::accepts;
    use crate::validate::{classify, validate};
    use crate::witness::jn_member;
    use crate::words::words_up_to;

    #[test]
    fn small_instances_match_the_oracle() {
        for (n, len) in [(1, 9), (2, 10), (3, 10)] {
            let m = gen_jn_damla(n).unwrap();
            assert!(validate(&m).is_empty());
            assert_eq!(m.num_states(), 8 * n + 3);
            for w in words_up_to(&ALPHABET, len) {
                assert_eq!(accepts(&m, &w).unwrap(), jn_member(n, &w).unwrap(), "n={n} w={w}");
            }
        }
    }

    #[test]
    fn structure() {
        let p = classify(&gen_jn_damla(2).unwrap()).unwrap();
        assert!(p.deterministic && p.structurally_always_marking);
    }
}
