use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::machine::StateId;
use crate::oneway::{OneWayDfa, OneWayNfa};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Equivalence {
    Equal,
    /// A shortest word accepted by exactly one side, least in lexicographic
    /// order among those.
    Counterexample(String),
}

impl Equivalence {
    pub fn is_equal(&self) -> bool {
        matches!(self, Equivalence::Equal)
    }
}

/// Reachable subset construction. The result is complete; the empty subset,
/// when reachable, is its non-final sink.
pub fn determinize(nfa: &OneWayNfa) -> OneWayDfa {
    let k = nfa.alphabet().len();
    let mut dfa = OneWayDfa::new(nfa.alphabet().iter().copied());
    let start: Vec<StateId> = if nfa.num_states() == 0 { Vec::new() } else { vec![nfa.initial()] };
    let mut ids: HashMap<Vec<StateId>, StateId> = HashMap::new();
    let mut subsets = Vec::new();
    let mut queue = VecDeque::new();

    let mut intern = |set: Vec<StateId>, dfa: &mut OneWayDfa, subsets: &mut Vec<Vec<StateId>>, queue: &mut VecDeque<StateId>| {
        if let Some(&id) = ids.get(&set) {
            return id;
        }
        let id = dfa.add_state(format!("d{}", subsets.len()));
        dfa.set_final(id, set.iter().any(|&q| nfa.is_final(q)));
        ids.insert(set.clone(), id);
        subsets.push(set);
        queue.push_back(id);
        id
    };

    let s = intern(start, &mut dfa, &mut subsets, &mut queue);
    dfa.set_initial(s);
    let mut marks = vec![false; nfa.num_states()];
    while let Some(id) = queue.pop_front() {
        for a in 0..k {
            let mut next = Vec::new();
            for &q in &subsets[id] {
                for &r in nfa.successors(q, a) {
                    if !marks[r] {
                        marks[r] = true;
                        next.push(r);
                    }
                }
            }
            for &r in &next {
                marks[r] = false;
            }
            next.sort_unstable();
            let to = intern(next, &mut dfa, &mut subsets, &mut queue);
            dfa.set_transition(id, a, to);
        }
    }
    dfa
}

/// States reachable from the initial state, in breadth-first order with
/// letters tried in alphabet order.
fn bfs_order(dfa: &OneWayDfa) -> Vec<StateId> {
    let mut seen = vec![false; dfa.num_states()];
    let mut order = vec![dfa.initial()];
    seen[dfa.initial()] = true;
    let mut i = 0;
    while i < order.len() {
        let q = order[i];
        i += 1;
        for a in 0..dfa.alphabet().len() {
            if let Some(r) = dfa.next(q, a) {
                if !seen[r] {
                    seen[r] = true;
                    order.push(r);
                }
            }
        }
    }
    order
}

/// The minimal complete DFA, with states numbered in breadth-first order
/// from the initial state, so equal languages give identical automata.
pub fn minimize_dfa(dfa: &OneWayDfa) -> OneWayDfa {
    let k = dfa.alphabet().len();
    if dfa.num_states() == 0 {
        let mut d = OneWayDfa::new(dfa.alphabet().iter().copied());
        let s = d.add_state("m0");
        for a in 0..k {
            d.set_transition(s, a, s);
        }
        return d;
    }
    let full = dfa.completed();
    let order = bfs_order(&full);
    let mut local = vec![usize::MAX; full.num_states()];
    for (i, &q) in order.iter().enumerate() {
        local[q] = i;
    }
    let n = order.len();
    let delta: Vec<usize> = order
        .iter()
        .flat_map(|&q| (0..k).map(move |a| (q, a)))
        .map(|(q, a)| local[full.next(q, a).expect("completed")])
        .collect();

    // Moore refinement
    let mut class: Vec<usize> = order.iter().map(|&q| full.is_final(q) as usize).collect();
    let mut count = 0;
    loop {
        let mut sig_ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut next = Vec::with_capacity(n);
        for q in 0..n {
            let mut sig = Vec::with_capacity(k + 1);
            sig.push(class[q]);
            sig.extend((0..k).map(|a| class[delta[q * k + a]]));
            let fresh = sig_ids.len();
            next.push(*sig_ids.entry(sig).or_insert(fresh));
        }
        let new_count = sig_ids.len();
        class = next;
        if new_count == count {
            break;
        }
        count = new_count;
    }

    // canonical numbering of the quotient
    let mut number = vec![usize::MAX; count];
    let mut reps = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    number[class[0]] = 0;
    reps.push(0usize);
    while let Some(q) = queue.pop_front() {
        for a in 0..k {
            let r = delta[q * k + a];
            if number[class[r]] == usize::MAX {
                number[class[r]] = reps.len();
                reps.push(r);
                queue.push_back(r);
            }
        }
    }
    let mut out = OneWayDfa::new(dfa.alphabet().iter().copied());
    for (i, &q) in reps.iter().enumerate() {
        let id = out.add_state(format!("m{i}"));
        out.set_final(id, full.is_final(order[q]));
    }
    for (i, &q) in reps.iter().enumerate() {
        for a in 0..k {
            out.set_transition(i, a, number[class[delta[q * k + a]]]);
        }
    }
    out.set_initial(0);
    out
}

/// Product search for a distinguishing word. Missing transitions lead to an
/// implicit rejecting sink on either side.
/// A state of each automaton; `None` is the implicit sink.
type Pair = (Option<StateId>, Option<StateId>);

pub fn dfa_equiv(d1: &OneWayDfa, d2: &OneWayDfa) -> Result<Equivalence> {
    if d1.alphabet() != d2.alphabet() {
        return Err(Error::AlphabetMismatch { left: d1.alphabet().to_vec(), right: d2.alphabet().to_vec() });
    }
    let alphabet = d1.alphabet();
    let start = |d: &OneWayDfa| (d.num_states() > 0).then(|| d.initial());
    let fin = |d: &OneWayDfa, q: Option<StateId>| q.is_some_and(|q| d.is_final(q));
    let root = (start(d1), start(d2));
    let mut parent: HashMap<Pair, Option<(Pair, char)>> = HashMap::from([(root, None)]);
    let mut queue = VecDeque::from([root]);
    while let Some(pair) = queue.pop_front() {
        if fin(d1, pair.0) != fin(d2, pair.1) {
            let mut word = Vec::new();
            let mut cur = pair;
            while let Some(Some((prev, c))) = parent.get(&cur) {
                word.push(*c);
                cur = *prev;
            }
            word.reverse();
            return Ok(Equivalence::Counterexample(word.into_iter().collect()));
        }
        for (a, &c) in alphabet.iter().enumerate() {
            let next = (pair.0.and_then(|q| d1.next(q, a)), pair.1.and_then(|q| d2.next(q, a)));
            if next == (None, None) {
                continue;
            }
            if let Entry::Vacant(e) = parent.entry(next) {
                e.insert(Some((pair, c)));
                queue.push_back(next);
            }
        }
    }
    Ok(Equivalence::Equal)
}

/// A DFA for `L(dfa)` restricted to words of length at most `max_len`.
pub fn truncate_dfa(dfa: &OneWayDfa, max_len: usize) -> OneWayDfa {
    let k = dfa.alphabet().len();
    let mut out = OneWayDfa::new(dfa.alphabet().iter().copied());
    if dfa.num_states() == 0 {
        return out;
    }
    let mut ids: HashMap<(StateId, usize), StateId> = HashMap::new();
    let mut queue = VecDeque::new();
    let root = out.add_state(format!("{}@0", dfa.state_name(dfa.initial())));
    out.set_final(root, dfa.is_final(dfa.initial()));
    ids.insert((dfa.initial(), 0), root);
    queue.push_back((dfa.initial(), 0));
    while let Some((q, len)) = queue.pop_front() {
        if len == max_len {
            continue;
        }
        let from = ids[&(q, len)];
        for a in 0..k {
            if let Some(r) = dfa.next(q, a) {
                let key = (r, len + 1);
                let to = match ids.get(&key) {
                    Some(&to) => to,
                    None => {
                        let to = out.add_state(format!("{}@{}", dfa.state_name(r), len + 1));
                        out.set_final(to, dfa.is_final(r));
                        ids.insert(key, to);
                        queue.push_back(key);
                        to
                    }
                };
                out.set_transition(from, a, to);
            }
        }
    }
    out
}

/// The trie of `words` as a partial DFA: exactly the listed words whose
/// `accepted` flag is set are accepted.
pub fn prefix_tree_dfa(alphabet: &[char], samples: &[(String, bool)]) -> Result<OneWayDfa> {
    let mut out = OneWayDfa::new(alphabet.iter().copied());
    let root = out.add_state("e");
    for (w, accepted) in samples {
        let mut q = root;
        for c in w.chars() {
            let a = out.letter_index(c)?;
            q = match out.next(q, a) {
                Some(r) => r,
                None => {
                    let r = out.add_state(format!("n{}", out.num_states()));
                    out.set_transition(q, a, r);
                    r
                }
            };
        }
        if *accepted {
            out.set_final(q, true);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::words_up_to;

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
    fn subset_construction_and_minimization() {
        let d = determinize(&ends_with_a());
        let m = minimize_dfa(&d);
        assert_eq!(m.num_states(), 2);
        for w in words_up_to(&['a', 'b'], 6) {
            assert_eq!(m.accepts(&w).unwrap(), w.ends_with('a'));
        }
        assert_eq!(dfa_equiv(&d, &m).unwrap(), Equivalence::Equal);
        assert_eq!(minimize_dfa(&m), m);
    }

    #[test]
    fn empty_language_is_one_sink() {
        let mut n = OneWayNfa::new(['a']);
        n.add_state("q");
        let d = determinize(&n);
        let m = minimize_dfa(&d);
        assert_eq!(m.num_states(), 1);
        assert!(!m.is_final(0));
        assert!(m.is_complete());
    }

    #[test]
    fn counterexample_is_shortlex_least() {
        let m = minimize_dfa(&determinize(&ends_with_a()));
        let mut only_b = OneWayDfa::new(['a', 'b']);
        let s = only_b.add_state("s");
        only_b.set_final(s, true);
        only_b.set_transition(s, 1, s);
        // "" is accepted by only_b
        assert_eq!(dfa_equiv(&m, &only_b).unwrap(), Equivalence::Counterexample(String::new()));
        let mut none = OneWayDfa::new(['a', 'b']);
        none.add_state("x");
        assert_eq!(dfa_equiv(&m, &none).unwrap(), Equivalence::Counterexample("a".into()));
        let other = OneWayDfa::new(['a']);
        assert!(matches!(dfa_equiv(&m, &other), Err(Error::AlphabetMismatch { .. })));
    }

    #[test]
    fn truncation_and_trie() {
        let m = minimize_dfa(&determinize(&ends_with_a()));
        let t = truncate_dfa(&m, 3);
        let samples: Vec<(String, bool)> =
            words_up_to(&['a', 'b'], 3).into_iter().map(|w| { let acc = w.ends_with('a'); (w, acc) }).collect();
        let trie = prefix_tree_dfa(&['a', 'b'], &samples).unwrap();
        assert_eq!(dfa_equiv(&t, &trie).unwrap(), Equivalence::Equal);
        assert!(!t.accepts("abba").unwrap());
        assert_eq!(minimize_dfa(&t), minimize_dfa(&trie));
    }
}
