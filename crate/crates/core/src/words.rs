/// All words over `alphabet` of length at most `max_len`, in shortlex order
/// (shorter first, then lexicographic by the alphabet's order).
pub fn words_up_to(alphabet: &[char], max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for &c in alphabet {
                let mut v = w.clone();
                v.push(c);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// All words of exactly `len` letters, lexicographic.
pub fn words_of_len(alphabet: &[char], len: usize) -> Vec<String> {
    let mut layer = vec![String::new()];
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|w| alphabet.iter().map(move |&c| format!("{w}{c}")))
            .collect();
    }
    layer
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortlex() {
        assert_eq!(words_up_to(&['a', 'b'], 2), vec!["", "a", "b", "aa", "ab", "ba", "bb"]);
        assert_eq!(words_up_to(&['a', 'b'], 10).len(), 2047);
        assert_eq!(words_of_len(&['a', 'b'], 3).len(), 8);
        assert_eq!(words_of_len(&['a'], 0), vec![""]);
    }
}
