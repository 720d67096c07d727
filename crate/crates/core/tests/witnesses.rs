use limited_automata::convert::minimize_dfa;
use limited_automata::exec::{verify_marking_discipline, Discipline, Runner};
use limited_automata::witness::{
    gen_jn_damla, gen_kn_omla, jn_fooling_set, jn_member, jn_reference_dfa, kn_member, kn_reference_dfa, member,
    verify_fooling_set, Family, FoolingVerdict,
};
use limited_automata::{classify, validate};
use proptest::prelude::*;

proptest! {
    #[test]
    fn jn_is_the_reversal_of_kn(n in 1usize..4, w in "[ab]{0,16}") {
        let rev: String = w.chars().rev().collect();
        prop_assert_eq!(jn_member(n, &w).unwrap(), kn_member(n, &rev).unwrap());
    }

    #[test]
    fn references_follow_the_oracles(n in 1usize..4, w in "[ab]{0,18}") {
        prop_assert_eq!(kn_reference_dfa(n).unwrap().accepts(&w).unwrap(), kn_member(n, &w).unwrap());
        prop_assert_eq!(jn_reference_dfa(n).unwrap().accepts(&w).unwrap(), jn_member(n, &w).unwrap());
    }

    #[test]
    fn machines_follow_the_oracles_on_long_words(w in "[ab]{10,16}") {
        let k = gen_kn_omla(2).unwrap();
        let j = gen_jn_damla(2).unwrap();
        prop_assert_eq!(Runner::new(&k).unwrap().accepts(&w).unwrap(), kn_member(2, &w).unwrap());
        prop_assert_eq!(Runner::new(&j).unwrap().accepts(&w).unwrap(), jn_member(2, &w).unwrap());
    }
}

#[test]
fn generated_machines_have_the_advertised_shape() {
    for n in 1..=4 {
        let k = gen_kn_omla(n).unwrap();
        let j = gen_jn_damla(n).unwrap();
        assert!(validate(&k).is_empty() && validate(&j).is_empty());
        let pk = classify(&k).unwrap();
        assert!(pk.structurally_once_marking && pk.sweeping && !pk.deterministic);
        let pj = classify(&j).unwrap();
        assert!(pj.structurally_always_marking && pj.deterministic);
        assert_eq!(k.num_states(), 10 * n + 1);
        assert_eq!(j.num_states(), 8 * n + 3);
    }
    assert!(gen_kn_omla(0).is_err() && gen_jn_damla(0).is_err());
}

#[test]
fn disciplines_hold_on_sample_words() {
    let k = gen_kn_omla(1).unwrap();
    let j = gen_jn_damla(2).unwrap();
    for w in ["", "a", "aa", "ab", "aba", "abb", "babab"] {
        assert!(verify_marking_discipline(&k, w, Discipline::OnceMarking).unwrap().holds(), "{w}");
        assert!(verify_marking_discipline(&j, w, Discipline::AlwaysMarking).unwrap().holds(), "{w}");
    }
}

#[test]
fn fooling_sets_certify_both_families() {
    for n in 1..=4 {
        let pairs = jn_fooling_set(n).unwrap();
        for family in [Family::Kn, Family::Jn] {
            let v = verify_fooling_set(|w| member(family, n, w).unwrap(), &pairs);
            assert_eq!(v, FoolingVerdict::Certified(1 << n), "{family} n={n}");
        }
    }
}

#[test]
fn minimal_reference_sizes() {
    let sizes: Vec<usize> = (1..=3).map(|n| minimize_dfa(&jn_reference_dfa(n).unwrap()).num_states()).collect();
    assert!(sizes.iter().enumerate().all(|(i, &s)| s >= 1 << (i + 1)));
    assert!(minimize_dfa(&kn_reference_dfa(2).unwrap()).num_states() >= 16);
}
