use limited_automata::analysis::{random_domla, random_la};
use limited_automata::convert::{determinize, la_to_ownfa, minimize_dfa};
use limited_automata::format::{export_dot, parse_machine, serialize_machine, Machine};
use limited_automata::witness::{gen_jn_damla, gen_kn_omla};
use proptest::prelude::*;

fn round_trip(m: &Machine) {
    let text = serialize_machine(m);
    let back = parse_machine(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
    assert_eq!(&back, m);
    assert_eq!(serialize_machine(&back), text);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_machines_round_trip(seed in any::<u64>(), states in 1usize..6) {
        let la = random_la(seed, states).unwrap();
        let nfa = la_to_ownfa(&la).unwrap();
        let dfa = minimize_dfa(&determinize(&nfa));
        round_trip(&Machine::La(la));
        round_trip(&Machine::Nfa(nfa));
        round_trip(&Machine::Dfa(dfa));
        round_trip(&Machine::La(random_domla(seed, 6).unwrap()));
    }

    #[test]
    fn garbage_never_panics(text in "[a-z0-9:,|\\-> '\n+#]{0,200}") {
        let _ = parse_machine(&text);
    }
}

#[test]
fn witnesses_round_trip() {
    for n in 1..=3 {
        round_trip(&Machine::La(gen_kn_omla(n).unwrap()));
        round_trip(&Machine::La(gen_jn_damla(n).unwrap()));
    }
}

#[test]
fn dot_lists_every_state() {
    let k = Machine::La(gen_kn_omla(1).unwrap());
    let dot = export_dot(&k);
    assert!(dot.starts_with("digraph"));
    let nodes = dot.lines().filter(|l| l.contains("shape=") && !l.contains("__start")).count();
    assert_eq!(nodes, k.num_states());
}
