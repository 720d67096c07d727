use std::fmt::Write as _;

use super::Machine;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering: one node per state, one labelled edge per transition,
/// final states double-circled.
pub fn export_dot(m: &Machine) -> String {
    let n = m.num_states();
    let (names, finals, initial): (Vec<String>, Vec<bool>, Option<usize>) = match m {
        Machine::La(la) => (
            la.state_names().to_vec(),
            (0..n).map(|q| la.is_final(q)).collect(),
            (n > 0).then(|| la.initial()),
        ),
        Machine::Nfa(a) => (
            (0..n).map(|q| a.state_name(q).to_string()).collect(),
            (0..n).map(|q| a.is_final(q)).collect(),
            (n > 0).then(|| a.initial()),
        ),
        Machine::Dfa(a) => (
            (0..n).map(|q| a.state_name(q).to_string()).collect(),
            (0..n).map(|q| a.is_final(q)).collect(),
            (n > 0).then(|| a.initial()),
        ),
    };
    let edges: Vec<(usize, usize, String)> = match m {
        Machine::La(la) => la
            .transitions()
            .iter()
            .map(|t| (t.from, t.to, format!("{} / {}, {}", t.read, t.write, t.dir)))
            .collect(),
        Machine::Nfa(a) => a.transitions().map(|(p, x, q)| (p, q, a.alphabet()[x].to_string())).collect(),
        Machine::Dfa(a) => a.transitions().map(|(p, x, q)| (p, q, a.alphabet()[x].to_string())).collect(),
    };

    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(m.kind()));
    out.push_str("  rankdir=LR;\n");
    for (q, name) in names.iter().enumerate() {
        let shape = if finals[q] { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  {} [shape={shape}];", quote(name));
    }
    if let Some(i) = initial {
        out.push_str("  __start [shape=point];\n");
        let _ = writeln!(out, "  __start -> {};", quote(&names[i]));
    }
    for (p, q, label) in edges {
        let _ = writeln!(out, "  {} -> {} [label={}];", quote(&names[p]), quote(&names[q]), quote(&label));
    }
    out.push_str("}\n");
    out
}
