//! Plain-text automaton documents.
//!
//! ```text
//! LA1
//! states: q0 q1 f
//! input: a b
//! work: a'
//! initial: q0
//! final: f
//! transitions:
//! q0, |- -> q1, +1
//! q1, a -> q1, a', +1
//! q1, -| -> f, +1
//! ```
//!
//! The header is `LA1`, `NFA` or `DFA`. Each declaration appears once;
//! everything after `transitions:` is a transition. Transitions on an
//! end-marker omit the write component, and finite automata use
//! `q, a -> p`. Marked letters are written with a trailing prime; the
//! marked copy of an input letter may be used without declaring it. Blank
//! lines and lines starting with `#` are ignored.

mod dot;

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

pub use dot::export_dot;

use crate::machine::{LimitedAutomaton, StateId, Transition};
use crate::oneway::{OneWayDfa, OneWayNfa};
use crate::symbol::{is_letter_char, Dir, TapeSymbol};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Machine {
    La(LimitedAutomaton),
    Nfa(OneWayNfa),
    Dfa(OneWayDfa),
}

impl Machine {
    pub fn kind(&self) -> &'static str {
        match self {
            Machine::La(_) => "LA1",
            Machine::Nfa(_) => "NFA",
            Machine::Dfa(_) => "DFA",
        }
    }

    pub fn num_states(&self) -> usize {
        match self {
            Machine::La(m) => m.num_states(),
            Machine::Nfa(m) => m.num_states(),
            Machine::Dfa(m) => m.num_states(),
        }
    }

    pub fn input_alphabet(&self) -> &[char] {
        match self {
            Machine::La(m) => m.input_alphabet(),
            Machine::Nfa(m) => m.alphabet(),
            Machine::Dfa(m) => m.alphabet(),
        }
    }
}

impl From<LimitedAutomaton> for Machine {
    fn from(m: LimitedAutomaton) -> Self {
        Machine::La(m)
    }
}

impl From<OneWayNfa> for Machine {
    fn from(m: OneWayNfa) -> Self {
        Machine::Nfa(m)
    }
}

impl From<OneWayDfa> for Machine {
    fn from(m: OneWayDfa) -> Self {
        Machine::Dfa(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A trimmed piece of a line with its 1-based line and column.
#[derive(Clone, Copy, Debug)]
struct Piece<'a> {
    line: usize,
    col: usize,
    text: &'a str,
}

impl<'a> Piece<'a> {
    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { line: self.line, column: self.col, message: message.into() })
    }

    fn split(self, sep: &str) -> Vec<Piece<'a>> {
        let mut out = Vec::new();
        let mut col = self.col;
        for part in self.text.split(sep) {
            out.push(Piece { line: self.line, col, text: part }.trim());
            col += part.chars().count() + sep.chars().count();
        }
        out
    }

    fn words(self) -> Vec<Piece<'a>> {
        self.split(" ").into_iter().filter(|p| !p.text.is_empty()).collect()
    }

    fn trim(self) -> Piece<'a> {
        let lead = self.text.len() - self.text.trim_start().len();
        Piece { line: self.line, col: self.col + self.text[..lead].chars().count(), text: self.text.trim() }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    La,
    Nfa,
    Dfa,
}

#[derive(Default)]
struct Decls<'a> {
    states: Option<Vec<Piece<'a>>>,
    input: Option<Vec<Piece<'a>>>,
    work: Option<Vec<Piece<'a>>>,
    initial: Option<(Piece<'a>, Vec<Piece<'a>>)>,
    finals: Option<Vec<Piece<'a>>>,
}

fn single_letter(s: &str) -> Option<char> {
    let mut cs = s.chars();
    match (cs.next(), cs.next()) {
        (Some(c), None) if is_letter_char(c) => Some(c),
        _ => None,
    }
}

fn parse_symbol(p: Piece, input: &[char], work: &[TapeSymbol]) -> Result<TapeSymbol, ParseError> {
    match p.text {
        "|-" => return Ok(TapeSymbol::LeftEnd),
        "-|" => return Ok(TapeSymbol::RightEnd),
        _ => {}
    }
    if let Some(base) = p.text.strip_suffix('\'') {
        return match single_letter(base) {
            Some(c) if input.contains(&c) => Ok(TapeSymbol::Marked(c)),
            _ => p.fail(format!("unknown symbol {:?}: only input letters can be marked", p.text)),
        };
    }
    match single_letter(p.text) {
        Some(c) if input.contains(&c) => Ok(TapeSymbol::Input(c)),
        Some(c) if work.contains(&TapeSymbol::Work(c)) => Ok(TapeSymbol::Work(c)),
        _ => p.fail(format!("unknown symbol {:?}", p.text)),
    }
}

fn parse_dir(p: Piece) -> Result<Dir, ParseError> {
    match p.text {
        "+1" => Ok(Dir::Right),
        "-1" => Ok(Dir::Left),
        other => p.fail(format!("malformed direction {other:?}: expected +1 or -1")),
    }
}

/// Splits `lhs -> rhs` into the comma-separated pieces of both sides.
fn arrow<'a>(p: Piece<'a>) -> Result<(Vec<Piece<'a>>, Vec<Piece<'a>>), ParseError> {
    let sides = p.split("->");
    if sides.len() != 2 {
        return p.fail("expected exactly one `->` in a transition");
    }
    Ok((sides[0].split(","), sides[1].split(",")))
}

fn nonempty<'a>(ps: &[Piece<'a>], what: &str, at: Piece<'a>) -> Result<(), ParseError> {
    match ps.iter().find(|p| p.text.is_empty()) {
        Some(p) => p.fail(format!("missing {what}")),
        None if ps.is_empty() => at.fail(format!("missing {what}")),
        None => Ok(()),
    }
}

/// Parses any of the three document kinds.
pub fn parse_machine(text: &str) -> Result<Machine, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| {
            let l = l.trim_end_matches('\r');
            Piece { line: i + 1, col: 1, text: l.split_once('#').map_or(l, |(code, _)| code) }
        })
        .filter(|p| !p.text.trim().is_empty());

    let Some(header) = lines.next() else {
        return Err(ParseError { line: 1, column: 1, message: "empty document: expected LA1, NFA or DFA".into() });
    };
    let header = header.trim();
    let kind = match header.text {
        "LA1" => Kind::La,
        "NFA" => Kind::Nfa,
        "DFA" => Kind::Dfa,
        other => return header.fail(format!("unknown header {other:?}: expected LA1, NFA or DFA")),
    };

    let mut d = Decls::default();
    let mut body = Vec::new();
    let mut in_transitions = false;
    let mut last = header;
    for line in lines {
        last = line;
        if in_transitions {
            body.push(line.trim());
            continue;
        }
        let Some(colon) = line.text.find(':') else {
            return line.trim().fail("expected a declaration `key: values`");
        };
        let key = Piece { text: &line.text[..colon], ..line }.trim();
        let values = Piece {
            line: line.line,
            col: line.text[..=colon].chars().count() + 1,
            text: &line.text[colon + 1..],
        }
        .words();
        let slot_taken = match key.text {
            "states" => d.states.replace(values).is_some(),
            "input" => d.input.replace(values).is_some(),
            "work" if kind == Kind::La => d.work.replace(values).is_some(),
            "initial" => d.initial.replace((key, values)).is_some(),
            "final" => d.finals.replace(values).is_some(),
            "transitions" => {
                if let Some(v) = values.first() {
                    return v.fail("transitions start on the next line");
                }
                in_transitions = true;
                false
            }
            other => return key.fail(format!("unknown declaration `{other}`")),
        };
        if slot_taken {
            return key.fail(format!("duplicate declaration `{}`", key.text));
        }
    }
    let missing = |what: &str| last.fail::<Machine>(format!("missing `{what}:` declaration"));

    let Some(state_pieces) = d.states else { return missing("states") };
    let mut names = Vec::new();
    let mut ids: HashMap<&str, StateId> = HashMap::new();
    for p in &state_pieces {
        if p.text.contains(',') || p.text.contains("->") || p.text.contains('#') {
            return p.fail(format!("invalid state name {:?}", p.text));
        }
        if ids.insert(p.text, names.len()).is_some() {
            return p.fail(format!("duplicate state {:?}", p.text));
        }
        names.push(p.text.to_string());
    }
    let state = |p: Piece| ids.get(p.text).copied().map_or_else(|| p.fail(format!("unknown state {:?}", p.text)), Ok);

    let Some(input_pieces) = d.input else { return missing("input") };
    let mut input = Vec::new();
    for p in &input_pieces {
        match single_letter(p.text) {
            Some(c) if input.contains(&c) => return p.fail(format!("duplicate input letter {c:?}")),
            Some(c) => input.push(c),
            None => return p.fail(format!("invalid input letter {:?}", p.text)),
        }
    }

    let Some((init_key, init_vals)) = d.initial else { return missing("initial") };
    let initial = match init_vals.as_slice() {
        [one] => state(*one)?,
        [] => return init_key.fail("missing initial state"),
        [_, extra, ..] => return extra.fail("exactly one initial state expected"),
    };
    let finals = d.finals.unwrap_or_default().into_iter().map(state).collect::<Result<Vec<_>, _>>()?;

    if kind == Kind::La {
        let mut work = Vec::new();
        for p in d.work.unwrap_or_default() {
            let sym = match parse_symbol(p, &input, &[]) {
                Ok(s @ TapeSymbol::Marked(_)) => s,
                _ => match single_letter(p.text) {
                    Some(c) if !input.contains(&c) => TapeSymbol::Work(c),
                    _ => return p.fail(format!("invalid work symbol {:?}", p.text)),
                },
            };
            work.push(sym);
        }
        let mut transitions = Vec::new();
        for line in body {
            let (lhs, rhs) = arrow(line)?;
            if lhs.len() != 2 {
                return line.fail("expected `state, symbol` before `->`");
            }
            nonempty(&lhs, "state or symbol", line)?;
            nonempty(&rhs, "target", line)?;
            let from = state(lhs[0])?;
            let read = parse_symbol(lhs[1], &input, &work)?;
            let (to, write, dir) = match (read.is_end_marker(), rhs.as_slice()) {
                (true, [to, dir]) => (state(*to)?, read, parse_dir(*dir)?),
                (true, [_, w, _]) => return w.fail("transitions on an end-marker take no write symbol"),
                (false, [to, w, dir]) => {
                    let write = parse_symbol(*w, &input, &work)?;
                    if write.is_end_marker() {
                        return w.fail("end-marker written");
                    }
                    (state(*to)?, write, parse_dir(*dir)?)
                }
                (false, _) => return line.fail("expected `state, write, +1|-1` after `->`"),
                (true, _) => return line.fail("expected `state, +1|-1` after `->`"),
            };
            for s in [read, write] {
                if matches!(s, TapeSymbol::Marked(_)) && !work.contains(&s) {
                    work.push(s);
                }
            }
            transitions.push(Transition { from, read, to, write, dir });
        }
        return Ok(Machine::La(LimitedAutomaton::new(names, input, work, transitions, initial, finals)));
    }

    let mut nfa = OneWayNfa::new(input.iter().copied());
    let mut dfa = OneWayDfa::new(input.iter().copied());
    for name in &names {
        nfa.add_state(name.clone());
        dfa.add_state(name.clone());
    }
    for line in body {
        let (lhs, rhs) = arrow(line)?;
        if lhs.len() != 2 || rhs.len() != 1 {
            return line.fail("expected `state, letter -> state`");
        }
        nonempty(&lhs, "state or letter", line)?;
        nonempty(&rhs, "target", line)?;
        let from = state(lhs[0])?;
        let to = state(rhs[0])?;
        let letter = match single_letter(lhs[1].text) {
            Some(c) if input.contains(&c) => c,
            _ => return lhs[1].fail(format!("unknown symbol {:?}", lhs[1].text)),
        };
        let a = nfa.letter_index(letter).expect("declared letter");
        if kind == Kind::Dfa {
            if dfa.next(from, a).is_some_and(|old| old != to) {
                return line.fail("two transitions for the same state and letter in a DFA");
            }
            dfa.set_transition(from, a, to);
        } else {
            nfa.add_transition(from, a, to);
        }
    }
    for &f in &finals {
        nfa.set_final(f, true);
        dfa.set_final(f, true);
    }
    nfa.set_initial(initial);
    dfa.set_initial(initial);
    Ok(if kind == Kind::Dfa { Machine::Dfa(dfa) } else { Machine::Nfa(nfa) })
}

fn write_list<T: std::fmt::Display>(out: &mut String, key: &str, items: impl IntoIterator<Item = T>) {
    out.push_str(key);
    out.push(':');
    for item in items {
        let _ = write!(out, " {item}");
    }
    out.push('\n');
}

pub fn serialize_la(la: &LimitedAutomaton) -> String {
    let mut out = String::from("LA1\n");
    write_list(&mut out, "states", la.state_names());
    write_list(&mut out, "input", la.input_alphabet());
    let extra: Vec<_> = la
        .work_alphabet()
        .iter()
        .filter(|s| matches!(s, TapeSymbol::Marked(_) | TapeSymbol::Work(_)))
        .collect();
    if !extra.is_empty() {
        write_list(&mut out, "work", extra);
    }
    write_list(&mut out, "initial", [la.state_name(la.initial())]);
    write_list(&mut out, "final", la.finals().iter().map(|&f| la.state_name(f)));
    out.push_str("transitions:\n");
    for t in la.transitions() {
        let (from, to) = (la.state_name(t.from), la.state_name(t.to));
        if t.read.is_end_marker() {
            let _ = writeln!(out, "{from}, {} -> {to}, {}", t.read, t.dir);
        } else {
            let _ = writeln!(out, "{from}, {} -> {to}, {}, {}", t.read, t.write, t.dir);
        }
    }
    out
}

fn serialize_fa(
    out: &mut String,
    names: Vec<&str>,
    alphabet: &[char],
    initial: StateId,
    finals: Vec<&str>,
    transitions: impl Iterator<Item = (StateId, usize, StateId)>,
) {
    write_list(out, "states", &names);
    write_list(out, "input", alphabet);
    if !names.is_empty() {
        write_list(out, "initial", [names[initial]]);
    }
    write_list(out, "final", finals);
    out.push_str("transitions:\n");
    for (p, a, q) in transitions {
        let _ = writeln!(out, "{}, {} -> {}", names[p], alphabet[a], names[q]);
    }
}

pub fn serialize_nfa(nfa: &OneWayNfa) -> String {
    let mut out = String::from("NFA\n");
    let names = (0..nfa.num_states()).map(|q| nfa.state_name(q)).collect();
    let finals = (0..nfa.num_states()).filter(|&q| nfa.is_final(q)).map(|q| nfa.state_name(q)).collect();
    serialize_fa(&mut out, names, nfa.alphabet(), nfa.initial(), finals, nfa.transitions());
    out
}

pub fn serialize_dfa(dfa: &OneWayDfa) -> String {
    let mut out = String::from("DFA\n");
    let names = (0..dfa.num_states()).map(|q| dfa.state_name(q)).collect();
    let finals = (0..dfa.num_states()).filter(|&q| dfa.is_final(q)).map(|q| dfa.state_name(q)).collect();
    serialize_fa(&mut out, names, dfa.alphabet(), dfa.initial(), finals, dfa.transitions());
    out
}

pub fn serialize_machine(m: &Machine) -> String {
    match m {
        Machine::La(m) => serialize_la(m),
        Machine::Nfa(m) => serialize_nfa(m),
        Machine::Dfa(m) => serialize_dfa(m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# marks the first a
LA1
states: q0 q1 f
input: a b
initial: q0
final: f
transitions:
q0, |- -> q1, +1
q1, a -> q1, a', +1
q1, b -> q1, b, +1
q1, -| -> f, +1
";

    fn la(text: &str) -> LimitedAutomaton {
        match parse_machine(text).unwrap() {
            Machine::La(m) => m,
            other => panic!("expected LA1, got {}", other.kind()),
        }
    }

    #[test]
    fn parses_and_round_trips() {
        let m = la(SAMPLE);
        assert_eq!(m.num_states(), 3);
        assert!(m.work_alphabet().contains(&TapeSymbol::Marked('a')));
        let text = serialize_la(&m);
        assert!(text.contains("q1, a -> q1, a', +1"));
        assert_eq!(la(&text), m);
        assert_eq!(serialize_la(&la(&text)), text);
    }

    #[test]
    fn trailing_comments_are_ignored() {
        let commented = SAMPLE.replace("q1, b -> q1, b, +1", "q1, b -> q1, b, +1   # stay");
        assert_eq!(parse_machine(&commented).unwrap(), parse_machine(SAMPLE).unwrap());
    }

    #[test]
    fn end_marker_write_is_rejected() {
        let bad = SAMPLE.replace("q1, b -> q1, b, +1", "q1, b -> q1, -|, +1");
        let e = parse_machine(&bad).unwrap_err();
        assert_eq!((e.line, e.column), (10, 14));
        assert!(e.message.contains("end-marker written"));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_machine(&SAMPLE.replace("initial: q0\n", "")).unwrap_err();
        assert!(e.message.contains("initial"), "{e}");
        let e = parse_machine(&SAMPLE.replace("+1\nq1, -|", "+2\nq1, -|")).unwrap_err();
        assert!(e.message.contains("malformed direction"));
        assert_eq!(e.line, 10);
        let e = parse_machine(&SAMPLE.replace("input: a b", "input: a b\ninput: a")).unwrap_err();
        assert!(e.message.contains("duplicate declaration"));
        let e = parse_machine(&SAMPLE.replace("q1, a -> q1, a'", "q1, c -> q1, a'")).unwrap_err();
        assert!(e.message.contains("unknown symbol"));
        assert_eq!(e.column, 5);
        assert!(parse_machine("").is_err());
        assert!(parse_machine("TM\n").is_err());
    }

    #[test]
    fn finite_automata_round_trip() {
        let text = "DFA\nstates: p q\ninput: a b\ninitial: p\nfinal: q\ntransitions:\np, a -> q\nq, b -> p\n";
        let m = parse_machine(text).unwrap();
        assert_eq!(serialize_machine(&m), text);
        let nfa = text.replace("DFA", "NFA") + "p, a -> p\n";
        let m = parse_machine(&nfa).unwrap();
        assert!(matches!(&m, Machine::Nfa(n) if !n.is_deterministic()));
        assert_eq!(parse_machine(&serialize_machine(&m)).unwrap(), m);
        let clash = text.to_string() + "p, a -> p\n";
        assert!(parse_machine(&clash).is_err());
    }
}
