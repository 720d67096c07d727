//! `lawb`: command-line workbench for 1-limited automata.
//!
//! Exit status: 0 for success, acceptance or equality; 1 for rejection, a
//! counterexample or a violated bound; 2 for usage, parse or validation
//! errors.

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use limited_automata::analysis::{gap_experiment_with, language_equiv_bounded, GapOptions};
use limited_automata::convert::{determinize, la_to_ownfa, minimize_dfa, Equivalence};
use limited_automata::exec::{decide_acceptance, trace_deterministic, Configuration, DeterministicRun, Trace};
use limited_automata::format::{export_dot, parse_machine, serialize_machine, Machine};
use limited_automata::twoway::domla_to_twdfa;
use limited_automata::validate::is_deterministic;
use limited_automata::witness::{gen_jn_damla, gen_kn_omla, jn_fooling_set, member, verify_fooling_set, Family, FoolingVerdict};
use limited_automata::{classify, validate};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "lawb", version, about = "Workbench for 1-limited automata and their conversions")]
struct Cli {
    /// Also write a JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a machine is well formed.
    Validate { file: PathBuf },
    /// Report determinism and the marking, sweeping and write-free properties.
    Classify { file: PathBuf },
    /// Decide acceptance of a word.
    Run {
        file: PathBuf,
        #[arg(default_value = "")]
        word: String,
        /// Print the computation (the accepting one, or the unique run of a
        /// deterministic machine).
        #[arg(long)]
        trace: bool,
    },
    /// Convert a machine; reads standard input when no file (or `-`) is given.
    Convert {
        file: Option<PathBuf>,
        #[arg(long, value_enum)]
        to: Target,
    },
    /// Compare two machines on every word up to a length.
    Equiv {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// Print a witness machine.
    Gen {
        #[arg(value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        n: usize,
    },
    /// Membership in a witness language, from its definition.
    Oracle {
        #[arg(value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(default_value = "")]
        word: String,
    },
    /// Check the fooling set `{(x, x)}` against the membership oracle.
    Fooling {
        #[arg(long, value_parser = parse_family, default_value = "jn")]
        family: Family,
        #[arg(long)]
        n: usize,
    },
    /// Measure conversion sizes for a witness family and check the bounds.
    Experiment {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        /// Record wall-clock times (the report then differs between runs).
        #[arg(long)]
        timings: bool,
    },
    /// Print a machine in Graphviz DOT.
    ExportDot { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Nfa,
    Dfa,
    MinDfa,
    Twdfa,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: limited_automata::Error| e.to_string())
}

fn read_machine(path: Option<&Path>) -> Result<Machine> {
    let (name, text) = match path {
        None => ("<stdin>".to_string(), read_stdin()?),
        Some(p) if p == Path::new("-") => ("<stdin>".to_string(), read_stdin()?),
        Some(p) => (p.display().to_string(), fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?),
    };
    parse_machine(&text).with_context(|| format!("{name}: parse error"))
}

fn read_stdin() -> Result<String> {
    let mut s = String::new();
    io::stdin().read_to_string(&mut s).context("cannot read standard input")?;
    Ok(s)
}

fn write_report(out: Option<&Path>, report: &impl Serialize) -> Result<()> {
    if let Some(p) = out {
        let mut text = serde_json::to_string_pretty(report)?;
        text.push('\n');
        fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))?;
    }
    Ok(())
}

fn show_config(c: &Configuration, names: &[String]) -> String {
    let tape: Vec<String> = c
        .tape
        .iter()
        .enumerate()
        .map(|(i, s)| if i == c.head { format!("[{s}]") } else { s.to_string() })
        .collect();
    let tail = if c.is_terminal() { " []" } else { "" };
    format!("{:>8}  {}{tail}", names[c.state], tape.join(" "))
}

fn print_trace(t: &Trace, names: &[String]) {
    for c in &t.steps {
        println!("{}", show_config(c, names));
    }
}

/// `Ok(true)` maps to exit 0, `Ok(false)` to exit 1.
fn run(cli: Cli) -> Result<bool> {
    let out = cli.out.as_deref();
    match cli.command {
        Command::Validate { file } => {
            let m = read_machine(Some(&file))?;
            let diags = match &m {
                Machine::La(la) => validate(la),
                _ => Vec::new(),
            };
            for d in &diags {
                println!("{d}");
            }
            write_report(out, &json!({ "kind": m.kind(), "valid": diags.is_empty(), "diagnostics": diags }))?;
            if !diags.is_empty() {
                bail!("{} diagnostics", diags.len());
            }
            println!("valid {} with {} states", m.kind(), m.num_states());
            Ok(true)
        }
        Command::Classify { file } => {
            let Machine::La(la) = read_machine(Some(&file))? else {
                bail!("classify expects an LA1 machine");
            };
            let p = classify(&la)?;
            println!("deterministic: {}", p.deterministic);
            println!("once-marking: {}", p.structurally_once_marking);
            println!("always-marking: {}", p.structurally_always_marking);
            println!("sweeping: {}", p.sweeping);
            println!("write-free: {}", p.write_free);
            write_report(out, &p)?;
            Ok(true)
        }
        Command::Run { file, word, trace } => {
            let m = read_machine(Some(&file))?;
            let (accepted, steps) = match &m {
                Machine::La(la) if trace && is_deterministic(la) => {
                    let r = trace_deterministic(la, &word, 1_000_000)?;
                    print_trace(r.trace(), la.state_names());
                    if let DeterministicRun::Loop(l) = &r {
                        println!("loop: {:?}", l.kind);
                    }
                    (r.accepted(), Some(r.trace().clone()))
                }
                Machine::La(la) => {
                    let v = decide_acceptance(la, &word)?;
                    if trace {
                        match &v.certificate {
                            Some(t) => print_trace(t, la.state_names()),
                            None => println!("no accepting computation ({} configurations explored)", v.explored),
                        }
                    }
                    (v.accepted(), v.certificate)
                }
                Machine::Nfa(a) => (a.accepts(&word)?, None),
                Machine::Dfa(a) => (a.accepts(&word)?, None),
            };
            println!("{}", if accepted { "accept" } else { "reject" });
            write_report(out, &json!({ "word": word, "accepted": accepted, "trace": steps }))?;
            Ok(accepted)
        }
        Command::Convert { file, to } => {
            let m = read_machine(file.as_deref())?;
            let result: Machine = match (to, m) {
                (Target::Nfa, Machine::La(la)) => la_to_ownfa(&la)?.into(),
                (Target::Dfa, Machine::La(la)) => determinize(&la_to_ownfa(&la)?).into(),
                (Target::Dfa, Machine::Nfa(a)) => determinize(&a).into(),
                (Target::MinDfa, Machine::La(la)) => minimize_dfa(&determinize(&la_to_ownfa(&la)?)).into(),
                (Target::MinDfa, Machine::Nfa(a)) => minimize_dfa(&determinize(&a)).into(),
                (Target::MinDfa, Machine::Dfa(a)) => minimize_dfa(&a).into(),
                (Target::Twdfa, Machine::La(la)) => domla_to_twdfa(&la)?.into(),
                (_, m) => bail!("cannot convert a {} machine to that target", m.kind()),
            };
            println!("# {} with {} states", result.kind(), result.num_states());
            print!("{}", serialize_machine(&result));
            write_report(out, &json!({ "kind": result.kind(), "states": result.num_states(), "text": serialize_machine(&result) }))?;
            Ok(true)
        }
        Command::Equiv { left, right, max_len } => {
            let (a, b) = (read_machine(Some(&left))?, read_machine(Some(&right))?);
            let eq = language_equiv_bounded(&a, &b, max_len)?;
            match &eq {
                Equivalence::Equal => println!("equal on all words up to length {max_len}"),
                Equivalence::Counterexample(w) => println!("counterexample: {w:?}"),
            }
            let counterexample = match &eq {
                Equivalence::Equal => None,
                Equivalence::Counterexample(w) => Some(w.clone()),
            };
            write_report(out, &json!({ "maxLen": max_len, "equal": eq.is_equal(), "counterexample": counterexample }))?;
            Ok(eq.is_equal())
        }
        Command::Gen { family, n } => {
            let la = match family {
                Family::Kn => gen_kn_omla(n)?,
                Family::Jn => gen_jn_damla(n)?,
            };
            let text = serialize_machine(&Machine::La(la));
            print!("{text}");
            write_report(out, &json!({ "family": family, "n": n, "text": text }))?;
            Ok(true)
        }
        Command::Oracle { family, n, word } => {
            let accepted = member(family, n, &word)?;
            println!("{}", if accepted { "accept" } else { "reject" });
            write_report(out, &json!({ "family": family, "n": n, "word": word, "accepted": accepted }))?;
            Ok(accepted)
        }
        Command::Fooling { family, n } => {
            let pairs = jn_fooling_set(n)?;
            let verdict = verify_fooling_set(|w| member(family, n, w).unwrap_or(false), &pairs);
            match verdict {
                FoolingVerdict::Certified(k) => println!("certified: every NFA needs at least {k} states"),
                FoolingVerdict::Violation(i, j) => println!("violation at pairs {i} and {j}"),
            }
            write_report(out, &json!({ "family": family, "n": n, "pairs": pairs, "verdict": verdict }))?;
            Ok(matches!(verdict, FoolingVerdict::Certified(_)))
        }
        Command::Experiment { family, min_n, max_n, max_len, timings } => {
            let opts = GapOptions { record_runtimes: timings, ..GapOptions::default() };
            let report = gap_experiment_with(family, min_n..=max_n, max_len, opts)?;
            print!("{report}");
            write_report(out, &report)?;
            Ok(report.all_bounds_hold())
        }
        Command::ExportDot { file } => {
            let m = read_machine(Some(&file))?;
            let dot = export_dot(&m);
            print!("{dot}");
            write_report(out, &json!({ "kind": m.kind(), "dot": dot }))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
