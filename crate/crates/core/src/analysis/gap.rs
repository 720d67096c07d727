use std::fmt;
use std::ops::RangeInclusive;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::convert::{amla_to_owdfa, determinize, dfa_equiv, la_to_ownfa, minimize_dfa};
use crate::error::{Error, Result};
use crate::format::Machine;
use crate::machine::LimitedAutomaton;
use crate::oneway::OneWayDfa;
use crate::par::{self, Strategy};
use crate::witness::{
    gen_jn_damla, gen_kn_omla, jn_fooling_set, jn_reference_dfa, kn_reference_dfa, member, verify_fooling_set, Family,
    FoolingVerdict, FOOLING_CAP, JN_REFERENCE_CAP, KN_REFERENCE_CAP,
};

use super::language_equiv_bounded_with;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GapOptions {
    pub kn_conversion_cap: usize,
    pub jn_conversion_cap: usize,
    pub fooling_cap: usize,
    /// Wall-clock times make the report differ between runs, so they are off
    /// unless asked for.
    pub record_runtimes: bool,
    pub strategy: Strategy,
}

impl Default for GapOptions {
    fn default() -> Self {
        GapOptions {
            kn_conversion_cap: 2,
            jn_conversion_cap: 3,
            fooling_cap: 4,
            record_runtimes: false,
            strategy: Strategy::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum RowStatus {
    Complete,
    Partial,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub detail: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GapRow {
    pub n: usize,
    pub status: RowStatus,
    pub la_states: usize,
    pub nfa_states: Option<usize>,
    pub dfa_states: Option<usize>,
    pub min_dfa_states: Option<usize>,
    /// Direct construction for always-marking machines.
    pub am_dfa_states: Option<usize>,
    pub reference_min_dfa_states: Option<usize>,
    /// Only deterministic once-marking machines compile to two-way DFAs;
    /// neither witness family is one.
    pub twdfa_states: Option<usize>,
    pub fooling_lower_bound: Option<usize>,
    pub bounds: Vec<BoundCheck>,
    pub skipped: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub runtime_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GapReport {
    pub family: Family,
    pub n_min: usize,
    pub n_max: usize,
    pub max_len: usize,
    pub rows: Vec<GapRow>,
}

impl GapReport {
    pub fn all_bounds_hold(&self) -> bool {
        self.rows.iter().flat_map(|r| &r.bounds).all(|b| b.holds)
    }
}

pub fn gap_experiment(family: Family, ns: RangeInclusive<usize>, max_len: usize) -> Result<GapReport> {
    gap_experiment_with(family, ns, max_len, GapOptions::default())
}

/// Builds the witness for every `n` in range, runs the conversions that fit
/// under the caps, and checks the size bounds that apply. Rows run
/// independently and are reported in order of `n`.
pub fn gap_experiment_with(family: Family, ns: RangeInclusive<usize>, max_len: usize, opts: GapOptions) -> Result<GapReport> {
    if *ns.start() == 0 || ns.is_empty() {
        return Err(Error::InvalidParameter(format!("bad n range {}..={}", ns.start(), ns.end())));
    }
    let (n_min, n_max) = (*ns.start(), *ns.end());
    let list: Vec<usize> = ns.collect();
    let rows = par::map(opts.strategy, &list, |&n| row(family, n, max_len, &opts));
    Ok(GapReport { family, n_min, n_max, max_len, rows: rows.into_iter().collect::<Result<_>>()? })
}

fn pow(base: u128, exp: usize) -> Option<u128> {
    base.checked_pow(u32::try_from(exp).ok()?)
}

/// `(2^m - 1) * 2^(m^2) + 1`, or `None` past `u128`.
fn always_marking_bound(m: usize) -> Option<u128> {
    (pow(2, m)? - 1).checked_mul(pow(2, m.checked_mul(m)?)?)?.checked_add(1)
}

/// `m * (m + 1)^m`, or `None` past `u128`.
fn deterministic_bound(m: usize) -> Option<u128> {
    pow(m as u128 + 1, m)?.checked_mul(m as u128)
}

fn show(b: Option<u128>) -> String {
    b.map_or_else(|| "beyond 2^128".into(), |b| b.to_string())
}

struct Row {
    r: GapRow,
}

impl Row {
    fn check(&mut self, name: &str, detail: String, holds: bool) {
        self.r.bounds.push(BoundCheck { name: name.into(), detail, holds });
    }

    fn at_most(&mut self, name: &str, measured: usize, bound: Option<u128>) {
        let holds = bound.is_none_or(|b| measured as u128 <= b);
        self.check(name, format!("{measured} <= {}", show(bound)), holds);
    }

    fn at_least(&mut self, name: &str, measured: usize, bound: u128) {
        self.check(name, format!("{measured} >= {bound}"), measured as u128 >= bound);
    }

    fn equal(&mut self, name: &str, a: &OneWayDfa, b: &OneWayDfa) -> Result<()> {
        let eq = dfa_equiv(a, b)?.is_equal() && a.num_states() == b.num_states();
        self.check(name, format!("{} vs {} states", a.num_states(), b.num_states()), eq);
        Ok(())
    }
}

fn row(family: Family, n: usize, max_len: usize, opts: &GapOptions) -> Result<GapRow> {
    let started = Instant::now();
    let la: LimitedAutomaton = match family {
        Family::Kn => gen_kn_omla(n)?,
        Family::Jn => gen_jn_damla(n)?,
    };
    let m = la.num_states();
    let mut row = Row {
        r: GapRow {
            n,
            status: RowStatus::Complete,
            la_states: m,
            nfa_states: None,
            dfa_states: None,
            min_dfa_states: None,
            am_dfa_states: None,
            reference_min_dfa_states: None,
            twdfa_states: None,
            fooling_lower_bound: None,
            bounds: Vec::new(),
            skipped: Vec::new(),
            runtime_ms: None,
        },
    };
    let (conversion_cap, reference_cap) = match family {
        Family::Kn => (opts.kn_conversion_cap, KN_REFERENCE_CAP),
        Family::Jn => (opts.jn_conversion_cap, JN_REFERENCE_CAP),
    };
    let lower = match family {
        Family::Kn => pow(2, 1usize.checked_shl(n as u32).unwrap_or(usize::MAX)),
        Family::Jn => pow(2, n),
    };

    let mut min_dfa = None;
    if n <= conversion_cap {
        let nfa = la_to_ownfa(&la)?;
        let dfa = determinize(&nfa);
        let min = minimize_dfa(&dfa);
        row.r.nfa_states = Some(nfa.num_states());
        row.r.dfa_states = Some(dfa.num_states());
        row.r.min_dfa_states = Some(min.num_states());
        row.check("minimal DFA no larger than DFA", format!("{} <= {}", min.num_states(), dfa.num_states()), min.num_states() <= dfa.num_states());
        if let Some(lower) = lower {
            row.at_least("minimal DFA lower bound", min.num_states(), lower);
        }
        let same = language_equiv_bounded_with(&Machine::La(la.clone()), &Machine::Dfa(min.clone()), max_len, opts.strategy)?;
        row.check("machine agrees with minimal DFA", format!("all words up to length {max_len}"), same.is_equal());
        if family == Family::Jn {
            let am = amla_to_owdfa(&la)?;
            row.r.am_dfa_states = Some(am.num_states());
            row.at_most("always-marking DFA bound", am.num_states(), always_marking_bound(m));
            row.at_most("deterministic DFA bound", dfa.num_states(), deterministic_bound(m));
            row.check("always-marking DFA no smaller than minimal", format!("{} >= {}", am.num_states(), min.num_states()), am.num_states() >= min.num_states());
            row.equal("always-marking DFA minimizes to the same DFA", &minimize_dfa(&am), &min)?;
        }
        min_dfa = Some(min);
    } else {
        row.r.skipped.push(format!("conversions: n = {n} exceeds cap {conversion_cap}"));
    }

    if n <= reference_cap {
        let reference = minimize_dfa(&match family {
            Family::Kn => kn_reference_dfa(n)?,
            Family::Jn => jn_reference_dfa(n)?,
        });
        row.r.reference_min_dfa_states = Some(reference.num_states());
        if let Some(lower) = lower {
            row.at_least("reference minimal DFA lower bound", reference.num_states(), lower);
        }
        if let Some(min) = &min_dfa {
            row.equal("conversion matches reference", min, &reference)?;
        }
    } else {
        row.r.skipped.push(format!("reference DFA: n = {n} exceeds cap {reference_cap}"));
    }

    let fooling_cap = opts.fooling_cap.min(FOOLING_CAP);
    if n <= fooling_cap {
        // (x, x) pairs fool both families
        let pairs = jn_fooling_set(n)?;
        match verify_fooling_set(|w| member(family, n, w).unwrap_or(false), &pairs) {
            FoolingVerdict::Certified(k) => {
                row.r.fooling_lower_bound = Some(k);
                row.check("fooling set size", format!("{k} == 2^{n}"), Some(k as u128) == pow(2, n));
                if let Some(nfa) = row.r.nfa_states {
                    row.check("NFA no smaller than fooling bound", format!("{nfa} >= {k}"), nfa >= k);
                }
            }
            FoolingVerdict::Violation(i, j) => {
                row.check("fooling set size", format!("violation at pairs {i}, {j}"), false);
            }
        }
    } else {
        row.r.skipped.push(format!("fooling set: n = {n} exceeds cap {fooling_cap}"));
    }

    let mut r = row.r;
    r.status = match r.skipped.len() {
        0 => RowStatus::Complete,
        3 => RowStatus::Skipped,
        _ => RowStatus::Partial,
    };
    if opts.record_runtimes {
        r.runtime_ms = Some(started.elapsed().as_secs_f64() * 1e3);
    }
    Ok(r)
}

fn cell(v: Option<usize>) -> String {
    v.map_or_else(|| "-".into(), |v| v.to_string())
}

impl fmt::Display for GapReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "family {} n {}..={} max-len {}", self.family, self.n_min, self.n_max, self.max_len)?;
        let head = ["n", "LA", "NFA", "DFA", "minDFA", "AM-DFA", "refMin", "2DFA", "fooling", "bounds", "status"];
        let mut lines = vec![head.map(String::from).to_vec()];
        for r in &self.rows {
            let ok = r.bounds.iter().filter(|b| b.holds).count();
            lines.push(vec![
                r.n.to_string(),
                r.la_states.to_string(),
                cell(r.nfa_states),
                cell(r.dfa_states),
                cell(r.min_dfa_states),
                cell(r.am_dfa_states),
                cell(r.reference_min_dfa_states),
                cell(r.twdfa_states),
                cell(r.fooling_lower_bound),
                format!("{ok}/{}", r.bounds.len()),
                format!("{:?}", r.status).to_lowercase(),
            ]);
        }
        let widths: Vec<usize> = (0..head.len()).map(|c| lines.iter().map(|l| l[c].len()).max().unwrap_or(0)).collect();
        for l in &lines {
            let cells: Vec<String> = l.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
            writeln!(f, "{}", cells.join("  ").trim_end())?;
        }
        for r in &self.rows {
            for b in r.bounds.iter().filter(|b| !b.holds) {
                writeln!(f, "n={}: FAILED {} ({})", r.n, b.name, b.detail)?;
            }
            for s in &r.skipped {
                writeln!(f, "n={}: skipped {s}", r.n)?;
            }
        }
        Ok(())
    }
}
