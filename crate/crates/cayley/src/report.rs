//! Human-readable and JSON renderings of the analysis reports.
//!
//! Human output names symbols 1-based (or by their declared names). JSON
//! output keeps the library's 0-based indices and says so in an
//! `"indexing": "0-based"` field.

use std::fmt::Write as _;

use cayley_core::axioms::AssocWitness;
use cayley_core::classify::{ClassificationReport, ProofStep};
use cayley_core::table::{Axis, CayleyTable, LatinReport, Symbol};
use cayley_core::verify::{VerificationReport, VerifyMode};
use serde::Serialize;
use serde_json::Value;

pub const INDEXING: &str = "0-based";

#[derive(Serialize)]
struct Indexed<'a, T: Serialize> {
    indexing: &'static str,
    #[serde(flatten)]
    body: &'a T,
}

fn to_json_line<T: Serialize>(body: &T) -> String {
    let mut s = serde_json::to_string_pretty(&Indexed {
        indexing: INDEXING,
        body,
    })
    .expect("reports serialize");
    s.push('\n');
    s
}

pub fn latin_json(report: &LatinReport) -> String {
    to_json_line(report)
}

pub fn classification_json(table: &CayleyTable, report: &ClassificationReport) -> String {
    #[derive(Serialize)]
    struct WithOrder<'a> {
        n: usize,
        #[serde(flatten)]
        report: &'a ClassificationReport,
    }
    to_json_line(&WithOrder {
        n: table.order(),
        report,
    })
}

#[derive(Serialize)]
struct ViolationJson {
    table: Vec<Vec<usize>>,
    step: ProofStep,
}

#[derive(Serialize)]
struct VerificationJson {
    n: usize,
    total_latin: u64,
    associative_count: u64,
    group_classified: u64,
    violations: Vec<ViolationJson>,
    mode: VerifyMode,
    samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

/// `with_timing` adds `elapsed_ms`; without it the output only depends on
/// the inputs.
pub fn verification_json(report: &VerificationReport, with_timing: bool) -> String {
    let body = VerificationJson {
        n: report.n,
        total_latin: report.total_latin,
        associative_count: report.associative_count,
        group_classified: report.group_classified,
        violations: report
            .violations
            .iter()
            .map(|v| ViolationJson {
                table: v
                    .table
                    .rows()
                    .map(|r| r.iter().map(|s| s.index()).collect())
                    .collect(),
                step: v.step,
            })
            .collect(),
        mode: report.mode,
        samples: report.samples,
        elapsed_ms: with_timing.then_some(report.elapsed.as_millis()),
    };
    to_json_line(&body)
}

/// Parses a rendered report back, for tests and scripts.
pub fn parse_json_report(s: &str) -> serde_json::Result<Value> {
    serde_json::from_str(s)
}

pub fn latin_text(table: &CayleyTable, report: &LatinReport) -> String {
    let mut out = String::new();
    if report.is_latin {
        let _ = writeln!(out, "Latin square of order {}", table.order());
        return out;
    }
    let _ = writeln!(
        out,
        "not a Latin square: {} violation{}",
        report.violations.len(),
        plural(report.violations.len())
    );
    for v in &report.violations {
        let across = match v.axis {
            Axis::Row => "columns",
            Axis::Column => "rows",
        };
        let _ = writeln!(
            out,
            "  {} {}: symbol {} at {} {} and {}",
            v.axis,
            v.line_index + 1,
            table.label(v.symbol),
            across,
            v.first_position + 1,
            v.second_position + 1
        );
    }
    out
}

fn plural(k: usize) -> &'static str {
    if k == 1 {
        ""
    } else {
        "s"
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// `(a·b)·c ≠ a·(b·c)` written out with both inner products, e.g.
/// `3 = 6·4 = (4·2)·4 ≠ 4·(2·4) = 4·5 = 2`.
pub fn witness_equation(table: &CayleyTable, w: &AssocWitness) -> String {
    let l = |s: Symbol| table.label(s);
    format!(
        "{} = {}·{} = ({}·{})·{} ≠ {}·({}·{}) = {}·{} = {}",
        l(w.left_value),
        l(w.left_inner(table)),
        l(w.c),
        l(w.a),
        l(w.b),
        l(w.c),
        l(w.a),
        l(w.b),
        l(w.c),
        l(w.a),
        l(w.right_inner(table)),
        l(w.right_value),
    )
}

pub fn classification_text(table: &CayleyTable, report: &ClassificationReport) -> String {
    let l = |s: Symbol| table.label(s);
    let mut out = String::new();
    let _ = writeln!(out, "order: {}", table.order());
    let _ = writeln!(out, "class: {}", report.class);
    if report.latin.is_latin {
        let _ = writeln!(out, "latin: yes");
    } else {
        let _ = writeln!(out, "latin: no");
        for line in latin_text(table, &report.latin).lines().skip(1) {
            let _ = writeln!(out, "{line}");
        }
    }
    let _ = writeln!(
        out,
        "identity: {}",
        report.identity.map_or_else(|| "none".to_string(), l)
    );
    let algo = format!("{:?}", report.algorithm).to_lowercase();
    let _ = writeln!(out, "associative: {} ({algo})", yes_no(report.associative));
    if let Some(w) = &report.assoc_witness {
        let _ = writeln!(out, "witness: {}", witness_equation(table, w));
    }
    match &report.inverses {
        Some(inv) => {
            let mut pairs = Vec::new();
            let mut selves = Vec::new();
            for (i, &j) in inv.pairs.iter().enumerate() {
                let i = Symbol::new(i);
                if i == j {
                    selves.push(l(i));
                } else if i < j {
                    pairs.push(format!("{}↔{}", l(i), l(j)));
                }
            }
            let _ = write!(out, "inverses:");
            for p in &pairs {
                let _ = write!(out, " {p}");
            }
            if !selves.is_empty() {
                let _ = write!(
                    out,
                    "{}self-inverse {}",
                    if pairs.is_empty() { " " } else { "; " },
                    selves.join(" ")
                );
            }
            out.push('\n');
        }
        None => {
            let _ = writeln!(out, "inverses: none");
        }
    }
    let _ = writeln!(out, "commutative: {}", yes_no(report.commutative));
    if let Some(profile) = &report.order_profile {
        let profile: Vec<String> = profile.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "element orders: {}", profile.join(" "));
    }
    out
}

pub fn verification_text(report: &VerificationReport) -> String {
    let mut out = String::new();
    let what = match report.mode {
        VerifyMode::Exhaustive => "Latin squares",
        VerifyMode::Sampled => "sampled Latin squares",
    };
    let _ = writeln!(
        out,
        "order {}: {} {what}, {} associative, {} violation{}",
        report.n,
        report.total_latin,
        report.associative_count,
        report.violations.len(),
        plural(report.violations.len())
    );
    for v in &report.violations {
        let _ = writeln!(out, "counterexample failing at the {} step:", v.step);
        for line in crate::format::to_text(&v.table).lines() {
            let _ = writeln!(out, "  {line}");
        }
    }
    if report.holds() {
        let _ = writeln!(
            out,
            "every associative Latin square examined is a group table"
        );
    }
    out
}
