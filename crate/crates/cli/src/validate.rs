//! Cross-validation of the counting methods.

use std::fmt::Write;

use evocount::{Budget, CountReport, Method};
use num_bigint::BigUint;
use serde::Serialize;

use crate::render::{csv_text, json_text};
use crate::{feasible_skip, run_method, Format, Outcome, Output, EXIT_MISMATCH};

#[derive(Serialize)]
struct Comparison {
    n: usize,
    q: u64,
    /// `N` or a partition such as `{1,3}`.
    quantity: String,
    left: Method,
    #[serde(serialize_with = "decimal")]
    left_value: BigUint,
    right: Method,
    #[serde(serialize_with = "decimal")]
    right_value: BigUint,
    agree: bool,
}

#[derive(Serialize)]
struct Skip {
    n: usize,
    q: u64,
    method: Method,
    reason: String,
}

#[derive(Serialize)]
struct Report {
    comparisons: Vec<Comparison>,
    skipped: Vec<Skip>,
    mismatches: usize,
}

fn decimal<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn compare(n: usize, q: u64, a: &CountReport, b: &CountReport, out: &mut Vec<Comparison>) {
    let mut push = |quantity: String, x: &BigUint, y: &BigUint| {
        out.push(Comparison {
            n,
            q,
            quantity,
            left: a.method,
            left_value: x.clone(),
            right: b.method,
            right_value: y.clone(),
            agree: x == y,
        })
    };
    push("N".into(), &a.count, &b.count);
    for ca in &a.contributions {
        if let Some(vb) = b.contribution(&ca.partition) {
            let label: Vec<String> = ca.partition.iter().map(|p| p.to_string()).collect();
            push(format!("B({{{}}})", label.join(",")), &ca.value, vb);
        }
    }
}

pub fn run(n_min: usize, n_max: usize, qs: &[u64], budget: &Budget, format: Format) -> Outcome<Output> {
    let mut comparisons = Vec::new();
    let mut skipped = Vec::new();
    for n in n_min.max(1)..=n_max {
        for &q in qs {
            let mut reports: Vec<CountReport> = Vec::new();
            for method in Method::CONCRETE {
                match run_method(n, q, method, budget) {
                    Ok(r) => reports.push(r),
                    Err(e) if feasible_skip(&e) => skipped.push(Skip {
                        n,
                        q,
                        method,
                        reason: e.to_string(),
                    }),
                    Err(e) => return Err(e.into()),
                }
            }
            for i in 0..reports.len() {
                for j in i + 1..reports.len() {
                    compare(n, q, &reports[i], &reports[j], &mut comparisons);
                }
            }
        }
    }
    let mismatches = comparisons.iter().filter(|c| !c.agree).count();
    let report = Report {
        comparisons,
        skipped,
        mismatches,
    };
    let text = match format {
        Format::Json => json_text(&report),
        Format::Csv => csv_text(|w| {
            w.write_record([
                "n",
                "q",
                "quantity",
                "left",
                "left_value",
                "right",
                "right_value",
                "agree",
            ])?;
            for c in &report.comparisons {
                w.write_record([
                    c.n.to_string(),
                    c.q.to_string(),
                    c.quantity.clone(),
                    c.left.to_string(),
                    c.left_value.to_string(),
                    c.right.to_string(),
                    c.right_value.to_string(),
                    c.agree.to_string(),
                ])?;
            }
            Ok(())
        }),
        Format::Text => {
            let mut s = String::new();
            for c in &report.comparisons {
                let mark = if c.agree { "ok" } else { "MISMATCH" };
                let _ = writeln!(
                    s,
                    "n={} q={} {}: {} {} vs {} {}  {mark}",
                    c.n, c.q, c.quantity, c.left, c.left_value, c.right, c.right_value
                );
            }
            for k in &report.skipped {
                let _ = writeln!(s, "n={} q={} {} skipped: {}", k.n, k.q, k.method, k.reason);
            }
            let _ = writeln!(
                s,
                "{} comparisons, {} mismatches",
                report.comparisons.len(),
                report.mismatches
            );
            s
        }
    };
    let code = if report.mismatches > 0 { EXIT_MISMATCH } else { 0 };
    Ok(Output { text, code })
}
