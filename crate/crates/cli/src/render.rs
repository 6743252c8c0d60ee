//! Text, JSON and CSV rendering.

use std::fmt::Write;

use evocount::{CaseKey, CountReport, Method, OrbitPartition};
use num_bigint::BigUint;
use serde::Serialize;

use crate::Format;

fn partition_label(parts: &[usize]) -> String {
    let inner: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn csv_text(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w).expect("writing csv to memory");
    String::from_utf8(w.into_inner().expect("flushing csv to memory")).expect("csv is utf-8")
}

pub fn json_text(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializing report");
    s.push('\n');
    s
}

/// Count reports. `as_list` keeps JSON an array even for one report.
pub fn count(reports: &[CountReport], format: Format, as_list: bool) -> String {
    match format {
        Format::Json if as_list => json_text(&reports),
        Format::Json => json_text(&reports[0]),
        Format::Csv => csv_text(|w| {
            w.write_record(["method", "n", "q", "p", "m", "partition", "value", "elapsed_ms"])?;
            for r in reports {
                let head = [
                    r.method.to_string(),
                    r.n.to_string(),
                    r.q.to_string(),
                    r.p.to_string(),
                    r.m.to_string(),
                ];
                let total = ["N".to_string(), r.count.to_string(), r.elapsed_ms.to_string()];
                w.write_record(head.iter().chain(&total))?;
                for c in &r.contributions {
                    let row = [partition_label(&c.partition), c.value.to_string(), String::new()];
                    w.write_record(head.iter().chain(&row))?;
                }
            }
            Ok(())
        }),
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                let _ = writeln!(
                    s,
                    "N({}, F_{}) = {}  [{}, {} ms]",
                    r.n, r.q, r.count, r.method, r.elapsed_ms
                );
                for c in &r.contributions {
                    let _ = writeln!(s, "  B({}) = {}", partition_label(&c.partition), c.value);
                }
            }
            s
        }
    }
}

pub struct TableRow {
    pub key: CaseKey,
    pub counts: Vec<Option<BigUint>>,
}

#[derive(Serialize)]
struct JsonRow<'a> {
    q: u64,
    p: u64,
    m: u32,
    #[serde(rename = "P3")]
    p3: bool,
    #[serde(rename = "P4")]
    p4: bool,
    #[serde(rename = "P5")]
    p5: bool,
    #[serde(rename = "P7")]
    p7: bool,
    #[serde(rename = "P15")]
    p15: bool,
    #[serde(rename = "N")]
    counts: std::collections::BTreeMap<&'a str, Option<String>>,
}

#[derive(Serialize)]
struct JsonTable<'a> {
    n: usize,
    rows: Vec<JsonRow<'a>>,
}

pub fn table(n: usize, methods: &[Method], rows: &[TableRow], format: Format) -> String {
    let flags = |k: &CaseKey| [k.p3, k.p4, k.p5, k.p7, k.p15].map(|b| (b as u8).to_string());
    let cell = |c: &Option<BigUint>| c.as_ref().map_or(String::new(), |v| v.to_string());
    match format {
        Format::Json => {
            let rows: Vec<JsonRow> = rows
                .iter()
                .map(|r| JsonRow {
                    q: r.key.q,
                    p: r.key.p,
                    m: r.key.m,
                    p3: r.key.p3,
                    p4: r.key.p4,
                    p5: r.key.p5,
                    p7: r.key.p7,
                    p15: r.key.p15,
                    counts: methods
                        .iter()
                        .zip(&r.counts)
                        .map(|(m, c)| (m.as_str(), c.as_ref().map(|v| v.to_string())))
                        .collect(),
                })
                .collect();
            json_text(&JsonTable { n, rows })
        }
        Format::Csv | Format::Text => {
            let mut header: Vec<String> = ["q", "p", "m", "P3", "P4", "P5", "P7", "P15"]
                .map(String::from)
                .to_vec();
            header.extend(methods.iter().map(|m| format!("N_{m}")));
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let mut line = vec![r.key.q.to_string(), r.key.p.to_string(), r.key.m.to_string()];
                    line.extend(flags(&r.key));
                    line.extend(r.counts.iter().map(cell));
                    line
                })
                .collect();
            if format == Format::Csv {
                return csv_text(|w| {
                    w.write_record(&header)?;
                    body.iter().try_for_each(|l| w.write_record(l))
                });
            }
            let widths: Vec<usize> = (0..header.len())
                .map(|i| {
                    body.iter()
                        .map(|l| l[i].len())
                        .chain([header[i].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let mut s = format!("n = {n}\n");
            for line in std::iter::once(&header).chain(&body) {
                let cells: Vec<String> = line.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                let _ = writeln!(s, "{}", cells.join("  ").trim_end());
            }
            s
        }
    }
}

#[derive(Serialize)]
struct JsonOrbit {
    representative: Vec<u32>,
    size: u64,
}

#[derive(Serialize)]
struct JsonOrbits {
    n: usize,
    q: u64,
    count: usize,
    total: u64,
    orbits: Vec<JsonOrbit>,
}

pub fn orbits(n: usize, q: u64, orbits: &OrbitPartition, format: Format) -> String {
    let reps = orbits.representatives.iter().zip(&orbits.orbit_sizes);
    match format {
        Format::Json => {
            let list: Vec<JsonOrbit> = reps
                .map(|(a, &size)| JsonOrbit {
                    representative: a.codes(),
                    size,
                })
                .collect();
            json_text(&JsonOrbits {
                n,
                q,
                count: orbits.count(),
                total: orbits.total,
                orbits: list,
            })
        }
        Format::Csv => csv_text(|w| {
            w.write_record(["index", "size", "representative"])?;
            for (i, (a, size)) in reps.enumerate() {
                let codes: Vec<String> = a.codes().iter().map(|c| c.to_string()).collect();
                w.write_record([i.to_string(), size.to_string(), codes.join(" ")])?;
            }
            Ok(())
        }),
        Format::Text => {
            let mut s = format!(
                "{} orbits of GL_{n}(F_{q}), {} matrices\n",
                orbits.count(),
                orbits.total
            );
            for (i, (a, size)) in reps.enumerate() {
                let rows: Vec<String> = a
                    .codes()
                    .chunks(n)
                    .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "))
                    .collect();
                let _ = writeln!(s, "{i:>5}  size {size:>8}  [{}]", rows.join("; "));
            }
            s
        }
    }
}
