//! Rendering of command results as text, JSON, or CSV.
//!
//! All output is deterministic: rationals print exactly (`p/q` in text
//! and CSV, `{"num", "den"}` decimal strings in JSON), JSON keys are
//! emitted in sorted order, and CSV uses a header row, comma separators,
//! `.` decimal points, and LF line endings.

use clap::ValueEnum;
use serde_json::{json, Value};

use mcf::{
    AuditReport, BoundsRow, ClaimResult, ConvergentTable, DiagnosticsRow, ExactRational, Expansion,
    GaussKuzminRow, HistogramResult, RcfExpansion, Remainder, Witness,
};

/// Banner carried by the digit histogram in every format.
pub const HISTOGRAM_NOTE: &str = "exploratory; no reference distribution is asserted";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub fn rational_json(x: &ExactRational) -> Value {
    json!({ "num": x.numer().to_string(), "den": x.denom().to_string() })
}

fn finish_json(value: Value) -> String {
    let mut out = serde_json::to_string_pretty(&value).expect("value serializes");
    out.push('\n');
    out
}

fn digit_list(e: &Expansion) -> String {
    format!("{:?}", e.digit_values())
}

fn remainder_text(e: &Expansion) -> String {
    match e.remainder() {
        Some(Remainder::Exact(r)) => r.to_string(),
        Some(Remainder::Approx(iv)) => iv.to_string(),
        None => "unavailable".to_string(),
    }
}

fn remainder_json(e: &Expansion) -> Value {
    match e.remainder() {
        Some(Remainder::Exact(r)) => json!({ "type": "exact", "value": rational_json(r) }),
        Some(Remainder::Approx(iv)) => json!({
            "type": "interval",
            "lo": rational_json(iv.lo()),
            "hi": rational_json(iv.hi()),
            "precision": iv.precision(),
        }),
        None => Value::Null,
    }
}

fn ok_or(flag: bool, bad: &str) -> String {
    if flag {
        "ok".to_string()
    } else {
        bad.to_string()
    }
}

pub fn render_expansion(e: &Expansion, format: Format) -> String {
    match format {
        Format::Text => format!(
            "base: {}\ndigits: {}\nterminated: {}\nremainder: {}\n",
            e.base().get(),
            digit_list(e),
            e.terminated(),
            remainder_text(e),
        ),
        Format::Json => finish_json(json!({
            "command": "expand",
            "base": e.base().get(),
            "digits": e.digit_values(),
            "terminated": e.terminated(),
            "remainder": remainder_json(e),
        })),
        Format::Csv => {
            let mut out = String::from("index,digit\n");
            for (i, d) in e.digit_values().iter().enumerate() {
                out.push_str(&format!("{},{d}\n", i + 1));
            }
            out
        }
    }
}

/// Determinant agreement for the step into each row: row `n` reports
/// whether `p_(n-1) q_n - p_n q_(n-1)` matches its closed form. Row 0
/// has no preceding step.
fn determinant_checks(table: &ConvergentTable) -> Vec<Option<bool>> {
    table
        .rows()
        .iter()
        .map(|row| {
            if row.index == 0 {
                return None;
            }
            let n = row.index - 1;
            match (table.determinant(n), table.determinant_expected(n)) {
                (Ok(actual), Ok(expected)) => Some(actual == expected),
                _ => None,
            }
        })
        .collect()
}

pub fn render_convergents(e: &Expansion, table: &ConvergentTable, format: Format) -> String {
    let checks = determinant_checks(table);
    match format {
        Format::Text => {
            let mut cells: Vec<[String; 5]> = Vec::new();
            let mut flagged = false;
            for (row, check) in table.rows().iter().zip(&checks) {
                let mut q = row.q.to_string();
                if !row.q.is_integer() {
                    q.push('*');
                    flagged = true;
                }
                let det = match check {
                    Some(true) => "ok".to_string(),
                    Some(false) => "FAIL".to_string(),
                    None => "-".to_string(),
                };
                cells.push([
                    row.index.to_string(),
                    row.p.to_string(),
                    q,
                    row.value.to_string(),
                    det,
                ]);
            }
            let header = ["n", "p", "q", "value", "determinant"];
            let mut width = header.map(str::len);
            for row in &cells {
                for (w, cell) in width.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let mut out = format!(
                "base: {}\ndigits: {}\nterminated: {}\n",
                e.base().get(),
                digit_list(e),
                e.terminated(),
            );
            let line = |cols: &[String; 5]| {
                let mut s = String::new();
                for (i, (cell, w)) in cols.iter().zip(width).enumerate() {
                    if i > 0 {
                        s.push_str("  ");
                    }
                    s.push_str(&format!("{cell:<w$}"));
                }
                s.trim_end().to_string()
            };
            out.push_str(&line(&header.map(String::from)));
            out.push('\n');
            for row in &cells {
                out.push_str(&line(row));
                out.push('\n');
            }
            if flagged {
                out.push_str("* non-integer q\n");
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .rows()
                .iter()
                .zip(&checks)
                .map(|(row, check)| {
                    json!({
                        "n": row.index,
                        "p": rational_json(&row.p),
                        "q": rational_json(&row.q),
                        "q_integer": row.q.is_integer(),
                        "value": rational_json(&row.value),
                        "determinant_ok": *check,
                    })
                })
                .collect();
            finish_json(json!({
                "command": "convergents",
                "base": e.base().get(),
                "digits": e.digit_values(),
                "terminated": e.terminated(),
                "rows": rows,
            }))
        }
        Format::Csv => {
            let mut out = String::from("n,p,q,q_integer,value,determinant_ok\n");
            for (row, check) in table.rows().iter().zip(&checks) {
                let det = match check {
                    Some(v) => v.to_string(),
                    None => String::new(),
                };
                out.push_str(&format!(
                    "{},{},{},{},{},{det}\n",
                    row.index,
                    row.p,
                    row.q,
                    row.q.is_integer(),
                    row.value,
                ));
            }
            out
        }
    }
}

pub fn render_bounds_exact(e: &Expansion, rows: &[BoundsRow], format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = format!(
                "base: {}\ndigits: {}\nterminated: {}\n",
                e.base().get(),
                digit_list(e),
                e.terminated(),
            );
            for row in rows {
                let floors = format!(
                    "power_floor {}, fib_floor {}",
                    ok_or(row.power_floor_holds, "VIOLATED"),
                    ok_or(row.fib_floor_holds, "violated"),
                );
                match &row.bounds {
                    Some(b) => out.push_str(&format!(
                        "depth {}: error {}, lower_loose {}, lower_tight {}, upper_tight {}, \
                         upper_coarse {}, {floors}\n",
                        row.depth,
                        row.error,
                        b.lower_loose,
                        b.lower_tight,
                        b.upper_tight,
                        b.upper_coarse,
                    )),
                    None => out.push_str(&format!(
                        "depth {}: error {}, bounds n/a, {floors}\n",
                        row.depth, row.error,
                    )),
                }
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let bounds = row.bounds.as_ref().map(|b| {
                        json!({
                            "lower_loose": rational_json(&b.lower_loose),
                            "lower_tight": rational_json(&b.lower_tight),
                            "upper_tight": rational_json(&b.upper_tight),
                            "upper_coarse": rational_json(&b.upper_coarse),
                        })
                    });
                    json!({
                        "depth": row.depth,
                        "error": rational_json(&row.error),
                        "bounds": bounds,
                        "power_floor_holds": row.power_floor_holds,
                        "fib_floor_holds": row.fib_floor_holds,
                    })
                })
                .collect();
            finish_json(json!({
                "command": "bounds",
                "mode": "exact",
                "base": e.base().get(),
                "digits": e.digit_values(),
                "terminated": e.terminated(),
                "rows": rows,
            }))
        }
        Format::Csv => {
            let mut out = String::from(
                "depth,error,lower_loose,lower_tight,upper_tight,upper_coarse,\
                 power_floor_holds,fib_floor_holds\n",
            );
            for row in rows {
                let (ll, lt, ut, uc) = match &row.bounds {
                    Some(b) => (
                        b.lower_loose.to_string(),
                        b.lower_tight.to_string(),
                        b.upper_tight.to_string(),
                        b.upper_coarse.to_string(),
                    ),
                    None => Default::default(),
                };
                out.push_str(&format!(
                    "{},{},{ll},{lt},{ut},{uc},{},{}\n",
                    row.depth, row.error, row.power_floor_holds, row.fib_floor_holds,
                ));
            }
            out
        }
    }
}

pub fn render_bounds_certified(e: &Expansion, rows: &[DiagnosticsRow], format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = format!(
                "base: {}\ndigits: {}\nterminated: {}\n",
                e.base().get(),
                digit_list(e),
                e.terminated(),
            );
            for row in rows {
                let tail = match (&row.ceiling, row.ceiling_holds) {
                    (Some(c), Some(holds)) => {
                        format!("ceiling {c}, {}", ok_or(holds, "NOT CERTIFIED"))
                    }
                    _ => "ceiling n/a".to_string(),
                };
                out.push_str(&format!(
                    "depth {}: |error| in [{}, {}], {tail}\n",
                    row.depth, row.abs_error_lo, row.abs_error_hi,
                ));
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|row| {
                    json!({
                        "depth": row.depth,
                        "abs_error_lo": rational_json(&row.abs_error_lo),
                        "abs_error_hi": rational_json(&row.abs_error_hi),
                        "ceiling": row.ceiling.as_ref().map(rational_json),
                        "ceiling_holds": row.ceiling_holds,
                    })
                })
                .collect();
            finish_json(json!({
                "command": "bounds",
                "mode": "certified",
                "base": e.base().get(),
                "digits": e.digit_values(),
                "terminated": e.terminated(),
                "rows": rows,
            }))
        }
        Format::Csv => {
            let mut out = String::from("depth,abs_error_lo,abs_error_hi,ceiling,ceiling_holds\n");
            for row in rows {
                let ceiling = row
                    .ceiling
                    .as_ref()
                    .map(|c| c.to_string())
                    .unwrap_or_default();
                let holds = row.ceiling_holds.map(|h| h.to_string()).unwrap_or_default();
                out.push_str(&format!(
                    "{},{},{},{ceiling},{holds}\n",
                    row.depth, row.abs_error_lo, row.abs_error_hi,
                ));
            }
            out
        }
    }
}

fn witness_text(w: &Witness) -> String {
    let digits = if w.digits.is_empty() {
        String::new()
    } else {
        format!(" digits {:?}", w.digits)
    };
    format!(
        "[base {}] {}{digits} depth {}: {}",
        w.base, w.input, w.depth, w.detail
    )
}

fn witness_json(w: &Witness) -> Value {
    json!({
        "base": w.base,
        "input": w.input,
        "digits": w.digits,
        "depth": w.depth,
        "detail": w.detail,
    })
}

fn claim_text(entry: &ClaimResult, out: &mut String) {
    let mut line = format!(
        "  {}: {} (checked {}, violations {}",
        entry.claim.label(),
        entry.status.label(),
        entry.checked,
        entry.violations,
    );
    if entry.claim.is_conditional() {
        line.push_str(&format!(", counterexamples {}", entry.counterexamples));
    }
    line.push(')');
    if let Some(condition) = entry.claim.condition() {
        line.push_str(&format!(" [condition: {condition}]"));
    }
    out.push_str(&line);
    out.push('\n');
    for w in &entry.violation_witnesses {
        out.push_str(&format!("    violation {}\n", witness_text(w)));
    }
    for w in &entry.counterexample_witnesses {
        out.push_str(&format!("    counterexample {}\n", witness_text(w)));
    }
}

pub fn render_audit(report: &AuditReport, command: &str, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = format!(
                "{command} over bases {:?}, depth cap {}\ninputs checked: {}\n",
                report.bases, report.depth_cap, report.inputs_checked,
            );
            out.push_str(&format!("cap hits: {}\n", report.cap_hit_count));
            for w in &report.cap_hits {
                out.push_str(&format!("  {}\n", witness_text(w)));
            }
            out.push_str("claims:\n");
            for entry in &report.entries {
                claim_text(entry, &mut out);
            }
            if report.entries.is_empty() {
                out.push_str("  none (empty sweep)\n");
            }
            out.push_str(if report.any_violation() {
                "result: violations found\n"
            } else {
                "result: ok\n"
            });
            out
        }
        Format::Json => {
            let entries: Vec<Value> = report
                .entries
                .iter()
                .map(|entry| {
                    json!({
                        "claim": entry.claim.label(),
                        "statement": entry.claim.statement(),
                        "condition": entry.claim.condition(),
                        "status": entry.status.label(),
                        "checked": entry.checked,
                        "violations": entry.violations,
                        "counterexamples": entry.counterexamples,
                        "violation_witnesses":
                            entry.violation_witnesses.iter().map(witness_json).collect::<Vec<_>>(),
                        "counterexample_witnesses":
                            entry.counterexample_witnesses.iter().map(witness_json).collect::<Vec<_>>(),
                    })
                })
                .collect();
            finish_json(json!({
                "command": command,
                "bases": report.bases,
                "depth_cap": report.depth_cap,
                "inputs_checked": report.inputs_checked,
                "cap_hit_count": report.cap_hit_count,
                "cap_hits": report.cap_hits.iter().map(witness_json).collect::<Vec<_>>(),
                "entries": entries,
                "any_violation": report.any_violation(),
            }))
        }
        Format::Csv => {
            let mut out = String::from("claim,status,checked,violations,counterexamples\n");
            for entry in &report.entries {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    entry.claim.label(),
                    entry.status.label(),
                    entry.checked,
                    entry.violations,
                    entry.counterexamples,
                ));
            }
            out
        }
    }
}

fn as_f64(x: &ExactRational) -> f64 {
    let num: f64 = x.numer().to_string().parse().unwrap_or(f64::NAN);
    let den: f64 = x.denom().to_string().parse().unwrap_or(f64::NAN);
    num / den
}

pub fn render_gauss(rows: &[GaussKuzminRow], iterations: u32, seed: u64, format: Format) -> String {
    let samples = rows.first().map_or(0, |r| r.samples);
    match format {
        Format::Text => {
            let mut out = format!(
                "remainder distribution after {iterations} iterations, {samples} samples, seed {seed}\n",
            );
            let mut max_dev = 0.0f64;
            for row in rows {
                max_dev = max_dev.max(row.deviation());
                out.push_str(&format!(
                    "z {}: empirical {:.6}, reference {:.6}, deviation {:.6}\n",
                    as_f64(&row.z),
                    row.empirical(),
                    row.reference,
                    row.deviation(),
                ));
            }
            out.push_str(&format!("max deviation: {max_dev:.6}\n"));
            out
        }
        Format::Json => {
            let rows_json: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let empirical = ExactRational::new(row.count.into(), row.samples.into());
                    json!({
                        "z": rational_json(&row.z),
                        "count": row.count,
                        "empirical": rational_json(&empirical),
                        "reference": row.reference,
                    })
                })
                .collect();
            finish_json(json!({
                "command": "stats-gauss-kuzmin",
                "samples": samples,
                "iterations": iterations,
                "seed": seed,
                "rows": rows_json,
            }))
        }
        Format::Csv => {
            let mut out = String::from("z,count,samples,empirical,reference\n");
            for row in rows {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    as_f64(&row.z),
                    row.count,
                    row.samples,
                    row.empirical(),
                    row.reference,
                ));
            }
            out
        }
    }
}

pub fn render_histogram(h: &HistogramResult, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = format!(
                "digit histogram for base {}: {} samples, depth {}, seed {}, digit cap {}\n\
                 note: {HISTOGRAM_NOTE}\n",
                h.base, h.samples, h.depth, h.seed, h.digit_cap,
            );
            for (i, bin) in h.bins.iter().enumerate() {
                out.push_str(&format!(
                    "digit {}: count {}, frequency {:.6}\n",
                    bin.label(),
                    bin.count,
                    as_f64(&h.frequency(i)),
                ));
            }
            out.push_str(&format!("total digits: {}\n", h.total_digits));
            out
        }
        Format::Json => {
            let bins: Vec<Value> = h
                .bins
                .iter()
                .enumerate()
                .map(|(i, bin)| {
                    json!({
                        "digit": bin.digit,
                        "label": bin.label(),
                        "count": bin.count,
                        "frequency": rational_json(&h.frequency(i)),
                    })
                })
                .collect();
            finish_json(json!({
                "command": "stats-mcf-digits",
                "base": h.base,
                "samples": h.samples,
                "depth": h.depth,
                "seed": h.seed,
                "digit_cap": h.digit_cap,
                "total_digits": h.total_digits,
                "note": HISTOGRAM_NOTE,
                "bins": bins,
            }))
        }
        Format::Csv => {
            let mut out = format!("# {HISTOGRAM_NOTE}\ndigit,count,frequency\n");
            for (i, bin) in h.bins.iter().enumerate() {
                out.push_str(&format!(
                    "{},{},{}\n",
                    bin.label(),
                    bin.count,
                    as_f64(&h.frequency(i)),
                ));
            }
            out
        }
    }
}

pub fn render_rcf(e: &RcfExpansion, format: Format) -> String {
    match format {
        Format::Text => {
            let quotients: Vec<String> = e.quotients.iter().map(|a| a.to_string()).collect();
            format!(
                "quotients: [{}]\nterminated: {}\n",
                quotients.join(", "),
                e.terminated,
            )
        }
        Format::Json => finish_json(json!({
            "command": "rcf",
            "quotients": e.quotients.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            "terminated": e.terminated,
        })),
        Format::Csv => {
            let mut out = String::from("index,quotient\n");
            for (i, a) in e.quotients.iter().enumerate() {
                out.push_str(&format!("{},{a}\n", i + 1));
            }
            out
        }
    }
}
