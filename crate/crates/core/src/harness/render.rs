use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use super::bench::BenchReport;
use super::sweep::{Outcome, SweepReport};
use crate::arith::format_rat;
use crate::det::DetResult;
use crate::symcheck::ProofReport;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(format!("unknown format {s:?} (expected table, json or csv)")),
        }
    }
}

pub trait Render {
    fn table(&self, timing: bool) -> String;
    fn json_value(&self) -> Value;
    fn csv_rows(&self, timing: bool) -> Vec<Vec<String>>;
    /// Drop wall-clock fields from the JSON value.
    fn strip_timing(_value: &mut Value) {}

    fn render(&self, format: OutputFormat, timing: bool) -> String {
        match format {
            OutputFormat::Table => self.table(timing),
            OutputFormat::Json => {
                let mut value = self.json_value();
                if !timing {
                    Self::strip_timing(&mut value);
                }
                let mut out = serde_json::to_string_pretty(&value).expect("serializable");
                out.push('\n');
                out
            }
            OutputFormat::Csv => {
                let mut writer = csv::Writer::from_writer(Vec::new());
                for row in self.csv_rows(timing) {
                    writer.write_record(&row).expect("in-memory write");
                }
                String::from_utf8(writer.into_inner().expect("flush")).expect("utf-8")
            }
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

impl Render for SweepReport {
    fn table(&self, timing: bool) -> String {
        let keys = value_keys(self);
        let mut out = String::new();
        let _ = writeln!(out, "{} (schema {})", self.command, self.schema_version);
        let header: Vec<String> =
            ["n", "m", "a", "b", "outcome"].iter().map(|s| s.to_string()).chain(keys.iter().map(|s| s.to_string())).collect();
        let rows: Vec<Vec<String>> = self
            .points
            .iter()
            .filter(|p| p.outcome != Outcome::OutOfDomain || !p.values.is_empty())
            .map(|p| {
                let mut row = vec![
                    p.params.n.to_string(),
                    p.params.m.to_string(),
                    p.params.a.to_string(),
                    p.params.b.to_string(),
                    outcome_name(p.outcome).to_string(),
                ];
                row.extend(keys.iter().map(|k| p.values.get(k).cloned().unwrap_or_default()));
                row
            })
            .collect();
        out.push_str(&aligned(&header, &rows));
        let t = &self.totals;
        let _ = writeln!(out, "total {}  pass {}  fail {}  out-of-domain {}", t.total, t.pass, t.fail, t.out_of_domain);
        if timing {
            for (engine, secs) in &self.timing {
                let _ = writeln!(out, "time {engine}: {secs:.6}s");
            }
        }
        let _ = writeln!(out, "{}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }

    fn json_value(&self) -> Value {
        to_value(self)
    }

    fn strip_timing(value: &mut Value) {
        if let Some(obj) = value.as_object_mut() {
            obj.remove("timing");
        }
    }

    fn csv_rows(&self, _timing: bool) -> Vec<Vec<String>> {
        let keys = value_keys(self);
        let mut rows = vec![["n", "m", "a", "b", "outcome"]
            .iter()
            .map(|s| s.to_string())
            .chain(keys.iter().map(|s| s.to_string()))
            .collect::<Vec<_>>()];
        for p in &self.points {
            let mut row = vec![
                p.params.n.to_string(),
                p.params.m.to_string(),
                p.params.a.to_string(),
                p.params.b.to_string(),
                outcome_name(p.outcome).to_string(),
            ];
            row.extend(keys.iter().map(|k| p.values.get(k).cloned().unwrap_or_default()));
            rows.push(row);
        }
        rows
    }
}

fn value_keys(r: &SweepReport) -> Vec<&'static str> {
    let keys: BTreeSet<&'static str> = r.points.iter().flat_map(|p| p.values.keys().copied()).collect();
    keys.into_iter().collect()
}

fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail => "fail",
        Outcome::OutOfDomain => "out_of_domain",
    }
}

fn aligned(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

impl Render for ProofReport {
    fn table(&self, _timing: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "prove {} (schema {}): {}", self.mode, self.schema_version, self.status);
        for ob in &self.obligations {
            let _ = writeln!(out, "  {}: {}", ob.name, ob.status);
            let _ = writeln!(
                out,
                "    rewrite steps: superfactorial {}, factorial {}, ground {}",
                ob.rewrite.superfactorial_steps, ob.rewrite.factorial_steps, ob.rewrite.ground_steps
            );
            for (i, r) in ob.reduced.iter().enumerate() {
                let _ = writeln!(out, "    reduced T{}: {r}", i + 1);
            }
            if let Some(d) = &ob.degrees {
                let per: Vec<String> = d.per_symbol.iter().map(|(s, e)| format!("{s}:{e}")).collect();
                let _ = writeln!(
                    out,
                    "    identity degree: lhs {} ({} terms; {}), rhs {}",
                    d.lhs_total,
                    d.lhs_terms,
                    per.join(" "),
                    d.rhs_total
                );
            }
            if let Some(reason) = &ob.stall_reason {
                let _ = writeln!(out, "    stalled: {reason}");
            }
            if let Some(w) = &ob.witness {
                let point: Vec<String> = w.point.iter().map(|(s, v)| format!("{s}={v}")).collect();
                let _ = writeln!(out, "    witness at {}: got {}, expected {}", point.join(" "), w.found, w.expected);
            }
            let _ = writeln!(out, "    spot checks: {}/{}", ob.spot_checks.passed, ob.spot_checks.run);
        }
        out
    }

    fn json_value(&self) -> Value {
        to_value(self)
    }

    fn csv_rows(&self, _timing: bool) -> Vec<Vec<String>> {
        let header = [
            "mode",
            "obligation",
            "status",
            "superfactorial_steps",
            "factorial_steps",
            "ground_steps",
            "lhs_degree",
            "rhs_degree",
            "spot_passed",
            "spot_run",
            "stall_reason",
            "witness",
        ];
        let mut rows = vec![header.iter().map(|s| s.to_string()).collect::<Vec<_>>()];
        for ob in &self.obligations {
            let witness = ob
                .witness
                .as_ref()
                .map(|w| {
                    let point: Vec<String> = w.point.iter().map(|(s, v)| format!("{s}={v}")).collect();
                    format!("{} got {} expected {}", point.join(" "), w.found, w.expected)
                })
                .unwrap_or_default();
            rows.push(vec![
                self.mode.clone(),
                ob.name.clone(),
                ob.status.to_string(),
                ob.rewrite.superfactorial_steps.to_string(),
                ob.rewrite.factorial_steps.to_string(),
                ob.rewrite.ground_steps.to_string(),
                ob.degrees.as_ref().map(|d| d.lhs_total.to_string()).unwrap_or_default(),
                ob.degrees.as_ref().map(|d| d.rhs_total.to_string()).unwrap_or_default(),
                ob.spot_checks.passed.to_string(),
                ob.spot_checks.run.to_string(),
                ob.stall_reason.clone().unwrap_or_default(),
                witness,
            ]);
        }
        rows
    }
}

impl Render for BenchReport {
    fn table(&self, timing: bool) -> String {
        let mut header: Vec<String> =
            ["engine", "order", "determinant", "fallback", "peak_bits"].iter().map(|s| s.to_string()).collect();
        if timing {
            header.push("seconds".into());
        }
        let rows: Vec<Vec<String>> = self
            .records
            .iter()
            .map(|r| {
                let mut row = vec![
                    r.engine.to_string(),
                    r.order.to_string(),
                    r.determinant.clone().or_else(|| r.refused.clone().map(|s| format!("refused: {s}"))).unwrap_or_default(),
                    r.fallback_used.to_string(),
                    r.peak_bits.to_string(),
                ];
                if timing {
                    row.push(format!("{:.6}", r.wall_seconds));
                }
                row
            })
            .collect();
        format!("bench family={} seed={} (schema {})\n{}", self.family, self.seed, self.schema_version, aligned(&header, &rows))
    }

    fn json_value(&self) -> Value {
        to_value(self)
    }

    fn strip_timing(value: &mut Value) {
        if let Some(records) = value.get_mut("records").and_then(Value::as_array_mut) {
            for r in records {
                if let Some(obj) = r.as_object_mut() {
                    obj.remove("wall_seconds");
                }
            }
        }
    }

    fn csv_rows(&self, timing: bool) -> Vec<Vec<String>> {
        let mut header: Vec<String> = ["engine", "order", "determinant", "fallback_used", "peak_bits", "refused"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        if timing {
            header.push("wall_seconds".into());
        }
        let mut rows = vec![header];
        for r in &self.records {
            let mut row = vec![
                r.engine.to_string(),
                r.order.to_string(),
                r.determinant.clone().unwrap_or_default(),
                r.fallback_used.to_string(),
                r.peak_bits.to_string(),
                r.refused.clone().unwrap_or_default(),
            ];
            if timing {
                row.push(r.wall_seconds.to_string());
            }
            rows.push(row);
        }
        rows
    }
}

impl Render for DetResult {
    fn table(&self, _timing: bool) -> String {
        let mut out = format_rat(&self.value);
        out.push('\n');
        if self.engine == crate::det::Engine::Condense {
            let _ = writeln!(out, "fallback: {}", self.fallback_used);
        }
        out
    }

    fn json_value(&self) -> Value {
        serde_json::json!({
            "schema_version": super::SCHEMA_VERSION,
            "engine": self.engine,
            "value": format_rat(&self.value),
            "fallback_used": self.fallback_used,
        })
    }

    fn csv_rows(&self, _timing: bool) -> Vec<Vec<String>> {
        vec![
            vec!["engine".into(), "value".into(), "fallback_used".into()],
            vec![self.engine.to_string(), format_rat(&self.value), self.fallback_used.to_string()],
        ]
    }
}
