use flaghecke::report::Report;
use serde_json::{json, Value};

use crate::args::{Cli, Format};

pub const SCHEMA_VERSION: &str = "flaghecke-report/1";

/// Rows shown by the csv and table formats.
#[derive(Debug, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

/// What a command produces: a JSON result, its tabular view and the checks.
#[derive(Debug)]
pub struct Outcome {
    pub result: Value,
    pub table: Table,
    pub report: Report,
}

pub fn config(cli: &Cli) -> Value {
    let mut config = serde_json::to_value(&cli.command).expect("config serializes");
    let common = serde_json::to_value(&cli.common).expect("config serializes");
    if let (Value::Object(c), Value::Object(extra)) = (&mut config, common) {
        c.extend(extra);
        for key in ["lambda", "mu"] {
            if let Some(Value::String(text)) = c.get(key) {
                let parts: Result<Vec<usize>, _> =
                    text.trim_matches(|ch| ch == '(' || ch == ')').split(',').map(|x| x.trim().parse::<usize>()).collect();
                if let Ok(parts) = parts {
                    c.insert(key.to_string(), json!(parts));
                }
            }
        }
    }
    config
}

pub fn render(cli: &Cli, out: &Outcome) -> String {
    match cli.common.format {
        Format::Json => {
            let checks: Vec<Value> = out
                .report
                .checks
                .iter()
                .map(|c| match &c.witness {
                    Some(w) => json!({"name": c.name, "pass": c.pass, "witness": w}),
                    None => json!({"name": c.name, "pass": c.pass}),
                })
                .collect();
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "config": config(cli),
                "result": out.result,
                "checks": checks,
            });
            serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
        }
        Format::Csv => csv_text(out),
        Format::Table => table_text(out),
    }
}

fn csv_text(out: &Outcome) -> String {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    let write = |w: &mut csv::Writer<Vec<u8>>, r: &[String]| w.write_record(r).expect("in-memory csv");
    write(&mut w, &out.table.headers);
    for r in &out.table.rows {
        write(&mut w, r);
    }
    if !out.report.checks.is_empty() {
        write(&mut w, &[String::new()]);
        write(&mut w, &["check".into(), "pass".into(), "witness".into()]);
        for c in &out.report.checks {
            write(&mut w, &[c.name.clone(), c.pass.to_string(), c.witness.clone().unwrap_or_default()]);
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

fn table_text(out: &Outcome) -> String {
    let t = &out.table;
    let width = |i: usize| {
        std::iter::once(&t.headers[i]).chain(t.rows.iter().map(|r| &r[i])).map(|s| s.chars().count()).max().unwrap_or(0)
    };
    let widths: Vec<usize> = (0..t.headers.len()).map(width).collect();
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = line(&t.headers);
    s += &line(&widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>());
    for r in &t.rows {
        s += &line(r);
    }
    if !out.report.checks.is_empty() {
        s += "\n";
        for c in &out.report.checks {
            s += &format!("{} {}", if c.pass { "PASS" } else { "FAIL" }, c.name);
            if let Some(w) = &c.witness {
                s += &format!(": {w}");
            }
            s += "\n";
        }
    }
    s
}
