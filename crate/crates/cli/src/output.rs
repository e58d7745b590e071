use std::fs::File;
use std::io::{self, Write};

use anyhow::{bail, Context};
use serde::Serialize;
use serde_json::{json, Map, Value};

use arbor_core::numeric::{parse_rational, rational_to_f64};

use crate::{Format, GlobalOpts, Resolved};

pub struct CsvTable {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub struct Report {
    pub command: &'static str,
    pub config: Value,
    pub result: Value,
    pub passed: bool,
    pub csv: Option<CsvTable>,
}

impl Report {
    /// `config` is the subcommand's own arguments; the resolved globals are
    /// merged in so the header shows every setting in effect.
    pub fn new(command: &'static str, args: &impl Serialize, resolved: &Resolved, result: impl Serialize) -> anyhow::Result<Self> {
        let mut config = serde_json::to_value(args)?;
        if let Value::Object(m) = &mut config {
            m.insert("budget".into(), json!(resolved.budget));
            m.insert("format".into(), serde_json::to_value(resolved.format)?);
        }
        Ok(Report {
            command,
            config,
            result: serde_json::to_value(result)?,
            passed: true,
            csv: None,
        })
    }

    pub fn passed(mut self, passed: bool) -> Self {
        self.passed = passed;
        self
    }

    pub fn with_csv(mut self, table: CsvTable) -> Self {
        self.csv = Some(table);
        self
    }
}

fn is_rational(s: &str) -> bool {
    s.split_once('/').is_some_and(|(n, d)| {
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        digits(n.strip_prefix('-').unwrap_or(n)) && digits(d)
    })
}

fn float_of(s: &str) -> Option<f64> {
    parse_rational(s).ok().map(|r| rational_to_f64(&r))
}

/// Adds a `<key>_float` sibling next to every exact rational (or list of
/// rationals) that does not already have one.
pub fn annotate(v: &mut Value) {
    match v {
        Value::Object(map) => {
            let mut added = Map::new();
            for (k, val) in map.iter_mut() {
                annotate(val);
                let key = format!("{k}_float");
                match val {
                    Value::String(s) if is_rational(s) => {
                        added.insert(key, json!(float_of(s)));
                    }
                    Value::Array(items)
                        if !items.is_empty() && items.iter().all(|x| x.as_str().is_some_and(is_rational)) =>
                    {
                        let floats: Vec<Option<f64>> = items.iter().map(|x| float_of(x.as_str().unwrap())).collect();
                        added.insert(key, json!(floats));
                    }
                    _ => {}
                }
            }
            for (k, val) in added {
                if !map.contains_key(&k) {
                    map.insert(k, val);
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(annotate),
        _ => {}
    }
}

fn header(report: &Report) -> Value {
    json!({
        "tool": "arbor",
        "version": env!("CARGO_PKG_VERSION"),
        "command": report.command,
        "config": report.config,
    })
}

fn write_report(report: &Report, format: Format, out: &mut dyn Write) -> anyhow::Result<()> {
    match format {
        Format::Json => {
            let mut result = report.result.clone();
            annotate(&mut result);
            let doc = json!({
                "header": header(report),
                "passed": report.passed,
                "result": result,
            });
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let Some(table) = &report.csv else {
                bail!("--format csv is not supported by `{}`", report.command);
            };
            writeln!(out, "# {}", serde_json::to_string(&header(report))?)?;
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&table.header)?;
            for row in &table.rows {
                w.write_record(row)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn emit(report: &Report, global: &GlobalOpts) -> anyhow::Result<()> {
    match &global.output {
        Some(path) => {
            let mut f = File::create(path).with_context(|| format!("--output {}", path.display()))?;
            write_report(report, global.format, &mut f)
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_report(report, global.format, &mut lock)
        }
    }
}
