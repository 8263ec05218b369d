//! Record and table emission in CSV, key=value and JSON forms.

use std::io::{self, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    /// `key=value` lines, one block per record.
    Structured,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Float(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<u64> for Value {
    fn from(x: u64) -> Self {
        Value::Int(x as i64)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Text(x.to_string())
    }
}

impl From<String> for Value {
    fn from(x: String) -> Self {
        Value::Text(x)
    }
}

/// 17 significant digits, enough to reproduce every `f64`.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

impl Value {
    pub fn render(&self) -> String {
        match self {
            Value::Float(x) => fmt_float(*x),
            Value::Int(i) => i.to_string(),
            Value::Text(s) => s.clone(),
            Value::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Value::Float(x) => serde_json::Number::from_f64(*x)
                .map(serde_json::Value::Number)
                .unwrap_or(serde_json::Value::Null),
            Value::Int(i) => serde_json::Value::from(*i),
            Value::Text(s) => serde_json::Value::from(s.as_str()),
            Value::Bool(b) => serde_json::Value::Bool(*b),
        }
    }
}

/// An ordered list of named values.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(pub Vec<(String, Value)>);

impl Record {
    pub fn new() -> Self {
        Record(Vec::new())
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Into<Value>) -> &mut Self {
        self.0.push((key.into(), value.into()));
        self
    }

    pub fn with(mut self, key: impl Into<String>, value: impl Into<Value>) -> Self {
        self.push(key, value);
        self
    }

    pub fn keys(&self) -> Vec<String> {
        self.0.iter().map(|(k, _)| k.clone()).collect()
    }

    pub fn values(&self) -> Vec<Value> {
        self.0.iter().map(|(_, v)| v.clone()).collect()
    }
}

/// Writes rows sharing one column list.
///
/// A single-record emitter prints a bare JSON object; otherwise JSON output
/// is an array. CSV always starts with a header row.
pub struct Emitter<W: Write> {
    format: Format,
    single: bool,
    columns: Vec<String>,
    rows: usize,
    csv: Option<csv::Writer<W>>,
    raw: Option<W>,
}

impl<W: Write> Emitter<W> {
    pub fn new(out: W, format: Format, single: bool, columns: Vec<String>) -> Self {
        let (csv, raw) = match format {
            Format::Csv => (Some(csv::WriterBuilder::new().from_writer(out)), None),
            _ => (None, Some(out)),
        };
        Emitter {
            format,
            single,
            columns,
            rows: 0,
            csv,
            raw,
        }
    }

    fn raw(&mut self) -> &mut W {
        self.raw.as_mut().expect("non-CSV emitter owns the writer")
    }

    pub fn row(&mut self, values: &[Value]) -> io::Result<()> {
        if values.len() != self.columns.len() {
            return Err(io::Error::new(
                io::ErrorKind::InvalidInput,
                format!(
                    "row has {} values for {} columns",
                    values.len(),
                    self.columns.len()
                ),
            ));
        }
        match self.format {
            Format::Csv => {
                let w = self.csv.as_mut().expect("CSV emitter owns a CSV writer");
                if self.rows == 0 {
                    w.write_record(&self.columns)?;
                }
                w.write_record(values.iter().map(Value::render))?;
            }
            Format::Structured => {
                let sep = self.rows > 0;
                let lines: Vec<String> = self
                    .columns
                    .iter()
                    .zip(values)
                    .map(|(k, v)| format!("{k}={}", v.render()))
                    .collect();
                let w = self.raw();
                if sep {
                    writeln!(w)?;
                }
                for line in lines {
                    writeln!(w, "{line}")?;
                }
            }
            Format::Json => {
                let obj: serde_json::Map<String, serde_json::Value> = self
                    .columns
                    .iter()
                    .cloned()
                    .zip(values.iter().map(Value::json))
                    .collect();
                let text = serde_json::to_string(&obj).map_err(io::Error::other)?;
                let (first, single) = (self.rows == 0, self.single);
                let w = self.raw();
                if single {
                    writeln!(w, "{text}")?;
                } else {
                    write!(w, "{}\n  {text}", if first { "[" } else { "," })?;
                }
            }
        }
        self.rows += 1;
        Ok(())
    }

    pub fn record(&mut self, r: &Record) -> io::Result<()> {
        self.row(&r.values())
    }

    pub fn finish(mut self) -> io::Result<()> {
        match self.format {
            Format::Csv => {
                let mut w = self.csv.take().expect("CSV emitter owns a CSV writer");
                if self.rows == 0 {
                    w.write_record(&self.columns)?;
                }
                w.flush()?;
            }
            Format::Json if !self.single => {
                let empty = self.rows == 0;
                let w = self.raw();
                if empty {
                    writeln!(w, "[]")?;
                } else {
                    writeln!(w, "\n]")?;
                }
                w.flush()?;
            }
            _ => self.raw().flush()?,
        }
        Ok(())
    }
}

/// Writes a list of records that share keys.
pub fn write_records<W: Write>(
    out: W,
    format: Format,
    records: &[Record],
    single: bool,
) -> io::Result<()> {
    let columns = records.first().map(Record::keys).unwrap_or_default();
    let mut e = Emitter::new(out, format, single, columns);
    for r in records {
        e.record(r)?;
    }
    e.finish()
}

/// A point for [`svg_scatter`], with a class index picking its colour.
pub struct ScatterPoint {
    pub x: f64,
    pub y: f64,
    pub class: usize,
}

const PALETTE: [&str; 4] = ["#1f77b4", "#2ca02c", "#d62728", "#7f7f7f"];

/// A bare-bones SVG scatter: circles in a viewBox covering `[lo, hi]²`
/// with `y` pointing up, plus an optional outline circle of radius `ring`.
pub fn svg_scatter<W: Write>(
    mut out: W,
    points: &[ScatterPoint],
    lo: f64,
    hi: f64,
    ring: Option<f64>,
) -> io::Result<()> {
    let span = hi - lo;
    let dot = span / 400.0;
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{lo} {lo} {span} {span}" width="600" height="600">"#
    )?;
    writeln!(
        out,
        r#"<g transform="scale(1,-1) translate(0,{})">"#,
        -(lo + hi)
    )?;
    if let Some(r) = ring {
        writeln!(
            out,
            r#"<circle cx="0" cy="0" r="{r}" fill="none" stroke="black" stroke-width="{}"/>"#,
            dot / 2.0
        )?;
    }
    for p in points {
        writeln!(
            out,
            r#"<circle cx="{:.6}" cy="{:.6}" r="{dot:.6}" fill="{}"/>"#,
            p.x,
            p.y,
            PALETTE[p.class % PALETTE.len()]
        )?;
    }
    writeln!(out, "</g>\n</svg>")?;
    out.flush()
}
