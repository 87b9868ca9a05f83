use halasz::numeric::format::sig12;
use serde_json::{json, Map, Value};
use std::io::Write;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => sig12(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            // parsed back from the 12-digit text so CSV and JSON carry the same numbers
            Cell::Num(v) if v.is_finite() => json!(sig12(*v).parse::<f64>().unwrap_or(*v)),
            Cell::Num(_) => Value::Null,
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
        }
    }
}

/// A table together with the resolved configuration that produced it.
pub struct Table {
    pub command: &'static str,
    pub config: Value,
    pub tolerance: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut s = String::new();
                s.push_str(&format!("# halasz {} {}\n", halasz::VERSION, self.command));
                s.push_str(&format!("# config: {}\n", self.config));
                s.push_str(&format!("# tolerance: {}\n", self.tolerance));
                s.push_str(&self.columns.join(","));
                s.push('\n');
                for r in &self.rows {
                    let cells: Vec<String> = r.iter().map(Cell::csv).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
                s
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let mut m = Map::new();
                        for (c, v) in self.columns.iter().zip(r) {
                            m.insert((*c).to_string(), v.json());
                        }
                        Value::Object(m)
                    })
                    .collect();
                let doc = json!({
                    "version": halasz::VERSION,
                    "command": self.command,
                    "config": self.config,
                    "tolerance": self.tolerance,
                    "rows": rows,
                });
                let mut s = serde_json::to_string_pretty(&doc).expect("tables serialise");
                s.push('\n');
                s
            }
        }
    }
}

/// Writes to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}
