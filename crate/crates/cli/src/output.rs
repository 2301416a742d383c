use std::io::{self, Write};

use hyperchord::format::format_float;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
    Empty(Option<()>),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) => format_float(*v),
            Cell::Text(s) => s.clone(),
            Cell::Empty(_) => String::new(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty(None), Cell::Num)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

/// Everything a command emits. `columns` names the entries of each row.
#[derive(Debug, Clone)]
pub struct Envelope {
    pub command: &'static str,
    pub parameters: Map<String, Value>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Map<String, Value>,
    pub notes: Vec<String>,
    pub provenance: Provenance,
}

impl Envelope {
    pub fn new(command: &'static str, columns: Vec<&'static str>, seed: Option<u64>, timestamp: bool) -> Self {
        let timestamp = timestamp.then(|| {
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0)
        });
        Envelope {
            command,
            parameters: Map::new(),
            columns,
            rows: Vec::new(),
            summary: Map::new(),
            notes: Vec::new(),
            provenance: Provenance {
                version: env!("CARGO_PKG_VERSION"),
                seed,
                timestamp,
            },
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.parameters.insert(key.into(), serde_json::to_value(value).expect("serializable"));
        self
    }

    pub fn summary(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.summary.insert(key.into(), serde_json::to_value(value).expect("serializable"));
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), serde_json::to_value(v).expect("serializable")))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        serde_json::json!({
            "command": self.command,
            "parameters": self.parameters,
            "rows": rows,
            "summary": self.summary,
            "notes": self.notes,
            "provenance": self.provenance,
        })
    }

    /// Metadata as `#` comment lines, then a header row and the table.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "# command={}", self.command)?;
        writeln!(w, "# version={}", self.provenance.version)?;
        if let Some(seed) = self.provenance.seed {
            writeln!(w, "# seed={seed}")?;
        }
        if let Some(ts) = self.provenance.timestamp {
            writeln!(w, "# timestamp={ts}")?;
        }
        for (k, v) in &self.parameters {
            writeln!(w, "# parameter {k}={}", scalar_text(v))?;
        }
        for (k, v) in &self.summary {
            writeln!(w, "# summary {k}={}", scalar_text(v))?;
        }
        for note in &self.notes {
            writeln!(w, "# note {note}")?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        Ok(())
    }

    pub fn write<W: Write>(&self, format: Format, mut w: W) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(w),
            Format::Json => {
                serde_json::to_writer_pretty(&mut w, &self.to_json())?;
                writeln!(w)
            }
        }
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => format_float(n.as_f64().unwrap_or(f64::NAN)),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar_text).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}
