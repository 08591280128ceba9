use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde_json::{Map, Value};

use super::{CliError, OutputFormat};

/// A named table of JSON-typed cells, written either as CSV or as a JSON
/// array of row objects with the same content.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width in table {}", self.name);
        self.rows.push(row);
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let mut m = Map::new();
                    for (c, v) in self.columns.iter().zip(r) {
                        m.insert(c.clone(), v.clone());
                    }
                    Value::Object(m)
                })
                .collect(),
        )
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r.iter().map(cell))?;
        }
        w.flush()?;
        Ok(())
    }

    /// Writes `<dir>/<name>.<ext>` and returns the path.
    pub fn write(&self, dir: &Path, format: OutputFormat) -> Result<PathBuf, CliError> {
        let path = dir.join(format!("{}.{}", self.name, format.extension()));
        let file = File::create(&path).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?;
        let mut out = BufWriter::new(file);
        match format {
            OutputFormat::Csv => self
                .write_csv(&mut out)
                .map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?,
            OutputFormat::Json => {
                serde_json::to_writer_pretty(&mut out, &self.to_json())
                    .map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?;
                writeln!(out).map_err(|e| CliError::Output(e.to_string()))?;
            }
        }
        out.flush().map_err(|e| CliError::Output(e.to_string()))?;
        Ok(path)
    }
}

/// CSV rendering of a cell: strings bare, null empty, numbers in their
/// shortest round-trip form.
pub fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Float cell; non-finite values become strings since JSON has no
/// representation for them.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::from(x)
    } else if x.is_nan() {
        Value::from("NaN")
    } else if x > 0.0 {
        Value::from("inf")
    } else {
        Value::from("-inf")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json_agree() {
        let mut t = Table::new("t", &["a", "b", "c"]);
        t.push(vec![Value::from("x"), num(0.1 + 0.2), Value::Null]);
        t.push(vec![Value::from("y"), num(f64::NEG_INFINITY), Value::from(3)]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "a,b,c\nx,0.30000000000000004,\ny,-inf,3\n");
        let j = t.to_json();
        assert_eq!(j[0]["b"].as_f64().unwrap(), 0.1 + 0.2);
        assert_eq!(j[1]["b"], "-inf");
    }
}
