//! Plot-ready result tables and their CSV/JSON serializations.
//!
//! CSV layout: leading `# key = value` metadata comment lines, one
//! `name [unit]` header row, then numeric rows. Decimal points, no
//! thousands separators, LF line endings. Cell values print in Rust's
//! shortest round-trip notation, so re-parsing a table reproduces every
//! f64 bit-exactly (unreachable cells serialize as `NaN`).
//!
//! JSON layout: one object with `metadata`, `columns`, and `rows` keys;
//! non-finite cells become `null`.

use anyhow::{bail, Context};
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub unit: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub name: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<f64>>,
    /// Ordered metadata lines (scenario hash, seed, version, timestamp).
    pub metadata: Vec<(String, String)>,
}

impl ResultTable {
    pub fn new(name: &str, columns: &[(&str, &str)]) -> Self {
        ResultTable {
            name: name.to_string(),
            columns: columns
                .iter()
                .map(|&(name, unit)| Column {
                    name: name.to_string(),
                    unit: unit.to_string(),
                })
                .collect(),
            rows: Vec::new(),
            metadata: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<f64>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width must match the column count of `{}`",
            self.name
        );
        self.rows.push(row);
    }

    pub fn add_metadata(&mut self, key: &str, value: &str) {
        self.metadata.push((key.to_string(), value.to_string()));
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# table = {}\n", self.name));
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        let header: Vec<String> = self
            .columns
            .iter()
            .map(|c| format!("{} [{}]", c.name, c.unit))
            .collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Parse a table back from its CSV form; inverse of [`to_csv`].
    pub fn from_csv(text: &str) -> anyhow::Result<Self> {
        let mut name = String::new();
        let mut metadata = Vec::new();
        let mut columns = Vec::new();
        let mut rows = Vec::new();
        let mut saw_header = false;
        for (lineno, line) in text.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix("# ") {
                let (k, v) = comment
                    .split_once(" = ")
                    .with_context(|| format!("line {}: malformed metadata", lineno + 1))?;
                if k == "table" {
                    name = v.to_string();
                } else {
                    metadata.push((k.to_string(), v.to_string()));
                }
            } else if !saw_header {
                for cell in line.split(',') {
                    let (cname, rest) = cell
                        .split_once(" [")
                        .with_context(|| format!("line {}: header cell `{cell}`", lineno + 1))?;
                    let unit = rest
                        .strip_suffix(']')
                        .with_context(|| format!("line {}: header cell `{cell}`", lineno + 1))?;
                    columns.push(Column {
                        name: cname.to_string(),
                        unit: unit.to_string(),
                    });
                }
                saw_header = true;
            } else {
                let row: Vec<f64> = line
                    .split(',')
                    .map(|c| {
                        c.parse::<f64>()
                            .with_context(|| format!("line {}: cell `{c}`", lineno + 1))
                    })
                    .collect::<anyhow::Result<_>>()?;
                if row.len() != columns.len() {
                    bail!("line {}: expected {} cells", lineno + 1, columns.len());
                }
                rows.push(row);
            }
        }
        if !saw_header {
            bail!("no header row found");
        }
        Ok(ResultTable {
            name,
            columns,
            rows,
            metadata,
        })
    }

    pub fn to_json(&self) -> Value {
        let metadata: serde_json::Map<String, Value> =
            std::iter::once(("table".to_string(), json!(self.name)))
                .chain(self.metadata.iter().map(|(k, v)| (k.clone(), json!(v))))
                .collect();
        let columns: Vec<Value> = self
            .columns
            .iter()
            .map(|c| json!({ "name": c.name, "unit": c.unit }))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|&v| {
                            serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
                        })
                        .collect(),
                )
            })
            .collect();
        json!({ "metadata": metadata, "columns": columns, "rows": rows })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("table JSON is always serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ResultTable {
        let mut t = ResultTable::new(
            "demo",
            &[("range_m", "m"), ("efield_vpm", "V/m"), ("r90_m", "m")],
        );
        t.add_metadata("seed", "42");
        t.push_row(vec![20.0, 494.6780901988219, 0.1]);
        t.push_row(vec![40.0, 247.33904509941095, f64::NAN]);
        t
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let t = sample();
        let parsed = ResultTable::from_csv(&t.to_csv()).unwrap();
        assert_eq!(parsed.name, t.name);
        assert_eq!(parsed.columns, t.columns);
        assert_eq!(parsed.metadata, t.metadata);
        assert_eq!(parsed.rows.len(), 2);
        assert_eq!(parsed.rows[0], t.rows[0]);
        assert_eq!(parsed.rows[1][1].to_bits(), t.rows[1][1].to_bits());
        assert!(parsed.rows[1][2].is_nan());
    }

    #[test]
    fn empty_table_emits_header_and_metadata_only() {
        let mut t = ResultTable::new("empty", &[("x", "-")]);
        t.add_metadata("seed", "7");
        let csv = t.to_csv();
        assert_eq!(csv, "# table = empty\n# seed = 7\nx [-]\n");
        let parsed = ResultTable::from_csv(&csv).unwrap();
        assert!(parsed.rows.is_empty());
    }

    #[test]
    fn json_shape_and_nan_mapping() {
        let v = sample().to_json();
        assert_eq!(v["metadata"]["table"], "demo");
        assert_eq!(v["columns"][1]["unit"], "V/m");
        assert_eq!(v["rows"][0][1], 494.6780901988219);
        assert!(v["rows"][1][2].is_null(), "NaN maps to null");
    }

    #[test]
    #[should_panic(expected = "row width")]
    fn row_width_is_enforced() {
        let mut t = ResultTable::new("demo", &[("a", "-"), ("b", "-")]);
        t.push_row(vec![1.0]);
    }
}
