//! CSV and JSON table writers with canonical ordering.

use crate::Format;

/// A simple rectangular table with provenance comments.
pub struct Table {
    pub comments: Vec<String>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table {
            comments: Vec::new(),
            header,
            rows: Vec::new(),
        }
    }

    pub fn comment(&mut self, s: impl Into<String>) {
        self.comments.push(s.into());
    }

    pub fn row(&mut self, cells: Vec<String>) {
        assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    pub fn print(&self, format: Format) {
        match format {
            Format::Csv => {
                for c in &self.comments {
                    println!("# {c}");
                }
                println!("{}", self.header.join(","));
                for row in &self.rows {
                    println!("{}", row.join(","));
                }
            }
            Format::Json => {
                println!("[");
                for (i, row) in self.rows.iter().enumerate() {
                    let fields: Vec<String> = self
                        .header
                        .iter()
                        .zip(row.iter())
                        .map(|(k, v)| format!("\"{}\": {}", k, json_value(v)))
                        .collect();
                    let comma = if i + 1 < self.rows.len() { "," } else { "" };
                    println!("  {{{}}}{}", fields.join(", "), comma);
                }
                println!("]");
            }
        }
    }
}

fn json_value(v: &str) -> String {
    // numbers pass through, everything else is quoted
    if v.parse::<i128>().is_ok() || v.parse::<f64>().is_ok() {
        v.to_string()
    } else {
        format!("\"{}\"", v.replace('"', "\\\""))
    }
}
