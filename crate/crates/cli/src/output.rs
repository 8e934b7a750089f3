use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Tabular view of a report, for CSV.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// What a command produced. `json` is canonical; `text` and `table` render it.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub table: Table,
    /// Whether every check the command was asked to perform passed.
    pub ok: bool,
}

impl Report {
    pub fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.json)?;
                writeln!(out)
            }
            Format::Text => {
                out.write_all(self.text.as_bytes())?;
                if !self.text.ends_with('\n') {
                    writeln!(out)?;
                }
                Ok(())
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.table.header)?;
                for row in &self.table.rows {
                    w.write_record(row)?;
                }
                w.flush()
            }
        }
    }
}

/// Comma-joined set or window, `{}`-wrapped when `braces`.
pub fn join(members: &[i32], braces: bool) -> String {
    let s: Vec<String> = members.iter().map(i32::to_string).collect();
    if braces {
        format!("{{{}}}", s.join(","))
    } else {
        s.join(",")
    }
}
