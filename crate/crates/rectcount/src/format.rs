//! Output records and their table, CSV and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv header must start with n,value, got {0:?}")]
    Header(Vec<String>),
    #[error("bad field {field:?} in row {row}")]
    Field { row: usize, field: String },
}

/// One output row. Exact quantities are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub n: u64,
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residue: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

impl Row {
    pub fn new(n: u64, value: impl ToString) -> Self {
        Row { n, value: value.to_string(), predicted: None, residue: None, pass: None }
    }

    pub fn predicted(mut self, p: impl ToString) -> Self {
        self.predicted = Some(p.to_string());
        self
    }

    pub fn residue(mut self, r: impl ToString) -> Self {
        self.residue = Some(r.to_string());
        self
    }

    pub fn pass(mut self, pass: bool) -> Self {
        self.pass = Some(pass);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OutputRecord {
    pub sequence: String,
    pub args: BTreeMap<String, String>,
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Columns {
    predicted: bool,
    residue: bool,
    pass: bool,
}

impl OutputRecord {
    pub fn new(sequence: impl Into<String>, args: BTreeMap<String, String>) -> Self {
        OutputRecord { sequence: sequence.into(), args, rows: Vec::new() }
    }

    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass != Some(false))
    }

    fn columns(&self) -> Columns {
        Columns {
            predicted: self.rows.iter().any(|r| r.predicted.is_some()),
            residue: self.rows.iter().any(|r| r.residue.is_some()),
            pass: self.rows.iter().any(|r| r.pass.is_some()),
        }
    }

    fn header(&self) -> Vec<&'static str> {
        let c = self.columns();
        let mut h = vec!["n", "value"];
        if c.predicted {
            h.push("predicted");
        }
        if c.residue {
            h.push("residue");
        }
        if c.pass {
            h.push("pass");
        }
        h
    }

    fn cells(&self, row: &Row) -> Vec<String> {
        let c = self.columns();
        let mut out = vec![row.n.to_string(), row.value.clone()];
        let opt = |v: &Option<String>| v.clone().unwrap_or_default();
        if c.predicted {
            out.push(opt(&row.predicted));
        }
        if c.residue {
            out.push(opt(&row.residue));
        }
        if c.pass {
            out.push(row.pass.map(|p| p.to_string()).unwrap_or_default());
        }
        out
    }

    pub fn to_csv(&self) -> Result<String, FormatError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.header())?;
        for row in &self.rows {
            w.write_record(self.cells(row))?;
        }
        let bytes = w.into_inner().map_err(|e| FormatError::Csv(e.into_error().into()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// CSV carries only the rows; name and args come from the caller.
    pub fn from_csv(text: &str, sequence: &str, args: BTreeMap<String, String>) -> Result<Self, FormatError> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let header: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
        if header.len() < 2 || header[0] != "n" || header[1] != "value" {
            return Err(FormatError::Header(header));
        }
        let mut rows = Vec::new();
        for (i, rec) in r.records().enumerate() {
            let rec = rec?;
            let bad = |field: &str| FormatError::Field { row: i, field: field.to_owned() };
            let mut row = Row::new(rec[0].parse().map_err(|_| bad(&rec[0]))?, &rec[1]);
            for (name, cell) in header.iter().zip(rec.iter()).skip(2) {
                if cell.is_empty() {
                    continue;
                }
                match name.as_str() {
                    "predicted" => row.predicted = Some(cell.to_owned()),
                    "residue" => row.residue = Some(cell.to_owned()),
                    "pass" => row.pass = Some(cell.parse().map_err(|_| bad(cell))?),
                    other => return Err(bad(other)),
                }
            }
            rows.push(row);
        }
        Ok(OutputRecord { sequence: sequence.to_owned(), args, rows })
    }

    pub fn to_json(&self) -> Result<String, FormatError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_table(&self) -> String {
        let header = self.header();
        let body: Vec<Vec<String>> = self.rows.iter().map(|r| self.cells(r)).collect();
        let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
        for cells in &body {
            for (w, c) in widths.iter_mut().zip(cells) {
                *w = (*w).max(c.len());
            }
        }
        let mut out = String::new();
        let mut line = |cells: &[String]| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(&header.iter().map(|h| h.to_string()).collect::<Vec<_>>());
        for cells in &body {
            line(cells);
        }
        out
    }
}

/// A record plus free-text notes (formulas, diagnostics).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub record: OutputRecord,
    pub notes: Vec<String>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    #[serde(flatten)]
    record: &'a OutputRecord,
    #[serde(skip_serializing_if = "<[String]>::is_empty")]
    notes: &'a [String],
}

impl Report {
    pub fn new(record: OutputRecord) -> Self {
        Report { record, notes: Vec::new() }
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    pub fn render(&self, format: Format) -> Result<String, FormatError> {
        match format {
            Format::Csv => self.record.to_csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&JsonReport { record: &self.record, notes: &self.notes })?;
                s.push('\n');
                Ok(s)
            }
            Format::Table => {
                let mut s = String::new();
                let args: Vec<String> = self.record.args.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = writeln!(s, "# {}", [self.record.sequence.clone()].into_iter().chain(args).collect::<Vec<_>>().join(" "));
                for n in &self.notes {
                    let _ = writeln!(s, "# {n}");
                }
                s.push_str(&self.record.to_table());
                Ok(s)
            }
        }
    }
}
