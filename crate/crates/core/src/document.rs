//! Serialized tables: JSON, a text layout mirroring printed Cayley tables,
//! and CSV.
//!
//! ```text
//! # unit=E
//! ∇₀⁴ | O A B E
//! ----+--------
//! O   | E E E E
//! A   | B E E E
//! B   | A B E E
//! E   | O A B E
//! ```
//!
//! The complement is never serialized; it is derived from the table.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::{check_axioms, check_labels, validate, Element, ViolationReport, WajsbergTable};

pub const SCHEMA_VERSION: u32 = 1;

/// Corner cell of the text layout when the table has no name.
const ANONYMOUS_CORNER: &str = "∘";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "text" | "txt" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Malformed(format!("unknown format {other:?}"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

impl Format {
    /// Picks a format from the file extension, falling back to the content.
    pub fn detect(path: Option<&Path>, content: &str) -> Format {
        let ext = path
            .and_then(|p| p.extension())
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase);
        match ext.as_deref() {
            Some("json") => Format::Json,
            Some("csv") => Format::Csv,
            Some("txt") | Some("text") => Format::Text,
            _ if content.trim_start().starts_with('{') => Format::Json,
            _ if content.lines().any(|l| l.contains('|')) => Format::Text,
            _ => Format::Csv,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDocument {
    pub schema: u32,
    pub n: usize,
    pub labels: Vec<String>,
    pub unit: String,
    pub op: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl TableDocument {
    pub fn from_table(w: &WajsbergTable) -> Self {
        let labels = w.labels().to_vec();
        let op = w
            .elements()
            .map(|x| w.elements().map(|y| labels[w.op(x, y)].clone()).collect())
            .collect();
        TableDocument {
            schema: SCHEMA_VERSION,
            n: w.order(),
            unit: labels[w.unit()].clone(),
            labels,
            op,
            name: None,
            note: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        check_name(&name)?;
        self.name = Some(name);
        Ok(self)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Checks field consistency without looking at the axioms.
    pub fn check(&self) -> Result<()> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::Malformed(format!(
                "unsupported schema version {}",
                self.schema
            )));
        }
        check_labels(&self.labels, self.n)?;
        if let Some(name) = &self.name {
            check_name(name)?;
        }
        if self.op.len() != self.n || self.op.iter().any(|r| r.len() != self.n) {
            return Err(Error::Malformed(format!(
                "operation table must be {0}×{0}",
                self.n
            )));
        }
        self.index(&self.unit)?;
        Ok(())
    }

    fn index(&self, label: &str) -> Result<Element> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Malformed(format!("unknown label {label:?}")))
    }

    /// Resolves labels to a raw row-major table and unit index.
    pub fn raw(&self) -> Result<(Vec<Element>, Element)> {
        self.check()?;
        let mut flat = Vec::with_capacity(self.n * self.n);
        for (i, row) in self.op.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                flat.push(self.index(cell).map_err(|_| {
                    Error::Malformed(format!(
                        "entry {}∘{} = {cell:?} is not a label",
                        self.labels[i], self.labels[j]
                    ))
                })?);
            }
        }
        Ok((flat, self.index(&self.unit)?))
    }

    /// All axiom violations of the document's table.
    pub fn violations(&self) -> Result<ViolationReport> {
        let (flat, unit) = self.raw()?;
        check_axioms(self.n, &flat, unit)
    }

    pub fn to_table(&self) -> Result<WajsbergTable> {
        let (flat, unit) = self.raw()?;
        validate(self.n, &flat, unit)?.with_labels(self.labels.clone())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.render_json(),
            Format::Text => self.render_text(),
            Format::Csv => self.render_csv(),
        }
    }

    pub fn parse(input: &str, format: Format) -> Result<Self> {
        let doc = match format {
            Format::Json => parse_json(input)?,
            Format::Text => parse_text(input)?,
            Format::Csv => parse_csv(input)?,
        };
        doc.check()?;
        Ok(doc)
    }

    fn render_json(&self) -> String {
        let q = |s: &str| serde_json::to_string(s).expect("strings serialize");
        let row = |r: &[String]| {
            let cells: Vec<String> = r.iter().map(|c| q(c)).collect();
            format!("[{}]", cells.join(","))
        };
        let mut out = String::from("{\n");
        out.push_str(&format!("  \"schema\": {},\n", self.schema));
        out.push_str(&format!("  \"n\": {},\n", self.n));
        out.push_str(&format!("  \"labels\": {},\n", row(&self.labels)));
        out.push_str(&format!("  \"unit\": {},\n", q(&self.unit)));
        out.push_str("  \"op\": [\n");
        let rows: Vec<String> = self.op.iter().map(|r| format!("    {}", row(r))).collect();
        out.push_str(&rows.join(",\n"));
        out.push_str("\n  ]");
        if let Some(name) = &self.name {
            out.push_str(&format!(",\n  \"name\": {}", q(name)));
        }
        if let Some(note) = &self.note {
            out.push_str(&format!(",\n  \"note\": {}", q(note)));
        }
        out.push_str("\n}\n");
        out
    }

    fn render_text(&self) -> String {
        let width = self.labels.iter().map(|l| l.chars().count()).max().unwrap_or(1);
        let corner = self.name.as_deref().unwrap_or(ANONYMOUS_CORNER);
        let first = width.max(corner.chars().count());
        let pad = |s: &str, w: usize| format!("{s}{}", " ".repeat(w - s.chars().count()));
        let cells = |r: &[String]| r.iter().map(|c| pad(c, width)).collect::<Vec<_>>().join(" ");

        let mut out = format!("# unit={}\n", self.unit);
        if let Some(note) = &self.note {
            out.push_str(&format!("# note={}\n", escape(note)));
        }
        let header = cells(&self.labels);
        out.push_str(&format!("{} | {}\n", pad(corner, first), header.trim_end()));
        out.push_str(&format!(
            "{}-+-{}\n",
            "-".repeat(first),
            "-".repeat(header.trim_end().chars().count())
        ));
        for (label, row) in self.labels.iter().zip(&self.op) {
            out.push_str(&format!("{} | {}\n", pad(label, first), cells(row).trim_end()));
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut out = format!("#unit={}\n", self.unit);
        if let Some(name) = &self.name {
            out.push_str(&format!("#name={name}\n"));
        }
        if let Some(note) = &self.note {
            out.push_str(&format!("#note={}\n", escape(note)));
        }
        out.push_str(&self.labels.join(","));
        out.push('\n');
        for row in &self.op {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

fn check_name(name: &str) -> Result<()> {
    if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == '|' || c == '#') {
        return Err(Error::Malformed(format!(
            "table name {name:?} must be non-empty and free of whitespace, '|' and '#'"
        )));
    }
    Ok(())
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\")
        .replace('\n', "\\n")
        .replace('\r', "\\r")
}

fn unescape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c == '\\' {
            match chars.next() {
                Some('n') => out.push('\n'),
                Some('r') => out.push('\r'),
                Some(other) => out.push(other),
                None => out.push('\\'),
            }
        } else {
            out.push(c);
        }
    }
    out
}

fn parse_json(input: &str) -> Result<TableDocument> {
    serde_json::from_str(input).map_err(|e| Error::parse(e.line(), e.to_string()))
}

/// Directive and content lines, with 1-based line numbers.
struct Lines<'a> {
    unit: Option<String>,
    name: Option<String>,
    note: Option<String>,
    content: Vec<(usize, &'a str)>,
}

fn split_lines<'a>(input: &'a str, comment: &str) -> Lines<'a> {
    let mut lines = Lines {
        unit: None,
        name: None,
        note: None,
        content: Vec::new(),
    };
    for (i, raw) in input.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        // directive values run to the end of the raw line, so notes keep
        // their surrounding whitespace
        if let Some(rest) = raw.trim_start().strip_prefix(comment) {
            let rest = rest.trim_start();
            if let Some(u) = rest.strip_prefix("unit=") {
                lines.unit = Some(u.trim().to_string());
            } else if let Some(n) = rest.strip_prefix("name=") {
                lines.name = Some(n.trim().to_string());
            } else if let Some(n) = rest.strip_prefix("note=") {
                lines.note = Some(unescape(n));
            }
            continue;
        }
        lines.content.push((i + 1, line));
    }
    lines
}

/// Without a unit directive, the unit is the unique row equal to the header.
fn infer_unit(labels: &[String], op: &[Vec<String>], line: usize) -> Result<String> {
    let mut hits = labels.iter().zip(op).filter(|(_, row)| row.as_slice() == labels);
    match (hits.next(), hits.next()) {
        (Some((l, _)), None) => Ok(l.clone()),
        _ => Err(Error::parse(line, "no unit given and none can be inferred")),
    }
}

fn parse_text(input: &str) -> Result<TableDocument> {
    let lines = split_lines(input, "#");
    let mut content = lines.content.into_iter();
    let (hline, header) = content
        .next()
        .ok_or_else(|| Error::parse(1, "empty table"))?;
    let (corner, head) = header
        .split_once('|')
        .ok_or_else(|| Error::parse(hline, "header must separate the corner cell with '|'"))?;
    let corner = corner.trim();
    let labels: Vec<String> = head.split_whitespace().map(str::to_string).collect();
    let mut op = Vec::new();
    let mut last = hline;
    for (lno, line) in content {
        last = lno;
        if line.chars().all(|c| matches!(c, '-' | '+' | '=' | ' ')) {
            continue;
        }
        let (row_label, cells) = line
            .split_once('|')
            .ok_or_else(|| Error::parse(lno, "row must separate its label with '|'"))?;
        let row_label = row_label.trim();
        match labels.get(op.len()) {
            Some(expected) if expected == row_label => {}
            Some(expected) => {
                return Err(Error::parse(
                    lno,
                    format!("row {row_label:?} found where row {expected:?} was expected"),
                ))
            }
            None => return Err(Error::parse(lno, "more rows than header labels")),
        }
        let cells: Vec<String> = cells.split_whitespace().map(str::to_string).collect();
        if cells.len() != labels.len() {
            return Err(Error::parse(
                lno,
                format!("row has {} entries, expected {}", cells.len(), labels.len()),
            ));
        }
        op.push(cells);
    }
    if op.len() != labels.len() {
        return Err(Error::parse(
            last,
            format!("{} rows for {} labels", op.len(), labels.len()),
        ));
    }
    let unit = match lines.unit {
        Some(u) => u,
        None => infer_unit(&labels, &op, hline)?,
    };
    Ok(TableDocument {
        schema: SCHEMA_VERSION,
        n: labels.len(),
        labels,
        unit,
        op,
        name: (corner != ANONYMOUS_CORNER && !corner.is_empty()).then(|| corner.to_string()),
        note: lines.note,
    })
}

fn parse_csv(input: &str) -> Result<TableDocument> {
    let lines = split_lines(input, "#");
    let split = |l: &str| -> Vec<String> { l.split(',').map(|c| c.trim().to_string()).collect() };
    let mut content = lines.content.into_iter();
    let (hline, header) = content.next().ok_or_else(|| Error::parse(1, "empty table"))?;
    let labels = split(header);
    let mut op = Vec::new();
    let mut last = hline;
    for (lno, line) in content {
        last = lno;
        let row = split(line);
        if row.len() != labels.len() {
            return Err(Error::parse(
                lno,
                format!("row has {} entries, expected {}", row.len(), labels.len()),
            ));
        }
        op.push(row);
    }
    if op.len() != labels.len() {
        return Err(Error::parse(
            last,
            format!("{} rows for {} labels", op.len(), labels.len()),
        ));
    }
    let unit = match lines.unit {
        Some(u) => u,
        None => infer_unit(&labels, &op, hline)?,
    };
    Ok(TableDocument {
        schema: SCHEMA_VERSION,
        n: labels.len(),
        labels,
        unit,
        op,
        name: lines.name,
        note: lines.note,
    })
}

/// Reads and parses a document, detecting the format when not given.
pub fn read_document(path: &Path, format: Option<Format>) -> Result<TableDocument> {
    let content = std::fs::read_to_string(path)?;
    let format = format.unwrap_or_else(|| Format::detect(Some(path), &content));
    TableDocument::parse(&content, format)
}
