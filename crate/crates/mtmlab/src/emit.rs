//! CSV emission: comma separator, one header row, `.` decimal separator,
//! floats at 17 significant digits (lossless f64 round-trip), and an
//! optional leading `# generated_unix_seconds=…` comment line.

use std::io::{self, Write};
use std::time::{SystemTime, UNIX_EPOCH};

/// One CSV field.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Str(String),
    UInt(u64),
    Float(f64),
    Bool(bool),
    Empty,
}

impl Cell {
    fn write(&self, out: &mut dyn Write) -> io::Result<()> {
        match self {
            Cell::Str(s) => write!(out, "{s}"),
            Cell::UInt(v) => write!(out, "{v}"),
            Cell::Float(v) => write!(out, "{v:.16e}"),
            Cell::Bool(b) => write!(out, "{b}"),
            Cell::Empty => Ok(()),
        }
    }
}

pub fn str_cell(s: impl Into<String>) -> Cell {
    Cell::Str(s.into())
}

/// A complete result table: fixed header, rows of cells.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len(), "row width mismatch");
        self.rows.push(row);
    }

    /// Write the table. `with_meta` prepends the generation-timestamp
    /// comment; suppressing it makes reruns byte-identical.
    pub fn write(&self, out: &mut dyn Write, with_meta: bool) -> io::Result<()> {
        if with_meta {
            let secs = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            writeln!(out, "# generated_unix_seconds={secs}")?;
        }
        writeln!(out, "{}", self.header.join(","))?;
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    write!(out, ",")?;
                }
                cell.write(out)?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}
