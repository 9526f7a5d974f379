use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

/// One CSV field.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Written as `{:.14e}` (15 significant digits).
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Self::Num(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Self::Bool(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Self::Int(v as i64)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Num(v) => write!(f, "{v:.14e}"),
            Self::Int(v) => write!(f, "{v}"),
            Self::Bool(v) => write!(f, "{v}"),
            Self::Text(s) => f.write_str(s),
        }
    }
}

fn write_table<W: Write>(w: W, rows: &[Vec<Cell>], header: &[&str]) -> io::Result<()> {
    let mut out = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(w);
    out.write_record(header)?;
    for (i, row) in rows.iter().enumerate() {
        if row.len() != header.len() {
            return Err(io::Error::new(
                io::ErrorKind::InvalidInput,
                format!(
                    "row {i} has {} fields, header has {}",
                    row.len(),
                    header.len()
                ),
            ));
        }
        out.write_record(row.iter().map(Cell::to_string))?;
    }
    out.flush()
}

/// Render a table as RFC 4180 text (CRLF line ends, header first).
pub fn render_csv(rows: &[Vec<Cell>], header: &[&str]) -> io::Result<String> {
    let mut buf = Vec::new();
    write_table(&mut buf, rows, header)?;
    Ok(String::from_utf8(buf).expect("cells render as UTF-8"))
}

/// Write `rows` under `header` to `path`; returns the number of data rows.
pub fn emit_csv(rows: &[Vec<Cell>], header: &[&str], path: &Path) -> io::Result<usize> {
    write_table(BufWriter::new(File::create(path)?), rows, header)?;
    Ok(rows.len())
}
