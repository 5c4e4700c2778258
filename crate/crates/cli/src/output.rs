//! Deterministic text output: fixed float formatting and CSV emission.
//!
//! Every floating-point value leaves the program through [`sci`], so a given
//! configuration always produces byte-identical output. CSV files carry the
//! resolved configuration as `#`-prefixed comment lines before the column
//! row; no timestamps or environment data are written.

use std::io;
use std::path::Path;

/// Scientific notation with 12 significant digits.
pub fn sci(value: f64) -> String {
    format!("{value:.11e}")
}

/// Render a CSV document: provenance comments, a column-name row, then the
/// data rows in [`sci`] format.
pub fn render_csv(provenance: &[String], columns: &[&str], rows: &[Vec<f64>]) -> String {
    let mut text = String::new();
    for line in provenance {
        text.push_str("# ");
        text.push_str(line);
        text.push('\n');
    }
    text.push_str(&columns.join(","));
    text.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&v| sci(v)).collect();
        text.push_str(&cells.join(","));
        text.push('\n');
    }
    text
}

/// Write a rendered CSV to disk.
pub fn write_csv(
    path: &Path,
    provenance: &[String],
    columns: &[&str],
    rows: &[Vec<f64>],
) -> io::Result<()> {
    std::fs::write(path, render_csv(provenance, columns, rows))
}
