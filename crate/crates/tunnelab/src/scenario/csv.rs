//! Deterministic CSV emission: '#'-prefixed metadata lines, column headers
//! carrying the producing formula, 15 significant digits.

use std::io::Write;
use std::path::Path;

use crate::error::Result;

/// One output column: short name, unit, and the formula that produced it.
#[derive(Debug, Clone)]
pub struct Column {
    pub name: &'static str,
    pub unit: &'static str,
    pub formula: String,
}

impl Column {
    pub fn new(name: &'static str, unit: &'static str, formula: impl Into<String>) -> Self {
        Self {
            name,
            unit,
            formula: formula.into(),
        }
    }
}

/// Format with 15 significant digits; the fixed width keeps diffs stable.
pub fn sig15(x: f64) -> String {
    if x == 0.0 {
        // normalise -0 so reruns are byte-identical across code paths
        return String::from("0.00000000000000e0");
    }
    format!("{x:.14e}")
}

/// Write a CSV file: metadata lines, one '# col' line per column, a plain
/// header row, then the data rows.
pub fn write_csv(
    path: &Path,
    metadata: &[(String, String)],
    columns: &[Column],
    rows: &[Vec<f64>],
) -> Result<()> {
    let mut buf = Vec::new();
    for (k, v) in metadata {
        writeln!(buf, "# {k}: {v}")?;
    }
    for (i, c) in columns.iter().enumerate() {
        writeln!(buf, "# col {}: {} [{}] {}", i + 1, c.name, c.unit, c.formula)?;
    }
    let header: Vec<&str> = columns.iter().map(|c| c.name).collect();
    writeln!(buf, "{}", header.join(","))?;
    for row in rows {
        debug_assert_eq!(row.len(), columns.len());
        let cells: Vec<String> = row.iter().map(|&v| sig15(v)).collect();
        writeln!(buf, "{}", cells.join(","))?;
    }
    std::fs::write(path, buf)?;
    Ok(())
}
