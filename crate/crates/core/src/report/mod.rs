//! Result tables, plot series, benchmark checks and bundle comparison.

pub mod benchmark;
pub mod bundle;
pub mod diff;
pub mod fleet;

use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub use benchmark::{
    check_benchmarks, BenchmarkCell, BenchmarkCheck, BenchmarkFile, CellKind, Tolerances,
};
pub use bundle::{
    build_bundle, hash_file, read_bundle, summary_bundle, write_bundle, write_json, BundleOptions,
    InputHash, Provenance, ReportBundle, SummaryBundle,
};
pub use diff::{diff_bundles, CellDiff, DiffReport};
pub use fleet::{fit_report, identify_report, FitReport, IdentifyReport};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            Cell::Text(_) => None,
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Num(v) => write!(f, "{v}"),
            Cell::Text(s) => f.write_str(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Num(v as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridRow {
    pub label: String,
    pub cells: Vec<Cell>,
}

/// A labelled table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub id: String,
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<GridRow>,
}

impl Grid {
    pub fn new(id: &str, title: &str, columns: Vec<String>) -> Self {
        Self {
            id: id.into(),
            title: title.into(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, label: impl Into<String>, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(GridRow {
            label: label.into(),
            cells,
        });
    }

    pub fn get(&self, row: &str, column: &str) -> Option<&Cell> {
        let c = self.columns.iter().position(|c| c == column)?;
        self.rows.iter().find(|r| r.label == row)?.cells.get(c)
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let mut header = vec!["row".to_string()];
        header.extend(self.columns.iter().cloned());
        out.write_record(&header)?;
        for r in &self.rows {
            let mut rec = vec![r.label.clone()];
            rec.extend(r.cells.iter().map(|c| c.to_string()));
            out.write_record(&rec)?;
        }
        out.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub year: f64,
    pub value: f64,
    pub series: String,
}

/// Plot-ready `(year, value, series)` triples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Figure {
    pub id: String,
    pub title: String,
    pub points: Vec<SeriesPoint>,
}

impl Figure {
    pub fn new(id: &str, title: &str) -> Self {
        Self {
            id: id.into(),
            title: title.into(),
            points: Vec::new(),
        }
    }

    pub fn push(&mut self, series: impl Into<String>, year: f64, value: f64) {
        self.points.push(SeriesPoint {
            year,
            value,
            series: series.into(),
        });
    }

    pub fn series(&self, name: &str) -> Vec<(f64, f64)> {
        self.points
            .iter()
            .filter(|p| p.series == name)
            .map(|p| (p.year, p.value))
            .collect()
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["year", "value", "series"])?;
        for p in &self.points {
            out.write_record([p.year.to_string(), p.value.to_string(), p.series.clone()])?;
        }
        out.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}
