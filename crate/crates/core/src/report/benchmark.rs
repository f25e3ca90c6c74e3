//! Published reference cells and their comparison with computed tables.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Cell, Grid};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellKind {
    /// Compared as given, relative tolerance.
    Value,
    /// Published in millions, relative tolerance.
    Millions,
    /// Whole tanker count.
    Count,
    /// Minimum LNH3 carrier count.
    MinCount,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub relative: f64,
    /// Smallest absolute tolerance on `millions` cells, in millions.
    pub millions_floor: f64,
    pub count_abs: f64,
    pub count_relative: f64,
    pub min_count_abs: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            relative: 0.005,
            millions_floor: 0.005,
            count_abs: 2.0,
            count_relative: 0.005,
            min_count_abs: 3.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkCell {
    pub scenario: String,
    pub table: String,
    pub row: String,
    pub column: String,
    pub kind: CellKind,
    #[serde(default)]
    pub value: Option<f64>,
    /// Published as not attainable.
    #[serde(default)]
    pub infeasible: bool,
    /// Tolerance override for this cell, in the units of `value`.
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkFile {
    #[serde(default)]
    pub tolerance: Tolerances,
    #[serde(rename = "cell", default)]
    pub cells: Vec<BenchmarkCell>,
}

impl BenchmarkFile {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let f: BenchmarkFile = toml::from_str(&text)?;
        for c in &f.cells {
            if c.value.is_none() && !c.infeasible {
                return Err(Error::Config(format!(
                    "benchmark {}/{}/{}/{} has neither value nor infeasible",
                    c.scenario, c.table, c.row, c.column
                )));
            }
        }
        Ok(f)
    }

    pub fn for_scenario<'a>(
        &'a self,
        scenario: &'a str,
    ) -> impl Iterator<Item = &'a BenchmarkCell> {
        self.cells.iter().filter(move |c| c.scenario == scenario)
    }
}

/// One published cell next to the engine's value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkCheck {
    pub scenario: String,
    pub table: String,
    pub row: String,
    pub column: String,
    pub published: Cell,
    pub computed: Cell,
    /// Absolute tolerance in the units of `published`.
    pub tolerance: f64,
    pub pass: bool,
}

fn scale(kind: CellKind) -> f64 {
    match kind {
        CellKind::Millions => 1e6,
        _ => 1.0,
    }
}

fn tolerance(cell: &BenchmarkCell, published: f64, tol: &Tolerances) -> f64 {
    if let Some(t) = cell.tolerance {
        return t;
    }
    match cell.kind {
        CellKind::Value => tol.relative * published.abs(),
        CellKind::Millions => (tol.relative * published.abs()).max(tol.millions_floor),
        CellKind::Count => tol.count_abs.max(tol.count_relative * published.abs()),
        CellKind::MinCount => tol.min_count_abs,
    }
}

/// Compares each cell with the matching grid cell. Cells whose table is not
/// among `grids` are skipped.
pub fn check_benchmarks<'a>(
    cells: impl IntoIterator<Item = &'a BenchmarkCell>,
    grids: &[Grid],
    tol: &Tolerances,
) -> Vec<BenchmarkCheck> {
    let mut out = Vec::new();
    for c in cells {
        let Some(grid) = grids.iter().find(|g| g.id == c.table) else {
            continue;
        };
        let computed = grid
            .get(&c.row, &c.column)
            .cloned()
            .unwrap_or_else(|| Cell::Text("missing".into()));
        let k = scale(c.kind);
        let (published, tolerance, pass) = match (c.value, c.infeasible) {
            (_, true) => (
                Cell::Text("infeasible".into()),
                0.0,
                computed == Cell::Text("infeasible".into()),
            ),
            (Some(v), false) => {
                let t = tolerance(c, v, tol);
                let pass = computed
                    .as_f64()
                    .is_some_and(|x| (x / k - v).abs() <= t + 1e-12);
                (Cell::Num(v), t, pass)
            }
            (None, false) => unreachable!("validated on load"),
        };
        let computed = match computed {
            Cell::Num(x) => Cell::Num(x / k),
            t => t,
        };
        out.push(BenchmarkCheck {
            scenario: c.scenario.clone(),
            table: c.table.clone(),
            row: c.row.clone(),
            column: c.column.clone(),
            published,
            computed,
            tolerance,
            pass,
        });
    }
    out
}
