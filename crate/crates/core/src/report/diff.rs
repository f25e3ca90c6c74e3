//! Cell-by-cell comparison of two bundles.

use serde::{Deserialize, Serialize};

use super::{Cell, Figure, Grid};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellDiff {
    pub table: String,
    pub row: String,
    pub column: String,
    pub left: Option<Cell>,
    pub right: Option<Cell>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DiffReport {
    pub compared: usize,
    pub differences: Vec<CellDiff>,
}

impl DiffReport {
    pub fn is_clean(&self) -> bool {
        self.differences.is_empty()
    }
}

fn close(a: &Cell, b: &Cell, rel: f64, abs: f64) -> bool {
    match (a, b) {
        (Cell::Num(x), Cell::Num(y)) => (x - y).abs() <= abs.max(rel * x.abs().max(y.abs())),
        _ => a == b,
    }
}

fn figure_grid(f: &Figure) -> Grid {
    let mut g = Grid::new(&f.id, &f.title, vec!["value".into()]);
    for p in &f.points {
        g.push(format!("{}@{}", p.series, p.year), vec![Cell::Num(p.value)]);
    }
    g
}

fn diff_grid(left: Option<&Grid>, right: Option<&Grid>, rel: f64, abs: f64, out: &mut DiffReport) {
    let id = left.or(right).map(|g| g.id.clone()).unwrap_or_default();
    let mut keys: Vec<(String, String)> = Vec::new();
    for g in [left, right].into_iter().flatten() {
        for r in &g.rows {
            for c in &g.columns {
                let k = (r.label.clone(), c.clone());
                if !keys.contains(&k) {
                    keys.push(k);
                }
            }
        }
    }
    for (row, column) in keys {
        let l = left.and_then(|g| g.get(&row, &column)).cloned();
        let r = right.and_then(|g| g.get(&row, &column)).cloned();
        out.compared += 1;
        let same = match (&l, &r) {
            (Some(a), Some(b)) => close(a, b, rel, abs),
            _ => false,
        };
        if !same {
            out.differences.push(CellDiff {
                table: id.clone(),
                row,
                column,
                left: l,
                right: r,
            });
        }
    }
}

/// Compares tables and figures matched by id. Numbers match within
/// `max(abs, rel * max(|a|, |b|))`; text must be equal.
pub fn diff_bundles(
    left: (&[Grid], &[Figure]),
    right: (&[Grid], &[Figure]),
    rel: f64,
    abs: f64,
) -> DiffReport {
    let mut out = DiffReport::default();
    let lf: Vec<Grid> = left.1.iter().map(figure_grid).collect();
    let rf: Vec<Grid> = right.1.iter().map(figure_grid).collect();
    for (l, r) in [(left.0, right.0), (&lf[..], &rf[..])] {
        let mut ids: Vec<&str> = l.iter().map(|g| g.id.as_str()).collect();
        for g in r {
            if !ids.contains(&g.id.as_str()) {
                ids.push(&g.id);
            }
        }
        for id in ids {
            diff_grid(
                l.iter().find(|g| g.id == id),
                r.iter().find(|g| g.id == id),
                rel,
                abs,
                &mut out,
            );
        }
    }
    out
}
