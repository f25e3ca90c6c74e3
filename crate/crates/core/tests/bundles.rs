mod common;

use std::fs;
use std::path::Path;

use common::*;
use yardcap::report::{
    diff_bundles, read_bundle, summary_bundle, write_bundle, BundleOptions, Cell, ReportBundle,
};
use yardcap::scenario::ScenarioName;

fn all_bundles() -> Vec<ReportBundle> {
    let t = nze_turnover(&reference_fleet());
    ScenarioName::ALL
        .iter()
        .map(|&n| bundle(n, Some(&t)))
        .collect()
}

fn write_all(dir: &Path) {
    let bundles = all_bundles();
    let opts = BundleOptions::default();
    for b in &bundles {
        write_bundle(b, &dir.join(b.scenario.as_str()), &opts).unwrap();
    }
    summary_bundle(&bundles, false)
        .write(&dir.join("summary"), &opts)
        .unwrap();
}

fn files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                let rel = p.strip_prefix(dir).unwrap().display().to_string();
                out.push((rel, fs::read(&p).unwrap()));
            }
        }
    }
    out.sort();
    out
}

#[test]
fn json_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    for b in all_bundles() {
        let p = write_bundle(&b, tmp.path(), &BundleOptions::default()).unwrap();
        let back = read_bundle(&p).unwrap();
        assert_eq!(back.result, b.result);
        assert_eq!(back, b);
    }
}

#[test]
fn identical_runs_write_identical_bytes() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    write_all(a.path());
    write_all(b.path());
    let fa = files(a.path());
    assert!(fa.len() > 6 * 4);
    assert_eq!(fa, files(b.path()));
}

#[test]
fn emit_filters_csv_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let b = bundle(ScenarioName::LngFirst, None);
    let opts = BundleOptions {
        small_lnh3: false,
        emit: Some(vec!["fig8".into()]),
    };
    write_bundle(&b, tmp.path(), &opts).unwrap();
    let names: Vec<String> = files(tmp.path()).into_iter().map(|(n, _)| n).collect();
    assert_eq!(names, ["bundle.json", "figures/fig8.csv"]);
}

#[test]
fn shortage_band_in_solution_space_series() {
    let b = bundle(ScenarioName::LngFirst, None);
    let f = b.figure("fig8").unwrap();
    let short: Vec<f64> = f
        .series("shortage")
        .into_iter()
        .filter(|&(_, v)| v > 0.0)
        .map(|(y, _)| y)
        .collect();
    assert_eq!(short.first(), Some(&2030.0));
    let last = *short.last().unwrap();
    assert!((2038.0..=2040.0).contains(&last), "{last}");
}

#[test]
fn table_cells_come_from_the_result() {
    let b = bundle(ScenarioName::LngFirst, None);
    let r = &b.result;
    let w = b.table("windows").unwrap();
    for win in &r.windows {
        let col = win.end_year.to_string();
        assert_eq!(
            w.get("pool_lh2", &col).and_then(Cell::as_f64),
            Some(win.raw_pool_lh2)
        );
        assert_eq!(
            w.get("pool_lnh3", &col).and_then(Cell::as_f64),
            Some(win.raw_pool_lnh3)
        );
    }
    let s = b.table("solution_space").unwrap();
    for o in &r.outcomes {
        let col = o.year.to_string();
        assert_eq!(s.get("gap", &col).and_then(Cell::as_f64), Some(o.gap));
        assert_eq!(s.get("demand", &col).and_then(Cell::as_f64), Some(o.demand));
    }
    let t5 = b.table("t5").unwrap();
    for (row, n) in [("lng", 47.0), ("lh2", 45.0), ("lnh3", 99.0)] {
        assert_eq!(
            t5.get(row, "tankers_per_year").and_then(Cell::as_f64),
            Some(n)
        );
    }
}

#[test]
fn infeasible_counts_are_text() {
    let b = bundle(ScenarioName::ContainerInclusion, None);
    let s = b.table("solution_space").unwrap();
    assert_eq!(
        s.get("min_lnh3", "2030"),
        Some(&Cell::Text("infeasible".into()))
    );
}

#[test]
fn diff_of_equal_bundles_is_clean_and_changes_are_found() {
    let a = bundle(ScenarioName::LngFirst, None);
    let mut b = a.clone();
    let clean = diff_bundles((&a.tables, &a.figures), (&b.tables, &b.figures), 0.0, 0.0);
    assert!(clean.is_clean());
    assert!(clean.compared > 50);

    let t = b
        .tables
        .iter_mut()
        .find(|t| t.id == "solution_space")
        .unwrap();
    let row = t.rows.iter_mut().find(|r| r.label == "gap").unwrap();
    row.cells[0] = Cell::Num(row.cells[0].as_f64().unwrap() * 1.01);
    let d = diff_bundles((&a.tables, &a.figures), (&b.tables, &b.figures), 0.0, 0.0);
    assert_eq!(d.differences.len(), 1);
    assert_eq!(d.differences[0].row, "gap");
    let loose = diff_bundles((&a.tables, &a.figures), (&b.tables, &b.figures), 0.02, 0.0);
    assert!(loose.is_clean());
}

#[test]
fn summary_covers_every_scenario() {
    let bundles = all_bundles();
    let s = summary_bundle(&bundles, false);
    assert_eq!(s.scenarios.len(), 6);
    let t7 = s.table("t7").unwrap();
    assert_eq!(t7.rows.len(), 6);
    assert_eq!(
        t7.get("lng_first", "min_lnh3_2030").and_then(Cell::as_f64),
        Some(255.0)
    );
}
