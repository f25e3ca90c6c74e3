//! Per-scenario report bundles and the cross-scenario summary.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::benchmark::{check_benchmarks, BenchmarkCheck, BenchmarkFile};
use super::{Cell, Figure, Grid};
use crate::error::{Error, Result};
use crate::scenario::{
    LngTurnover, MinLnh3, ModelConfig, ScenarioConfig, ScenarioName, ScenarioResult,
    ShortageInterval,
};
use crate::tanker::{max_tankers, TankerSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputHash {
    pub role: String,
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub engine: String,
    pub version: String,
    pub inputs: Vec<InputHash>,
    pub model: ModelConfig,
    pub scenario: ScenarioConfig,
    pub portfolio: String,
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn new(model: &ModelConfig, scenario: &ScenarioConfig, portfolio: String) -> Self {
        Self {
            engine: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            inputs: Vec::new(),
            model: model.clone(),
            scenario: scenario.clone(),
            portfolio,
            seed: None,
        }
    }
}

/// Hex SHA-256 of a file's bytes.
pub fn hash_file(path: impl AsRef<Path>) -> Result<String> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(Sha256::digest(&bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect())
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BundleOptions {
    pub small_lnh3: bool,
    /// Table and figure ids written as CSV; everything when `None`.
    pub emit: Option<Vec<String>>,
}

impl BundleOptions {
    fn emits(&self, id: &str) -> bool {
        self.emit
            .as_ref()
            .is_none_or(|ids| ids.iter().any(|i| i == id))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportBundle {
    pub scenario: ScenarioName,
    pub tables: Vec<Grid>,
    pub figures: Vec<Figure>,
    pub checks: Vec<BenchmarkCheck>,
    /// Published cells the engine does not reproduce.
    pub discrepancies: Vec<BenchmarkCheck>,
    pub result: ScenarioResult<f64>,
    pub provenance: Provenance,
}

impl ReportBundle {
    pub fn table(&self, id: &str) -> Option<&Grid> {
        self.tables.iter().find(|t| t.id == id)
    }

    pub fn figure(&self, id: &str) -> Option<&Figure> {
        self.figures.iter().find(|f| f.id == id)
    }
}

fn year_columns(years: impl IntoIterator<Item = i32>) -> Vec<String> {
    years.into_iter().map(|y| y.to_string()).collect()
}

fn min_cell(m: MinLnh3) -> Cell {
    match m {
        MinLnh3::Count(n) => Cell::from(n),
        MinLnh3::Infeasible => Cell::Text("infeasible".into()),
    }
}

fn effort_table(r: &ScenarioResult<f64>, base_pool: f64, small: bool) -> Result<Grid> {
    let mut g = Grid::new(
        "t5",
        "Effort per tanker and single-class annual output",
        vec![
            "cgt".into(),
            "tankers_per_year".into(),
            "cargo_m3_per_year".into(),
            "lh2eq_m3_per_year".into(),
        ],
    );
    let t = &r.tankers;
    let mut specs: Vec<&TankerSpec<f64>> = vec![&t.lng, &t.lh2, &t.lnh3];
    if small {
        specs.push(&t.lnh3_small);
    }
    for s in specs {
        let b = max_tankers(base_pool, s)?;
        g.push(
            s.carrier.as_str(),
            vec![
                s.cgt_effort.into(),
                b.count.into(),
                b.cargo_total.into(),
                b.lh2eq_total.into(),
            ],
        );
    }
    Ok(g)
}

fn window_table(r: &ScenarioResult<f64>) -> Grid {
    let mut g = Grid::new(
        "windows",
        "Shipyard capacity and tanker output per window",
        year_columns(r.windows.iter().map(|w| w.end_year)),
    );
    let w = &r.windows;
    let b = &r.bounds;
    g.push("deduction", w.iter().map(|w| w.deduction.into()).collect());
    g.push(
        "pool_lh2",
        w.iter().map(|w| w.raw_pool_lh2.into()).collect(),
    );
    g.push(
        "pool_lnh3",
        w.iter().map(|w| w.raw_pool_lnh3.into()).collect(),
    );
    g.push(
        "available_lh2",
        w.iter().map(|w| w.pool_lh2.into()).collect(),
    );
    g.push(
        "available_lnh3",
        w.iter().map(|w| w.pool_lnh3.into()).collect(),
    );
    g.push("max_lh2", b.iter().map(|b| b.max_lh2.into()).collect());
    g.push("max_lnh3", b.iter().map(|b| b.max_lnh3.into()).collect());
    g.push(
        "count_lh2",
        b.iter().map(|b| b.max_lh2_count.into()).collect(),
    );
    g.push(
        "count_lnh3",
        b.iter().map(|b| b.max_lnh3_count.into()).collect(),
    );
    g
}

fn solution_table(r: &ScenarioResult<f64>) -> Grid {
    let o = &r.outcomes;
    let mut g = Grid::new(
        "solution_space",
        "Cumulative solution space, demand, gap and minimum LNH3 carriers",
        year_columns(o.iter().map(|o| o.year)),
    );
    g.push("demand", o.iter().map(|o| o.demand.into()).collect());
    g.push("lower", o.iter().map(|o| o.lower.into()).collect());
    g.push("upper", o.iter().map(|o| o.upper.into()).collect());
    g.push("gap", o.iter().map(|o| o.gap.into()).collect());
    g.push("min_lnh3", o.iter().map(|o| min_cell(o.min_lnh3)).collect());
    g.push(
        "min_lnh3_two_pool",
        o.iter().map(|o| min_cell(o.min_lnh3_two_pool)).collect(),
    );
    g
}

fn interval_cells(iv: &Option<ShortageInterval<f64>>) -> Vec<Cell> {
    match iv {
        None => vec![Cell::Text("none".into()); 4],
        Some(iv) => vec![
            iv.start.into(),
            iv.resolve.map_or(Cell::Text("never".into()), Cell::Num),
            Cell::Num(f64::from(iv.start_year)),
            iv.resolve_year
                .map_or(Cell::Text("never".into()), |y| Cell::Num(f64::from(y))),
        ],
    }
}

fn bottleneck_columns() -> Vec<String> {
    ["start", "resolve", "start_year", "resolve_year"]
        .map(String::from)
        .to_vec()
}

fn bottleneck_table(r: &ScenarioResult<f64>) -> Grid {
    let mut g = Grid::new("bottleneck", "Shortage interval", bottleneck_columns());
    g.push("lh2_only", interval_cells(&r.bottleneck_all_lh2));
    g.push(r.portfolio.label(), interval_cells(&r.bottleneck));
    g
}

fn small_table(r: &ScenarioResult<f64>) -> Grid {
    let w = &r.small_lnh3.windows;
    let mut g = Grid::new(
        "small_lnh3",
        "Upper bound with small LNH3 carriers",
        year_columns(w.iter().map(|w| w.end_year)),
    );
    g.push("pool", w.iter().map(|w| w.pool.into()).collect());
    g.push(
        "max_capacity",
        w.iter().map(|w| w.max_capacity.into()).collect(),
    );
    g.push("max_count", w.iter().map(|w| w.max_count.into()).collect());
    g.push(
        "cumulative_upper",
        w.iter().map(|w| w.cumulative_upper.into()).collect(),
    );
    g.push("demand", w.iter().map(|w| w.demand.into()).collect());
    g.push(
        "bottleneck",
        w.iter()
            .map(|w| Cell::Num(if w.bottleneck { 1.0 } else { 0.0 }))
            .collect(),
    );
    g
}

/// Linear interpolation of `(year, value)` knots at `year`.
fn lerp_at(knots: &[(i32, f64)], year: i32) -> Option<f64> {
    let i = knots.iter().position(|&(y, _)| y >= year)?;
    let (y1, v1) = knots[i];
    if y1 == year {
        return Some(v1);
    }
    let (y0, v0) = *knots.get(i.checked_sub(1)?)?;
    Some(v0 + (v1 - v0) * f64::from(year - y0) / f64::from(y1 - y0))
}

fn push_annual(fig: &mut Figure, label: &str, knots: &[(i32, f64)]) {
    let (Some(&(a, _)), Some(&(b, _))) = (knots.first(), knots.last()) else {
        return;
    };
    for y in a..=b {
        if let Some(v) = lerp_at(knots, y) {
            fig.push(label, f64::from(y), v);
        }
    }
}

/// Annual solution-space series of one scenario, labels prefixed by `prefix`.
fn push_solution_space(fig: &mut Figure, r: &ScenarioResult<f64>, prefix: &str) {
    let f = r.portfolio.lnh3_share();
    let o = &r.outcomes;
    let knots = |g: &dyn Fn(&crate::scenario::YearOutcome<f64>) -> f64| -> Vec<(i32, f64)> {
        o.iter().map(|o| (o.year, g(o))).collect()
    };
    let demand = knots(&|o| o.demand);
    let lower = knots(&|o| o.lower);
    let upper = knots(&|o| o.upper);
    let portfolio = knots(&|o| f * o.upper + (1.0 - f) * o.lower);
    let shortage: Vec<(i32, f64)> = demand
        .iter()
        .zip(&portfolio)
        .map(|(&(y, d), &(_, c))| (y, (d - c).max(0.0)))
        .collect();
    push_annual(fig, &format!("{prefix}demand"), &demand);
    push_annual(fig, &format!("{prefix}lower"), &lower);
    push_annual(fig, &format!("{prefix}upper"), &upper);
    push_annual(fig, &format!("{prefix}portfolio"), &portfolio);
    push_annual(fig, &format!("{prefix}shortage"), &shortage);
}

fn push_comparison(fig: &mut Figure, r: &ScenarioResult<f64>, prefix: &str, small: bool) {
    for (o, s) in r.outcomes.iter().zip(&r.small_lnh3.windows).take(2) {
        let y = f64::from(o.year);
        fig.push(format!("{prefix}demand"), y, o.demand);
        fig.push(format!("{prefix}lower"), y, o.lower);
        fig.push(format!("{prefix}upper"), y, o.upper);
        if small {
            fig.push(format!("{prefix}upper_small_lnh3"), y, s.cumulative_upper);
        }
    }
}

fn turnover_figure(t: &LngTurnover) -> Figure {
    let mut fig = Figure::new("fig7", "LNG fleet capacity against LNG transport demand");
    let added = t.schedule.as_cohorts();
    for (&y, &d) in &t.demand {
        let yf = f64::from(y);
        let surviving = t.surviving[&y];
        let new: f64 = added
            .iter()
            .filter(|c| c.build_year <= y)
            .map(|c| c.capacity)
            .sum();
        fig.push("demand", yf, d);
        fig.push("surviving_fleet", yf, surviving);
        fig.push("fleet_with_newbuilds", yf, surviving + new);
        fig.push(
            "newbuilds",
            yf,
            t.schedule.by_year.get(&y).copied().unwrap_or(0) as f64,
        );
    }
    fig
}

/// Assembles the tables and figures of one scenario run.
pub fn build_bundle(
    result: ScenarioResult<f64>,
    turnover: Option<&LngTurnover>,
    benchmarks: Option<&BenchmarkFile>,
    provenance: Provenance,
    opts: &BundleOptions,
) -> Result<ReportBundle> {
    let mut tables = vec![
        effort_table(
            &result,
            provenance.scenario.base_annual_pool,
            opts.small_lnh3,
        )?,
        window_table(&result),
        solution_table(&result),
        bottleneck_table(&result),
    ];
    if opts.small_lnh3 {
        tables.push(small_table(&result));
    }
    let mut figures = Vec::new();
    if let Some(t) = turnover.or(result.lng_turnover.as_ref()) {
        figures.push(turnover_figure(t));
    }
    let mut fig8 = Figure::new("fig8", "Hydrogen transport capacity solution space");
    push_solution_space(&mut fig8, &result, "");
    figures.push(fig8);
    let mut fig10 = Figure::new("fig10", "Transport capacity in the first two windows");
    push_comparison(&mut fig10, &result, "", opts.small_lnh3);
    figures.push(fig10);

    let checks = match benchmarks {
        Some(b) => check_benchmarks(
            b.for_scenario(result.scenario.as_str()),
            &tables,
            &b.tolerance,
        ),
        None => Vec::new(),
    };
    let discrepancies = checks.iter().filter(|c| !c.pass).cloned().collect();
    Ok(ReportBundle {
        scenario: result.scenario,
        tables,
        figures,
        checks,
        discrepancies,
        result,
        provenance,
    })
}

fn write_csvs(dir: &Path, tables: &[Grid], figures: &[Figure], opts: &BundleOptions) -> Result<()> {
    for (sub, is_empty) in [
        ("tables", tables.is_empty()),
        ("figures", figures.is_empty()),
    ] {
        if !is_empty {
            let p = dir.join(sub);
            fs::create_dir_all(&p).map_err(|e| Error::io(&p, e))?;
        }
    }
    for t in tables.iter().filter(|t| opts.emits(&t.id)) {
        let p = dir.join("tables").join(format!("{}.csv", t.id));
        t.write_csv(fs::File::create(&p).map_err(|e| Error::io(&p, e))?)?;
    }
    for f in figures.iter().filter(|f| opts.emits(&f.id)) {
        let p = dir.join("figures").join(format!("{}.csv", f.id));
        f.write_csv(fs::File::create(&p).map_err(|e| Error::io(&p, e))?)?;
    }
    Ok(())
}

/// Pretty JSON with a trailing newline.
pub fn write_json<S: Serialize>(path: &Path, value: &S) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Writes `bundle.json` plus CSV tables and figures under `dir`.
pub fn write_bundle(bundle: &ReportBundle, dir: &Path, opts: &BundleOptions) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    write_csvs(dir, &bundle.tables, &bundle.figures, opts)?;
    let p = dir.join("bundle.json");
    write_json(&p, bundle)?;
    Ok(p)
}

pub fn read_bundle(path: impl AsRef<Path>) -> Result<ReportBundle> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

/// Cross-scenario tables of a batch run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryBundle {
    pub scenarios: Vec<ScenarioName>,
    pub tables: Vec<Grid>,
    pub figures: Vec<Figure>,
    pub discrepancies: Vec<BenchmarkCheck>,
}

impl SummaryBundle {
    pub fn table(&self, id: &str) -> Option<&Grid> {
        self.tables.iter().find(|t| t.id == id)
    }

    pub fn write(&self, dir: &Path, opts: &BundleOptions) -> Result<PathBuf> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        write_csvs(dir, &self.tables, &self.figures, opts)?;
        let p = dir.join("summary.json");
        write_json(&p, self)?;
        Ok(p)
    }
}

/// Minimum LNH3 counts and gaps in the first two windows, demand per window
/// and shortage intervals for every bundle.
pub fn summary_bundle(bundles: &[ReportBundle], small_lnh3: bool) -> SummaryBundle {
    let first_two: Vec<i32> = bundles
        .first()
        .map(|b| b.result.outcomes.iter().take(2).map(|o| o.year).collect())
        .unwrap_or_default();
    let mut cols: Vec<String> = first_two.iter().map(|y| format!("min_lnh3_{y}")).collect();
    cols.extend(first_two.iter().map(|y| format!("gap_{y}")));
    let mut t7 = Grid::new("t7", "Minimum LNH3 carriers and all-LH2 gap", cols);
    let ends: Vec<i32> = bundles
        .first()
        .map(|b| b.result.outcomes.iter().map(|o| o.year).collect())
        .unwrap_or_default();
    let mut b1 = Grid::new(
        "b1",
        "Hydrogen transport capacity demand",
        year_columns(ends),
    );
    let mut bn = Grid::new(
        "bottleneck",
        "All-LH2 shortage interval",
        bottleneck_columns(),
    );
    let mut fig9 = Figure::new("fig9", "Solution space per scenario");
    let mut fig10 = Figure::new("fig10", "Transport capacity in the first two windows");
    for b in bundles {
        let r = &b.result;
        let name = r.scenario.as_str();
        let o = &r.outcomes[..first_two.len().min(r.outcomes.len())];
        let mut cells: Vec<Cell> = o.iter().map(|o| min_cell(o.min_lnh3)).collect();
        cells.extend(o.iter().map(|o| Cell::Num(o.gap)));
        t7.push(name, cells);
        b1.push(name, r.outcomes.iter().map(|o| o.demand.into()).collect());
        bn.push(name, interval_cells(&r.bottleneck_all_lh2));
        push_solution_space(&mut fig9, r, &format!("{name}/"));
        push_comparison(&mut fig10, r, &format!("{name}/"), small_lnh3);
    }
    SummaryBundle {
        scenarios: bundles.iter().map(|b| b.scenario).collect(),
        tables: vec![t7, b1, bn],
        figures: vec![fig9, fig10],
        discrepancies: bundles
            .iter()
            .flat_map(|b| b.discrepancies.iter().cloned())
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lerp() {
        let k = [(2030, 10.0), (2035, 20.0), (2040, 0.0)];
        assert_eq!(lerp_at(&k, 2030), Some(10.0));
        assert_eq!(lerp_at(&k, 2032), Some(14.0));
        assert_eq!(lerp_at(&k, 2039), Some(4.0));
        assert_eq!(lerp_at(&k, 2029), None);
        assert_eq!(lerp_at(&k, 2041), None);
    }
}
