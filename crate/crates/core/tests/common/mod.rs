#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use yardcap::demand::ScenarioSource;
use yardcap::fleet::turnover::cohorts;
use yardcap::fleet::{parse_fleet, VesselRecord};
use yardcap::report::{build_bundle, BenchmarkFile, BundleOptions, Provenance, ReportBundle};
use yardcap::scenario::{
    build_windows, cumulative_bounds, lng_turnover, min_lnh3_tankers, run_scenario, transport_gap,
    window_production_bounds, CumulativeState, LngTurnover, MinLnh3, ModelConfig, Portfolio,
    ScenarioConfig, ScenarioInputs, ScenarioName, ScenarioResult,
};
use yardcap::tanker::{max_tankers, TankerSpec};

pub const ENDS: [i32; 5] = [2030, 2035, 2040, 2045, 2050];

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn model() -> ModelConfig {
    ModelConfig::load(data_dir().join("model.toml")).expect("model config")
}

pub fn inputs() -> ScenarioInputs {
    ScenarioInputs::from_demand_dir(data_dir().join("demand")).expect("demand files")
}

pub fn scenario(name: ScenarioName) -> ScenarioConfig {
    ScenarioConfig::load(data_dir().join("scenarios").join(format!("{name}.toml")))
        .expect("scenario")
}

pub fn benchmarks() -> BenchmarkFile {
    BenchmarkFile::load(data_dir().join("reference/benchmarks.toml")).expect("benchmarks")
}

pub fn run(name: ScenarioName) -> ScenarioResult<f64> {
    run_scenario(&scenario(name), &model(), &inputs(), Portfolio::Lh2Only).expect("scenario run")
}

pub fn reference_fleet() -> Vec<VesselRecord> {
    let parsed =
        parse_fleet(data_dir().join("fleet/reference_fleet.csv")).expect("reference fleet");
    assert!(parsed.rejects.is_empty(), "{}", parsed.rejects_report());
    parsed.records
}

pub fn nze_turnover(records: &[VesselRecord]) -> LngTurnover {
    let m = model();
    let lng = cohorts(records, yardcap::tanker::VesselType::Lng);
    let series = inputs()
        .lng
        .remove(&ScenarioSource::Nze)
        .expect("NZE LNG series");
    lng_turnover(
        &lng,
        &series,
        &m.calibration,
        m.lng_base_year,
        2050,
        m.lifetime,
        m.tankers.lng.cargo_capacity,
    )
    .expect("turnover")
}

pub fn bundle(name: ScenarioName, turnover: Option<&LngTurnover>) -> ReportBundle {
    let m = model();
    let cfg = scenario(name);
    let result = run_scenario(&cfg, &m, &inputs(), Portfolio::Lh2Only).expect("scenario run");
    let prov = Provenance::new(&m, &cfg, Portfolio::Lh2Only.label());
    build_bundle(
        result,
        turnover,
        Some(&benchmarks()),
        prov,
        &BundleOptions::default(),
    )
    .expect("bundle")
}

pub fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs()
}

// Engine properties, shared by the proptest suite and the acceptance run.

pub fn specs() -> (TankerSpec<f64>, TankerSpec<f64>, TankerSpec<f64>) {
    (
        TankerSpec::lh2(),
        TankerSpec::lnh3(),
        TankerSpec::lnh3_small(),
    )
}

pub fn deductions_strategy() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![Just(0.0), 0.0..3.0e7f64], 5)
}

fn deduction_map(d: &[f64]) -> BTreeMap<i32, f64> {
    ENDS.iter().copied().zip(d.iter().copied()).collect()
}

fn states(annual: f64, d: &[f64]) -> Vec<CumulativeState<f64>> {
    let (lh2, lnh3, _) = specs();
    let w = build_windows(annual, &ENDS, 5, &deduction_map(d), &lh2, &lnh3).unwrap();
    let b: Vec<_> = w
        .iter()
        .map(|w| window_production_bounds(w, &lh2, &lnh3).unwrap())
        .collect();
    cumulative_bounds(&w, &b)
}

/// More pool never lowers a bound; more deduction never raises one.
pub fn prop_monotone(
    annual: f64,
    extra: f64,
    d: &[f64],
    more: &[f64],
) -> Result<(), TestCaseError> {
    let (lh2, lnh3, _) = specs();
    let base = build_windows(annual, &ENDS, 5, &deduction_map(d), &lh2, &lnh3).unwrap();
    let grown = build_windows(annual + extra, &ENDS, 5, &deduction_map(d), &lh2, &lnh3).unwrap();
    let heavier: Vec<f64> = d.iter().zip(more).map(|(a, b)| a + b).collect();
    let cut = build_windows(annual, &ENDS, 5, &deduction_map(&heavier), &lh2, &lnh3).unwrap();
    for ((b, g), c) in base.iter().zip(&grown).zip(&cut) {
        let bb = window_production_bounds(b, &lh2, &lnh3).unwrap();
        let gb = window_production_bounds(g, &lh2, &lnh3).unwrap();
        let cb = window_production_bounds(c, &lh2, &lnh3).unwrap();
        prop_assert!(gb.max_lh2 >= bb.max_lh2 && gb.max_lnh3 >= bb.max_lnh3);
        prop_assert!(cb.max_lh2 <= bb.max_lh2 && cb.max_lnh3 <= bb.max_lnh3);
    }
    Ok(())
}

/// For the same pool LNH3 carries at least as much as small LNH3, which
/// carries at least as much as LH2.
pub fn prop_dominance(pool: f64) -> Result<(), TestCaseError> {
    let (lh2, lnh3, small) = specs();
    let a = max_tankers(pool, &lh2).unwrap().continuous_lh2eq;
    let b = max_tankers(pool, &small).unwrap().continuous_lh2eq;
    let c = max_tankers(pool, &lnh3).unwrap().continuous_lh2eq;
    prop_assert!(c >= b && b >= a, "{c} {b} {a}");
    Ok(())
}

/// Every portfolio mix lies inside the solution space.
pub fn prop_convex(annual: f64, d: &[f64], f: f64) -> Result<(), TestCaseError> {
    for s in states(annual, d) {
        let p = s.portfolio(f);
        let expect = f * s.upper + (1.0 - f) * s.lower;
        prop_assert!((p - expect).abs() <= 1e-9 * expect.abs().max(1.0));
        prop_assert!(p >= s.lower * (1.0 - 1e-12) && p <= s.upper * (1.0 + 1e-12));
    }
    Ok(())
}

/// Raw pools are annual × years − deduction; pools are their positive part.
pub fn prop_clamping(annual: f64, d: &[f64]) -> Result<(), TestCaseError> {
    let (lh2, lnh3, _) = specs();
    let w = build_windows(annual, &ENDS, 5, &deduction_map(d), &lh2, &lnh3).unwrap();
    for (w, &ded) in w.iter().zip(d) {
        let years = |first: i32| (w.end_year - (w.end_year - 4).max(first) + 1).max(0) as f64;
        let raw2 = annual * years(2028) - ded;
        let raw3 = annual * years(2027) - ded;
        prop_assert_eq!(w.raw_pool_lh2, raw2);
        prop_assert_eq!(w.raw_pool_lnh3, raw3);
        prop_assert_eq!(w.pool_lh2, raw2.max(0.0));
        prop_assert_eq!(w.pool_lnh3, raw3.max(0.0));
    }
    Ok(())
}

fn effort_lh2() -> f64 {
    0.3 * 174_457.0 + 36_087.8
}

fn effort_lnh3() -> f64 {
    126.97 * 160_000f64.powf(0.48)
}

/// Re-simulates fleets with `n` LNH3 carriers and the leftover LH2 pool.
fn resimulated(pool_lh2: f64, pool_lnh3: f64, n: u64) -> Option<f64> {
    let (e2, v2, e3, v3) = (
        effort_lh2(),
        160_000.0,
        effort_lnh3(),
        160_000.0 * 1.18885625,
    );
    let used = n as f64 * e3;
    if used > pool_lnh3 {
        return None;
    }
    Some(n as f64 * v3 + (pool_lh2 - used).max(0.0) / e2 * v2)
}

/// Gap and minimum LNH3 count agree with a brute-force re-simulation.
pub fn prop_min_count_oracle(
    pool_lh2: f64,
    extra_lnh3: f64,
    demand: f64,
) -> Result<(), TestCaseError> {
    let (lh2, lnh3, _) = specs();
    let pool_lnh3 = pool_lh2 + extra_lnh3;
    let s = CumulativeState {
        year: 2030,
        pool_lh2,
        pool_lnh3,
        lower: max_tankers(pool_lh2, &lh2).unwrap().continuous_lh2eq,
        upper: max_tankers(pool_lnh3, &lnh3).unwrap().continuous_lh2eq,
    };
    let lower = pool_lh2 / effort_lh2() * 160_000.0;
    let gap = transport_gap(&s, demand);
    prop_assert!((gap - (demand - lower).max(0.0)).abs() <= 1e-6 * demand.max(1.0));

    let mut oracle = MinLnh3::Infeasible;
    let mut n = 0;
    while let Some(cap) = resimulated(pool_lh2, pool_lnh3, n) {
        if cap >= demand {
            oracle = MinLnh3::Count(n);
            break;
        }
        n += 1;
    }
    prop_assert_eq!(min_lnh3_tankers(&s, demand, &lh2, &lnh3), oracle);
    Ok(())
}

/// lng_first and hydrogen_priority agree on every window before 2046.
pub fn prop_equivalence(base_pool: f64) -> Result<(), TestCaseError> {
    let m = model();
    let inp = inputs();
    let mut a = scenario(ScenarioName::LngFirst);
    let mut b = scenario(ScenarioName::HydrogenPriority);
    a.base_annual_pool = base_pool;
    b.base_annual_pool = base_pool;
    let ra = run_scenario::<f64>(&a, &m, &inp, Portfolio::Lh2Only).unwrap();
    let rb = run_scenario::<f64>(&b, &m, &inp, Portfolio::Lh2Only).unwrap();
    let early = |r: &ScenarioResult<f64>| {
        (
            r.windows
                .iter()
                .filter(|w| w.end_year <= 2045)
                .cloned()
                .collect::<Vec<_>>(),
            r.bounds
                .iter()
                .filter(|w| w.end_year <= 2045)
                .cloned()
                .collect::<Vec<_>>(),
            r.outcomes
                .iter()
                .filter(|w| w.year <= 2045)
                .cloned()
                .collect::<Vec<_>>(),
        )
    };
    prop_assert_eq!(early(&ra), early(&rb));
    let late = |r: &ScenarioResult<f64>| r.window(2050).unwrap().pool_lh2;
    prop_assert!(late(&ra) < late(&rb));
    Ok(())
}
