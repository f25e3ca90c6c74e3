//! Scenario orchestration.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::analysis::{
    bottleneck_interval, cumulative_bounds, min_lnh3_tankers, min_lnh3_two_pool,
    small_lnh3_variant, transport_gap, MinLnh3, Portfolio, ShortageInterval, SmallLnh3Variant,
};
use super::config::{
    window_deduction_totals, LngReplacement, ModelConfig, ScenarioConfig, ScenarioName, TankerSet,
};
use super::windows::{build_windows, window_production_bounds, CapacityWindow, WindowBounds};
use crate::demand::{
    hydrogen_capacity_demand, interpolate, lng_capacity_demand, CalibrationFactors, Commodity,
    DemandFile, DemandSeries, ScenarioSource,
};
use crate::error::{Error, Result};
use crate::fleet::turnover::{required_newbuilds, surviving_capacity, Cohort, NewbuildSchedule};
use crate::scalar::Scalar;

/// Series a scenario run draws on.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScenarioInputs {
    /// Hydrogen demand per source, Mt per year.
    pub hydrogen: BTreeMap<ScenarioSource, DemandSeries<f64>>,
    /// LNG demand per source, bcm per year.
    pub lng: BTreeMap<ScenarioSource, DemandSeries<f64>>,
    /// Existing LNG carriers, needed for fleet-based replacement.
    pub lng_fleet: Option<Vec<Cohort>>,
}

impl ScenarioInputs {
    /// Hydrogen and LNG series of every demand file in `dir`.
    pub fn from_demand_dir(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(|e| Error::io(dir, e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "toml"))
            .collect();
        paths.sort();
        let mut inputs = Self::default();
        for p in paths {
            inputs.add_file(&DemandFile::load(&p)?);
        }
        Ok(inputs)
    }

    pub fn add_file(&mut self, file: &DemandFile) {
        for (commodity, map) in [
            (Commodity::HydrogenMt, &mut self.hydrogen),
            (Commodity::LngBcm, &mut self.lng),
        ] {
            if let Ok(s) = file.get(commodity) {
                map.insert(file.source, s);
            }
        }
    }
}

/// Solution space and derived figures at one window end year.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct YearOutcome<T> {
    pub year: i32,
    /// Required hydrogen fleet capacity, m³ LH2-equivalent.
    pub demand: T,
    pub pool_lh2: T,
    pub pool_lnh3: T,
    pub lower: T,
    pub upper: T,
    pub gap: T,
    pub min_lnh3: MinLnh3,
    pub min_lnh3_two_pool: MinLnh3,
}

/// LNG fleet ageing against LNG demand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LngTurnover {
    pub base_year: i32,
    pub base_fleet: f64,
    /// Fleet m³ per bcm/yr.
    pub fleet_factor: f64,
    pub demand: BTreeMap<i32, f64>,
    pub surviving: BTreeMap<i32, f64>,
    pub schedule: NewbuildSchedule,
}

impl LngTurnover {
    /// CGT of the scheduled newbuilds per window.
    pub fn window_cgt(&self, window_ends: &[i32], cgt_per_tanker: f64) -> BTreeMap<i32, f64> {
        self.schedule
            .per_window(window_ends)
            .into_iter()
            .map(|(end, n)| (end, n as f64 * cgt_per_tanker))
            .collect()
    }
}

/// Newbuilds keeping the LNG fleet at the demand calibrated on the base-year
/// fleet, through `last_year`.
pub fn lng_turnover(
    fleet: &[Cohort],
    lng_bcm: &DemandSeries<f64>,
    factors: &CalibrationFactors<f64>,
    base_year: i32,
    last_year: i32,
    lifetime: u32,
    vessel_capacity: f64,
) -> Result<LngTurnover> {
    let base_fleet = surviving_capacity(fleet, base_year, lifetime);
    let (cap, factor) = lng_capacity_demand(lng_bcm, factors, base_year, base_fleet)?;
    let demand: BTreeMap<i32, f64> = (base_year..=last_year)
        .map(|y| Ok((y, interpolate(&cap, f64::from(y))?)))
        .collect::<Result<_>>()?;
    let surviving = demand
        .keys()
        .map(|&y| (y, surviving_capacity(fleet, y, lifetime)))
        .collect();
    let schedule = required_newbuilds(fleet, &demand, lifetime, vessel_capacity)?;
    Ok(LngTurnover {
        base_year,
        base_fleet,
        fleet_factor: factor,
        demand,
        surviving,
        schedule,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioResult<T> {
    pub scenario: ScenarioName,
    pub hydrogen_demand: ScenarioSource,
    /// Net CGT per year before window deductions.
    pub annual_pool: T,
    pub tankers: TankerSet<T>,
    /// CGT reserved for LNG carriers per window end.
    pub lng_replacement_cgt: BTreeMap<i32, T>,
    pub lng_turnover: Option<LngTurnover>,
    pub windows: Vec<CapacityWindow<T>>,
    pub bounds: Vec<WindowBounds<T>>,
    pub outcomes: Vec<YearOutcome<T>>,
    pub portfolio: Portfolio,
    pub bottleneck: Option<ShortageInterval<T>>,
    pub bottleneck_all_lh2: Option<ShortageInterval<T>>,
    pub small_lnh3: SmallLnh3Variant<T>,
}

impl<T: Scalar> ScenarioResult<T> {
    pub fn outcome(&self, year: i32) -> Option<&YearOutcome<T>> {
        self.outcomes.iter().find(|o| o.year == year)
    }

    pub fn window(&self, end_year: i32) -> Option<&CapacityWindow<T>> {
        self.windows.iter().find(|w| w.end_year == end_year)
    }

    pub fn bounds_at(&self, end_year: i32) -> Option<&WindowBounds<T>> {
        self.bounds.iter().find(|b| b.end_year == end_year)
    }
}

fn series_as<T: Scalar>(s: &DemandSeries<f64>) -> DemandSeries<T> {
    DemandSeries {
        commodity: s.commodity,
        source: s.source,
        unit: s.unit.clone(),
        knots: s.knots.iter().map(|&(y, v)| (y, T::lit(v))).collect(),
    }
}

fn factors_as<T: Scalar>(f: &CalibrationFactors<f64>) -> CalibrationFactors<T> {
    CalibrationFactors {
        maritime_share: T::lit(f.maritime_share),
        fleet_factor_h2: T::lit(f.fleet_factor_h2),
        fleet_factor_lng: f.fleet_factor_lng.map(T::lit),
        gdp_growth: T::lit(f.gdp_growth),
    }
}

/// Runs one scenario end to end.
pub fn run_scenario<T: Scalar>(
    cfg: &ScenarioConfig,
    model: &ModelConfig,
    inputs: &ScenarioInputs,
    portfolio: Portfolio,
) -> Result<ScenarioResult<T>> {
    cfg.validate()?;
    let portfolio = portfolio.validate()?;
    let tankers = model.tanker_set::<T>()?;
    let ends = &model.window_ends;

    let mut lng_turnover_out = None;
    let lng_cgt: BTreeMap<i32, f64> = match &cfg.lng_replacement {
        LngReplacement::None => BTreeMap::new(),
        LngReplacement::Tankers { count, window_end } => {
            BTreeMap::from([(*window_end, *count as f64 * tankers.lng.cgt_effort.as_f64())])
        }
        LngReplacement::Schedule { schedule } => schedule.iter().copied().collect(),
        LngReplacement::FromFleet => {
            let fleet = inputs.lng_fleet.as_ref().ok_or_else(|| {
                Error::Config(format!(
                    "{}: fleet-based LNG replacement needs a fleet",
                    cfg.name
                ))
            })?;
            let lng = inputs.lng.get(&cfg.lng_demand).ok_or_else(|| {
                Error::Config(format!(
                    "{}: no {} LNG demand series",
                    cfg.name, cfg.lng_demand
                ))
            })?;
            let t = lng_turnover(
                fleet,
                lng,
                &model.calibration,
                model.lng_base_year,
                *ends.last().expect("validated window ends"),
                model.lifetime,
                tankers.lng.cargo_capacity.as_f64(),
            )?;
            let cgt = t.window_cgt(ends, tankers.lng.cgt_effort.as_f64());
            lng_turnover_out = Some(t);
            cgt
        }
    };

    let deductions: BTreeMap<i32, T> = window_deduction_totals(cfg, ends, &lng_cgt)
        .into_iter()
        .map(|(e, v)| (e, T::lit(v)))
        .collect();
    let annual_pool = T::lit(cfg.annual_pool());
    let windows = build_windows(
        annual_pool,
        ends,
        model.window_length,
        &deductions,
        &tankers.lh2,
        &tankers.lnh3,
    )?;
    let bounds = windows
        .iter()
        .map(|w| window_production_bounds(w, &tankers.lh2, &tankers.lnh3))
        .collect::<Result<Vec<_>>>()?;
    let states = cumulative_bounds(&windows, &bounds);

    let h2 = inputs.hydrogen.get(&cfg.hydrogen_demand).ok_or_else(|| {
        Error::Config(format!(
            "{}: no {} hydrogen demand series",
            cfg.name, cfg.hydrogen_demand
        ))
    })?;
    let h2_cap = hydrogen_capacity_demand(&series_as::<T>(h2), &factors_as(&model.calibration))?;
    let demand: Vec<T> = ends
        .iter()
        .map(|&y| {
            interpolate(&h2_cap, T::lit(f64::from(y))).map_err(|e| {
                Error::Config(format!("{}: hydrogen demand unavailable: {e}", cfg.name))
            })
        })
        .collect::<Result<_>>()?;

    let outcomes = states
        .iter()
        .zip(&demand)
        .map(|(s, &d)| YearOutcome {
            year: s.year,
            demand: d,
            pool_lh2: s.pool_lh2,
            pool_lnh3: s.pool_lnh3,
            lower: s.lower,
            upper: s.upper,
            gap: transport_gap(s, d),
            min_lnh3: min_lnh3_tankers(s, d, &tankers.lh2, &tankers.lnh3),
            min_lnh3_two_pool: min_lnh3_two_pool(s, d, &tankers.lh2, &tankers.lnh3),
        })
        .collect();

    Ok(ScenarioResult {
        scenario: cfg.name,
        hydrogen_demand: cfg.hydrogen_demand,
        annual_pool,
        tankers,
        lng_replacement_cgt: lng_cgt.into_iter().map(|(e, v)| (e, T::lit(v))).collect(),
        lng_turnover: lng_turnover_out,
        bottleneck: bottleneck_interval(&states, &demand, portfolio)?,
        bottleneck_all_lh2: bottleneck_interval(&states, &demand, Portfolio::Lh2Only)?,
        small_lnh3: small_lnh3_variant(&windows, &demand, &tankers.lnh3_small)?,
        windows,
        bounds,
        outcomes,
        portfolio,
    })
}
