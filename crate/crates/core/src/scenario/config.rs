//! Scenario and model configuration files.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::demand::{CalibrationFactors, ScenarioSource};
use crate::error::{Error, Result};
use crate::fleet::{AveragingWindow, IdentifyParams};
use crate::scalar::Scalar;
use crate::tanker::{
    cgt_from_capacity_membrane, Carrier, CgtParamTable, Lh2EqFactor, TankerSpec, VesselClassParams,
    VesselType, CONSTRUCTION_YEARS, LH2_EQUIVALENT_LNG_CAPACITY, SMALL_LNH3_CARGO_CAPACITY,
    STANDARD_CARGO_CAPACITY,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioName {
    LngFirst,
    LowerHydrogenDemand,
    HydrogenPriority,
    RepurposeShipyards,
    CrudeOilInclusion,
    ContainerInclusion,
}

impl ScenarioName {
    pub const ALL: [ScenarioName; 6] = [
        ScenarioName::LngFirst,
        ScenarioName::LowerHydrogenDemand,
        ScenarioName::HydrogenPriority,
        ScenarioName::RepurposeShipyards,
        ScenarioName::CrudeOilInclusion,
        ScenarioName::ContainerInclusion,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScenarioName::LngFirst => "lng_first",
            ScenarioName::LowerHydrogenDemand => "lower_hydrogen_demand",
            ScenarioName::HydrogenPriority => "hydrogen_priority",
            ScenarioName::RepurposeShipyards => "repurpose_shipyards",
            ScenarioName::CrudeOilInclusion => "crude_oil_inclusion",
            ScenarioName::ContainerInclusion => "container_inclusion",
        }
    }

    pub fn valid_names() -> String {
        Self::ALL.map(|n| n.as_str()).join(", ")
    }
}

impl fmt::Display for ScenarioName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScenarioName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown scenario `{s}`; valid names: {}",
                    Self::valid_names()
                ))
            })
    }
}

/// A labelled CGT-per-year adjustment of the shipyard pool.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnualAdjustment {
    pub label: String,
    pub annual_cgt: f64,
}

/// A labelled CGT amount charged to particular windows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowDeduction {
    pub label: String,
    /// `(window end year, CGT)` pairs.
    pub schedule: Vec<(i32, f64)>,
}

/// Shipyard effort reserved for replacing LNG carriers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum LngReplacement {
    None,
    /// A fixed number of standard LNG carriers charged to one window.
    Tankers {
        count: u64,
        window_end: i32,
    },
    /// CGT per window supplied directly.
    Schedule {
        schedule: Vec<(i32, f64)>,
    },
    /// Newbuilds derived from the fleet and the LNG demand series.
    FromFleet,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrudeOilBuilds {
    pub per_window_cgt: f64,
    /// First window end year needing crude oil newbuilds.
    pub first_window_end: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub name: ScenarioName,
    #[serde(default)]
    pub description: String,
    /// Source of the hydrogen demand series.
    pub hydrogen_demand: ScenarioSource,
    /// Source of the LNG demand series, used by fleet-based replacement.
    #[serde(default = "default_lng_source")]
    pub lng_demand: ScenarioSource,
    pub base_annual_pool: f64,
    #[serde(default, rename = "pool_addition")]
    pub pool_additions: Vec<AnnualAdjustment>,
    #[serde(default, rename = "annual_deduction")]
    pub annual_deductions: Vec<AnnualAdjustment>,
    #[serde(default, rename = "window_deduction")]
    pub window_deductions: Vec<WindowDeduction>,
    #[serde(default)]
    pub crude_oil: Option<CrudeOilBuilds>,
    pub lng_replacement: LngReplacement,
}

fn default_lng_source() -> ScenarioSource {
    ScenarioSource::Nze
}

impl ScenarioConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ScenarioConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |v: f64| v.is_finite();
        if !(self.base_annual_pool >= 0.0) || !finite(self.base_annual_pool) {
            return Err(Error::Config(format!(
                "{}: base annual pool {} must be non-negative",
                self.name, self.base_annual_pool
            )));
        }
        for a in self.pool_additions.iter().chain(&self.annual_deductions) {
            if !(a.annual_cgt >= 0.0) || !finite(a.annual_cgt) {
                return Err(Error::Config(format!(
                    "{}: adjustment `{}` must be non-negative",
                    self.name, a.label
                )));
            }
        }
        let schedules =
            self.window_deductions
                .iter()
                .map(|d| &d.schedule)
                .chain(match &self.lng_replacement {
                    LngReplacement::Schedule { schedule } => Some(schedule),
                    _ => None,
                });
        for s in schedules {
            if s.iter().any(|&(_, v)| !(v >= 0.0) || !finite(v)) {
                return Err(Error::Config(format!(
                    "{}: window deductions must be non-negative",
                    self.name
                )));
            }
        }
        Ok(())
    }

    /// Net CGT per year available before window-specific deductions.
    pub fn annual_pool(&self) -> f64 {
        self.base_annual_pool
            + self
                .pool_additions
                .iter()
                .map(|a| a.annual_cgt)
                .sum::<f64>()
            - self
                .annual_deductions
                .iter()
                .map(|a| a.annual_cgt)
                .sum::<f64>()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TankerSettings {
    pub cargo_capacity: f64,
    pub first_delivery_year: i32,
    /// LNG carrier size whose hull matches the LH2 tank envelope.
    #[serde(default)]
    pub lng_equivalent_capacity: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TankerTable {
    pub lng: TankerSettings,
    pub lh2: TankerSettings,
    pub lnh3: TankerSettings,
    pub lnh3_small: TankerSettings,
}

impl Default for TankerTable {
    fn default() -> Self {
        Self {
            lng: TankerSettings {
                cargo_capacity: STANDARD_CARGO_CAPACITY,
                first_delivery_year: 2027,
                lng_equivalent_capacity: None,
            },
            lh2: TankerSettings {
                cargo_capacity: STANDARD_CARGO_CAPACITY,
                first_delivery_year: 2028,
                lng_equivalent_capacity: Some(LH2_EQUIVALENT_LNG_CAPACITY),
            },
            lnh3: TankerSettings {
                cargo_capacity: STANDARD_CARGO_CAPACITY,
                first_delivery_year: 2027,
                lng_equivalent_capacity: None,
            },
            lnh3_small: TankerSettings {
                cargo_capacity: SMALL_LNH3_CARGO_CAPACITY,
                first_delivery_year: 2028,
                lng_equivalent_capacity: None,
            },
        }
    }
}

/// Tanker classes used by one run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TankerSet<T> {
    pub lng: TankerSpec<T>,
    pub lh2: TankerSpec<T>,
    pub lnh3: TankerSpec<T>,
    pub lnh3_small: TankerSpec<T>,
}

impl<T: Scalar> Default for TankerSet<T> {
    fn default() -> Self {
        Self {
            lng: TankerSpec::lng(),
            lh2: TankerSpec::lh2(),
            lnh3: TankerSpec::lnh3(),
            lnh3_small: TankerSpec::lnh3_small(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CgtEntry {
    pub vessel_type: VesselType,
    pub a: f64,
    pub b: f64,
}

/// Engine-wide constants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub window_ends: Vec<i32>,
    pub window_length: u32,
    pub lifetime: u32,
    /// Base year of the LNG fleet calibration.
    pub lng_base_year: i32,
    pub lh2_eq_factor: f64,
    pub calibration: CalibrationFactors<f64>,
    pub tankers: TankerTable,
    #[serde(default)]
    pub cgt_params: Vec<CgtEntry>,
    #[serde(default)]
    pub identify: IdentifyParams,
    #[serde(default)]
    pub averaging_window: AveragingWindow,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            window_ends: vec![2030, 2035, 2040, 2045, 2050],
            window_length: 5,
            lifetime: 25,
            lng_base_year: 2025,
            lh2_eq_factor: Lh2EqFactor::<f64>::default().0,
            calibration: CalibrationFactors::default(),
            tankers: TankerTable::default(),
            cgt_params: Vec::new(),
            identify: IdentifyParams::default(),
            averaging_window: AveragingWindow::default(),
        }
    }
}

impl ModelConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let cfg: ModelConfig = toml::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.window_ends.is_empty() || self.window_ends.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config(
                "window ends must be non-empty and increasing".into(),
            ));
        }
        if self.window_length == 0 || self.lifetime == 0 {
            return Err(Error::Config(
                "window length and lifetime must be positive".into(),
            ));
        }
        if self.averaging_window.years() == 0 {
            return Err(Error::Config(format!(
                "averaging window {}..{} is empty",
                self.averaging_window.from, self.averaging_window.to
            )));
        }
        if !(self.lh2_eq_factor > 0.0) {
            return Err(Error::Config(
                "LH2-equivalent factor must be positive".into(),
            ));
        }
        self.calibration.validate()?;
        self.cgt_table()?;
        self.tanker_set::<f64>()?;
        Ok(())
    }

    pub fn cgt_table(&self) -> Result<CgtParamTable<f64>> {
        let mut table = CgtParamTable::default();
        for e in &self.cgt_params {
            table.set(VesselClassParams::new(e.vessel_type, e.a, e.b)?);
        }
        Ok(table)
    }

    pub fn tanker_set<T: Scalar>(&self) -> Result<TankerSet<T>> {
        let t = &self.tankers;
        let factor = Lh2EqFactor(T::lit(self.lh2_eq_factor));
        let mut lng = TankerSpec::lng_with_capacity(T::lit(t.lng.cargo_capacity));
        lng.first_delivery_year = t.lng.first_delivery_year;

        let lh2_hull = t
            .lh2
            .lng_equivalent_capacity
            .unwrap_or(t.lh2.cargo_capacity);
        let lh2 = TankerSpec {
            carrier: Carrier::Lh2,
            cargo_capacity: T::lit(t.lh2.cargo_capacity),
            cgt_effort: cgt_from_capacity_membrane(T::lit(lh2_hull))?,
            lh2eq_per_tanker: T::lit(t.lh2.cargo_capacity),
            first_delivery_year: t.lh2.first_delivery_year,
            construction_years: CONSTRUCTION_YEARS,
        };
        let lnh3 = TankerSpec::ammonia(
            Carrier::Lnh3,
            T::lit(t.lnh3.cargo_capacity),
            t.lnh3.first_delivery_year,
            factor,
        );
        let lnh3_small = TankerSpec::ammonia(
            Carrier::Lnh3Small,
            T::lit(t.lnh3_small.cargo_capacity),
            t.lnh3_small.first_delivery_year,
            factor,
        );
        for s in [lng, lh2, lnh3, lnh3_small] {
            s.validate()?;
        }
        Ok(TankerSet {
            lng,
            lh2,
            lnh3,
            lnh3_small,
        })
    }
}

/// Window deductions of a scenario summed per window end year.
pub fn window_deduction_totals(
    cfg: &ScenarioConfig,
    window_ends: &[i32],
    lng_replacement_cgt: &BTreeMap<i32, f64>,
) -> BTreeMap<i32, f64> {
    let mut totals: BTreeMap<i32, f64> = window_ends.iter().map(|&e| (e, 0.0)).collect();
    let mut add = |end: i32, v: f64| {
        if let Some(t) = totals.get_mut(&end) {
            *t += v;
        }
    };
    for d in &cfg.window_deductions {
        for &(end, v) in &d.schedule {
            add(end, v);
        }
    }
    if let Some(c) = cfg.crude_oil {
        for &end in window_ends {
            if end >= c.first_window_end {
                add(end, c.per_window_cgt);
            }
        }
    }
    for (&end, &v) in lng_replacement_cgt {
        add(end, v);
    }
    totals
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for n in ScenarioName::ALL {
            assert_eq!(n.as_str().parse::<ScenarioName>().unwrap(), n);
        }
        let err = "nope".parse::<ScenarioName>().unwrap_err().to_string();
        assert!(err.contains("lng_first") && err.contains("container_inclusion"));
    }

    #[test]
    fn parse_scenario_file() {
        let cfg = ScenarioConfig::from_toml(
            r#"
            name = "crude_oil_inclusion"
            hydrogen_demand = "nze"
            base_annual_pool = 3993414.0
            crude_oil = { per_window_cgt = 1750000.0, first_window_end = 2040 }
            lng_replacement = { mode = "tankers", count = 171, window_end = 2050 }

            [[pool_addition]]
            label = "crude oil yards"
            annual_cgt = 2120001.0
            "#,
        )
        .unwrap();
        assert_eq!(cfg.annual_pool(), 6_113_415.0);
        let totals = window_deduction_totals(&cfg, &[2030, 2035, 2040], &BTreeMap::new());
        assert_eq!(totals[&2035], 0.0);
        assert_eq!(totals[&2040], 1.75e6);
    }

    #[test]
    fn negative_adjustment_rejected() {
        let bad = r#"
            name = "lng_first"
            hydrogen_demand = "nze"
            base_annual_pool = -1.0
            lng_replacement = { mode = "none" }
        "#;
        assert!(matches!(
            ScenarioConfig::from_toml(bad),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn model_defaults_build_reference_specs() {
        let m = ModelConfig::default();
        m.validate().unwrap();
        let set = m.tanker_set::<f64>().unwrap();
        assert_eq!(set, TankerSet::default());
    }
}
