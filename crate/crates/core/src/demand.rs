//! Demand trajectories and their conversion into required fleet capacity.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Commodity {
    /// Hydrogen demand, Mt per year.
    HydrogenMt,
    /// LNG demand, bcm per year.
    LngBcm,
    CrudeOil,
    ContainerM3,
    /// Required fleet cargo capacity, m³ (LH2-equivalent for hydrogen).
    FleetCapacity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioSource {
    Nze,
    Aps,
    GdpBaseline,
    Custom,
}

impl fmt::Display for ScenarioSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScenarioSource::Nze => "nze",
            ScenarioSource::Aps => "aps",
            ScenarioSource::GdpBaseline => "gdp_baseline",
            ScenarioSource::Custom => "custom",
        })
    }
}

/// Year-indexed series, linear between knots and undefined outside them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemandSeries<T> {
    pub commodity: Commodity,
    pub source: ScenarioSource,
    #[serde(default)]
    pub unit: String,
    pub knots: Vec<(i32, T)>,
}

impl<T: Scalar> DemandSeries<T> {
    pub fn new(
        commodity: Commodity,
        source: ScenarioSource,
        unit: impl Into<String>,
        knots: Vec<(i32, T)>,
    ) -> Result<Self> {
        let s = Self {
            commodity,
            source,
            unit: unit.into(),
            knots,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.knots.is_empty() {
            return Err(Error::Config(format!(
                "{:?} series has no knots",
                self.commodity
            )));
        }
        if let Some(w) = self.knots.windows(2).find(|w| w[1].0 <= w[0].0) {
            return Err(Error::Config(format!(
                "{:?} series years not strictly increasing at {} -> {}",
                self.commodity, w[0].0, w[1].0
            )));
        }
        if let Some(&(y, v)) = self
            .knots
            .iter()
            .find(|(_, v)| !(*v >= T::zero()) || !v.is_finite())
        {
            return Err(Error::Config(format!(
                "{:?} series value {v} at {y} must be finite and non-negative",
                self.commodity
            )));
        }
        Ok(())
    }

    pub fn first_year(&self) -> i32 {
        self.knots[0].0
    }

    pub fn last_year(&self) -> i32 {
        self.knots[self.knots.len() - 1].0
    }

    pub fn covers(&self, year: i32) -> bool {
        !self.knots.is_empty() && (self.first_year()..=self.last_year()).contains(&year)
    }

    /// Every value multiplied by `k`.
    pub fn scaled(&self, k: T, commodity: Commodity, unit: &str) -> Self {
        Self {
            commodity,
            source: self.source,
            unit: unit.to_string(),
            knots: self.knots.iter().map(|&(y, v)| (y, v * k)).collect(),
        }
    }

    /// Values at every integer year of the series range.
    pub fn annual(&self) -> Result<BTreeMap<i32, T>> {
        (self.first_year()..=self.last_year())
            .map(|y| Ok((y, interpolate(self, year_scalar::<T>(y))?)))
            .collect()
    }
}

fn year_scalar<T: Scalar>(y: i32) -> T {
    T::from_i32(y).expect("year fits scalar")
}

/// Piecewise-linear value at `year`; exact at knots.
pub fn interpolate<T: Scalar>(series: &DemandSeries<T>, year: T) -> Result<T> {
    let knots = &series.knots;
    let range_err = || Error::Range {
        year: year.as_f64(),
        first: knots.first().map_or(f64::NAN, |k| f64::from(k.0)),
        last: knots.last().map_or(f64::NAN, |k| f64::from(k.0)),
    };
    let (first, last) = match (knots.first(), knots.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return Err(range_err()),
    };
    if !(year >= year_scalar(first.0) && year <= year_scalar(last.0)) {
        return Err(range_err());
    }
    let i = knots.partition_point(|k| year_scalar::<T>(k.0) <= year);
    if i == 0 {
        return Ok(first.1);
    }
    let (y0, v0) = knots[i - 1];
    if year == year_scalar(y0) || i == knots.len() {
        return Ok(v0);
    }
    let (y1, v1) = knots[i];
    let t = (year - year_scalar(y0)) / (year_scalar::<T>(y1) - year_scalar(y0));
    Ok(v0 + (v1 - v0) * t)
}

/// Factors turning commodity demand into required fleet capacity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CalibrationFactors<T> {
    /// Share of natural gas traded by sea as LNG.
    pub maritime_share: T,
    /// Fleet m³ LH2-equivalent per Mt/yr of hydrogen demand.
    pub fleet_factor_h2: T,
    /// Fleet m³ per bcm/yr of LNG demand. Calibrated from the base-year fleet
    /// when absent.
    pub fleet_factor_lng: Option<T>,
    pub gdp_growth: T,
}

impl<T: Scalar> Default for CalibrationFactors<T> {
    fn default() -> Self {
        Self {
            maritime_share: T::lit(0.134),
            fleet_factor_h2: T::lit(0.246_14e6),
            fleet_factor_lng: None,
            gdp_growth: T::lit(0.024),
        }
    }
}

impl<T: Scalar> CalibrationFactors<T> {
    /// Builds the hydrogen factor from the maritime share and the fleet sizing
    /// per Mt of seaborne hydrogen.
    pub fn with_split(maritime_share: T, sizing_per_mt: T) -> Result<Self> {
        let f = Self {
            maritime_share,
            fleet_factor_h2: maritime_share * sizing_per_mt,
            ..Self::default()
        };
        f.validate()?;
        Ok(f)
    }

    /// Fleet m³ per Mt/yr of seaborne hydrogen.
    pub fn sizing_per_mt(&self) -> T {
        self.fleet_factor_h2 / self.maritime_share
    }

    pub fn validate(&self) -> Result<()> {
        let pos = |v: T| v > T::zero() && v.is_finite();
        if !pos(self.maritime_share) || self.maritime_share > T::one() {
            return Err(Error::Config(format!(
                "maritime share {} outside (0, 1]",
                self.maritime_share
            )));
        }
        if !pos(self.fleet_factor_h2) || !pos(self.gdp_growth + T::one()) {
            return Err(Error::Config("calibration factors must be positive".into()));
        }
        if let Some(k) = self.fleet_factor_lng {
            if !pos(k) {
                return Err(Error::Config(format!(
                    "LNG fleet factor {k} must be positive"
                )));
            }
        }
        Ok(())
    }
}

/// Required LH2-equivalent fleet capacity, m³.
pub fn hydrogen_capacity_demand<T: Scalar>(
    h2: &DemandSeries<T>,
    factors: &CalibrationFactors<T>,
) -> Result<DemandSeries<T>> {
    if h2.commodity != Commodity::HydrogenMt {
        return Err(Error::Config(format!(
            "expected a hydrogen series, got {:?}",
            h2.commodity
        )));
    }
    Ok(h2.scaled(
        factors.fleet_factor_h2,
        Commodity::FleetCapacity,
        "m3_lh2eq",
    ))
}

/// Required LNG fleet capacity, m³, and the fleet factor used.
///
/// Without an explicit factor the base-year fleet is taken as fully utilised:
/// `factor = base_year_fleet / lng(base_year)`.
pub fn lng_capacity_demand<T: Scalar>(
    lng: &DemandSeries<T>,
    factors: &CalibrationFactors<T>,
    base_year: i32,
    base_year_fleet: T,
) -> Result<(DemandSeries<T>, T)> {
    if lng.commodity != Commodity::LngBcm {
        return Err(Error::Config(format!(
            "expected an LNG series, got {:?}",
            lng.commodity
        )));
    }
    let factor = match factors.fleet_factor_lng {
        Some(k) => k,
        None => {
            let base = interpolate(lng, year_scalar(base_year))?;
            if !(base > T::zero()) {
                return Err(Error::Calibration(format!(
                    "LNG demand in base year {base_year} is zero"
                )));
            }
            base_year_fleet / base
        }
    };
    Ok((lng.scaled(factor, Commodity::FleetCapacity, "m3"), factor))
}

/// Container fleet capacity growing with GDP from a base year.
pub fn container_capacity_demand<T: Scalar>(
    base_capacity: T,
    base_year: i32,
    growth: T,
    years: impl IntoIterator<Item = i32>,
) -> Result<BTreeMap<i32, T>> {
    if !(base_capacity > T::zero()) {
        return Err(Error::Domain(format!(
            "container base capacity must be positive, got {base_capacity}"
        )));
    }
    let g = T::one() + growth;
    Ok(years
        .into_iter()
        .map(|y| (y, base_capacity * g.powi(y - base_year)))
        .collect())
}

/// Per-window CGT for crude oil tankers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrudePreset {
    /// 1.75 M CGT per window, consistent with the tabulated pools.
    Tabulated,
    /// 2.2 M CGT per window, the rounded headline figure.
    Headline,
}

impl CrudePreset {
    pub fn per_window_cgt(self) -> f64 {
        match self {
            CrudePreset::Tabulated => 1.75e6,
            CrudePreset::Headline => 2.2e6,
        }
    }
}

/// CGT needed for crude oil tankers per window: nothing for windows ending at
/// or before `first_build_end - 5`, `per_window` afterwards.
pub fn crude_oil_newbuild_cgt<T: Scalar>(
    window_ends: &[i32],
    per_window: T,
    first_build_end: i32,
) -> BTreeMap<i32, T> {
    window_ends
        .iter()
        .map(|&end| {
            (
                end,
                if end >= first_build_end {
                    per_window
                } else {
                    T::zero()
                },
            )
        })
        .collect()
}

/// A named set of demand series read from one scenario input file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DemandFile {
    pub source: ScenarioSource,
    #[serde(default)]
    pub description: String,
    #[serde(rename = "series")]
    pub series: Vec<SeriesEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesEntry {
    pub commodity: Commodity,
    pub unit: String,
    pub knots: Vec<(i32, f64)>,
}

impl DemandFile {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let f: DemandFile = toml::from_str(&text)?;
        for s in &f.series {
            f.build(s)?;
        }
        Ok(f)
    }

    fn build(&self, s: &SeriesEntry) -> Result<DemandSeries<f64>> {
        DemandSeries::new(s.commodity, self.source, s.unit.clone(), s.knots.clone())
    }

    pub fn get(&self, commodity: Commodity) -> Result<DemandSeries<f64>> {
        let s = self
            .series
            .iter()
            .find(|s| s.commodity == commodity)
            .ok_or_else(|| {
                Error::Config(format!(
                    "{} inputs have no {commodity:?} series",
                    self.source
                ))
            })?;
        self.build(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn nze_h2() -> DemandSeries<f64> {
        DemandSeries::new(
            Commodity::HydrogenMt,
            ScenarioSource::Nze,
            "Mt",
            vec![(2030, 210.0), (2050, 530.0)],
        )
        .unwrap()
    }

    fn aps_h2() -> DemandSeries<f64> {
        DemandSeries::new(
            Commodity::HydrogenMt,
            ScenarioSource::Aps,
            "Mt",
            vec![(2030, 130.0), (2050, 250.0)],
        )
        .unwrap()
    }

    #[test]
    fn interpolation() {
        let s = nze_h2();
        assert_eq!(interpolate(&s, 2040.0).unwrap(), 370.0);
        assert_eq!(interpolate(&s, 2030.0).unwrap(), 210.0);
        assert_eq!(interpolate(&s, 2050.0).unwrap(), 530.0);
        assert!(matches!(interpolate(&s, 2029.0), Err(Error::Range { .. })));
        assert!(matches!(interpolate(&s, 2050.5), Err(Error::Range { .. })));
        let single = DemandSeries::new(
            Commodity::CrudeOil,
            ScenarioSource::Custom,
            "",
            vec![(2030, 4.0)],
        )
        .unwrap();
        assert_eq!(interpolate(&single, 2030.0).unwrap(), 4.0);
    }

    #[test]
    fn invalid_series() {
        let mk = |k: Vec<(i32, f64)>| {
            DemandSeries::new(Commodity::HydrogenMt, ScenarioSource::Custom, "", k)
        };
        assert!(mk(vec![]).is_err());
        assert!(mk(vec![(2030, 1.0), (2030, 2.0)]).is_err());
        assert!(mk(vec![(2030, -1.0)]).is_err());
    }

    #[test]
    fn hydrogen_demand_rows() {
        let f = CalibrationFactors::default();
        let nze = hydrogen_capacity_demand(&nze_h2(), &f).unwrap();
        let aps = hydrogen_capacity_demand(&aps_h2(), &f).unwrap();
        let published_nze = [51.69, 71.39, 91.09, 110.78, 130.48];
        let published_aps = [32.00, 39.39, 46.78, 54.16, 61.55];
        for (i, y) in (2030..=2050).step_by(5).enumerate() {
            let n = interpolate(&nze, f64::from(y)).unwrap() / 1e6;
            let a = interpolate(&aps, f64::from(y)).unwrap() / 1e6;
            assert!((n / published_nze[i] - 1.0).abs() < 1e-3, "{y}: {n}");
            assert!((a / published_aps[i] - 1.0).abs() < 1e-3, "{y}: {a}");
        }
        let zero = DemandSeries::new(
            Commodity::HydrogenMt,
            ScenarioSource::Custom,
            "",
            vec![(2030, 0.0)],
        )
        .unwrap();
        assert_eq!(hydrogen_capacity_demand(&zero, &f).unwrap().knots[0].1, 0.0);
    }

    #[test]
    fn lng_calibration() {
        let lng = DemandSeries::new(
            Commodity::LngBcm,
            ScenarioSource::Nze,
            "bcm",
            vec![(2025, 486.0), (2050, 153.0)],
        )
        .unwrap();
        let (cap, k) =
            lng_capacity_demand(&lng, &CalibrationFactors::default(), 2025, 105.6e6).unwrap();
        // 105.6e6 / 486 and 153 times that, by hand
        assert!((k - 217_283.950_617_f64).abs() < 1e-3);
        assert!((interpolate(&cap, 2050.0).unwrap() - 33_244_444.444_f64).abs() < 1e-2);
        assert_relative_eq!(
            interpolate(&cap, 2025.0).unwrap(),
            105.6e6,
            max_relative = 1e-12
        );

        let dead = DemandSeries::new(
            Commodity::LngBcm,
            ScenarioSource::Custom,
            "",
            vec![(2025, 0.0), (2050, 1.0)],
        )
        .unwrap();
        assert!(matches!(
            lng_capacity_demand(&dead, &CalibrationFactors::default(), 2025, 1.0),
            Err(Error::Calibration(_))
        ));
    }

    #[test]
    fn container_growth() {
        let d = container_capacity_demand(1.0, 2022, 0.024, 2022..=2032).unwrap();
        assert_eq!(d[&2022], 1.0);
        assert!((d[&2032] - 1.267_651_f64).abs() < 1e-4);
        let flat = container_capacity_demand(5.0, 2022, 0.0, 2022..=2050).unwrap();
        assert!(flat.values().all(|&v| v == 5.0));
        assert!(container_capacity_demand(0.0, 2022, 0.024, 2022..=2023).is_err());
    }

    #[test]
    fn crude_schedule() {
        let ends = [2030, 2035, 2040, 2045, 2050];
        let s = crude_oil_newbuild_cgt(&ends, CrudePreset::Tabulated.per_window_cgt(), 2040);
        assert_eq!(s[&2035], 0.0);
        assert_eq!(s[&2040], 1.75e6);
        assert_eq!(s[&2050], 1.75e6);
    }

    #[test]
    fn factor_split() {
        let f = CalibrationFactors::<f64>::default();
        let g = CalibrationFactors::with_split(f.maritime_share * 0.5, f.sizing_per_mt() * 2.0)
            .unwrap();
        assert_relative_eq!(g.fleet_factor_h2, f.fleet_factor_h2, max_relative = 1e-12);
        assert!(CalibrationFactors::with_split(1.5, 1.0).is_err());
    }

    #[test]
    fn single_precision() {
        let s = DemandSeries::new(
            Commodity::HydrogenMt,
            ScenarioSource::Nze,
            "Mt",
            vec![(2030, 210.0f32), (2050, 530.0)],
        )
        .unwrap();
        assert_eq!(interpolate(&s, 2040.0f32).unwrap(), 370.0);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn homogeneous(mt in 0.0f64..2_000.0, mt2 in 0.0f64..2_000.0, year in 2030.0f64..2050.0) {
                let f = CalibrationFactors::default();
                let s = DemandSeries::new(Commodity::HydrogenMt, ScenarioSource::Custom, "", vec![(2030, mt), (2050, mt2)]).unwrap();
                let d = s.scaled(2.0, Commodity::HydrogenMt, "Mt");
                let a = interpolate(&hydrogen_capacity_demand(&s, &f).unwrap(), year).unwrap();
                let b = interpolate(&hydrogen_capacity_demand(&d, &f).unwrap(), year).unwrap();
                prop_assert!((b - 2.0 * a).abs() <= 1e-9 * b.abs().max(1.0));
            }

            #[test]
            fn monotone_between_monotone_knots(
                mut vals in prop::collection::vec(0.0f64..1_000.0, 2..6),
                a in 0.0f64..1.0, b in 0.0f64..1.0,
            ) {
                vals.sort_by(f64::total_cmp);
                let knots: Vec<(i32, f64)> = vals.iter().enumerate().map(|(i, &v)| (2030 + 5 * i as i32, v)).collect();
                let span = 5.0 * (knots.len() - 1) as f64;
                let s = DemandSeries::new(Commodity::LngBcm, ScenarioSource::Custom, "", knots.clone()).unwrap();
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                let vlo = interpolate(&s, 2030.0 + lo * span).unwrap();
                let vhi = interpolate(&s, 2030.0 + hi * span).unwrap();
                prop_assert!(vlo <= vhi + 1e-9);
                for (y, v) in knots {
                    prop_assert_eq!(interpolate(&s, f64::from(y)).unwrap(), v);
                }
            }

            #[test]
            fn split_invariance(c in 0.01f64..1.0) {
                let f = CalibrationFactors::<f64>::default();
                let share = f.maritime_share * c;
                let g = CalibrationFactors::with_split(share, f.sizing_per_mt() / c).unwrap();
                prop_assert!((g.fleet_factor_h2 / f.fleet_factor_h2 - 1.0).abs() < 1e-12);
            }
        }
    }
}
