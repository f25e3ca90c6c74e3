//! Fleet data: ingestion, yard identification, effort regressions, turnover
//! and the synthetic generator standing in for licensed fleet databases.

pub mod record;
pub mod regression;
pub mod synth;
pub mod turnover;
pub mod yards;

use serde::{Deserialize, Serialize};

pub use record::{
    parse_fleet, parse_fleet_reader, write_fleet, ParseOptions, ParsedFleet, Reject, TankSystem,
    VesselRecord, FLEET_HEADER,
};
pub use regression::{fit_linear, fit_power, RegressionFit, RegressionModel, ResidualSummary};
pub use synth::{generate_synthetic_fleet, SynthConfig};
pub use turnover::{
    required_newbuilds, retired_capacity, surviving_capacity, Cohort, NewbuildSchedule,
    DEFAULT_LIFETIME,
};
pub use yards::{
    annual_capacity_by_yard, country_shares, identify_suitable_shipyards, AveragingWindow,
    IdentifyParams, ShipyardProfile,
};

use crate::error::{Error, Result};
use crate::tanker::{CgtParamTable, VesselType, MEMBRANE_FIT_MIN_CAPACITY};

/// Vessel populations the effort curves are fitted on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitFamily {
    /// Large membrane-tank LNG carriers, linear in capacity.
    MembraneLinear,
    /// Independent-tank gas carriers, power law in capacity.
    IndependentPower,
}

impl std::str::FromStr for FitFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "membrane_linear" => Ok(FitFamily::MembraneLinear),
            "independent_power" => Ok(FitFamily::IndependentPower),
            _ => Err(Error::Config(format!(
                "unknown fit family `{s}`, expected membrane_linear or independent_power"
            ))),
        }
    }
}

/// `(cargo capacity, CGT)` pairs of the records belonging to a fit family.
pub fn regression_points(
    records: &[VesselRecord],
    family: FitFamily,
    cgt: &CgtParamTable<f64>,
) -> Vec<(f64, f64)> {
    records
        .iter()
        .filter(|r| match family {
            FitFamily::MembraneLinear => {
                r.vessel_type == VesselType::Lng
                    && r.tank_system == TankSystem::Membrane
                    && r.cargo_capacity >= MEMBRANE_FIT_MIN_CAPACITY
            }
            FitFamily::IndependentPower => {
                matches!(r.vessel_type, VesselType::Lpg | VesselType::Lng)
                    && r.tank_system == TankSystem::Independent
                    && r.cargo_capacity > 0.0
            }
        })
        .map(|r| (r.cargo_capacity, r.cgt(cgt)))
        .collect()
}

pub fn fit_family(
    records: &[VesselRecord],
    family: FitFamily,
    cgt: &CgtParamTable<f64>,
) -> Result<RegressionFit<f64>> {
    let pts = regression_points(records, family, cgt);
    match family {
        FitFamily::MembraneLinear => fit_linear(&pts),
        FitFamily::IndependentPower => fit_power(&pts),
    }
}
