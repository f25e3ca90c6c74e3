//! Shipyard capacity and maritime hydrogen transport model.
//!
//! Numeric types are generic over [`scalar::Scalar`]; the aliases below fix
//! them to `f64`.
// `!(x > 0.0)` is used on purpose so NaN lands in the error branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod demand;
pub mod error;
pub mod fleet;
pub mod report;
pub mod scalar;
pub mod scenario;
pub mod tanker;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type TankerSpec = tanker::TankerSpec<f64>;
pub type TankerBuild = tanker::TankerBuild<f64>;
pub type VesselClassParams = tanker::VesselClassParams<f64>;
pub type CgtParamTable = tanker::CgtParamTable<f64>;
pub type RegressionFit = fleet::RegressionFit<f64>;
pub type DemandSeries = demand::DemandSeries<f64>;
pub type CalibrationFactors = demand::CalibrationFactors<f64>;
pub type CapacityWindow = scenario::CapacityWindow<f64>;
pub type WindowBounds = scenario::WindowBounds<f64>;
pub type CumulativeState = scenario::CumulativeState<f64>;
pub type ScenarioResult = scenario::ScenarioResult<f64>;
pub type YearOutcome = scenario::YearOutcome<f64>;
