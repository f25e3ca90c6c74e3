//! Scenario engine: shipyard pools per window, the LH2/LNH3 solution space,
//! gaps against hydrogen demand and shortage intervals.

pub mod analysis;
pub mod config;
pub mod run;
pub mod windows;

pub use analysis::{
    bottleneck_interval, capacity_with_lnh3, cumulative_bounds, min_lnh3_tankers,
    min_lnh3_two_pool, net_gain, small_lnh3_variant, transport_gap, CumulativeState, MinLnh3,
    Portfolio, ShortageInterval, SmallLnh3Variant,
};
pub use config::{LngReplacement, ModelConfig, ScenarioConfig, ScenarioName, TankerSet};
pub use run::{
    lng_turnover, run_scenario, LngTurnover, ScenarioInputs, ScenarioResult, YearOutcome,
};
pub use windows::{build_windows, window_production_bounds, CapacityWindow, WindowBounds};
