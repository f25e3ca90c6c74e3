//! Fleet ageing under a fixed service life and the newbuilds needed to keep
//! fleet capacity at or above a demand trajectory.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::record::VesselRecord;
use crate::error::{Error, Result};
use crate::tanker::VesselType;

pub const DEFAULT_LIFETIME: u32 = 25;

/// Capacity delivered in one build year.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cohort {
    pub build_year: i32,
    pub capacity: f64,
}

impl Cohort {
    /// In service during `year`: delivered by then and not yet retired.
    /// Retirement happens at the end of `build_year + lifetime - 1`.
    pub fn in_service(&self, year: i32, lifetime: u32) -> bool {
        self.build_year <= year
            && i64::from(self.build_year) > i64::from(year) - i64::from(lifetime)
    }

    pub fn retired_by(&self, year: i32, lifetime: u32) -> bool {
        i64::from(self.build_year) <= i64::from(year) - i64::from(lifetime)
    }
}

pub fn cohorts(records: &[VesselRecord], vessel_type: VesselType) -> Vec<Cohort> {
    records
        .iter()
        .filter(|r| r.vessel_type == vessel_type)
        .map(|r| Cohort {
            build_year: r.build_year,
            capacity: r.cargo_capacity,
        })
        .collect()
}

pub fn surviving_capacity(fleet: &[Cohort], year: i32, lifetime: u32) -> f64 {
    fleet
        .iter()
        .filter(|c| c.in_service(year, lifetime))
        .map(|c| c.capacity)
        .sum()
}

pub fn retired_capacity(fleet: &[Cohort], year: i32, lifetime: u32) -> f64 {
    fleet
        .iter()
        .filter(|c| c.retired_by(year, lifetime))
        .map(|c| c.capacity)
        .sum()
}

pub fn built_capacity(fleet: &[Cohort], year: i32) -> f64 {
    fleet
        .iter()
        .filter(|c| c.build_year <= year)
        .map(|c| c.capacity)
        .sum()
}

/// Newbuilds per delivery year.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct NewbuildSchedule {
    pub by_year: BTreeMap<i32, u64>,
    pub vessel_capacity: f64,
}

impl NewbuildSchedule {
    pub fn total(&self) -> u64 {
        self.by_year.values().sum()
    }

    pub fn cumulative_through(&self, year: i32) -> u64 {
        self.by_year.range(..=year).map(|(_, n)| n).sum()
    }

    pub fn first_year(&self) -> Option<i32> {
        self.by_year.iter().find(|(_, &n)| n > 0).map(|(&y, _)| y)
    }

    pub fn as_cohorts(&self) -> Vec<Cohort> {
        self.by_year
            .iter()
            .filter(|(_, &n)| n > 0)
            .map(|(&y, &n)| Cohort {
                build_year: y,
                capacity: n as f64 * self.vessel_capacity,
            })
            .collect()
    }

    /// Tankers delivered in `(end - 5, end]` for each window end year.
    pub fn per_window(&self, window_ends: &[i32]) -> BTreeMap<i32, u64> {
        window_ends
            .iter()
            .map(|&end| (end, self.by_year.range(end - 4..=end).map(|(_, n)| n).sum()))
            .collect()
    }
}

/// Greedy year-by-year replacement: each year builds the fewest vessels that
/// lift surviving capacity, earlier newbuilds included, to the demand.
pub fn required_newbuilds(
    fleet: &[Cohort],
    demand: &BTreeMap<i32, f64>,
    lifetime: u32,
    vessel_capacity: f64,
) -> Result<NewbuildSchedule> {
    if lifetime == 0 {
        return Err(Error::Domain("lifetime must be positive".into()));
    }
    if !(vessel_capacity > 0.0) {
        return Err(Error::Domain(format!(
            "vessel capacity must be positive, got {vessel_capacity}"
        )));
    }
    let mut schedule = NewbuildSchedule {
        by_year: BTreeMap::new(),
        vessel_capacity,
    };
    let mut added: Vec<Cohort> = Vec::new();
    for (&year, &need) in demand {
        let have =
            surviving_capacity(fleet, year, lifetime) + surviving_capacity(&added, year, lifetime);
        let deficit = (need - have).max(0.0);
        let mut n = (deficit / vessel_capacity).ceil() as u64;
        // ceil of a rounded quotient can land one vessel short
        while have + n as f64 * vessel_capacity < need {
            n += 1;
        }
        if n > 0 {
            added.push(Cohort {
                build_year: year,
                capacity: n as f64 * vessel_capacity,
            });
        }
        schedule.by_year.insert(year, n);
    }
    Ok(schedule)
}

/// Years in which fleet plus scheduled newbuilds fall short of demand.
pub fn shortfall_years(
    fleet: &[Cohort],
    schedule: &NewbuildSchedule,
    demand: &BTreeMap<i32, f64>,
    lifetime: u32,
) -> Vec<i32> {
    let added = schedule.as_cohorts();
    demand
        .iter()
        .filter(|(&y, &need)| {
            // 1e-6 m³ absorbs summation-order rounding
            surviving_capacity(fleet, y, lifetime) + surviving_capacity(&added, y, lifetime) + 1e-6
                < need
        })
        .map(|(&y, _)| y)
        .collect()
}
