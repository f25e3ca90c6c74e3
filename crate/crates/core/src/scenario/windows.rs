//! Five-year shipyard capacity windows and the tanker output they allow.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tanker::{max_tankers, TankerSpec};

/// Shipyard effort accumulated over the years ending at `end_year`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CapacityWindow<T> {
    pub end_year: i32,
    pub length: u32,
    /// Net CGT per year after scenario adjustments.
    pub annual_pool: T,
    /// CGT charged to this window for other vessel types.
    pub deduction: T,
    pub years_lh2: u32,
    pub years_lnh3: u32,
    pub raw_pool_lh2: T,
    pub raw_pool_lnh3: T,
    pub pool_lh2: T,
    pub pool_lnh3: T,
}

impl<T: Scalar> CapacityWindow<T> {
    pub fn first_year(&self) -> i32 {
        self.end_year - self.length as i32 + 1
    }

    /// Years of the window in which a tanker first delivered in
    /// `first_delivery_year` can be completed.
    pub fn available_years(&self, first_delivery_year: i32) -> u32 {
        let from = self.first_year().max(first_delivery_year);
        if from > self.end_year {
            0
        } else {
            (self.end_year - from + 1) as u32
        }
    }

    /// Pool before clamping for a tanker class.
    pub fn raw_pool_for(&self, spec: &TankerSpec<T>) -> T {
        let years =
            T::from_u32(self.available_years(spec.first_delivery_year)).expect("year count fits");
        self.annual_pool * years - self.deduction
    }

    pub fn pool_for(&self, spec: &TankerSpec<T>) -> T {
        self.raw_pool_for(spec).max(T::zero())
    }
}

/// Builds the windows ending at `window_ends`.
///
/// `pool = annual_pool * available years - deduction`, separately for LH2 and
/// LNH3 carriers because they become available in different years. Negative
/// pools are clamped to zero; the raw value is kept.
pub fn build_windows<T: Scalar>(
    annual_pool: T,
    window_ends: &[i32],
    length: u32,
    deductions: &BTreeMap<i32, T>,
    lh2: &TankerSpec<T>,
    lnh3: &TankerSpec<T>,
) -> Result<Vec<CapacityWindow<T>>> {
    if length == 0 {
        return Err(Error::Config("window length must be positive".into()));
    }
    if !annual_pool.is_finite() {
        return Err(Error::Domain(format!(
            "annual pool {annual_pool} is not finite"
        )));
    }
    Ok(window_ends
        .iter()
        .map(|&end| {
            let mut w = CapacityWindow {
                end_year: end,
                length,
                annual_pool,
                deduction: deductions.get(&end).copied().unwrap_or_else(T::zero),
                years_lh2: 0,
                years_lnh3: 0,
                raw_pool_lh2: T::zero(),
                raw_pool_lnh3: T::zero(),
                pool_lh2: T::zero(),
                pool_lnh3: T::zero(),
            };
            w.years_lh2 = w.available_years(lh2.first_delivery_year);
            w.years_lnh3 = w.available_years(lnh3.first_delivery_year);
            w.raw_pool_lh2 = w.raw_pool_for(lh2);
            w.raw_pool_lnh3 = w.raw_pool_for(lnh3);
            w.pool_lh2 = w.raw_pool_lh2.max(T::zero());
            w.pool_lnh3 = w.raw_pool_lnh3.max(T::zero());
            w
        })
        .collect())
}

/// Tanker output of one window under single-class portfolios.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowBounds<T> {
    pub end_year: i32,
    /// All-LH2 capacity, m³ LH2-equivalent.
    pub max_lh2: T,
    /// All-LNH3 capacity, m³ LH2-equivalent.
    pub max_lnh3: T,
    pub max_lh2_count: u64,
    pub max_lnh3_count: u64,
}

pub fn window_production_bounds<T: Scalar>(
    window: &CapacityWindow<T>,
    lh2: &TankerSpec<T>,
    lnh3: &TankerSpec<T>,
) -> Result<WindowBounds<T>> {
    let a = max_tankers(window.pool_lh2, lh2)?;
    let b = max_tankers(window.pool_for(lnh3), lnh3)?;
    Ok(WindowBounds {
        end_year: window.end_year,
        max_lh2: a.continuous_lh2eq,
        max_lnh3: b.continuous_lh2eq,
        max_lh2_count: a.count,
        max_lnh3_count: b.count,
    })
}
