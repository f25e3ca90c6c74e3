//! Cumulative solution space, capacity gaps, minimum ammonia carrier counts
//! and shortage intervals.

use serde::{Deserialize, Serialize};

use super::windows::{CapacityWindow, WindowBounds};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tanker::{max_tankers, TankerSpec};

/// Cumulative pools and the solution space at a window end year.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CumulativeState<T> {
    pub year: i32,
    /// Cumulative LH2 pool, CGT.
    pub pool_lh2: T,
    /// Cumulative LNH3 pool, CGT.
    pub pool_lnh3: T,
    /// All-LH2 fleet capacity, m³ LH2-equivalent.
    pub lower: T,
    /// All-LNH3 fleet capacity, m³ LH2-equivalent.
    pub upper: T,
}

impl<T: Scalar> CumulativeState<T> {
    /// Capacity of the portfolio with LNH3 share `f` of output.
    pub fn portfolio(&self, f: T) -> T {
        f * self.upper + (T::one() - f) * self.lower
    }
}

/// Running sums of window pools and bounds, one entry per window.
pub fn cumulative_bounds<T: Scalar>(
    windows: &[CapacityWindow<T>],
    bounds: &[WindowBounds<T>],
) -> Vec<CumulativeState<T>> {
    let mut acc = CumulativeState {
        year: 0,
        pool_lh2: T::zero(),
        pool_lnh3: T::zero(),
        lower: T::zero(),
        upper: T::zero(),
    };
    windows
        .iter()
        .zip(bounds)
        .map(|(w, b)| {
            acc.year = w.end_year;
            acc.pool_lh2 = acc.pool_lh2 + w.pool_lh2;
            acc.pool_lnh3 = acc.pool_lnh3 + w.pool_lnh3;
            acc.lower = acc.lower + b.max_lh2;
            acc.upper = acc.upper + b.max_lnh3;
            acc
        })
        .collect()
}

/// Shortfall of the all-LH2 fleet below demand.
pub fn transport_gap<T: Scalar>(state: &CumulativeState<T>, demand: T) -> T {
    (demand - state.lower).max(T::zero())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "count")]
pub enum MinLnh3 {
    Count(u64),
    /// Even an all-LNH3 portfolio misses demand.
    Infeasible,
}

impl MinLnh3 {
    pub fn count(self) -> Option<u64> {
        match self {
            MinLnh3::Count(n) => Some(n),
            MinLnh3::Infeasible => None,
        }
    }
}

/// LH2-equivalent capacity gained per LNH3 carrier built in place of LH2
/// carriers of the same CGT.
pub fn net_gain<T: Scalar>(lh2: &TankerSpec<T>, lnh3: &TankerSpec<T>) -> T {
    lnh3.lh2eq_per_tanker - lnh3.cgt_effort / lh2.cgt_effort * lh2.lh2eq_per_tanker
}

/// Fleet capacity with `n` LNH3 carriers and the rest of the LH2 pool used for
/// LH2 carriers. `None` when the pools cannot hold `n` carriers.
pub fn capacity_with_lnh3<T: Scalar>(
    state: &CumulativeState<T>,
    n: u64,
    lh2: &TankerSpec<T>,
    lnh3: &TankerSpec<T>,
) -> Option<T> {
    let nf = T::from_u64(n)?;
    let used = nf * lnh3.cgt_effort;
    if used > state.pool_lnh3 {
        return None;
    }
    let left = (state.pool_lh2 - used).max(T::zero());
    Some(nf * lnh3.lh2eq_per_tanker + left / lh2.cgt_effort * lh2.lh2eq_per_tanker)
}

/// Fewest LNH3 carriers closing the gap at the state's year.
///
/// Each LNH3 carrier displaces LH2 output of equal CGT, so the count is the
/// gap over [`net_gain`], rounded up. Once the LH2 pool is used up entirely
/// every further carrier adds its full capacity.
pub fn min_lnh3_tankers<T: Scalar>(
    state: &CumulativeState<T>,
    demand: T,
    lh2: &TankerSpec<T>,
    lnh3: &TankerSpec<T>,
) -> MinLnh3 {
    let gap = transport_gap(state, demand);
    if gap <= T::zero() {
        return MinLnh3::Count(0);
    }
    if state.upper < demand {
        return MinLnh3::Infeasible;
    }
    let gain = net_gain(lh2, lnh3);
    let mut n = (gap / gain).ceil().to_u64().unwrap_or(u64::MAX);
    if T::from_u64(n).is_none_or(|nf| nf * lnh3.cgt_effort > state.pool_lh2) {
        let all_lnh3 = (demand / lnh3.lh2eq_per_tanker)
            .ceil()
            .to_u64()
            .unwrap_or(u64::MAX);
        let displaced = (state.pool_lh2 / lnh3.cgt_effort)
            .floor()
            .to_u64()
            .unwrap_or(0);
        n = all_lnh3.max(displaced + 1);
    }
    let meets = |k: u64| capacity_with_lnh3(state, k, lh2, lnh3).is_some_and(|c| c >= demand);
    // Settle rounding at the boundary against the direct capacity model.
    while !meets(n) {
        if capacity_with_lnh3(state, n, lh2, lnh3).is_none() {
            return MinLnh3::Infeasible;
        }
        n += 1;
    }
    while n > 0 && meets(n - 1) {
        n -= 1;
    }
    MinLnh3::Count(n)
}

/// Fewest LNH3 carriers when the years open only to LNH3 are filled first.
/// Reported next to [`min_lnh3_tankers`] as a diagnostic.
pub fn min_lnh3_two_pool<T: Scalar>(
    state: &CumulativeState<T>,
    demand: T,
    lh2: &TankerSpec<T>,
    lnh3: &TankerSpec<T>,
) -> MinLnh3 {
    let gap = transport_gap(state, demand);
    if gap <= T::zero() {
        return MinLnh3::Count(0);
    }
    if state.upper < demand {
        return MinLnh3::Infeasible;
    }
    let gain = net_gain(lh2, lnh3);
    let exclusive = ((state.pool_lnh3 - state.pool_lh2).max(T::zero())) / lnh3.cgt_effort;
    let capacity = |n: T| {
        let free = n.min(exclusive);
        state.lower + free * lnh3.lh2eq_per_tanker + (n - free) * gain
    };
    let limit = state.pool_lnh3 / lnh3.cgt_effort;
    // capacity is piecewise linear and increasing; start at the first whole count
    let mut n = if gap <= exclusive * lnh3.lh2eq_per_tanker {
        (gap / lnh3.lh2eq_per_tanker).ceil()
    } else {
        (exclusive + (gap - exclusive * lnh3.lh2eq_per_tanker) / gain).ceil()
    };
    while capacity(n) < demand && n <= limit {
        n = n + T::one();
    }
    if n > limit {
        return MinLnh3::Infeasible;
    }
    MinLnh3::Count(n.to_u64().unwrap_or(0))
}

/// Portfolio as LNH3 share of shipyard output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "lnh3_share")]
pub enum Portfolio {
    Lh2Only,
    Lnh3Only,
    Mix(f64),
}

impl Portfolio {
    pub fn lnh3_share(self) -> f64 {
        match self {
            Portfolio::Lh2Only => 0.0,
            Portfolio::Lnh3Only => 1.0,
            Portfolio::Mix(f) => f,
        }
    }

    pub fn validate(self) -> Result<Self> {
        let f = self.lnh3_share();
        if (0.0..=1.0).contains(&f) {
            Ok(self)
        } else {
            Err(Error::Config(format!("portfolio share {f} outside [0, 1]")))
        }
    }

    pub fn label(self) -> String {
        match self {
            Portfolio::Lh2Only => "lh2-only".into(),
            Portfolio::Lnh3Only => "lnh3-only".into(),
            Portfolio::Mix(f) => format!("mix:{f}"),
        }
    }
}

impl std::str::FromStr for Portfolio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lh2-only" => Ok(Portfolio::Lh2Only),
            "lnh3-only" => Ok(Portfolio::Lnh3Only),
            _ => {
                let f = s
                    .strip_prefix("mix:")
                    .and_then(|v| v.parse::<f64>().ok())
                    .ok_or_else(|| {
                        Error::Config(format!(
                            "portfolio `{s}` must be lh2-only, lnh3-only or mix:<fraction>"
                        ))
                    })?;
                Portfolio::Mix(f).validate()
            }
        }
    }
}

/// Years in which capacity stays below demand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShortageInterval<T> {
    /// Interpolated onset; the first window end if short from the start.
    pub start: T,
    /// Interpolated crossing back above demand.
    pub resolve: Option<T>,
    pub start_year: i32,
    /// Nearest whole year of `resolve`.
    pub resolve_year: Option<i32>,
}

fn nearest_year<T: Scalar>(t: T) -> i32 {
    t.round().to_i32().unwrap_or(i32::MAX)
}

/// Intervals where `capacity < demand`, interpolating both linearly between
/// the given `(year, capacity, demand)` points.
pub fn shortage_intervals<T: Scalar>(points: &[(i32, T, T)]) -> Vec<ShortageInterval<T>> {
    let yr = |y: i32| T::from_i32(y).expect("year fits scalar");
    let mut out = Vec::new();
    let mut open: Option<T> = None;
    for (i, &(y, cap, dem)) in points.iter().enumerate() {
        let d = cap - dem;
        if i == 0 {
            if d < T::zero() {
                open = Some(yr(y));
            }
            continue;
        }
        let (py, pcap, pdem) = points[i - 1];
        let pd = pcap - pdem;
        let cross = || yr(py) + (yr(y) - yr(py)) * (-pd) / (d - pd);
        if pd >= T::zero() && d < T::zero() {
            open = Some(cross());
        } else if pd < T::zero() && d >= T::zero() {
            if let Some(start) = open.take() {
                let end = cross();
                out.push(ShortageInterval {
                    start,
                    resolve: Some(end),
                    start_year: nearest_year(start),
                    resolve_year: Some(nearest_year(end)),
                });
            }
        }
    }
    if let Some(start) = open {
        out.push(ShortageInterval {
            start,
            resolve: None,
            start_year: nearest_year(start),
            resolve_year: None,
        });
    }
    out
}

/// First shortage interval of the portfolio against demand at window ends.
pub fn bottleneck_interval<T: Scalar>(
    states: &[CumulativeState<T>],
    demand: &[T],
    portfolio: Portfolio,
) -> Result<Option<ShortageInterval<T>>> {
    let p = portfolio.validate()?;
    if states.len() != demand.len() {
        return Err(Error::Config(
            "demand must be given at every window end".into(),
        ));
    }
    let f = T::lit(p.lnh3_share());
    let points: Vec<(i32, T, T)> = states
        .iter()
        .zip(demand)
        .map(|(s, &d)| (s.year, s.portfolio(f), d))
        .collect();
    Ok(shortage_intervals(&points).into_iter().next())
}

/// All-LNH3 outcome for an alternative ammonia carrier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SmallLnh3Variant<T> {
    pub spec: TankerSpec<T>,
    pub windows: Vec<SmallWindow<T>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmallWindow<T> {
    pub end_year: i32,
    pub years: u32,
    pub pool: T,
    pub max_capacity: T,
    pub max_count: u64,
    pub cumulative_upper: T,
    pub demand: T,
    /// All-LNH3 output of this carrier falls short of demand.
    pub bottleneck: bool,
}

/// Recomputes the upper bound of the solution space for `spec`.
pub fn small_lnh3_variant<T: Scalar>(
    windows: &[CapacityWindow<T>],
    demand: &[T],
    spec: &TankerSpec<T>,
) -> Result<SmallLnh3Variant<T>> {
    if windows.len() != demand.len() {
        return Err(Error::Config(
            "demand must be given at every window end".into(),
        ));
    }
    let mut cum = T::zero();
    let mut out = Vec::with_capacity(windows.len());
    for (w, &d) in windows.iter().zip(demand) {
        let pool = w.pool_for(spec);
        let b = max_tankers(pool, spec)?;
        cum = cum + b.continuous_lh2eq;
        out.push(SmallWindow {
            end_year: w.end_year,
            years: w.available_years(spec.first_delivery_year),
            pool,
            max_capacity: b.continuous_lh2eq,
            max_count: b.count,
            cumulative_upper: cum,
            demand: d,
            bottleneck: cum < d,
        });
    }
    Ok(SmallLnh3Variant {
        spec: *spec,
        windows: out,
    })
}
