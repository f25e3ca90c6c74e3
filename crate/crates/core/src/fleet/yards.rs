//! Shipyard identification and average annual output per vessel type.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::record::VesselRecord;
use crate::tanker::{CgtParamTable, VesselType, MEMBRANE_FIT_MIN_CAPACITY};

/// Filters deciding whether a yard can build large liquefied gas tankers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IdentifyParams {
    /// Smallest LNG carrier counted as large, m³.
    pub min_lng_capacity: f64,
    /// Earliest build year of the witnessing large LNG carrier.
    pub min_lng_build_year: i32,
    /// Any delivery in `[activity_from, activity_to]` marks a yard active.
    pub activity_from: i32,
    pub activity_to: i32,
}

impl Default for IdentifyParams {
    fn default() -> Self {
        Self {
            min_lng_capacity: MEMBRANE_FIT_MIN_CAPACITY,
            min_lng_build_year: 2010,
            activity_from: 2020,
            activity_to: 2022,
        }
    }
}

/// Inclusive range of delivery years output is averaged over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AveragingWindow {
    pub from: i32,
    pub to: i32,
}

impl Default for AveragingWindow {
    fn default() -> Self {
        Self {
            from: 2015,
            to: 2022,
        }
    }
}

impl AveragingWindow {
    pub fn years(&self) -> u32 {
        if self.to < self.from {
            0
        } else {
            (self.to - self.from + 1) as u32
        }
    }

    pub fn contains(&self, year: i32) -> bool {
        (self.from..=self.to).contains(&year)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShipyardProfile {
    pub yard_id: String,
    pub country: String,
    /// CGT per year over the averaging window. Empty until
    /// [`annual_capacity_by_yard`] fills it.
    pub avg_annual_cgt_by_type: BTreeMap<VesselType, f64>,
    pub qualifies_large_lng: bool,
    pub active: bool,
    /// IMO id of the large LNG carrier that qualifies the yard.
    pub lng_witness: Option<String>,
    /// IMO id of a delivery inside the activity window.
    pub activity_witness: Option<String>,
}

impl ShipyardProfile {
    pub fn total_cgt(&self) -> f64 {
        self.avg_annual_cgt_by_type.values().sum()
    }

    pub fn tanker_cgt(&self) -> f64 {
        self.avg_annual_cgt_by_type
            .iter()
            .filter(|(t, _)| t.is_tanker())
            .map(|(_, v)| v)
            .sum()
    }

    pub fn is_suitable(&self) -> bool {
        self.qualifies_large_lng && self.active
    }
}

/// Every yard in the dataset with its qualification flags, sorted by yard id.
pub fn survey_yards(records: &[VesselRecord], params: &IdentifyParams) -> Vec<ShipyardProfile> {
    let mut yards: BTreeMap<&str, ShipyardProfile> = BTreeMap::new();
    for r in records {
        let y = yards
            .entry(&r.builder_yard)
            .or_insert_with(|| ShipyardProfile {
                yard_id: r.builder_yard.clone(),
                country: r.builder_country.clone(),
                avg_annual_cgt_by_type: BTreeMap::new(),
                qualifies_large_lng: false,
                active: false,
                lng_witness: None,
                activity_witness: None,
            });
        if r.is_large_lng(params.min_lng_capacity) && r.build_year >= params.min_lng_build_year {
            y.qualifies_large_lng = true;
            y.lng_witness.get_or_insert_with(|| r.imo_id.clone());
        }
        if (params.activity_from..=params.activity_to).contains(&r.build_year) {
            y.active = true;
            y.activity_witness.get_or_insert_with(|| r.imo_id.clone());
        }
    }
    yards.into_values().collect()
}

/// Yards that built a large LNG carrier recently enough and are still delivering.
pub fn identify_suitable_shipyards(
    records: &[VesselRecord],
    params: &IdentifyParams,
) -> Vec<ShipyardProfile> {
    survey_yards(records, params)
        .into_iter()
        .filter(ShipyardProfile::is_suitable)
        .collect()
}

/// Yards that built large LNG carriers at some point but fail the recency or
/// activity filter. Candidates for repurposing.
pub fn former_lng_yards(records: &[VesselRecord], params: &IdentifyParams) -> Vec<ShipyardProfile> {
    let any_year = IdentifyParams {
        min_lng_build_year: i32::MIN,
        ..*params
    };
    let suitable: Vec<String> = identify_suitable_shipyards(records, params)
        .into_iter()
        .map(|y| y.yard_id)
        .collect();
    survey_yards(records, &any_year)
        .into_iter()
        .filter(|y| y.qualifies_large_lng && !suitable.contains(&y.yard_id))
        .collect()
}

fn cgt_sums_in(
    records: &[VesselRecord],
    yard_id: &str,
    window: AveragingWindow,
    cgt: &CgtParamTable<f64>,
) -> BTreeMap<VesselType, f64> {
    let mut sums = BTreeMap::new();
    for r in records
        .iter()
        .filter(|r| r.builder_yard == yard_id && window.contains(r.build_year))
    {
        *sums.entry(r.vessel_type).or_insert(0.0) += r.cgt(cgt);
    }
    sums
}

/// Fills `avg_annual_cgt_by_type` with CGT delivered in the window divided by
/// its length in years.
pub fn annual_capacity_by_yard(
    records: &[VesselRecord],
    yards: &[ShipyardProfile],
    window: AveragingWindow,
    cgt: &CgtParamTable<f64>,
) -> Vec<ShipyardProfile> {
    let years = f64::from(window.years().max(1));
    yards
        .iter()
        .map(|y| {
            let mut out = y.clone();
            out.avg_annual_cgt_by_type = cgt_sums_in(records, &y.yard_id, window, cgt)
                .into_iter()
                .map(|(t, v)| (t, v / years))
                .collect();
            out
        })
        .collect()
}

/// Annual CGT per vessel type summed over yards.
pub fn totals_by_type(yards: &[ShipyardProfile]) -> BTreeMap<VesselType, f64> {
    let mut totals = BTreeMap::new();
    for y in yards {
        for (&t, &v) in &y.avg_annual_cgt_by_type {
            *totals.entry(t).or_insert(0.0) += v;
        }
    }
    totals
}

/// Annual tanker CGT of all yards in the dataset over the window.
pub fn global_tanker_cgt(
    records: &[VesselRecord],
    window: AveragingWindow,
    cgt: &CgtParamTable<f64>,
) -> f64 {
    let total: f64 = records
        .iter()
        .filter(|r| r.vessel_type.is_tanker() && window.contains(r.build_year))
        .map(|r| r.cgt(cgt))
        .sum();
    total / f64::from(window.years().max(1))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountryShare {
    pub country: String,
    pub yards: usize,
    pub tanker_cgt: f64,
    /// Fraction of global tanker CGT.
    pub share: f64,
}

/// Tanker output of the given yards grouped by country, relative to global
/// tanker output. Ordered by descending share.
pub fn country_shares(yards: &[ShipyardProfile], global_tanker_cgt: f64) -> Vec<CountryShare> {
    let mut by_country: BTreeMap<&str, (usize, f64)> = BTreeMap::new();
    for y in yards {
        let e = by_country.entry(&y.country).or_insert((0, 0.0));
        e.0 += 1;
        e.1 += y.tanker_cgt();
    }
    let mut out: Vec<CountryShare> = by_country
        .into_iter()
        .map(|(c, (n, v))| CountryShare {
            country: c.to_string(),
            yards: n,
            tanker_cgt: v,
            share: if global_tanker_cgt > 0.0 {
                v / global_tanker_cgt
            } else {
                0.0
            },
        })
        .collect();
    out.sort_by(|a, b| {
        b.share
            .total_cmp(&a.share)
            .then_with(|| a.country.cmp(&b.country))
    });
    out
}

/// Large LNG output of the given yards per country as a fraction of the
/// large LNG output of all the given yards.
pub fn lng_country_shares(yards: &[ShipyardProfile]) -> BTreeMap<String, f64> {
    let mut by_country: BTreeMap<String, f64> = BTreeMap::new();
    for y in yards {
        let v = y
            .avg_annual_cgt_by_type
            .get(&VesselType::Lng)
            .copied()
            .unwrap_or(0.0);
        *by_country.entry(y.country.clone()).or_insert(0.0) += v;
    }
    let total: f64 = by_country.values().sum();
    if total > 0.0 {
        for v in by_country.values_mut() {
            *v /= total;
        }
    }
    by_country
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fleet::record::TankSystem;

    fn rec(id: &str, yard: &str, t: VesselType, cap: f64, gt: f64, year: i32) -> VesselRecord {
        VesselRecord {
            imo_id: id.into(),
            vessel_type: t,
            tank_system: if t == VesselType::Lng {
                TankSystem::Membrane
            } else {
                TankSystem::Other
            },
            gross_tonnage: gt,
            cargo_capacity: cap,
            build_year: year,
            builder_yard: yard.into(),
            builder_country: yard[..2].into(),
        }
    }

    #[test]
    fn filters() {
        let records = vec![
            rec("1", "KRA", VesselType::Lng, 174_000.0, 110_000.0, 2016),
            rec("2", "KRA", VesselType::CrudeOil, 0.0, 150_000.0, 2021),
            rec("3", "JPB", VesselType::Lng, 160_000.0, 100_000.0, 2009),
            rec("4", "JPB", VesselType::Container, 0.0, 90_000.0, 2022),
            rec("5", "PHC", VesselType::Lng, 170_000.0, 105_000.0, 2015),
            rec("6", "PHC", VesselType::Lpg, 80_000.0, 45_000.0, 2019),
            rec("7", "CND", VesselType::Lng, 139_999.0, 90_000.0, 2021),
        ];
        let yards = identify_suitable_shipyards(&records, &IdentifyParams::default());
        let ids: Vec<&str> = yards.iter().map(|y| y.yard_id.as_str()).collect();
        assert_eq!(ids, vec!["KRA"]);
        assert_eq!(yards[0].lng_witness.as_deref(), Some("1"));
        assert_eq!(yards[0].activity_witness.as_deref(), Some("2"));

        let former: Vec<String> = former_lng_yards(&records, &IdentifyParams::default())
            .into_iter()
            .map(|y| y.yard_id)
            .collect();
        assert_eq!(former, vec!["JPB".to_string(), "PHC".to_string()]);
    }

    #[test]
    fn averaging_is_mean_of_single_years() {
        let cgt = CgtParamTable::default();
        let records: Vec<VesselRecord> = (0..16)
            .map(|i| {
                rec(
                    &i.to_string(),
                    "KRA",
                    VesselType::Lng,
                    170_000.0,
                    90_000.0 + 1_000.0 * i as f64,
                    2013 + i % 10,
                )
            })
            .collect();
        let yards = survey_yards(&records, &IdentifyParams::default());
        let window = AveragingWindow::default();
        let full = annual_capacity_by_yard(&records, &yards, window, &cgt)[0].total_cgt();
        let singles: f64 = (2015..=2022)
            .map(|y| {
                annual_capacity_by_yard(&records, &yards, AveragingWindow { from: y, to: y }, &cgt)
                    [0]
                .total_cgt()
            })
            .sum::<f64>()
            / 8.0;
        assert!((full - singles).abs() <= 1e-9 * full);
    }

    #[test]
    fn idle_yard_has_empty_map() {
        let records = vec![rec("1", "KRA", VesselType::Lng, 174_000.0, 110_000.0, 2012)];
        let yards = survey_yards(&records, &IdentifyParams::default());
        let out = annual_capacity_by_yard(
            &records,
            &yards,
            AveragingWindow::default(),
            &CgtParamTable::default(),
        );
        assert!(out[0].avg_annual_cgt_by_type.is_empty());
        assert_eq!(out[0].total_cgt(), 0.0);
    }

    #[test]
    fn shares_sum_to_covered_fraction() {
        let cgt = CgtParamTable::default();
        let records = vec![
            rec("1", "KRA", VesselType::Lng, 174_000.0, 110_000.0, 2020),
            rec("2", "CNB", VesselType::Lng, 174_000.0, 110_000.0, 2021),
            rec("3", "XXC", VesselType::CrudeOil, 0.0, 150_000.0, 2021),
            rec("4", "XXC", VesselType::Container, 0.0, 150_000.0, 2021),
        ];
        let window = AveragingWindow::default();
        let yards = annual_capacity_by_yard(
            &records,
            &identify_suitable_shipyards(&records, &IdentifyParams::default()),
            window,
            &cgt,
        );
        let global = global_tanker_cgt(&records, window, &cgt);
        let shares = country_shares(&yards, global);
        let covered: f64 = shares.iter().map(|s| s.share).sum();
        let crude = records[2].cgt(&cgt) / 8.0;
        assert!((covered - (global - crude) / global).abs() < 1e-12);
        let lng = lng_country_shares(&yards);
        assert!((lng["KR"] - 0.5).abs() < 1e-12);
    }
}
