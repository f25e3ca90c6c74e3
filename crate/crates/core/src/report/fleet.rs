//! Yard identification and regression reports.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fleet::yards::{
    former_lng_yards, global_tanker_cgt, lng_country_shares, totals_by_type, CountryShare,
};
use crate::fleet::{
    annual_capacity_by_yard, country_shares, identify_suitable_shipyards, regression_points,
    AveragingWindow, FitFamily, IdentifyParams, RegressionFit, ResidualSummary, ShipyardProfile,
    VesselRecord,
};
use crate::fleet::{fit_linear, fit_power};
use crate::tanker::{CgtParamTable, VesselType};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentifyReport {
    pub params: IdentifyParams,
    pub window: AveragingWindow,
    pub records: usize,
    /// Annual tanker CGT of every yard in the data.
    pub global_tanker_cgt: f64,
    pub yards: Vec<ShipyardProfile>,
    pub totals_by_type: BTreeMap<VesselType, f64>,
    pub country_shares: Vec<CountryShare>,
    /// Share of the identified yards' LNG output per country.
    pub lng_country_shares: BTreeMap<String, f64>,
    /// Yards with large LNG experience that fail the filters.
    pub former_lng_yards: Vec<String>,
}

pub fn identify_report(
    records: &[VesselRecord],
    params: &IdentifyParams,
    window: AveragingWindow,
    cgt: &CgtParamTable<f64>,
) -> IdentifyReport {
    let yards = annual_capacity_by_yard(
        records,
        &identify_suitable_shipyards(records, params),
        window,
        cgt,
    );
    let global = global_tanker_cgt(records, window, cgt);
    IdentifyReport {
        params: *params,
        window,
        records: records.len(),
        global_tanker_cgt: global,
        totals_by_type: totals_by_type(&yards),
        country_shares: country_shares(&yards, global),
        lng_country_shares: lng_country_shares(&yards),
        former_lng_yards: former_lng_yards(records, params)
            .into_iter()
            .map(|y| y.yard_id)
            .collect(),
        yards,
    }
}

impl IdentifyReport {
    /// One row per yard with annual CGT per vessel type.
    pub fn write_yards_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let mut header = vec!["yard".to_string(), "country".to_string()];
        header.extend(VesselType::ALL.iter().map(|t| t.as_str().to_string()));
        header.push("tanker_total".into());
        out.write_record(&header)?;
        for y in &self.yards {
            let mut rec = vec![y.yard_id.clone(), y.country.clone()];
            rec.extend(VesselType::ALL.iter().map(|t| {
                y.avg_annual_cgt_by_type
                    .get(t)
                    .copied()
                    .unwrap_or(0.0)
                    .to_string()
            }));
            rec.push(y.tanker_cgt().to_string());
            out.write_record(&rec)?;
        }
        out.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn write_shares_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["country", "yards", "tanker_cgt", "share"])?;
        for s in &self.country_shares {
            out.write_record([
                s.country.clone(),
                s.yards.to_string(),
                s.tanker_cgt.to_string(),
                s.share.to_string(),
            ])?;
        }
        out.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub family: FitFamily,
    pub fit: RegressionFit<f64>,
    pub residuals: ResidualSummary<f64>,
}

pub fn fit_report(
    records: &[VesselRecord],
    family: FitFamily,
    cgt: &CgtParamTable<f64>,
) -> Result<FitReport> {
    let pts = regression_points(records, family, cgt);
    let fit = match family {
        FitFamily::MembraneLinear => fit_linear(&pts)?,
        FitFamily::IndependentPower => fit_power(&pts)?,
    };
    Ok(FitReport {
        family,
        residuals: fit.residual_summary(&pts),
        fit,
    })
}
