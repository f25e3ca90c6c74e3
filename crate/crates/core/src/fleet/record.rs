//! Fleet CSV schema, parser and writer.

use std::fmt;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tanker::{CgtParamTable, VesselType};

/// Column order of the fleet CSV.
pub const FLEET_HEADER: [&str; 8] = [
    "imo_id",
    "vessel_type",
    "tank_system",
    "gross_tonnage",
    "cargo_capacity_m3",
    "build_year",
    "builder_yard",
    "builder_country",
];

/// Smallest vessel covered by the IMO numbering scheme, GT.
pub const MIN_GROSS_TONNAGE: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TankSystem {
    Membrane,
    Independent,
    Other,
    Unknown,
}

impl TankSystem {
    pub fn as_str(self) -> &'static str {
        match self {
            TankSystem::Membrane => "membrane",
            TankSystem::Independent => "independent",
            TankSystem::Other => "other",
            TankSystem::Unknown => "unknown",
        }
    }
}

impl fmt::Display for TankSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TankSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "membrane" => Ok(TankSystem::Membrane),
            "independent" => Ok(TankSystem::Independent),
            "other" => Ok(TankSystem::Other),
            "unknown" | "" => Ok(TankSystem::Unknown),
            _ => Err(Error::Schema(format!("unknown tank system `{s}`"))),
        }
    }
}

/// One ship of a fleet dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VesselRecord {
    pub imo_id: String,
    pub vessel_type: VesselType,
    pub tank_system: TankSystem,
    pub gross_tonnage: f64,
    /// m³; zero for non-gas carriers, TEU-equivalent volume for container ships.
    pub cargo_capacity: f64,
    pub build_year: i32,
    pub builder_yard: String,
    /// ISO 3166-1 alpha-2 code.
    pub builder_country: String,
}

impl VesselRecord {
    /// Construction effort of this vessel from its gross tonnage.
    pub fn cgt(&self, params: &CgtParamTable<f64>) -> f64 {
        params
            .get(self.vessel_type)
            .cgt(self.gross_tonnage)
            .unwrap_or(0.0)
    }

    pub fn is_large_lng(&self, min_capacity: f64) -> bool {
        self.vessel_type == VesselType::Lng && self.cargo_capacity >= min_capacity
    }
}

/// Validation bounds applied while parsing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParseOptions {
    pub min_gross_tonnage: f64,
    pub min_build_year: i32,
    pub max_build_year: i32,
}

impl Default for ParseOptions {
    fn default() -> Self {
        Self {
            min_gross_tonnage: MIN_GROSS_TONNAGE,
            min_build_year: 1950,
            max_build_year: 2022,
        }
    }
}

/// A row that failed validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reject {
    pub line: u64,
    pub reason: String,
}

impl fmt::Display for Reject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.reason)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParsedFleet {
    pub records: Vec<VesselRecord>,
    pub rejects: Vec<Reject>,
}

impl ParsedFleet {
    /// Rejects report, one `line N: reason` entry per line.
    pub fn rejects_report(&self) -> String {
        self.rejects.iter().map(|r| format!("{r}\n")).collect()
    }
}

pub fn parse_fleet(path: impl AsRef<Path>) -> Result<ParsedFleet> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_fleet_reader(file, ParseOptions::default())
}

pub fn parse_fleet_reader<R: Read>(reader: R, opts: ParseOptions) -> Result<ParsedFleet> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = rdr.headers()?.clone();
    let found: Vec<&str> = header.iter().collect();
    if found != FLEET_HEADER {
        return Err(Error::Schema(format!(
            "expected header `{}`, found `{}`",
            FLEET_HEADER.join(","),
            found.join(",")
        )));
    }

    let mut parsed = ParsedFleet::default();
    for row in rdr.records() {
        let row = match row {
            Ok(r) => r,
            Err(e) => {
                let line = e.position().map(|p| p.line()).unwrap_or(0);
                parsed.rejects.push(Reject {
                    line,
                    reason: format!("unreadable row: {e}"),
                });
                continue;
            }
        };
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        match parse_row(&row, &opts) {
            Ok(rec) => parsed.records.push(rec),
            Err(reason) => parsed.rejects.push(Reject { line, reason }),
        }
    }
    Ok(parsed)
}

fn parse_row(
    row: &csv::StringRecord,
    opts: &ParseOptions,
) -> std::result::Result<VesselRecord, String> {
    if row.len() != FLEET_HEADER.len() {
        return Err(format!(
            "expected {} fields, found {}",
            FLEET_HEADER.len(),
            row.len()
        ));
    }
    let field = |i: usize| row.get(i).unwrap_or_default();
    let number = |i: usize| -> std::result::Result<f64, String> {
        field(i)
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("{} `{}` is not a number", FLEET_HEADER[i], field(i)))
    };

    let imo_id = field(0).to_string();
    if imo_id.is_empty() {
        return Err("imo_id is empty".into());
    }
    let vessel_type: VesselType = field(1).parse().map_err(|e: Error| e.to_string())?;
    let tank_system: TankSystem = field(2).parse().map_err(|e: Error| e.to_string())?;
    let gross_tonnage = number(3)?;
    if gross_tonnage < opts.min_gross_tonnage {
        return Err(format!(
            "gross_tonnage {gross_tonnage} below the {} GT threshold",
            opts.min_gross_tonnage
        ));
    }
    let cargo_capacity = number(4)?;
    if cargo_capacity < 0.0 {
        return Err(format!("cargo_capacity_m3 {cargo_capacity} is negative"));
    }
    let build_year: i32 = field(5)
        .parse()
        .map_err(|_| format!("build_year `{}` is not a year", field(5)))?;
    if build_year < opts.min_build_year || build_year > opts.max_build_year {
        return Err(format!(
            "build_year {build_year} outside [{}, {}]",
            opts.min_build_year, opts.max_build_year
        ));
    }
    let builder_yard = field(6).to_string();
    if builder_yard.is_empty() {
        return Err("builder_yard is empty".into());
    }
    let builder_country = field(7).to_string();
    if builder_country.len() != 2 || !builder_country.chars().all(|c| c.is_ascii_uppercase()) {
        return Err(format!(
            "builder_country `{builder_country}` is not an ISO alpha-2 code"
        ));
    }
    Ok(VesselRecord {
        imo_id,
        vessel_type,
        tank_system,
        gross_tonnage,
        cargo_capacity,
        build_year,
        builder_yard,
        builder_country,
    })
}

/// Writes records in the fleet CSV schema.
pub fn write_fleet<W: Write>(records: &[VesselRecord], writer: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().from_writer(writer);
    w.write_record(FLEET_HEADER)?;
    for r in records {
        w.write_record([
            r.imo_id.as_str(),
            r.vessel_type.as_str(),
            r.tank_system.as_str(),
            &format_number(r.gross_tonnage),
            &format_number(r.cargo_capacity),
            &r.build_year.to_string(),
            r.builder_yard.as_str(),
            r.builder_country.as_str(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<fleet writer>", e))?;
    Ok(())
}

fn format_number(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}
