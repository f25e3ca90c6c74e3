//! Seeded synthetic fleet generator.
//!
//! A config is a list of batches. Each batch describes vessels of one type
//! delivered by one yard over a range of years, with a capacity distribution,
//! an effort model and optionally a CGT total the batch must add up to.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::record::{TankSystem, VesselRecord, MIN_GROSS_TONNAGE};
use crate::error::{Error, Result};
use crate::tanker::{
    cgt_from_capacity_independent, cgt_from_capacity_membrane, CgtParamTable, VesselType,
    MEMBRANE_SLOPE,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "dist", rename_all = "snake_case")]
pub enum CapacityDist {
    Fixed { value: f64 },
    Uniform { min: f64, max: f64 },
    LogUniform { min: f64, max: f64 },
}

impl CapacityDist {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            CapacityDist::Fixed { value } => value >= 0.0 && value.is_finite(),
            CapacityDist::Uniform { min, max } => min >= 0.0 && max >= min && max.is_finite(),
            CapacityDist::LogUniform { min, max } => min > 0.0 && max >= min && max.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!(
                "invalid capacity distribution {self:?}"
            )))
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        match *self {
            CapacityDist::Fixed { value } => value,
            CapacityDist::Uniform { min, max } => min + (max - min) * rng.random::<f64>(),
            CapacityDist::LogUniform { min, max } => {
                (min.ln() + (max.ln() - min.ln()) * rng.random::<f64>()).exp()
            }
        }
    }
}

/// How a vessel's construction effort, and from it its gross tonnage, is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum CgtModel {
    /// Linear membrane curve plus normal noise in CGT.
    MembraneLng { noise_sd: f64 },
    /// Power-law independent-tank curve with log-normal noise.
    IndependentPower { noise_log_sd: f64 },
    /// Gross tonnage drawn uniformly, effort from the vessel type's coefficients.
    GtRange { min: f64, max: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Batch {
    pub yard: String,
    pub country: String,
    pub vessel_type: VesselType,
    pub tank_system: TankSystem,
    /// Inclusive delivery years. Vessels are spread evenly across them.
    pub years: [i32; 2],
    pub count: usize,
    pub capacity: CapacityDist,
    pub cgt: CgtModel,
    /// CGT total the batch is rescaled to hit.
    #[serde(default)]
    pub target_cgt: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// First IMO-style id handed out.
    #[serde(default = "default_first_id")]
    pub first_id: u64,
    #[serde(default, rename = "batch")]
    pub batches: Vec<Batch>,
}

fn default_seed() -> u64 {
    20_240_601
}

fn default_first_id() -> u64 {
    9_000_001
}

impl SynthConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: SynthConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, b) in self.batches.iter().enumerate() {
            let ctx = |msg: String| Error::Config(format!("batch {i} ({}): {msg}", b.yard));
            if b.years[1] < b.years[0] {
                return Err(ctx(format!("year range {:?} is reversed", b.years)));
            }
            b.capacity.validate().map_err(|e| ctx(e.to_string()))?;
            match b.cgt {
                CgtModel::MembraneLng { noise_sd } if !(noise_sd >= 0.0) => {
                    return Err(ctx("noise_sd must be non-negative".into()))
                }
                CgtModel::IndependentPower { noise_log_sd } if !(noise_log_sd >= 0.0) => {
                    return Err(ctx("noise_log_sd must be non-negative".into()))
                }
                CgtModel::GtRange { min, max } if !(min >= MIN_GROSS_TONNAGE && max >= min) => {
                    return Err(ctx(format!("gross tonnage range [{min}, {max}] invalid")))
                }
                CgtModel::IndependentPower { .. } if matches!(b.capacity, CapacityDist::Fixed { value } if value <= 0.0) => {
                    return Err(ctx("power-law effort needs positive capacity".into()))
                }
                _ => {}
            }
            if let Some(t) = b.target_cgt {
                if !(t > 0.0) || b.count == 0 {
                    return Err(ctx("target_cgt needs a positive value and count".into()));
                }
            }
        }
        Ok(())
    }
}

struct Draft {
    capacity: f64,
    cgt: f64,
    year: i32,
}

fn draft_batch(b: &Batch, params: &CgtParamTable<f64>, rng: &mut ChaCha8Rng) -> Result<Vec<Draft>> {
    let span = (b.years[1] - b.years[0] + 1) as usize;
    let class = params.get(b.vessel_type);
    let mut drafts = Vec::with_capacity(b.count);
    for i in 0..b.count {
        let year = b.years[0] + (i * span / b.count.max(1)) as i32;
        let capacity = b.capacity.sample(rng);
        let cgt = match b.cgt {
            CgtModel::MembraneLng { noise_sd } => {
                let noise = Normal::new(0.0, noise_sd.max(f64::MIN_POSITIVE))
                    .map_err(|e| Error::Config(e.to_string()))?;
                cgt_from_capacity_membrane(capacity)? + noise.sample(rng)
            }
            CgtModel::IndependentPower { noise_log_sd } => {
                let noise = Normal::new(0.0, noise_log_sd.max(f64::MIN_POSITIVE))
                    .map_err(|e| Error::Config(e.to_string()))?;
                cgt_from_capacity_independent(capacity)? * noise.sample(rng).exp()
            }
            CgtModel::GtRange { min, max } => {
                let gt = min + (max - min) * rng.random::<f64>();
                class.cgt(gt)?
            }
        };
        drafts.push(Draft {
            capacity,
            cgt,
            year,
        });
    }

    if let Some(target) = b.target_cgt {
        let sum: f64 = drafts.iter().map(|d| d.cgt).sum();
        match b.cgt {
            // Slide along the curve so the fitted slope survives.
            CgtModel::MembraneLng { .. } => {
                let shift = (target - sum) / drafts.len() as f64;
                for d in &mut drafts {
                    d.cgt += shift;
                    d.capacity += shift / MEMBRANE_SLOPE;
                }
            }
            _ => {
                let k = target / sum;
                for d in &mut drafts {
                    d.cgt *= k;
                }
            }
        }
    }
    if let Some(d) = drafts.iter().find(|d| !(d.cgt > 0.0)) {
        return Err(Error::Config(format!(
            "batch at {} produced non-positive effort {}",
            b.yard, d.cgt
        )));
    }
    Ok(drafts)
}

/// Generates the fleet described by `config`. Identical config and seed give
/// identical output.
pub fn generate_synthetic_fleet(
    config: &SynthConfig,
    seed: u64,
    params: &CgtParamTable<f64>,
) -> Result<Vec<VesselRecord>> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::new();
    let mut next_id = config.first_id;
    for b in &config.batches {
        let class = params.get(b.vessel_type);
        for d in draft_batch(b, params, &mut rng)? {
            let gt = class.gt(d.cgt)?.round().max(MIN_GROSS_TONNAGE);
            records.push(VesselRecord {
                imo_id: next_id.to_string(),
                vessel_type: b.vessel_type,
                tank_system: b.tank_system,
                gross_tonnage: gt,
                cargo_capacity: d.capacity.round(),
                build_year: d.year,
                builder_yard: b.yard.clone(),
                builder_country: b.country.clone(),
            });
            next_id += 1;
        }
    }
    Ok(records)
}
