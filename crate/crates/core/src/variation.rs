//! Turning decoder outputs into offspring.
//!
//! The autoencoder always works in `[0, 1]^n`. Bit strings map to 0/1
//! vectors directly; continuous genomes go through a per-dimension affine
//! [`DomainScaler`] and only return to problem coordinates when sampled.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::autoencoder::DenoisingAutoencoder;
use crate::error::{Error, Result};
use crate::genome::{Genome, GenomeSchema};
use crate::rng::RandomSource;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum SamplerConfig {
    /// Bit `i` is 1 with probability `z_i`.
    Bernoulli,
    /// `z + N(0, sigma_squared I)` in scaled space, clamped to `[0, 1]`.
    Gaussian { sigma_squared: f64 },
}

impl SamplerConfig {
    pub fn for_schema(schema: &GenomeSchema, sigma_squared: f64) -> Self {
        if schema.is_binary() {
            SamplerConfig::Bernoulli
        } else {
            SamplerConfig::Gaussian { sigma_squared }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let SamplerConfig::Gaussian { sigma_squared } = self {
            if !(*sigma_squared >= 0.0 && sigma_squared.is_finite()) {
                return Err(Error::config(format!("sigma^2 {sigma_squared} must be non-negative")));
            }
        }
        Ok(())
    }
}

/// Affine map between problem bounds and the unit box.
#[derive(Debug)]
pub struct DomainScaler {
    lower: Vec<f64>,
    upper: Vec<f64>,
    clamped: AtomicU64,
}

impl Clone for DomainScaler {
    fn clone(&self) -> Self {
        Self {
            lower: self.lower.clone(),
            upper: self.upper.clone(),
            clamped: AtomicU64::new(self.clamped.load(Ordering::Relaxed)),
        }
    }
}

impl DomainScaler {
    pub fn new(bounds: &[(f64, f64)]) -> Result<Self> {
        if let Some((i, (lo, hi))) = bounds.iter().enumerate().find(|(_, (lo, hi))| !(lo < hi)) {
            return Err(Error::config(format!("dimension {i}: lower bound {lo} not below upper {hi}")));
        }
        Ok(Self {
            lower: bounds.iter().map(|b| b.0).collect(),
            upper: bounds.iter().map(|b| b.1).collect(),
            clamped: AtomicU64::new(0),
        })
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    /// Problem coordinates to `[0, 1]`; out-of-bounds components are clamped
    /// and counted in [`DomainScaler::clamp_warnings`].
    pub fn scale(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(&v, (&lo, &hi))| {
                let s = (v - lo) / (hi - lo);
                if !(0.0..=1.0).contains(&s) {
                    self.clamped.fetch_add(1, Ordering::Relaxed);
                }
                s.clamp(0.0, 1.0)
            })
            .collect()
    }

    pub fn unscale(&self, s: &[f64]) -> Vec<f64> {
        s.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(&v, (&lo, &hi))| (lo + v.clamp(0.0, 1.0) * (hi - lo)).clamp(lo, hi))
            .collect()
    }

    pub fn clamp_warnings(&self) -> u64 {
        self.clamped.load(Ordering::Relaxed)
    }
}

/// How a problem's genomes are represented to the autoencoder.
#[derive(Debug, Clone)]
pub enum ModelSpace {
    Binary { len: usize },
    Scaled(DomainScaler),
}

impl ModelSpace {
    pub fn for_schema(schema: &GenomeSchema) -> Result<Self> {
        Ok(match schema {
            GenomeSchema::Binary { len } => ModelSpace::Binary { len: *len },
            GenomeSchema::Continuous { bounds } => ModelSpace::Scaled(DomainScaler::new(bounds)?),
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            ModelSpace::Binary { len } => *len,
            ModelSpace::Scaled(s) => s.dim(),
        }
    }

    pub fn to_model(&self, g: &Genome) -> Result<Vec<f64>> {
        match (self, g) {
            (ModelSpace::Binary { len }, Genome::Binary(bits)) if bits.len() == *len => {
                Ok(bits.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect())
            }
            (ModelSpace::Scaled(s), Genome::Continuous(v)) if v.len() == s.dim() => Ok(s.scale(v)),
            _ => Err(Error::type_mismatch("genome does not belong to this model space")),
        }
    }
}

/// Draw one offspring from decoder output `z`.
pub fn sample_offspring(z: &[f64], cfg: &SamplerConfig, space: &ModelSpace, rng: &mut RandomSource) -> Result<Genome> {
    if z.len() != space.dim() {
        return Err(Error::type_mismatch(format!(
            "decoder output has {} components, model space {}",
            z.len(),
            space.dim()
        )));
    }
    match (cfg, space) {
        (SamplerConfig::Bernoulli, ModelSpace::Binary { .. }) => {
            Ok(Genome::Binary(z.iter().map(|&p| rng.random::<f64>() < p).collect()))
        }
        (SamplerConfig::Gaussian { sigma_squared }, ModelSpace::Scaled(scaler)) => {
            let noise = Normal::new(0.0, sigma_squared.sqrt())
                .map_err(|e| Error::config(format!("bad sigma^2 {sigma_squared}: {e}")))?;
            let s: Vec<f64> = z
                .iter()
                .map(|&m| {
                    let d = if *sigma_squared > 0.0 { noise.sample(rng) } else { 0.0 };
                    (m + d).clamp(0.0, 1.0)
                })
                .collect();
            Ok(Genome::Continuous(scaler.unscale(&s)))
        }
        (SamplerConfig::Bernoulli, ModelSpace::Scaled(_)) => {
            Err(Error::type_mismatch("Bernoulli sampling requested for a continuous problem"))
        }
        (SamplerConfig::Gaussian { .. }, ModelSpace::Binary { .. }) => {
            Err(Error::type_mismatch("Gaussian sampling requested for a binary problem"))
        }
    }
}

/// Probability that Bernoulli sampling from `z` yields exactly `bits`.
pub fn bernoulli_probability(z: &[f64], bits: &[bool]) -> f64 {
    z.iter()
        .zip(bits)
        .map(|(&p, &b)| if b { p } else { 1.0 - p })
        .product()
}

/// Exact probability that an offspring of `from` is `to`.
pub fn transition_probability(dae: &DenoisingAutoencoder, from: &Genome, to: &Genome) -> Result<f64> {
    let space = ModelSpace::Binary { len: dae.visible() };
    let x = space.to_model(from)?;
    let to_bits = to
        .as_bits()
        .filter(|b| b.len() == dae.visible())
        .ok_or_else(|| Error::type_mismatch("transition target must be a binary genome of visible size"))?;
    let z = dae.reconstruct(&x)?;
    Ok(bernoulli_probability(&z, to_bits))
}
