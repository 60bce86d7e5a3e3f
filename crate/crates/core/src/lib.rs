//! Denoising-autoencoder genetic algorithm (DAGA) with GA and (1+1)-ES
//! baselines, a benchmark suite, and analysis tooling.
//!
//! All engines maximise. A run is a deterministic function of the problem,
//! its configuration and a seed.

pub mod analysis;
pub mod autoencoder;
pub mod engines;
pub mod error;
pub mod experiment;
pub mod genome;
pub mod ingestion;
pub mod problems;
pub mod rng;
pub mod selection;
pub mod variation;

pub use error::{Error, Result};
pub use genome::{Genome, GenomeSchema, Individual, Population};
pub use problems::Problem;
pub use rng::RandomSource;
