use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::autoencoder::{CorruptionSpec, DenoisingAutoencoder, Loss, TrainConfig};
use crate::engines::{GaConfig, GaEngine};
use crate::error::Result;
use crate::genome::Genome;
use crate::problems::Problem;
use crate::rng::RandomSource;
use crate::selection::{truncation_select_unique, TruncationSpec};
use crate::variation::{sample_offspring, ModelSpace, SamplerConfig};

const NET_STREAM: u64 = 0x6e65;
const TRAIN_STREAM: u64 = 0x7472;
const INPUT_STREAM: u64 = 0x696e;
const SAMPLE_STREAM: u64 = 0x7361;

/// Corruption sweep on MaxOnes. A GA evolves the population while a network
/// is trained on its elites every generation; the network is then probed
/// with fixed random inputs. The GA trajectory depends only on the seed, so
/// rates differ only in how the network was trained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub bits: usize,
    pub population: usize,
    pub trunc_percent: f64,
    pub generations: usize,
    pub inputs: usize,
    pub hidden: usize,
    pub epochs: usize,
    pub learning_rate: f64,
    pub crossover_prob: f64,
    pub mutation_prob: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            bits: 20,
            population: 200,
            trunc_percent: 10.0,
            generations: 10,
            inputs: 100,
            hidden: 20,
            epochs: 20,
            learning_rate: 0.1,
            crossover_prob: 0.9,
            mutation_prob: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub rate: f64,
    /// `histogram[d]` counts offspring at Hamming distance `d` from the optimum.
    pub histogram: Vec<u64>,
    pub mean_distance: f64,
    /// Mean distance for each seed, in seed order.
    pub seed_means: Vec<f64>,
}

/// Distances to the all-ones optimum of offspring sampled from `inputs`
/// after training at corruption `rate`.
pub fn sweep_distances(rate: f64, seed: u64, cfg: &SweepConfig) -> Result<Vec<usize>> {
    // No optimum, so every GA run lasts the full number of generations.
    let problem = Problem::maxones(cfg.bits).with_optimum(f64::INFINITY);
    let ga = GaConfig {
        population: cfg.population,
        crossover_prob: cfg.crossover_prob,
        mutation_prob: cfg.mutation_prob,
        max_evaluations: u64::MAX,
        ..GaConfig::default()
    };
    let train = TrainConfig {
        epochs: cfg.epochs,
        learning_rate: cfg.learning_rate,
        corruption: CorruptionSpec::bit_flip(rate),
        minibatch_size: Some(1),
        loss: Loss::CrossEntropy,
    };
    let trunc = TruncationSpec::new(cfg.trunc_percent)?;
    let root = RandomSource::new(seed);
    let mut engine = GaEngine::new(&problem, &ga, root.clone())?;
    let mut net = DenoisingAutoencoder::new(cfg.bits, cfg.hidden, &mut root.fork(NET_STREAM))?;
    let mut train_rng = root.fork(TRAIN_STREAM);
    let space = ModelSpace::Binary { len: cfg.bits };
    for _ in 0..cfg.generations {
        engine.step()?;
        let batch = truncation_select_unique(engine.population(), &trunc)
            .iter()
            .map(|e| space.to_model(&e.genome))
            .collect::<Result<Vec<_>>>()?;
        net.train(&batch, &train, &mut train_rng)?;
    }
    let mut inputs = root.fork(INPUT_STREAM);
    let mut sampling = root.fork(SAMPLE_STREAM);
    (0..cfg.inputs)
        .map(|_| {
            let x: Vec<f64> = (0..cfg.bits).map(|_| inputs.random_bool(0.5) as u8 as f64).collect();
            let z = net.reconstruct(&x)?;
            let child = sample_offspring(&z, &SamplerConfig::Bernoulli, &space, &mut sampling)?;
            let Genome::Binary(bits) = child else { unreachable!() };
            Ok(bits.iter().filter(|&&b| !b).count())
        })
        .collect()
}

pub fn corruption_sweep(rates: &[f64], seeds: &[u64], cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    rates
        .iter()
        .map(|&rate| {
            let mut histogram = vec![0u64; cfg.bits + 1];
            let mut seed_means = Vec::with_capacity(seeds.len());
            let (mut total, mut count) = (0usize, 0usize);
            for &seed in seeds {
                let d = sweep_distances(rate, seed, cfg)?;
                for &v in &d {
                    histogram[v] += 1;
                }
                let s: usize = d.iter().sum();
                seed_means.push(s as f64 / d.len().max(1) as f64);
                total += s;
                count += d.len();
            }
            Ok(SweepRow {
                rate,
                histogram,
                mean_distance: if count == 0 { 0.0 } else { total as f64 / count as f64 },
                seed_means,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> SweepConfig {
        SweepConfig {
            bits: 10,
            population: 40,
            generations: 2,
            inputs: 30,
            hidden: 8,
            epochs: 3,
            ..SweepConfig::default()
        }
    }

    #[test]
    fn empty_rate_list() {
        assert!(corruption_sweep(&[], &[1, 2], &tiny()).unwrap().is_empty());
    }

    #[test]
    fn histogram_accounts_for_every_sample() {
        let rows = corruption_sweep(&[0.0, 0.5], &[1, 2], &tiny()).unwrap();
        for r in rows {
            assert_eq!(r.histogram.iter().sum::<u64>(), 60);
            assert_eq!(r.seed_means.len(), 2);
            let mean = r.histogram.iter().enumerate().map(|(d, &c)| d as f64 * c as f64).sum::<f64>() / 60.0;
            assert!((mean - r.mean_distance).abs() < 1e-12);
        }
    }

    #[test]
    fn sweep_is_deterministic() {
        assert_eq!(sweep_distances(0.3, 5, &tiny()).unwrap(), sweep_distances(0.3, 5, &tiny()).unwrap());
    }
}
