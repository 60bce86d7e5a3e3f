use serde::{Deserialize, Serialize};

use crate::autoencoder::{CorruptionSpec, DenoisingAutoencoder, Loss, TrainConfig};
use crate::error::{Error, Result};
use crate::genome::Genome;
use crate::rng::RandomSource;
use crate::variation::bernoulli_probability;

/// Largest genome length for which the full table is built.
pub const MAX_TRANSITION_BITS: usize = 12;

/// Exact offspring distribution of a binary network for every input genome.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    n: usize,
    /// Row-major `2^n x 2^n`; entry `(a, b)` is `P(offspring = b | parent = a)`.
    entries: Vec<f64>,
    /// Column means: offspring distribution for a uniformly random parent.
    marginal: Vec<f64>,
}

impl TransitionMatrix {
    pub fn bits(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        1 << self.n
    }

    pub fn get(&self, from: usize, to: usize) -> f64 {
        self.entries[from * self.size() + to]
    }

    pub fn row(&self, from: usize) -> &[f64] {
        let s = self.size();
        &self.entries[from * s..(from + 1) * s]
    }

    pub fn marginal(&self) -> &[f64] {
        &self.marginal
    }

    /// Indices of the `k` most probable offspring; ties go to the lower index.
    pub fn top_marginal(&self, k: usize) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.size()).collect();
        idx.sort_by(|&a, &b| self.marginal[b].total_cmp(&self.marginal[a]).then(a.cmp(&b)));
        idx.truncate(k);
        idx
    }
}

pub fn build_transition_matrix(dae: &DenoisingAutoencoder) -> Result<TransitionMatrix> {
    let n = dae.visible();
    if n > MAX_TRANSITION_BITS {
        return Err(Error::InvalidInput(format!(
            "transition matrix over {n} bits refused (limit {MAX_TRANSITION_BITS})"
        )));
    }
    let size = 1usize << n;
    let targets: Vec<Genome> = (0..size).map(|i| Genome::from_index(i, n)).collect();
    let mut entries = Vec::with_capacity(size * size);
    for g in &targets {
        let x: Vec<f64> = g.as_bits().expect("binary").iter().map(|&b| b as u8 as f64).collect();
        let z = dae.reconstruct(&x)?;
        entries.extend(targets.iter().map(|t| bernoulli_probability(&z, t.as_bits().expect("binary"))));
    }
    let marginal = (0..size)
        .map(|to| (0..size).map(|from| entries[from * size + to]).sum::<f64>() / size as f64)
        .collect();
    Ok(TransitionMatrix { n, entries, marginal })
}

/// Settings for the structure-learning demonstration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureDemo {
    pub hidden: usize,
    pub epochs: usize,
    pub learning_rate: f64,
    pub corruption_rate: f64,
    /// Training genomes as big-endian indices.
    pub targets: Vec<usize>,
    pub bits: usize,
}

impl Default for StructureDemo {
    fn default() -> Self {
        Self {
            hidden: 6,
            epochs: 1000,
            learning_rate: 0.1,
            corruption_rate: 0.05,
            targets: vec![0, 7, 63],
            bits: 6,
        }
    }
}

impl StructureDemo {
    /// Train a fresh network on the targets.
    pub fn train(&self, rng: &mut RandomSource) -> Result<DenoisingAutoencoder> {
        if self.bits == 0 || self.bits > MAX_TRANSITION_BITS {
            return Err(Error::config(format!("bits must be in 1..={MAX_TRANSITION_BITS}")));
        }
        if let Some(t) = self.targets.iter().find(|&&t| t >> self.bits != 0) {
            return Err(Error::config(format!("target {t} does not fit in {} bits", self.bits)));
        }
        let mut dae = DenoisingAutoencoder::new(self.bits, self.hidden, rng)?;
        let batch: Vec<Vec<f64>> = self
            .targets
            .iter()
            .map(|&t| {
                Genome::from_index(t, self.bits)
                    .as_bits()
                    .expect("binary")
                    .iter()
                    .map(|&b| b as u8 as f64)
                    .collect()
            })
            .collect();
        let cfg = TrainConfig {
            epochs: self.epochs,
            learning_rate: self.learning_rate,
            corruption: CorruptionSpec::bit_flip(self.corruption_rate),
            minibatch_size: Some(1),
            loss: Loss::CrossEntropy,
        };
        dae.train(&batch, &cfg, rng)?;
        Ok(dae)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_net_is_uniform() {
        let m = build_transition_matrix(&DenoisingAutoencoder::zeros(6, 6).unwrap()).unwrap();
        assert_eq!(m.size(), 64);
        for a in 0..64 {
            for b in 0..64 {
                assert!((m.get(a, b) - 1.0 / 64.0).abs() < 1e-15);
            }
        }
        assert!(m.marginal().iter().all(|p| (p - 1.0 / 64.0).abs() < 1e-15));
    }

    #[test]
    fn rows_are_distributions() {
        let mut rng = RandomSource::new(1);
        for n in [1, 3, 6, 8] {
            let dae = DenoisingAutoencoder::new(n, 5, &mut rng).unwrap();
            let m = build_transition_matrix(&dae).unwrap();
            for a in 0..m.size() {
                assert!((m.row(a).iter().sum::<f64>() - 1.0).abs() < 1e-9);
            }
            assert!((m.marginal().iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn refuses_large_tables() {
        let dae = DenoisingAutoencoder::zeros(13, 2).unwrap();
        assert!(build_transition_matrix(&dae).is_err());
    }

    #[test]
    fn top_marginal_tie_order() {
        let m = build_transition_matrix(&DenoisingAutoencoder::zeros(3, 2).unwrap()).unwrap();
        assert_eq!(m.top_marginal(3), vec![0, 1, 2]);
    }

    #[test]
    fn demo_rejects_oversized_target() {
        let demo = StructureDemo {
            targets: vec![64],
            ..StructureDemo::default()
        };
        assert!(demo.train(&mut RandomSource::new(1)).is_err());
    }
}
