//! Elite selection, parent selection and restricted tournament replacement.

use std::collections::HashSet;

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genome::{distance, Genome, Individual, Population};
use crate::rng::RandomSource;

/// Keep the fittest `percent`% of the population's unique genomes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TruncationSpec {
    pub percent: f64,
}

impl TruncationSpec {
    pub fn new(percent: f64) -> Result<Self> {
        let s = Self { percent };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.percent > 0.0 && self.percent <= 100.0 {
            Ok(())
        } else {
            Err(Error::config(format!("truncation percent {} outside (0, 100]", self.percent)))
        }
    }

    /// Number of elites kept from a population of `capacity`, at least 1.
    pub fn count(&self, capacity: usize) -> usize {
        let raw = (self.percent * capacity as f64 / 100.0 + 1e-9).floor() as usize;
        raw.clamp(1, capacity.max(1))
    }
}

/// RTR window size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RtrSpec {
    pub window: usize,
}

impl RtrSpec {
    pub fn new(window: usize) -> Result<Self> {
        if window == 0 {
            return Err(Error::config("RTR window must be at least 1"));
        }
        Ok(Self { window })
    }

    /// Parse a niching expression: `"N/A"` (none), a plain window `"100"`,
    /// or `"<pop>/<divisor>"` meaning a window of `pop / divisor`.
    pub fn parse(expr: &str) -> Result<Option<Self>> {
        let e = expr.trim();
        if e.eq_ignore_ascii_case("n/a") || e.eq_ignore_ascii_case("none") {
            return Ok(None);
        }
        let bad = || Error::config(format!("cannot parse niching expression {expr:?}"));
        let window = match e.split_once('/') {
            Some((pop, div)) => {
                let pop: usize = pop.trim().parse().map_err(|_| bad())?;
                let div: usize = div.trim().parse().map_err(|_| bad())?;
                if div == 0 {
                    return Err(bad());
                }
                pop / div
            }
            None => e.parse().map_err(|_| bad())?,
        };
        Self::new(window).map(Some)
    }
}

/// Hashable identity of a genome. `-0.0` and `0.0` share a key.
fn genome_key(g: &Genome) -> Vec<u64> {
    match g {
        Genome::Binary(bits) => {
            let mut key = vec![bits.len() as u64];
            key.extend(bits.chunks(64).map(|c| c.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)));
            key
        }
        Genome::Continuous(v) => {
            let mut key = vec![u64::MAX - v.len() as u64];
            key.extend(v.iter().map(|x| (x + 0.0).to_bits()));
            key
        }
    }
}

/// Deduplicate, sort by fitness (descending, stable in first-seen order)
/// and keep the top [`TruncationSpec::count`].
pub fn truncation_select_unique(pop: &Population, spec: &TruncationSpec) -> Vec<Individual> {
    let mut seen = HashSet::with_capacity(pop.len());
    let mut unique: Vec<&Individual> = pop
        .members
        .iter()
        .filter(|m| seen.insert(genome_key(&m.genome)))
        .collect();
    unique.sort_by(|a, b| b.fitness.total_cmp(&a.fitness));
    unique.truncate(spec.count(pop.capacity()));
    unique.into_iter().cloned().collect()
}

/// Index of the winner of a size-`k` tournament drawn with replacement.
/// Ties go to the first drawn.
pub fn tournament_index(pop: &Population, k: usize, rng: &mut RandomSource) -> usize {
    let n = pop.len();
    let mut best = rng.random_range(0..n);
    for _ in 1..k {
        let c = rng.random_range(0..n);
        if pop.members[c].fitness > pop.members[best].fitness {
            best = c;
        }
    }
    best
}

pub fn tournament_select<'p>(pop: &'p Population, k: usize, rng: &mut RandomSource) -> &'p Individual {
    &pop.members[tournament_index(pop, k, rng)]
}

/// Index of the member of `window` closest to `candidate`; ties go to the
/// lower population index.
fn closest_in_window(pop: &Population, candidate: &Genome, window: &[usize]) -> Result<usize> {
    let mut best: Option<(f64, usize)> = None;
    for &i in window {
        let d = distance(candidate, &pop.members[i].genome)?;
        best = match best {
            Some((bd, bi)) if bd < d || (bd == d && bi < i) => Some((bd, bi)),
            _ => Some((d, i)),
        };
    }
    Ok(best.expect("window is non-empty").1)
}

/// Restricted tournament replacement. Returns whether `candidate` was accepted.
pub fn rtr_replace(pop: &mut Population, candidate: Individual, spec: &RtrSpec, rng: &mut RandomSource) -> Result<bool> {
    if spec.window == 0 || spec.window > pop.len() {
        return Err(Error::config(format!(
            "RTR window {} must be in 1..={}",
            spec.window,
            pop.len()
        )));
    }
    let window = index::sample(rng, pop.len(), spec.window).into_vec();
    let target = closest_in_window(pop, &candidate.genome, &window)?;
    if candidate.fitness > pop.members[target].fitness {
        pop.members[target] = candidate;
        Ok(true)
    } else {
        Ok(false)
    }
}
