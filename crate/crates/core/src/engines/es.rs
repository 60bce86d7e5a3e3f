use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{Evaluator, TrialResult};
use crate::error::{Error, Result};
use crate::genome::{Genome, GenomeSchema};
use crate::problems::Problem;
use crate::rng::RandomSource;

/// (1+1)-ES with the 1/5 success rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EsConfig {
    /// Initial mutation step size in problem coordinates.
    pub initial_sigma: f64,
    /// Mutations between step-size updates; defaults to the problem dimension.
    pub adaptation_interval: Option<usize>,
    pub increase_factor: f64,
    pub decrease_factor: f64,
    pub max_evaluations: u64,
}

impl Default for EsConfig {
    fn default() -> Self {
        Self {
            initial_sigma: 1.0,
            adaptation_interval: None,
            increase_factor: 1.22,
            decrease_factor: 0.82,
            max_evaluations: 300_000,
        }
    }
}

impl EsConfig {
    pub fn problems(&self, problem: &Problem) -> Vec<String> {
        let mut errs = Vec::new();
        if problem.schema().is_binary() {
            errs.push(format!("the (1+1)-ES needs a continuous problem, {} is binary", problem.name()));
        }
        if !(self.initial_sigma > 0.0 && self.initial_sigma.is_finite()) {
            errs.push(format!("initial_sigma {} must be positive", self.initial_sigma));
        }
        if self.adaptation_interval == Some(0) {
            errs.push("adaptation_interval must be at least 1".into());
        }
        if !(self.increase_factor > 1.0 && 1.0 > self.decrease_factor && self.decrease_factor > 0.0) {
            errs.push(format!(
                "need increase_factor > 1 > decrease_factor > 0, got {} and {}",
                self.increase_factor, self.decrease_factor
            ));
        }
        if self.max_evaluations == 0 {
            errs.push("max_evaluations must be at least 1".into());
        }
        errs
    }

    pub fn validate(&self, problem: &Problem) -> Result<()> {
        let errs = self.problems(problem);
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidConfigs(errs))
        }
    }

    /// One application of the 1/5 rule after `successes` out of `window` mutations.
    pub fn adapt(&self, sigma: f64, successes: usize, window: usize) -> f64 {
        // Compare successes / window against 1/5 without rounding.
        match (5 * successes).cmp(&window) {
            std::cmp::Ordering::Greater => sigma * self.increase_factor,
            std::cmp::Ordering::Less => sigma * self.decrease_factor,
            std::cmp::Ordering::Equal => sigma,
        }
    }
}

pub fn es_run(problem: &Problem, cfg: &EsConfig, mut rng: RandomSource) -> Result<TrialResult> {
    cfg.validate(problem)?;
    let GenomeSchema::Continuous { bounds } = problem.schema() else {
        unreachable!("validated continuous")
    };
    let bounds = bounds.clone();
    let window = cfg.adaptation_interval.unwrap_or(bounds.len());
    let mut eval = Evaluator::new(problem.clone(), cfg.max_evaluations)?;
    let mut parent = eval.evaluate(problem.schema().random_genome(&mut rng));
    let mut sigma = cfg.initial_sigma;
    let (mut trials, mut successes, mut windows) = (0, 0, 0);
    while !eval.done() {
        let Genome::Continuous(x) = &parent.genome else { unreachable!() };
        let child: Vec<f64> = x
            .iter()
            .zip(&bounds)
            .map(|(&v, &(lo, hi))| {
                let z: f64 = StandardNormal.sample(&mut rng);
                (v + sigma * z).clamp(lo, hi)
            })
            .collect();
        let child = eval.evaluate(Genome::Continuous(child));
        trials += 1;
        if child.fitness >= parent.fitness {
            successes += usize::from(child.fitness > parent.fitness);
            parent = child;
        }
        if trials == window {
            sigma = cfg.adapt(sigma, successes, window);
            trials = 0;
            successes = 0;
            windows += 1;
        }
    }
    Ok(eval.finish(rng.seed(), windows))
}
