//! Optimisers: DAGA, a generational GA and a (1+1)-ES.
//!
//! Each engine owns a [`RandomSource`] and an [`Evaluator`]; runs are
//! deterministic in (problem, config, seed).

mod daga;
mod es;
mod ga;

pub use daga::{daga_run, DagaConfig, DagaEngine, GenerationReport};
pub use es::{es_run, EsConfig};
pub use ga::{ga_run, mutate, two_point_crossover, GaConfig, GaEngine};

use crate::error::{Error, Result};
use crate::genome::{Genome, Individual};
use crate::problems::Problem;

/// Outcome of one optimisation run.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub seed: u64,
    pub best: Individual,
    /// `(evaluations, best fitness so far)`, one point per improvement.
    pub trace: Vec<(u64, f64)>,
    /// Evaluation count at which the optimum or target was first met.
    pub evals_to_optimum: Option<u64>,
    pub success: bool,
    pub evaluations: u64,
    pub generations: usize,
}

impl TrialResult {
    /// Best value in the problem's natural objective.
    pub fn best_objective(&self, problem: &Problem) -> f64 {
        problem.objective(self.best.fitness)
    }

    /// Evaluations to success, or the whole spend when unsuccessful.
    pub fn evals_to_success(&self) -> u64 {
        self.evals_to_optimum.unwrap_or(self.evaluations)
    }
}

/// Counts evaluations against a budget and tracks the best-so-far.
#[derive(Debug, Clone)]
pub struct Evaluator {
    problem: Problem,
    max_evaluations: u64,
    evaluations: u64,
    best: Option<Individual>,
    trace: Vec<(u64, f64)>,
    evals_to_optimum: Option<u64>,
}

impl Evaluator {
    pub fn new(problem: Problem, max_evaluations: u64) -> Result<Self> {
        if max_evaluations == 0 {
            return Err(Error::config("evaluation budget must be at least 1"));
        }
        Ok(Self {
            problem,
            max_evaluations,
            evaluations: 0,
            best: None,
            trace: Vec::new(),
            evals_to_optimum: None,
        })
    }

    pub fn problem(&self) -> &Problem {
        &self.problem
    }

    pub fn evaluate(&mut self, genome: Genome) -> Individual {
        let fitness = self.problem.evaluate(&genome);
        self.evaluations += 1;
        let improved = self.best.as_ref().is_none_or(|b| fitness > b.fitness);
        if improved {
            self.trace.push((self.evaluations, fitness));
            self.best = Some(Individual {
                genome: genome.clone(),
                fitness,
            });
        }
        if self.evals_to_optimum.is_none() && self.problem.is_success(fitness) {
            self.evals_to_optimum = Some(self.evaluations);
        }
        Individual { genome, fitness }
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    pub fn max_evaluations(&self) -> u64 {
        self.max_evaluations
    }

    pub fn remaining(&self) -> u64 {
        self.max_evaluations - self.evaluations
    }

    pub fn solved(&self) -> bool {
        self.evals_to_optimum.is_some()
    }

    /// Budget spent or optimum found.
    pub fn done(&self) -> bool {
        self.solved() || self.evaluations >= self.max_evaluations
    }

    pub fn best(&self) -> Option<&Individual> {
        self.best.as_ref()
    }

    pub fn finish(self, seed: u64, generations: usize) -> TrialResult {
        let best = self.best.expect("at least one evaluation");
        TrialResult {
            seed,
            success: self.evals_to_optimum.is_some(),
            best,
            trace: self.trace,
            evals_to_optimum: self.evals_to_optimum,
            evaluations: self.evaluations,
            generations,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluator_counts_and_traces() {
        let mut ev = Evaluator::new(Problem::maxones(4), 10).unwrap();
        for s in ["0000", "0100", "0010", "0111", "1111", "0000"] {
            ev.evaluate(Genome::from_bitstring(s).unwrap());
        }
        assert_eq!(ev.evaluations(), 6);
        assert!(ev.solved() && ev.done());
        let r = ev.finish(3, 0);
        assert_eq!(r.trace, vec![(1, 0.0), (2, 1.0), (4, 3.0), (5, 4.0)]);
        assert_eq!(r.evals_to_optimum, Some(5));
        assert_eq!(r.evals_to_success(), 5);
        assert!(r.success);
    }

    #[test]
    fn zero_budget_rejected() {
        assert!(Evaluator::new(Problem::maxones(4), 0).unwrap_err().is_config());
    }
}
