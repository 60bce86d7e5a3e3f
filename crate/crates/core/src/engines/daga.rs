use serde::{Deserialize, Serialize};

use super::{Evaluator, TrialResult};
use crate::autoencoder::{CorruptionKind, CorruptionSpec, DenoisingAutoencoder, Loss, TrainConfig};
use crate::error::{Error, Result};
use crate::genome::{Individual, Population};
use crate::problems::Problem;
use crate::rng::RandomSource;
use crate::selection::{rtr_replace, tournament_index, truncation_select_unique, RtrSpec, TruncationSpec};
use crate::variation::{sample_offspring, ModelSpace, SamplerConfig};

fn default_sigma_squared() -> f64 {
    1e-5
}

fn default_tournament_k() -> usize {
    2
}


/// DAGA parameters. Mirrors one row of the usual parameter tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DagaConfig {
    pub population: usize,
    /// Percentage of unique genomes used as the training set.
    pub trunc_percent: f64,
    pub epochs: usize,
    pub learning_rate: f64,
    pub corruption_rate: f64,
    /// Defaults to bit flips for binary problems and Gaussian jitter otherwise.
    #[serde(default)]
    pub corruption_kind: Option<CorruptionKind>,
    pub hidden_size: usize,
    /// RTR window; `None` means generational replacement.
    #[serde(default, with = "niching")]
    pub niching: Option<RtrSpec>,
    /// Sampling variance in scaled space (continuous problems only).
    #[serde(default = "default_sigma_squared")]
    pub sigma_squared: f64,
    #[serde(default = "default_tournament_k")]
    pub tournament_k: usize,
    pub max_evaluations: u64,
    #[serde(default)]
    pub reinit_weights: bool,
    /// Examples per SGD step; 0 (the default) trains on the whole elite set at once.
    #[serde(default)]
    pub minibatch_size: usize,
    /// Defaults to cross-entropy for binary problems, squared error otherwise.
    #[serde(default)]
    pub loss: Option<Loss>,
}

impl Default for DagaConfig {
    fn default() -> Self {
        Self {
            population: 200,
            trunc_percent: 10.0,
            epochs: 10,
            learning_rate: 0.1,
            corruption_rate: 0.05,
            corruption_kind: None,
            hidden_size: 20,
            niching: None,
            sigma_squared: default_sigma_squared(),
            tournament_k: default_tournament_k(),
            max_evaluations: 100_000,
            reinit_weights: false,
            minibatch_size: 0,
            loss: None,
        }
    }
}

impl DagaConfig {
    /// Every problem with this configuration for `problem`.
    pub fn problems(&self, problem: &Problem) -> Vec<String> {
        let mut errs = Vec::new();
        if self.population == 0 {
            errs.push("population must be at least 1".to_string());
        }
        if let Err(e) = TruncationSpec::new(self.trunc_percent) {
            errs.push(e.to_string());
        } else if self.niching.is_none()
            && (TruncationSpec { percent: self.trunc_percent }).count(self.population) >= self.population
        {
            errs.push("generational replacement needs a truncation percentage leaving room for offspring".into());
        }
        if let Err(e) = self.train_config(problem).validate() {
            errs.push(e.to_string());
        }
        if self.hidden_size == 0 {
            errs.push("hidden_size must be at least 1".into());
        }
        if let Some(r) = self.niching {
            if r.window == 0 || r.window > self.population {
                errs.push(format!("RTR window {} must be in 1..={}", r.window, self.population));
            }
        }
        if !(self.sigma_squared >= 0.0 && self.sigma_squared.is_finite()) {
            errs.push(format!("sigma_squared {} must be non-negative", self.sigma_squared));
        }
        if self.tournament_k == 0 {
            errs.push("tournament_k must be at least 1".into());
        }
        if self.max_evaluations < self.population as u64 {
            errs.push(format!(
                "max_evaluations {} is smaller than the population {}",
                self.max_evaluations, self.population
            ));
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

    pub fn train_config(&self, problem: &Problem) -> TrainConfig {
        let binary = problem.schema().is_binary();
        let kind = self.corruption_kind.unwrap_or(if binary {
            CorruptionKind::BitFlip
        } else {
            CorruptionKind::GaussianJitter
        });
        TrainConfig {
            epochs: self.epochs,
            learning_rate: self.learning_rate,
            corruption: CorruptionSpec {
                rate: self.corruption_rate,
                kind,
            },
            minibatch_size: (self.minibatch_size > 0).then_some(self.minibatch_size),
            loss: self
                .loss
                .unwrap_or(if binary { Loss::CrossEntropy } else { Loss::SquaredError }),
        }
    }
}

/// What happened during one generation.
#[derive(Debug, Clone, PartialEq)]
pub struct GenerationReport {
    pub generation: usize,
    pub evaluations: u64,
    pub best_fitness: f64,
    pub train_loss: f64,
    pub elites: usize,
    pub offspring: usize,
    /// Offspring accepted by RTR (all of them under generational replacement).
    pub accepted: usize,
    pub weights_before: u32,
    pub weights_after: u32,
}

/// DAGA as a resumable state machine, one [`DagaEngine::step`] per generation.
#[derive(Debug, Clone)]
pub struct DagaEngine {
    cfg: DagaConfig,
    space: ModelSpace,
    sampler: SamplerConfig,
    train: TrainConfig,
    trunc: TruncationSpec,
    dae: DenoisingAutoencoder,
    pop: Population,
    eval: Evaluator,
    rng: RandomSource,
    generation: usize,
}

impl DagaEngine {
    pub fn new(problem: &Problem, cfg: &DagaConfig, mut rng: RandomSource) -> Result<Self> {
        cfg.validate(problem)?;
        let dae = DenoisingAutoencoder::new(problem.schema().len(), cfg.hidden_size, &mut rng)?;
        Self::with_network(problem, cfg, dae, rng)
    }

    /// Start from an existing network; `cfg.hidden_size` is ignored.
    pub fn with_network(problem: &Problem, cfg: &DagaConfig, dae: DenoisingAutoencoder, mut rng: RandomSource) -> Result<Self> {
        let cfg = DagaConfig {
            hidden_size: dae.hidden(),
            ..cfg.clone()
        };
        cfg.validate(problem)?;
        let space = ModelSpace::for_schema(problem.schema())?;
        if dae.visible() != space.dim() {
            return Err(Error::config(format!(
                "network has {} visible units, problem has {} dimensions",
                dae.visible(),
                space.dim()
            )));
        }
        let mut eval = Evaluator::new(problem.clone(), cfg.max_evaluations)?;
        let schema = problem.schema().clone();
        let members = (0..cfg.population)
            .map(|_| eval.evaluate(schema.random_genome(&mut rng)))
            .collect();
        Ok(Self {
            sampler: SamplerConfig::for_schema(&schema, cfg.sigma_squared),
            train: cfg.train_config(problem),
            trunc: TruncationSpec::new(cfg.trunc_percent)?,
            space,
            dae,
            pop: Population::from_members(members)?,
            eval,
            rng,
            generation: 0,
            cfg,
        })
    }

    pub fn done(&self) -> bool {
        self.eval.done()
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    pub fn evaluations(&self) -> u64 {
        self.eval.evaluations()
    }

    pub fn population(&self) -> &Population {
        &self.pop
    }

    pub fn network(&self) -> &DenoisingAutoencoder {
        &self.dae
    }

    pub fn best(&self) -> &Individual {
        self.eval.best().expect("population evaluated")
    }

    /// Run one generation: select, train, sample, replace.
    pub fn step(&mut self) -> Result<GenerationReport> {
        if self.done() {
            return Err(Error::InvalidInput("run already finished".into()));
        }
        let elites = truncation_select_unique(&self.pop, &self.trunc);
        let batch = elites
            .iter()
            .map(|e| self.space.to_model(&e.genome))
            .collect::<Result<Vec<_>>>()?;
        if self.cfg.reinit_weights {
            self.dae = DenoisingAutoencoder::new(self.dae.visible(), self.dae.hidden(), &mut self.rng)?;
        }
        let weights_before = self.dae.fingerprint();
        let train_loss = self.dae.train(&batch, &self.train, &mut self.rng)?;
        let weights_after = self.dae.fingerprint();

        let capacity = self.pop.capacity();
        let wanted = match self.cfg.niching {
            Some(_) => capacity,
            None => capacity - elites.len(),
        };
        let mut offspring = Vec::with_capacity(wanted);
        while offspring.len() < wanted && !self.eval.done() {
            let parent = tournament_index(&self.pop, self.cfg.tournament_k, &mut self.rng);
            let x = self.space.to_model(&self.pop.members[parent].genome)?;
            let z = self.dae.reconstruct(&x)?;
            let child = sample_offspring(&z, &self.sampler, &self.space, &mut self.rng)?;
            offspring.push(self.eval.evaluate(child));
        }
        let produced = offspring.len();

        let accepted = match self.cfg.niching {
            Some(spec) => {
                let mut n = 0;
                for child in offspring {
                    n += rtr_replace(&mut self.pop, child, &spec, &mut self.rng)? as usize;
                }
                n
            }
            None => {
                let mut next = elites.clone();
                next.extend(offspring);
                // A run cut short mid-generation keeps old members to stay at capacity.
                let missing = capacity - next.len();
                next.extend(self.pop.members.iter().take(missing).cloned());
                self.pop = Population::from_members(next)?;
                produced
            }
        };
        self.generation += 1;
        Ok(GenerationReport {
            generation: self.generation,
            evaluations: self.eval.evaluations(),
            best_fitness: self.best().fitness,
            train_loss,
            elites: elites.len(),
            offspring: produced,
            accepted,
            weights_before,
            weights_after,
        })
    }

    /// Step until the optimum is found or the budget is spent.
    pub fn run(self) -> Result<(TrialResult, DenoisingAutoencoder)> {
        self.run_observed(|_, _| {})
    }

    pub fn run_observed(
        mut self,
        mut observer: impl FnMut(&GenerationReport, &DagaEngine),
    ) -> Result<(TrialResult, DenoisingAutoencoder)> {
        while !self.done() {
            let report = self.step()?;
            observer(&report, &self);
        }
        Ok(self.finish())
    }

    pub fn finish(self) -> (TrialResult, DenoisingAutoencoder) {
        let seed = self.rng.seed();
        (self.eval.finish(seed, self.generation), self.dae)
    }
}

pub fn daga_run(problem: &Problem, cfg: &DagaConfig, rng: RandomSource) -> Result<TrialResult> {
    DagaEngine::new(problem, cfg, rng)?.run().map(|(r, _)| r)
}

/// Niching is written either as a window (`125`), a ratio (`"2500/20"`)
/// or `"N/A"`.
mod niching {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::selection::RtrSpec;

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Window(usize),
        Expr(String),
    }

    pub fn serialize<S: Serializer>(v: &Option<RtrSpec>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(r) => s.serialize_u64(r.window as u64),
            None => s.serialize_str("N/A"),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<RtrSpec>, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Window(w) => RtrSpec::new(w).map(Some).map_err(serde::de::Error::custom),
            Raw::Expr(e) => RtrSpec::parse(&e).map_err(serde::de::Error::custom),
        }
    }
}
