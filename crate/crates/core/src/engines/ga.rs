use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::{Evaluator, TrialResult};
use crate::error::{Error, Result};
use crate::genome::{Genome, GenomeSchema, Individual, Population};
use crate::problems::Problem;
use crate::rng::RandomSource;
use crate::selection::tournament_index;

fn default_tournament_k() -> usize {
    2
}

/// Generational GA with two-point crossover and elitism of one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaConfig {
    pub population: usize,
    pub crossover_prob: f64,
    /// Per-allele mutation probability.
    pub mutation_prob: f64,
    /// Variance of the Gaussian mutation (continuous problems).
    #[serde(default)]
    pub mutation_sigma_squared: f64,
    #[serde(default = "default_tournament_k")]
    pub tournament_k: usize,
    pub max_evaluations: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population: 100,
            crossover_prob: 0.9,
            mutation_prob: 0.01,
            mutation_sigma_squared: 0.0,
            tournament_k: 2,
            max_evaluations: 100_000,
        }
    }
}

impl GaConfig {
    pub fn problems(&self, problem: &Problem) -> Vec<String> {
        let mut errs = Vec::new();
        if self.population == 0 {
            errs.push("population must be at least 1".to_string());
        }
        for (name, p) in [("crossover_prob", self.crossover_prob), ("mutation_prob", self.mutation_prob)] {
            if !(0.0..=1.0).contains(&p) {
                errs.push(format!("{name} {p} outside [0, 1]"));
            }
        }
        if !(self.mutation_sigma_squared >= 0.0 && self.mutation_sigma_squared.is_finite()) {
            errs.push(format!("mutation_sigma_squared {} must be non-negative", self.mutation_sigma_squared));
        }
        if !problem.schema().is_binary() && self.mutation_prob > 0.0 && self.mutation_sigma_squared == 0.0 {
            errs.push("continuous problems need mutation_sigma_squared > 0".into());
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
}

fn swap_region<T>(a: &mut [T], b: &mut [T], lo: usize, hi: usize) {
    a[lo..hi].swap_with_slice(&mut b[lo..hi]);
}

/// Exchange positions `[lo, hi)` between two equal-length genomes.
pub fn two_point_crossover(a: &Genome, b: &Genome, lo: usize, hi: usize) -> Result<(Genome, Genome)> {
    if a.len() != b.len() || lo > hi || hi > a.len() {
        return Err(Error::InvalidInput(format!(
            "crossover region [{lo}, {hi}) invalid for lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    match (&mut x, &mut y) {
        (Genome::Binary(p), Genome::Binary(q)) => swap_region(p, q, lo, hi),
        (Genome::Continuous(p), Genome::Continuous(q)) => swap_region(p, q, lo, hi),
        _ => return Err(Error::type_mismatch("crossover between binary and continuous genomes")),
    }
    Ok((x, y))
}

/// Two distinct cut points in `0..=n`, sorted.
fn random_cuts(n: usize, rng: &mut RandomSource) -> (usize, usize) {
    let a = rng.random_range(0..=n);
    let mut b = rng.random_range(0..n);
    if b >= a {
        b += 1;
    }
    (a.min(b), a.max(b))
}

/// Per-allele mutation: bit flips, or additive `N(0, sigma^2)` clamped to bounds.
pub fn mutate(g: &mut Genome, schema: &GenomeSchema, p: f64, sigma_squared: f64, rng: &mut RandomSource) {
    match (g, schema) {
        (Genome::Binary(bits), _) => {
            for b in bits.iter_mut() {
                if rng.random::<f64>() < p {
                    *b = !*b;
                }
            }
        }
        (Genome::Continuous(v), GenomeSchema::Continuous { bounds }) => {
            let noise = Normal::new(0.0, sigma_squared.sqrt()).expect("validated variance");
            for (x, &(lo, hi)) in v.iter_mut().zip(bounds) {
                if rng.random::<f64>() < p {
                    *x = (*x + noise.sample(rng)).clamp(lo, hi);
                }
            }
        }
        (Genome::Continuous(_), GenomeSchema::Binary { .. }) => unreachable!("schema checked"),
    }
}

/// Generational GA as a resumable state machine.
#[derive(Debug, Clone)]
pub struct GaEngine {
    cfg: GaConfig,
    schema: GenomeSchema,
    eval: Evaluator,
    rng: RandomSource,
    pop: Population,
    generation: usize,
}

impl GaEngine {
    pub fn new(problem: &Problem, cfg: &GaConfig, mut rng: RandomSource) -> Result<Self> {
        cfg.validate(problem)?;
        let mut eval = Evaluator::new(problem.clone(), cfg.max_evaluations)?;
        let schema = problem.schema().clone();
        let members = (0..cfg.population)
            .map(|_| eval.evaluate(schema.random_genome(&mut rng)))
            .collect();
        Ok(Self {
            cfg: cfg.clone(),
            schema,
            eval,
            rng,
            pop: Population::from_members(members)?,
            generation: 0,
        })
    }

    pub fn done(&self) -> bool {
        self.eval.done()
    }

    pub fn population(&self) -> &Population {
        &self.pop
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    fn child(&mut self, mut g: Genome) -> Individual {
        mutate(&mut g, &self.schema, self.cfg.mutation_prob, self.cfg.mutation_sigma_squared, &mut self.rng);
        self.eval.evaluate(g)
    }

    /// Breed the next generation; the current best is copied in first.
    pub fn step(&mut self) -> Result<()> {
        if self.done() {
            return Err(Error::InvalidInput("run already finished".into()));
        }
        let n = self.pop.capacity();
        let mut next = Vec::with_capacity(n);
        next.push(self.pop.best().clone());
        while next.len() < n && !self.eval.done() {
            let i = tournament_index(&self.pop, self.cfg.tournament_k, &mut self.rng);
            let j = tournament_index(&self.pop, self.cfg.tournament_k, &mut self.rng);
            let (a, b) = (&self.pop.members[i].genome, &self.pop.members[j].genome);
            let (x, y) = if self.rng.random::<f64>() < self.cfg.crossover_prob && a.len() > 1 {
                let (lo, hi) = random_cuts(a.len(), &mut self.rng);
                two_point_crossover(a, b, lo, hi)?
            } else {
                (a.clone(), b.clone())
            };
            next.push(self.child(x));
            if next.len() < n && !self.eval.done() {
                next.push(self.child(y));
            }
        }
        let missing = n - next.len();
        next.extend(self.pop.members.iter().skip(1).take(missing).cloned());
        self.pop = Population::from_members(next)?;
        self.generation += 1;
        Ok(())
    }

    pub fn finish(self) -> TrialResult {
        let seed = self.rng.seed();
        self.eval.finish(seed, self.generation)
    }
}

pub fn ga_run(problem: &Problem, cfg: &GaConfig, rng: RandomSource) -> Result<TrialResult> {
    let mut engine = GaEngine::new(problem, cfg, rng)?;
    while !engine.done() {
        engine.step()?;
    }
    Ok(engine.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Genome {
        Genome::from_bitstring(s).unwrap()
    }

    #[test]
    fn crossover_swaps_exact_region() {
        let (x, y) = two_point_crossover(&bits("00000000"), &bits("11111111"), 2, 5).unwrap();
        assert_eq!(x, bits("00111000"));
        assert_eq!(y, bits("11000111"));
        assert!(two_point_crossover(&bits("00"), &bits("000"), 0, 1).is_err());
        assert!(two_point_crossover(&bits("00"), &bits("00"), 1, 3).is_err());
    }

    #[test]
    fn crossover_spliced_oracle() {
        let a = bits("0110100111010010");
        let b = bits("1011001010110101");
        let (sa, sb) = (a.to_bitstring().unwrap(), b.to_bitstring().unwrap());
        for lo in 0..=16 {
            for hi in lo..=16 {
                let (x, y) = two_point_crossover(&a, &b, lo, hi).unwrap();
                let ex = format!("{}{}{}", &sa[..lo], &sb[lo..hi], &sa[hi..]);
                let ey = format!("{}{}{}", &sb[..lo], &sa[lo..hi], &sb[hi..]);
                assert_eq!(x.to_bitstring().unwrap(), ex);
                assert_eq!(y.to_bitstring().unwrap(), ey);
            }
        }
    }

    #[test]
    fn cuts_are_distinct_and_in_range() {
        let mut rng = RandomSource::new(1);
        for _ in 0..1000 {
            let (a, b) = random_cuts(5, &mut rng);
            assert!(a < b && b <= 5);
        }
    }

    #[test]
    fn no_variation_never_loses_best() {
        let p = Problem::hiff(16).unwrap();
        let cfg = GaConfig {
            population: 30,
            crossover_prob: 0.0,
            mutation_prob: 0.0,
            max_evaluations: 3000,
            ..GaConfig::default()
        };
        let r = ga_run(&p, &cfg, RandomSource::new(2)).unwrap();
        // Without variation no genome outside the initial population can appear.
        assert_eq!(r.trace.len(), r.trace.iter().filter(|(e, _)| *e <= 30).count());
    }

    #[test]
    fn solves_maxones() {
        let p = Problem::maxones(30);
        let cfg = GaConfig {
            population: 50,
            crossover_prob: 0.9,
            mutation_prob: 1.0 / 30.0,
            max_evaluations: 50_000,
            ..GaConfig::default()
        };
        let r = ga_run(&p, &cfg, RandomSource::new(3)).unwrap();
        assert!(r.success);
        assert!(r.trace.windows(2).all(|w| w[0].1 < w[1].1));
    }

    #[test]
    fn gaussian_mutation_clamps() {
        let schema = GenomeSchema::continuous(10, -1.0, 1.0);
        let mut rng = RandomSource::new(4);
        let mut g = Genome::Continuous(vec![0.99; 10]);
        for _ in 0..100 {
            mutate(&mut g, &schema, 1.0, 4.0, &mut rng);
            assert!(g.as_values().unwrap().iter().all(|x| (-1.0..=1.0).contains(x)));
        }
    }

    #[test]
    fn ga_is_deterministic() {
        let p = Problem::rastrigin(4);
        let cfg = GaConfig {
            population: 20,
            crossover_prob: 0.2,
            mutation_prob: 0.1,
            mutation_sigma_squared: 0.01,
            max_evaluations: 1000,
            ..GaConfig::default()
        };
        assert_eq!(
            ga_run(&p, &cfg, RandomSource::new(7)).unwrap(),
            ga_run(&p, &cfg, RandomSource::new(7)).unwrap()
        );
        let bad = GaConfig { mutation_sigma_squared: 0.0, ..cfg };
        assert!(ga_run(&p, &bad, RandomSource::new(7)).unwrap_err().is_config());
    }
}
