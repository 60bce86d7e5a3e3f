//! Benchmark problems.
//!
//! Every problem is presented to the engines as a maximisation problem:
//! minimisation objectives (the continuous suite, pattern distance) report
//! their fitness negated or complemented, and [`Problem::objective`] maps a
//! fitness back to the natural objective value.

mod binary;
mod continuous;
pub mod generate;
mod knapsack;
mod maxsat;
mod patterns;
mod registry;

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

pub use binary::{hiff, maxones, royal_road, ROYAL_ROAD_BLOCK};
pub use continuous::{rastrigin, rosenbrock, sphere, RosenbrockForm};
pub use knapsack::{knapsack, KnapsackInstance};
pub use maxsat::{maxsat, CnfFormula, Literal};
pub use patterns::{box_pattern, cross_pattern, make_combined_patterns, pattern_distance, PatternTarget, PATTERN_SIDE};
pub use registry::{lookup_pattern, ProblemSpec};

use crate::error::{Error, Result};
use crate::genome::{Genome, GenomeSchema};
use crate::rng::RandomSource;

/// A fixed XOR mask applied to a genome before the inner fitness sees it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMask(pub Vec<bool>);

impl BitMask {
    pub fn random(len: usize, rng: &mut RandomSource) -> Self {
        match (GenomeSchema::Binary { len }).random_genome(rng) {
            Genome::Binary(bits) => BitMask(bits),
            Genome::Continuous(_) => unreachable!(),
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, bits: &[bool]) -> Vec<bool> {
        bits.iter().zip(&self.0).map(|(&b, &m)| b ^ m).collect()
    }
}

#[derive(Debug, Clone)]
pub enum Fitness {
    MaxOnes,
    Hiff,
    RoyalRoad,
    MaxSat(Arc<CnfFormula>),
    Knapsack(Arc<KnapsackInstance>),
    /// `81 - hamming distance` to the target image.
    Pattern(Arc<PatternTarget>),
    Sphere,
    Rosenbrock(RosenbrockForm),
    Rastrigin,
}

impl Fitness {
    fn minimizes(&self) -> bool {
        matches!(self, Fitness::Sphere | Fitness::Rosenbrock(_) | Fitness::Rastrigin)
    }
}

#[derive(Debug, Clone)]
pub struct Problem {
    name: String,
    schema: GenomeSchema,
    fitness: Fitness,
    mask: Option<BitMask>,
    optimum: Option<f64>,
    target: Option<f64>,
    clamp_warnings: Arc<AtomicU64>,
}

impl Problem {
    fn new(name: impl Into<String>, schema: GenomeSchema, fitness: Fitness) -> Self {
        Self {
            name: name.into(),
            schema,
            fitness,
            mask: None,
            optimum: None,
            target: None,
            clamp_warnings: Arc::new(AtomicU64::new(0)),
        }
    }

    pub fn maxones(n: usize) -> Self {
        Self::new(format!("maxones-{n}"), GenomeSchema::Binary { len: n }, Fitness::MaxOnes).with_optimum(n as f64)
    }

    /// HIFF on `n` bits; `n` must be a power of two. Optimum `n (log2 n + 1)`.
    pub fn hiff(n: usize) -> Result<Self> {
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::config(format!("HIFF length {n} is not a power of two")));
        }
        let levels = n.trailing_zeros() as usize + 1;
        Ok(Self::new(format!("hiff-{n}"), GenomeSchema::Binary { len: n }, Fitness::Hiff)
            .with_optimum((n * levels) as f64))
    }

    pub fn royal_road(n: usize) -> Result<Self> {
        if n == 0 || n % ROYAL_ROAD_BLOCK != 0 {
            return Err(Error::config(format!(
                "Royal Road length {n} is not a multiple of {ROYAL_ROAD_BLOCK}"
            )));
        }
        Ok(Self::new(format!("royal-road-{n}"), GenomeSchema::Binary { len: n }, Fitness::RoyalRoad)
            .with_optimum(n as f64))
    }

    /// MAXSAT; the optimum assumes the formula is satisfiable.
    pub fn maxsat(cnf: CnfFormula) -> Self {
        let n = cnf.num_vars;
        let m = cnf.clauses.len();
        Self::new(format!("maxsat-{n}-{m}"), GenomeSchema::Binary { len: n }, Fitness::MaxSat(Arc::new(cnf)))
            .with_optimum(m as f64)
    }

    pub fn knapsack(inst: KnapsackInstance) -> Self {
        let n = inst.items();
        let optimum = inst.optimum;
        let p = Self::new(
            format!("knapsack-{n}x{}", inst.constraints()),
            GenomeSchema::Binary { len: n },
            Fitness::Knapsack(Arc::new(inst)),
        );
        match optimum {
            Some(o) => p.with_optimum(o),
            None => p,
        }
    }

    pub fn pattern(target: PatternTarget) -> Self {
        let n = target.pixels.len();
        Self::new(
            format!("pattern-{}", target.name),
            GenomeSchema::Binary { len: n },
            Fitness::Pattern(Arc::new(target)),
        )
        .with_optimum(n as f64)
    }

    pub fn sphere(dim: usize) -> Self {
        Self::new(format!("sphere-{dim}"), GenomeSchema::continuous(dim, -5.12, 5.12), Fitness::Sphere)
            .with_target(0.1)
    }

    pub fn rosenbrock(dim: usize, form: RosenbrockForm) -> Self {
        Self::new(
            format!("rosenbrock-{dim}"),
            GenomeSchema::continuous(dim, -2.048, 2.048),
            Fitness::Rosenbrock(form),
        )
        .with_target(0.1)
    }

    pub fn rastrigin(dim: usize) -> Self {
        Self::new(format!("rastrigin-{dim}"), GenomeSchema::continuous(dim, -5.12, 5.12), Fitness::Rastrigin)
            .with_target(1.0)
    }

    pub fn with_optimum(mut self, optimum: f64) -> Self {
        self.optimum = Some(optimum);
        self
    }

    /// Success threshold on the objective for minimisation problems.
    pub fn with_target(mut self, target: f64) -> Self {
        self.target = Some(target);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn schema(&self) -> &GenomeSchema {
        &self.schema
    }

    pub fn fitness_kind(&self) -> &Fitness {
        &self.fitness
    }

    pub fn mask(&self) -> Option<&BitMask> {
        self.mask.as_ref()
    }

    /// Known optimum in fitness units (maximisation problems).
    pub fn optimum(&self) -> Option<f64> {
        self.optimum
    }

    /// Target objective value (minimisation problems).
    pub fn target(&self) -> Option<f64> {
        self.target
    }

    pub fn minimizes(&self) -> bool {
        self.fitness.minimizes()
    }

    /// Number of out-of-bounds continuous inputs that were clamped before evaluation.
    pub fn clamp_warnings(&self) -> u64 {
        self.clamp_warnings.load(Ordering::Relaxed)
    }

    /// Objective value of a fitness: the negation for minimisation problems.
    pub fn objective(&self, fitness: f64) -> f64 {
        if self.minimizes() {
            -fitness
        } else {
            fitness
        }
    }

    /// Whether a fitness meets the known optimum or the target.
    pub fn is_success(&self, fitness: f64) -> bool {
        if let Some(opt) = self.optimum {
            fitness >= opt - 1e-9 * opt.abs().max(1.0)
        } else if let Some(t) = self.target {
            self.objective(fitness) <= t
        } else {
            false
        }
    }

    /// Fitness (larger is better) of a genome. Panics when the genome does not
    /// match the schema; engines only produce matching genomes.
    pub fn evaluate(&self, g: &Genome) -> f64 {
        self.try_evaluate(g).expect("genome matches problem schema")
    }

    pub fn try_evaluate(&self, g: &Genome) -> Result<f64> {
        self.schema.check(g)?;
        Ok(match g {
            Genome::Binary(bits) => match &self.mask {
                Some(mask) => self.binary_fitness(&mask.apply(bits)),
                None => self.binary_fitness(bits),
            },
            Genome::Continuous(v) => self.continuous_fitness(v),
        })
    }

    fn binary_fitness(&self, bits: &[bool]) -> f64 {
        match &self.fitness {
            Fitness::MaxOnes => maxones(bits) as f64,
            Fitness::Hiff => hiff(bits).expect("length checked at construction") as f64,
            Fitness::RoyalRoad => royal_road(bits).expect("length checked at construction") as f64,
            Fitness::MaxSat(cnf) => maxsat(bits, cnf) as f64,
            Fitness::Knapsack(inst) => knapsack(bits, inst),
            Fitness::Pattern(t) => (bits.len() - pattern_distance(bits, t)) as f64,
            _ => unreachable!("continuous fitness on binary genome"),
        }
    }

    fn continuous_fitness(&self, v: &[f64]) -> f64 {
        let GenomeSchema::Continuous { bounds } = &self.schema else {
            unreachable!("schema checked")
        };
        let out_of_bounds = v.iter().zip(bounds).any(|(x, &(lo, hi))| !(lo..=hi).contains(x));
        let clamped;
        let p = if out_of_bounds {
            self.clamp_warnings.fetch_add(1, Ordering::Relaxed);
            clamped = v
                .iter()
                .zip(bounds)
                .map(|(x, &(lo, hi))| x.clamp(lo, hi))
                .collect::<Vec<_>>();
            &clamped[..]
        } else {
            v
        };
        let f = match &self.fitness {
            Fitness::Sphere => sphere(p),
            Fitness::Rosenbrock(form) => rosenbrock(p, *form),
            Fitness::Rastrigin => rastrigin(p),
            _ => unreachable!("binary fitness on continuous genome"),
        };
        -f
    }
}

/// Wrap a binary problem so every genome is XORed with `mask` first. The
/// optimum value is unchanged; it moves to `optimum XOR mask`.
pub fn masked(problem: &Problem, mask: BitMask) -> Result<Problem> {
    match problem.schema {
        GenomeSchema::Binary { len } if len == mask.len() => {
            let mut p = problem.clone();
            p.name = format!("masked-{}", problem.name);
            p.mask = Some(mask);
            Ok(p)
        }
        GenomeSchema::Binary { len } => Err(Error::config(format!(
            "mask length {} does not match genome length {len}",
            mask.len()
        ))),
        GenomeSchema::Continuous { .. } => Err(Error::config("masks apply to binary problems only")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Genome {
        Genome::from_bitstring(s).unwrap()
    }

    #[test]
    fn zero_mask_is_identity() {
        let p = Problem::hiff(8).unwrap();
        let m = masked(&p, BitMask(vec![false; 8])).unwrap();
        for i in 0..256 {
            let g = Genome::from_index(i, 8);
            assert_eq!(p.evaluate(&g), m.evaluate(&g));
        }
    }

    #[test]
    fn complement_mask_on_hiff() {
        let p = Problem::hiff(8).unwrap();
        let m = masked(&p, BitMask(vec![true; 8])).unwrap();
        assert_eq!(m.evaluate(&bits("00000000")), p.evaluate(&bits("11111111")));
        assert_eq!(m.optimum(), p.optimum());
    }

    #[test]
    fn masked_optimum_moves_to_xor() {
        let p = Problem::hiff(8).unwrap();
        let mut rng = RandomSource::new(12);
        for _ in 0..1000 {
            let mask = BitMask::random(8, &mut rng);
            let m = masked(&p, mask.clone()).unwrap();
            let best = (0..256).map(|i| m.evaluate(&Genome::from_index(i, 8))).fold(f64::MIN, f64::max);
            assert_eq!(Some(best), m.optimum());
            let at_ones = Genome::Binary(mask.apply(&[true; 8]));
            assert_eq!(m.evaluate(&at_ones), 32.0);
        }
    }

    #[test]
    fn mask_validation() {
        let p = Problem::hiff(8).unwrap();
        assert!(masked(&p, BitMask(vec![false; 4])).is_err());
        assert!(masked(&Problem::sphere(2), BitMask(vec![false; 2])).is_err());
    }

    #[test]
    fn continuous_fitness_is_negated_objective() {
        let p = Problem::sphere(3);
        let g = Genome::Continuous(vec![1.0, 2.0, 0.0]);
        assert_eq!(p.evaluate(&g), -5.0);
        assert_eq!(p.objective(p.evaluate(&g)), 5.0);
        assert!(!p.is_success(-5.0));
        assert!(p.is_success(-0.05));
    }

    #[test]
    fn out_of_bounds_is_clamped_and_counted() {
        let p = Problem::sphere(2);
        let g = Genome::Continuous(vec![10.0, 0.0]);
        assert_eq!(p.evaluate(&g), -(5.12f64 * 5.12));
        assert_eq!(p.clamp_warnings(), 1);
    }

    #[test]
    fn schema_mismatch_is_a_type_error() {
        let p = Problem::maxones(4);
        assert!(matches!(p.try_evaluate(&bits("101")), Err(Error::Type(_))));
        assert!(p.try_evaluate(&Genome::Continuous(vec![0.0; 4])).is_err());
    }

    #[test]
    fn constructors_validate_lengths() {
        assert!(Problem::hiff(12).is_err());
        assert!(Problem::royal_road(12).is_err());
        assert_eq!(Problem::hiff(128).unwrap().optimum(), Some(1024.0));
        assert_eq!(Problem::hiff(256).unwrap().optimum(), Some(2304.0));
        assert_eq!(Problem::hiff(64).unwrap().optimum(), Some(448.0));
        assert_eq!(Problem::royal_road(128).unwrap().optimum(), Some(128.0));
    }

    #[test]
    fn evaluation_is_pure() {
        let problems = [
            Problem::hiff(16).unwrap(),
            Problem::royal_road(16).unwrap(),
            Problem::maxones(16),
        ];
        let mut rng = RandomSource::new(0);
        for p in &problems {
            for _ in 0..50 {
                let g = p.schema().random_genome(&mut rng);
                assert_eq!(p.evaluate(&g).to_bits(), p.evaluate(&g).to_bits());
            }
        }
    }
}
