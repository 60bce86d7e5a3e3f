//! Candidate solutions and populations.

use rand::Rng;

use crate::error::{Error, Result};
use crate::problems::Problem;
use crate::rng::RandomSource;

/// Shape of the genomes a problem accepts.
#[derive(Debug, Clone, PartialEq)]
pub enum GenomeSchema {
    Binary { len: usize },
    /// One `(lower, upper)` pair per dimension.
    Continuous { bounds: Vec<(f64, f64)> },
}

impl GenomeSchema {
    pub fn len(&self) -> usize {
        match self {
            GenomeSchema::Binary { len } => *len,
            GenomeSchema::Continuous { bounds } => bounds.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_binary(&self) -> bool {
        matches!(self, GenomeSchema::Binary { .. })
    }

    pub fn continuous(dim: usize, lower: f64, upper: f64) -> Self {
        GenomeSchema::Continuous {
            bounds: vec![(lower, upper); dim],
        }
    }

    /// Draw a genome uniformly: fair coin per bit, or uniform within bounds.
    pub fn random_genome(&self, rng: &mut RandomSource) -> Genome {
        match self {
            GenomeSchema::Binary { len } => Genome::Binary((0..*len).map(|_| rng.random_bool(0.5)).collect()),
            GenomeSchema::Continuous { bounds } => Genome::Continuous(
                bounds
                    .iter()
                    .map(|&(lo, hi)| lo + (hi - lo) * rng.random::<f64>())
                    .collect(),
            ),
        }
    }

    /// Check that `g` has this schema's kind and length.
    pub fn check(&self, g: &Genome) -> Result<()> {
        let ok = match (self, g) {
            (GenomeSchema::Binary { len }, Genome::Binary(bits)) => bits.len() == *len,
            (GenomeSchema::Continuous { bounds }, Genome::Continuous(v)) => v.len() == bounds.len(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::type_mismatch(format!(
                "genome ({} of length {}) does not match schema ({} of length {})",
                g.kind_name(),
                g.len(),
                if self.is_binary() { "binary" } else { "continuous" },
                self.len()
            )))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Genome {
    Binary(Vec<bool>),
    Continuous(Vec<f64>),
}

impl Genome {
    /// Parse a bit string such as `"000111"`.
    pub fn from_bitstring(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidInput(format!("not a bit: {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Genome::Binary)
    }

    /// The `n`-bit genome whose big-endian binary number is `index`
    /// (index 0 is all zeros, `2^n - 1` all ones).
    pub fn from_index(index: usize, n: usize) -> Self {
        Genome::Binary((0..n).map(|i| (index >> (n - 1 - i)) & 1 == 1).collect())
    }

    /// Inverse of [`Genome::from_index`]. Continuous genomes have no index.
    pub fn to_index(&self) -> Option<usize> {
        match self {
            Genome::Binary(bits) if bits.len() < usize::BITS as usize => {
                Some(bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize))
            }
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Genome::Binary(b) => b.len(),
            Genome::Continuous(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_bits(&self) -> Option<&[bool]> {
        match self {
            Genome::Binary(b) => Some(b),
            Genome::Continuous(_) => None,
        }
    }

    pub fn as_values(&self) -> Option<&[f64]> {
        match self {
            Genome::Continuous(v) => Some(v),
            Genome::Binary(_) => None,
        }
    }

    fn kind_name(&self) -> &'static str {
        match self {
            Genome::Binary(_) => "binary",
            Genome::Continuous(_) => "continuous",
        }
    }

    pub fn to_bitstring(&self) -> Option<String> {
        self.as_bits()
            .map(|bits| bits.iter().map(|&b| if b { '1' } else { '0' }).collect())
    }
}

/// A genome together with its cached fitness (larger is better).
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genome: Genome,
    pub fitness: f64,
}

#[derive(Debug, Clone)]
pub struct Population {
    pub members: Vec<Individual>,
    capacity: usize,
}

impl Population {
    /// Build a population of `capacity` random genomes, scoring each with `eval`.
    pub fn random_with(
        schema: &GenomeSchema,
        capacity: usize,
        rng: &mut RandomSource,
        mut eval: impl FnMut(&Genome) -> f64,
    ) -> Result<Self> {
        if capacity == 0 {
            return Err(Error::config("population capacity must be at least 1"));
        }
        let members = (0..capacity)
            .map(|_| {
                let genome = schema.random_genome(rng);
                let fitness = eval(&genome);
                Individual { genome, fitness }
            })
            .collect();
        Ok(Self { members, capacity })
    }

    pub fn from_members(members: Vec<Individual>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::config("population capacity must be at least 1"));
        }
        let capacity = members.len();
        Ok(Self { members, capacity })
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Fittest member; ties go to the lowest index.
    pub fn best(&self) -> &Individual {
        let mut best = &self.members[0];
        for m in &self.members[1..] {
            if m.fitness > best.fitness {
                best = m;
            }
        }
        best
    }

    pub fn best_fitness(&self) -> f64 {
        self.best().fitness
    }
}

/// Random population scored directly by `problem.evaluate`.
pub fn init_population(problem: &Problem, capacity: usize, rng: &mut RandomSource) -> Result<Population> {
    Population::random_with(problem.schema(), capacity, rng, |g| problem.evaluate(g))
}

pub fn hamming_distance(a: &Genome, b: &Genome) -> Result<usize> {
    match (a, b) {
        (Genome::Binary(x), Genome::Binary(y)) if x.len() == y.len() => {
            Ok(x.iter().zip(y).filter(|(p, q)| p != q).count())
        }
        (Genome::Binary(x), Genome::Binary(y)) => Err(Error::type_mismatch(format!(
            "hamming distance of genomes with lengths {} and {}",
            x.len(),
            y.len()
        ))),
        _ => Err(Error::type_mismatch("hamming distance needs two binary genomes")),
    }
}

pub fn euclidean_distance(a: &Genome, b: &Genome) -> Result<f64> {
    match (a, b) {
        (Genome::Continuous(x), Genome::Continuous(y)) if x.len() == y.len() => {
            Ok(x.iter().zip(y).map(|(p, q)| (p - q) * (p - q)).sum::<f64>().sqrt())
        }
        (Genome::Continuous(x), Genome::Continuous(y)) => Err(Error::type_mismatch(format!(
            "euclidean distance of genomes with lengths {} and {}",
            x.len(),
            y.len()
        ))),
        _ => Err(Error::type_mismatch("euclidean distance needs two continuous genomes")),
    }
}

/// Hamming distance for binary genomes, Euclidean for continuous ones.
pub fn distance(a: &Genome, b: &Genome) -> Result<f64> {
    match a {
        Genome::Binary(_) => hamming_distance(a, b).map(|d| d as f64),
        Genome::Continuous(_) => euclidean_distance(a, b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::Problem;

    fn bits(s: &str) -> Genome {
        Genome::from_bitstring(s).unwrap()
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(hamming_distance(&bits("000000"), &bits("000000")).unwrap(), 0);
        assert_eq!(hamming_distance(&bits("000000"), &bits("111111")).unwrap(), 6);
        assert_eq!(hamming_distance(&bits("000111"), &bits("000000")).unwrap(), 3);
    }

    #[test]
    fn hamming_rejects_mismatch() {
        assert!(hamming_distance(&bits("00"), &bits("000")).is_err());
        let c = Genome::Continuous(vec![0.0, 0.0]);
        assert!(matches!(hamming_distance(&bits("00"), &c), Err(Error::Type(_))));
    }

    #[test]
    fn euclidean_examples() {
        let z = Genome::Continuous(vec![0.0; 4]);
        assert_eq!(euclidean_distance(&z, &z).unwrap(), 0.0);
        let a = Genome::Continuous(vec![3.0, 4.0]);
        let b = Genome::Continuous(vec![0.0, 0.0]);
        assert_eq!(euclidean_distance(&a, &b).unwrap(), 5.0);
        let c = Genome::Continuous(vec![1.0, 1.0]);
        let d = Genome::Continuous(vec![2.0, 2.0]);
        assert!((euclidean_distance(&c, &d).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert!(euclidean_distance(&c, &bits("01")).is_err());
        assert!(euclidean_distance(&c, &Genome::Continuous(vec![1.0])).is_err());
    }

    #[test]
    fn hamming_is_a_metric_on_six_bits() {
        let all: Vec<Genome> = (0..64).map(|i| Genome::from_index(i, 6)).collect();
        for a in &all {
            assert_eq!(hamming_distance(a, a).unwrap(), 0);
            for b in &all {
                let ab = hamming_distance(a, b).unwrap();
                assert_eq!(ab, hamming_distance(b, a).unwrap());
                assert_eq!(ab == 0, a == b);
                for c in &all {
                    assert!(ab <= hamming_distance(a, c).unwrap() + hamming_distance(c, b).unwrap());
                }
            }
        }
    }

    #[test]
    fn index_round_trip() {
        assert_eq!(Genome::from_index(7, 6), bits("000111"));
        assert_eq!(Genome::from_index(63, 6), bits("111111"));
        for i in 0..256 {
            assert_eq!(Genome::from_index(i, 8).to_index(), Some(i));
        }
    }

    #[test]
    fn init_population_shapes() {
        let mut rng = RandomSource::new(1);
        let p = init_population(&Problem::maxones(20), 200, &mut rng).unwrap();
        assert_eq!(p.len(), 200);
        assert!(p.members.iter().all(|m| m.genome.len() == 20));
        assert!(p.members.iter().all(|m| m.fitness == Problem::maxones(20).evaluate(&m.genome)));

        let single = init_population(&Problem::maxones(5), 1, &mut rng).unwrap();
        assert_eq!(single.len(), 1);

        let sphere = Problem::sphere(50);
        let p = init_population(&sphere, 10, &mut rng).unwrap();
        for m in &p.members {
            assert!(m.genome.as_values().unwrap().iter().all(|v| (-5.12..=5.12).contains(v)));
        }
    }

    #[test]
    fn init_population_rejects_zero_capacity() {
        let mut rng = RandomSource::new(1);
        assert!(matches!(
            init_population(&Problem::maxones(4), 0, &mut rng),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn init_bit_frequency_is_fair() {
        let mut rng = RandomSource::new(99);
        let p = init_population(&Problem::maxones(100), 200, &mut rng).unwrap();
        let ones: usize = p
            .members
            .iter()
            .map(|m| m.genome.as_bits().unwrap().iter().filter(|&&b| b).count())
            .sum();
        let frac = ones as f64 / 20_000.0;
        assert!((frac - 0.5).abs() < 0.02, "fraction of ones {frac}");
    }
}
