//! Generators for the bundled substitute instances.

use rand::seq::index;
use rand::Rng;

use super::{CnfFormula, KnapsackInstance, Literal};
use crate::error::Result;
use crate::rng::RandomSource;

/// Random 3-CNF with a planted satisfying assignment: each clause draws three
/// distinct variables and random signs, and is redrawn until the planted
/// assignment satisfies it.
pub fn planted_3sat(num_vars: usize, num_clauses: usize, rng: &mut RandomSource) -> (CnfFormula, Vec<bool>) {
    assert!(num_vars >= 3, "3-CNF needs at least three variables");
    let planted: Vec<bool> = (0..num_vars).map(|_| rng.random_bool(0.5)).collect();
    let mut clauses = Vec::with_capacity(num_clauses);
    while clauses.len() < num_clauses {
        let vars = index::sample(rng, num_vars, 3);
        let mut clause = [0 as Literal; 3];
        for (slot, v) in clause.iter_mut().zip(vars.iter()) {
            let lit = (v + 1) as Literal;
            *slot = if rng.random_bool(0.5) { lit } else { -lit };
        }
        if CnfFormula::clause_satisfied(&clause, &planted) {
            clauses.push(clause);
        }
    }
    (CnfFormula { num_vars, clauses }, planted)
}

/// Weakly correlated multi-constraint instance: integer weights in
/// `1..=max_weight`, profit = mean weight + uniform noise, capacities at
/// `tightness` of each row's total weight.
pub fn random_knapsack(
    items: usize,
    constraints: usize,
    max_weight: u32,
    tightness: f64,
    rng: &mut RandomSource,
) -> Result<KnapsackInstance> {
    let weights: Vec<Vec<f64>> = (0..constraints)
        .map(|_| (0..items).map(|_| rng.random_range(1..=max_weight) as f64).collect())
        .collect();
    let noise = (max_weight / 5).max(1) as i64;
    let profits: Vec<f64> = (0..items)
        .map(|i| {
            let mean = weights.iter().map(|r| r[i]).sum::<f64>() / constraints as f64;
            (mean.round() as i64 + rng.random_range(-noise..=noise)).max(1) as f64
        })
        .collect();
    let capacities = weights
        .iter()
        .map(|r| (r.iter().sum::<f64>() * tightness).floor())
        .collect();
    KnapsackInstance::new(profits, weights, capacities, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::maxsat;

    #[test]
    fn planted_assignment_satisfies_everything() {
        let mut rng = RandomSource::new(1);
        let (cnf, planted) = planted_3sat(20, 86, &mut rng);
        assert_eq!(cnf.clauses.len(), 86);
        assert_eq!(maxsat(&planted, &cnf), 86);
        for c in &cnf.clauses {
            let mut vars: Vec<u32> = c.iter().map(|l| l.unsigned_abs()).collect();
            vars.sort();
            vars.dedup();
            assert_eq!(vars.len(), 3);
            assert!(vars.iter().all(|&v| (1..=20).contains(&v)));
        }
    }

    #[test]
    fn knapsack_dimensions() {
        let mut rng = RandomSource::new(2);
        let inst = random_knapsack(12, 2, 40, 0.5, &mut rng).unwrap();
        assert_eq!(inst.items(), 12);
        assert_eq!(inst.constraints(), 2);
        assert!(inst.profits.iter().all(|&p| p >= 1.0));
    }
}
