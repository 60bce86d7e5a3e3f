use crate::error::{Error, Result};

/// Multi-dimensional 0/1 knapsack.
#[derive(Debug, Clone, PartialEq)]
pub struct KnapsackInstance {
    pub profits: Vec<f64>,
    /// `constraints x items`.
    pub weights: Vec<Vec<f64>>,
    pub capacities: Vec<f64>,
    pub optimum: Option<f64>,
    penalty: Vec<f64>,
    total_profit: f64,
}

impl KnapsackInstance {
    pub fn new(profits: Vec<f64>, weights: Vec<Vec<f64>>, capacities: Vec<f64>, optimum: Option<f64>) -> Result<Self> {
        if weights.len() != capacities.len() {
            return Err(Error::config(format!(
                "{} weight rows but {} capacities",
                weights.len(),
                capacities.len()
            )));
        }
        if let Some((j, row)) = weights.iter().enumerate().find(|(_, r)| r.len() != profits.len()) {
            return Err(Error::config(format!(
                "weight row {j} has {} entries, expected {}",
                row.len(),
                profits.len()
            )));
        }
        let all = profits.iter().chain(weights.iter().flatten()).chain(&capacities);
        if all.clone().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::config("knapsack values must be finite and non-negative"));
        }
        // Largest profit density per constraint.
        let penalty = weights
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&profits)
                    .filter(|(w, _)| **w > 0.0)
                    .map(|(w, p)| p / w)
                    .fold(0.0, f64::max)
            })
            .collect();
        let total_profit = profits.iter().sum();
        Ok(Self {
            profits,
            weights,
            capacities,
            optimum,
            penalty,
            total_profit,
        })
    }

    pub fn items(&self) -> usize {
        self.profits.len()
    }

    pub fn constraints(&self) -> usize {
        self.capacities.len()
    }

    /// Per-constraint overweight of a selection (zero where the constraint holds).
    pub fn overweight(&self, bits: &[bool]) -> Vec<f64> {
        self.weights
            .iter()
            .zip(&self.capacities)
            .map(|(row, cap)| {
                let load: f64 = row.iter().zip(bits).filter(|(_, &b)| b).map(|(w, _)| w).sum();
                (load - cap).max(0.0)
            })
            .collect()
    }

    pub fn is_feasible(&self, bits: &[bool]) -> bool {
        self.overweight(bits).iter().all(|&o| o == 0.0)
    }

    pub fn profit(&self, bits: &[bool]) -> f64 {
        self.profits.iter().zip(bits).filter(|(_, &b)| b).map(|(p, _)| p).sum()
    }
}

/// Total profit of a feasible selection. An infeasible selection scores
/// `profit - total_profit - sum_j density_j * overweight_j`, which is
/// negative and therefore below every feasible selection.
pub fn knapsack(bits: &[bool], inst: &KnapsackInstance) -> f64 {
    let profit = inst.profit(bits);
    let over = inst.overweight(bits);
    if over.iter().all(|&o| o == 0.0) {
        return profit;
    }
    let penalty: f64 = over.iter().zip(&inst.penalty).map(|(o, l)| o * l).sum();
    let score = profit - inst.total_profit - penalty;
    // Zero only when every density on the violated constraints is zero.
    if score < 0.0 {
        score
    } else {
        -f64::MIN_POSITIVE
    }
}
