/// A signed, 1-based variable index: `-3` is the negation of variable 3.
pub type Literal = i32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<[Literal; 3]>,
}

impl CnfFormula {
    pub fn clause_satisfied(clause: &[Literal; 3], bits: &[bool]) -> bool {
        clause.iter().any(|&lit| {
            let value = bits[lit.unsigned_abs() as usize - 1];
            if lit > 0 {
                value
            } else {
                !value
            }
        })
    }
}

/// Number of satisfied clauses under the assignment `bits[i] = x_{i+1}`.
pub fn maxsat(bits: &[bool], cnf: &CnfFormula) -> usize {
    cnf.clauses
        .iter()
        .filter(|c| CnfFormula::clause_satisfied(c, bits))
        .count()
}
