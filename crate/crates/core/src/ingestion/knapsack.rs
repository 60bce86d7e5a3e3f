//! Plain-text multi-constraint knapsack format.
//!
//! ```text
//! # comments start with '#'
//! <items n> <constraints m> <optimum | ->
//! <n profits>
//! <m rows of n weights>
//! <m capacities>
//! ```
//!
//! Values are whitespace-separated and may wrap across lines. This is the
//! per-problem layout of OR-Library's `mknap1.txt` with the leading problem
//! count removed.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::problems::KnapsackInstance;

struct Tokens<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let mut items = Vec::new();
        let mut last_line = 1;
        for (idx, line) in text.lines().enumerate() {
            last_line = idx + 1;
            let content = line.split('#').next().unwrap_or("");
            items.extend(content.split_whitespace().map(|t| (idx + 1, t)));
        }
        Self {
            items,
            pos: 0,
            last_line,
        }
    }

    fn numbers(&mut self, count: usize, what: &str) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(count);
        for k in 0..count {
            let Some(&(line, tok)) = self.items.get(self.pos) else {
                return Err(Error::parse_line(
                    self.last_line,
                    format!("{what}: expected {count} values, found {k} before end of input"),
                ));
            };
            self.pos += 1;
            let v: f64 = tok
                .parse()
                .map_err(|_| Error::parse_line(line, format!("{what}: bad number {tok:?}")))?;
            if !v.is_finite() || v < 0.0 {
                return Err(Error::parse_line(line, format!("{what}: value {tok} must be non-negative")));
            }
            out.push(v);
        }
        Ok(out)
    }

    fn count(&mut self, what: &str) -> Result<usize> {
        let Some(&(line, tok)) = self.items.get(self.pos) else {
            return Err(Error::parse_line(self.last_line, format!("missing {what}")));
        };
        self.pos += 1;
        tok.parse()
            .map_err(|_| Error::parse_line(line, format!("{what}: bad count {tok:?}")))
    }
}

pub fn parse_knapsack(text: &str) -> Result<KnapsackInstance> {
    let mut t = Tokens::new(text);
    let n = t.count("item count")?;
    let m = t.count("constraint count")?;
    if n == 0 || m == 0 {
        return Err(Error::parse_line(1, "item and constraint counts must be positive"));
    }
    let optimum = match t.items.get(t.pos) {
        Some(&(_, "-")) => {
            t.pos += 1;
            None
        }
        Some(_) => Some(t.numbers(1, "optimum")?[0]),
        None => return Err(Error::parse_line(t.last_line, "missing optimum field")),
    };
    let profits = t.numbers(n, "profits")?;
    let weights = (0..m)
        .map(|j| t.numbers(n, &format!("weights row {}", j + 1)))
        .collect::<Result<Vec<_>>>()?;
    let capacities = t.numbers(m, "capacities")?;
    if let Some(&(line, tok)) = t.items.get(t.pos) {
        return Err(Error::parse_line(
            line,
            format!(
                "unexpected trailing value {tok:?}: expected exactly {} values for {n} items and {m} constraints",
                3 + n + m * n + m
            ),
        ));
    }
    KnapsackInstance::new(profits, weights, capacities, optimum)
}

fn row(out: &mut String, values: &[f64]) {
    let line: Vec<String> = values.iter().map(|v| format!("{v}")).collect();
    writeln!(out, "{}", line.join(" ")).unwrap();
}

pub fn write_knapsack(inst: &KnapsackInstance, comments: &[&str]) -> String {
    let mut out = String::new();
    for c in comments {
        writeln!(out, "# {c}").unwrap();
    }
    let opt = inst.optimum.map_or_else(|| "-".to_string(), |o| format!("{o}"));
    writeln!(out, "{} {} {opt}", inst.items(), inst.constraints()).unwrap();
    row(&mut out, &inst.profits);
    for w in &inst.weights {
        row(&mut out, w);
    }
    row(&mut out, &inst.capacities);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Location;

    const HAND: &str = "# two items\n2 1 7\n3 4\n5 6\n8\n";

    #[test]
    fn hand_file() {
        let inst = parse_knapsack(HAND).unwrap();
        assert_eq!(inst.profits, vec![3.0, 4.0]);
        assert_eq!(inst.weights, vec![vec![5.0, 6.0]]);
        assert_eq!(inst.capacities, vec![8.0]);
        assert_eq!(inst.optimum, Some(7.0));
        assert_eq!(parse_knapsack(&write_knapsack(&inst, &[])).unwrap(), inst);
    }

    #[test]
    fn unknown_optimum() {
        let inst = parse_knapsack("1 1 -\n2\n3\n4\n").unwrap();
        assert_eq!(inst.optimum, None);
    }

    #[test]
    fn truncated_weights_row_is_named() {
        let err = parse_knapsack("3 2 -\n1 2 3\n1 1 1\n2 2\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("weights row 2"), "{msg}");
        assert!(matches!(err, Error::Parse { at: Location::Line(4), .. }), "{err:?}");
    }

    #[test]
    fn count_mismatch_reports_expected() {
        let msg = parse_knapsack("1 1 -\n2\n3\n4\n5\n").unwrap_err().to_string();
        assert!(msg.contains("expected exactly 6"), "{msg}");
        assert!(parse_knapsack("2 1 -\n1 x\n1 1\n1\n").is_err());
        assert!(parse_knapsack("").is_err());
        assert!(parse_knapsack("0 1 -\n").is_err());
    }
}
