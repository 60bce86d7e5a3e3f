//! Bundled data files parse and carry correct optima.

use std::path::PathBuf;

use daga::ingestion::{parse_dimacs, parse_knapsack, parse_patterns};
use daga::problems::{box_pattern, cross_pattern, maxsat, KnapsackInstance};

fn data(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Exact 0/1 knapsack optimum by dynamic programming over every capacity
/// combination. Only practical for one or two small integer constraints.
fn dp_optimum(inst: &KnapsackInstance) -> f64 {
    let caps: Vec<usize> = inst.capacities.iter().map(|&c| c as usize).collect();
    let (c1, c2) = match caps[..] {
        [a] => (a, 0),
        [a, b] => (a, b),
        _ => panic!("oracle handles at most two constraints"),
    };
    let w = |k: usize, i: usize| inst.weights.get(k).map_or(0, |r| r[i] as usize);
    let stride = c2 + 1;
    let mut best = vec![0u64; (c1 + 1) * stride];
    for i in 0..inst.profits.len() {
        let (a, b, p) = (w(0, i), w(1, i), inst.profits[i] as u64);
        for x in (a..=c1).rev() {
            for y in (b..=c2).rev() {
                let cand = best[(x - a) * stride + y - b] + p;
                if cand > best[x * stride + y] {
                    best[x * stride + y] = cand;
                }
            }
        }
    }
    best[c1 * stride + c2] as f64
}

fn check_knapsack(file: &str, items: usize, constraints: usize) {
    let inst = parse_knapsack(&data(file)).unwrap();
    assert_eq!((inst.items(), inst.constraints()), (items, constraints));
    assert!(inst.weights.iter().flatten().chain(&inst.capacities).chain(&inst.profits).all(|v| v.fract() == 0.0));
    assert_eq!(inst.optimum, Some(dp_optimum(&inst)), "{file}");
}

#[test]
fn knapsack_105x2_optimum_is_exact() {
    check_knapsack("knapsack-105x2.txt", 105, 2);
}

#[test]
fn knapsack_500_optimum_is_exact() {
    check_knapsack("knapsack-500.txt", 500, 1);
}

#[test]
fn dp_oracle_agrees_with_enumeration() {
    let inst = KnapsackInstance::new(
        vec![6.0, 5.0, 8.0, 9.0, 6.0, 7.0, 3.0],
        vec![vec![2.0, 3.0, 6.0, 7.0, 5.0, 9.0, 4.0], vec![8.0, 1.0, 2.0, 5.0, 3.0, 3.0, 1.0]],
        vec![15.0, 10.0],
        None,
    )
    .unwrap();
    let mut best = 0.0f64;
    for s in 0u32..1 << 7 {
        let take = |i: usize| s >> i & 1 == 1;
        let fits = (0..2).all(|k| (0..7).filter(|&i| take(i)).map(|i| inst.weights[k][i]).sum::<f64>() <= inst.capacities[k]);
        if fits {
            best = best.max((0..7).filter(|&i| take(i)).map(|i| inst.profits[i]).sum());
        }
    }
    assert_eq!(dp_optimum(&inst), best);
}

#[test]
fn maxsat_instance_is_satisfiable() {
    let text = data("maxsat-100-430.cnf");
    let cnf = parse_dimacs(&text).unwrap();
    assert_eq!((cnf.num_vars, cnf.clauses.len()), (100, 430));
    let planted: Vec<bool> = text
        .lines()
        .find_map(|l| l.strip_prefix("c planted: "))
        .expect("planted assignment comment")
        .trim()
        .chars()
        .map(|c| c == '1')
        .collect();
    assert_eq!(maxsat(&planted, &cnf), 430);
}

#[test]
fn pattern_file_matches_builtins() {
    let lib = parse_patterns(&data("patterns.txt")).unwrap();
    assert_eq!(lib, vec![box_pattern(), cross_pattern()]);
}
