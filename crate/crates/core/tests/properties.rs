//! Randomised invariants.

use proptest::prelude::*;

use daga::engines::two_point_crossover;
use daga::ingestion::{parse_dimacs, parse_knapsack, write_dimacs, write_knapsack};
use daga::problems::{hiff, CnfFormula, KnapsackInstance, Literal};
use daga::selection::{truncation_select_unique, TruncationSpec};
use daga::variation::DomainScaler;
use daga::{Genome, Individual, Population};

fn knapsack_strategy() -> impl Strategy<Value = KnapsackInstance> {
    (1usize..12, 1usize..4).prop_flat_map(|(n, m)| {
        (
            prop::collection::vec(0u32..1000, n),
            prop::collection::vec(prop::collection::vec(0u32..500, n), m),
            prop::collection::vec(0u32..3000, m),
        )
            .prop_map(|(p, w, c)| {
                let f = |v: Vec<u32>| v.into_iter().map(f64::from).collect::<Vec<_>>();
                KnapsackInstance::new(f(p), w.into_iter().map(f).collect(), f(c), None).unwrap()
            })
    })
}

fn cnf_strategy() -> impl Strategy<Value = CnfFormula> {
    (3usize..30).prop_flat_map(|n| {
        let lit = (1..=n as Literal, any::<bool>()).prop_map(|(v, neg)| if neg { -v } else { v });
        prop::collection::vec([lit.clone(), lit.clone(), lit], 1..40)
            .prop_map(move |clauses| CnfFormula { num_vars: n, clauses })
    })
}

proptest! {
    #[test]
    fn bitstring_index_round_trip(n in 1usize..20, raw in any::<u32>()) {
        let index = raw as usize % (1 << n);
        let g = Genome::from_index(index, n);
        prop_assert_eq!(g.to_index(), Some(index));
        prop_assert_eq!(Genome::from_bitstring(&g.to_bitstring().unwrap()).unwrap(), g);
    }

    #[test]
    fn crossover_conserves_alleles(a in prop::collection::vec(any::<bool>(), 1..40), seed in any::<u64>()) {
        let b: Vec<bool> = a.iter().enumerate().map(|(i, &x)| x ^ ((seed >> (i % 64)) & 1 == 1)).collect();
        let n = a.len();
        let lo = (seed as usize) % (n + 1);
        let hi = lo + ((seed >> 32) as usize) % (n + 1 - lo);
        let (x, y) = two_point_crossover(&Genome::Binary(a.clone()), &Genome::Binary(b.clone()), lo, hi).unwrap();
        let (x, y) = (x.as_bits().unwrap().to_vec(), y.as_bits().unwrap().to_vec());
        for i in 0..n {
            prop_assert_eq!(x[i] as u8 + y[i] as u8, a[i] as u8 + b[i] as u8);
            prop_assert_eq!(x[i], if (lo..hi).contains(&i) { b[i] } else { a[i] });
        }
    }

    #[test]
    fn truncation_is_unique_sorted_and_bounded(
        fits in prop::collection::vec(0u8..6, 1..60),
        percent in 1.0f64..=100.0,
    ) {
        // Genomes repeat whenever fitness repeats, so duplicates are common.
        let members: Vec<Individual> = fits
            .iter()
            .map(|&f| Individual { genome: Genome::from_index(f as usize, 3), fitness: f as f64 })
            .collect();
        let pop = Population::from_members(members).unwrap();
        let spec = TruncationSpec::new(percent).unwrap();
        let elites = truncation_select_unique(&pop, &spec);
        prop_assert!(!elites.is_empty());
        prop_assert!(elites.len() <= spec.count(pop.capacity()));
        prop_assert!(elites.windows(2).all(|w| w[0].fitness >= w[1].fitness));
        let mut keys: Vec<usize> = elites.iter().map(|e| e.genome.to_index().unwrap()).collect();
        keys.sort();
        keys.dedup();
        prop_assert_eq!(keys.len(), elites.len());
        prop_assert_eq!(elites[0].fitness, pop.best_fitness());
    }

    #[test]
    fn scaler_round_trip(
        bounds in prop::collection::vec((-1e3f64..1e3, 1e-3f64..1e3), 1..10),
        t in prop::collection::vec(0.0f64..=1.0, 10),
    ) {
        let bounds: Vec<(f64, f64)> = bounds.into_iter().map(|(lo, w)| (lo, lo + w)).collect();
        let scaler = DomainScaler::new(&bounds).unwrap();
        let x: Vec<f64> = bounds.iter().zip(&t).map(|(&(lo, hi), &t)| lo + t * (hi - lo)).collect();
        let s = scaler.scale(&x);
        prop_assert!(s.iter().all(|v| (0.0..=1.0).contains(v)));
        for (a, b) in scaler.unscale(&s).iter().zip(&x) {
            prop_assert!((a - b).abs() <= 1e-9 * b.abs().max(1.0));
        }
    }

    #[test]
    fn hiff_bounded_and_mask_symmetric(bits in prop::collection::vec(any::<bool>(), 32)) {
        let v = hiff(&bits).unwrap();
        let flipped: Vec<bool> = bits.iter().map(|b| !b).collect();
        prop_assert_eq!(hiff(&flipped).unwrap(), v);
        prop_assert!(v >= 32 && v <= 32 * 6);
    }

    #[test]
    fn knapsack_file_round_trip(inst in knapsack_strategy()) {
        let text = write_knapsack(&inst, &["generated"]);
        prop_assert_eq!(parse_knapsack(&text).unwrap(), inst);
    }

    #[test]
    fn dimacs_round_trip(cnf in cnf_strategy()) {
        let text = write_dimacs(&cnf, &["generated"]);
        prop_assert_eq!(parse_dimacs(&text).unwrap(), cnf);
    }
}
