use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Largest per-sample size for which the exact null distribution is used.
pub const EXACT_LIMIT: usize = 10;

/// Midranks (1-based) of `values`, doubled so they stay integral.
fn doubled_midranks(values: &[f64]) -> Vec<u64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0u64; values.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && values[idx[j + 1]] == values[idx[i]] {
            j += 1;
        }
        // Positions i..=j share rank ((i+1) + (j+1)) / 2.
        let doubled = (i + j + 2) as u64;
        for &k in &idx[i..=j] {
            ranks[k] = doubled;
        }
        i = j + 1;
    }
    ranks
}

/// Two-sided Wilcoxon rank-sum (Mann-Whitney) p-value.
///
/// Ties get midranks. When both samples have at most [`EXACT_LIMIT`]
/// values the p-value comes from the exact permutation distribution of the
/// rank sum given the observed ties; otherwise from the normal approximation
/// with tie-corrected variance and a continuity correction.
pub fn rank_sum_test(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() < 3 || b.len() < 3 {
        return Err(Error::InvalidInput(format!(
            "rank-sum test needs at least 3 values per sample, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    if a.iter().chain(b).any(|v| v.is_nan()) {
        return Err(Error::InvalidInput("rank-sum test input contains NaN".into()));
    }
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    if pooled.iter().all(|&v| v == pooled[0]) {
        return Ok(1.0);
    }
    let ranks = doubled_midranks(&pooled);
    let (n, m) = (a.len(), b.len());
    if n <= EXACT_LIMIT && m <= EXACT_LIMIT {
        Ok(exact_p(&ranks, n))
    } else {
        Ok(normal_p(&pooled, &ranks, n, m))
    }
}

/// Exact two-sided p-value; the first `n` entries of `ranks` form the sample.
fn exact_p(ranks: &[u64], n: usize) -> f64 {
    let total_n = ranks.len() as u64;
    let observed: u64 = ranks[..n].iter().sum();
    // Doubled rank sum has mean n (N + 1).
    let centre = n as u64 * (total_n + 1);
    let dev = observed.abs_diff(centre);
    let max_sum: usize = ranks.iter().map(|&r| r as usize).sum();
    // ways[k][s]: subsets of size k with doubled rank sum s.
    let mut ways = vec![vec![0u64; max_sum + 1]; n + 1];
    ways[0][0] = 1;
    for &r in ranks {
        let r = r as usize;
        for k in (1..=n).rev() {
            let (lo, hi) = ways.split_at_mut(k);
            for s in (r..=max_sum).rev() {
                hi[0][s] += lo[k - 1][s - r];
            }
        }
    }
    let (mut extreme, mut total) = (0u64, 0u64);
    for (s, &w) in ways[n].iter().enumerate() {
        total += w;
        if (s as u64).abs_diff(centre) >= dev {
            extreme += w;
        }
    }
    extreme as f64 / total as f64
}

fn normal_p(pooled: &[f64], ranks: &[u64], n: usize, m: usize) -> f64 {
    let (nf, mf) = (n as f64, m as f64);
    let total = nf + mf;
    let w: f64 = ranks[..n].iter().map(|&r| r as f64 / 2.0).sum();
    let u = w - nf * (nf + 1.0) / 2.0;
    let mean = nf * mf / 2.0;

    let mut sorted = pooled.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let j = sorted[i..].iter().take_while(|&&v| v == sorted[i]).count();
        let t = j as f64;
        tie_term += t * t * t - t;
        i += j;
    }
    let var = nf * mf / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));
    let z = ((u - mean).abs() - 0.5).max(0.0) / var.sqrt();
    let std = Normal::new(0.0, 1.0).expect("standard normal");
    (2.0 * (1.0 - std.cdf(z))).min(1.0)
}
