//! Test oracles and generators shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigUint;
use rand::Rng;
use rmi_core::Labeling;

/// All ordered ways to write `n` as a sum of `parts` positive integers.
pub fn compositions(n: u64, parts: usize) -> Vec<Vec<u64>> {
    fn go(n: u64, parts: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if parts == 1 {
            if n >= 1 {
                prefix.push(n);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        for first in 1..n {
            if n - first < (parts - 1) as u64 {
                break;
            }
            prefix.push(first);
            go(n - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts >= 1 && n >= parts as u64 {
        go(n, parts, &mut Vec::new(), &mut out);
    }
    out
}

/// All ways to write `total` as `parts` non-negative integers.
fn weak_compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in weak_compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Count tables by listing every matrix with the given row sums and keeping
/// those whose column sums match.
pub fn brute_force_count(rows: &[u64], cols: &[u64]) -> BigUint {
    let choices: Vec<Vec<Vec<u64>>> = rows
        .iter()
        .map(|&a| weak_compositions(a, cols.len()))
        .collect();
    let mut sums = vec![0u64; cols.len()];
    let mut count = 0u64;
    fn go(choices: &[Vec<Vec<u64>>], r: usize, sums: &mut [u64], cols: &[u64], count: &mut u64) {
        if r == choices.len() {
            if sums == cols {
                *count += 1;
            }
            return;
        }
        for row in &choices[r] {
            for (s, x) in sums.iter_mut().zip(row) {
                *s += x;
            }
            go(choices, r + 1, sums, cols, count);
            for (s, x) in sums.iter_mut().zip(row) {
                *s -= x;
            }
        }
    }
    go(&choices, 0, &mut sums, cols, &mut count);
    BigUint::from(count)
}

/// `n! / ∏ b!` by big-integer arithmetic.
pub fn multinomial(parts: &[u64]) -> BigUint {
    let n: u64 = parts.iter().sum();
    let num = rmi_core::numeric::factorial(n);
    parts
        .iter()
        .fold(num, |acc, &b| acc / rmi_core::numeric::factorial(b))
}

/// Labels drawn uniformly from `groups` values.
pub fn random_ids(rng: &mut impl Rng, n: usize, groups: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..groups)).collect()
}

pub fn random_labeling(rng: &mut impl Rng, n: usize, groups: usize) -> Labeling {
    Labeling::from_ids(&random_ids(rng, n, groups)).unwrap()
}

/// Sizes of a random labeling of `n` objects into at most `groups` groups.
pub fn random_margin(rng: &mut impl Rng, n: usize, groups: usize) -> Vec<u64> {
    random_labeling(rng, n, groups).group_sizes().to_vec()
}
