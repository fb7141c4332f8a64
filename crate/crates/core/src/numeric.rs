//! Log-factorials, log-binomials and logarithms of big integers.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

const TABLE_SIZE: usize = 4096;

/// Largest `k` whose factorial fits in a `u64`.
const EXACT_LIMIT: u64 = 20;

fn table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| (0..TABLE_SIZE as u64).map(ln_factorial_uncached).collect())
}

fn ln_factorial_uncached(k: u64) -> f64 {
    if k <= EXACT_LIMIT {
        let f: u64 = (1..=k).product();
        return (f as f64).ln();
    }
    // Stirling series for ln Γ(x) with x = k + 1 >= 22; the first omitted
    // term is below 1e-16.
    let x = (k + 1) as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv
        * (1.0 / 12.0
            - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0))));
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + series
}

/// `ln k!`, cached for small `k`.
pub fn ln_factorial(k: u64) -> f64 {
    if (k as usize) < TABLE_SIZE {
        table()[k as usize]
    } else {
        ln_factorial_uncached(k)
    }
}

/// `ln C(n, k)`; `-inf` when `k > n`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// Natural log of the gamma function for real positive arguments.
pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// Natural log of a big integer; `-inf` for zero.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 1000 {
        return x.to_f64().map_or(f64::INFINITY, f64::ln);
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::from(1u32), |acc, k| acc * k)
}

/// `C(n, k)` as a big integer.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Sum that does not depend on the order of its terms: the terms are sorted
/// and accumulated with Neumaier compensation.
pub fn order_free_sum(mut terms: Vec<f64>) -> f64 {
    order_free_sum_in_place(&mut terms)
}

/// Like [`order_free_sum`] but sorts the caller's buffer.
pub fn order_free_sum_in_place(terms: &mut [f64]) -> f64 {
    terms.sort_unstable_by(f64::total_cmp);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for &t in terms.iter() {
        let next = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - next) + t;
        } else {
            comp += (t - next) + sum;
        }
        sum = next;
    }
    sum + comp
}
