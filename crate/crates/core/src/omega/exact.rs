//! Exact table counting.
//!
//! Rows are consumed one at a time. The state after a row is the multiset of
//! residual column sums, stored sorted with exhausted columns removed, so
//! columns with equal residuals are interchangeable and share a state. Row
//! compositions are generated per group of equal residuals as non-increasing
//! sequences and weighted by their number of distinct orderings. The final
//! row is forced by the residuals.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use rustc_hash::FxHashMap as HashMap;

use super::{LogCount, Margins, STEPS_PER_STATE};
use crate::error::{Error, Result};
use crate::numeric::ln_binomial;

/// Levels with at least this many states are expanded in parallel.
const PARALLEL_THRESHOLD: usize = 64;

/// Upper bounds on the work the exact counter would do.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostEstimate {
    /// Bound on the number of memoized residual states.
    pub states: f64,
    /// Bound on the number of row compositions visited.
    pub steps: f64,
}

impl CostEstimate {
    pub fn fits(&self, budget: u64) -> bool {
        self.states <= budget as f64 && self.steps <= budget.saturating_mul(STEPS_PER_STATE) as f64
    }

    fn total(&self) -> f64 {
        self.states + self.steps
    }
}

fn orientation_cost(rows: &[u64], cols: &[u64]) -> CostEstimate {
    let s = cols.len() as u64;
    let mut sorted = cols.to_vec();
    sorted.sort_unstable();
    // Multisets of residuals within each group of equal column sums.
    let ln_global: f64 = group_runs(&sorted)
        .map(|(v, m)| ln_binomial(v + m as u64, m as u64))
        .sum();

    let mut ln_prev = 0.0;
    let mut prefix = 0u64;
    let mut states = 0.0;
    let mut steps = 0.0;
    for &a in &rows[..rows.len().saturating_sub(1)] {
        steps += (ln_prev + ln_binomial(a + s - 1, s - 1)).exp();
        prefix += a;
        let ln_states = ln_binomial(prefix + s - 1, s - 1).min(ln_global);
        states += ln_states.exp();
        ln_prev = ln_states;
    }
    CostEstimate { states, steps }
}

fn sorted_desc(xs: &[u64]) -> Vec<u64> {
    let mut v = xs.to_vec();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Pick the cheaper orientation; returns (rows, cols, estimate).
fn plan(margins: &Margins) -> (Vec<u64>, Vec<u64>, CostEstimate) {
    let a = sorted_desc(margins.rows());
    let b = sorted_desc(margins.cols());
    let forward = orientation_cost(&a, &b);
    let backward = orientation_cost(&b, &a);
    if backward.total() < forward.total() {
        (b, a, backward)
    } else {
        (a, b, forward)
    }
}

/// Bound on the exact counter's cost for these margins.
pub fn estimate_cost(margins: &Margins) -> CostEstimate {
    plan(margins).2
}

/// Count the tables exactly.
///
/// Fails with [`Error::BudgetExceeded`] once more than `budget` states have
/// been memoized or more than `budget * STEPS_PER_STATE` row compositions
/// have been visited. The result does not depend on the thread count.
pub fn count_exact(margins: &Margins, budget: u64) -> Result<LogCount> {
    let (rows, cols, _) = plan(margins);
    if rows.len() == 1 || cols.len() == 1 {
        return Ok(LogCount::exact(<BigUint as One>::one()));
    }
    // Most counts fit in u128; only redo the work with big integers if not.
    let total = match run::<u128>(&rows, &cols, budget)? {
        Some(total) => BigUint::from(total),
        None => run::<BigUint>(&rows, &cols, budget)?.expect("big integers do not overflow"),
    };
    Ok(LogCount::exact(total))
}

/// Forward pass over the rows. `Ok(None)` means `T` overflowed.
fn run<T: Tally>(rows: &[u64], cols: &[u64], budget: u64) -> Result<Option<T>> {
    let step_limit = budget.saturating_mul(STEPS_PER_STATE);
    let steps = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let overflowed = AtomicBool::new(false);

    let mut start = cols.to_vec();
    start.sort_unstable();
    let mut level: Vec<(Vec<u64>, T)> = vec![(start, T::one())];
    let mut total_states = 0u64;

    for &row in &rows[..rows.len() - 1] {
        let expand = |acc: &mut HashMap<Vec<u64>, T>, (state, count): &(Vec<u64>, T)| {
            if aborted.load(Ordering::Relaxed) || overflowed.load(Ordering::Relaxed) {
                return;
            }
            let mut walker = Compositions::new(state, row);
            walker.run(|next, weight| {
                if !acc.entry(next).or_default().add_product(count, &weight) {
                    overflowed.store(true, Ordering::Relaxed);
                }
            });
            if steps.fetch_add(walker.steps, Ordering::Relaxed) + walker.steps > step_limit {
                aborted.store(true, Ordering::Relaxed);
            }
        };
        let next: HashMap<Vec<u64>, T> = if level.len() >= PARALLEL_THRESHOLD {
            level
                .par_iter()
                .fold(HashMap::default, |mut acc, item| {
                    expand(&mut acc, item);
                    acc
                })
                .reduce(HashMap::default, |a, b| merge(a, b, &overflowed))
        } else {
            let mut acc = HashMap::default();
            for item in &level {
                expand(&mut acc, item);
            }
            acc
        };
        if aborted.load(Ordering::Relaxed) {
            return Err(Error::BudgetExceeded {
                reason: format!("more than {step_limit} row compositions"),
            });
        }
        if overflowed.load(Ordering::Relaxed) {
            return Ok(None);
        }
        total_states += next.len() as u64;
        if total_states > budget {
            return Err(Error::BudgetExceeded {
                reason: format!("more than {budget} memoized states"),
            });
        }
        level = next.into_iter().collect();
    }

    let mut total = T::default();
    for (_, count) in level {
        if !total.add(count) {
            return Ok(None);
        }
    }
    Ok(Some(total))
}

fn merge<T: Tally>(
    mut a: HashMap<Vec<u64>, T>,
    b: HashMap<Vec<u64>, T>,
    overflowed: &AtomicBool,
) -> HashMap<Vec<u64>, T> {
    if a.len() < b.len() {
        return merge(b, a, overflowed);
    }
    for (k, v) in b {
        if !a.entry(k).or_default().add(v) {
            overflowed.store(true, Ordering::Relaxed);
        }
    }
    a
}

/// Table counts accumulated by the forward pass.
trait Tally: Default + Send + Sync {
    fn one() -> Self;
    /// `self += count * weight`; false on overflow.
    fn add_product(&mut self, count: &Self, weight: &Weight) -> bool;
    /// `self += other`; false on overflow.
    fn add(&mut self, other: Self) -> bool;
}

impl Tally for u128 {
    fn one() -> Self {
        1
    }

    fn add_product(&mut self, count: &Self, weight: &Weight) -> bool {
        let Weight::Small(w) = weight else {
            return false;
        };
        match count.checked_mul(*w).and_then(|p| self.checked_add(p)) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }

    fn add(&mut self, other: Self) -> bool {
        match self.checked_add(other) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
}

impl Tally for BigUint {
    fn one() -> Self {
        <BigUint as One>::one()
    }

    fn add_product(&mut self, count: &Self, weight: &Weight) -> bool {
        match weight {
            Weight::Small(w) => *self += count * *w,
            Weight::Big(w) => *self += count * w,
        }
        true
    }

    fn add(&mut self, other: Self) -> bool {
        *self += other;
        true
    }
}

/// Runs of equal values in a sorted slice, as (value, multiplicity).
fn group_runs(sorted: &[u64]) -> impl Iterator<Item = (u64, usize)> + '_ {
    let mut i = 0;
    std::iter::from_fn(move || {
        if i >= sorted.len() {
            return None;
        }
        let v = sorted[i];
        let start = i;
        while i < sorted.len() && sorted[i] == v {
            i += 1;
        }
        Some((v, i - start))
    })
}

/// Distributions of one row sum over a residual multiset, up to permutation
/// of columns with equal residuals.
struct Compositions {
    groups: Vec<(u64, usize)>,
    suffix_capacity: Vec<u64>,
    amounts: Vec<u64>,
    row: u64,
    steps: u64,
}

impl Compositions {
    fn new(state: &[u64], row: u64) -> Self {
        let groups: Vec<(u64, usize)> = group_runs(state).collect();
        let mut suffix_capacity = vec![0u64; groups.len() + 1];
        for g in (0..groups.len()).rev() {
            suffix_capacity[g] = suffix_capacity[g + 1] + groups[g].0 * groups[g].1 as u64;
        }
        Self {
            groups,
            suffix_capacity,
            amounts: Vec::with_capacity(state.len()),
            row,
            steps: 0,
        }
    }

    fn run(&mut self, mut emit: impl FnMut(Vec<u64>, Weight)) {
        let first_cap = self.groups.first().map_or(0, |g| g.0);
        self.visit(0, 0, first_cap, self.row, &mut emit);
    }

    fn visit(
        &mut self,
        group: usize,
        pos: usize,
        max_amount: u64,
        remaining: u64,
        emit: &mut impl FnMut(Vec<u64>, Weight),
    ) {
        if group == self.groups.len() {
            if remaining == 0 {
                self.steps += 1;
                let (state, weight) = self.finish();
                emit(state, weight);
            }
            return;
        }
        let (value, mult) = self.groups[group];
        if pos == mult {
            let next_cap = self.groups.get(group + 1).map_or(0, |g| g.0);
            self.visit(group + 1, 0, next_cap, remaining, emit);
            return;
        }
        let cap = max_amount.min(value);
        let left_in_group = (mult - pos - 1) as u64;
        let rest = self.suffix_capacity[group + 1];
        if remaining > cap * (left_in_group + 1) + rest {
            return;
        }
        for amount in (0..=cap.min(remaining)).rev() {
            let after = remaining - amount;
            if after > amount * left_in_group + rest {
                break;
            }
            self.amounts.push(amount);
            self.visit(group, pos + 1, amount, after, emit);
            self.amounts.pop();
        }
    }

    fn finish(&self) -> (Vec<u64>, Weight) {
        let mut state = Vec::with_capacity(self.amounts.len());
        let mut weight = Weight::new();
        let mut offset = 0;
        for &(value, mult) in &self.groups {
            let amounts = &self.amounts[offset..offset + mult];
            offset += mult;
            state.extend(amounts.iter().map(|&x| value - x).filter(|&r| r > 0));
            let mut placed = 0u64;
            for (_, run) in group_runs(amounts) {
                weight.mul_binomial(placed + run as u64, run as u64);
                placed += run as u64;
            }
        }
        state.sort_unstable();
        (state, weight)
    }
}

/// Product of binomial coefficients, in `u128` until it overflows.
enum Weight {
    Small(u128),
    Big(BigUint),
}

impl Weight {
    fn new() -> Self {
        Weight::Small(1)
    }

    fn mul_binomial(&mut self, n: u64, k: u64) {
        if k == 0 || k == n {
            return;
        }
        let small = small_binomial(n, k);
        *self = match (std::mem::replace(self, Weight::Small(1)), small) {
            (Weight::Small(w), Some(c)) => match w.checked_mul(c) {
                Some(p) => Weight::Small(p),
                None => Weight::Big(BigUint::from(w) * c),
            },
            (Weight::Small(w), None) => Weight::Big(BigUint::from(w) * crate::numeric::binomial(n, k)),
            (Weight::Big(w), Some(c)) => Weight::Big(w * c),
            (Weight::Big(w), None) => Weight::Big(w * crate::numeric::binomial(n, k)),
        };
    }
}

fn small_binomial(n: u64, k: u64) -> Option<u128> {
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}
