//! Reduced mutual information and the adjusted mutual information.
//!
//! The reduced mutual information is the information saved by sending the
//! second labeling with knowledge of the first, once the cost of sending the
//! contingency table itself is paid:
//!
//! `M = (1/n) [ ln(n! ∏c_rs! / ∏a_r! ∏b_s!) - ln Ω(a, b) ]`.

use rayon::prelude::*;

use crate::classic::mutual_information;
use crate::error::{Error, Result};
use crate::numeric::{ln_factorial, order_free_sum, order_free_sum_in_place};
use crate::omega::{self, for_each_table, LogCount, Margins, OmegaOptions};
use crate::partitions::ContingencyTable;

/// Tables are enumerated for the expected mutual information only when
/// there are at most this many of them.
pub const ENUMERATION_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct RmiResult {
    /// Reduced mutual information per object, exact log-factorials.
    pub m_exact: f64,
    /// `I(r;s) - ln Ω / n`, the large-`n` form.
    pub m_stirling: f64,
    pub log_omega: LogCount,
    /// `(1/n) ln(n! ∏c_rs! / ∏a_r! ∏b_s!)`.
    pub first_term: f64,
}

/// `ln(n! ∏c_rs! / ∏a_r! ∏b_s!)`, in total nats.
pub fn ln_table_information(table: &ContingencyTable) -> f64 {
    let cells = order_free_sum(table.cells().iter().map(|&c| ln_factorial(c)).collect());
    let rows = order_free_sum(table.row_sums().iter().map(|&a| ln_factorial(a)).collect());
    let cols = order_free_sum(table.col_sums().iter().map(|&b| ln_factorial(b)).collect());
    ln_factorial(table.total()) + cells - (rows + cols)
}

pub fn reduced_mi(table: &ContingencyTable, options: OmegaOptions) -> Result<RmiResult> {
    let log_omega = omega::count(&table.margins(), options)?;
    Ok(reduced_mi_with(table, log_omega))
}

/// Reduced mutual information given an already computed table count.
pub fn reduced_mi_with(table: &ContingencyTable, log_omega: LogCount) -> RmiResult {
    let n = table.total() as f64;
    let first_term = ln_table_information(table) / n;
    let correction = log_omega.log_value / n;
    RmiResult {
        m_exact: first_term - correction,
        m_stirling: mutual_information(table) - correction,
        log_omega,
        first_term,
    }
}

/// Sparse-regime shortcut obtained by combining the reduced mutual
/// information with the Békéssy estimate of `ln Ω`:
///
/// `M ≈ (1/n) Σ_rs ln c_rs! - (2/n³) Σ_r C(a_r,2) Σ_s C(b_s,2)`.
pub fn reduced_mi_sparse(table: &ContingencyTable) -> f64 {
    let n = table.total() as f64;
    let cells = order_free_sum(table.cells().iter().map(|&c| ln_factorial(c)).collect());
    let pairs = |x: &u64| {
        let x = *x as f64;
        x * (x - 1.0) / 2.0
    };
    let row_pairs = order_free_sum(table.row_sums().iter().map(pairs).collect());
    let col_pairs = order_free_sum(table.col_sums().iter().map(pairs).collect());
    cells / n - 2.0 / (n * n * n) * row_pairs * col_pairs
}

/// Reduced mutual information divided by the mean of the two
/// self-comparison values; one for identical labelings.
pub fn normalized_rmi(table: &ContingencyTable, options: OmegaOptions) -> Result<f64> {
    let log_omega = omega::count(&table.margins(), options)?;
    normalized_rmi_with(table, log_omega.log_value, options)
}

pub fn normalized_rmi_with(
    table: &ContingencyTable,
    log_omega_ab: f64,
    options: OmegaOptions,
) -> Result<f64> {
    let n = table.total();
    let a = table.row_sums();
    let b = table.col_sums();
    let log_omega_aa = omega::count(&Margins::from_parts(a.to_vec(), a.to_vec(), n), options)?;
    let log_omega_bb = omega::count(&Margins::from_parts(b.to_vec(), b.to_vec(), n), options)?;
    normalized_rmi_from_counts(
        table,
        log_omega_ab,
        log_omega_aa.log_value,
        log_omega_bb.log_value,
    )
}

/// Normalized reduced mutual information from `ln Ω(a,b)`, `ln Ω(a,a)` and
/// `ln Ω(b,b)`.
pub fn normalized_rmi_from_counts(
    table: &ContingencyTable,
    log_omega_ab: f64,
    log_omega_aa: f64,
    log_omega_bb: f64,
) -> Result<f64> {
    let n = table.total();
    let ln_multinomial = |m: &[u64]| {
        ln_factorial(n) - order_free_sum(m.iter().map(|&x| ln_factorial(x)).collect())
    };
    let numerator = 2.0 * (ln_table_information(table) - log_omega_ab);
    let denominator = (ln_multinomial(table.row_sums()) + ln_multinomial(table.col_sums()))
        - (log_omega_aa + log_omega_bb);
    if denominator.abs() <= 1e-9 * ln_factorial(n).max(1.0) {
        return Err(Error::UndefinedMeasure {
            measure: "normalized reduced mutual information",
            reason: "neither labeling carries information about itself once the table is paid for",
        });
    }
    Ok(numerator / denominator)
}

/// How the expected mutual information was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmiMethod {
    Enumeration,
    PerCell,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdjustedMi {
    /// Mean of `I(r;s)` over tables drawn from the multivariate
    /// hypergeometric distribution with the observed margins.
    pub emi: f64,
    /// `I(r;s) - emi`, not normalized.
    pub ami: f64,
    pub method: EmiMethod,
}

/// `ln Q_T = ln(∏a_r! ∏b_s! / n! ∏c_rs!)` for a table with these margins.
pub fn ln_hypergeometric_probability(margins: &Margins, cells: &[u64]) -> f64 {
    let rows = order_free_sum(margins.rows().iter().map(|&a| ln_factorial(a)).collect());
    let cols = order_free_sum(margins.cols().iter().map(|&b| ln_factorial(b)).collect());
    let table = order_free_sum(cells.iter().map(|&c| ln_factorial(c)).collect());
    (rows + cols) - (ln_factorial(margins.total()) + table)
}

/// Expected mutual information by enumerating every table.
pub fn expected_mi_enumerated(margins: &Margins, limit: u64) -> Result<f64> {
    let n = margins.total();
    let nf = n as f64;
    let constant = order_free_sum(margins.rows().iter().map(|&a| ln_factorial(a)).collect())
        + order_free_sum(margins.cols().iter().map(|&b| ln_factorial(b)).collect())
        - ln_factorial(n);
    // Per cell, (c/n) ln(n c / a b) for every feasible c.
    let info: Vec<Vec<f64>> = margins
        .rows()
        .iter()
        .flat_map(|&a| {
            margins.cols().iter().map(move |&b| {
                (0..=a.min(b))
                    .map(|c| {
                        let c = c as f64;
                        if c == 0.0 {
                            0.0
                        } else {
                            c / nf * (nf * c / (a as f64 * b as f64)).ln()
                        }
                    })
                    .collect()
            })
        })
        .collect();
    let mut terms = Vec::new();
    let mut ln_cells = Vec::with_capacity(info.len());
    let mut info_cells = Vec::with_capacity(info.len());
    for_each_table(margins, limit, |cells| {
        ln_cells.clear();
        info_cells.clear();
        for (i, &c) in cells.iter().enumerate() {
            if c > 1 {
                ln_cells.push(ln_factorial(c));
            }
            if c > 0 {
                info_cells.push(info[i][c as usize]);
            }
        }
        let q = (constant - order_free_sum_in_place(&mut ln_cells)).exp();
        terms.push(q * order_free_sum_in_place(&mut info_cells));
    })?;
    Ok(order_free_sum(terms))
}

/// Expected mutual information as a sum over cells of the expectation of
/// `(c/n) ln(n c / a b)` under each cell's hypergeometric marginal.
pub fn expected_mi_per_cell(margins: &Margins) -> f64 {
    let n = margins.total();
    let cols = margins.cols();
    let per_row: Vec<f64> = margins
        .rows()
        .par_iter()
        .map(|&a| order_free_sum(cols.iter().map(|&b| cell_expectation(a, b, n)).collect()))
        .collect();
    order_free_sum(per_row)
}

/// Relative probability below which hypergeometric tails are dropped.
const TAIL_CUTOFF: f64 = 1e-20;

fn cell_expectation(a: u64, b: u64, n: u64) -> f64 {
    let lo = (a + b).saturating_sub(n);
    let hi = a.min(b);
    let nf = n as f64;
    let (af, bf) = (a as f64, b as f64);
    let term = |c: u64| {
        if c == 0 {
            0.0
        } else {
            let c = c as f64;
            c / nf * (nf * c / (af * bf)).ln()
        }
    };
    let mode = (((a + 1) as u128 * (b + 1) as u128) / (n + 2) as u128) as u64;
    let mode = mode.clamp(lo, hi);
    let ln_p_mode = ln_factorial(a) + ln_factorial(b) + ln_factorial(n - a) + ln_factorial(n - b)
        - ln_factorial(n)
        - ln_factorial(mode)
        - ln_factorial(a - mode)
        - ln_factorial(b - mode)
        - ln_factorial(n + mode - a - b);
    let p_mode = ln_p_mode.exp();

    let mut terms = vec![p_mode * term(mode)];
    let mut p = p_mode;
    let mut c = mode;
    while c < hi {
        p *= ((a - c) as f64 * (b - c) as f64) / ((c + 1) as f64 * (n + c + 1 - a - b) as f64);
        c += 1;
        if p < TAIL_CUTOFF * p_mode {
            break;
        }
        terms.push(p * term(c));
    }
    let mut p = p_mode;
    let mut c = mode;
    while c > lo {
        p *= (c as f64 * (n + c - a - b) as f64) / ((a - c + 1) as f64 * (b - c + 1) as f64);
        c -= 1;
        if p < TAIL_CUTOFF * p_mode {
            break;
        }
        terms.push(p * term(c));
    }
    order_free_sum(terms)
}

/// Adjusted mutual information `I - <I>`.
///
/// The expectation is computed by enumeration when the margins admit at most
/// [`ENUMERATION_LIMIT`] tables and the exact counter fits `budget`, and by
/// per-cell summation otherwise.
pub fn adjusted_mi(table: &ContingencyTable, budget: u64) -> AdjustedMi {
    let margins = table.margins();
    let mi = mutual_information(table);
    let enumerated = if omega::estimate_cost(&margins).fits(budget) {
        omega::count_exact(&margins, budget)
            .ok()
            .and_then(|count| count.exact_value)
            .filter(|count| *count <= ENUMERATION_LIMIT.into())
            .and_then(|_| expected_mi_enumerated(&margins, ENUMERATION_LIMIT).ok())
    } else {
        None
    };
    let (emi, method) = match enumerated {
        Some(emi) => (emi, EmiMethod::Enumeration),
        None => (expected_mi_per_cell(&margins), EmiMethod::PerCell),
    };
    AdjustedMi {
        emi,
        ami: mi - emi,
        method,
    }
}
