//! Counting non-negative integer matrices with fixed row and column sums.
//!
//! Four backends are available: an exact dynamic program over sorted
//! residual column sums, the sparse-limit estimate of Békéssy, Békéssy and
//! Komlós, a symmetrized Diaconis–Efron estimate for dense tables, and an
//! automatic choice between them.

mod approx;
mod enumerate;
mod exact;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::ln_biguint;

pub use approx::{approx_bbk, approx_de, approx_de_with, DeParameters, DeVariant};
pub use enumerate::for_each_table;
pub use exact::{count_exact, estimate_cost, CostEstimate};

/// Default cap on the number of memoized states the exact counter may create.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// The exact counter also stops after this many composition steps per unit
/// of state budget.
pub const STEPS_PER_STATE: u64 = 50;

/// Row sums `a` and column sums `b` of a table, validated to be positive and
/// to share the same total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Margins {
    rows: Vec<u64>,
    cols: Vec<u64>,
    total: u64,
}

impl Margins {
    pub fn new(rows: Vec<u64>, cols: Vec<u64>) -> Result<Self> {
        if rows.is_empty() || cols.is_empty() {
            return Err(Error::InvalidMargins("row and column sums must be non-empty".into()));
        }
        if rows.iter().chain(&cols).any(|&x| x == 0) {
            return Err(Error::InvalidMargins("all row and column sums must be positive".into()));
        }
        let total: u64 = rows.iter().sum();
        let col_total: u64 = cols.iter().sum();
        if total != col_total {
            return Err(Error::InvalidMargins(format!(
                "row sums total {total} but column sums total {col_total}"
            )));
        }
        Ok(Self { rows, cols, total })
    }

    pub(crate) fn from_parts(rows: Vec<u64>, cols: Vec<u64>, total: u64) -> Self {
        debug_assert_eq!(rows.iter().sum::<u64>(), total);
        debug_assert_eq!(cols.iter().sum::<u64>(), total);
        Self { rows, cols, total }
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn cols(&self) -> &[u64] {
        &self.cols
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            total: self.total,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OmegaMethod {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "bbk")]
    Bbk,
    #[serde(rename = "de")]
    DiaconisEfron,
    #[serde(rename = "auto")]
    Auto,
}

impl OmegaMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            OmegaMethod::Exact => "exact",
            OmegaMethod::Bbk => "bbk",
            OmegaMethod::DiaconisEfron => "de",
            OmegaMethod::Auto => "auto",
        }
    }
}

impl fmt::Display for OmegaMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OmegaMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(OmegaMethod::Exact),
            "bbk" => Ok(OmegaMethod::Bbk),
            "de" | "diaconis-efron" => Ok(OmegaMethod::DiaconisEfron),
            "auto" => Ok(OmegaMethod::Auto),
            other => Err(format!("unknown omega method '{other}' (expected auto, exact, bbk or de)")),
        }
    }
}

/// `ln Ω(a, b)` together with the backend that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct LogCount {
    pub log_value: f64,
    pub method: OmegaMethod,
    /// Present iff `method` is [`OmegaMethod::Exact`].
    pub exact_value: Option<BigUint>,
}

impl LogCount {
    pub fn exact(value: BigUint) -> Self {
        Self {
            log_value: ln_biguint(&value),
            method: OmegaMethod::Exact,
            exact_value: Some(value),
        }
    }

    pub(crate) fn approximate(log_value: f64, method: OmegaMethod) -> Self {
        Self {
            log_value,
            method,
            exact_value: None,
        }
    }
}

/// Backend selection plus the exact counter's state budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OmegaOptions {
    pub method: OmegaMethod,
    pub budget: u64,
}

impl Default for OmegaOptions {
    fn default() -> Self {
        Self {
            method: OmegaMethod::Auto,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl OmegaOptions {
    pub fn new(method: OmegaMethod) -> Self {
        Self {
            method,
            ..Self::default()
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }
}

/// Count tables with the requested backend.
pub fn count(margins: &Margins, options: OmegaOptions) -> Result<LogCount> {
    match options.method {
        OmegaMethod::Exact => count_exact(margins, options.budget),
        OmegaMethod::Bbk => Ok(approx_bbk(margins)),
        OmegaMethod::DiaconisEfron => Ok(approx_de(margins)),
        OmegaMethod::Auto => Ok(count_auto(margins, options.budget)),
    }
}

/// Sparse regime: mean cell occupancy at most one and the smaller of the two
/// largest margins no more than `max(2, ln n)`.
pub fn is_sparse(margins: &Margins) -> bool {
    let n = margins.total as f64;
    let cells = margins.rows.len() as f64 * margins.cols.len() as f64;
    let max_row = margins.rows.iter().copied().max().unwrap_or(0);
    let max_col = margins.cols.iter().copied().max().unwrap_or(0);
    n / cells <= 1.0 && (max_row.min(max_col) as f64) <= n.ln().max(2.0)
}

/// Exact when the estimated cost fits the budget, otherwise BBK for sparse
/// tables and Diaconis–Efron for dense ones.
pub fn count_auto(margins: &Margins, budget: u64) -> LogCount {
    let estimate = estimate_cost(margins);
    if estimate.fits(budget) {
        if let Ok(count) = count_exact(margins, budget) {
            return count;
        }
    }
    if is_sparse(margins) {
        approx_bbk(margins)
    } else {
        approx_de(margins)
    }
}
