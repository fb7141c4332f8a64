//! Analytic estimates of `ln Ω(a, b)`.

use super::{LogCount, Margins, OmegaMethod};
use crate::error::{Error, Result};
use crate::numeric::{ln_factorial, ln_gamma, order_free_sum};

fn pairs(x: u64) -> f64 {
    let x = x as f64;
    x * (x - 1.0) / 2.0
}

/// Sparse-limit estimate (Békéssy, Békéssy and Komlós):
///
/// `ln Ω ≈ ln(n! / ∏a_r! ∏b_s!) + (2/n²) Σ_r C(a_r, 2) Σ_s C(b_s, 2)`.
///
/// Exact whenever every row sum (or every column sum) is one.
pub fn approx_bbk(margins: &Margins) -> LogCount {
    let n = margins.total();
    let nf = n as f64;
    let ln_rows = order_free_sum(margins.rows().iter().map(|&a| ln_factorial(a)).collect());
    let ln_cols = order_free_sum(margins.cols().iter().map(|&b| ln_factorial(b)).collect());
    let ln_multinomial = ln_factorial(n) - (ln_rows + ln_cols);
    let row_pairs = order_free_sum(margins.rows().iter().map(|&a| pairs(a)).collect());
    let col_pairs = order_free_sum(margins.cols().iter().map(|&b| pairs(b)).collect());
    let correction = 2.0 / (nf * nf) * row_pairs * col_pairs;
    LogCount::approximate(ln_multinomial + correction, OmegaMethod::Bbk)
}

/// How `mu` and `nu` pick up their sums of squares in the symmetrized
/// Diaconis–Efron estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DeVariant {
    /// `mu = (R+1)/(R Σ_s y_s²) - 1/R`, `nu = (S+1)/(S Σ_r x_r²) - 1/S`:
    /// each sum runs over the full index set of its own vector.
    #[default]
    IndexCorrected,
    /// `mu` sums `y_r²` for `r < R` and `nu` sums `x_r²`, read literally.
    /// Only defined when `R <= S`.
    Literal,
}

/// Intermediate quantities of the Diaconis–Efron estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct DeParameters {
    pub w: f64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub mu: f64,
    pub nu: f64,
}

impl DeParameters {
    pub fn new(margins: &Margins, variant: DeVariant) -> Result<Self> {
        let r = margins.rows().len() as f64;
        let s = margins.cols().len() as f64;
        let n = margins.total() as f64;
        let w = n / (n + 0.5 * r * s);
        let x: Vec<f64> = margins
            .rows()
            .iter()
            .map(|&a| (1.0 - w) / r + w * a as f64 / n)
            .collect();
        let y: Vec<f64> = margins
            .cols()
            .iter()
            .map(|&b| (1.0 - w) / s + w * b as f64 / n)
            .collect();
        let x_sq = order_free_sum(x.iter().map(|v| v * v).collect());
        let y_sq: f64 = match variant {
            DeVariant::IndexCorrected => order_free_sum(y.iter().map(|v| v * v).collect()),
            DeVariant::Literal => {
                if x.len() > y.len() {
                    return Err(Error::UndefinedMeasure {
                        measure: "literal Diaconis-Efron estimate",
                        reason: "the sum over y_r needs at least as many columns as rows",
                    });
                }
                order_free_sum(y[..x.len()].iter().map(|v| v * v).collect())
            }
        };
        let mu = (r + 1.0) / (r * y_sq) - 1.0 / r;
        let nu = (s + 1.0) / (s * x_sq) - 1.0 / s;
        Ok(Self { w, x, y, mu, nu })
    }
}

/// Dense-regime estimate: a symmetrized Diaconis–Efron formula.
pub fn approx_de(margins: &Margins) -> LogCount {
    approx_de_with(margins, DeVariant::IndexCorrected)
        .expect("index-corrected estimate is defined for all margins")
}

pub fn approx_de_with(margins: &Margins, variant: DeVariant) -> Result<LogCount> {
    let rows = margins.rows().len();
    let cols = margins.cols().len();
    if rows == 1 || cols == 1 {
        return Ok(LogCount::approximate(0.0, OmegaMethod::DiaconisEfron));
    }
    let p = DeParameters::new(margins, variant)?;
    let r = rows as f64;
    let s = cols as f64;
    let n = margins.total() as f64;
    let sum_ln_x = order_free_sum(p.x.iter().map(|v| v.ln()).collect());
    let sum_ln_y = order_free_sum(p.y.iter().map(|v| v.ln()).collect());
    let gamma_term = ln_gamma(p.mu * r) + ln_gamma(p.nu * s)
        - s * (ln_gamma(p.nu) + ln_gamma(r))
        - r * (ln_gamma(p.mu) + ln_gamma(s));
    let value = (r - 1.0) * (s - 1.0) * (n + 0.5 * r * s).ln()
        + 0.5 * (r + p.nu - 2.0) * sum_ln_y
        + 0.5 * (s + p.mu - 2.0) * sum_ln_x
        + 0.5 * gamma_term;
    Ok(LogCount::approximate(value, OmegaMethod::DiaconisEfron))
}
