//! Entropy, conditional entropy, mutual information and the related
//! measures, plus the four exact encoding lengths of a labeling given the
//! other one. Everything is in nats per object.

use crate::error::{Error, Result};
use crate::numeric::{ln_binomial, ln_factorial, order_free_sum};
use crate::omega::{self, OmegaOptions};
use crate::partitions::ContingencyTable;

/// Entropy of a group-size distribution. Zero entries contribute nothing.
pub fn entropy(margin: &[u64], n: u64) -> f64 {
    let n = n as f64;
    -order_free_sum(
        margin
            .iter()
            .filter(|&&b| b > 0)
            .map(|&b| {
                let p = b as f64 / n;
                p * p.ln()
            })
            .collect(),
    )
}

/// `H(s|r) = -Σ_rs P(r,s) ln[P(r,s)/P(r)]`.
pub fn conditional_entropy(table: &ContingencyTable) -> f64 {
    conditional(table, false)
}

/// `H(r|s)`, the conditional entropy of the first labeling given the second.
pub fn conditional_entropy_rows(table: &ContingencyTable) -> f64 {
    conditional(table, true)
}

fn conditional(table: &ContingencyTable, given_cols: bool) -> f64 {
    let n = table.total() as f64;
    let mut terms = Vec::with_capacity(table.cells().len());
    for r in 0..table.num_rows() {
        for (s, &c) in table.row(r).iter().enumerate() {
            if c == 0 {
                continue;
            }
            let given = if given_cols {
                table.col_sums()[s]
            } else {
                table.row_sums()[r]
            };
            let c = c as f64;
            terms.push(c / n * (c / given as f64).ln());
        }
    }
    -order_free_sum(terms)
}

/// `I(r;s) = Σ_rs P(r,s) ln[P(r,s) / P(r)P(s)]`.
pub fn mutual_information(table: &ContingencyTable) -> f64 {
    let n = table.total() as f64;
    let mut terms = Vec::with_capacity(table.cells().len());
    for r in 0..table.num_rows() {
        let a = table.row_sums()[r] as f64;
        for (s, &c) in table.row(r).iter().enumerate() {
            if c == 0 {
                continue;
            }
            let b = table.col_sums()[s] as f64;
            let c = c as f64;
            terms.push(c / n * (n * c / (a * b)).ln());
        }
    }
    order_free_sum(terms)
}

/// Mutual information divided by the mean of the two entropies.
pub fn normalized_mi(table: &ContingencyTable) -> Result<f64> {
    let h_r = entropy(table.row_sums(), table.total());
    let h_s = entropy(table.col_sums(), table.total());
    let denom = 0.5 * (h_r + h_s);
    if denom <= 0.0 {
        return Err(Error::UndefinedMeasure {
            measure: "normalized mutual information",
            reason: "both labelings put every object in a single group",
        });
    }
    Ok(mutual_information(table) / denom)
}

/// `H(s|r) + H(r|s)`; a metric on partitions.
pub fn variation_of_information(table: &ContingencyTable) -> f64 {
    conditional_entropy(table) + conditional_entropy_rows(table)
}

/// Information per object needed to send the second labeling under four
/// encodings of increasing efficiency, in nats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EncodingLengths {
    /// Raw labels: `⌈n log₂ S⌉` bits.
    pub h1: f64,
    /// Group sizes, then the labeling among those with those sizes.
    pub h2: f64,
    /// Table with known row sums, then the labeling.
    pub h3: f64,
    /// Group sizes, table with both margins known, then the labeling.
    pub h4: f64,
}

/// `(1/n) ln C(n-1, S-1)`, the cost of sending the column sums.
pub fn ln_compositions_per_object(n: u64, groups: usize) -> f64 {
    ln_binomial(n - 1, groups as u64 - 1) / n as f64
}

/// `Σ_r ln(a_r! / ∏_s c_rs!)`.
fn ln_row_multinomials(table: &ContingencyTable) -> f64 {
    let rows = table.row_sums().iter().map(|&a| ln_factorial(a)).collect();
    let cells = table.cells().iter().map(|&c| ln_factorial(c)).collect();
    order_free_sum(rows) - order_free_sum(cells)
}

pub fn encoding_lengths(table: &ContingencyTable, options: OmegaOptions) -> Result<EncodingLengths> {
    let log_omega = omega::count(&table.margins(), options)?.log_value;
    Ok(encoding_lengths_with(table, log_omega))
}

/// Encoding lengths given an already computed `ln Ω(a, b)`.
pub fn encoding_lengths_with(table: &ContingencyTable, log_omega: f64) -> EncodingLengths {
    let n = table.total();
    let nf = n as f64;
    let s = table.num_cols() as u64;

    let h1 = if s == 1 {
        0.0
    } else {
        (nf * (s as f64).log2()).ceil() * std::f64::consts::LN_2 / nf
    };

    let compositions = ln_compositions_per_object(n, table.num_cols());
    let ln_col_multinomial = ln_factorial(n)
        - order_free_sum(table.col_sums().iter().map(|&b| ln_factorial(b)).collect());
    let h2 = compositions + ln_col_multinomial / nf;

    let row_tables = order_free_sum(
        table
            .row_sums()
            .iter()
            .map(|&a| ln_binomial(a + s - 1, s - 1))
            .collect(),
    );
    let row_multinomials = ln_row_multinomials(table);
    let h3 = (row_tables + row_multinomials) / nf;

    let h4 = compositions + (log_omega + row_multinomials) / nf;

    EncodingLengths { h1, h2, h3, h4 }
}
