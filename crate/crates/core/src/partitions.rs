//! Labelings of `n` objects and the contingency table of a pair of them.

use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::omega::Margins;

/// A division of `n` objects into `R` non-empty groups.
///
/// Group indices are assigned in order of first appearance of each label
/// token, so the same input always yields the same indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    assignments: Vec<usize>,
    group_sizes: Vec<u64>,
    original_labels: Vec<String>,
}

impl Labeling {
    /// Parse a label file: one token per line, blank lines and lines starting
    /// with `#` (after leading whitespace) are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        Self::from_tokens(
            text.lines()
                .map(str::trim)
                .filter(|line| !line.is_empty() && !line.starts_with('#')),
        )
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn from_tokens<I, T>(tokens: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: AsRef<str>,
    {
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut assignments = Vec::new();
        let mut group_sizes: Vec<u64> = Vec::new();
        let mut original_labels = Vec::new();
        for token in tokens {
            let token = token.as_ref();
            let group = match index.get(token) {
                Some(&g) => g,
                None => {
                    let g = original_labels.len();
                    index.insert(token.to_owned(), g);
                    original_labels.push(token.to_owned());
                    group_sizes.push(0);
                    g
                }
            };
            group_sizes[group] += 1;
            assignments.push(group);
        }
        if assignments.is_empty() {
            return Err(Error::EmptyLabeling);
        }
        Ok(Self {
            assignments,
            group_sizes,
            original_labels,
        })
    }

    /// Build from arbitrary integer group ids, renumbered by first appearance.
    pub fn from_ids<T: ToString>(ids: &[T]) -> Result<Self> {
        Self::from_tokens(ids.iter().map(ToString::to_string))
    }

    /// Number of objects `n`.
    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    /// Number of groups `R`.
    pub fn num_groups(&self) -> usize {
        self.group_sizes.len()
    }

    pub fn assignments(&self) -> &[usize] {
        &self.assignments
    }

    pub fn group_sizes(&self) -> &[u64] {
        &self.group_sizes
    }

    pub fn original_labels(&self) -> &[String] {
        &self.original_labels
    }
}

/// `R x S` matrix of co-occurrence counts with cached margins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    rows: usize,
    cols: usize,
    counts: Vec<u64>,
    row_sums: Vec<u64>,
    col_sums: Vec<u64>,
    total: u64,
}

impl ContingencyTable {
    /// Pair two labelings of the same objects by position.
    pub fn from_labelings(first: &Labeling, second: &Labeling) -> Result<Self> {
        if first.len() != second.len() {
            return Err(Error::LengthMismatch {
                first: first.len(),
                second: second.len(),
            });
        }
        let rows = first.num_groups();
        let cols = second.num_groups();
        let mut counts = vec![0u64; rows * cols];
        for (&r, &s) in first.assignments.iter().zip(&second.assignments) {
            counts[r * cols + s] += 1;
        }
        Ok(Self {
            rows,
            cols,
            counts,
            row_sums: first.group_sizes.clone(),
            col_sums: second.group_sizes.clone(),
            total: first.len() as u64,
        })
    }

    /// Build from explicit counts. Every row and column must have a positive sum.
    pub fn from_counts(counts: &[Vec<u64>]) -> Result<Self> {
        let rows = counts.len();
        let cols = counts.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidMargins("table has no cells".into()));
        }
        if counts.iter().any(|row| row.len() != cols) {
            return Err(Error::InvalidMargins("table rows have unequal lengths".into()));
        }
        let flat: Vec<u64> = counts.iter().flatten().copied().collect();
        let row_sums: Vec<u64> = counts.iter().map(|row| row.iter().sum()).collect();
        let col_sums: Vec<u64> = (0..cols).map(|s| counts.iter().map(|row| row[s]).sum()).collect();
        if row_sums.iter().chain(&col_sums).any(|&m| m == 0) {
            return Err(Error::InvalidMargins("every row and column needs a positive sum".into()));
        }
        let total = row_sums.iter().sum();
        Ok(Self {
            rows,
            cols,
            counts: flat,
            row_sums,
            col_sums,
            total,
        })
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, s: usize) -> u64 {
        self.counts[r * self.cols + s]
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.counts[r * self.cols..(r + 1) * self.cols]
    }

    /// All cells in row-major order.
    pub fn cells(&self) -> &[u64] {
        &self.counts
    }

    pub fn row_sums(&self) -> &[u64] {
        &self.row_sums
    }

    pub fn col_sums(&self) -> &[u64] {
        &self.col_sums
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut counts = vec![0u64; self.counts.len()];
        for r in 0..self.rows {
            for s in 0..self.cols {
                counts[s * self.rows + r] = self.get(r, s);
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            counts,
            row_sums: self.col_sums.clone(),
            col_sums: self.row_sums.clone(),
            total: self.total,
        }
    }

    pub fn margins(&self) -> Margins {
        Margins::from_parts(self.row_sums.clone(), self.col_sums.clone(), self.total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(first: &[usize], second: &[usize]) -> ContingencyTable {
        let a = Labeling::from_ids(first).unwrap();
        let b = Labeling::from_ids(second).unwrap();
        ContingencyTable::from_labelings(&a, &b).unwrap()
    }

    #[test]
    fn first_appearance_order() {
        let l = Labeling::from_tokens(["x", "y", "x"]).unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(l.num_groups(), 2);
        assert_eq!(l.assignments(), &[0, 1, 0]);
        assert_eq!(l.group_sizes(), &[2, 1]);
        assert_eq!(l.original_labels(), &["x".to_string(), "y".to_string()]);
    }

    #[test]
    fn single_group() {
        let l = Labeling::from_tokens(["a", "a", "a"]).unwrap();
        assert_eq!(l.num_groups(), 1);
        assert_eq!(l.group_sizes(), &[3]);
    }

    #[test]
    fn parse_skips_comments_and_blanks() {
        let l = Labeling::parse("# header\n\nb\n  # indented comment\na\n b \n\n").unwrap();
        assert_eq!(l.assignments(), &[0, 1, 0]);
        assert_eq!(l.original_labels(), &["b".to_string(), "a".to_string()]);
    }

    #[test]
    fn empty_input_is_rejected() {
        assert!(matches!(Labeling::parse(""), Err(Error::EmptyLabeling)));
        assert!(matches!(Labeling::parse("# only\n\n"), Err(Error::EmptyLabeling)));
    }

    #[test]
    fn identical_labelings() {
        let t = table(&[0, 0, 1, 1], &[0, 0, 1, 1]);
        assert_eq!(t.to_rows(), vec![vec![2, 0], vec![0, 2]]);
    }

    #[test]
    fn one_group_row() {
        let t = table(&[0, 0, 0, 0], &[0, 1, 0, 1]);
        assert_eq!(t.to_rows(), vec![vec![2, 2]]);
    }

    #[test]
    fn singleton_rows() {
        let t = table(&[0, 1, 2, 3], &[0, 0, 1, 1]);
        assert_eq!(t.to_rows(), vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]]);
        assert_eq!(t.row_sums(), &[1, 1, 1, 1]);
        assert_eq!(t.col_sums(), &[2, 2]);
        assert_eq!(t.total(), 4);
    }

    #[test]
    fn length_mismatch_names_both_lengths() {
        let a = Labeling::from_ids(&[0, 1, 2]).unwrap();
        let b = Labeling::from_ids(&[0, 1]).unwrap();
        let err = ContingencyTable::from_labelings(&a, &b).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains('3') && msg.contains('2'), "{msg}");
    }

    #[test]
    fn from_counts_rejects_empty_margins() {
        assert!(ContingencyTable::from_counts(&[vec![1, 0], vec![1, 0]]).is_err());
        assert!(ContingencyTable::from_counts(&[vec![1, 0], vec![1]]).is_err());
        assert!(ContingencyTable::from_counts(&[]).is_err());
    }

    #[test]
    fn transpose_swaps_margins() {
        let t = table(&[0, 0, 1, 2], &[0, 1, 1, 1]);
        let tt = t.transpose();
        assert_eq!(tt.row_sums(), t.col_sums());
        assert_eq!(tt.transpose(), t);
    }
}
