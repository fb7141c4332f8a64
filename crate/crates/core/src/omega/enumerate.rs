use super::Margins;
use crate::error::{Error, Result};

/// Visit every table with the given margins as a row-major cell slice.
///
/// Stops with [`Error::BudgetExceeded`] after `limit` tables.
pub fn for_each_table(margins: &Margins, limit: u64, mut visit: impl FnMut(&[u64])) -> Result<u64> {
    let rows = margins.rows();
    let cols = margins.cols().len();
    let mut cells = vec![0u64; rows.len() * cols];
    let mut residual = margins.cols().to_vec();
    let mut seen = 0u64;
    fill_row(rows, cols, 0, 0, rows[0], &mut residual, &mut cells, &mut seen, limit, &mut visit)?;
    Ok(seen)
}

#[allow(clippy::too_many_arguments)]
fn fill_row(
    rows: &[u64],
    cols: usize,
    r: usize,
    s: usize,
    remaining: u64,
    residual: &mut [u64],
    cells: &mut [u64],
    seen: &mut u64,
    limit: u64,
    visit: &mut impl FnMut(&[u64]),
) -> Result<()> {
    if r + 1 == rows.len() {
        // Last row takes whatever is left.
        cells[r * cols..].copy_from_slice(residual);
        *seen += 1;
        if *seen > limit {
            return Err(Error::BudgetExceeded {
                reason: format!("more than {limit} tables to enumerate"),
            });
        }
        visit(cells);
        return Ok(());
    }
    if s + 1 == cols {
        if remaining > residual[s] {
            return Ok(());
        }
        cells[r * cols + s] = remaining;
        residual[s] -= remaining;
        let result = fill_row(rows, cols, r + 1, 0, rows[r + 1], residual, cells, seen, limit, visit);
        residual[s] += remaining;
        return result;
    }
    let capacity_after: u64 = residual[s + 1..].iter().sum();
    let low = remaining.saturating_sub(capacity_after);
    for c in low..=remaining.min(residual[s]) {
        cells[r * cols + s] = c;
        residual[s] -= c;
        let result = fill_row(rows, cols, r, s + 1, remaining - c, residual, cells, seen, limit, visit);
        residual[s] += c;
        result?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_two_by_two() {
        let m = Margins::new(vec![2, 2], vec![2, 2]).unwrap();
        let mut tables = Vec::new();
        let count = for_each_table(&m, 100, |t| tables.push(t.to_vec())).unwrap();
        assert_eq!(count, 3);
        for t in &tables {
            assert_eq!(t[0] + t[1], 2);
            assert_eq!(t[0] + t[2], 2);
        }
    }

    #[test]
    fn limit_is_enforced() {
        let m = Margins::new(vec![1; 5], vec![1; 5]).unwrap();
        assert!(for_each_table(&m, 119, |_| {}).is_err());
        assert_eq!(for_each_table(&m, 120, |_| {}).unwrap(), 120);
    }
}
