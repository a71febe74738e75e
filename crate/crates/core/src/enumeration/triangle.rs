use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

/// Exact table `(n, k) -> count`, one row per length `n`. Rows are stored without
/// trailing zeros; anything not stored reads as zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountTriangle {
    rows: Vec<Vec<BigInt>>,
}

impl CountTriangle {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let rows = rows.into_iter().map(trimmed).collect();
        Self { rows }
    }

    pub(crate) fn with_rows(n_rows: usize) -> Self {
        Self {
            rows: vec![Vec::new(); n_rows],
        }
    }

    pub(crate) fn set(&mut self, n: usize, k: usize, value: BigInt) {
        let row = &mut self.rows[n];
        if row.len() <= k {
            if value.is_zero() {
                return;
            }
            row.resize(k + 1, BigInt::zero());
        }
        row[k] = value;
        while row.last().is_some_and(Zero::is_zero) {
            row.pop();
        }
    }

    /// Entry at `(n, k)`; zero outside the stored range, including negative `k`.
    pub fn get(&self, n: usize, k: i64) -> BigInt {
        if k < 0 {
            return BigInt::zero();
        }
        self.rows
            .get(n)
            .and_then(|r| r.get(k as usize))
            .cloned()
            .unwrap_or_default()
    }

    /// Largest `n` covered.
    pub fn max_n(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        self.rows.get(n).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn row_sum(&self, n: usize) -> BigInt {
        self.row(n).iter().sum()
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        (0..self.rows.len()).map(|n| self.row_sum(n)).collect()
    }

    /// Keeps rows `0..=n`.
    pub fn truncated(&self, n: usize) -> Self {
        Self {
            rows: self.rows.iter().take(n + 1).cloned().collect(),
        }
    }

    /// First `(n, k)` where the two tables differ, over the rows both cover.
    pub fn first_difference(
        &self,
        other: &CountTriangle,
    ) -> Option<(usize, usize, BigInt, BigInt)> {
        let rows = self.rows.len().min(other.rows.len());
        for n in 0..rows {
            let width = self.rows[n].len().max(other.rows[n].len());
            for k in 0..width {
                let (a, b) = (self.get(n, k as i64), other.get(n, k as i64));
                if a != b {
                    return Some((n, k, a, b));
                }
            }
        }
        None
    }

    /// `n,k,count` lines with a header, skipping rows with no entries. Rows with
    /// `n >= 1` are padded to `k = n - 1`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,count\n");
        for n in 0..self.rows.len() {
            let width = n.max(1).max(self.rows[n].len());
            for k in 0..width {
                let _ = writeln!(out, "{n},{k},{}", self.get(n, k as i64));
            }
        }
        out
    }
}

fn trimmed(mut row: Vec<BigInt>) -> Vec<BigInt> {
    while row.last().is_some_and(Zero::is_zero) {
        row.pop();
    }
    row
}

/// OEIS b-file: `n value` per line, starting at `offset`.
pub fn bfile(values: &[BigInt], offset: usize) -> String {
    let mut out = String::new();
    for (i, v) in values.iter().enumerate() {
        let _ = writeln!(out, "{} {v}", i + offset);
    }
    out
}
