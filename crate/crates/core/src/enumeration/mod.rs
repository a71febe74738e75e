//! Exact counts of two-pop-stack sortable permutations, by length and by ascents.
//!
//! `a(n, k)` counts sortable permutations of length `n` with `k` ascents; `b(n, k)`
//! counts those among them whose last block is a single entry. Several independent
//! routes produce the same numbers: the mutual recurrences, series expansion of the
//! generating function, the linear recurrence, the prefix decomposition and plain
//! simulation over all of S_n.

pub mod gf;
pub mod prefix;
pub mod triangle;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::policy::Policy;
use crate::popstack::is_two_pop_sortable;
use crate::sweep;

pub use gf::{expand_bivariate, BivariateRationalGF};
pub use prefix::{classify_prefix, extend_by_case, generate_sortable, PrefixCase};
pub use triangle::{bfile, CountTriangle};

/// `a(n, k)` and `b(n, k)` for `0 <= n <= max_n`, filled row by row.
///
/// Base cases: `a(0, 0) = 1`; for `n >= 1`, `a(n, 0) = a(n, n-1) = 1`;
/// `b(n, n-1) = 1` for `n >= 1` and `b(n, 0) = 0` otherwise. Inside the triangle
/// `a(n, k) = 2 * sum_{i=1}^{n-1} a(i, k-1) - b(n-1, k-1)` and
/// `b(n, k) = 2 * a(n-1, k-1) - b(n-1, k-1)`.
pub fn ab_tables(max_n: usize) -> (CountTriangle, CountTriangle) {
    let mut a = CountTriangle::with_rows(max_n + 1);
    let mut b = CountTriangle::with_rows(max_n + 1);
    a.set(0, 0, BigInt::one());
    for n in 1..=max_n {
        for k in 0..n {
            let av = if k == 0 || k == n - 1 {
                BigInt::one()
            } else {
                let k1 = (k - 1) as i64;
                let sum: BigInt = (1..n).map(|i| a.get(i, k1)).sum();
                2 * sum - b.get(n - 1, k1)
            };
            a.set(n, k, av);

            let bv = if k == n - 1 {
                BigInt::one()
            } else if k < 1 {
                BigInt::zero()
            } else {
                let k1 = (k - 1) as i64;
                2 * a.get(n - 1, k1) - b.get(n - 1, k1)
            };
            b.set(n, k, bv);
        }
    }
    (a, b)
}

pub fn a_table(max_n: usize) -> CountTriangle {
    ab_tables(max_n).0
}

pub fn b_table(max_n: usize) -> CountTriangle {
    ab_tables(max_n).1
}

/// Rows `n` of the `a` and `b` triangles by exhaustive simulation over S_n.
pub fn brute_force_row(n: usize, policy: &Policy) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    policy.check_brute(n)?;
    let width = n.max(1);
    let (a, b) = sweep::fold(
        n,
        || (vec![0u64; width], vec![0u64; width]),
        |(a, b), pi| {
            if is_two_pop_sortable(pi) {
                let k = pi.ascent_count();
                a[k] += 1;
                if pi
                    .blocks()
                    .as_slice()
                    .last()
                    .is_some_and(|bl| bl.len() == 1)
                {
                    b[k] += 1;
                }
            }
        },
        |(mut a1, mut b1), (a2, b2)| {
            a1.iter_mut().zip(a2).for_each(|(x, y)| *x += y);
            b1.iter_mut().zip(b2).for_each(|(x, y)| *x += y);
            (a1, b1)
        },
    );
    let big = |v: Vec<u64>| v.into_iter().map(BigInt::from).collect();
    Ok((big(a), big(b)))
}

/// Both triangles for `0 <= n <= max_n` by simulation.
pub fn brute_force_triangle(
    max_n: usize,
    policy: &Policy,
) -> Result<(CountTriangle, CountTriangle)> {
    policy.check_brute(max_n)?;
    let mut a_rows = Vec::new();
    let mut b_rows = Vec::new();
    for n in 0..=max_n {
        let (a, b) = brute_force_row(n, policy)?;
        a_rows.push(a);
        b_rows.push(b);
    }
    Ok((
        CountTriangle::from_rows(a_rows),
        CountTriangle::from_rows(b_rows),
    ))
}

/// `|P_n| = 2|P_{n-1}| + |P_{n-2}| + 2|P_{n-3}|` for `n >= 4`, seeded with 1, 1, 2, 6.
pub fn linear_recurrence_counts(max_n: usize) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = [1, 1, 2, 6].into_iter().map(BigInt::from).collect();
    for n in 4..=max_n {
        let next = 2 * &out[n - 1] + &out[n - 2] + 2 * &out[n - 3];
        out.push(next);
    }
    out.truncate(max_n + 1);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CountMethod {
    /// Row sums of the `a`/`b` recurrences.
    Recurrence,
    /// Series expansion of the univariate generating function.
    Gf,
    /// Constant-coefficient linear recurrence.
    Linear,
    /// Sizes of the sets built from the prefix decomposition.
    Prefix,
    /// Simulation over all of S_n.
    Bruteforce,
}

impl CountMethod {
    pub const ALL: [CountMethod; 5] = [
        CountMethod::Recurrence,
        CountMethod::Gf,
        CountMethod::Linear,
        CountMethod::Prefix,
        CountMethod::Bruteforce,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CountMethod::Recurrence => "recurrence",
            CountMethod::Gf => "gf",
            CountMethod::Linear => "linear",
            CountMethod::Prefix => "prefix",
            CountMethod::Bruteforce => "bruteforce",
        }
    }

    /// Whether the method walks explicit permutations and so obeys the brute-force cap.
    pub fn is_exhaustive(self) -> bool {
        matches!(self, CountMethod::Prefix | CountMethod::Bruteforce)
    }
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CountMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CountMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown counting method {s:?}")))
    }
}

/// `|P_n|` for `0 <= n <= max_n`.
pub fn total_counts(max_n: usize, method: CountMethod, policy: &Policy) -> Result<Vec<BigInt>> {
    match method {
        CountMethod::Recurrence => Ok(a_table(max_n).row_sums()),
        CountMethod::Gf => Ok(BivariateRationalGF::two_pop_total()
            .series(max_n)
            .into_iter()
            .map(|c| c.into_iter().next().unwrap_or_default())
            .collect()),
        CountMethod::Linear => Ok(linear_recurrence_counts(max_n)),
        CountMethod::Prefix => {
            policy.check_brute(max_n)?;
            (0..=max_n)
                .map(|n| generate_sortable(n, policy).map(|s| BigInt::from(s.len())))
                .collect()
        }
        CountMethod::Bruteforce => {
            policy.check_brute(max_n)?;
            Ok((0..=max_n)
                .map(|n| BigInt::from(sweep::count(n, is_two_pop_sortable)))
                .collect())
        }
    }
}
