//! Machine checks of the Wilf equivalences and of identities and conjectures about
//! the `a`/`b` triangles.
//!
//! Each check yields a [`CheckReport`]. A failing instance always carries the
//! offending `(n, k)` with the expected and observed values; conjectures and identities
//! are reported rather than asserted.

use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::enumeration::{ab_tables, CountTriangle};
use crate::error::{Error, Result};
use crate::patterns::{count_avoiders, ClassicalPattern};
use crate::policy::Policy;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    OutOfRange,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::OutOfRange => "out-of-range",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Which identity or class the instance belongs to.
    pub label: String,
    pub n: usize,
    pub k: Option<usize>,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub label: String,
    pub n: usize,
    pub k: Option<usize>,
    /// Observed value, when the instance compares counts.
    pub value: Option<String>,
    pub status: Status,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Range {
    pub min: usize,
    pub max: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub range: Range,
    pub status: Status,
    #[serde(skip)]
    pub instances: Vec<Instance>,
    pub counterexamples: Vec<Counterexample>,
}

impl CheckReport {
    fn new(check: &str, min: usize, max: usize) -> Self {
        Self {
            check: check.into(),
            range: Range { min, max },
            status: Status::Pass,
            instances: Vec::new(),
            counterexamples: Vec::new(),
        }
    }

    fn record(
        &mut self,
        label: &str,
        n: usize,
        k: Option<usize>,
        expected: &BigInt,
        actual: &BigInt,
    ) {
        let status = if expected == actual {
            Status::Pass
        } else {
            Status::Fail
        };
        if status == Status::Fail {
            self.counterexamples.push(Counterexample {
                label: label.into(),
                n,
                k,
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
        self.push_value(label, n, k, Some(actual.to_string()), status);
    }

    fn push(&mut self, label: &str, n: usize, k: Option<usize>, status: Status) {
        self.push_value(label, n, k, None, status);
    }

    fn push_value(
        &mut self,
        label: &str,
        n: usize,
        k: Option<usize>,
        value: Option<String>,
        status: Status,
    ) {
        self.instances.push(Instance {
            label: label.into(),
            n,
            k,
            value,
            status,
        });
        self.status = match (self.status, status) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::OutOfRange, _) | (_, Status::OutOfRange) => Status::OutOfRange,
            _ => Status::Pass,
        };
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// The first failing instance in check order, which is smallest `n` then `k`.
    pub fn first_counterexample(&self) -> Option<&Counterexample> {
        self.counterexamples.first()
    }

    /// Instances with the given status.
    pub fn count(&self, status: Status) -> usize {
        self.instances.iter().filter(|i| i.status == status).count()
    }

    /// Reports for one label only, e.g. a single identity out of a combined check.
    pub fn restricted_to(&self, label: &str) -> CheckReport {
        let mut out = CheckReport::new(
            &format!("{} {label}", self.check),
            self.range.min,
            self.range.max,
        );
        if let Some(first) = self.instances.iter().find(|i| i.label == label) {
            out.range.min = first.n;
        }
        for inst in self.instances.iter().filter(|i| i.label == label) {
            out.push_value(label, inst.n, inst.k, inst.value.clone(), inst.status);
        }
        out.counterexamples = self
            .counterexamples
            .iter()
            .filter(|c| c.label == label)
            .cloned()
            .collect();
        out
    }
}

/// The three pattern classes shown equinumerous with the two-pop-stack sortable class.
pub const WILF_CLASSES: [[&str; 8]; 3] = [
    [
        "2431", "3412", "3421", "4123", "4213", "4231", "4312", "4321",
    ],
    [
        "2413", "3412", "3421", "4123", "4132", "4213", "4312", "4321",
    ],
    [
        "1342", "1432", "3142", "3412", "4123", "4132", "4213", "4312",
    ],
];

/// Largest `n` the Wilf check sweeps.
pub const WILF_MAX_N: usize = 9;

/// Counts each class of [`WILF_CLASSES`] for `1 <= n <= n_max` against the number of
/// two-pop-stack sortable permutations. Lengths beyond [`WILF_MAX_N`] or the
/// brute-force cap are reported out of range.
pub fn wilf_check(n_max: usize, policy: &Policy) -> CheckReport {
    let limit = WILF_MAX_N.min(policy.max_brute);
    let mut report = CheckReport::new("wilf", 1, n_max);
    let classes: Vec<Vec<ClassicalPattern>> = WILF_CLASSES
        .iter()
        .map(|c| {
            c.iter()
                .map(|p| p.parse().expect("valid pattern"))
                .collect()
        })
        .collect();
    let totals = ab_tables(n_max.min(limit)).0.row_sums();
    for n in 1..=n_max {
        for (i, class) in classes.iter().enumerate() {
            let label = format!("Av({})", WILF_CLASSES[i].join(","));
            if n > limit {
                report.push(&label, n, None, Status::OutOfRange);
                continue;
            }
            let count = BigInt::from(count_avoiders(class, n));
            report.record(&label, n, None, &totals[n], &count);
        }
    }
    report
}

pub const IDENTITY_LABELS: [&str; 4] = [
    "(1) a(n,n-2) = 4(n-2)",
    "(2) a(n,1) = 2(n-2)",
    "(3) a(n,2) = 2n(n-3)",
    "(4) b(n,n-2) = b(n,2) = 4(n-3)+2",
];

/// Evaluates the four identities on the `a`/`b` tables for every `n` in each
/// identity's range up to `n_max`.
pub fn basic_identities_check(n_max: usize) -> CheckReport {
    let (a, b) = ab_tables(n_max);
    let mut report = CheckReport::new("basic-identities", 3, n_max);
    let big = |v: i64| BigInt::from(v);
    for n in 3..=n_max {
        let ni = n as i64;
        report.record(
            IDENTITY_LABELS[0],
            n,
            Some(n - 2),
            &big(4 * (ni - 2)),
            &a.get(n, ni - 2),
        );
        if n < 4 {
            continue;
        }
        report.record(
            IDENTITY_LABELS[1],
            n,
            Some(1),
            &big(2 * (ni - 2)),
            &a.get(n, 1),
        );
        report.record(
            IDENTITY_LABELS[2],
            n,
            Some(2),
            &big(2 * ni * (ni - 3)),
            &a.get(n, 2),
        );
        let rhs = big(4 * (ni - 3) + 2);
        report.record(IDENTITY_LABELS[3], n, Some(n - 2), &rhs, &b.get(n, ni - 2));
        report.record(IDENTITY_LABELS[3], n, Some(2), &rhs, &b.get(n, 2));
    }
    report
}

/// `a(n,k)^2 >= a(n,k-1) a(n,k+1)` for `1 <= k <= n-2`.
pub fn log_concavity_check(n_max: usize) -> CheckReport {
    let a = ab_tables(n_max).0;
    let mut report = CheckReport::new("log-concavity", 3, n_max);
    for n in 3..=n_max {
        for k in 1..=(n - 2) as i64 {
            let square = a.get(n, k).pow(2);
            let product = a.get(n, k - 1) * a.get(n, k + 1);
            let label = "a(n,k)^2 >= a(n,k-1)a(n,k+1)";
            if square >= product {
                report.push(label, n, Some(k as usize), Status::Pass);
            } else {
                report.counterexamples.push(Counterexample {
                    label: label.into(),
                    n,
                    k: Some(k as usize),
                    expected: format!(">= {product}"),
                    actual: square.to_string(),
                });
                report.push(label, n, Some(k as usize), Status::Fail);
            }
        }
    }
    report
}

/// `sum_{i=0}^{n-1} (-1)^i C(2n-2i, n-i) C(n-1, i) 2^(n-i)` for `n >= 1`.
pub fn central_alternating_sum(n: usize) -> BigInt {
    let mut total = BigInt::zero();
    for i in 0..n {
        let term = binomial(BigInt::from(2 * (n - i)), BigInt::from(n - i))
            * binomial(BigInt::from(n - 1), BigInt::from(i))
            * (BigInt::one() << (n - i));
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Coefficients of `(1 + c x)^e` for a rational exponent `e`, through `x^max_n`.
fn binomial_series(e: &BigRational, c: i64, max_n: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(max_n + 1);
    let mut coeff = BigRational::one();
    let c = BigRational::from_integer(BigInt::from(c));
    for k in 0..=max_n {
        out.push(coeff.clone());
        let kk = BigRational::from_integer(BigInt::from(k));
        coeff = coeff * (e - &kk) / (kk + BigRational::one()) * &c;
    }
    out
}

/// Coefficients of `sqrt((1 + x) / (1 - 7x))` through `x^max_n`, as
/// `(1 + x)^(1/2) (1 - 7x)^(-1/2)` in exact rationals. Every coefficient must be an
/// integer; anything else is an internal error.
pub fn central_series(max_n: usize) -> Result<Vec<BigInt>> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let p = binomial_series(&half, 1, max_n);
    let q = binomial_series(&-half, -7, max_n);
    (0..=max_n)
        .map(|n| {
            let c: BigRational = (0..=n).map(|i| &p[i] * &q[n - i]).sum();
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::Internal(format!(
                    "series coefficient of x^{n} is {c}"
                )))
            }
        })
        .collect()
}

/// `a(2n+1, n)` from the table against the alternating sum and the series of
/// `sqrt((1 + x) / (1 - 7x))`, for `1 <= n <= n_max`.
pub fn central_sequence_check(n_max: usize) -> Result<CheckReport> {
    let a = ab_tables(2 * n_max + 1).0;
    let series = central_series(n_max)?;
    let mut report = CheckReport::new("central-sequence", 1, n_max);
    for n in 1..=n_max {
        let table = a.get(2 * n + 1, n as i64);
        let sum = central_alternating_sum(n);
        report.record("alternating sum = series", n, Some(n), &sum, &series[n]);
        report.record("a(2n+1,n) = alternating sum", n, Some(n), &sum, &table);
    }
    Ok(report)
}

/// `a(2n+1, n) = 2 b(2n+1, n)` for `1 <= n <= n_max`.
pub fn half_check(n_max: usize) -> CheckReport {
    let (a, b) = ab_tables(2 * n_max + 1);
    let mut report = CheckReport::new("half", 1, n_max);
    for n in 1..=n_max {
        let k = n as i64;
        let twice_b = 2 * b.get(2 * n + 1, k);
        report.record(
            "a(2n+1,n) = 2b(2n+1,n)",
            n,
            Some(n),
            &twice_b,
            &a.get(2 * n + 1, k),
        );
    }
    report
}

/// The central values `a(2n+1, n)` for `0 <= n <= n_max`.
pub fn central_values(n_max: usize) -> Vec<BigInt> {
    let a: CountTriangle = ab_tables(2 * n_max + 1).0;
    (0..=n_max).map(|n| a.get(2 * n + 1, n as i64)).collect()
}
