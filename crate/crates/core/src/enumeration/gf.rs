//! Rational generating functions in `x` whose coefficients are integer polynomials
//! in `y`, expanded as exact power series in `x`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::triangle::CountTriangle;
use crate::error::{Error, Result};

/// Polynomial in `y`, lowest degree first.
pub type PolyY = Vec<BigInt>;

/// `numerator / denominator`, both indexed `[power of x][power of y]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateRationalGF {
    numerator: Vec<PolyY>,
    denominator: Vec<PolyY>,
}

fn poly(coeffs: &[i64]) -> PolyY {
    coeffs.iter().map(|&c| BigInt::from(c)).collect()
}

fn is_constant(p: &PolyY, c: &BigInt) -> bool {
    p.first().unwrap_or(&BigInt::zero()) == c && p.iter().skip(1).all(Zero::is_zero)
}

fn add_scaled_product(acc: &mut PolyY, a: &PolyY, b: &PolyY, sign: i32) {
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if acc.len() <= i + j {
                acc.resize(i + j + 1, BigInt::zero());
            }
            let term = ai * bj;
            if sign < 0 {
                acc[i + j] -= term;
            } else {
                acc[i + j] += term;
            }
        }
    }
}

impl BivariateRationalGF {
    /// The denominator's `x^0` coefficient must be the constant `1` or `-1`.
    pub fn new(numerator: Vec<PolyY>, denominator: Vec<PolyY>) -> Result<Self> {
        let unit = denominator
            .first()
            .is_some_and(|d0| is_constant(d0, &BigInt::one()) || is_constant(d0, &-BigInt::one()));
        if !unit {
            return Err(Error::InvalidInput(
                "denominator constant term is not a unit".into(),
            ));
        }
        Ok(Self {
            numerator,
            denominator,
        })
    }

    /// `(1 - xy - x^2y + x^3y - 2x^3y^2) / (1 - x - xy - x^2y - 2x^3y^2)`: two-pop-stack
    /// sortable permutations by length (`x`) and ascents (`y`).
    pub fn two_pop_by_ascents() -> Self {
        Self::new(
            vec![
                poly(&[1]),
                poly(&[0, -1]),
                poly(&[0, -1]),
                poly(&[0, 1, -2]),
            ],
            vec![
                poly(&[1]),
                poly(&[-1, -1]),
                poly(&[0, -1]),
                poly(&[0, 0, -2]),
            ],
        )
        .expect("unit constant term")
    }

    /// `(1 - x - x^2 - x^3) / (1 - 2x - x^2 - 2x^3)`, the `y = 1` specialization.
    pub fn two_pop_total() -> Self {
        Self::new(
            vec![poly(&[1]), poly(&[-1]), poly(&[-1]), poly(&[-1])],
            vec![poly(&[1]), poly(&[-2]), poly(&[-1]), poly(&[-2])],
        )
        .expect("unit constant term")
    }

    /// Substitutes `y = 1`.
    pub fn at_y_one(&self) -> Self {
        let collapse = |ps: &[PolyY]| -> Vec<PolyY> {
            ps.iter().map(|p| vec![p.iter().sum::<BigInt>()]).collect()
        };
        Self {
            numerator: collapse(&self.numerator),
            denominator: collapse(&self.denominator),
        }
    }

    /// Coefficients of `x^0 .. x^max_n`, each a polynomial in `y`.
    pub fn series(&self, max_n: usize) -> Vec<PolyY> {
        let d0_negative = self.denominator[0][0].is_negative();
        let mut out: Vec<PolyY> = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            let mut c = self.numerator.get(n).cloned().unwrap_or_default();
            for j in 1..=n.min(self.denominator.len().saturating_sub(1)) {
                add_scaled_product(&mut c, &self.denominator[j], &out[n - j], -1);
            }
            if d0_negative {
                c.iter_mut().for_each(|v| *v = -v.clone());
            }
            while c.last().is_some_and(Zero::is_zero) {
                c.pop();
            }
            out.push(c);
        }
        out
    }
}

/// Coefficient of `x^n y^k` for `n <= max_n`.
pub fn expand_bivariate(gf: &BivariateRationalGF, max_n: usize) -> CountTriangle {
    CountTriangle::from_rows(gf.series(max_n))
}
