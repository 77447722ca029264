//! Truncated formal power series in x = z^{k+1} with exact integer
//! coefficients.  Truncation order is fixed at construction and mixed
//! arithmetic truncates to the smaller order; nothing here extends a
//! series silently.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::closed_forms::{d_poly, DPoly};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("reciprocal requires a unit constant term, got {0}")]
    NonUnitConstant(BigInt),
}

/// A power series truncated at a fixed order: exactly order + 1
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigInt>,
}

impl Series {
    /// Builds a series from coefficients; the truncation order is
    /// `coeffs.len() - 1`.  An empty list is treated as the zero series
    /// of order 0.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        Series { coeffs }
    }

    pub fn constant(value: BigInt, order: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); order + 1];
        coeffs[0] = value;
        Series { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Series::constant(BigInt::one(), order)
    }

    /// A polynomial, zero-padded (or truncated) to the requested order.
    pub fn from_polynomial(poly: &[BigInt], order: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for (i, c) in poly.iter().take(order + 1).enumerate() {
            coeffs[i] = c.clone();
        }
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Series {
        let order = order.min(self.order());
        Series { coeffs: self.coeffs[..=order].to_vec() }
    }

    /// Truncated Cauchy product at the smaller of the two orders.
    pub fn mul(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        Series { coeffs }
    }

    pub fn add(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|i| &self.coeffs[i] + &other.coeffs[i])
            .collect();
        Series { coeffs }
    }

    pub fn pow(&self, exponent: u32) -> Series {
        let mut acc = Series::one(self.order());
        for _ in 0..exponent {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse at the same order; the constant term must
    /// be a unit (here: 1 or -1).
    pub fn reciprocal(&self) -> Result<Series, SeriesError> {
        let c0 = &self.coeffs[0];
        if !(c0.is_one() || (-c0).is_one()) {
            return Err(SeriesError::NonUnitConstant(c0.clone()));
        }
        let order = self.order();
        let mut inv = vec![BigInt::zero(); order + 1];
        inv[0] = c0.clone();
        for n in 1..=order {
            let mut acc = BigInt::zero();
            for j in 1..=n {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &inv[n - j];
                }
            }
            inv[n] = -(acc * c0);
        }
        Ok(Series { coeffs: inv })
    }

    /// Multiplies by x^j, dropping the coefficients pushed past the order.
    pub fn shift_up(&self, j: usize) -> Series {
        let order = self.order();
        let mut coeffs = vec![BigInt::zero(); order + 1];
        for i in j..=order {
            coeffs[i] = self.coeffs[i - j].clone();
        }
        Series { coeffs }
    }
}

/// The path-counting series y with y = 1 + x y^{k+1}, truncated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YSeries {
    k: u32,
    series: Series,
}

impl YSeries {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn series(&self) -> &Series {
        &self.series
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        self.series.coeff(n)
    }

    pub fn pow(&self, exponent: u32) -> Series {
        self.series.pow(exponent)
    }
}

/// Solves y = 1 + x y^{k+1} by fixed-point iteration.  Iteration m fixes
/// the coefficient of x^m, so coefficients are grown one order at a time
/// from the already-determined prefix.
pub fn solve_y(k: u32, order: usize) -> YSeries {
    assert!(k >= 1, "k must be at least 1");
    let mut coeffs = vec![BigInt::one()];
    for n in 1..=order {
        // [x^n] (1 + x y^{k+1}) = [x^{n-1}] y^{k+1}, which only involves
        // coefficients of y below x^n
        let prefix = Series::new(coeffs.clone()).truncate(n - 1);
        let power = prefix.pow(k + 1);
        coeffs.push(power.coeff(n - 1).clone());
    }
    YSeries { k, series: Series::new(coeffs) }
}

/// Numerator of the bivariate probability generating function for k = 1:
/// the entry at (n, s) is r_s * g_{n-s}, where r is the expansion of
/// 1/D_t in the product variable xw and g are the coefficients of
/// G(x) = D_t(x) C(x)^2 ... C(x)^{t+1}.
///
/// Stored as the (r, g) pair; the dense matrix is materialized on demand.
#[derive(Clone, Debug)]
pub struct BivariateNumerator {
    t: u32,
    r: Series,
    g: Series,
}

impl BivariateNumerator {
    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn order(&self) -> usize {
        self.r.order()
    }

    pub fn r(&self) -> &Series {
        &self.r
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    /// Entry (n, s); zero when s > n.
    pub fn entry(&self, n: usize, s: usize) -> BigInt {
        if s > n || n > self.order() {
            return BigInt::zero();
        }
        self.r.coeff(s) * self.g.coeff(n - s)
    }

    pub fn row(&self, n: usize) -> Vec<BigInt> {
        (0..=n).map(|s| self.entry(n, s)).collect()
    }

    /// Dense (order+1) x (order+1) matrix view.
    pub fn to_matrix(&self) -> Vec<Vec<BigInt>> {
        (0..=self.order())
            .map(|n| (0..=self.order()).map(|s| self.entry(n, s)).collect())
            .collect()
    }
}

/// Builds the bivariate numerator for k = 1 and lower boundary -t.
pub fn bivariate_numerator(t: u32, order: usize) -> BivariateNumerator {
    let d: DPoly = d_poly(1, t);
    let d_series = Series::from_polynomial(d.coeffs(), order);
    let r = d_series.reciprocal().expect("D_t has constant term 1");
    let c = solve_y(1, order);
    let g = d_series.mul(&c.pow(t + 1));
    BivariateNumerator { t, r, g }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::ycoeff;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn series(vals: &[i64]) -> Series {
        Series::new(vals.iter().map(|&v| big(v)).collect())
    }

    #[test]
    fn solve_y_catalan() {
        let y = solve_y(1, 4);
        assert_eq!(y.series().coeffs(), series(&[1, 1, 2, 5, 14]).coeffs());
    }

    #[test]
    fn solve_y_ternary() {
        let y = solve_y(2, 2);
        assert_eq!(y.series().coeffs(), series(&[1, 1, 3]).coeffs());
        let y = solve_y(3, 0);
        assert_eq!(y.series().coeffs(), series(&[1]).coeffs());
    }

    #[test]
    fn solve_y_matches_closed_form() {
        for k in 1..=3u32 {
            let y = solve_y(k, 10);
            for n in 0..=10usize {
                assert_eq!(y.coeff(n), &ycoeff(k, 1, n as u32), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn powers_match_closed_form() {
        for k in 1..=2u32 {
            let y = solve_y(k, 8);
            for j in 1..=4u32 {
                let p = y.pow(j);
                for n in 0..=8usize {
                    assert_eq!(p.coeff(n), &ycoeff(k, j, n as u32), "k={k} j={j} n={n}");
                }
            }
        }
    }

    #[test]
    fn reciprocal_geometric() {
        let r = series(&[1, -1, 0, 0, 0]).reciprocal().unwrap();
        assert_eq!(r.coeffs(), series(&[1, 1, 1, 1, 1]).coeffs());
    }

    #[test]
    fn reciprocal_is_inverse() {
        let a = series(&[1, 3, -2, 5, 0, 7]);
        let prod = a.mul(&a.reciprocal().unwrap());
        assert_eq!(prod, Series::one(5));
        // negative unit constant term
        let b = series(&[-1, 2, 1]);
        assert_eq!(b.mul(&b.reciprocal().unwrap()), Series::one(2));
    }

    #[test]
    fn reciprocal_rejects_non_unit() {
        assert!(series(&[2, 1]).reciprocal().is_err());
        assert!(series(&[0, 1]).reciprocal().is_err());
    }

    #[test]
    fn pow_example() {
        let p = solve_y(1, 3).pow(2);
        assert_eq!(p.coeffs(), series(&[1, 2, 5, 14]).coeffs());
    }

    #[test]
    fn mixed_order_truncates() {
        let a = series(&[1, 1, 1, 1, 1]);
        let b = series(&[1, 2]);
        assert_eq!(a.mul(&b).order(), 1);
        assert_eq!(a.add(&b).order(), 1);
    }

    #[test]
    fn shift_up_moves_coefficients() {
        let a = series(&[1, 2, 3]);
        assert_eq!(a.shift_up(1).coeffs(), series(&[0, 1, 2]).coeffs());
        assert_eq!(a.shift_up(4).coeffs(), series(&[0, 0, 0]).coeffs());
    }

    #[test]
    fn bivariate_t2_row() {
        let b = bivariate_numerator(2, 4);
        assert_eq!(b.row(2), vec![big(6), big(2), big(1)]);
        // r is the all-ones expansion of 1/(1-x), g starts 1, 2, 6
        assert_eq!(b.r().coeffs()[..3], [big(1), big(1), big(1)]);
        assert_eq!(b.g().coeffs()[..3], [big(1), big(2), big(6)]);
    }

    #[test]
    fn bivariate_t0_diagonal() {
        let b = bivariate_numerator(0, 6);
        for n in 0..=6usize {
            let row = b.row(n);
            assert_eq!(row[0], ycoeff(1, 1, n as u32));
            assert!(row[1..].iter().all(|v| v.is_zero()));
        }
    }

    #[test]
    fn bivariate_t1_row() {
        let b = bivariate_numerator(1, 4);
        assert_eq!(b.row(1), vec![big(2), big(0)]);
    }

    #[test]
    fn bivariate_row_sums_collapse() {
        // setting w = 1 collapses the numerator to C^{t+1}
        for t in 0..=4u32 {
            let b = bivariate_numerator(t, 8);
            for n in 0..=8usize {
                let sum: BigInt = b.row(n).into_iter().sum();
                assert_eq!(sum, ycoeff(1, t + 1, n as u32), "t={t} n={n}");
            }
        }
    }

    #[test]
    fn matrix_view_agrees_with_entries() {
        let b = bivariate_numerator(2, 3);
        let m = b.to_matrix();
        for n in 0..=3usize {
            for s in 0..=3usize {
                assert_eq!(m[n][s], b.entry(n, s));
            }
        }
    }
}
