//! Closed-form binomial formulas in exact arithmetic: coefficient
//! extraction for powers of the path generating function, the bounded
//! counting formulas, the determinant polynomials, asymptotic ratios,
//! and the discrete limit law for the first-arrival parameter.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    #[error("binomial coefficient with negative upper index {0} is not supported")]
    NegativeUpperIndex(i64),
    #[error("the simple product formula requires t <= k, got t={t}, k={k}")]
    BoundaryTooLow { t: u32, k: u32 },
    #[error("k must be at least 1")]
    InvalidK,
    #[error("power index j must be at least 1")]
    InvalidPower,
}

/// Binomial coefficient C(a, b) with the empty-set convention:
/// 0 whenever b < 0 or b > a.  Negative `a` is rejected; no formula in
/// this crate needs the generalized binomial.
pub fn binom(a: i64, b: i64) -> Result<BigInt, ClosedFormError> {
    if a < 0 {
        return Err(ClosedFormError::NegativeUpperIndex(a));
    }
    if b < 0 || b > a {
        return Ok(BigInt::zero());
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for j in 1..=b {
        acc = acc * BigInt::from(a - b + j) / BigInt::from(j);
    }
    Ok(acc)
}

/// Coefficient of x^n in the j-th power of the path series y, where
/// y = 1 + x y^{k+1}:
///
///   [x^n] y^j = j / ((k+1)n + j) * C((k+1)n + j, n)
///
/// The division is always exact; a remainder indicates a programming
/// error and panics.
pub fn ycoeff(k: u32, j: u32, n: u32) -> BigInt {
    assert!(k >= 1, "k must be at least 1");
    assert!(j >= 1, "power index must be at least 1");
    let a = i64::from(k + 1) * i64::from(n) + i64::from(j);
    let c = binom(a, i64::from(n)).expect("upper index is non-negative");
    let numerator = BigInt::from(j) * c;
    let (q, r) = num_integer::Integer::div_rem(&numerator, &BigInt::from(a));
    assert!(r.is_zero(), "ycoeff division must be exact (k={k}, j={j}, n={n})");
    q
}

/// Count of paths of length (k+1)n bounded below by -t, for the regime
/// 0 <= t <= k where the product formula applies:
///
///   (t+1) / ((k+1)n + t + 1) * C((k+1)n + t + 1, n)
pub fn count_simple(k: u32, t: u32, n: u32) -> Result<BigInt, ClosedFormError> {
    if k < 1 {
        return Err(ClosedFormError::InvalidK);
    }
    if t > k {
        return Err(ClosedFormError::BoundaryTooLow { t, k });
    }
    Ok(ycoeff(k, t + 1, n))
}

/// The determinant polynomial of the banded strip system, as an exact
/// coefficient list in x = z^{k+1}.
///
/// Satisfies D_m = D_{m-1} - x D_{m-k-1} with D_0 = ... = D_k = 1, and
/// explicitly coeff(x^l) = (-1)^l C(m - k l, l).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPoly {
    k: u32,
    m: u32,
    coeffs: Vec<BigInt>,
}

impl DPoly {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Coefficients by power of x; the length is 1 + floor(m / (k+1))
    /// and the last entry is never zero.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, l: usize) -> BigInt {
        self.coeffs.get(l).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Evaluates the polynomial at an exact rational point.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }
}

fn d_poly_explicit(k: u32, m: u32) -> Vec<BigInt> {
    let mut coeffs = Vec::new();
    let mut l = 0i64;
    while i64::from(m) - i64::from(k) * l >= l {
        let c = binom(i64::from(m) - i64::from(k) * l, l).expect("non-negative by loop bound");
        coeffs.push(if l % 2 == 0 { c } else { -c });
        l += 1;
    }
    coeffs
}

fn d_poly_recursive(k: u32, m: u32) -> Vec<BigInt> {
    // keep the last k+1 polynomials of the recursion
    let mut window: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]; k as usize + 1];
    for _ in (k + 1)..=m {
        let prev = window.last().unwrap();
        let back = &window[0];
        let mut next = prev.clone();
        if next.len() < back.len() + 1 {
            next.resize(back.len() + 1, BigInt::zero());
        }
        for (l, c) in back.iter().enumerate() {
            next[l + 1] -= c;
        }
        window.remove(0);
        window.push(next);
    }
    window.pop().unwrap()
}

/// Builds D_m both from the explicit binomial sum and from the
/// three-term recursion; the two must agree.
pub fn d_poly(k: u32, m: u32) -> DPoly {
    assert!(k >= 1, "k must be at least 1");
    let explicit = d_poly_explicit(k, m);
    let recursive = d_poly_recursive(k, m);
    assert_eq!(
        explicit, recursive,
        "determinant polynomial mismatch between routes (k={k}, m={m})"
    );
    DPoly { k, m, coeffs: explicit }
}

/// Count of paths of length (k+1)n bounded below by -t, valid for every
/// t >= 0: the x^n coefficient of D_t y^{t+1}, i.e.
///
///   sum over l of (-1)^l C(t - k l, l) * ycoeff(k, t+1, n - l)
pub fn count_general(k: u32, t: u32, n: u32) -> BigInt {
    let d = d_poly(k, t);
    let mut total = BigInt::zero();
    for (l, c) in d.coeffs().iter().enumerate() {
        if l as u32 > n {
            break;
        }
        total += c * ycoeff(k, t + 1, n - l as u32);
    }
    total
}

/// Coefficients of 1 / D_t: entry l counts paths of length t + (k+1)l
/// that reach level t for the first time at their final step.
pub fn f_part_counts(k: u32, t: u32, max_l: usize) -> Vec<BigInt> {
    let d = d_poly(k, t);
    let mut out = Vec::with_capacity(max_l + 1);
    out.push(BigInt::one());
    for n in 1..=max_l {
        let mut acc = BigInt::zero();
        for j in 1..=n.min(d.degree()) {
            acc += d.coeff(j) * &out[n - j];
        }
        let entry = -acc;
        assert!(!entry.is_negative(), "reciprocal of D_t has non-negative coefficients");
        out.push(entry);
    }
    out
}

/// Exact quotients of bounded counts against the coefficient of y^{t+1},
/// together with their n -> infinity limit D_t(rho) at
/// rho = k^k / (k+1)^{k+1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioReport {
    pub k: u32,
    pub t: u32,
    /// (n, count_general / ycoeff) pairs.
    pub rows: Vec<(u32, BigRational)>,
    /// Exact limit of the quotient.
    pub limit: BigRational,
}

pub fn ratio_report(k: u32, t: u32, n_max: u32) -> RatioReport {
    let rows = (0..=n_max)
        .map(|n| {
            let q = BigRational::new(count_general(k, t, n), ycoeff(k, t + 1, n));
            (n, q)
        })
        .collect();
    let rho = BigRational::new(
        BigInt::from(u64::from(k)).pow(k),
        BigInt::from(u64::from(k) + 1).pow(k + 1),
    );
    let limit = d_poly(k, t).eval(&rho);
    RatioReport { k, t, rows, limit }
}

/// Asymptotic mean of the first-arrival parameter for k = 1: t(t+2)/3.
pub fn mean_j(t: u32) -> BigRational {
    BigRational::new(BigInt::from(t) * BigInt::from(t + 2), BigInt::from(3))
}

/// Asymptotic mean of the shifted parameter (J - t)/2 for k = 1:
/// t(t-1)/6.
pub fn mean_s(t: u32) -> BigRational {
    BigRational::new(
        BigInt::from(t) * BigInt::from(i64::from(t) - 1),
        BigInt::from(6),
    )
}

/// Probability that the shifted first-arrival parameter (J - t)/2 equals
/// `m` in the limit of long paths (k = 1):
///
///   4^{-m} (t+1)/2^t  *  sum over lambda of
///     [ C(2m-1+t, m-lambda(t+1)) - 2 C(2m-1+t, m-1-lambda(t+1))
///       + C(2m-1+t, m-2-lambda(t+1)) ]
///
/// The 4^{-m} factor normalizes the coefficient extraction so the masses
/// sum to 1; without it they are plain Taylor coefficients of
/// (t+1)/2^t * 1/D_t.
pub fn limit_dist_mass(t: u32, m: u32) -> BigRational {
    if t == 0 {
        // degenerate: level 0 is reached before any step
        return if m == 0 {
            BigRational::one()
        } else {
            BigRational::zero()
        };
    }
    let top = 2 * i64::from(m) - 1 + i64::from(t);
    let mut sum = BigInt::zero();
    let mut lambda = 0i64;
    loop {
        let base = i64::from(m) - lambda * i64::from(t + 1);
        if base < 0 {
            break;
        }
        let a = binom(top, base).expect("top >= 0 for t >= 1");
        let b = binom(top, base - 1).expect("top >= 0 for t >= 1");
        let c = binom(top, base - 2).expect("top >= 0 for t >= 1");
        sum += a - 2 * b + c;
        lambda += 1;
    }
    let denom = BigInt::from(2u8).pow(t + 2 * m);
    BigRational::new(BigInt::from(t + 1) * sum, denom)
}
