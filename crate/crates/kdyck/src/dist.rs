//! Exact finite-length and limiting distribution of the first-arrival
//! parameter for k = 1.
//!
//! The random variable is s = (J - t)/2 where J is the number of steps a
//! non-negative path of length 2n + t (from level 0 to level t) takes to
//! reach level t for the first time.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::closed_forms::{limit_dist_mass, ycoeff};
use crate::series::bivariate_numerator;

/// Exact probability masses for the shifted first-arrival parameter,
/// either at a finite length or in the limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionTable {
    t: u32,
    /// `Some(n)` for the finite-length table, `None` for the limit law.
    n: Option<u32>,
    masses: BTreeMap<u32, BigRational>,
    /// Unaccounted tail mass: zero for finite tables, 1 - sum for
    /// truncated limit tables.
    residual: BigRational,
}

impl DistributionTable {
    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn n(&self) -> Option<u32> {
        self.n
    }

    pub fn is_limit(&self) -> bool {
        self.n.is_none()
    }

    pub fn masses(&self) -> &BTreeMap<u32, BigRational> {
        &self.masses
    }

    pub fn mass(&self, s: u32) -> BigRational {
        self.masses.get(&s).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Largest s carrying mass in this table.
    pub fn support_bound(&self) -> u32 {
        self.masses.keys().next_back().copied().unwrap_or(0)
    }

    pub fn residual(&self) -> &BigRational {
        &self.residual
    }

    /// Mean of s over the tabulated masses (the truncated mean for limit
    /// tables).
    pub fn mean_s(&self) -> BigRational {
        self.masses
            .iter()
            .map(|(s, m)| BigRational::from_integer(BigInt::from(*s)) * m)
            .sum()
    }

    /// Mean of the parameter J = t + 2s over the tabulated masses.
    pub fn mean_j(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.t))
            + BigRational::from_integer(BigInt::from(2)) * self.mean_s()
    }
}

/// Distribution of s at finite length 2n + t, from the bivariate
/// numerator divided by the total count of paths.  The masses sum to 1
/// exactly.
pub fn finite_dist(t: u32, n: u32) -> DistributionTable {
    let numerator = bivariate_numerator(t, n as usize);
    let total = ycoeff(1, t + 1, n);
    let mut masses = BTreeMap::new();
    for s in 0..=n {
        let count = numerator.entry(n as usize, s as usize);
        if !count.is_zero() {
            masses.insert(s, BigRational::new(count, total.clone()));
        }
    }
    let table = DistributionTable { t, n: Some(n), masses, residual: BigRational::zero() };
    debug_assert!(table.masses.values().sum::<BigRational>().is_one());
    table
}

/// Limit distribution truncated at s <= m_max, with the unaccounted tail
/// reported as the residual.
pub fn limit_dist(t: u32, m_max: u32) -> DistributionTable {
    let mut masses = BTreeMap::new();
    let mut sum = BigRational::zero();
    for m in 0..=m_max {
        let mass = limit_dist_mass(t, m);
        if !mass.is_zero() {
            sum += &mass;
            masses.insert(m, mass);
        }
    }
    let residual = BigRational::one() - sum;
    debug_assert!(!residual.is_negative());
    DistributionTable { t, n: None, masses, residual }
}

/// Limit distribution truncated at the smallest support bound whose
/// residual drops below 10^-12.
pub fn limit_dist_auto(t: u32) -> DistributionTable {
    let tolerance = BigRational::new(BigInt::one(), BigInt::from(10u64.pow(12)));
    let mut masses = BTreeMap::new();
    let mut residual = BigRational::one();
    let mut m = 0u32;
    loop {
        let mass = limit_dist_mass(t, m);
        if !mass.is_zero() {
            residual -= &mass;
            masses.insert(m, mass);
        }
        if residual < tolerance {
            break;
        }
        m += 1;
    }
    DistributionTable { t, n: None, masses, residual }
}

/// Exact mean of J at each requested length parameter n; converges to
/// t(t+2)/3 as n grows.
pub fn mean_convergence(t: u32, ns: &[u32]) -> Vec<(u32, BigRational)> {
    ns.iter().map(|&n| (n, finite_dist(t, n).mean_j())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute::{j_histogram, DEFAULT_STEP_LIMIT};
    use crate::closed_forms::{mean_j, mean_s};

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn finite_t2_n2() {
        let table = finite_dist(2, 2);
        assert_eq!(table.mass(0), rat(6, 9));
        assert_eq!(table.mass(1), rat(2, 9));
        assert_eq!(table.mass(2), rat(1, 9));
        assert_eq!(table.support_bound(), 2);
    }

    #[test]
    fn finite_degenerate_cases() {
        for n in 0..6u32 {
            let table = finite_dist(0, n);
            assert_eq!(table.mass(0), BigRational::one());
            assert_eq!(table.support_bound(), 0);
            let table = finite_dist(1, n);
            assert_eq!(table.mass(0), BigRational::one());
        }
    }

    #[test]
    fn finite_sums_to_one() {
        for t in 0..=5u32 {
            for n in 0..=8u32 {
                let table = finite_dist(t, n);
                let sum: BigRational = table.masses().values().sum();
                assert!(sum.is_one(), "t={t} n={n}");
            }
        }
    }

    #[test]
    fn finite_matches_histogram() {
        for t in 0..=4u32 {
            for n in 0..=5u32 {
                let hist = j_histogram(t, n, DEFAULT_STEP_LIMIT).unwrap();
                let total: BigInt = hist.values().sum();
                let table = finite_dist(t, n);
                for (s, count) in &hist {
                    assert_eq!(
                        table.mass(*s as u32),
                        BigRational::new(count.clone(), total.clone()),
                        "t={t} n={n} s={s}"
                    );
                }
                assert_eq!(hist.len(), table.masses().len());
            }
        }
    }

    #[test]
    fn limit_t2() {
        let table = limit_dist(2, 1);
        assert_eq!(table.mass(0), rat(3, 4));
        assert_eq!(table.mass(1), rat(3, 16));
        assert_eq!(table.residual(), &rat(1, 16));
    }

    #[test]
    fn limit_degenerate() {
        let table = limit_dist(1, 7);
        assert_eq!(table.mass(0), BigRational::one());
        assert!(table.residual().is_zero());
        assert_eq!(table.masses().len(), 1);
    }

    #[test]
    fn limit_auto_residual() {
        let tol = rat(1, 1_000_000_000_000);
        for t in 0..=5u32 {
            let table = limit_dist_auto(t);
            assert!(table.residual() < &tol, "t={t}");
        }
    }

    #[test]
    fn limit_mean_approaches_closed_form() {
        // the truncated mean climbs toward t(t-1)/6
        let t = 3u32;
        let table = limit_dist(t, 120);
        let err = (table.mean_s() - mean_s(t)).abs();
        assert!(err < rat(1, 1_000_000_000), "err={err}");
    }

    #[test]
    fn mean_convergence_example() {
        let rows = mean_convergence(2, &[2]);
        assert_eq!(rows[0].1, rat(2, 1) + rat(8, 9));
        // degenerate cases are exact at every n
        for (_, mean) in mean_convergence(0, &[0, 1, 5]) {
            assert_eq!(mean, rat(0, 1));
        }
        for (_, mean) in mean_convergence(1, &[0, 1, 5]) {
            assert_eq!(mean, rat(1, 1));
        }
    }

    #[test]
    fn finite_means_approach_limit() {
        let t = 3u32;
        let target = mean_j(t);
        let rows = mean_convergence(t, &[10, 20, 40, 80]);
        let errs: Vec<BigRational> =
            rows.iter().map(|(_, m)| (m - &target).abs()).collect();
        for pair in errs.windows(2) {
            assert!(pair[1] < pair[0]);
        }
    }

    #[test]
    fn finite_pointwise_convergence() {
        let t = 3u32;
        let limit = limit_dist(t, 10);
        for s in 0..=3u32 {
            let errs: Vec<BigRational> = [20u32, 60, 120]
                .iter()
                .map(|&n| (finite_dist(t, n).mass(s) - limit.mass(s)).abs())
                .collect();
            for pair in errs.windows(2) {
                assert!(pair[1] < pair[0], "s={s}");
            }
        }
    }
}
