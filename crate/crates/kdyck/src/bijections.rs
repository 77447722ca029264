//! The lift-and-decompose bijection between boundary-bounded paths and
//! ordered tuples of plain k-Dyck paths (valid for t <= k), and the
//! first-arrival F/G split that replaces it for general t.

use thiserror::Error;

use crate::paths::{parameter_j, PathError, Step, StepSeq};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("path is not bounded below by -{t}")]
    NotBoundedPath { t: u32 },
    #[error("the tuple bijection requires t <= k, got t={t}, k={k}")]
    BoundaryAboveK { t: u32, k: u32 },
    #[error("path must end at level {expected}, ends at {got}")]
    WrongEndLevel { expected: i64, got: i64 },
    #[error("path dips below level 0")]
    DipsBelowZero,
    #[error("expected {expected} parts, got {got}")]
    WrongPartCount { expected: usize, got: usize },
    #[error("part {index} is not a k-Dyck path")]
    InvalidPart { index: usize },
    #[error("parts disagree on the down-step size k")]
    MixedK,
    #[error("composed path does not start with {0} up-steps")]
    MissingUpPrefix(u32),
    #[error(transparent)]
    Path(#[from] PathError),
}

/// An ordered (t+1)-tuple of k-Dyck paths; the image of a bounded path
/// under the last-visit decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleDecomposition {
    k: u32,
    t: u32,
    parts: Vec<StepSeq>,
}

impl TupleDecomposition {
    /// Validates that there are exactly t+1 parts, all sharing `k` and
    /// each a k-Dyck path on its own.
    pub fn new(k: u32, t: u32, parts: Vec<StepSeq>) -> Result<Self, BijectionError> {
        if parts.len() != t as usize + 1 {
            return Err(BijectionError::WrongPartCount {
                expected: t as usize + 1,
                got: parts.len(),
            });
        }
        for (index, part) in parts.iter().enumerate() {
            if part.k() != k {
                return Err(BijectionError::MixedK);
            }
            if !part.is_kt_dyck(0) {
                return Err(BijectionError::InvalidPart { index });
            }
        }
        Ok(TupleDecomposition { k, t, parts })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn parts(&self) -> &[StepSeq] {
        &self.parts
    }

    pub fn total_len(&self) -> usize {
        self.parts.iter().map(StepSeq::len).sum()
    }
}

/// The first-arrival split of a non-negative path ending at level t:
/// `f` is everything up to the first arrival at t (it ends with an
/// up-step and its interior stays in the strip 0..t-1), `g` is the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FGSplit {
    pub f: StepSeq,
    pub g: StepSeq,
    pub t: u32,
}

impl FGSplit {
    /// Length of `f`; the distribution of this quantity is the subject of
    /// the k = 1 limit law.
    pub fn j_value(&self) -> u64 {
        self.f.len() as u64
    }
}

/// Prepends t up-steps: a path bounded below by -t becomes a non-negative
/// path ending at level t.
pub fn lift_prepend(p: &StepSeq, t: u32) -> Result<StepSeq, BijectionError> {
    if !p.is_kt_dyck(t) {
        return Err(BijectionError::NotBoundedPath { t });
    }
    Ok(p.with_prefix(&vec![Step::Up; t as usize]))
}

/// Splits a non-negative path ending at level t at the up-steps that
/// leave each of the levels 0..t-1 for the last time.  The t+1 pieces,
/// each read relative to its starting level, are k-Dyck paths.
pub fn decompose_last_visits(
    q: &StepSeq,
    t: u32,
) -> Result<TupleDecomposition, BijectionError> {
    if q.min_level() < 0 {
        return Err(BijectionError::DipsBelowZero);
    }
    let end = q.end_level();
    if end != i64::from(t) {
        return Err(BijectionError::WrongEndLevel { expected: i64::from(t), got: end });
    }
    // level at position p (after p steps), including the start point
    let mut position_levels = Vec::with_capacity(q.len() + 1);
    position_levels.push(0i64);
    position_levels.extend(q.level_profile());
    let mut parts = Vec::with_capacity(t as usize + 1);
    let mut start = 0usize;
    for level in 0..i64::from(t) {
        let last = position_levels
            .iter()
            .rposition(|&l| l == level)
            .expect("every level below the end level is visited");
        debug_assert_eq!(q.steps()[last], Step::Up, "a last visit is left upward");
        parts.push(q.slice(start..last));
        start = last + 1;
    }
    parts.push(q.slice(start..q.len()));
    TupleDecomposition::new(q.k(), t, parts)
}

/// Joins t+1 k-Dyck paths with single up-steps; exact inverse of
/// [`decompose_last_visits`].
pub fn compose(tuple: &TupleDecomposition) -> StepSeq {
    let mut steps = Vec::with_capacity(tuple.total_len() + tuple.t() as usize);
    for (i, part) in tuple.parts().iter().enumerate() {
        if i > 0 {
            steps.push(Step::Up);
        }
        steps.extend_from_slice(part.steps());
    }
    StepSeq::new(tuple.k(), steps).expect("parts carry a valid k")
}

/// Full bijection, bounded path to tuple; only valid for t <= k.
pub fn to_tuple(p: &StepSeq, t: u32) -> Result<TupleDecomposition, BijectionError> {
    if t > p.k() {
        return Err(BijectionError::BoundaryAboveK { t, k: p.k() });
    }
    decompose_last_visits(&lift_prepend(p, t)?, t)
}

/// Full bijection, tuple to bounded path; only valid for t <= k, where
/// the composed path is guaranteed to start with t up-steps.
pub fn from_tuple(tuple: &TupleDecomposition) -> Result<StepSeq, BijectionError> {
    let t = tuple.t();
    if t > tuple.k() {
        return Err(BijectionError::BoundaryAboveK { t, k: tuple.k() });
    }
    let q = compose(tuple);
    if q.steps()[..t as usize].iter().any(|&s| s != Step::Up) {
        return Err(BijectionError::MissingUpPrefix(t));
    }
    Ok(q.slice(t as usize..q.len()))
}

/// Splits a non-negative path ending at level t at its first arrival at
/// t.
pub fn split_fg(q: &StepSeq, t: u32) -> Result<FGSplit, BijectionError> {
    let end = q.end_level();
    if end != i64::from(t) {
        return Err(BijectionError::WrongEndLevel { expected: i64::from(t), got: end });
    }
    let j = parameter_j(q, t)? as usize;
    let f = q.slice(0..j);
    let g = q.slice(j..q.len());
    if t > 0 {
        debug_assert_eq!(f.steps().last(), Some(&Step::Up));
    }
    Ok(FGSplit { f, g, t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute::{enumerate_kt, EnumSpec, DEFAULT_STEP_LIMIT};
    use crate::closed_forms::ycoeff;
    use num_bigint::BigInt;
    use std::collections::BTreeMap;

    fn path(k: u32, text: &str) -> StepSeq {
        StepSeq::parse(k, text).unwrap()
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift_prepend(&path(1, "DU"), 1).unwrap().to_string(), "UDU");
        assert_eq!(lift_prepend(&path(2, ""), 2).unwrap().to_string(), "UU");
        assert!(lift_prepend(&path(1, "DU"), 0).is_err());
    }

    #[test]
    fn lift_running_example() {
        let p = path(3, crate::paths::tests::RUN28);
        let lifted = lift_prepend(&p, 3).unwrap();
        assert_eq!(lifted.len(), 31);
        assert_eq!(lifted.min_level(), 0);
        assert_eq!(lifted.end_level(), 3);
    }

    #[test]
    fn decompose_examples() {
        let tuple = decompose_last_visits(&path(1, "UDU"), 1).unwrap();
        assert_eq!(tuple.parts()[0].to_string(), "UD");
        assert_eq!(tuple.parts()[1].to_string(), "");
        let tuple = decompose_last_visits(&path(1, "UUD"), 1).unwrap();
        assert_eq!(tuple.parts()[0].to_string(), "");
        assert_eq!(tuple.parts()[1].to_string(), "UD");
    }

    #[test]
    fn decompose_running_example() {
        // the lifted 31-step path splits into 4 parts with the middle two
        // empty
        let lifted = lift_prepend(&path(3, crate::paths::tests::RUN28), 3).unwrap();
        let tuple = decompose_last_visits(&lifted, 3).unwrap();
        assert_eq!(tuple.parts().len(), 4);
        assert_eq!(tuple.parts()[0].len(), 16);
        assert!(tuple.parts()[1].is_empty());
        assert!(tuple.parts()[2].is_empty());
        assert_eq!(tuple.parts()[3].len(), 12);
        assert_eq!(compose(&tuple), lifted);
    }

    #[test]
    fn decompose_wide_example() {
        // 35-step example with three marked up-steps and no empty part
        let q = path(3, "UUUDUUUUUDUUUDUUDUUUUDUUUUDUUUDUUUD");
        assert_eq!(q.len(), 35);
        assert_eq!(q.end_level(), 3);
        let tuple = decompose_last_visits(&q, 3).unwrap();
        assert_eq!(
            tuple
                .parts()
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>(),
            vec!["UUUD", "UUUUDUUUDUUD", "UUUD", "UUUDUUUDUUUD"]
        );
        assert_eq!(compose(&tuple), q);
    }

    #[test]
    fn compose_of_empties_is_up_run() {
        for t in 0..4u32 {
            let parts = vec![StepSeq::empty(2).unwrap(); t as usize + 1];
            let tuple = TupleDecomposition::new(2, t, parts).unwrap();
            assert_eq!(compose(&tuple).to_string(), "U".repeat(t as usize));
        }
    }

    #[test]
    fn tuple_validation() {
        assert!(TupleDecomposition::new(1, 1, vec![path(1, "UD")]).is_err());
        assert!(
            TupleDecomposition::new(1, 1, vec![path(1, "UD"), path(1, "DU")]).is_err()
        );
        assert!(TupleDecomposition::new(1, 0, vec![path(2, "UD")]).is_err());
    }

    #[test]
    fn to_tuple_examples() {
        let tuple = to_tuple(&path(1, "DU"), 1).unwrap();
        assert_eq!(tuple.parts()[0].to_string(), "UD");
        assert_eq!(tuple.parts()[1].to_string(), "");
        let tuple = to_tuple(&path(1, "UD"), 1).unwrap();
        assert_eq!(tuple.parts()[0].to_string(), "");
        assert_eq!(tuple.parts()[1].to_string(), "UD");
        let tuple = to_tuple(&path(2, ""), 2).unwrap();
        assert_eq!(tuple.parts().len(), 3);
        assert!(tuple.parts().iter().all(|p| p.is_empty()));
    }

    #[test]
    fn rejects_boundary_above_k() {
        assert!(matches!(
            to_tuple(&path(1, "UUDD"), 2),
            Err(BijectionError::BoundaryAboveK { .. })
        ));
        let parts = vec![StepSeq::empty(1).unwrap(); 3];
        let tuple = TupleDecomposition::new(1, 2, parts).unwrap();
        assert!(matches!(
            from_tuple(&tuple),
            Err(BijectionError::BoundaryAboveK { .. })
        ));
    }

    #[test]
    fn round_trip_exhaustive() {
        for k in 1..=3u32 {
            for t in 0..=k {
                for n in 0..=(16 / (k + 1)).min(4) {
                    let spec = EnumSpec::new(k, t, n).unwrap();
                    for p in enumerate_kt(&spec, DEFAULT_STEP_LIMIT).unwrap() {
                        let tuple = to_tuple(&p, t).unwrap();
                        assert_eq!(tuple.total_len(), p.len());
                        let back = from_tuple(&tuple).unwrap();
                        assert_eq!(back, p, "k={k} t={t}");
                    }
                }
            }
        }
    }

    #[test]
    fn tuple_cardinality_matches_coefficients() {
        // tuples of total length (k+1)n are counted by ycoeff(k, t+1, n)
        let k = 2u32;
        let t = 2u32;
        // enumerate all tuples by composing enumerated parts
        let part_pool: Vec<StepSeq> = (0..=2u32)
            .flat_map(|n| {
                enumerate_kt(&EnumSpec::new(k, 0, n).unwrap(), DEFAULT_STEP_LIMIT).unwrap()
            })
            .collect();
        let mut by_len: BTreeMap<usize, BigInt> = BTreeMap::new();
        for a in &part_pool {
            for b in &part_pool {
                for c in &part_pool {
                    let len = a.len() + b.len() + c.len();
                    *by_len.entry(len).or_default() += 1;
                }
            }
        }
        // totals are complete only while (k+1)n stays within the pool range
        for n in 0..=2u32 {
            let len = (k as usize + 1) * n as usize;
            assert_eq!(by_len[&len], ycoeff(k, t + 1, n), "n={n}");
        }
    }

    #[test]
    fn split_fg_examples() {
        let split = split_fg(&path(1, "UDUU"), 2).unwrap();
        assert_eq!(split.f.to_string(), "UDUU");
        assert_eq!(split.g.to_string(), "");
        assert_eq!(split.j_value(), 4);

        let split = split_fg(&path(1, "UUUD"), 2).unwrap();
        assert_eq!(split.f.to_string(), "UU");
        assert_eq!(split.g.to_string(), "UD");
        assert_eq!(split.j_value(), 2);
    }

    #[test]
    fn split_fg_forced_for_small_t() {
        // for t <= k the F part is always the plain up-run
        for k in 1..=3u32 {
            for t in 0..=k {
                for n in 0..=2u32 {
                    let spec = EnumSpec::new(k, t, n).unwrap();
                    for p in enumerate_kt(&spec, DEFAULT_STEP_LIMIT).unwrap() {
                        let lifted = lift_prepend(&p, t).unwrap();
                        let split = split_fg(&lifted, t).unwrap();
                        assert_eq!(split.f.to_string(), "U".repeat(t as usize));
                    }
                }
            }
        }
    }

    #[test]
    fn split_fg_structure() {
        // f and g rebuild q; g never dips below its start; the interior
        // of f stays in the strip 0..t-1
        let t = 3u32;
        for p in crate::brute::enumerate_nonneg(1, 9, 3, DEFAULT_STEP_LIMIT).unwrap() {
            let split = split_fg(&p, t).unwrap();
            let mut rebuilt = split.f.steps().to_vec();
            rebuilt.extend_from_slice(split.g.steps());
            assert_eq!(StepSeq::new(1, rebuilt).unwrap(), p);
            assert!(split.g.min_level() >= -i64::from(t));
            if !split.f.is_empty() {
                let interior = split.f.slice(0..split.f.len() - 1);
                assert!(interior.min_level() >= 0);
                assert!(interior
                    .level_profile()
                    .iter()
                    .all(|&l| l <= i64::from(t) - 1));
            }
            assert_eq!((split.j_value() - u64::from(t)) % 2, 0);
        }
    }
}
