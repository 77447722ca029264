//! Exhaustive ground-truth oracles.  Everything here enumerates or counts
//! paths directly from the step-by-step definition, so the closed forms
//! and series in the rest of the crate can be checked against it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::paths::{parameter_j, Step, StepSeq};

/// Default cap on path length for the exhaustive routines.  The
/// enumerators prune aggressively, but an unbounded request is almost
/// always a mistake.
pub const DEFAULT_STEP_LIMIT: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BruteError {
    #[error("requested length {requested} exceeds the oracle limit of {limit} steps")]
    OverLimit { requested: usize, limit: usize },
    #[error("k must be at least 1")]
    InvalidK,
    #[error("end level {end_level} outside the strip [{lo}, {hi}]")]
    EndLevelOutsideStrip { end_level: i64, lo: i64, hi: i64 },
    #[error("operation requires an upper bound (h) in the spec")]
    MissingUpperBound,
    #[error("operation requires no upper bound (h) in the spec")]
    UnexpectedUpperBound,
}

/// Parameters for an exhaustive enumeration or strip count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumSpec {
    pub k: u32,
    pub t: u32,
    /// Number of down-steps; paths have length `(k+1) * n` when the end
    /// level is 0.
    pub n: u32,
    /// Optional upper boundary.
    pub h: Option<i64>,
    /// End level; defaults to 0 when absent.
    pub end_level: Option<i64>,
}

impl EnumSpec {
    pub fn new(k: u32, t: u32, n: u32) -> Result<Self, BruteError> {
        if k < 1 {
            return Err(BruteError::InvalidK);
        }
        Ok(EnumSpec { k, t, n, h: None, end_level: None })
    }

    pub fn with_bounds(mut self, h: i64, end_level: i64) -> Result<Self, BruteError> {
        if end_level < -i64::from(self.t) || end_level > h {
            return Err(BruteError::EndLevelOutsideStrip {
                end_level,
                lo: -i64::from(self.t),
                hi: h,
            });
        }
        self.h = Some(h);
        self.end_level = Some(end_level);
        Ok(self)
    }
}

/// Lazy lexicographic enumeration (U before D) of all paths of a fixed
/// length with a fixed end level, bounded below by `-t` and unbounded
/// above.
pub struct PathEnum {
    k: u32,
    lower: i64,
    target: i64,
    length: usize,
    /// Current partial path plus its running level, or None once done.
    state: Option<(Vec<Step>, Vec<i64>)>,
}

impl PathEnum {
    fn new(k: u32, lower: i64, target: i64, length: usize) -> Self {
        // Infeasible lengths (wrong residue class or out of reach) are
        // detected up front so the iterator is simply empty.
        let reachable = {
            let r = length as i64;
            let d_num = r - target;
            d_num % i64::from(k + 1) == 0 && {
                let d = d_num / i64::from(k + 1);
                d >= 0 && d <= r
            }
        };
        PathEnum {
            k,
            lower,
            target,
            length,
            state: if reachable {
                Some((Vec::with_capacity(length), vec![0]))
            } else {
                None
            },
        }
    }

    /// Whether a prefix ending at `level` with `remaining` steps left can
    /// still be completed to the target without violating the lower bound.
    fn feasible(&self, level: i64, remaining: usize) -> bool {
        if level < self.lower {
            return false;
        }
        let r = remaining as i64;
        let d_num = r + level - self.target;
        // divisibility is invariant along the walk, so only the range check
        // matters here
        d_num >= 0 && d_num <= i64::from(self.k + 1) * r
    }

    /// Extends the current prefix with the lexicographically smallest
    /// feasible completion, if any.  Returns false when the prefix itself
    /// is a dead end.
    fn descend(&mut self) -> bool {
        let (steps, levels) = self.state.as_mut().unwrap();
        while steps.len() < self.length {
            let level = *levels.last().unwrap();
            let remaining = self.length - steps.len() - 1;
            let up = level + 1;
            let down = level - i64::from(self.k);
            if self.feasible(up, remaining) {
                steps.push(Step::Up);
                levels.push(up);
            } else if self.feasible(down, remaining) {
                steps.push(Step::Down);
                levels.push(down);
            } else {
                return false;
            }
        }
        true
    }

    /// Backtracks to the deepest position whose step can be advanced from
    /// U to D, applies that change, and reports whether one was found.
    fn backtrack(&mut self) -> bool {
        let (steps, levels) = self.state.as_mut().unwrap();
        while let Some(last) = steps.pop() {
            levels.pop();
            if last == Step::Up {
                let level = *levels.last().unwrap();
                let remaining = self.length - steps.len() - 1;
                let down = level - i64::from(self.k);
                if self.feasible(down, remaining) {
                    steps.push(Step::Down);
                    levels.push(down);
                    return true;
                }
            }
        }
        false
    }
}

impl Iterator for PathEnum {
    type Item = StepSeq;

    fn next(&mut self) -> Option<StepSeq> {
        self.state.as_ref()?;
        loop {
            if self.descend() {
                let (steps, _) = self.state.as_ref().unwrap();
                let path = StepSeq::new(self.k, steps.clone()).unwrap();
                if !self.backtrack() {
                    self.state = None;
                }
                return Some(path);
            }
            if !self.backtrack() {
                self.state = None;
                return None;
            }
        }
    }
}

/// Enumerates the paths of length `(k+1) * n` bounded below by `-t` that
/// end at level 0, in lexicographic order with U < D.
///
/// `limit` guards against accidental exponential blowups; pass
/// [`DEFAULT_STEP_LIMIT`] unless a larger run is intended.
pub fn enumerate_kt(spec: &EnumSpec, limit: usize) -> Result<PathEnum, BruteError> {
    if spec.h.is_some() {
        return Err(BruteError::UnexpectedUpperBound);
    }
    let length = (spec.k as usize + 1) * spec.n as usize;
    if length > limit {
        return Err(BruteError::OverLimit { requested: length, limit });
    }
    Ok(PathEnum::new(spec.k, -i64::from(spec.t), 0, length))
}

/// Enumerates non-negative paths of arbitrary length and end level; used
/// by the first-arrival histogram and by tests.
pub fn enumerate_nonneg(
    k: u32,
    length: usize,
    end_level: i64,
    limit: usize,
) -> Result<PathEnum, BruteError> {
    if k < 1 {
        return Err(BruteError::InvalidK);
    }
    if length > limit {
        return Err(BruteError::OverLimit { requested: length, limit });
    }
    Ok(PathEnum::new(k, 0, end_level, length))
}

/// Counts paths of exactly `length` steps from level 0 to the spec's end
/// level, confined to the strip `[-t, h]`, by the level-indexed dynamic
/// program: a path ending on level i was at level i-1 or i+k one step
/// earlier.
pub fn count_strip(spec: &EnumSpec, length: usize) -> Result<BigInt, BruteError> {
    let h = spec.h.ok_or(BruteError::MissingUpperBound)?;
    let end_level = spec.end_level.ok_or(BruteError::MissingUpperBound)?;
    let lo = -i64::from(spec.t);
    if end_level < lo || end_level > h {
        return Err(BruteError::EndLevelOutsideStrip { end_level, lo, hi: h });
    }
    let width = (h - lo + 1) as usize;
    let idx = |level: i64| (level - lo) as usize;
    let mut counts = vec![BigInt::zero(); width];
    counts[idx(0)] = BigInt::one();
    for _ in 0..length {
        let mut next = vec![BigInt::zero(); width];
        for level in lo..=h {
            let c = &counts[idx(level)];
            if c.is_zero() {
                continue;
            }
            if level + 1 <= h {
                next[idx(level + 1)] += c;
            }
            let down = level - i64::from(spec.k);
            if down >= lo {
                next[idx(down)] += c;
            }
        }
        counts = next;
    }
    Ok(counts[idx(end_level)].clone())
}

/// Histogram of the first-arrival parameter for k = 1: over all
/// non-negative paths of length `2n + t` from level 0 to level `t`,
/// counts paths with first arrival at step `t + 2s`, keyed by `s`.
pub fn j_histogram(
    t: u32,
    n: u32,
    limit: usize,
) -> Result<BTreeMap<u64, BigInt>, BruteError> {
    let length = 2 * n as usize + t as usize;
    let mut hist = BTreeMap::new();
    for path in enumerate_nonneg(1, length, i64::from(t), limit)? {
        let j = parameter_j(&path, t).expect("enumerated path reaches its end level");
        let s = (j - u64::from(t)) / 2;
        *hist.entry(s).or_insert_with(BigInt::zero) += 1;
    }
    Ok(hist)
}

/// Convenience count of the enumeration in [`enumerate_kt`].
pub fn count_kt(spec: &EnumSpec, limit: usize) -> Result<BigInt, BruteError> {
    let mut total = BigInt::zero();
    for _ in enumerate_kt(spec, limit)? {
        total += 1;
    }
    Ok(total)
}
