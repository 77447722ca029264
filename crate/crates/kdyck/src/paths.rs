//! Step sequences over the alphabet {U, D}, where U rises by one unit and
//! D falls by `k` units, together with the validity predicates and level
//! computations everything else is built on.

use std::fmt;

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("k must be at least 1")]
    InvalidK,
    #[error("invalid character {0:?} in path text, expected only 'U' or 'D'")]
    InvalidChar(char),
    #[error("path has a prefix below level 0")]
    NegativePrefix,
    #[error("path never reaches level {0}")]
    LevelNeverReached(i64),
    #[error("path is not a valid path for lower boundary -{0}")]
    NotBoundedPath(u32),
}

/// A single step: up by one unit or down by `k` units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Up,
    Down,
}

impl Step {
    /// Level change of this step for down-step size `k`.
    pub fn delta(self, k: u32) -> i64 {
        match self {
            Step::Up => 1,
            Step::Down => -(i64::from(k)),
        }
    }
}

/// A path as an ordered sequence of steps together with its down-step size.
///
/// Length and end level are always derived from the steps, never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StepSeq {
    k: u32,
    steps: Vec<Step>,
}

impl StepSeq {
    pub fn new(k: u32, steps: Vec<Step>) -> Result<Self, PathError> {
        if k < 1 {
            return Err(PathError::InvalidK);
        }
        Ok(StepSeq { k, steps })
    }

    pub fn empty(k: u32) -> Result<Self, PathError> {
        StepSeq::new(k, Vec::new())
    }

    /// Parses the canonical text encoding: an ASCII string over {U, D}.
    pub fn parse(k: u32, text: &str) -> Result<Self, PathError> {
        let steps = text
            .chars()
            .map(|c| match c {
                'U' => Ok(Step::Up),
                'D' => Ok(Step::Down),
                other => Err(PathError::InvalidChar(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        StepSeq::new(k, steps)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Prefix sums of the step deltas; one entry per step, so the empty
    /// path yields an empty profile.
    pub fn level_profile(&self) -> Vec<i64> {
        let mut level = 0i64;
        self.steps
            .iter()
            .map(|s| {
                level += s.delta(self.k);
                level
            })
            .collect()
    }

    pub fn end_level(&self) -> i64 {
        self.steps.iter().map(|s| s.delta(self.k)).sum()
    }

    /// Minimum over the level profile; 0 for the empty path (the start
    /// point counts).
    pub fn min_level(&self) -> i64 {
        let mut level = 0i64;
        let mut min = 0i64;
        for s in &self.steps {
            level += s.delta(self.k);
            min = min.min(level);
        }
        min
    }

    /// True iff the path never goes below `-t` and returns to level 0.
    ///
    /// The empty path qualifies for every `t`.
    pub fn is_kt_dyck(&self, t: u32) -> bool {
        self.min_level() >= -i64::from(t) && self.end_level() == 0
    }

    /// Number of steps consumed up to the first arrival at `level`,
    /// starting from level 0.  The start point itself counts as an
    /// arrival, so the first arrival at level 0 is at step 0.
    ///
    /// Requires the path to stay non-negative; this is the regime in
    /// which the first-arrival decomposition is meaningful.
    pub fn first_arrival(&self, level: i64) -> Result<usize, PathError> {
        if level == 0 {
            if self.min_level() < 0 {
                return Err(PathError::NegativePrefix);
            }
            return Ok(0);
        }
        let mut current = 0i64;
        for (idx, s) in self.steps.iter().enumerate() {
            current += s.delta(self.k);
            if current < 0 {
                return Err(PathError::NegativePrefix);
            }
            if current == level {
                return Ok(idx + 1);
            }
        }
        Err(PathError::LevelNeverReached(level))
    }

    /// Returns a new path with the given steps prepended.
    pub(crate) fn with_prefix(&self, prefix: &[Step]) -> StepSeq {
        let mut steps = Vec::with_capacity(prefix.len() + self.steps.len());
        steps.extend_from_slice(prefix);
        steps.extend_from_slice(&self.steps);
        StepSeq {
            k: self.k,
            steps,
        }
    }

    pub(crate) fn slice(&self, range: std::ops::Range<usize>) -> StepSeq {
        StepSeq {
            k: self.k,
            steps: self.steps[range].to_vec(),
        }
    }
}

impl fmt::Display for StepSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::Up => "U",
                Step::Down => "D",
            })?;
        }
        Ok(())
    }
}

/// First arrival at level `t`, counted in steps.  Defined for paths that
/// stay non-negative and reach `t`; the result is always of the form
/// `t + (k+1)*l`.
pub fn parameter_j(p: &StepSeq, t: u32) -> Result<u64, PathError> {
    p.first_arrival(i64::from(t)).map(|n| n as u64)
}

/// A family of bounded paths: lower boundary `-t`, fixed end level, and
/// down-step size `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathClass {
    k: u32,
    t: u32,
    end_level: i64,
}

impl PathClass {
    pub fn new(k: u32, t: u32, end_level: i64) -> Result<Self, PathError> {
        if k < 1 {
            return Err(PathError::InvalidK);
        }
        if end_level < -i64::from(t) {
            return Err(PathError::NotBoundedPath(t));
        }
        Ok(PathClass { k, t, end_level })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn end_level(&self) -> i64 {
        self.end_level
    }

    /// Membership test for this family.
    pub fn contains(&self, p: &StepSeq) -> bool {
        p.k() == self.k
            && p.min_level() >= -i64::from(self.t)
            && p.end_level() == self.end_level
    }
}
