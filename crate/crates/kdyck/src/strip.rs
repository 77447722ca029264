//! Generating functions of paths confined to a strip [-t, h]: the
//! level-recurrence dynamic program, the determinant-quotient form from
//! Cramer's rule, and the h -> infinity limit.
//!
//! For end levels i >= 0 the quotient has the product form
//! D_t z^i D_{h-i} / D_{h+t+1}.  For negative end levels no such product
//! exists once k > 1 (two minimal step arrangements can reach the same
//! negative level), so the numerator is computed as the exact cofactor
//! of the banded system matrix instead.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::closed_forms::d_poly;
use crate::series::{solve_y, Series};

/// Cofactor extraction tracks column availability in a sliding window of
/// k+2 bits; this bounds the supported down-step size.
pub const MAX_CRAMER_K: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StripError {
    #[error("end level {end_level} outside the strip [{lo}, {hi}]")]
    EndLevelOutsideStrip { end_level: i64, lo: i64, hi: i64 },
    #[error("k must be at least 1")]
    InvalidK,
    #[error("cofactor extraction supports k up to {max}, got {k}")]
    KTooLarge { k: u32, max: u32 },
}

/// A strip-confined path family: down-step size, lower boundary -t,
/// upper boundary h, and the level paths must end on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StripSpec {
    pub k: u32,
    pub t: u32,
    pub h: u32,
    pub end_level: i64,
}

impl StripSpec {
    pub fn new(k: u32, t: u32, h: u32, end_level: i64) -> Result<Self, StripError> {
        if k < 1 {
            return Err(StripError::InvalidK);
        }
        let lo = -i64::from(t);
        let hi = i64::from(h);
        if end_level < lo || end_level > hi {
            return Err(StripError::EndLevelOutsideStrip { end_level, lo, hi });
        }
        Ok(StripSpec { k, t, h, end_level })
    }

    fn width(&self) -> usize {
        (i64::from(self.h) + i64::from(self.t) + 1) as usize
    }
}

/// Per-length counts from the level-indexed recurrence: a path ending on
/// level i was on level i-1 or i+k one step earlier.
pub fn phi_series_dp(spec: &StripSpec, max_len: usize) -> Vec<BigInt> {
    let lo = -i64::from(spec.t);
    let hi = i64::from(spec.h);
    let width = spec.width();
    let idx = |level: i64| (level - lo) as usize;
    let mut counts = vec![BigInt::zero(); width];
    counts[idx(0)] = BigInt::one();
    let mut out = Vec::with_capacity(max_len + 1);
    out.push(counts[idx(spec.end_level)].clone());
    for _ in 1..=max_len {
        let mut next = vec![BigInt::zero(); width];
        for level in lo..=hi {
            let c = &counts[idx(level)];
            if c.is_zero() {
                continue;
            }
            if level + 1 <= hi {
                next[idx(level + 1)] += c;
            }
            if level - i64::from(spec.k) >= lo {
                next[idx(level - i64::from(spec.k))] += c;
            }
        }
        counts = next;
        out.push(counts[idx(spec.end_level)].clone());
    }
    out
}

/// Dense polynomial in z, index = power.
type ZPoly = Vec<BigInt>;

fn zpoly_trim(p: &mut ZPoly) {
    while p.len() > 1 && p.last().map(BigInt::is_zero).unwrap_or(false) {
        p.pop();
    }
}

/// Signed cofactor of the strip system matrix: the determinant with the
/// row of `row_level` and the column of `col_level` removed, times the
/// checkerboard sign.  With no deletions this is the full determinant.
///
/// Rows are processed bottom level first; the state tracks which columns
/// of the sliding window [row-1, row+k] are already consumed, and the
/// permutation sign is accumulated from inversions against previously
/// consumed columns.
fn band_cofactor(
    k: u32,
    lo: i64,
    hi: i64,
    row_level: Option<i64>,
    col_level: Option<i64>,
) -> Result<ZPoly, StripError> {
    assert!(k >= 1, "k must be at least 1");
    if k > MAX_CRAMER_K {
        return Err(StripError::KTooLarge { k, max: MAX_CRAMER_K });
    }
    let m = (hi - lo + 1) as usize;
    let kk = k as usize;
    let window = kk + 2; // columns [row-1, row+k]
    let row_del = row_level.map(|l| (l - lo) as usize);
    let col_del = col_level.map(|l| (l - lo) as usize);

    // blocked = unavailable for structural reasons (deleted or out of range);
    // such slots never count toward inversions
    let blocked =
        |col: i64| -> bool { col < 0 || col >= m as i64 || col_del == Some(col as usize) };

    // state: bitmask of window slots consumed by previously processed rows
    let mut states: Vec<Option<ZPoly>> = vec![None; 1 << window];
    states[0] = Some(vec![BigInt::one()]);

    for row in 0..m {
        let base = row as i64 - 1; // column at window slot 0
        let mut next: Vec<Option<ZPoly>> = vec![None; 1 << window];
        for (mask, value) in states.iter().enumerate() {
            let Some(value) = value else { continue };
            let mut emit = |new_mask: usize, poly: ZPoly| {
                // shift the window by one before storing: slot 0 leaves
                let leaving_col = base;
                let leaving_consumed = new_mask & 1 != 0;
                if !leaving_consumed && !blocked(leaving_col) {
                    return; // an unmatched live column can never be matched later
                }
                let shifted = new_mask >> 1;
                match &mut next[shifted] {
                    Some(existing) => {
                        if existing.len() < poly.len() {
                            existing.resize(poly.len(), BigInt::zero());
                        }
                        for (i, c) in poly.into_iter().enumerate() {
                            existing[i] += c;
                        }
                    }
                    slot => *slot = Some(poly),
                }
            };
            if row_del == Some(row) {
                // skipped row: no assignment, just advance the window
                emit(mask, value.clone());
                continue;
            }
            // candidate columns: row-1 (weight -z), row (weight 1), row+k (weight -z)
            for (slot, is_step) in [(0usize, true), (1, false), (kk + 1, true)] {
                let col = base + slot as i64;
                if blocked(col) || mask & (1 << slot) != 0 {
                    continue;
                }
                // inversions against consumed columns above this one
                let inversions = ((mask >> (slot + 1)) as u32).count_ones();
                let negate = (inversions % 2 == 1) != is_step; // -z carries one sign
                let mut poly = if is_step {
                    let mut shifted = vec![BigInt::zero(); value.len() + 1];
                    for (i, c) in value.iter().enumerate() {
                        shifted[i + 1] = c.clone();
                    }
                    shifted
                } else {
                    value.clone()
                };
                if negate {
                    for c in &mut poly {
                        *c = -&*c;
                    }
                }
                emit(mask | (1 << slot), poly);
            }
        }
        states = next;
    }

    // after the last row, every live column still in the window must be
    // consumed
    let mut total: ZPoly = vec![BigInt::zero()];
    for (mask, value) in states.iter().enumerate() {
        let Some(value) = value else { continue };
        let base = m as i64 - 1;
        let complete = (0..window).all(|slot| {
            let col = base + slot as i64;
            blocked(col) || mask & (1 << slot) != 0
        });
        if !complete {
            continue;
        }
        if total.len() < value.len() {
            total.resize(value.len(), BigInt::zero());
        }
        for (i, c) in value.iter().enumerate() {
            total[i] += c;
        }
    }

    // checkerboard sign of the deleted position
    if let (Some(r), Some(c)) = (row_del, col_del) {
        if (r + c) % 2 == 1 {
            for coeff in &mut total {
                *coeff = -&*coeff;
            }
        }
    }
    zpoly_trim(&mut total);
    Ok(total)
}

/// Numerator of the Cramer quotient for the given spec, as a polynomial
/// in z.  Positive end levels use the product form D_t z^i D_{h-i}; the
/// cofactor route covers the rest.
fn cramer_numerator(spec: &StripSpec) -> Result<ZPoly, StripError> {
    let k = spec.k;
    if spec.end_level >= 0 {
        let i = spec.end_level as usize;
        let left = d_poly(k, spec.t);
        let right = d_poly(k, spec.h - spec.end_level as u32);
        let step = k as usize + 1;
        let mut out = vec![BigInt::zero(); i + step * (left.degree() + right.degree()) + 1];
        for (a, ca) in left.coeffs().iter().enumerate() {
            for (b, cb) in right.coeffs().iter().enumerate() {
                out[i + step * (a + b)] += ca * cb;
            }
        }
        zpoly_trim(&mut out);
        Ok(out)
    } else {
        band_cofactor(
            k,
            -i64::from(spec.t),
            i64::from(spec.h),
            Some(0),
            Some(spec.end_level),
        )
    }
}

/// Per-length counts from the determinant quotient: numerator polynomial
/// times the series reciprocal of D_{h+t+1}.
pub fn phi_series_cramer(spec: &StripSpec, max_len: usize) -> Result<Vec<BigInt>, StripError> {
    let numerator = cramer_numerator(spec)?;
    let step = spec.k as usize + 1;
    // the numerator's exponents all share one residue class mod k+1
    let offset = numerator
        .iter()
        .position(|c| !c.is_zero())
        .map(|p| p % step)
        .unwrap_or(0);
    let mut num_x = vec![BigInt::zero(); (max_len + step) / step + 1];
    for (power, c) in numerator.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        debug_assert_eq!(power % step, offset, "mixed residue classes in numerator");
        let j = (power - offset) / step;
        if j < num_x.len() {
            num_x[j] = c.clone();
        }
    }
    let x_order = num_x.len() - 1;
    let denom = d_poly(spec.k, spec.h + spec.t + 1);
    let denom_series = Series::from_polynomial(denom.coeffs(), x_order);
    let quotient = Series::new(num_x).mul(
        &denom_series
            .reciprocal()
            .expect("determinant polynomials have constant term 1"),
    );
    let mut out = vec![BigInt::zero(); max_len + 1];
    for (j, c) in quotient.coeffs().iter().enumerate() {
        let len = offset + step * j;
        if len <= max_len {
            out[len] = c.clone();
        }
    }
    Ok(out)
}

/// Per-length counts with the upper boundary pushed to infinity:
/// D_t y^{i+t+1} shifted by i up-steps.  At i = 0 this is the generating
/// function of paths bounded below by -t.
pub fn phi_limit_h(k: u32, t: u32, i: u32, max_len: usize) -> Vec<BigInt> {
    assert!(k >= 1, "k must be at least 1");
    let step = k as usize + 1;
    let x_order = max_len.saturating_sub(i as usize) / step;
    let d = d_poly(k, t);
    let y = solve_y(k, x_order);
    let series = Series::from_polynomial(d.coeffs(), x_order).mul(&y.pow(i + t + 1));
    let mut out = vec![BigInt::zero(); max_len + 1];
    for (j, c) in series.coeffs().iter().enumerate() {
        let len = i as usize + step * j;
        if len <= max_len {
            out[len] = c.clone();
        }
    }
    out
}

/// Counts of paths bounded below by -t ending where they started, by
/// length; the G part of the first-arrival decomposition.
pub fn g_series(k: u32, t: u32, max_len: usize) -> Vec<BigInt> {
    phi_limit_h(k, t, 0, max_len)
}
