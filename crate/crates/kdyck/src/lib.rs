//! Exact enumeration of lattice paths built from unit up-steps and
//! down-steps of k units, bounded below by the horizontal line -t.
//!
//! The crate provides several independent routes to every quantity and
//! checks them against each other:
//!
//! - [`brute`]: exhaustive enumeration and strip dynamic programs, the
//!   ground truth everything else is measured against;
//! - [`closed_forms`]: binomial product and alternating-sum formulas for
//!   the path counts, the determinant polynomials, ratio limits, and the
//!   k = 1 limit law of the first-arrival parameter;
//! - [`series`]: truncated power series with exact integer coefficients,
//!   including the fixed-point solution of y = 1 + x y^{k+1};
//! - [`bijections`]: the lift-and-decompose bijection onto (t+1)-tuples
//!   of plain k-Dyck paths (t <= k) and the F/G first-arrival split;
//! - [`strip`]: generating functions of paths confined to [-t, h] via
//!   both the level recurrence and determinant quotients;
//! - [`dist`]: exact finite-length and limiting distributions for the
//!   first-arrival parameter at k = 1;
//! - [`verify`]: one-call cross-validation of all of the above.
//!
//! All arithmetic is exact: big integers for counts and series, big
//! rationals for probabilities. Every value is immutable after
//! construction and every operation is a pure function.

pub mod bijections;
pub mod brute;
pub mod closed_forms;
pub mod dist;
pub mod paths;
pub mod series;
pub mod strip;
pub mod verify;

pub use bijections::{
    compose, decompose_last_visits, from_tuple, lift_prepend, split_fg, to_tuple,
    BijectionError, FGSplit, TupleDecomposition,
};
pub use brute::{
    count_kt, count_strip, enumerate_kt, enumerate_nonneg, j_histogram, BruteError, EnumSpec,
    DEFAULT_STEP_LIMIT,
};
pub use closed_forms::{
    binom, count_general, count_simple, d_poly, f_part_counts, limit_dist_mass, mean_j,
    mean_s, ratio_report, ycoeff, ClosedFormError, DPoly, RatioReport,
};
pub use dist::{finite_dist, limit_dist, limit_dist_auto, mean_convergence, DistributionTable};
pub use paths::{parameter_j, PathClass, PathError, Step, StepSeq};
pub use series::{bivariate_numerator, solve_y, BivariateNumerator, Series, SeriesError, YSeries};
pub use strip::{g_series, phi_limit_h, phi_series_cramer, phi_series_dp, StripError, StripSpec};
pub use verify::{run_all, CheckResult, Profile};
