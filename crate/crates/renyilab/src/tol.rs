//! Tolerances used across the crate, pinned in one place.

/// Pmf weights must sum to 1 within this absolute tolerance.
pub const PMF_SUM: f64 = 1e-12;

/// Default relative tolerance for the log-concavity inequality
/// p_i² ≥ p_{i-1}·p_{i+1}·(1 − tol). Products of small probabilities lose
/// relative precision, so exact comparison is too brittle for derived pmfs.
pub const LOG_CONCAVE_REL: f64 = 1e-12;

/// Resolution below which a margin cannot certify a strict inequality.
pub const MARGIN: f64 = 1e-12;

/// Majorization requires total masses equal within this tolerance
/// (the "equality in the limit" part of the partial-sum comparison).
pub const TOTAL_MASS: f64 = 1e-10;

/// Schur-concavity comparisons allow this much floating slack.
pub const SCHUR: f64 = 1e-10;

/// Closed forms and truncated direct sums must agree within this.
pub const CLOSED_FORM_AGREE: f64 = 1e-10;

/// Default tail mass dropped when truncating an infinite-support law.
pub const TRUNCATION: f64 = 1e-15;

/// Bisection on a side-mass equation stops at this residual.
pub const BISECTION_RESIDUAL: f64 = 1e-14;

/// Bisection iteration cap; the interval is below one ulp long before this.
pub const BISECTION_MAX_ITER: usize = 200;

/// Orders with |α − 1| at or below this are coerced to the Shannon case.
pub const ORDER_ONE_COERCE: f64 = 1e-9;

/// Orders with |α − 1| in (ORDER_ONE_COERCE, ORDER_ONE_BAND] are evaluated
/// by the Shannon limit formula; the direct formula has no precision left.
pub const ORDER_ONE_BAND: f64 = 1e-6;

/// A conjecture probe flags a violation only beyond this excess.
pub const PROBE_VIOLATION: f64 = 1e-10;

/// The min-entropy/collision-entropy identity must hold within this.
pub const IDENTITY: f64 = 1e-12;
