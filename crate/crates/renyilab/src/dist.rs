//! Integer-supported distributions: dense pmfs, two-sided geometrics with
//! analytic tails, the entropy order, and seeded generators.
//!
//! Support contiguity is structural: a [`Pmf`] stores an offset and a dense
//! list of strictly positive weights, so a zero inside the support cannot be
//! represented at all.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{tol, Error, Result};

/// Kahan-compensated sum.
pub(crate) fn kahan_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for v in values {
        let y = v - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Finite-support probability mass function on the integers.
///
/// `offset` is the integer site of the first weight; `probs[i]` is the mass
/// at `offset + i`. All weights are strictly positive and sum to 1 within
/// [`tol::PMF_SUM`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PmfRepr")]
pub struct Pmf {
    offset: i64,
    probs: Vec<f64>,
}

#[derive(Deserialize)]
struct PmfRepr {
    offset: i64,
    probs: Vec<f64>,
}

impl TryFrom<PmfRepr> for Pmf {
    type Error = Error;
    fn try_from(raw: PmfRepr) -> Result<Self> {
        Pmf::new(raw.offset, raw.probs)
    }
}

impl Pmf {
    /// Validates positivity and normalization.
    pub fn new(offset: i64, probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::EmptySupport);
        }
        for (idx, &value) in probs.iter().enumerate() {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::NonPositiveWeight { idx, value });
            }
        }
        let sum = kahan_sum(probs.iter().copied());
        if (sum - 1.0).abs() > tol::PMF_SUM {
            return Err(Error::NotNormalized { sum, tol: tol::PMF_SUM });
        }
        Ok(Self { offset, probs })
    }

    /// For weights that are positive and normalized by construction
    /// (e.g. an exact convolution of two valid pmfs).
    pub(crate) fn from_normalized_unchecked(offset: i64, probs: Vec<f64>) -> Self {
        debug_assert!(!probs.is_empty());
        debug_assert!(probs.iter().all(|&p| p > 0.0));
        debug_assert!((kahan_sum(probs.iter().copied()) - 1.0).abs() < 1e-9);
        Self { offset, probs }
    }

    pub fn point_mass(at: i64) -> Self {
        Self { offset: at, probs: vec![1.0] }
    }

    pub fn uniform(n: usize, offset: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptySupport);
        }
        Ok(Self { offset, probs: vec![1.0 / n as f64; n] })
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        false // support length ≥ 1 by construction
    }

    /// Mass at integer site `n` (zero outside the support).
    pub fn mass_at(&self, n: i64) -> f64 {
        let i = n - self.offset;
        if i < 0 || i >= self.probs.len() as i64 {
            0.0
        } else {
            self.probs[i as usize]
        }
    }

    pub fn max_prob(&self) -> f64 {
        self.probs.iter().copied().fold(f64::MIN, f64::max)
    }

    /// Leftmost index (into `probs`) attaining the maximum.
    pub fn argmax(&self) -> usize {
        let m = self.max_prob();
        self.probs.iter().position(|&p| p == m).expect("non-empty")
    }

    pub fn total_mass(&self) -> f64 {
        kahan_sum(self.probs.iter().copied())
    }

    /// Reflection through 0: the pmf of −X.
    pub fn mirrored(&self) -> Self {
        let mut probs = self.probs.clone();
        probs.reverse();
        Self { offset: -(self.offset + self.probs.len() as i64 - 1), probs }
    }

    /// Log-concavity test: p_i² ≥ p_{i−1}·p_{i+1}·(1 − rel_tol) at every
    /// interior index. Contiguity is guaranteed by the representation.
    pub fn is_log_concave(&self, rel_tol: f64) -> bool {
        self.log_concavity_violation(rel_tol).is_none()
    }

    /// First interior index violating log-concavity, if any.
    pub fn log_concavity_violation(&self, rel_tol: f64) -> Option<usize> {
        for i in 1..self.probs.len().saturating_sub(1) {
            let lhs = self.probs[i] * self.probs[i];
            let rhs = self.probs[i - 1] * self.probs[i + 1];
            if lhs < rhs * (1.0 - rel_tol) {
                return Some(i);
            }
        }
        None
    }

    /// True iff the weights are non-increasing or non-decreasing.
    pub fn is_monotone(&self) -> bool {
        let inc = self.probs.windows(2).all(|w| w[0] <= w[1]);
        let dec = self.probs.windows(2).all(|w| w[0] >= w[1]);
        inc || dec
    }

    /// Weights sorted descending; ties keep their original order, so the
    /// result is deterministic (partial sums are tie-independent anyway).
    pub fn decreasing_rearrangement(&self) -> Vec<f64> {
        let mut sorted = self.probs.clone();
        sorted.sort_by(|a, b| b.partial_cmp(a).expect("weights are finite"));
        sorted
    }
}

/// A truncation of an infinite-support law to a finite [`Pmf`].
#[derive(Debug, Clone)]
pub struct Truncated {
    pub pmf: Pmf,
    /// Mass kept before renormalization; ≥ 1 − tol by construction.
    pub kept_mass: f64,
    /// Whether the stored weights were rescaled to sum to 1.
    pub renormalized: bool,
}

fn truncate_weights(offset: i64, mut weights: Vec<f64>) -> Truncated {
    let kept_mass = kahan_sum(weights.iter().copied());
    let renormalized = kept_mass != 1.0;
    if renormalized {
        for w in &mut weights {
            *w /= kept_mass;
        }
    }
    Truncated {
        pmf: Pmf::from_normalized_unchecked(offset, weights),
        kept_mass,
        renormalized,
    }
}

/// Two-sided geometric law: mass ∝ p^(n−m) right of the mode m and
/// q^(m−n) left of it, with 0⁰ = 1.
///
/// The peak (mass at the mode) equals the analytic normalizer
/// (1−p)(1−q)/(1−pq). The struct carries the peak explicitly so the
/// extremal construction can copy a pmf's maximum bit-for-bit; the
/// constructor checks it against the analytic value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TsgRepr")]
pub struct TwoSidedGeo {
    p: f64,
    q: f64,
    m: i64,
    #[serde(skip_serializing)]
    peak: f64,
}

#[derive(Deserialize)]
struct TsgRepr {
    p: f64,
    q: f64,
    m: i64,
}

impl TryFrom<TsgRepr> for TwoSidedGeo {
    type Error = Error;
    fn try_from(raw: TsgRepr) -> Result<Self> {
        TwoSidedGeo::new(raw.p, raw.q, raw.m)
    }
}

fn check_ratio(r: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::InvalidRatio(r));
    }
    Ok(r)
}

impl TwoSidedGeo {
    pub fn new(p: f64, q: f64, m: i64) -> Result<Self> {
        let p = check_ratio(p)?;
        let q = check_ratio(q)?;
        let peak = (1.0 - p) * (1.0 - q) / (1.0 - p * q);
        Ok(Self { p, q, m, peak })
    }

    /// Used by the extremal construction: `peak` is copied from the source
    /// pmf and must agree with the analytic normalizer of (p, q).
    pub(crate) fn with_peak(p: f64, q: f64, m: i64, peak: f64) -> Self {
        let analytic = (1.0 - p) * (1.0 - q) / (1.0 - p * q);
        debug_assert!(
            (peak - analytic).abs() <= 1e-9 * analytic,
            "peak {peak} vs analytic normalizer {analytic}"
        );
        Self { p, q, m, peak }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn mode(&self) -> i64 {
        self.m
    }

    /// Mass at the mode; the maximum of the density.
    pub fn peak(&self) -> f64 {
        self.peak
    }

    pub fn is_point_mass(&self) -> bool {
        self.p == 0.0 && self.q == 0.0
    }

    pub fn mass_at(&self, n: i64) -> f64 {
        let d = n - self.m;
        if d >= 0 {
            if self.p == 0.0 && d > 0 {
                0.0
            } else {
                self.peak * self.p.powi(d as i32)
            }
        } else if self.q == 0.0 {
            0.0
        } else {
            self.peak * self.q.powi((-d) as i32)
        }
    }

    /// Σ_n f(n)/peak = 1/(1−p) + 1/(1−q) − 1, the α = 1 tail sum.
    pub fn s1(&self) -> f64 {
        1.0 / (1.0 - self.p) + 1.0 / (1.0 - self.q) - 1.0
    }

    /// Σ_n (f(n)/peak)^α = 1/(1−p^α) + 1/(1−q^α) − 1.
    pub fn s_alpha(&self, alpha: f64) -> f64 {
        1.0 / (1.0 - self.p.powf(alpha)) + 1.0 / (1.0 - self.q.powf(alpha)) - 1.0
    }

    pub fn total_mass(&self) -> f64 {
        self.peak * self.s1()
    }

    /// The law of −X: ratios swapped, mode reflected.
    pub fn mirrored(&self) -> Self {
        Self { p: self.q, q: self.p, m: -self.m, peak: self.peak }
    }

    /// Truncate both tails so the dropped mass is below `tail_tol`.
    pub fn to_pmf(&self, tail_tol: f64) -> Truncated {
        let half = tail_tol / 2.0;
        let right = side_cutoff(self.peak, self.p, half);
        let left = side_cutoff(self.peak, self.q, half);
        let mut weights = Vec::with_capacity(left + right + 1);
        for j in (1..=left).rev() {
            weights.push(self.peak * self.q.powi(j as i32));
        }
        weights.push(self.peak);
        for j in 1..=right {
            weights.push(self.peak * self.p.powi(j as i32));
        }
        truncate_weights(self.m - left as i64, weights)
    }
}

/// Smallest J such that the tail beyond it, peak·r^(J+1)/(1−r), is ≤ bound.
fn side_cutoff(peak: f64, r: f64, bound: f64) -> usize {
    if r == 0.0 {
        return 0;
    }
    // tail(J) = peak·r^(J+1)/(1−r) ≤ bound  ⟺  (J+1)·ln r ≤ ln(bound(1−r)/peak)
    let target = (bound * (1.0 - r) / peak).ln();
    let j = (target / r.ln()).ceil() as i64 - 1;
    let mut j = j.max(0) as usize;
    // guard against rounding in the log computation
    while peak * r.powi(j as i32 + 1) / (1.0 - r) > bound {
        j += 1;
    }
    j
}

/// Geometric law with success probability θ: mass θ(1−θ)^k at k ≥ 0.
///
/// An analytic handle: masses, tail sums and power sums are closed-form,
/// and it converts to a truncated [`Pmf`] or a [`TwoSidedGeo`] on demand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometric {
    theta: f64,
}

impl Geometric {
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta <= 1.0) {
            return Err(Error::InvalidTheta(theta));
        }
        Ok(Self { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Decay ratio 1 − θ.
    pub fn ratio(&self) -> f64 {
        1.0 - self.theta
    }

    pub fn mass(&self, k: u64) -> f64 {
        self.theta * self.ratio().powi(k as i32)
    }

    /// Σ_{j≥k} mass(j) = (1−θ)^k.
    pub fn tail(&self, k: u64) -> f64 {
        self.ratio().powi(k as i32)
    }

    /// Σ_k mass(k)^α = θ^α / (1 − (1−θ)^α), for α > 0.
    pub fn power_sum(&self, alpha: f64) -> f64 {
        self.theta.powf(alpha) / (1.0 - self.ratio().powf(alpha))
    }

    /// The same law as a two-sided geometric with an empty left tail.
    pub fn to_tsg(&self) -> TwoSidedGeo {
        TwoSidedGeo::new(self.ratio(), 0.0, 0).expect("ratio in [0,1)")
    }

    /// Truncate at tail mass ≤ `tail_tol` and renormalize.
    pub fn to_pmf(&self, tail_tol: f64) -> Truncated {
        if self.theta == 1.0 {
            return Truncated { pmf: Pmf::point_mass(0), kept_mass: 1.0, renormalized: false };
        }
        let r = self.ratio();
        // tail(n) = r^n ≤ tol
        let mut n = (tail_tol.ln() / r.ln()).ceil().max(1.0) as usize;
        while self.tail(n as u64) > tail_tol {
            n += 1;
        }
        let mut weights = Vec::with_capacity(n);
        let mut w = self.theta;
        for _ in 0..n {
            weights.push(w);
            w *= r;
        }
        truncate_weights(0, weights)
    }
}

/// Rényi entropy order α ∈ [0, ∞] with the limiting cases explicit.
///
/// `Finite(α)` always satisfies α > 0, |α − 1| > 1e-9 and α ≠ 2; values
/// closer to 1 are coerced to `One` at construction, exact 2 becomes `Two`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Order {
    Zero,
    One,
    Two,
    Infinity,
    Finite(f64),
}

impl Order {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_nan() || alpha < 0.0 {
            return Err(Error::InvalidOrder(alpha));
        }
        if alpha == 0.0 {
            Ok(Order::Zero)
        } else if (alpha - 1.0).abs() <= tol::ORDER_ONE_COERCE {
            Ok(Order::One)
        } else if alpha == 2.0 {
            Ok(Order::Two)
        } else if alpha.is_infinite() {
            Ok(Order::Infinity)
        } else {
            Ok(Order::Finite(alpha))
        }
    }

    /// Parse an order spec: "inf" (any case) or a nonnegative decimal.
    pub fn parse(spec: &str) -> Result<Self> {
        let s = spec.trim();
        if s.eq_ignore_ascii_case("inf")
            || s.eq_ignore_ascii_case("infinity")
            || s == "∞"
        {
            return Ok(Order::Infinity);
        }
        let alpha: f64 = s.parse().map_err(|_| Error::InvalidOrder(f64::NAN))?;
        Order::new(alpha)
    }

    pub fn alpha(&self) -> f64 {
        match self {
            Order::Zero => 0.0,
            Order::One => 1.0,
            Order::Two => 2.0,
            Order::Infinity => f64::INFINITY,
            Order::Finite(a) => *a,
        }
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Order::Infinity => write!(f, "inf"),
            other => write!(f, "{}", other.alpha()),
        }
    }
}

/// Seeded random log-concave pmf of support size `len`.
///
/// Log-weights are built with strictly negative second differences, so the
/// output passes `is_log_concave(0.0)` even after rounding; with `monotone`
/// the first increment is forced negative as well. Support placement and
/// orientation are randomized. Deterministic for a fixed seed.
pub fn random_log_concave(len: usize, seed: u64, monotone: bool) -> Result<Pmf> {
    if len < 1 {
        return Err(Error::EmptySupport);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let offset = rng.gen_range(-10..=10);
    if len == 1 {
        return Ok(Pmf::point_mass(offset));
    }

    // Slope scale keeps the total log-range under ~300 so no weight
    // underflows after normalization.
    let smax = 250.0 / (3.0 * len as f64);
    let scale = smax * 10f64.powf(rng.gen_range(-2.0..0.0));
    let gap_floor = 1e-9; // strict concavity margin, far above f64 fuzz

    let mut slope = if monotone {
        -scale * rng.gen::<f64>() - gap_floor
    } else {
        scale * (rng.gen::<f64>() * 1.5 - 0.5)
    };
    let mut logw = vec![0.0f64; len];
    for i in 1..len {
        logw[i] = logw[i - 1] + slope;
        slope -= scale * (2.0 / len as f64) * rng.gen::<f64>() + gap_floor;
    }

    let top = logw.iter().copied().fold(f64::MIN, f64::max);
    let mut weights: Vec<f64> = logw.iter().map(|l| (l - top).exp()).collect();
    if rng.gen::<bool>() {
        weights.reverse();
    }
    let sum = kahan_sum(weights.iter().copied());
    for w in &mut weights {
        *w /= sum;
    }
    Ok(Pmf::from_normalized_unchecked(offset, weights))
}
