//! Numerical exploration of two open conjectures about monotone sequences.
//!
//! First: for a finite monotone log-concave sequence (xₙ), the map
//! F(t) = log(t Σ xₙ^t) is conjectured concave on (0, ∞). Equivalently, the
//! varentropy [Σ y ln²y · Σ y − (Σ y ln y)²]/(Σ y)² of y = x^t never exceeds
//! 1. Monotonicity is necessary: the fixed sequence (¼, ½, 1, ½, ¼) has
//! F″(3) > 0.0009.
//!
//! Second: for a finite positive monotone concave sequence (yₙ) and γ > 0,
//! K(t) = (t+γ) Σ yₙ^(t/γ) is conjectured log-concave on (−γ, ∞), and the
//! stronger complex bound |K(z)| ≥ K(Re z) for Re z > −γ would imply it.
//!
//! Searches report findings, they do not assert the conjectures: a violation
//! carries a reproducible witness and is a scientific result either way.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dist::random_log_concave;
use crate::{tol, Error, Result};

/// Which conjectured quantity a probe examined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProbeKind {
    #[serde(rename = "F-concavity")]
    FConcavity,
    #[serde(rename = "varentropy")]
    Varentropy,
    #[serde(rename = "K-logconcavity")]
    KLogConcavity,
    #[serde(rename = "complex-modulus")]
    ComplexModulus,
}

/// Worst case found by a probe, with enough context to reproduce it.
#[derive(Debug, Clone, Serialize)]
pub struct ProbeWitness {
    pub sequence: Vec<f64>,
    /// Evaluation point (re, im); im = 0 for real probes, absent when the
    /// quantity is point-free (the varentropy search).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<(f64, f64)>,
}

/// Result of a conjecture probe.
///
/// `violated` is set only when `worst_value` crosses the conjectured
/// threshold by more than 1e-10; anything closer is numerically inconclusive
/// and reported as consistent.
#[derive(Debug, Clone, Serialize)]
pub struct ProbeResult {
    pub kind: ProbeKind,
    pub worst_value: f64,
    pub witness: ProbeWitness,
    pub violated: bool,
}

fn check_positive(seq: &[f64]) -> Result<()> {
    if seq.is_empty() {
        return Err(Error::EmptySupport);
    }
    for (idx, &value) in seq.iter().enumerate() {
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::NonPositiveEntry { idx, value });
        }
    }
    Ok(())
}

/// Variance of `logs` under the weights exp(logs − max logs).
///
/// This is the varentropy of the sequence exp(logs): both the weights and
/// the centered second moment are scale-invariant in the original sequence.
fn weighted_log_variance(logs: &[f64]) -> f64 {
    let top = logs.iter().copied().fold(f64::MIN, f64::max);
    let mut s = 0.0;
    let mut m1 = 0.0;
    let mut m2 = 0.0;
    for &l in logs {
        let w = (l - top).exp();
        let centered = l - top;
        s += w;
        m1 += w * centered;
        m2 += w * centered * centered;
    }
    let var = (m2 * s - m1 * m1) / (s * s);
    var.max(0.0)
}

/// The varentropy quotient [Σ y ln²y · Σ y − (Σ y ln y)²]/(Σ y)².
///
/// Scale-invariant: varentropy(c·y) = varentropy(y).
pub fn varentropy(y: &[f64]) -> Result<f64> {
    check_positive(y)?;
    let logs: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    Ok(weighted_log_variance(&logs))
}

/// F(t) = log(t Σ xₙ^t), computed with the largest term factored out.
pub fn f_value(x: &[f64], t: f64) -> Result<f64> {
    check_positive(x)?;
    if !(t > 0.0) {
        return Err(Error::OutOfDomain(format!("t = {t} must be positive")));
    }
    let logs: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let top = logs.iter().copied().fold(f64::MIN, f64::max);
    let s: f64 = logs.iter().map(|&l| (t * (l - top)).exp()).sum();
    Ok(t.ln() + t * top + s.ln())
}

/// F″(t) = −1/t² + [S″S − (S′)²]/S² with S = Σ x^t, S′ = Σ x^t ln x,
/// S″ = Σ x^t ln²x. The bracket is the weighted variance of ln x under x^t.
pub fn f_second_derivative(x: &[f64], t: f64) -> Result<f64> {
    check_positive(x)?;
    if !(t > 0.0) {
        return Err(Error::OutOfDomain(format!("t = {t} must be positive")));
    }
    let logs: Vec<f64> = x.iter().map(|v| t * v.ln()).collect();
    Ok(-1.0 / (t * t) + weighted_log_variance(&logs) / (t * t))
}

/// The fixed non-monotone counterexample (¼, ½, 1, ½, ¼): F″(3) ≈ 0.000928,
/// so concavity of F genuinely needs the monotonicity assumption.
pub fn nonmonotone_counterexample() -> ProbeResult {
    let x = vec![0.25, 0.5, 1.0, 0.5, 0.25];
    let worst = f_second_derivative(&x, 3.0).expect("fixed sequence is valid");
    ProbeResult {
        kind: ProbeKind::FConcavity,
        worst_value: worst,
        witness: ProbeWitness { sequence: x, point: Some((3.0, 0.0)) },
        violated: worst > tol::PROBE_VIOLATION,
    }
}

/// Least concave majorant of the log-weights followed by a running minimum:
/// an idempotent retraction onto the monotone (non-increasing) log-concave
/// cone.
fn project_monotone_log_concave(logs: &mut [f64]) {
    let n = logs.len();
    if n <= 1 {
        return;
    }
    // upper hull of (i, logs[i]) by a monotone scan
    let mut hull: Vec<usize> = Vec::with_capacity(n);
    for i in 0..n {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b - a) as f64 * (logs[i] - logs[a])
                - (logs[b] - logs[a]) * (i - a) as f64;
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    // evaluate the hull at every integer site
    let mut env = vec![0.0f64; n];
    for w in hull.windows(2) {
        let (a, b) = (w[0], w[1]);
        let slope = (logs[b] - logs[a]) / (b - a) as f64;
        for i in a..=b {
            env[i] = logs[a] + slope * (i - a) as f64;
        }
    }
    if hull.len() == 1 {
        env.fill(logs[hull[0]]);
    }
    // running min kills any initial rise while preserving concavity
    logs[0] = env[0];
    for i in 1..n {
        logs[i] = env[i].min(logs[i - 1]);
    }
}

fn climb(logs: &mut Vec<f64>, rng: &mut ChaCha8Rng, steps: usize) -> f64 {
    let mut best = weighted_log_variance(logs);
    if logs.len() == 1 {
        return best;
    }
    let mut step = 0.7;
    let mut cand = logs.clone();
    for _ in 0..steps {
        cand.clone_from(logs);
        let i = rng.gen_range(0..cand.len());
        cand[i] += step * (rng.gen::<f64>() * 2.0 - 1.0);
        project_monotone_log_concave(&mut cand);
        let v = weighted_log_variance(&cand);
        if v > best {
            best = v;
            std::mem::swap(logs, &mut cand);
        } else {
            step *= 0.5;
            if step < 1e-7 {
                break;
            }
        }
    }
    best
}

/// Randomized search for a monotone log-concave sequence with varentropy
/// above 1. Each trial draws a fresh sequence from the core generator and
/// hill-climbs it inside the constraint cone; the supremum over monotone
/// log-concave sequences is exactly 1 (flattening geometrics), so a
/// consistent run reports a worst value just below 1.
pub fn conjecture51_search(trials: u64, max_len: usize, seed: u64) -> ProbeResult {
    let max_len = max_len.max(1);
    let mut worst = 0.0f64;
    let mut witness = vec![1.0];
    for trial in 0..trials.max(1) {
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed ^ trial.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let len = rng.gen_range(1..=max_len);
        let start = random_log_concave(len, rng.gen(), true).expect("len >= 1");
        let mut logs: Vec<f64> = start.probs().iter().map(|p| p.ln()).collect();
        if logs.last() > logs.first() {
            logs.reverse(); // climb in the non-increasing orientation
        }
        let v = climb(&mut logs, &mut rng, 60);
        if v > worst {
            worst = v;
            let top = logs.iter().copied().fold(f64::MIN, f64::max);
            witness = logs.iter().map(|l| (l - top).exp()).collect();
        }
    }
    ProbeResult {
        kind: ProbeKind::Varentropy,
        worst_value: worst,
        witness: ProbeWitness { sequence: witness, point: None },
        violated: worst > 1.0 + tol::PROBE_VIOLATION,
    }
}

fn check_monotone_concave(y: &[f64]) -> Result<()> {
    check_positive(y)?;
    let inc = y.windows(2).all(|w| w[0] <= w[1]);
    let dec = y.windows(2).all(|w| w[0] >= w[1]);
    if !(inc || dec) {
        return Err(Error::NotMonotoneConcave { idx: 0 });
    }
    for i in 1..y.len().saturating_sub(1) {
        let avg = 0.5 * (y[i - 1] + y[i + 1]);
        if y[i] < avg * (1.0 - 1e-12) {
            return Err(Error::NotMonotoneConcave { idx: i });
        }
    }
    Ok(())
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::OutOfDomain(format!("gamma = {gamma} must be positive")));
    }
    Ok(())
}

/// log K(t) = log(t+γ) + log Σ yₙ^(t/γ), defined for t > −γ.
pub fn log_k_value(y: &[f64], gamma: f64, t: f64) -> Result<f64> {
    check_positive(y)?;
    check_gamma(gamma)?;
    if t <= -gamma {
        return Err(Error::OutOfDomain(format!("t = {t} is not above -gamma = {}", -gamma)));
    }
    let logs: Vec<f64> = y.iter().map(|v| (t / gamma) * v.ln()).collect();
    let top = logs.iter().copied().fold(f64::MIN, f64::max);
    let s: f64 = logs.iter().map(|&l| (l - top).exp()).sum();
    Ok((t + gamma).ln() + top + s.ln())
}

/// (log K)″(t) = −1/(t+γ)² + (1/γ²)·Var(log y) under the weights y^(t/γ).
pub fn log_k_second_derivative(y: &[f64], gamma: f64, t: f64) -> Result<f64> {
    check_positive(y)?;
    check_gamma(gamma)?;
    if t <= -gamma {
        return Err(Error::OutOfDomain(format!("t = {t} is not above -gamma = {}", -gamma)));
    }
    let d = t + gamma;
    let logs: Vec<f64> = y.iter().map(|v| (t / gamma) * v.ln()).collect();
    let var = if t == 0.0 {
        // weights are uniform at t = 0; variance of ln y directly
        let lys: Vec<f64> = y.iter().map(|v| v.ln()).collect();
        let mean = lys.iter().sum::<f64>() / lys.len() as f64;
        lys.iter().map(|l| (l - mean) * (l - mean)).sum::<f64>() / lys.len() as f64
    } else {
        // Var under y^(t/γ) of ln y = γ²/t² · Var of (t/γ)·ln y
        weighted_log_variance(&logs) * (gamma / t) * (gamma / t)
    };
    Ok(-1.0 / (d * d) + var / (gamma * gamma))
}

/// Evaluates (log K)″ over a grid in (−γ, ∞) for a monotone concave
/// sequence; the conjectured sign is ≤ 0 everywhere.
pub fn k_logconcavity_check(y: &[f64], gamma: f64, t_grid: &[f64]) -> Result<ProbeResult> {
    check_monotone_concave(y)?;
    check_gamma(gamma)?;
    let mut worst = f64::NEG_INFINITY;
    let mut at = f64::NAN;
    for &t in t_grid {
        let v = log_k_second_derivative(y, gamma, t)?;
        if v > worst {
            worst = v;
            at = t;
        }
    }
    if t_grid.is_empty() {
        return Err(Error::OutOfDomain("empty t grid".into()));
    }
    Ok(ProbeResult {
        kind: ProbeKind::KLogConcavity,
        worst_value: worst,
        witness: ProbeWitness { sequence: y.to_vec(), point: Some((at, 0.0)) },
        violated: worst > tol::PROBE_VIOLATION,
    })
}

/// K(z) = (z+γ) Σ yₙ^(z/γ) for complex z, via exp((z/γ)·ln y).
pub fn k_complex(y: &[f64], gamma: f64, z: Complex64) -> Complex64 {
    let s: Complex64 = y
        .iter()
        .map(|&v| (Complex64::new(z.re / gamma, z.im / gamma) * v.ln()).exp())
        .sum();
    (z + gamma) * s
}

/// Checks |K(z)| ≥ K(Re z) over a complex grid with real parts above −γ;
/// the conjectured worst value (the minimum of the difference) is ≥ 0.
pub fn complex_modulus_check(
    y: &[f64],
    gamma: f64,
    z_grid: &[Complex64],
) -> Result<ProbeResult> {
    check_monotone_concave(y)?;
    check_gamma(gamma)?;
    if z_grid.is_empty() {
        return Err(Error::OutOfDomain("empty z grid".into()));
    }
    let mut worst = f64::INFINITY;
    let mut at = Complex64::new(f64::NAN, f64::NAN);
    for &z in z_grid {
        if z.re <= -gamma {
            return Err(Error::OutOfDomain(format!(
                "grid point {z} has real part at or below -gamma = {}",
                -gamma
            )));
        }
        let modulus = k_complex(y, gamma, z).norm();
        let real = k_complex(y, gamma, Complex64::new(z.re, 0.0)).re;
        let diff = modulus - real;
        if diff < worst {
            worst = diff;
            at = z;
        }
    }
    Ok(ProbeResult {
        kind: ProbeKind::ComplexModulus,
        worst_value: worst,
        witness: ProbeWitness { sequence: y.to_vec(), point: Some((at.re, at.im)) },
        violated: worst < -tol::PROBE_VIOLATION,
    })
}

/// 25 grid points log-spaced in [0.1, 10], the default domain for F curves.
pub fn default_t_grid() -> Vec<f64> {
    (0..25).map(|i| 10f64.powf(-1.0 + 2.0 * i as f64 / 24.0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::Order;
    use crate::entropy::{log_c, renyi};
    use proptest::prelude::*;
    use std::f64::consts::{E, LN_2};

    const COUNTEREXAMPLE: [f64; 5] = [0.25, 0.5, 1.0, 0.5, 0.25];

    /// Exact-fraction oracle: F″(3) = −1/9 + (392/1681)·ln²2.
    fn counterexample_f2_exact() -> f64 {
        -1.0 / 9.0 + (392.0 / 1681.0) * LN_2 * LN_2
    }

    #[test]
    fn counterexample_second_derivative() {
        let v = f_second_derivative(&COUNTEREXAMPLE, 3.0).unwrap();
        assert!((v - counterexample_f2_exact()).abs() < 1e-14);
        assert!(v > 0.0009);
        assert!(v < 0.001);

        let probe = nonmonotone_counterexample();
        assert!(probe.violated);
        assert_eq!(probe.worst_value, v);
        assert_eq!(probe.witness.point, Some((3.0, 0.0)));

        // the monotone half is concave there
        let half = f_second_derivative(&[1.0, 0.5, 0.25], 3.0).unwrap();
        assert!(half < 0.0);
    }

    #[test]
    fn constant_sequence_curvature() {
        // S′/S = ln x constant, variance term vanishes: F″ = −1/t²
        for &t in &[0.5, 1.0, 3.0, 7.5] {
            let v = f_second_derivative(&[0.7, 0.7, 0.7], t).unwrap();
            assert!((v + 1.0 / (t * t)).abs() < 1e-14, "t={t}");
        }
    }

    #[test]
    fn second_derivative_matches_finite_differences() {
        let cases: [(&[f64], f64); 3] = [
            (&[1.0, 0.5], 1.0),
            (&COUNTEREXAMPLE, 3.0),
            (&[0.9, 0.8, 0.3, 0.1], 2.2),
        ];
        for (x, t) in cases {
            let h = 1e-4 * t;
            let fd = (f_value(x, t + h).unwrap() - 2.0 * f_value(x, t).unwrap()
                + f_value(x, t - h).unwrap())
                / (h * h);
            let exact = f_second_derivative(x, t).unwrap();
            let rel = (fd - exact).abs() / exact.abs().max(1e-3);
            assert!(rel < 1e-6, "x={x:?} t={t}: fd {fd} vs {exact}");
        }
    }

    #[test]
    fn varentropy_examples() {
        assert_eq!(varentropy(&[0.4, 0.4, 0.4]).unwrap(), 0.0);
        // two-point case: weights (1, e)/(1+e), variance of {0,1}
        let v = varentropy(&[1.0, E]).unwrap();
        assert!((v - E / ((1.0 + E) * (1.0 + E))).abs() < 1e-15);
        // y = x³ for the counterexample: quotient is 9·(F″(3) + 1/9)
        let y: Vec<f64> = COUNTEREXAMPLE.iter().map(|v| v.powi(3)).collect();
        let q = varentropy(&y).unwrap();
        assert!((q - 9.0 * (counterexample_f2_exact() + 1.0 / 9.0)).abs() < 1e-12);
        assert!((q - 1.008351).abs() < 1e-6);
        assert!(varentropy(&[1.0, 0.0]).is_err());
    }

    #[test]
    fn varentropy_matches_literal_quotient() {
        // dual route: the shifted-variance form vs the displayed quotient
        let seqs: [&[f64]; 3] = [&[1.0, 0.7, 0.3], &[2.0, 2.0, 1.0, 0.25], &[5.0]];
        for y in seqs {
            let sy: f64 = y.iter().sum();
            let s1: f64 = y.iter().map(|v| v * v.ln()).sum();
            let s2: f64 = y.iter().map(|v| v * v.ln() * v.ln()).sum();
            let quotient = (s2 * sy - s1 * s1) / (sy * sy);
            let v = varentropy(y).unwrap();
            assert!((v - quotient).abs() < 1e-12 * quotient.max(1.0), "{y:?}");
        }
    }

    #[test]
    fn f_curvature_consistent_with_varentropy() {
        // F″(t) = (varentropy(x^t) − 1)/t²
        let x = [0.9, 0.6, 0.35, 0.15];
        for &t in &[0.5, 1.0, 2.0, 3.0] {
            let y: Vec<f64> = x.iter().map(|v| v.powf(t)).collect();
            let lhs = f_second_derivative(&x, t).unwrap();
            let rhs = (varentropy(&y).unwrap() - 1.0) / (t * t);
            assert!((lhs - rhs).abs() < 1e-10, "t={t}");
        }
    }

    #[test]
    fn projection_lands_in_the_cone_and_is_idempotent() {
        let mut logs = vec![-0.2, 0.4, -1.5, -1.0, -4.0, -3.5];
        project_monotone_log_concave(&mut logs);
        for w in logs.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
        for i in 1..logs.len() - 1 {
            assert!(2.0 * logs[i] >= logs[i - 1] + logs[i + 1] - 1e-9);
        }
        let once = logs.clone();
        project_monotone_log_concave(&mut logs);
        for (a, b) in once.iter().zip(&logs) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn search_is_deterministic_and_consistent() {
        let a = conjecture51_search(300, 20, 7);
        let b = conjecture51_search(300, 20, 7);
        assert_eq!(a.worst_value, b.worst_value);
        assert_eq!(a.witness.sequence, b.witness.sequence);
        assert!(!a.violated);
        assert!(a.worst_value <= 1.0 + 1e-10);
        assert!(a.worst_value > 0.5, "climber should get near 1: {}", a.worst_value);
        // witness stays inside the constraint cone
        let w = &a.witness.sequence;
        assert!(w.windows(2).all(|p| p[1] <= p[0] * (1.0 + 1e-9)));
        for i in 1..w.len().saturating_sub(1) {
            assert!(w[i] * w[i] >= w[i - 1] * w[i + 1] * (1.0 - 1e-9));
        }
    }

    #[test]
    fn single_point_sequences_have_zero_varentropy() {
        let r = conjecture51_search(5, 1, 0);
        assert_eq!(r.worst_value, 0.0);
        assert!(!r.violated);
    }

    #[test]
    fn length_three_grid_sweep_stays_below_one() {
        // monotone log-concave (1, a, b): 1 ≥ a ≥ b and a² ≥ b
        let mut worst = 0.0f64;
        for ia in 1..=40 {
            let a = ia as f64 / 40.0;
            for ib in 1..=40 {
                let b = (ib as f64 / 40.0) * a * a;
                if b <= 0.0 {
                    continue;
                }
                let v = varentropy(&[1.0, a, b]).unwrap();
                worst = worst.max(v);
            }
        }
        assert!(worst <= 1.0 + 1e-12, "length-3 worst {worst}");
    }

    #[test]
    fn geometric_sequence_varentropy_matches_truncated_variance() {
        // y_k = ρ^k: varentropy = ln²ρ · Var(k) under weights ρ^k
        for &(rho, n) in &[(0.5f64, 12usize), (0.8, 30), (0.95, 60)] {
            let y: Vec<f64> = (0..n).map(|k| rho.powi(k as i32)).collect();
            let v = varentropy(&y).unwrap();
            let weights: Vec<f64> = (0..n).map(|k| rho.powi(k as i32)).collect();
            let s: f64 = weights.iter().sum();
            let mean: f64 = weights.iter().enumerate().map(|(k, w)| k as f64 * w).sum::<f64>() / s;
            let var: f64 = weights
                .iter()
                .enumerate()
                .map(|(k, w)| (k as f64 - mean) * (k as f64 - mean) * w)
                .sum::<f64>()
                / s;
            let expect = rho.ln() * rho.ln() * var;
            assert!((v - expect).abs() < 1e-10, "rho={rho} n={n}: {v} vs {expect}");
            assert!(v < 1.0);
        }
    }

    #[test]
    fn k_constant_sequence_curvature() {
        let y = [1.0, 1.0, 1.0];
        for &(gamma, t) in &[(1.0, 0.5), (2.0, -1.0), (0.5, 3.0)] {
            let v = log_k_second_derivative(&y, gamma, t).unwrap();
            assert!((v + 1.0 / ((t + gamma) * (t + gamma))).abs() < 1e-13, "g={gamma} t={t}");
        }
    }

    #[test]
    fn k_linear_sequence_no_violation() {
        let y = [1.0, 2.0 / 3.0, 1.0 / 3.0];
        let probe = k_logconcavity_check(&y, 1.0, &[-0.5, 0.0, 1.0, 3.0]).unwrap();
        assert!(!probe.violated, "worst {}", probe.worst_value);
        assert!(probe.worst_value <= 0.0 + 1e-12);
    }

    #[test]
    fn k_second_derivative_matches_finite_differences() {
        let y = [1.0, 0.9, 0.7, 0.4];
        let gamma = 1.3;
        for &t in &[-0.8, -0.2, 0.7, 2.5] {
            let h = 1e-4 * (t.abs() + 1.0);
            let fd = (log_k_value(&y, gamma, t + h).unwrap()
                - 2.0 * log_k_value(&y, gamma, t).unwrap()
                + log_k_value(&y, gamma, t - h).unwrap())
                / (h * h);
            let exact = log_k_second_derivative(&y, gamma, t).unwrap();
            assert!(
                (fd - exact).abs() / exact.abs().max(1e-2) < 1e-7,
                "t={t}: {fd} vs {exact}"
            );
        }
    }

    #[test]
    fn k_check_rejects_bad_inputs() {
        assert!(k_logconcavity_check(&[1.0, 0.2, 0.9], 1.0, &[0.5]).is_err()); // not monotone
        assert!(k_logconcavity_check(&[1.0, 0.4, 0.3], 1.0, &[0.5]).is_err()); // convex dip
        assert!(k_logconcavity_check(&[1.0, 0.9], 0.0, &[0.5]).is_err());
        assert!(log_k_value(&[1.0, 0.9], 1.0, -1.0).is_err());
    }

    #[test]
    fn complex_modulus_on_the_real_axis_is_tight() {
        let y = [1.0, 0.8, 0.5];
        let grid: Vec<Complex64> = (0..10).map(|i| Complex64::new(0.3 * i as f64, 0.0)).collect();
        let probe = complex_modulus_check(&y, 1.0, &grid).unwrap();
        assert!(probe.worst_value.abs() < 1e-12);
        assert!(!probe.violated);
    }

    #[test]
    fn complex_modulus_single_term_is_analytic() {
        // |K(z)| = |z+γ|·c^(u/γ) ≥ (u+γ)·c^(u/γ) = K(u)
        let y = [0.6];
        let gamma = 0.8;
        let grid: Vec<Complex64> = (-3..=3)
            .flat_map(|iu| (-3..=3).map(move |iv| Complex64::new(0.5 * iu as f64, iv as f64)))
            .filter(|z| z.re > -gamma)
            .collect();
        let probe = complex_modulus_check(&y, gamma, &grid).unwrap();
        assert!(!probe.violated);
        for &z in &grid {
            let expect = ((z + gamma).norm() - (z.re + gamma)) * 0.6f64.powf(z.re / gamma);
            let got = k_complex(&y, gamma, z).norm()
                - k_complex(&y, gamma, Complex64::new(z.re, 0.0)).re;
            assert!((got - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn complex_check_implies_real_check() {
        // whenever the modulus bound passes on a dense grid, the embedded
        // real grid must pass the curvature check too
        let sequences: [&[f64]; 3] =
            [&[1.0, 0.9, 0.7, 0.4], &[0.5, 0.5, 0.45], &[2.0, 1.5, 1.0, 0.5]];
        let gamma = 1.0;
        for y in sequences {
            let us: Vec<f64> = (0..20).map(|i| -0.9 + 0.35 * i as f64).collect();
            let zs: Vec<Complex64> = us
                .iter()
                .flat_map(|&u| (-10..=10).map(move |iv| Complex64::new(u, 0.4 * iv as f64)))
                .collect();
            let complex = complex_modulus_check(y, gamma, &zs).unwrap();
            let real = k_logconcavity_check(y, gamma, &us).unwrap();
            assert!(!complex.violated);
            assert!(!real.violated, "complex pass must imply real pass");
        }
    }

    #[test]
    fn two_order_gap_bound_empirical() {
        // conditional consequence of the varentropy conjecture: for monotone
        // log-concave pmfs and 1 < α < β, H_α − H_β ≤ log(c(α)/c(β))
        let alphas = [1.5, 2.0, 3.0, 5.0, 10.0];
        for seed in 0..400u64 {
            let f = random_log_concave((seed % 30 + 1) as usize, seed, true).unwrap();
            for (i, &a) in alphas.iter().enumerate() {
                for &b in &alphas[i + 1..] {
                    let (oa, ob) = (Order::new(a).unwrap(), Order::new(b).unwrap());
                    let gap = renyi(&f, oa).value - renyi(&f, ob).value;
                    let bound = log_c(oa) - log_c(ob);
                    assert!(gap <= bound + 1e-10, "seed {seed} a={a} b={b}");
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn varentropy_is_scale_invariant(
            y in proptest::collection::vec(1e-3f64..10.0, 1..20),
            scale in 1e-3f64..1e3,
        ) {
            let scaled: Vec<f64> = y.iter().map(|v| v * scale).collect();
            let a = varentropy(&y).unwrap();
            let b = varentropy(&scaled).unwrap();
            prop_assert!((a - b).abs() <= 1e-10 * a.max(1.0));
        }

        #[test]
        fn curvature_identity_on_random_sequences(
            x in proptest::collection::vec(1e-2f64..2.0, 2..15),
            t in 0.2f64..6.0,
        ) {
            let y: Vec<f64> = x.iter().map(|v| v.powf(t)).collect();
            let lhs = f_second_derivative(&x, t).unwrap();
            let rhs = (varentropy(&y).unwrap() - 1.0) / (t * t);
            prop_assert!((lhs - rhs).abs() < 1e-10);
        }
    }
}
