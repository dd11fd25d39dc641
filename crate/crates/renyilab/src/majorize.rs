//! Majorization of decreasing rearrangements, the extremal two-sided
//! geometric construction, and Schur-concavity checks.
//!
//! `f ≻ g` means every partial sum of f's decreasing rearrangement dominates
//! g's, with equal total masses in the limit. Every log-concave pmf majorizes
//! a two-sided geometric with the same peak; Rényi entropy is Schur-concave,
//! so that construction turns entropy bounds on log-concave laws into
//! closed-form computations on two-sided geometrics.

use serde::Serialize;

use crate::bounds::BoundReport;
use crate::dist::{kahan_sum, Order, Pmf, TwoSidedGeo};
use crate::entropy::{renyi, renyi_two_sided_geo};
use crate::{tol, Error, Result};

/// Outcome of a partial-sum comparison between two rearrangements.
#[derive(Debug, Clone, Serialize)]
pub struct MajorizationReport {
    pub holds: bool,
    /// 1-based prefix length where the comparison first fails, if it does.
    pub first_violation_index: Option<usize>,
    /// Smallest partial-sum gap Σf↓ − Σg↓ over the compared prefixes.
    pub min_margin: f64,
    /// Total-mass difference; majorization needs it ~0 ("equality in the limit").
    pub total_mass_gap: f64,
}

impl MajorizationReport {
    fn from_scan(min_margin: f64, first_violation_index: Option<usize>, gap: f64) -> Self {
        Self {
            holds: min_margin >= -tol::MARGIN && gap.abs() <= tol::TOTAL_MASS,
            first_violation_index,
            min_margin,
            total_mass_gap: gap,
        }
    }
}

struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    fn new() -> Self {
        Self { sum: 0.0, comp: 0.0 }
    }
    fn add(&mut self, v: f64) {
        let y = v - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Does f majorize g? Compares partial sums of the decreasing
/// rearrangements for every prefix up to the longer support, then totals.
pub fn majorizes(f: &Pmf, g: &Pmf) -> MajorizationReport {
    let fd = f.decreasing_rearrangement();
    let gd = g.decreasing_rearrangement();
    let n = fd.len().max(gd.len());
    let mut sf = Kahan::new();
    let mut sg = Kahan::new();
    let mut min_margin = f64::INFINITY;
    let mut first_violation = None;
    for k in 0..n {
        if k < fd.len() {
            sf.add(fd[k]);
        }
        if k < gd.len() {
            sg.add(gd[k]);
        }
        let margin = sf.sum - sg.sum;
        if margin < min_margin {
            min_margin = margin;
        }
        if margin < -tol::MARGIN && first_violation.is_none() {
            first_violation = Some(k + 1);
        }
    }
    MajorizationReport::from_scan(min_margin, first_violation, sf.sum - sg.sum)
}

/// Descending merge of a two-sided geometric's two tails, with prefix sums
/// taken from the closed-form geometric series instead of term accumulation.
struct TsgDescending<'a> {
    g: &'a TwoSidedGeo,
    taken_mode: bool,
    right: u32,
    left: u32,
}

impl<'a> TsgDescending<'a> {
    fn new(g: &'a TwoSidedGeo) -> Self {
        Self { g, taken_mode: false, right: 0, left: 0 }
    }

    /// Advance by one term of φ↓ and return the prefix sum so far.
    fn take(&mut self) -> f64 {
        if !self.taken_mode {
            self.taken_mode = true;
        } else {
            let next_right = if self.g.p() > 0.0 {
                self.g.p().powi(self.right as i32 + 1)
            } else {
                0.0
            };
            let next_left = if self.g.q() > 0.0 {
                self.g.q().powi(self.left as i32 + 1)
            } else {
                0.0
            };
            // equal values take the right tail first
            if next_right >= next_left {
                self.right += 1;
            } else {
                self.left += 1;
            }
        }
        self.prefix_sum()
    }

    fn prefix_sum(&self) -> f64 {
        let p = self.g.p();
        let q = self.g.q();
        let right = (p - p.powi(self.right as i32 + 1)) / (1.0 - p);
        let left = (q - q.powi(self.left as i32 + 1)) / (1.0 - q);
        self.g.peak() * (1.0 + right + left)
    }
}

/// Does the pmf f majorize the two-sided geometric g?
///
/// Prefixes are compared up to f's support size; beyond it f's partial sum
/// is its total mass while g's prefix sums stay below g's total mass, so the
/// remaining comparisons reduce to the recorded total-mass gap.
pub fn majorizes_tsg(f: &Pmf, g: &TwoSidedGeo) -> MajorizationReport {
    let fd = f.decreasing_rearrangement();
    let mut sf = Kahan::new();
    let mut merge = TsgDescending::new(g);
    let mut min_margin = f64::INFINITY;
    let mut first_violation = None;
    for (k, &w) in fd.iter().enumerate() {
        sf.add(w);
        let margin = sf.sum - merge.take();
        if margin < min_margin {
            min_margin = margin;
        }
        if margin < -tol::MARGIN && first_violation.is_none() {
            first_violation = Some(k + 1);
        }
    }
    MajorizationReport::from_scan(min_margin, first_violation, sf.sum - g.total_mass())
}

/// Solve peak/(1−r) = target for r by bisection. The map r ↦ mass is
/// strictly increasing, so the bracket [0, 1−1e-15] is safe.
fn solve_side_ratio(peak: f64, target: f64) -> f64 {
    if target <= peak {
        return 0.0; // the side holds nothing but the mode
    }
    let mut lo = 0.0;
    let mut hi = 1.0 - 1e-15;
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..tol::BISECTION_MAX_ITER {
        mid = 0.5 * (lo + hi);
        let mass = peak / (1.0 - mid);
        if (mass - target).abs() < tol::BISECTION_RESIDUAL {
            return mid;
        }
        if mass < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    mid
}

fn extremal_unchecked(f: &Pmf) -> TwoSidedGeo {
    let m_pos = f.argmax();
    let probs = f.probs();
    let peak = probs[m_pos];
    let t_right = kahan_sum(probs[m_pos..].iter().copied());
    let t_left = kahan_sum(probs[..=m_pos].iter().copied());
    let p = solve_side_ratio(peak, t_right);
    let q = solve_side_ratio(peak, t_left);
    TwoSidedGeo::with_peak(p, q, f.offset() + m_pos as i64, peak)
}

/// The extremal two-sided geometric majorized by a log-concave pmf.
///
/// The mode value is copied from max f — never solved for — so the
/// construction preserves H_∞ exactly. The decay ratios solve the two
/// side-mass equations peak/(1−p) = Σ_{j≥m} f(j) and peak/(1−q) = Σ_{j≤m} f(j)
/// by bisection; total mass then reproduces f's within the bisection
/// residuals. Split point m is the leftmost argmax; if the right side is the
/// lighter one the pmf is mirrored first so the heavier side sits on the
/// right, and the result is mirrored back.
pub fn extremal_tsg(f: &Pmf) -> Result<TwoSidedGeo> {
    if let Some(idx) = f.log_concavity_violation(tol::LOG_CONCAVE_REL) {
        return Err(Error::NotLogConcave { idx });
    }
    let m_pos = f.argmax();
    let probs = f.probs();
    let t_right = kahan_sum(probs[m_pos..].iter().copied());
    let t_left = kahan_sum(probs[..=m_pos].iter().copied());
    if t_right < t_left {
        Ok(extremal_unchecked(&f.mirrored()).mirrored())
    } else {
        Ok(extremal_unchecked(f))
    }
}

/// Schur-concavity check between two pmfs: verifies f ≻ g, then asserts
/// H_α(f) ≤ H_α(g) within a small floating slack.
///
/// A failed majorization is a precondition error, not an inequality failure.
pub fn schur_check(f: &Pmf, g: &Pmf, a: Order) -> Result<BoundReport> {
    let maj = majorizes(f, g);
    if !maj.holds {
        return Err(Error::MajorizationFailed(format!(
            "min partial-sum margin {:.3e}, total mass gap {:.3e}",
            maj.min_margin, maj.total_mass_gap
        )));
    }
    let lhs = renyi(f, a).value;
    let rhs = renyi(g, a).value;
    Ok(BoundReport::new(
        lhs,
        rhs,
        tol::SCHUR,
        format!("Schur: H_{a}(f) <= H_{a}(g) given f > g (majorization)"),
    ))
}

/// Schur-concavity check against a two-sided geometric comparison law.
pub fn schur_check_tsg(f: &Pmf, g: &TwoSidedGeo, a: Order) -> Result<BoundReport> {
    let maj = majorizes_tsg(f, g);
    if !maj.holds {
        return Err(Error::MajorizationFailed(format!(
            "min partial-sum margin {:.3e}, total mass gap {:.3e}",
            maj.min_margin, maj.total_mass_gap
        )));
    }
    let lhs = renyi(f, a).value;
    let rhs = renyi_two_sided_geo(g, a).value;
    Ok(BoundReport::new(
        lhs,
        rhs,
        tol::SCHUR,
        format!("Schur: H_{a}(f) <= H_{a}(phi) given f > phi (majorization)"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{random_log_concave, Geometric};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn order_grid() -> Vec<Order> {
        [0.5, 1.0, 1.5, 2.0, 3.0, 10.0, f64::INFINITY]
            .iter()
            .map(|&a| Order::new(a).unwrap())
            .collect()
    }

    #[test]
    fn point_mass_majorizes_uniform() {
        let point = Pmf::point_mass(0);
        let uni = Pmf::uniform(4, 0).unwrap();
        let rep = majorizes(&point, &uni);
        assert!(rep.holds);
        assert!(rep.min_margin > 0.0);

        let rev = majorizes(&uni, &point);
        assert!(!rev.holds);
        assert_eq!(rev.first_violation_index, Some(1));
    }

    #[test]
    fn majorization_is_reflexive() {
        let f = random_log_concave(17, 5, false).unwrap();
        let rep = majorizes(&f, &f);
        assert!(rep.holds);
        assert_eq!(rep.min_margin, 0.0);
        assert_eq!(rep.total_mass_gap, 0.0);
    }

    #[test]
    fn tsg_point_mass_case() {
        let f = Pmf::point_mass(4);
        let g = TwoSidedGeo::new(0.0, 0.0, 4).unwrap();
        let rep = majorizes_tsg(&f, &g);
        assert!(rep.holds);
        assert_eq!(rep.min_margin, 0.0);
        assert_eq!(rep.total_mass_gap, 0.0);
    }

    #[test]
    fn uniform_two_majorizes_its_extremal_geometric() {
        // φ↓ partial sums are (0.5, 0.75, 0.875, ...) against (0.5, 1.0);
        // margins are 0 at k=1 and positive after, totals both 1.
        let f = Pmf::uniform(2, 0).unwrap();
        let g = TwoSidedGeo::new(0.5, 0.0, 0).unwrap();
        let rep = majorizes_tsg(&f, &g);
        assert!(rep.holds);
        assert!(rep.min_margin.abs() <= 1e-15);
        assert!(rep.total_mass_gap.abs() <= 1e-15);
        // and this g is exactly extremal_tsg(uniform(2))
        let phi = extremal_tsg(&f).unwrap();
        assert!((phi.p() - 0.5).abs() < 1e-13);
        assert_eq!(phi.q(), 0.0);
        assert_eq!(phi.mode(), 0);
    }

    #[test]
    fn greedy_merge_matches_sorted_enumeration() {
        // independent oracle: materialize φ on a window, sort, partial-sum
        let g = TwoSidedGeo::new(0.8, 0.55, 2).unwrap();
        let mut window: Vec<f64> = (-400..=400).map(|n| g.mass_at(n)).collect();
        window.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let mut merge = TsgDescending::new(&g);
        let mut acc = 0.0;
        for k in 0..200 {
            acc += window[k];
            let closed = merge.take();
            assert!(
                (acc - closed).abs() < 1e-12,
                "prefix {k}: sorted {acc} vs closed {closed}"
            );
        }
    }

    #[test]
    fn geometric_majorizes_its_extremal() {
        let f = Geometric::new(0.5).unwrap().to_pmf(1e-15).pmf;
        let phi = extremal_tsg(&f).unwrap();
        let rep = majorizes_tsg(&f, &phi);
        assert!(rep.holds, "margin {:.3e} gap {:.3e}", rep.min_margin, rep.total_mass_gap);

        // brute-force partial sums to k=200 via the sorted-window oracle
        let fd = f.decreasing_rearrangement();
        let mut window: Vec<f64> = (-300..=300).map(|n| phi.mass_at(n)).collect();
        window.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let mut sf = 0.0;
        let mut sg = 0.0;
        for k in 0..200 {
            sf += if k < fd.len() { fd[k] } else { 0.0 };
            sg += window[k];
            assert!(sf - sg >= -1e-12, "prefix {}", k + 1);
        }
    }

    #[test]
    fn extremal_point_mass_is_degenerate() {
        let phi = extremal_tsg(&Pmf::point_mass(-3)).unwrap();
        assert_eq!((phi.p(), phi.q()), (0.0, 0.0));
        assert_eq!(phi.mode(), -3);
        assert_eq!(phi.peak(), 1.0);
    }

    #[test]
    fn extremal_symmetric_tent() {
        // (1/4, 1/2, 1/4): symmetry forces q* = p*; closed form gives
        // p* = 1 − peak/rightmass = 1 − (1/2)/(3/4) = 1/3.
        let f = Pmf::new(0, vec![0.25, 0.5, 0.25]).unwrap();
        let phi = extremal_tsg(&f).unwrap();
        assert!((phi.p() - 1.0 / 3.0).abs() < 1e-13);
        assert!((phi.q() - 1.0 / 3.0).abs() < 1e-13);
        assert_eq!(phi.mode(), 1);
        // min-entropy preserved exactly: peak copied, not solved
        assert_eq!(phi.peak(), 0.5);
        assert_eq!(
            renyi_two_sided_geo(&phi, Order::Infinity).value,
            renyi(&f, Order::Infinity).value
        );
        assert!((phi.total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn extremal_mirrors_when_left_side_is_heavy() {
        // increasing pmf: max at the right end, left side carries the mass
        let f = Pmf::new(0, vec![0.25, 0.35, 0.4]).unwrap();
        let phi = extremal_tsg(&f).unwrap();
        // closed-form oracle: right mass 0.4 → p = 0, left mass 1.0 → q = 0.6
        assert_eq!(phi.p(), 0.0);
        assert!((phi.q() - 0.6).abs() < 1e-13);
        assert_eq!(phi.mode(), 2);
        assert!(majorizes_tsg(&f, &phi).holds);
    }

    #[test]
    fn extremal_rejects_non_log_concave() {
        let f = Pmf::new(0, vec![0.4, 0.1, 0.5]).unwrap();
        assert!(matches!(extremal_tsg(&f), Err(Error::NotLogConcave { idx: 1 })));
    }

    #[test]
    fn bisection_residuals_stay_small() {
        for seed in 0..500u64 {
            let f = random_log_concave((seed % 50 + 1) as usize, seed, false).unwrap();
            let phi = extremal_tsg(&f).unwrap();
            let m_pos = (phi.mode() - f.offset()) as usize;
            let probs = f.probs();
            let t_right = kahan_sum(probs[m_pos..].iter().copied());
            let t_left = kahan_sum(probs[..=m_pos].iter().copied());
            let right_mass = phi.peak() / (1.0 - phi.p());
            let left_mass = phi.peak() / (1.0 - phi.q());
            assert!((right_mass - t_right).abs() < 1e-12, "seed {seed}");
            assert!((left_mass - t_left).abs() < 1e-12, "seed {seed}");
        }
    }

    #[test]
    fn schur_point_mass_vs_uniform() {
        let point = Pmf::point_mass(0);
        let uni = Pmf::uniform(4, 0).unwrap();
        let rep = schur_check(&point, &uni, Order::One).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.lhs, 0.0);
        assert!((rep.rhs - 4.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn schur_self_comparison_is_equality() {
        let f = random_log_concave(23, 9, false).unwrap();
        for a in order_grid() {
            let rep = schur_check(&f, &f, a).unwrap();
            assert!(rep.holds);
            assert_eq!(rep.margin, 0.0);
        }
    }

    #[test]
    fn schur_rejects_non_majorizing_pairs() {
        let point = Pmf::point_mass(0);
        let uni = Pmf::uniform(4, 0).unwrap();
        assert!(matches!(
            schur_check(&uni, &point, Order::One),
            Err(Error::MajorizationFailed(_))
        ));
    }

    /// Robin-Hood transfer on the rearranged weights: moving mass from a
    /// smaller weight to a larger one yields a pmf that majorizes the input.
    fn robin_hood(f: &Pmf, rng: &mut ChaCha8Rng) -> Pmf {
        let mut w = f.decreasing_rearrangement();
        if w.len() < 2 {
            return f.clone();
        }
        let i = rng.gen_range(0..w.len() - 1);
        let j = rng.gen_range(i + 1..w.len());
        let delta = 0.5 * rng.gen::<f64>() * w[j];
        w[i] += delta;
        w[j] -= delta;
        if w[j] <= 0.0 {
            w[j] = f64::MIN_POSITIVE;
        }
        Pmf::new(0, w).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn transfers_majorize_and_reduce_entropy(seed in 0u64..4_000) {
            let g = random_log_concave((seed % 30 + 2) as usize, seed, false).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
            let f = robin_hood(&g, &mut rng);
            let rep = majorizes(&f, &g);
            prop_assert!(rep.holds);
            for a in order_grid() {
                let schur = schur_check(&f, &g, a).unwrap();
                prop_assert!(schur.holds, "order {}: margin {:.3e}", a, schur.margin);
            }
        }

        #[test]
        fn extremal_postconditions_hold(seed in 0u64..3_000) {
            let f = random_log_concave((seed % 50 + 1) as usize, seed, seed % 4 == 0).unwrap();
            let phi = extremal_tsg(&f).unwrap();
            // H_inf preserved bit-for-bit
            prop_assert_eq!(
                renyi_two_sided_geo(&phi, Order::Infinity).value,
                renyi(&f, Order::Infinity).value
            );
            prop_assert!((phi.total_mass() - 1.0).abs() < 1e-12);
            let rep = majorizes_tsg(&f, &phi);
            prop_assert!(rep.holds, "margin {:.3e} gap {:.3e}", rep.min_margin, rep.total_mass_gap);
        }
    }
}
