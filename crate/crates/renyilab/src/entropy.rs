//! Rényi entropy H_α for all orders, in nats.
//!
//! H_α = log(Σ p_i^α)/(1−α) for α ∈ (0,1)∪(1,∞), with the limits
//! H₀ = log(support size), H₁ = −Σ p log p and H_∞ = −log max p.
//!
//! Finite-order power sums factor out the largest weight, so long supports
//! with tiny tail weights do not underflow: Σ p^α = m^α · Σ (p/m)^α.

use serde::Serialize;

use crate::dist::{kahan_sum, Geometric, Order, Pmf, TwoSidedGeo};
use crate::{tol, Error, Result};

/// How an entropy value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    #[serde(rename = "direct-sum")]
    DirectSum,
    #[serde(rename = "closed-form")]
    ClosedForm,
    /// α was inside the numerical band around 1; the Shannon value is
    /// returned because the direct formula has no precision left there.
    #[serde(rename = "limit-formula")]
    LimitFormula,
}

/// An entropy value in nats, tagged with its order and computation path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyValue {
    #[serde(serialize_with = "crate::entropy::serialize_order")]
    pub order: Order,
    pub value: f64,
    pub method: Method,
}

pub(crate) fn serialize_order<S: serde::Serializer>(
    order: &Order,
    ser: S,
) -> core::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&order.to_string())
}

fn shannon(f: &Pmf) -> f64 {
    -kahan_sum(f.probs().iter().map(|&p| p * p.ln()))
}

fn finite_power_entropy(f: &Pmf, alpha: f64) -> f64 {
    let m = f.max_prob();
    let s = kahan_sum(f.probs().iter().map(|&p| (p / m).powf(alpha)));
    (alpha * m.ln() + s.ln()) / (1.0 - alpha)
}

/// Rényi entropy of a finite-support pmf.
pub fn renyi(f: &Pmf, a: Order) -> EntropyValue {
    let (value, method) = match a {
        Order::Zero => ((f.len() as f64).ln(), Method::DirectSum),
        Order::One => (shannon(f), Method::DirectSum),
        Order::Two => {
            let s = kahan_sum(f.probs().iter().map(|&p| p * p));
            (-s.ln(), Method::DirectSum)
        }
        Order::Infinity => (-f.max_prob().ln(), Method::DirectSum),
        Order::Finite(alpha) => {
            if (alpha - 1.0).abs() <= tol::ORDER_ONE_BAND {
                // compute both; the direct route only sanity-checks the limit
                let direct = finite_power_entropy(f, alpha);
                let limit = shannon(f);
                debug_assert!((direct - limit).abs() < 1e-3 * (1.0 + limit.abs()));
                (limit, Method::LimitFormula)
            } else {
                (finite_power_entropy(f, alpha), Method::DirectSum)
            }
        }
    };
    EntropyValue { order: a, value, method }
}

/// x·ln(x) with the 0·ln 0 = 0 convention.
fn xlnx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Gap H_α(φ) − H_∞(φ) of a two-sided geometric, closed form.
///
/// For α ∉ {1, ∞} this is log(S_α/S₁)/(1−α) with
/// S_α = 1/(1−p^α) + 1/(1−q^α) − 1; the Shannon case uses its own formula
/// −[p·log p/(1−p)² + q·log q/(1−q)²]/S₁ rather than an α → 1 limit.
pub fn tsg_entropy_gap(g: &TwoSidedGeo, a: Order) -> f64 {
    match a {
        Order::Zero => {
            if g.is_point_mass() {
                0.0
            } else {
                f64::INFINITY
            }
        }
        Order::Infinity => 0.0,
        Order::One => {
            let num = xlnx(g.p()) / ((1.0 - g.p()) * (1.0 - g.p()))
                + xlnx(g.q()) / ((1.0 - g.q()) * (1.0 - g.q()));
            -num / g.s1()
        }
        Order::Two | Order::Finite(_) => {
            let alpha = a.alpha();
            if (alpha - 1.0).abs() <= tol::ORDER_ONE_BAND {
                return tsg_entropy_gap(g, Order::One);
            }
            (g.s_alpha(alpha).ln() - g.s1().ln()) / (1.0 - alpha)
        }
    }
}

/// Rényi entropy of a two-sided geometric, closed form.
///
/// Agrees with [`renyi`] on a sufficiently deep truncation within 1e-10.
pub fn renyi_two_sided_geo(g: &TwoSidedGeo, a: Order) -> EntropyValue {
    let h_inf = -g.peak().ln();
    let value = match a {
        Order::Zero => {
            if g.is_point_mass() {
                0.0
            } else {
                f64::INFINITY
            }
        }
        Order::Infinity => h_inf,
        Order::One => {
            // −Σ φ ln φ without assuming the stored peak normalizes exactly
            let num = xlnx(g.p()) / ((1.0 - g.p()) * (1.0 - g.p()))
                + xlnx(g.q()) / ((1.0 - g.q()) * (1.0 - g.q()));
            g.total_mass() * h_inf - g.peak() * num
        }
        Order::Two | Order::Finite(_) => {
            let alpha = a.alpha();
            if (alpha - 1.0).abs() <= tol::ORDER_ONE_BAND {
                return EntropyValue {
                    order: a,
                    value: renyi_two_sided_geo(g, Order::One).value,
                    method: Method::LimitFormula,
                };
            }
            (alpha * g.peak().ln() + g.s_alpha(alpha).ln()) / (1.0 - alpha)
        }
    };
    EntropyValue { order: a, value, method: Method::ClosedForm }
}

/// Rényi entropy of a geometric law, closed form.
pub fn renyi_geometric(g: &Geometric, a: Order) -> EntropyValue {
    renyi_two_sided_geo(&g.to_tsg(), a)
}

/// The order constant c(α) = α^(1/(α−1)), with c(0) = ∞, c(1) = e, c(∞) = 1.
pub fn c(a: Order) -> f64 {
    match a {
        Order::Zero => f64::INFINITY,
        Order::One => std::f64::consts::E,
        Order::Infinity => 1.0,
        Order::Two | Order::Finite(_) => {
            let alpha = a.alpha();
            alpha.powf(1.0 / (alpha - 1.0))
        }
    }
}

/// log c(α) = log α/(α−1), with log c(0) = ∞, log c(1) = 1, log c(∞) = 0.
pub fn log_c(a: Order) -> f64 {
    match a {
        Order::Zero => f64::INFINITY,
        Order::One => 1.0,
        Order::Infinity => 0.0,
        Order::Two | Order::Finite(_) => {
            let alpha = a.alpha();
            alpha.ln() / (alpha - 1.0)
        }
    }
}

/// Continuous reference families with closed-form Rényi entropies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ContinuousFamily {
    /// Density e^(−x) on (0, ∞).
    Exponential,
    /// Density ½·e^(−|x|) on ℝ.
    Laplace,
}

/// h_α of the reference family: log c(α) for the unit exponential and
/// log 2 + log c(α) for the standard Laplace. Order zero is rejected
/// (both supports have infinite measure).
///
/// The Laplace value is computed as exponential + log 2, so the difference
/// of the two families is log 2 exactly, at every order.
pub fn continuous_reference(family: ContinuousFamily, a: Order) -> Result<f64> {
    if a == Order::Zero {
        return Err(Error::OutOfDomain(
            "order 0 reference is infinite for these supports".into(),
        ));
    }
    let base = log_c(a);
    Ok(match family {
        ContinuousFamily::Exponential => base,
        ContinuousFamily::Laplace => std::f64::consts::LN_2 + base,
    })
}
