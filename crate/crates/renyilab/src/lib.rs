//! # renyilab
//!
//! Numerics for Rényi entropies of integer-supported distributions, with a
//! focus on the log-concave class.
//!
//! The crate provides:
//!
//! - [`Pmf`], [`TwoSidedGeo`], [`Geometric`] and [`Order`] — finite-support
//!   mass functions, two-sided geometric laws with analytic tails, and the
//!   entropy order α ∈ [0, ∞] with its limiting cases made explicit.
//! - [`entropy`] — H_α for all orders, closed forms for two-sided geometrics,
//!   the constant c(α) = α^(1/(α−1)), and exponential/Laplace reference values.
//! - [`majorize`] — partial-sum majorization (finite vs. infinite support),
//!   the extremal two-sided geometric construction that preserves min-entropy,
//!   and Schur-concavity checks.
//! - [`bounds`] — verifiers for the min-entropy gap bound
//!   H_α − H_∞ < log α^(1/(α−1)) on log-concave laws, its building-block
//!   scalar inequality, and sharpness scans along geometric families.
//! - [`diffconv`] — the difference convolution X − Y for iid X, Y, the
//!   discrete Rényi Rogers-Shephard verifier, and the identity
//!   H_∞(X−Y) = H₂(X).
//! - [`probe`] — numerical exploration of two open conjectures: concavity of
//!   t ↦ log(t Σ xₙ^t) for monotone log-concave sequences (equivalently,
//!   varentropy ≤ 1) and log-concavity of K(t) = (t+γ) Σ yₙ^(t/γ) for
//!   monotone concave sequences, including the complex-modulus strengthening
//!   |K(z)| ≥ K(Re z).
//!
//! All entropies are in nats. Every operation is a pure function over
//! immutable values; everything is safe to share across threads.
//!
//! Start with the runnable examples (`cargo run -p renyilab --example ...`)
//! or the `renyilab` CLI, which exposes each library operation as a
//! subcommand.

#![forbid(unsafe_code)]

use thiserror::Error;

pub mod bounds;
pub mod diffconv;
pub mod dist;
pub mod entropy;
pub mod majorize;
pub mod probe;
pub mod tol;

pub use bounds::BoundReport;
pub use diffconv::DiffPmf;
pub use dist::{random_log_concave, Geometric, Order, Pmf, Truncated, TwoSidedGeo};
pub use entropy::{c, continuous_reference, log_c, renyi, renyi_two_sided_geo, EntropyValue};
pub use majorize::{extremal_tsg, majorizes, majorizes_tsg, MajorizationReport};
pub use probe::{varentropy, ProbeKind, ProbeResult};

/// Errors for distribution construction and the verifier operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty support: a pmf needs at least one weight")]
    EmptySupport,

    #[error("non-positive weight at index {idx}: {value}")]
    NonPositiveWeight { idx: usize, value: f64 },

    #[error("weights sum to {sum:e}, expected 1 within {tol:e}")]
    NotNormalized { sum: f64, tol: f64 },

    #[error("invalid entropy order {0}: must be a nonnegative number or infinity")]
    InvalidOrder(f64),

    #[error("decay ratio out of range [0,1): {0}")]
    InvalidRatio(f64),

    #[error("geometric parameter out of range (0,1]: {0}")]
    InvalidTheta(f64),

    #[error("input is not log-concave (first violation at interior index {idx})")]
    NotLogConcave { idx: usize },

    #[error("majorization precondition does not hold: {0}")]
    MajorizationFailed(String),

    #[error("sequence entry must be positive and finite at index {idx}: {value}")]
    NonPositiveEntry { idx: usize, value: f64 },

    #[error("sequence is not monotone-concave at index {idx}")]
    NotMonotoneConcave { idx: usize },

    #[error("out of domain: {0}")]
    OutOfDomain(String),
}

pub type Result<T> = core::result::Result<T, Error>;
