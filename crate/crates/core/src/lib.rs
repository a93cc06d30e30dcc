//! Non-existence certificates for perfect codes in weakly metric association
//! schemes.
//!
//! A weakly metric association scheme (WMAS) is an association scheme carrying
//! a quasi-distance that is constant on every relation class. If an e-perfect
//! code exists in such a scheme, the Lloyd polynomial `Ψ_e(j) = Σ_{d(k)≤e} P_k(j)`
//! must vanish for at least `Π(e) − 1` eigenvalue indices, where `Π` is the
//! dispersion function counting classes within quasi-distance `e`. When the
//! scheme is r-polynomial with index set S, the Schwartz–Zippel lemma caps the
//! number of zeros at `e·|S|^{r−1}`, so
//!
//! ```text
//! Π(e) − 1 > e · |S|^{r−1}   ⇒   no e-perfect code exists.
//! ```
//!
//! The crate provides:
//!
//! - [`combinat`] - exact partition/composition/binomial machinery (BigUint
//!   throughout, generating functions with integer coefficients);
//! - [`dispersion`] - exact dispersion functions `Π(e)` for the Lee, sum-rank,
//!   mixed-alphabet, NRT, q-ary Johnson, and homogeneous-metric schemes;
//! - [`eigen`] - Krawtchouk polynomials, a character-sum oracle for
//!   translation schemes, the Lee eigenvalue generating function, product
//!   schemes, and Lloyd polynomial evaluation;
//! - [`scheme`] - desk-scale explicit scheme construction, axiom verification,
//!   perfect-code checking, and end-to-end Lloyd theorem validation;
//! - [`certify`] - the master non-existence test, corollary thresholds,
//!   reference-table reproduction, and an empirical Schwartz–Zippel harness;
//! - [`mdistance`] - monomial orders, m-distances on edge-colored graphs, and
//!   m-distance-regularity detection.

pub mod certify;
pub mod combinat;
pub mod dispersion;
pub mod eigen;
pub mod mdistance;
pub mod scheme;

pub use num_bigint::{BigInt, BigUint};

/// Class label of a scheme relation: a Lee composition, NRT shape, rank
/// tuple, per-block distance tuple, or homogeneous partition statistic.
pub type ClassIndex = Vec<u32>;

/// Errors across the crate. Math operations that cannot fail return values
/// directly; everything with a rejectable precondition goes through this.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("gaussian binomial requires m <= n, got n={n}, m={m}")]
    GaussianIndex { n: u64, m: u64 },
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("invalid scheme parameters: {0}")]
    InvalidParams(String),
    #[error("scheme size {size} exceeds cap {cap} (raise the cap to force construction)")]
    SizeCap { size: usize, cap: usize },
    #[error("{family} does not support {what}")]
    Unsupported { family: String, what: &'static str },
    #[error("class map is not symmetric: class({x}) != class(-{x})")]
    NonSymmetricClasses { x: usize },
    #[error("character sum has imaginary residue {residue:.3e} above tolerance")]
    ImaginaryResidue { residue: f64 },
    #[error("characters with equal class index disagree by {deviation:.3e}")]
    CharacterGrouping { deviation: f64 },
    #[error("composition sums to {got}, expected {expected}")]
    CompositionSum { got: u64, expected: u64 },
    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("monomial order is not L1-compatible on the attained domain; witness {a:?} <= {b:?}")]
    NotL1Compatible { a: Vec<u32>, b: Vec<u32> },
    #[error("code is not a perfect code (required before the Lloyd check)")]
    NotPerfect,
    #[error("invalid code: {0}")]
    InvalidCode(String),
}
