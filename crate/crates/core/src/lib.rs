//! Multiprecision evaluation of the Lerch zeta-function
//! `L(λ, α, s) = Σ_{m≥0} e^{2πiλm} (m+α)^{-s}`, location and certification of
//! its nontrivial zeros, and statistics on how those zeros sit relative to the
//! critical line `σ = 1/2`.
//!
//! Layout:
//! - [`precision`]: complex multiprecision numbers, Bernoulli numbers, gamma and Hurwitz zeta.
//! - [`lerch`]: parameter types and every evaluation route for `L`.
//! - [`zeros`]: argument-principle counting, Muller refinement, contour location, scans.
//! - [`symmetry`]: classification of zero lists and the symmetry checks built on it.
//! - [`db`]: the on-disk zero database (CSV and JSON).

pub mod db;
pub mod error;
pub mod lerch;
pub mod precision;
pub mod symmetry;
pub mod zeros;

pub use error::{Error, Result};
pub use lerch::{LerchParams, Param, RationalParam};
pub use precision::{HpComplex, PrecisionPolicy};
