//! Evaluation of `L(λ, α, s)`: the defining series, the Hurwitz decomposition
//! for rational parameters, and the functional-equation pieces.

mod eval;
pub mod fast;
mod functional;
mod params;

pub use eval::{
    lerch, lerch_deriv, lerch_rational, lerch_series, lerch_series_with_margin, lerch_with_deriv,
    IRRATIONAL_SIGMA_MIN, SERIES_MARGIN,
};
pub use functional::{
    functional_equation_rhs, functional_split, growth_bound_mu, growth_bound_mu_from,
    split_residual, FunctionalSplit, DEFAULT_SIGMA0,
};
pub use params::{LerchParams, Param, RationalParam};
