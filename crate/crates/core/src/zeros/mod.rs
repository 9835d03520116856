//! Counting, locating and certifying nontrivial zeros of `L(λ, α, s)`.
//!
//! Counting is by the argument principle: the change of `arg L` is tracked
//! along a contour with step halving until each step is provably small.
//! Scans run in double precision with a multiprecision fallback near small
//! values. Every zero is then refined by Muller's method in multiprecision.

mod annulus;
mod argument;
mod count;
mod evaluator;
mod refine;
mod scan;

use std::fmt;

use rug::Float;
use serde::{Deserialize, Serialize};

use crate::precision::HpComplex;

pub use annulus::{default_k_max, find_zero_free_annulus, AnnulusResult, AnnulusSummary};
pub use count::{
    count_zeros_disc, count_zeros_quadrature, count_zeros_rectangle, count_zeros_rectangle_with,
    main_term, CountResult, DEFAULT_NUDGE,
};
pub use evaluator::{Evaluator, Sample};
pub use refine::{
    certify_isolation, locate_zero_contour, refine_zero, refine_zero_with, DEFAULT_MAX_ITER,
};
pub use scan::{scan_window, scan_zeros, ScanConfig, ScanOutcome};

/// Axis-parallel rectangle `[σ_lo, σ_hi] × [t_lo, t_hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub sigma_lo: f64,
    pub sigma_hi: f64,
    pub t_lo: f64,
    pub t_hi: f64,
}

impl Rect {
    pub fn new(sigma_lo: f64, sigma_hi: f64, t_lo: f64, t_hi: f64) -> Self {
        Self {
            sigma_lo,
            sigma_hi,
            t_lo,
            t_hi,
        }
    }

    /// Square of half-side `r` centred at `(re, im)`.
    pub fn square(re: f64, im: f64, r: f64) -> Self {
        Self::new(re - r, re + r, im - r, im + r)
    }

    pub fn width(&self) -> f64 {
        self.sigma_hi - self.sigma_lo
    }

    pub fn height(&self) -> f64 {
        self.t_hi - self.t_lo
    }

    pub fn contains(&self, re: f64, im: f64) -> bool {
        re > self.sigma_lo && re < self.sigma_hi && im > self.t_lo && im < self.t_hi
    }

    pub fn is_valid(&self) -> bool {
        self.sigma_lo < self.sigma_hi
            && self.t_lo < self.t_hi
            && [self.sigma_lo, self.sigma_hi, self.t_lo, self.t_hi]
                .iter()
                .all(|v| v.is_finite())
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]×[{}, {}]",
            self.sigma_lo, self.sigma_hi, self.t_lo, self.t_hi
        )
    }
}

/// How a zero's location was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroMethod {
    Muller,
    Contour,
}

/// A refined zero `ρ = β + iγ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroRecord {
    pub beta: Float,
    pub gamma: Float,
    /// `|L(ρ)|` at the working precision.
    pub residual: f64,
    /// The disc of this radius around `ρ` contains exactly one zero.
    pub radius_bound: f64,
    pub method: ZeroMethod,
}

impl ZeroRecord {
    pub fn rho(&self) -> HpComplex {
        HpComplex::new(self.beta.clone(), self.gamma.clone())
    }

    pub fn beta_f64(&self) -> f64 {
        self.beta.to_f64()
    }

    pub fn gamma_f64(&self) -> f64 {
        self.gamma.to_f64()
    }

    /// `β - 1/2` at full precision.
    pub fn deviation(&self) -> Float {
        Float::with_val(self.beta.prec(), &self.beta - 0.5f64)
    }
}
