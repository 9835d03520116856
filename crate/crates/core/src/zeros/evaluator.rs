use std::sync::atomic::{AtomicUsize, Ordering};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lerch::fast::FastLerch;
use crate::lerch::{lerch_with_deriv, LerchParams};
use crate::precision::{HpComplex, PrecisionPolicy};

/// Double-precision values are trusted when `|L|` exceeds their error
/// estimate by this factor.
const RESOLVE_RATIO: f64 = 1e6;

/// `L` and `L'` at a point, with an absolute error estimate.
#[derive(Clone, Copy, Debug)]
pub struct Sample {
    pub value: Complex64,
    pub deriv: Complex64,
    pub err: f64,
}

/// Hybrid evaluator for scans: double precision first, multiprecision when
/// the double-precision value is too small to trust.
#[derive(Debug)]
pub struct Evaluator {
    params: LerchParams,
    fast: FastLerch,
    policy: PrecisionPolicy,
    fast_calls: AtomicUsize,
    hp_calls: AtomicUsize,
}

impl Evaluator {
    pub fn new(params: &LerchParams, policy: PrecisionPolicy) -> Result<Self> {
        Ok(Self {
            params: params.clone(),
            fast: FastLerch::new(params)?,
            policy,
            fast_calls: AtomicUsize::new(0),
            hp_calls: AtomicUsize::new(0),
        })
    }

    pub fn params(&self) -> &LerchParams {
        &self.params
    }

    pub fn policy(&self) -> &PrecisionPolicy {
        &self.policy
    }

    pub fn sample(&self, s: Complex64) -> Result<Sample> {
        self.fast_calls.fetch_add(1, Ordering::Relaxed);
        let f = self.fast.eval(s);
        if f.value.is_finite() && f.deriv.is_finite() && f.resolved(RESOLVE_RATIO) {
            return Ok(Sample {
                value: f.value,
                deriv: f.deriv,
                err: f.err,
            });
        }
        self.sample_hp(s)
    }

    /// Multiprecision sample at the evaluator's policy.
    pub fn sample_hp(&self, s: Complex64) -> Result<Sample> {
        self.hp_calls.fetch_add(1, Ordering::Relaxed);
        let p = HpComplex::from_c64(self.policy.bits(), s);
        let (v, d) = lerch_with_deriv(&self.params, &p, &self.policy)?;
        let value = v.to_c64();
        let err = self.policy.target_error() * value.norm().max(1.0);
        if v.is_zero() || value.norm() <= err {
            return Err(Error::BoundaryZero { at: format!("{s}") });
        }
        Ok(Sample {
            value,
            deriv: d.to_c64(),
            err,
        })
    }

    /// Double-precision value only, with no fallback.
    pub fn fast(&self) -> &FastLerch {
        &self.fast
    }

    /// Number of (double, multiprecision) evaluations so far.
    pub fn calls(&self) -> (usize, usize) {
        (
            self.fast_calls.load(Ordering::Relaxed),
            self.hp_calls.load(Ordering::Relaxed),
        )
    }
}
