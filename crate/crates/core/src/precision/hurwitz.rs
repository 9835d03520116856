//! Hurwitz zeta function by Euler–Maclaurin summation.
//!
//! With shift `N` and `x = N + a`,
//!
//! ```text
//! ζ(s, a) = Σ_{n<N} (n+a)^{-s} + x^{1-s}/(s-1) + x^{-s}/2
//!         + Σ_{k=1}^{M} B_{2k}/(2k)! · (s)_{2k-1} · x^{-s-2k+1} + R_M
//! ```
//!
//! where `(s)_j` is the rising factorial and `|R_M|` is bounded by the first
//! omitted correction term times `|s+2M+1| / (σ+2M+1)`.

use rug::Float;

use super::{em_coefficients, HpComplex, PrecisionPolicy, BERNOULLI_CAP};
use crate::error::{Error, Result};

/// Largest Euler–Maclaurin shift `N` the kernel will use.
pub const MAX_SHIFT: u64 = 1_000_000;

const MAX_CORRECTIONS: usize = 900;

/// Shift and correction tolerance for one Euler–Maclaurin evaluation.
#[derive(Clone, Copy, Debug)]
pub(crate) struct EmConfig {
    pub shift: u64,
    /// Absolute tolerance on the omitted remainder.
    pub tol: f64,
}

impl EmConfig {
    /// `N ≈ max(⌈|t|/π⌉, digits)`.
    pub fn for_point(s: &HpComplex, policy: &PrecisionPolicy, tol: f64) -> Result<Self> {
        let t = s.im().to_f64().abs();
        let shift =
            ((t / std::f64::consts::PI).ceil() as u64).max(u64::from(policy.working_digits()));
        if shift > MAX_SHIFT {
            return Err(Error::Precision(format!(
                "Euler–Maclaurin shift {shift} exceeds cap {MAX_SHIFT}"
            )));
        }
        Ok(Self { shift, tol })
    }

    /// Extra bits needed to absorb cancellation in the direct sum when σ < 1.
    pub fn cancellation_bits(&self, sigma: f64) -> u32 {
        let grow = (1.0 - sigma).max(0.0) * ((self.shift + 1) as f64).log2();
        grow.ceil() as u32 + 10
    }
}

/// Euler–Maclaurin pieces of `ζ(s, a)` (and optionally `∂ζ/∂s`), excluding the
/// pole term `x^{1-s}/(s-1)` so callers can combine pole terms stably.
pub(crate) struct EmParts {
    pub head: HpComplex,
    pub head_deriv: Option<HpComplex>,
    pub ln_x: Float,
    /// `x^{1-s}`
    pub x_pow: HpComplex,
    /// Bound on the omitted remainder of `head` (and of `head_deriv`).
    pub err: f64,
}

/// Sums the Euler–Maclaurin head at the precision of `s`.
pub(crate) fn em_sum(s: &HpComplex, a: &Float, cfg: EmConfig, deriv: bool) -> Result<EmParts> {
    let prec = s.prec();
    let neg_s = -s;
    let sigma = s.re().to_f64();

    let mut head = HpComplex::zero(prec);
    let mut head_d = HpComplex::zero(prec);
    let mut xn = Float::with_val(prec, a);
    for _ in 0..cfg.shift {
        let ln_xn = Float::with_val(prec, xn.ln_ref());
        let term = neg_s.real_pow_from_ln(&ln_xn);
        if deriv {
            head_d = &head_d - &term.scale(&ln_xn);
        }
        head = &head + &term;
        xn += 1u32;
    }
    let x = xn;
    let ln_x = Float::with_val(prec, x.ln_ref());
    let x_neg_s = neg_s.real_pow_from_ln(&ln_x);
    let x_pow = x_neg_s.scale(&x);

    let half_term = x_neg_s.scale_f64(0.5);
    head = &head + &half_term;
    if deriv {
        head_d = &head_d - &half_term.scale(&ln_x);
    }

    // rising factorial (s)_{2k-1} and its s-derivative
    let mut rising = s.clone();
    let mut rising_d = HpComplex::one(prec);
    let inv_x2 = Float::with_val(prec, 1u32) / Float::with_val(prec, x.square_ref());
    // x^{1-2k}, starting at k = 1
    let mut x_scale = Float::with_val(prec, x.recip_ref());
    let mut coeffs = em_coefficients(prec, 64)?;
    let mut err = f64::INFINITY;
    let s_abs_im = s.im().to_f64();
    let mut last_log = f64::INFINITY;
    for k in 1..=MAX_CORRECTIONS {
        if k >= coeffs.len() {
            if k > BERNOULLI_CAP {
                break;
            }
            coeffs = em_coefficients(prec, (2 * k).min(BERNOULLI_CAP))?;
        }
        let weight = Float::with_val(prec, &coeffs[k] * &x_scale);
        let base = x_neg_s.scale(&weight);
        let term = &base * &rising;
        let term_d = if deriv {
            Some(&base * &(&rising_d - &rising.scale(&ln_x)))
        } else {
            None
        };

        let order = sigma + 2.0 * k as f64 - 1.0;
        if order > 0.0 {
            let factor = (order.hypot(s_abs_im) / order).log10();
            let mut log_bound = term.log10_abs() + factor;
            if let Some(td) = &term_d {
                log_bound = log_bound.max(td.log10_abs() + factor);
            }
            if log_bound < cfg.tol.log10() {
                err = 10f64.powf(log_bound);
                break;
            }
            // the asymptotic series has started to diverge: N is too small
            if k > 2 && log_bound > last_log {
                break;
            }
            last_log = log_bound;
        }
        head = &head + &term;
        if let Some(td) = term_d {
            head_d = &head_d + &td;
        }

        // advance (s)_{2k-1} -> (s)_{2k+1}
        let a1 = s.add_f64((2 * k - 1) as f64);
        let a2 = s.add_f64((2 * k) as f64);
        let step = &a1 * &a2;
        if deriv {
            let lin = s.scale_f64(2.0).add_f64((4 * k - 1) as f64);
            rising_d = &(&rising_d * &step) + &(&rising * &lin);
        }
        rising = &rising * &step;
        x_scale *= &inv_x2;
    }
    if !err.is_finite() {
        return Err(Error::Precision(format!(
            "Euler–Maclaurin corrections did not reach {:e} (N = {})",
            cfg.tol, cfg.shift
        )));
    }
    Ok(EmParts {
        head,
        head_deriv: deriv.then_some(head_d),
        ln_x,
        x_pow,
        err,
    })
}

fn check_args(s: &HpComplex, a: &Float) -> Result<()> {
    if !s.is_finite() || !a.is_finite() {
        return Err(Error::NonFinite("hurwitz zeta arguments"));
    }
    if *a <= 0 {
        return Err(Error::Domain(format!(
            "Hurwitz parameter a = {} must be positive",
            a.to_f64()
        )));
    }
    if s.im().is_zero() && *s.re() == 1 {
        return Err(Error::Pole { at: "1".into() });
    }
    Ok(())
}

fn evaluate(s: &HpComplex, a: &Float, policy: &PrecisionPolicy, deriv: bool) -> Result<HpComplex> {
    check_args(s, a)?;
    let tol = policy.target_error() * 0.25;
    let cfg = EmConfig::for_point(s, policy, tol)?;
    let prec = policy.bits() + cfg.cancellation_bits(s.re().to_f64());
    let s_w = s.clone().with_prec(prec);
    let a_w = Float::with_val(prec, a);
    let parts = em_sum(&s_w, &a_w, cfg, deriv)?;

    let s_minus_1 = s_w.add_f64(-1.0);
    let inv = s_minus_1.recip();
    let pole = &parts.x_pow * &inv;
    let value = if deriv {
        // d/ds x^{1-s}/(s-1) = -x^{1-s} (ln x/(s-1) + 1/(s-1)^2)
        let inner = &inv.scale(&parts.ln_x) + &(&inv * &inv);
        let pole_d = -&(&parts.x_pow * &inner);
        parts.head_deriv.expect("derivative requested") + pole_d
    } else {
        parts.head + pole
    };
    value.with_prec(policy.bits()).checked("hurwitz zeta")
}

/// `ζ(s, a) = Σ_{n≥0} (n+a)^{-s}` continued to all `s ≠ 1`, for real `a > 0`.
///
/// Absolute error at most `policy.target_error() · max(1, |ζ|)`.
pub fn hurwitz_zeta(s: &HpComplex, a: &Float, policy: &PrecisionPolicy) -> Result<HpComplex> {
    evaluate(s, a, policy, false)
}

/// `∂ζ(s, a)/∂s`, same domain and accuracy contract as [`hurwitz_zeta`].
pub fn hurwitz_zeta_deriv(s: &HpComplex, a: &Float, policy: &PrecisionPolicy) -> Result<HpComplex> {
    evaluate(s, a, policy, true)
}
