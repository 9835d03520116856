use num_complex::Complex64;
use rug::Float;

use super::count::{count_zeros_rectangle_with, DEFAULT_NUDGE};
use super::evaluator::Evaluator;
use super::{count_zeros_disc, Rect, ZeroMethod, ZeroRecord};
use crate::error::{Error, Result};
use crate::lerch::{lerch, lerch_with_deriv, LerchParams};
use crate::precision::{HpComplex, PrecisionPolicy};

pub const DEFAULT_MAX_ITER: usize = 200;

/// Largest distance a refinement may move from its guess.
const SEARCH_RADIUS: f64 = 0.5;

/// Largest certification square tried first.
const CERT_RADIUS: f64 = 0.05;

/// Newton's method in double precision, steps clamped to `max_step`.
pub(crate) fn newton_f64(eval: &Evaluator, start: Complex64, max_step: f64) -> Option<Complex64> {
    let mut z = start;
    for _ in 0..60 {
        let f = eval.fast().eval(z);
        if f.value.norm() == 0.0 {
            return Some(z);
        }
        if f.deriv.norm() == 0.0 || !f.value.is_finite() {
            return None;
        }
        let mut step = f.value / f.deriv;
        if step.norm() > max_step {
            step *= max_step / step.norm();
        }
        z -= step;
        if step.norm() < 1e-14 * z.norm().max(1.0) || f.value.norm() < f.err {
            return Some(z);
        }
    }
    None
}

/// Muller iteration in multiprecision from `z0`, stopping when the step is
/// below the policy's target error.
fn muller_hp(
    params: &LerchParams,
    z0: &HpComplex,
    policy: &PrecisionPolicy,
    max_iter: usize,
) -> Result<HpComplex> {
    let prec = policy.bits();
    let f = |z: &HpComplex| lerch(params, z, policy);
    let h = HpComplex::from_f64(prec, 1e-7, 1e-7);
    let mut x0 = z0 - &h;
    let mut x1 = z0 + &h.mul_i();
    let mut x2 = z0.clone().with_prec(prec);
    let mut f0 = f(&x0)?;
    let mut f1 = f(&x1)?;
    let mut f2 = f(&x2)?;
    let tol = policy.target_error();
    let start = z0.to_c64();
    for _ in 0..max_iter {
        if f2.is_zero() {
            return Ok(x2);
        }
        let h1 = &x1 - &x0;
        let h2 = &x2 - &x1;
        let d1 = &(&f1 - &f0) / &h1;
        let d2 = &(&f2 - &f1) / &h2;
        let a = &(&d2 - &d1) / &(&h2 + &h1);
        let b = &(&a * &h2) + &d2;
        let disc = (&(&b * &b) - &(&a * &f2).scale_f64(4.0)).sqrt();
        let plus = &b + &disc;
        let minus = &b - &disc;
        let den = if plus.abs_f64() >= minus.abs_f64() {
            plus
        } else {
            minus
        };
        let dx = if den.is_zero() {
            // degenerate parabola: fall back to a secant step
            -&(&f2 / &d2)
        } else {
            -&(&f2.scale_f64(2.0) / &den)
        };
        let x3 = &x2 + &dx;
        if !x3.is_finite() {
            return Err(Error::NonConvergence("Muller step is not finite".into()));
        }
        if (x3.to_c64() - start).norm() > SEARCH_RADIUS {
            return Err(Error::Drift(format!("from {start} to {}", x3.to_c64())));
        }
        let step = dx.abs_f64();
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
        x2 = x3;
        f2 = f(&x2)?;
        if step < tol * x2.abs_f64().max(1.0) {
            return Ok(x2);
        }
    }
    Err(Error::NonConvergence(format!(
        "Muller did not converge in {max_iter} iterations near {start}"
    )))
}

/// Smallest `r ≤ r_max` (quartering from `r_max`) such that the square of
/// half-side `r` around `rho` holds exactly one zero. The inscribed disc then
/// holds only `ρ`.
pub fn certify_isolation(eval: &Evaluator, rho: Complex64, r_max: f64) -> Result<f64> {
    let mut r = r_max;
    for _ in 0..6 {
        let sq = Rect::square(rho.re, rho.im, r);
        match count_zeros_rectangle_with(eval, sq, DEFAULT_NUDGE * r, 2.0) {
            Ok(c) if c.count == 1 && c.rect == sq => return Ok(r),
            Ok(c) if c.count == 0 && c.rect == sq => return Err(Error::CountNotOne(0)),
            Ok(_) | Err(Error::BoundaryZero { .. }) => {}
            Err(e) => return Err(e),
        }
        r /= 4.0;
    }
    Err(Error::MultipleZero {
        at: format!("{rho}"),
    })
}

/// Refines `guess` (within 0.5 of a zero) by Muller's method.
pub fn refine_zero(
    params: &LerchParams,
    guess: &HpComplex,
    policy: &PrecisionPolicy,
) -> Result<ZeroRecord> {
    let eval = Evaluator::new(params, *policy)?;
    refine_zero_with(&eval, guess.to_c64(), CERT_RADIUS, DEFAULT_MAX_ITER)
}

/// Refinement with an existing evaluator and a cap on the certification square.
pub fn refine_zero_with(
    eval: &Evaluator,
    guess: Complex64,
    cert_radius: f64,
    max_iter: usize,
) -> Result<ZeroRecord> {
    let policy = eval.policy();
    let params = eval.params();
    let start = match newton_f64(eval, guess, 0.1) {
        Some(z) if (z - guess).norm() <= SEARCH_RADIUS => z,
        _ => guess,
    };
    let prec = policy.bits();
    let z = muller_hp(params, &HpComplex::from_c64(prec, start), policy, max_iter)?;
    if (z.to_c64() - guess).norm() > SEARCH_RADIUS {
        return Err(Error::Drift(format!("from {guess} to {}", z.to_c64())));
    }
    let residual = lerch(params, &z, policy)?.abs_f64();
    let radius_bound = certify_isolation(eval, z.to_c64(), cert_radius)?;
    let (beta, gamma) = z.into_parts();
    Ok(ZeroRecord {
        beta,
        gamma,
        residual,
        radius_bound,
        method: ZeroMethod::Muller,
    })
}

/// `ρ = (1/2πi) ∮ s L'(s)/L(s) ds` over the circle `|s - c| = r`, which must
/// enclose exactly one zero. The trapezoidal rule is doubled until two
/// successive values agree to the target error.
pub fn locate_zero_contour(
    params: &LerchParams,
    c: &HpComplex,
    r: f64,
    policy: &PrecisionPolicy,
) -> Result<ZeroRecord> {
    let eval = Evaluator::new(params, *policy)?;
    let n = count_zeros_disc(&eval, c.to_c64(), r)?;
    if n != 1 {
        return Err(Error::CountNotOne(n));
    }
    let prec = policy.bits() + 16;
    let inner = policy.raised(5);
    let c = c.clone().with_prec(prec);
    let radius = Float::with_val(prec, r);
    let two_pi = Float::with_val(prec, rug::float::Constant::Pi) * 2u32;

    // trapezoid nodes θ_k = 2πk/K; sums of s·L'/L·(s-c) and L'/L·(s-c)
    let node = |k: usize, kk: usize| -> Result<(HpComplex, HpComplex)> {
        let theta = Float::with_val(prec, &two_pi * k as u32) / kk as u32;
        let (sin, cos) = theta.sin_cos(Float::new(prec));
        let offset = HpComplex::new(cos, sin).scale(&radius);
        let s = &c + &offset;
        let (v, d) = lerch_with_deriv(params, &s, &inner)?;
        let w = &(&d / &v) * &offset;
        Ok((&s * &w, w))
    };
    let mut k_total = 16usize;
    let mut sum = HpComplex::zero(prec);
    let mut norm = HpComplex::zero(prec);
    for k in 0..k_total {
        let (a, b) = node(k, k_total)?;
        sum = &sum + &a;
        norm = &norm + &b;
    }
    let mut prev = sum.scale_f64(1.0 / k_total as f64);
    let tol = policy.target_error();
    while k_total < 4096 {
        let kk = 2 * k_total;
        for k in (1..kk).step_by(2) {
            let (a, b) = node(k, kk)?;
            sum = &sum + &a;
            norm = &norm + &b;
        }
        k_total = kk;
        let est = sum.scale_f64(1.0 / k_total as f64);
        let count = norm.scale_f64(1.0 / k_total as f64);
        let change = est.dist_f64(&prev);
        prev = est;
        if change < tol * prev.abs_f64().max(1.0) && (count.to_c64() - 1.0).norm() < 1e-6 {
            let rho = prev.with_prec(policy.bits());
            let residual = lerch(params, &rho, policy)?.abs_f64();
            let (beta, gamma) = rho.into_parts();
            return Ok(ZeroRecord {
                beta,
                gamma,
                residual,
                radius_bound: r,
                method: ZeroMethod::Contour,
            });
        }
    }
    Err(Error::Quadrature(format!(
        "trapezoidal rule did not settle with {k_total} nodes"
    )))
}
