use rug::float::Constant;
use rug::Float;

use super::{stirling_coefficients, HpComplex, PrecisionPolicy};
use crate::error::{Error, Result};

const MAX_STIRLING_TERMS: usize = 512;

/// Complex gamma function.
///
/// The argument is shifted up by the recurrence until `Re z ≥ 0.7·digits`,
/// where the Stirling series for `ln Γ(z)` is summed until the remainder bound
/// `|B_{2M+2}| / ((2M+2)(2M+1)|z|^{2M+1}) · sec^{2M+2}(arg z / 2)` falls below the
/// target. The result is relative-accurate to `policy.target_error()`.
pub fn gamma_hp(s: &HpComplex, policy: &PrecisionPolicy) -> Result<HpComplex> {
    if s.im().is_zero() && s.re().is_integer() && *s.re() <= 0 {
        return Err(Error::Pole {
            at: s.to_string_digits(6),
        });
    }
    if !s.is_finite() {
        return Err(Error::NonFinite("gamma argument"));
    }
    let out_prec = s.prec().min(policy.bits());
    let digits = policy.working_digits() as f64;
    let re = s.re().to_f64();
    let shift = (0.7 * digits - re).ceil().max(0.0) as u64;

    let z_mag = (re + shift as f64).hypot(s.im().to_f64()).max(1.0);
    let extra =
        ((z_mag * z_mag.ln().max(1.0)).log2() + (shift as f64 + 1.0).log2()).ceil() as u32 + 10;
    let prec = policy.bits() + extra;

    let s_w = s.clone().with_prec(prec);
    let z = s_w.add_f64(shift as f64);
    let ln_gamma = stirling_ln_gamma(&z, policy.target_error() * 0.1)?;
    let mut value = ln_gamma.exp();
    if shift > 0 {
        let mut prod = s_w.clone();
        for k in 1..shift {
            prod = &prod * &s_w.add_f64(k as f64);
        }
        value = &value / &prod;
    }
    value.with_prec(out_prec).checked("gamma")
}

/// `ln Γ(z)` for `Re z > 0` large enough that the series reaches `tol`.
fn stirling_ln_gamma(z: &HpComplex, tol: f64) -> Result<HpComplex> {
    let prec = z.prec();
    let ln_z = z.ln()?;
    let half = HpComplex::from_f64(prec, 0.5, 0.0);
    let mut acc = &(z - &half) * &ln_z;
    acc = &acc - z;
    let mut ln_2pi = Float::with_val(prec, Constant::Pi) * 2u32;
    ln_2pi.ln_mut();
    ln_2pi /= 2u32;
    acc = acc.add_real(&ln_2pi);

    let abs_z = z.abs().to_f64();
    let theta = z.im().to_f64().atan2(z.re().to_f64());
    let sec_half = 1.0 / (theta / 2.0).cos();
    let coeffs = stirling_coefficients(prec, 64)?;
    let mut coeffs = coeffs;
    let inv = z.recip();
    let inv2 = &inv * &inv;
    let mut pow = inv.clone();
    let mut k = 1usize;
    loop {
        if k >= coeffs.len() {
            if k >= MAX_STIRLING_TERMS {
                return Err(Error::Precision(format!(
                    "Stirling series needs more than {MAX_STIRLING_TERMS} terms"
                )));
            }
            coeffs = stirling_coefficients(prec, 2 * k)?;
        }
        acc = &acc + &pow.scale(&coeffs[k]);
        // remainder after k terms is bounded by the (k+1)-th coefficient
        if k + 1 < coeffs.len() {
            let next = coeffs[k + 1].to_f64().abs();
            let bound = next * sec_half.powi(2 * k as i32 + 2) / abs_z.powi(2 * k as i32 + 1);
            if bound < tol {
                break;
            }
        }
        pow = &pow * &inv2;
        k += 1;
    }
    Ok(acc)
}
