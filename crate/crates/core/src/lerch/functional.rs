use rug::float::Constant;
use rug::Float;

use super::eval::lerch;
use super::params::{LerchParams, RationalParam};
use crate::error::{Error, Result};
use crate::precision::{gamma_hp, HpComplex, PrecisionPolicy};

/// Default left end of the range where the growth bound is stated.
pub const DEFAULT_SIGMA0: f64 = -2.0;

/// Values of `G(s)` and `P(s)` in
/// `conj(L(λ,λ,1-conj s)) = G(s) L(λ,λ,s) + P(s)`.
#[derive(Clone, Debug)]
pub struct FunctionalSplit {
    pub g: HpComplex,
    pub p: HpComplex,
}

/// `(2π)^{-s} Γ(s)`, shared by both sides.
fn gamma_factor(s: &HpComplex, policy: &PrecisionPolicy) -> Result<HpComplex> {
    let prec = policy.bits();
    let mut ln_2pi = Float::with_val(prec, Constant::Pi) * 2u32;
    ln_2pi.ln_mut();
    let pow = (-s).real_pow_from_ln(&ln_2pi);
    Ok(&pow * &gamma_hp(s, policy)?)
}

/// `e^{±πis/2} · e^{2πi num/den}`.
fn phase(s: &HpComplex, sign: f64, num: i64, den: u64, prec: u32) -> HpComplex {
    let half_pi = Float::with_val(prec, Constant::Pi) / 2u32;
    let e = s.scale(&half_pi).mul_i().scale_f64(sign).exp();
    &e * &HpComplex::unit_root(prec, num, den)
}

fn rational_or_domain(params: &LerchParams) -> Result<(RationalParam, RationalParam)> {
    params.rationals().ok_or_else(|| {
        Error::Domain("the functional equation is evaluated for rational parameters".into())
    })
}

/// `G(s)` and `P(s)` for `λ = α`.
pub fn functional_split(
    lambda: RationalParam,
    s: &HpComplex,
    policy: &PrecisionPolicy,
) -> Result<FunctionalSplit> {
    let prec = policy.bits();
    let (b, d) = (lambda.num() as i64, lambda.den());
    let gf = gamma_factor(s, policy)?;
    // e^{2πiλ²}
    let g = &gf * &phase(s, -1.0, b * b, d * d, prec);
    // e^{-2πi(1-λ)λ}; for λ = 1 this is 1
    let p_phase = phase(s, 1.0, -((d as i64 - b) * b), d * d, prec);
    let partner = LerchParams::rational(lambda.complement(), lambda.complement());
    let p = &(&gf * &p_phase) * &lerch(&partner, s, policy)?;
    Ok(FunctionalSplit { g, p })
}

/// `|conj(L(λ,λ,1-conj s)) - (G L(λ,λ,s) + P)|`.
pub fn split_residual(
    lambda: RationalParam,
    s: &HpComplex,
    policy: &PrecisionPolicy,
) -> Result<f64> {
    let split = functional_split(lambda, s, policy)?;
    let params = LerchParams::equal(lambda);
    let one = HpComplex::one(policy.bits());
    let reflected = lerch(&params, &(&one - &s.conj()), policy)?.conj();
    let rhs = &(&split.g * &lerch(&params, s, policy)?) + &split.p;
    Ok(reflected.dist_f64(&rhs))
}

/// `L(λ, α, 1-s)` computed from the right-hand side of the functional equation
/// `(2π)^{-s}Γ(s)[e^{πis/2-2πiαλ} L(1-α, λ, s) + e^{-πis/2+2πiα(1-{λ})} L(α, 1-{λ}, s)]`.
pub fn functional_equation_rhs(
    params: &LerchParams,
    s: &HpComplex,
    policy: &PrecisionPolicy,
) -> Result<HpComplex> {
    let (lambda, alpha) = rational_or_domain(params)?;
    let prec = policy.bits();
    let gf = gamma_factor(s, policy)?;
    let den = lambda.den() * alpha.den();
    let al = (alpha.num() * lambda.num()) as i64;
    let one_minus_frac = lambda.complement();
    // α(1-{λ}) over the same denominator
    let a_c = (alpha.num() * one_minus_frac.num() * (lambda.den() / one_minus_frac.den())) as i64;

    let first = LerchParams::rational(
        RationalParam::reduced(alpha.den() - alpha.num(), alpha.den())?,
        lambda,
    );
    let second = LerchParams::rational(alpha, one_minus_frac);
    let t1 = &phase(s, 1.0, -al, den, prec) * &lerch(&first, s, policy)?;
    let t2 = &phase(s, -1.0, a_c, den, prec) * &lerch(&second, s, policy)?;
    Ok(&gf * &(&t1 + &t2))
}

/// Upper bound `μ(σ)` for the order of `L(λ, α, σ+it)` in `t`, valid for
/// `σ ≥ σ₀ = -2`. It does not depend on the parameters.
pub fn growth_bound_mu(sigma: f64) -> Result<f64> {
    growth_bound_mu_from(sigma, DEFAULT_SIGMA0)
}

pub fn growth_bound_mu_from(sigma: f64, sigma0: f64) -> Result<f64> {
    if !(sigma0 < 0.0) {
        return Err(Error::Domain(format!("σ₀ must be negative, got {sigma0}")));
    }
    if !sigma.is_finite() || sigma < sigma0 {
        return Err(Error::Domain(format!(
            "σ = {sigma} lies below σ₀ = {sigma0}"
        )));
    }
    const E: f64 = 64.0 / 205.0;
    Ok(if sigma <= 0.0 {
        0.5 - sigma
    } else if sigma <= 0.5 {
        0.5 + (E - 1.0) * sigma
    } else if sigma <= 1.0 {
        E * (1.0 - sigma)
    } else {
        0.0
    })
}
