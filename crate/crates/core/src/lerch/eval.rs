use rug::float::Constant;
use rug::{Float, Rational};

use super::params::{lcm, LerchParams, Param, RationalParam};
use crate::error::{Error, Result};
use crate::precision::{em_sum, hurwitz_zeta, EmConfig, HpComplex, PrecisionPolicy};

/// Default distance from `σ = 1` below which the direct series is refused.
pub const SERIES_MARGIN: f64 = 0.1;

/// Real-part floor for evaluating parameters that are not both rational.
pub const IRRATIONAL_SIGMA_MIN: f64 = 1.1;

/// The common-denominator form `λ = B₁/d`, `α = B₂/d`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Decomposition {
    pub d: u64,
    pub lambda_num: u64,
    pub alpha_num: u64,
}

impl Decomposition {
    pub fn new(lambda: RationalParam, alpha: RationalParam) -> Self {
        let d = lcm(lambda.den(), alpha.den());
        Self {
            d,
            lambda_num: lambda.num() * (d / lambda.den()),
            alpha_num: alpha.num() * (d / alpha.den()),
        }
    }

    pub fn integer_lambda(&self) -> bool {
        self.lambda_num.is_multiple_of(self.d)
    }

    /// Hurwitz shift `(k + α)/d = (k·d + B₂)/d²`.
    pub fn shift(&self, k: u64) -> Rational {
        Rational::from((k * self.d + self.alpha_num, self.d * self.d))
    }
}

fn is_one(s: &HpComplex) -> bool {
    s.im().is_zero() && *s.re() == 1
}

/// `φ(z) = (e^z - 1)/z` and, if asked, `φ'(z)`, both entire.
fn phi(z: &HpComplex, deriv: bool) -> (HpComplex, Option<HpComplex>) {
    let prec = z.prec();
    if z.abs_f64() < 0.5 {
        // φ = Σ z^n/(n+1)!,  φ' = Σ n z^{n-1}/(n+1)!
        let eps = 2f64.powi(-(prec as i32) - 4);
        let mut val = HpComplex::one(prec);
        let mut der = HpComplex::zero(prec);
        let mut zpow_prev = HpComplex::one(prec); // z^{n-1}
        let mut fact = Float::with_val(prec, 1u32); // (n+1)!
        for n in 1u32..400 {
            fact *= n + 1;
            let zn = &zpow_prev * z;
            let term = zn.scale(&Float::with_val(prec, fact.recip_ref()));
            if deriv {
                let dt = zpow_prev.scale(&Float::with_val(prec, Float::with_val(prec, n) / &fact));
                der = &der + &dt;
            }
            val = &val + &term;
            if term.abs_f64() < eps && n > 2 {
                break;
            }
            zpow_prev = zn;
        }
        (val, deriv.then_some(der))
    } else {
        let ez = z.exp();
        let inv = z.recip();
        let val = &ez.add_f64(-1.0) * &inv;
        let der = deriv.then(|| {
            // (e^z (z-1) + 1)/z^2
            let num = (&ez * &z.add_f64(-1.0)).add_f64(1.0);
            &num * &(&inv * &inv)
        });
        (val, der)
    }
}

/// Value and optional `s`-derivative of `L` through the Hurwitz decomposition
/// `L = d^{-s} Σ_{k<d} e(B₁k/d) ζ(s, (k+α)/d)`.
fn rational_eval(
    lambda: RationalParam,
    alpha: RationalParam,
    s: &HpComplex,
    policy: &PrecisionPolicy,
    deriv: bool,
) -> Result<(HpComplex, Option<HpComplex>)> {
    if !s.is_finite() {
        return Err(Error::NonFinite("Lerch argument"));
    }
    let dec = Decomposition::new(lambda, alpha);
    let integer_lambda = dec.integer_lambda();
    if integer_lambda && is_one(s) {
        return Err(Error::Pole { at: "1".into() });
    }
    let d = dec.d;
    let d_f = d as f64;
    let sigma = s.re().to_f64();
    let scale_mag = (-sigma * d_f.ln()).exp();
    let tol = policy.target_error() * 0.25 / (d_f * scale_mag);
    let cfg = EmConfig::for_point(s, policy, tol)?;
    let mut prec = policy.bits() + cfg.cancellation_bits(sigma) + (d_f.log2().ceil() as u32) + 4;
    if integer_lambda {
        // the pole term dominates near s = 1; keep the other terms resolvable
        let dist = s.add_f64(-1.0).abs_f64();
        if dist < 1.0 {
            prec += (-dist.log2()).ceil() as u32;
        }
    }
    let s_w = s.clone().with_prec(prec);
    let one_minus_s = &HpComplex::one(prec) - &s_w;

    let mut sum = HpComplex::zero(prec);
    let mut sum_d = HpComplex::zero(prec);
    let mut pole = HpComplex::zero(prec);
    let mut pole_d = HpComplex::zero(prec);
    let mut err = 0.0;
    for k in 0..d {
        let a_k = Float::with_val(prec, dec.shift(k));
        let c_k = HpComplex::unit_root(prec, (dec.lambda_num * k % d) as i64, d);
        let parts = em_sum(&s_w, &a_k, cfg, deriv)?;
        err += parts.err;
        sum = &sum + &(&c_k * &parts.head);
        if let Some(hd) = &parts.head_deriv {
            sum_d = &sum_d + &(&c_k * hd);
        }
        if integer_lambda {
            pole = &pole + &parts.x_pow;
            if deriv {
                // derivative of x^{1-s}: -ln x · x^{1-s}; the 1/(s-1) factor is applied below
                pole_d = &pole_d - &parts.x_pow.scale(&parts.ln_x);
            }
        } else {
            let z = one_minus_s.scale(&parts.ln_x);
            let (ph, ph_d) = phi(&z, deriv);
            pole = &pole - &(&c_k * &ph).scale(&parts.ln_x);
            if let Some(pd) = ph_d {
                let ln2 = Float::with_val(prec, parts.ln_x.square_ref());
                pole_d = &pole_d + &(&c_k * &pd).scale(&ln2);
            }
        }
    }
    if integer_lambda {
        let inv = s_w.add_f64(-1.0).recip();
        if deriv {
            // d/ds [P/(s-1)] = P'/(s-1) - P/(s-1)^2
            pole_d = &(&pole_d * &inv) - &(&pole * &(&inv * &inv));
        }
        pole = &pole * &inv;
    }

    let ln_d = Float::with_val(prec, d).ln();
    let scale = (-&s_w).real_pow_from_ln(&ln_d);
    let value = &scale * &(&sum + &pole);
    let derivative = deriv.then(|| {
        let inner = &scale * &(&sum_d + &pole_d);
        &inner - &value.scale(&ln_d)
    });

    let err = err * scale_mag;
    if err > policy.target_error() * value.abs_f64().max(1.0) {
        return Err(Error::Precision(format!(
            "Lerch remainder bound {err:e} above target"
        )));
    }
    let out = policy.bits();
    let value = value.with_prec(out).checked("Lerch value")?;
    let derivative = match derivative {
        Some(dv) => Some(dv.with_prec(out).checked("Lerch derivative")?),
        None => None,
    };
    Ok((value, derivative))
}

fn require_rational(params: &LerchParams) -> Result<(RationalParam, RationalParam)> {
    params
        .rationals()
        .ok_or_else(|| Error::Domain("the Hurwitz decomposition needs rational λ and α".into()))
}

/// Whole-plane value of `L(λ, α, s)` for rational parameters, via `d` Hurwitz
/// zeta evaluations over the common denominator `d`.
pub fn lerch_rational(
    params: &LerchParams,
    s: &HpComplex,
    policy: &PrecisionPolicy,
) -> Result<HpComplex> {
    let (l, a) = require_rational(params)?;
    Ok(rational_eval(l, a, s, policy, false)?.0)
}

/// `∂L/∂s` for rational parameters.
pub fn lerch_deriv(
    params: &LerchParams,
    s: &HpComplex,
    policy: &PrecisionPolicy,
) -> Result<HpComplex> {
    let (l, a) = require_rational(params)?;
    Ok(rational_eval(l, a, s, policy, true)?
        .1
        .expect("derivative requested"))
}

/// Value and derivative in one pass.
pub fn lerch_with_deriv(
    params: &LerchParams,
    s: &HpComplex,
    policy: &PrecisionPolicy,
) -> Result<(HpComplex, HpComplex)> {
    let (l, a) = require_rational(params)?;
    let (v, d) = rational_eval(l, a, s, policy, true)?;
    Ok((v, d.expect("derivative requested")))
}

/// Authoritative entry point: rational parameters anywhere but the pole,
/// other parameters for `σ > 1.1` only.
pub fn lerch(params: &LerchParams, s: &HpComplex, policy: &PrecisionPolicy) -> Result<HpComplex> {
    match params.rationals() {
        Some((l, a)) => Ok(rational_eval(l, a, s, policy, false)?.0),
        None => {
            let sigma = s.re().to_f64();
            if sigma <= IRRATIONAL_SIGMA_MIN {
                return Err(Error::Domain(format!(
                    "irrational parameters are evaluated for σ > {IRRATIONAL_SIGMA_MIN} only (σ = {sigma})"
                )));
            }
            lerch_series(params, s, policy)
        }
    }
}

/// The defining series `Σ_{m≥0} e^{2πiλm} (m+α)^{-s}` for `σ > 1 + 0.1`.
///
/// The first `N` terms are summed directly. For `λ ∉ ℤ` the tail
/// `Σ_{m≥N} z^m f(m)`, `z = e^{2πiλ}`, is summed by repeated summation by parts,
/// `Σ_{j<K} z^{N+j} Δ^j f(N) / (1-z)^{j+1}`, with remainder at most
/// `|1-z|^{-K} |(s)_K| [(N+α)^{-σ-K} + (N+α)^{1-σ-K}/(σ+K-1)]`.
/// For `λ = 1` the series is `ζ(s, α)`.
pub fn lerch_series(
    params: &LerchParams,
    s: &HpComplex,
    policy: &PrecisionPolicy,
) -> Result<HpComplex> {
    lerch_series_with_margin(params, s, policy, SERIES_MARGIN)
}

pub fn lerch_series_with_margin(
    params: &LerchParams,
    s: &HpComplex,
    policy: &PrecisionPolicy,
    margin: f64,
) -> Result<HpComplex> {
    let sigma = s.re().to_f64();
    if sigma <= 1.0 + margin {
        return Err(Error::Domain(format!(
            "series needs σ > {}, got {sigma}",
            1.0 + margin
        )));
    }
    if params.has_pole() {
        let alpha = params.alpha().to_float(policy.bits() + 16);
        return hurwitz_zeta(s, &alpha, policy);
    }
    let tol = policy.target_error() * 0.25;
    let target_bits = (-tol.log2()).ceil() as usize;
    let k_max = target_bits + 16;
    let prec = policy.bits() + k_max as u32 + 24;

    // z^m, exactly reduced when λ is rational
    let lambda = params.lambda().clone();
    let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;
    let lambda_f = lambda.to_float(prec);
    let phase = |m: u64| -> HpComplex {
        match &lambda {
            Param::Rational(r) => HpComplex::unit_root(
                prec,
                ((r.num() as u128 * m as u128) % r.den() as u128) as i64,
                r.den(),
            ),
            Param::Real(_) => {
                let frac = Float::with_val(prec, &lambda_f * m).fract();
                let (sin, cos) = Float::with_val(prec, &two_pi * &frac).sin_cos(Float::new(prec));
                HpComplex::new(cos, sin)
            }
        }
    };
    let z = phase(1);
    let one_minus_z = &HpComplex::one(prec) - &z;
    let gap = one_minus_z.abs_f64();
    if gap < 1e-12 {
        return Err(Error::Precision(
            "λ too close to an integer for the accelerated tail".into(),
        ));
    }
    let s_abs = s.abs_f64();
    let n = ((2.0 * (s_abs + k_max as f64) / gap).ceil() as u64).max(16);

    let s_w = s.clone().with_prec(prec);
    let neg_s = -&s_w;
    let alpha = params.alpha().to_float(prec);
    let term = |m: u64| -> HpComplex {
        let x = Float::with_val(prec, &alpha + m);
        neg_s.real_pow(&x)
    };

    let mut direct = HpComplex::zero(prec);
    for m in 0..n {
        direct = &direct + &(&phase(m) * &term(m));
    }

    // forward-difference table of f(N + j)
    let mut row: Vec<HpComplex> = (0..=k_max as u64).map(|j| term(n + j)).collect();
    let inv_gap = one_minus_z.recip();
    let mut weight = inv_gap.clone(); // z^j / (1-z)^{j+1}
    let ratio = &z * &inv_gap;
    let mut tail = HpComplex::zero(prec);
    let x_n = alpha.to_f64() + n as f64;
    let mut log_rising = 0.0f64; // log10 |(s)_K|
    let mut converged = false;
    for j in 0..=k_max {
        let order = sigma + j as f64 - 1.0;
        if order > 0.0 {
            let log_rem = -(j as f64) * gap.log10()
                + log_rising
                + ((-sigma - j as f64) * x_n.log10())
                    .max((1.0 - sigma - j as f64) * x_n.log10() - order.log10())
                + 2f64.log10();
            if log_rem < tol.log10() {
                converged = true;
                break;
            }
        }
        tail = &tail + &(&weight * &row[0]);
        weight = &weight * &ratio;
        for i in 0..row.len() - 1 {
            row[i] = &row[i + 1] - &row[i];
        }
        row.pop();
        log_rising += s_w.add_f64(j as f64).abs_f64().log10();
    }
    if !converged {
        return Err(Error::Precision(format!(
            "series tail did not reach {tol:e} within {k_max} differences"
        )));
    }
    let value = &direct + &(&phase(n) * &tail);
    value.with_prec(policy.bits()).checked("Lerch series")
}
