use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{near_trivial_line, trivial_band};
use crate::error::{Error, Result};
use crate::lerch::{lerch, LerchParams, RationalParam};
use crate::precision::PrecisionPolicy;
use crate::zeros::{
    count_zeros_rectangle, main_term, scan_window, CountResult, ScanConfig, ZeroRecord,
};

/// Deviation windows are `DEFAULT_WINDOW_FACTOR · log T`.
pub const DEFAULT_WINDOW_FACTOR: f64 = 8.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterpart {
    /// `|L(1-λ, 1-λ, ρ)|`.
    pub counterpart_abs: f64,
    /// `counterpart_abs < 10^(-working_digits/2)`.
    pub strict_symmetric: bool,
}

/// `|L(1-λ, 1-λ, ρ)|` for a zero `ρ` of `L(λ, λ, s)`. It vanishes iff `ρ`
/// and `1 - conj(ρ)` are both zeros.
pub fn counterpart_test(
    lambda: RationalParam,
    zero: &ZeroRecord,
    policy: &PrecisionPolicy,
) -> Result<Counterpart> {
    let params = LerchParams::equal(lambda.complement());
    let v = lerch(&params, &zero.rho(), policy)?.abs_f64();
    let threshold = 10f64.powf(-f64::from(policy.working_digits()) / 2.0);
    Ok(Counterpart {
        counterpart_abs: v,
        strict_symmetric: v < threshold,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SumCheck {
    /// `Σ (β - 1/2)` over nontrivial zeros with `0 < γ ≤ T`.
    pub computed_sum: f64,
    /// `(T/4π) log(α/λ)`.
    pub main_term: f64,
    pub deviation: f64,
    /// `DEFAULT_WINDOW_FACTOR · log T`.
    pub window: f64,
}

impl SumCheck {
    pub fn within(&self) -> bool {
        self.deviation.abs() <= self.window
    }
}

/// Sum of `β - 1/2` over `zeros` with `0 < γ ≤ t`, against its main term.
/// Zeros near the trivial line are skipped.
pub fn theorem1_sum(params: &LerchParams, zeros: &[ZeroRecord], t: f64) -> Result<SumCheck> {
    let (lambda, alpha) = params
        .rationals()
        .ok_or_else(|| Error::Domain("rational parameters required".into()))?;
    let computed_sum: f64 = zeros
        .iter()
        .filter(|z| {
            let g = z.gamma_f64();
            g > 0.0 && g <= t && !near_trivial_line(lambda, z.beta_f64(), g)
        })
        .map(|z| z.deviation().to_f64())
        .sum();
    let main = t / (4.0 * PI) * (alpha.to_f64() / lambda.to_f64()).ln();
    Ok(SumCheck {
        computed_sum,
        main_term: main,
        deviation: computed_sum - main,
        window: DEFAULT_WINDOW_FACTOR * t.ln(),
    })
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CountingCheck {
    /// Argument count of the whole strip `[-1, 1+α] × [0, T]`.
    pub total: CountResult,
    /// Zeros of the strip near the trivial line.
    pub trivial: i64,
    /// `total - trivial`.
    pub count: i64,
    pub main_term: f64,
    pub deviation: f64,
    pub window: f64,
}

impl CountingCheck {
    pub fn within(&self) -> bool {
        self.deviation.abs() <= self.window
    }
}

/// Height above which the trivial-line band leaves the strip `[-1, 1+α]`.
fn trivial_band_top(lambda: RationalParam, alpha: f64) -> Option<f64> {
    if lambda.is_one() || 2 * lambda.num() == lambda.den() {
        return None;
    }
    let l = lambda.to_f64();
    let k = PI / ((1.0 - l) / l).ln();
    let reach = trivial_band() * (1.0 + k * k).sqrt();
    Some(if k < 0.0 {
        (2.0 + reach) / -k
    } else {
        (alpha + reach) / k
    })
}

/// Number of nontrivial zeros up to `t` by the argument principle, against
/// `(T/2π) log(T/(2πeαλ))`. Zeros near the trivial line are located by a
/// scan of the low part of the strip and taken off.
pub fn counting_check(
    params: &LerchParams,
    t: f64,
    policy: &PrecisionPolicy,
) -> Result<CountingCheck> {
    let (lambda, alpha) = params
        .rationals()
        .ok_or_else(|| Error::Domain("rational parameters required".into()))?;
    let sigma_hi = 1.0 + alpha.to_f64();
    let total = count_zeros_rectangle(params, -1.0, sigma_hi, 0.0, t, policy)?;
    let trivial = match trivial_band_top(lambda, alpha.to_f64()) {
        Some(top) if total.count > 0 => {
            let cfg = ScanConfig::new(0.0, top.min(t)).with_policy(*policy);
            let low = scan_window(params, &cfg)?;
            if !low.complete {
                return Err(Error::Completeness {
                    found: low.zeros.len(),
                    counted: low.window.count,
                });
            }
            low.zeros
                .iter()
                .filter(|z| near_trivial_line(lambda, z.beta_f64(), z.gamma_f64()))
                .count() as i64
        }
        _ => 0,
    };
    let count = total.count - trivial;
    let mt = main_term(params, t);
    Ok(CountingCheck {
        total,
        trivial,
        count,
        main_term: mt,
        deviation: count as f64 - mt,
        window: DEFAULT_WINDOW_FACTOR * t.ln(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::HpComplex;
    use crate::zeros::refine_zero;

    #[test]
    fn counterpart_of_a_half() {
        let half = RationalParam::new(1, 2).unwrap();
        let p = PrecisionPolicy::digits(30).unwrap();
        // first zero of L(1/2, 1/2, s) = 2^s L(s, χ₄)
        let rho = refine_zero(
            &LerchParams::equal(half),
            &HpComplex::from_f64(p.bits(), 0.5, 6.02),
            &p,
        )
        .unwrap();
        assert!((rho.gamma_f64() - 6.020_948_904_697_597).abs() < 1e-10);
        let c = counterpart_test(half, &rho, &p).unwrap();
        assert!(c.strict_symmetric, "{}", c.counterpart_abs);
    }

    #[test]
    fn sum_main_term() {
        let p = LerchParams::parse("1/3", "2/3").unwrap();
        let s = theorem1_sum(&p, &[], 100.0).unwrap();
        assert!((s.main_term - 100.0 / (4.0 * PI) * 2f64.ln()).abs() < 1e-12);
        assert_eq!(s.computed_sum, 0.0);
        let eq = theorem1_sum(&LerchParams::parse("3/4", "3/4").unwrap(), &[], 300.0).unwrap();
        assert_eq!(eq.main_term, 0.0);
        assert!((eq.window - 8.0 * 300f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn band_top() {
        let l = RationalParam::new(9, 10).unwrap();
        let top = trivial_band_top(l, 0.9).unwrap();
        assert!(top > 1.3 && top < 2.5, "{top}");
        assert!(trivial_band_top(RationalParam::ONE, 1.0).is_none());
    }

    #[test]
    fn zeta_below_first_zero() {
        let p = PrecisionPolicy::digits(30).unwrap();
        let c = counting_check(&LerchParams::equal(RationalParam::ONE), 10.0, &p).unwrap();
        assert_eq!(c.count, 0);
        assert!(c.within());
    }
}
