//! Randomized identity checks and the counting and averaging checks.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use lerch_core::lerch::{functional_equation_rhs, functional_split, lerch};
use lerch_core::precision::{gamma_hp, hurwitz_zeta};
use lerch_core::symmetry::{counting_check, theorem1_sum};
use lerch_core::zeros::{scan_zeros, ScanConfig};
use lerch_core::{Error, HpComplex, LerchParams, PrecisionPolicy, RationalParam, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Funceq,
    Conjugation,
    SpecialCases,
    Stirling,
    Counting,
    Theorem1,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Funceq,
        Suite::Conjugation,
        Suite::SpecialCases,
        Suite::Stirling,
        Suite::Counting,
        Suite::Theorem1,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Funceq => "funceq",
            Suite::Conjugation => "conjugation",
            Suite::SpecialCases => "special-cases",
            Suite::Stirling => "stirling",
            Suite::Counting => "counting",
            Suite::Theorem1 => "theorem1",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Points per parameter pair, or per identity.
    pub samples: usize,
    pub seed: u64,
    pub digits: u32,
    /// Parameters of the counting and theorem1 suites.
    pub lambda: RationalParam,
    pub alpha: RationalParam,
    pub t_max: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        let half = RationalParam::new(1, 2).expect("1/2");
        Self {
            samples: 100,
            seed: 0,
            digits: 30,
            lambda: half,
            alpha: half,
            t_max: 300.0,
        }
    }
}

/// Parameter pairs drawn per identity suite.
pub const PAIRS: usize = 10;

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} checks={} max_residual={:e} tolerance={:e}",
            self.suite.name(),
            if self.passed { "PASS" } else { "FAIL" },
            self.checks,
            self.max_residual,
            self.tolerance
        )?;
        if !self.detail.is_empty() {
            write!(f, " {}", self.detail)?;
        }
        Ok(())
    }
}

fn random_param(rng: &mut ChaCha8Rng) -> RationalParam {
    loop {
        let den = rng.gen_range(1..=8u64);
        let num = rng.gen_range(1..=den);
        if let Ok(p) = RationalParam::new(num, den) {
            return p;
        }
    }
}

fn random_point(rng: &mut ChaCha8Rng, prec: u32, t_lo: f64, t_hi: f64) -> HpComplex {
    HpComplex::from_f64(prec, rng.gen_range(-1.0..2.0), rng.gen_range(t_lo..t_hi))
}

fn relative(a: &HpComplex, b: &HpComplex) -> f64 {
    a.dist_f64(b) / a.abs_f64().max(1.0)
}

pub fn run(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    let policy = PrecisionPolicy::digits(opts.digits)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let identity_tol = 10f64.powi(10 - opts.digits as i32);
    let report = |checks, max_residual: f64, tolerance, detail: String| SuiteReport {
        suite,
        checks,
        max_residual,
        tolerance,
        passed: max_residual <= tolerance,
        detail,
    };
    match suite {
        Suite::Funceq => {
            let prec = policy.bits();
            let one = HpComplex::one(prec);
            let (mut fe, mut split) = (0f64, 0f64);
            let mut checks = 0;
            for _ in 0..PAIRS {
                let params = LerchParams::rational(random_param(&mut rng), random_param(&mut rng));
                let lambda = params.rationals().expect("rational").0;
                let equal = LerchParams::equal(lambda);
                for _ in 0..opts.samples {
                    let s = random_point(&mut rng, prec, 1.0, 30.0);
                    let lhs = lerch(&params, &(&one - &s), &policy)?;
                    fe = fe.max(relative(
                        &lhs,
                        &functional_equation_rhs(&params, &s, &policy)?,
                    ));
                    let reflected = lerch(&equal, &(&one - &s.conj()), &policy)?.conj();
                    let sp = functional_split(lambda, &s, &policy)?;
                    let rhs = &(&sp.g * &lerch(&equal, &s, &policy)?) + &sp.p;
                    split = split.max(relative(&reflected, &rhs));
                    checks += 2;
                }
            }
            Ok(report(
                checks,
                fe.max(split),
                identity_tol,
                format!("funceq={fe:e} split={split:e}"),
            ))
        }
        Suite::Conjugation => {
            let prec = policy.bits();
            let mut worst = 0f64;
            for _ in 0..PAIRS {
                let (lambda, alpha) = (random_param(&mut rng), random_param(&mut rng));
                let params = LerchParams::rational(lambda, alpha);
                let mirrored = LerchParams::rational(lambda.complement(), alpha);
                for _ in 0..opts.samples {
                    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                    let s = random_point(&mut rng, prec, 0.5, 30.0);
                    let s = HpComplex::new(s.re().clone(), Float::with_val(prec, s.im() * sign));
                    let a = lerch(&params, &s, &policy)?.conj();
                    // the other side at a higher precision, so the two do not share roundings
                    let b = lerch(&mirrored, &s.conj(), &policy.raised(3))?;
                    worst = worst.max(relative(&a, &b));
                }
            }
            Ok(report(
                PAIRS * opts.samples,
                worst,
                identity_tol,
                String::new(),
            ))
        }
        Suite::SpecialCases => {
            let (checks, worst) = special_cases(&mut rng, opts.samples, &policy)?;
            Ok(report(checks, worst, identity_tol, String::new()))
        }
        Suite::Stirling => {
            let prec = policy.bits();
            let one = HpComplex::one(prec);
            let pi = Float::with_val(prec, rug::float::Constant::Pi);
            let (mut reflection, mut asymptotic) = (0f64, 0f64);
            for _ in 0..opts.samples {
                let sigma: f64 = rng.gen_range(-1.0..2.0);
                let t: f64 = rng.gen_range(50.0..500.0);
                let s = HpComplex::from_f64(prec, sigma, t);
                let g = gamma_hp(&s, &policy)?;
                // Γ(s)Γ(1-s) sin(πs) = π
                let sin = sin_pi(&s, &pi);
                let prod = &(&g * &gamma_hp(&(&one - &s), &policy)?) * &sin;
                reflection = reflection.max(relative(&HpComplex::from_real(pi.clone()), &prod));
                // |Γ(σ+it)| ~ √(2π) t^{σ-1/2} e^{-πt/2}, error O(1/t)
                let ln_expected = 0.5 * (2.0 * PI).ln() + (sigma - 0.5) * t.ln() - PI * t / 2.0;
                let ratio = (g.abs().ln().to_f64() - ln_expected).exp();
                asymptotic = asymptotic.max((ratio - 1.0).abs() * t / (1.0 + sigma * sigma));
            }
            let mut r = report(
                opts.samples,
                reflection,
                identity_tol,
                format!("stirling_scaled={asymptotic:e}"),
            );
            r.passed &= asymptotic <= 1.0;
            Ok(r)
        }
        Suite::Counting => {
            let params = LerchParams::rational(opts.lambda, opts.alpha);
            let c = counting_check(&params, opts.t_max, &policy)?;
            let detail = format!(
                "count={} main_term={:.4} deviation={:.4}",
                c.count, c.main_term, c.deviation
            );
            Ok(report(1, c.deviation.abs(), c.window, detail))
        }
        Suite::Theorem1 => {
            let params = LerchParams::rational(opts.lambda, opts.alpha);
            let zeros = scan_zeros(
                &params,
                &ScanConfig::new(0.0, opts.t_max).with_policy(policy),
            )?;
            let s = theorem1_sum(&params, &zeros, opts.t_max)?;
            let detail = format!(
                "sum={:e} main_term={:.6} zeros={}",
                s.computed_sum,
                s.main_term,
                zeros.len()
            );
            Ok(report(1, s.deviation.abs(), s.window, detail))
        }
    }
}

/// `sin(πs)` from exponentials.
fn sin_pi(s: &HpComplex, pi: &Float) -> HpComplex {
    let iz = s.scale(pi).mul_i();
    let a = iz.exp();
    let b = (-&iz).exp();
    // (e^{iz} - e^{-iz}) / 2i
    (&a - &b).scale_f64(0.5).mul_i().scale_f64(-1.0)
}

/// The four collapses to `ζ` and `L(s, χ₄)`, `samples` points each.
fn special_cases(
    rng: &mut ChaCha8Rng,
    samples: usize,
    policy: &PrecisionPolicy,
) -> Result<(usize, f64)> {
    let prec = policy.bits();
    let one = HpComplex::one(prec);
    let f = |v: f64| Float::with_val(prec, v);
    let half = RationalParam::new(1, 2)?;
    let cases = [
        LerchParams::rational(RationalParam::ONE, RationalParam::ONE),
        LerchParams::rational(half, RationalParam::ONE),
        LerchParams::rational(RationalParam::ONE, half),
        LerchParams::rational(half, half),
    ];
    let mut worst = 0f64;
    for (i, params) in cases.iter().enumerate() {
        for _ in 0..samples {
            let s = random_point(rng, prec, 1.0, 30.0);
            let zeta = hurwitz_zeta(&s, &f(1.0), policy)?;
            let expected = match i {
                0 => zeta,
                // (1 - 2^{1-s}) ζ(s)
                1 => &(&one - &(&one - &s).real_pow(&f(2.0))) * &zeta,
                // (2^s - 1) ζ(s)
                2 => &(&s.real_pow(&f(2.0)) - &one) * &zeta,
                // 2^s L(s, χ₄) = 2^s 4^{-s} (ζ(s, 1/4) - ζ(s, 3/4))
                _ => {
                    let chi =
                        &hurwitz_zeta(&s, &f(0.25), policy)? - &hurwitz_zeta(&s, &f(0.75), policy)?;
                    &(-&s).real_pow(&f(2.0)) * &chi
                }
            };
            worst = worst.max(relative(&expected, &lerch(params, &s, policy)?));
        }
    }
    Ok((cases.len() * samples, worst))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(suite: Suite) -> SuiteReport {
        run(
            suite,
            &VerifyOptions {
                samples: 3,
                seed: 11,
                ..VerifyOptions::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn identity_suites_pass() {
        for s in [
            Suite::Funceq,
            Suite::Conjugation,
            Suite::SpecialCases,
            Suite::Stirling,
        ] {
            let r = quick(s);
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn same_seed_same_report() {
        assert_eq!(
            quick(Suite::Conjugation).to_string(),
            quick(Suite::Conjugation).to_string()
        );
        assert_eq!(
            "special-cases".parse::<Suite>().unwrap(),
            Suite::SpecialCases
        );
    }
}
