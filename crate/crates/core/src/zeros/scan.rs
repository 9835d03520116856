use std::f64::consts::TAU;

use num_complex::Complex64;

use super::argument::segment;
use super::count::{base_density, count_zeros_rectangle_with, winding, CountResult, DEFAULT_NUDGE};
use super::evaluator::Evaluator;
use super::refine::{newton_f64, refine_zero_with, DEFAULT_MAX_ITER};
use super::{Rect, ZeroRecord};
use crate::error::{Error, Result};
use crate::lerch::LerchParams;
use crate::precision::PrecisionPolicy;

/// Parameters of a zero scan over `[σ_lo, σ_hi] × (t_min, t_max]`.
#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub t_min: f64,
    pub t_max: f64,
    pub sigma_lo: f64,
    /// `None` means `1 + α`.
    pub sigma_hi: Option<f64>,
    /// Contour samples per unit length; `None` means four per expected zero
    /// spacing `2π / log(t/(2παλ))` at each height.
    pub step_density: Option<f64>,
    pub policy: PrecisionPolicy,
    pub online_tol: f64,
    pub nudge: f64,
    /// Rescans at doubled density before giving up.
    pub max_doublings: u32,
}

impl ScanConfig {
    pub fn new(t_min: f64, t_max: f64) -> Self {
        Self {
            t_min,
            t_max,
            sigma_lo: -1.0,
            sigma_hi: None,
            step_density: None,
            policy: PrecisionPolicy::default(),
            online_tol: 1e-9,
            nudge: DEFAULT_NUDGE,
            max_doublings: 3,
        }
    }

    pub fn with_policy(mut self, policy: PrecisionPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn sigma_hi_for(&self, params: &LerchParams) -> f64 {
        self.sigma_hi.unwrap_or(1.0 + params.alpha().to_f64())
    }

    pub fn validate(&self, params: &LerchParams) -> Result<()> {
        if !(self.t_min < self.t_max) || !self.t_min.is_finite() || !self.t_max.is_finite() {
            return Err(Error::Domain(format!(
                "empty height range ({}, {}]",
                self.t_min, self.t_max
            )));
        }
        if !(self.sigma_lo < self.sigma_hi_for(params)) {
            return Err(Error::Domain("σ_lo must be below σ_hi".into()));
        }
        if let Some(d) = self.step_density {
            if !(d > 0.0) {
                return Err(Error::Domain(format!("step density {d} must be positive")));
            }
        }
        Ok(())
    }

    fn density(&self, params: &LerchParams, t: f64, factor: f64) -> f64 {
        self.step_density.unwrap_or_else(|| base_density(params, t)) * factor
    }
}

/// A scan's zeros together with the independent count of its window.
#[derive(Clone, Debug)]
pub struct ScanOutcome {
    /// Sorted by `γ`.
    pub zeros: Vec<ZeroRecord>,
    pub window: CountResult,
    /// True iff every counted zero was found and refined.
    pub complete: bool,
    pub doublings: u32,
}

/// All zeros in the window, or [`Error::Completeness`] if the refined list
/// never matches the argument-principle count.
pub fn scan_zeros(params: &LerchParams, config: &ScanConfig) -> Result<Vec<ZeroRecord>> {
    let out = scan_window(params, config)?;
    if !out.complete {
        return Err(Error::Completeness {
            found: out.zeros.len(),
            counted: out.window.count,
        });
    }
    Ok(out.zeros)
}

/// Like [`scan_zeros`] but returns whatever was found when the scan stays
/// incomplete after all rescans.
pub fn scan_window(params: &LerchParams, config: &ScanConfig) -> Result<ScanOutcome> {
    config.validate(params)?;
    if params.rationals().is_none() {
        return Err(Error::Domain("scans need rational parameters".into()));
    }
    let eval = Evaluator::new(params, config.policy)?;
    let rect = Rect::new(
        config.sigma_lo,
        config.sigma_hi_for(params),
        config.t_min,
        config.t_max,
    );
    let window = count_zeros_rectangle_with(&eval, rect, config.nudge, 1.5)?;
    let mut best: Vec<ZeroRecord> = Vec::new();
    let mut last_err = None;
    for doubling in 0..=config.max_doublings {
        let factor = f64::from(1u32 << doubling);
        match scan_once(&eval, config, &window.rect, factor) {
            Ok(zeros) if zeros.len() as i64 == window.count => {
                return Ok(ScanOutcome {
                    zeros,
                    window,
                    complete: true,
                    doublings: doubling,
                });
            }
            Ok(zeros) => {
                if zeros.len() > best.len() {
                    best = zeros;
                }
            }
            Err(
                e @ (Error::Drift(_)
                | Error::MultipleZero { .. }
                | Error::NonConvergence(_)
                | Error::BoundaryZero { .. }
                | Error::CountNotOne(_)),
            ) => {
                last_err = Some(e);
            }
            Err(e) => return Err(e),
        }
    }
    if best.is_empty() {
        if let Some(e) = last_err {
            if window.count > 0 {
                return Err(e);
            }
        }
    }
    Ok(ScanOutcome {
        zeros: best,
        window,
        complete: false,
        doublings: config.max_doublings,
    })
}

/// Expected gap between consecutive zero heights near `t`, capped at 2.
fn cut_spacing(config: &ScanConfig, params: &LerchParams, t: f64) -> f64 {
    4.0 / config.density(params, t, 1.0)
}

fn scan_once(
    eval: &Evaluator,
    config: &ScanConfig,
    rect: &Rect,
    factor: f64,
) -> Result<Vec<ZeroRecord>> {
    let params = eval.params();
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let (lo, hi) = (rect.sigma_lo, rect.sigma_hi);

    // horizontal cuts, each moved up slightly if it passes through a zero
    let mut cuts: Vec<(f64, f64)> = Vec::new();
    let horizontal = |t: f64| segment(eval, c(lo, t), c(hi, t), config.density(params, t, factor));
    cuts.push((rect.t_lo, horizontal(rect.t_lo)?));
    let mut t = rect.t_lo;
    loop {
        let h = cut_spacing(config, params, t) / factor;
        let mut next = t + h;
        if next >= rect.t_hi - 0.25 * h {
            cuts.push((rect.t_hi, horizontal(rect.t_hi)?));
            break;
        }
        let mut arg = None;
        for attempt in 0..5 {
            match horizontal(next) {
                Ok(a) => {
                    arg = Some(a);
                    break;
                }
                Err(Error::BoundaryZero { .. }) => next += 0.07 * h * f64::from(attempt + 1),
                Err(e) => return Err(e),
            }
        }
        let arg = arg.ok_or_else(|| Error::BoundaryZero {
            at: format!("cut near t = {next}"),
        })?;
        cuts.push((next, arg));
        t = next;
    }

    let mut approx: Vec<(Complex64, Rect)> = Vec::new();
    for pair in cuts.windows(2) {
        let ((t0, h0), (t1, h1)) = (pair[0], pair[1]);
        let d = config.density(params, t1, factor);
        let right = segment(eval, c(hi, t0), c(hi, t1), d)?;
        let left = segment(eval, c(lo, t1), c(lo, t0), d)?;
        let mut w = (h0 + right - h1 + left) / TAU;
        let bx = Rect::new(lo, hi, t0, t1);
        if params.has_pole() && bx.contains(1.0, 0.0) {
            w += 1.0;
        }
        let n = w.round();
        if (w - n).abs() > 0.25 || n < 0.0 {
            return Err(Error::NonConvergence(format!(
                "winding {w} around strip {bx}"
            )));
        }
        for z in locate(eval, bx, n as i64, factor, 0)? {
            approx.push((z, bx));
        }
    }

    // multiprecision refinement; the certification square stays well inside
    // the gap to the nearest neighbour
    approx.sort_by(|a, b| a.0.im.total_cmp(&b.0.im));
    let mut zeros = Vec::with_capacity(approx.len());
    for (i, &(z, bx)) in approx.iter().enumerate() {
        let gap = approx
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, (w, _))| (w - z).norm())
            .fold(f64::INFINITY, f64::min);
        let cert = (0.3 * gap).min(0.05);
        let rec = refine_zero_with(eval, z, cert, DEFAULT_MAX_ITER)?;
        let (re, im) = (rec.beta_f64(), rec.gamma_f64());
        if (Complex64::new(re, im) - z).norm() > 1e-6 || !grown(&bx, 1e-9).contains(re, im) {
            return Err(Error::Drift(format!("{z} refined to {re}+{im}i")));
        }
        zeros.push(rec);
    }
    zeros.sort_by(|a, b| a.gamma.total_cmp(&b.gamma));
    for w in zeros.windows(2) {
        if w[0].rho().dist_f64(&w[1].rho()) < 1e-12 {
            return Err(Error::Completeness {
                found: zeros.len(),
                counted: -1,
            });
        }
    }
    Ok(zeros)
}

fn grown(r: &Rect, by: f64) -> Rect {
    Rect::new(r.sigma_lo - by, r.sigma_hi + by, r.t_lo - by, r.t_hi + by)
}

/// Double-precision approximations to the `n` zeros inside `bx`, by
/// bisection down to boxes where Newton's method stays inside.
fn locate(eval: &Evaluator, bx: Rect, n: i64, factor: f64, depth: u32) -> Result<Vec<Complex64>> {
    if n <= 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        let center = Complex64::new(0.5 * (bx.sigma_lo + bx.sigma_hi), 0.5 * (bx.t_lo + bx.t_hi));
        let max_step = 0.25 * bx.width().max(bx.height());
        if let Some(z) = newton_f64(eval, center, max_step) {
            if bx.contains(z.re, z.im) {
                return Ok(vec![z]);
            }
        }
    }
    if depth > 60 || bx.width().max(bx.height()) < 1e-10 {
        return Err(Error::MultipleZero {
            at: format!("{bx}"),
        });
    }
    let split_sigma = bx.width() >= bx.height();
    for frac in [0.5, 0.43, 0.57, 0.36, 0.64] {
        let (a, b) = if split_sigma {
            let m = bx.sigma_lo + frac * bx.width();
            (
                Rect::new(bx.sigma_lo, m, bx.t_lo, bx.t_hi),
                Rect::new(m, bx.sigma_hi, bx.t_lo, bx.t_hi),
            )
        } else {
            let m = bx.t_lo + frac * bx.height();
            (
                Rect::new(bx.sigma_lo, bx.sigma_hi, bx.t_lo, m),
                Rect::new(bx.sigma_lo, bx.sigma_hi, m, bx.t_hi),
            )
        };
        let w = match winding(eval, &a, factor * 2.0) {
            Ok(w) => w,
            Err(Error::BoundaryZero { .. }) => continue,
            Err(e) => return Err(e),
        };
        let mut wa = w;
        if eval.params().has_pole() && a.contains(1.0, 0.0) {
            wa += 1.0;
        }
        let na = wa.round();
        if (wa - na).abs() > 0.25 || na < 0.0 || na as i64 > n {
            return Err(Error::NonConvergence(format!(
                "winding {wa} around {a} inside a box of {n}"
            )));
        }
        let na = na as i64;
        let mut out = locate(eval, a, na, factor, depth + 1)?;
        out.extend(locate(eval, b, n - na, factor, depth + 1)?);
        return Ok(out);
    }
    Err(Error::BoundaryZero {
        at: format!("every split of {bx}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lerch::RationalParam;

    #[test]
    fn zeta_first_zeros() {
        let zeta = LerchParams::equal(RationalParam::ONE);
        let mut cfg = ScanConfig::new(0.0, 40.0);
        cfg.sigma_lo = -0.5;
        let zs = scan_zeros(&zeta, &cfg).unwrap();
        let g: Vec<f64> = zs.iter().map(|z| z.gamma_f64()).collect();
        let expect = [
            14.134725141734694,
            21.022039638771555,
            25.01085758014569,
            30.424876125859513,
            32.93506158773919,
            37.58617815882567,
        ];
        assert_eq!(g.len(), expect.len(), "{g:?}");
        for (a, b) in g.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(zs.iter().all(|z| z.deviation().to_f64().abs() < 1e-20));
    }

    #[test]
    fn config_validation() {
        let zeta = LerchParams::equal(RationalParam::ONE);
        assert!(ScanConfig::new(5.0, 5.0).validate(&zeta).is_err());
        let mut c = ScanConfig::new(0.0, 1.0);
        c.step_density = Some(0.0);
        assert!(c.validate(&zeta).is_err());
        assert_eq!(ScanConfig::new(0.0, 1.0).sigma_hi_for(&zeta), 2.0);
    }
}
