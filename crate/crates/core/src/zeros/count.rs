use std::f64::consts::TAU;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::argument::{circle, segment};
use super::evaluator::Evaluator;
use super::Rect;
use crate::error::{Error, Result};
use crate::lerch::LerchParams;
use crate::precision::PrecisionPolicy;

/// Nudge applied to an edge that passes through a zero.
pub const DEFAULT_NUDGE: f64 = 1e-3;

const MAX_NUDGES: usize = 6;

/// Winding values further than this from an integer are rejected.
const ROUNDING_SLACK: f64 = 0.25;

/// Outcome of an argument-principle count.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CountResult {
    pub count: i64,
    /// `(T/2π) log(T/(2πeαλ))` with `T = t_hi`.
    pub main_term: f64,
    pub deviation: f64,
    /// Winding number before rounding, pole-corrected.
    pub winding: f64,
    /// The rectangle actually used, after any nudges.
    pub rect: Rect,
}

/// Main term `(T/2π) log(T/(2πeαλ))` of the zero counting function.
pub fn main_term(params: &LerchParams, t: f64) -> f64 {
    let al = params.alpha().to_f64() * params.lambda().to_f64();
    t / TAU * (t / (TAU * std::f64::consts::E * al)).ln()
}

/// Initial sampling density (pieces per unit length) on a contour at height `t`.
pub(crate) fn base_density(params: &LerchParams, t: f64) -> f64 {
    let al = params.alpha().to_f64() * params.lambda().to_f64();
    let spacing = TAU / (t.abs() / (TAU * al)).ln().max(1.0);
    4.0 / spacing.min(2.0)
}

/// Winding number of `L` around `rect` (no pole correction).
pub(crate) fn winding(eval: &Evaluator, rect: &Rect, density_factor: f64) -> Result<f64> {
    let params = eval.params();
    let dens = |t: f64| base_density(params, t) * density_factor;
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let d_top = dens(rect.t_hi);
    let bottom = segment(
        eval,
        c(rect.sigma_lo, rect.t_lo),
        c(rect.sigma_hi, rect.t_lo),
        dens(rect.t_lo),
    )?;
    let right = segment(
        eval,
        c(rect.sigma_hi, rect.t_lo),
        c(rect.sigma_hi, rect.t_hi),
        d_top,
    )?;
    let top = segment(
        eval,
        c(rect.sigma_hi, rect.t_hi),
        c(rect.sigma_lo, rect.t_hi),
        d_top,
    )?;
    let left = segment(
        eval,
        c(rect.sigma_lo, rect.t_hi),
        c(rect.sigma_lo, rect.t_lo),
        d_top,
    )?;
    Ok((bottom + right + top + left) / TAU)
}

fn pole_inside(params: &LerchParams, rect: &Rect) -> Result<bool> {
    if !params.has_pole() {
        return Ok(false);
    }
    let on_vertical =
        (rect.sigma_lo == 1.0 || rect.sigma_hi == 1.0) && rect.t_lo <= 0.0 && rect.t_hi >= 0.0;
    let on_horizontal =
        (rect.t_lo == 0.0 || rect.t_hi == 0.0) && rect.sigma_lo <= 1.0 && rect.sigma_hi >= 1.0;
    if on_vertical || on_horizontal {
        return Err(Error::Pole {
            at: "1 (on the contour)".into(),
        });
    }
    Ok(rect.contains(1.0, 0.0))
}

/// Which edge of `rect` a boundary failure at `at` belongs to, and the rectangle
/// with that edge moved by `nudge` (t edges upward, σ edges outward).
fn nudged(rect: &Rect, at: &str, nudge: f64) -> Rect {
    let p = parse_c64(at);
    let mut r = *rect;
    let Some(p) = p else {
        r.t_lo += nudge;
        r.t_hi += nudge;
        return r;
    };
    let d = [
        (p.im - rect.t_lo).abs(),
        (p.im - rect.t_hi).abs(),
        (p.re - rect.sigma_lo).abs(),
        (p.re - rect.sigma_hi).abs(),
    ];
    let edge = (0..4).min_by(|&a, &b| d[a].total_cmp(&d[b])).unwrap_or(0);
    match edge {
        0 => r.t_lo += nudge,
        1 => r.t_hi += nudge,
        2 => r.sigma_lo -= nudge,
        _ => r.sigma_hi += nudge,
    }
    r
}

fn parse_c64(text: &str) -> Option<Complex64> {
    text.parse::<Complex64>().ok()
}

/// Counts zeros of `L` inside `rect` with an existing evaluator.
///
/// Edges passing through a zero are moved by `nudge`, up to six times; the
/// rectangle actually used is reported. For `λ = 1` the pole at `s = 1`
/// contributes `-1` to the winding and is added back.
pub fn count_zeros_rectangle_with(
    eval: &Evaluator,
    rect: Rect,
    nudge: f64,
    density_factor: f64,
) -> Result<CountResult> {
    if !rect.is_valid() {
        return Err(Error::Domain(format!("degenerate rectangle {rect}")));
    }
    let params = eval.params();
    let mut r = rect;
    if params.has_pole() && r.t_lo == 0.0 && r.sigma_lo <= 1.0 && r.sigma_hi >= 1.0 {
        // the pole sits on the bottom edge
        r.t_lo = nudge;
    }
    let mut attempts = 0;
    let w = loop {
        let pole = pole_inside(params, &r)?;
        match winding(eval, &r, density_factor) {
            Ok(w) => break w + if pole { 1.0 } else { 0.0 },
            Err(Error::BoundaryZero { at }) if attempts < MAX_NUDGES => {
                r = nudged(&r, &at, nudge);
                attempts += 1;
            }
            Err(e) => return Err(e),
        }
    };
    let count = w.round();
    if (w - count).abs() > ROUNDING_SLACK || count < 0.0 {
        return Err(Error::NonConvergence(format!(
            "winding {w} around {r} is not a non-negative integer"
        )));
    }
    let mt = main_term(params, rect.t_hi);
    Ok(CountResult {
        count: count as i64,
        main_term: mt,
        deviation: count - mt,
        winding: w,
        rect: r,
    })
}

/// Number of zeros of `L(λ, α, ·)` in `[σ_lo, σ_hi] × [t_lo, t_hi]`.
pub fn count_zeros_rectangle(
    params: &LerchParams,
    sigma_lo: f64,
    sigma_hi: f64,
    t_lo: f64,
    t_hi: f64,
    policy: &PrecisionPolicy,
) -> Result<CountResult> {
    let eval = Evaluator::new(params, *policy)?;
    count_zeros_rectangle_with(
        &eval,
        Rect::new(sigma_lo, sigma_hi, t_lo, t_hi),
        DEFAULT_NUDGE,
        1.0,
    )
}

/// Zeros inside the open disc `|s - c| < r`, by winding along the circle.
pub fn count_zeros_disc(eval: &Evaluator, c: Complex64, r: f64) -> Result<i64> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("disc radius {r}")));
    }
    let mut w = circle(eval, c, r, 16)? / TAU;
    if eval.params().has_pole() && (c - Complex64::new(1.0, 0.0)).norm() < r {
        w += 1.0;
    }
    let count = w.round();
    if (w - count).abs() > ROUNDING_SLACK || count < 0.0 {
        return Err(Error::NonConvergence(format!(
            "winding {w} around |s - {c}| = {r}"
        )));
    }
    Ok(count as i64)
}

/// `(1/2πi) ∮ L'/L ds` over `rect` by adaptive composite Gauss–Legendre
/// quadrature in double precision; a cross-check for the argument count.
pub fn count_zeros_quadrature(
    params: &LerchParams,
    rect: Rect,
    policy: &PrecisionPolicy,
) -> Result<f64> {
    let eval = Evaluator::new(params, *policy)?;
    let rule = GaussLegendre::new(NonZeroUsize::new(12).expect("nonzero"));
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let corners = [
        c(rect.sigma_lo, rect.t_lo),
        c(rect.sigma_hi, rect.t_lo),
        c(rect.sigma_hi, rect.t_hi),
        c(rect.sigma_lo, rect.t_hi),
    ];
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..4 {
        let (a, b) = (corners[i], corners[(i + 1) % 4]);
        let pieces = ((b - a).norm() * base_density(params, rect.t_hi))
            .ceil()
            .max(1.0) as usize;
        for k in 0..pieces {
            let pa = a + (b - a) * (k as f64 / pieces as f64);
            let pb = a + (b - a) * ((k + 1) as f64 / pieces as f64);
            total += adaptive_panel(&eval, &rule, pa, pb, 0)?;
        }
    }
    let mut n = total / Complex64::new(0.0, TAU);
    if pole_inside(params, &rect)? {
        n += 1.0;
    }
    if n.im.abs() > 1e-6 {
        return Err(Error::Quadrature(format!(
            "imaginary part {} in the zero count",
            n.im
        )));
    }
    Ok(n.re)
}

fn panel(eval: &Evaluator, rule: &GaussLegendre, a: Complex64, b: Complex64) -> Result<Complex64> {
    let half = (b - a) * 0.5;
    let mid = (a + b) * 0.5;
    let mut acc = Complex64::new(0.0, 0.0);
    for &(x, w) in rule.as_node_weight_pairs() {
        let s = eval.sample(mid + half * x)?;
        acc += s.deriv / s.value * w;
    }
    Ok(acc * half)
}

fn adaptive_panel(
    eval: &Evaluator,
    rule: &GaussLegendre,
    a: Complex64,
    b: Complex64,
    depth: u32,
) -> Result<Complex64> {
    let whole = panel(eval, rule, a, b)?;
    let mid = (a + b) * 0.5;
    let left = panel(eval, rule, a, mid)?;
    let right = panel(eval, rule, mid, b)?;
    let split = left + right;
    if (split - whole).norm() < 1e-9 {
        return Ok(split);
    }
    if depth >= 30 {
        return Err(Error::Quadrature(format!(
            "panel {a} → {b} did not converge"
        )));
    }
    Ok(adaptive_panel(eval, rule, a, mid, depth + 1)?
        + adaptive_panel(eval, rule, mid, b, depth + 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lerch::RationalParam;
    use std::f64::consts::PI;

    #[test]
    fn main_term_for_half() {
        let p = LerchParams::equal(RationalParam::new(1, 2).unwrap());
        assert!((main_term(&p, 300.0) - 203.03).abs() < 0.01);
        assert!(
            (main_term(&p, 300.0) - 300.0 / TAU * (300.0 / (PI * std::f64::consts::E * 0.5)).ln())
                .abs()
                < 1e-12
        );
    }

    #[test]
    fn nudge_picks_the_nearest_edge() {
        let r = Rect::new(-1.0, 2.0, 0.0, 10.0);
        assert_eq!(nudged(&r, "-1+0i", 1e-3).t_lo, 1e-3);
        assert_eq!(nudged(&r, "-1+5i", 1e-3).sigma_lo, -1.001);
        assert_eq!(nudged(&r, "0.3+10i", 1e-3).t_hi, 10.001);
    }

    #[test]
    fn zeta_counts() {
        let zeta = LerchParams::equal(RationalParam::ONE);
        let p = PrecisionPolicy::digits(30).unwrap();
        assert_eq!(
            count_zeros_rectangle(&zeta, 0.0, 1.0, 14.0, 15.0, &p)
                .unwrap()
                .count,
            1
        );
        assert_eq!(
            count_zeros_rectangle(&zeta, -0.5, 2.0, 1.0, 30.0, &p)
                .unwrap()
                .count,
            3
        );
        // the pole at 1 is removed from the winding
        assert_eq!(
            count_zeros_rectangle(&zeta, -1.0, 2.0, -1.0, 10.0, &p)
                .unwrap()
                .count,
            0
        );
        let q = count_zeros_quadrature(&zeta, Rect::new(-0.5, 2.0, 1.0, 30.0), &p).unwrap();
        assert!((q - 3.0).abs() < 1e-6, "{q}");
    }
}
