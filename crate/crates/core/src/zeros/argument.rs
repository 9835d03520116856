//! Continuous argument of `L` along a parametrized path.
//!
//! A piece `[u₀, u₁]` of length `h` is accepted when
//! `h · max|L'| < ½ · min|L|` at its ends; then `L` stays inside a disc that
//! excludes 0 and the principal value of `arg(L(u₁)/L(u₀))` is the true
//! increment. Otherwise the piece is halved.

use num_complex::Complex64;

use super::evaluator::{Evaluator, Sample};
use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 60;

/// Pieces shorter than this mean a zero sits on the path for practical purposes.
const MIN_STEP: f64 = 1e-11;

/// Total change of `arg L` along `path(u)`, `u ∈ [0, 1]`, where `|path'| = speed`.
pub(crate) fn track<P>(eval: &Evaluator, path: &P, speed: f64, pieces: usize) -> Result<f64>
where
    P: Fn(f64) -> Complex64,
{
    let pieces = pieces.max(1);
    let mut total = 0.0;
    let mut u0 = 0.0;
    let mut s0 = eval.sample(path(0.0))?;
    for i in 1..=pieces {
        let u1 = i as f64 / pieces as f64;
        let s1 = eval.sample(path(u1))?;
        total += piece(eval, path, speed, (u0, s0), (u1, s1), 0)?;
        u0 = u1;
        s0 = s1;
    }
    Ok(total)
}

fn piece<P>(
    eval: &Evaluator,
    path: &P,
    speed: f64,
    a: (f64, Sample),
    b: (f64, Sample),
    depth: u32,
) -> Result<f64>
where
    P: Fn(f64) -> Complex64,
{
    let (u0, s0) = a;
    let (u1, s1) = b;
    let h = speed * (u1 - u0);
    let m = s0.value.norm().min(s1.value.norm());
    let slope = s0.deriv.norm().max(s1.deriv.norm());
    let noise = s0.err.max(s1.err);
    if h * slope < 0.5 * m && m > 8.0 * noise {
        return Ok((s1.value * s0.value.conj()).arg());
    }
    if depth >= MAX_DEPTH || h < MIN_STEP {
        return Err(Error::BoundaryZero {
            at: format!("{}", path(u0)),
        });
    }
    let um = 0.5 * (u0 + u1);
    let sm = eval.sample(path(um))?;
    let left = piece(eval, path, speed, (u0, s0), (um, sm), depth + 1)?;
    let right = piece(eval, path, speed, (um, sm), (u1, s1), depth + 1)?;
    Ok(left + right)
}

/// Argument change along the straight segment `a → b`, starting from
/// `ceil(|b-a| · density)` pieces.
pub(crate) fn segment(eval: &Evaluator, a: Complex64, b: Complex64, density: f64) -> Result<f64> {
    let len = (b - a).norm();
    let pieces = (len * density).ceil().max(1.0) as usize;
    track(eval, &|u: f64| a + (b - a) * u, len, pieces)
}

/// Argument change once around the circle `|s - c| = r`, counterclockwise.
pub(crate) fn circle(eval: &Evaluator, c: Complex64, r: f64, pieces: usize) -> Result<f64> {
    let tau = std::f64::consts::TAU;
    track(
        eval,
        &|u: f64| c + Complex64::from_polar(r, tau * u),
        tau * r,
        pieces,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lerch::{LerchParams, RationalParam};
    use crate::precision::PrecisionPolicy;

    fn zeta() -> Evaluator {
        Evaluator::new(
            &LerchParams::equal(RationalParam::ONE),
            PrecisionPolicy::digits(30).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn circle_around_first_zeta_zero() {
        let e = zeta();
        let w = circle(&e, Complex64::new(0.5, 14.1347), 0.5, 8).unwrap();
        assert!((w / std::f64::consts::TAU - 1.0).abs() < 1e-9);
        let w = circle(&e, Complex64::new(0.5, 12.0), 0.5, 8).unwrap();
        assert!(w.abs() < 1e-9);
    }

    #[test]
    fn segment_through_zero_is_a_boundary_zero() {
        let e = zeta();
        let rho = Complex64::new(0.5, 14.134725141734694);
        let r = segment(
            &e,
            rho - Complex64::new(0.3, 0.0),
            rho + Complex64::new(0.3, 0.0),
            4.0,
        );
        assert!(matches!(r, Err(Error::BoundaryZero { .. })), "{r:?}");
    }
}
