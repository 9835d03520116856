//! Double-precision evaluation of `L` and `L'` for rational parameters.
//!
//! Used for scanning only: every value comes with an error estimate, and
//! callers switch to the multiprecision route when the estimate is not small
//! against the value.

use std::sync::OnceLock;

use num_complex::Complex64;

use super::eval::Decomposition;
use super::params::LerchParams;
use crate::error::{Error, Result};
use crate::precision::em_coefficients;

const MAX_TERMS: usize = 150;
const EPS: f64 = f64::EPSILON;

/// `B_{2k}/(2k)!` as doubles; index 0 unused.
fn coefficients() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let t = em_coefficients(160, MAX_TERMS + 1).expect("coefficient table within cap");
        t.iter().take(MAX_TERMS + 1).map(|c| c.to_f64()).collect()
    })
}

/// Value, derivative and an absolute error estimate for both.
#[derive(Clone, Copy, Debug)]
pub struct FastValue {
    pub value: Complex64,
    pub deriv: Complex64,
    pub err: f64,
}

impl FastValue {
    /// True when the error estimate is at most `1/ratio` of `|L|`.
    pub fn resolved(&self, ratio: f64) -> bool {
        self.value.norm() > ratio * self.err
    }
}

/// Precomputed decomposition of a rational `L(λ, α, ·)`.
#[derive(Clone, Debug)]
pub struct FastLerch {
    weights: Vec<Complex64>,
    shifts: Vec<f64>,
    ln_d: f64,
    integer_lambda: bool,
}

/// `φ(z) = (e^z-1)/z` and `φ'(z)`.
fn phi(z: Complex64) -> (Complex64, Complex64) {
    if z.norm() < 0.5 {
        let mut v = Complex64::new(1.0, 0.0);
        let mut dv = Complex64::new(0.0, 0.0);
        let mut zp = Complex64::new(1.0, 0.0); // z^{n-1}
        let mut fact = 1.0; // (n+1)!
        for n in 1..24 {
            fact *= (n + 1) as f64;
            dv += zp * (n as f64 / fact);
            zp *= z;
            v += zp / fact;
        }
        (v, dv)
    } else {
        let e = z.exp();
        ((e - 1.0) / z, (e * (z - 1.0) + 1.0) / (z * z))
    }
}

impl FastLerch {
    pub fn new(params: &LerchParams) -> Result<Self> {
        let (l, a) = params
            .rationals()
            .ok_or_else(|| Error::Domain("fast evaluation needs rational parameters".into()))?;
        let dec = Decomposition::new(l, a);
        let d = dec.d;
        let mut weights = Vec::with_capacity(d as usize);
        let mut shifts = Vec::with_capacity(d as usize);
        for k in 0..d {
            let r = (dec.lambda_num * k % d) as f64 / d as f64;
            weights.push(Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * r));
            shifts.push((k * d + dec.alpha_num) as f64 / (d * d) as f64);
        }
        Ok(Self {
            weights,
            shifts,
            ln_d: (d as f64).ln(),
            integer_lambda: dec.integer_lambda(),
        })
    }

    pub fn denominator(&self) -> usize {
        self.weights.len()
    }

    pub fn eval(&self, s: Complex64) -> FastValue {
        let t = s.im.abs();
        let n = (1.2 * t / (2.0 * std::f64::consts::PI)).ceil() as usize + 8;
        let coeffs = coefficients();
        let one = Complex64::new(1.0, 0.0);
        let sm1 = s - one;

        let mut sum = Complex64::new(0.0, 0.0);
        let mut sum_d = Complex64::new(0.0, 0.0);
        let mut pole = Complex64::new(0.0, 0.0);
        let mut pole_d = Complex64::new(0.0, 0.0);
        let mut mag = 0.0;
        let mut trunc = 0.0f64;
        for (c, &a) in self.weights.iter().zip(&self.shifts) {
            let mut h = Complex64::new(0.0, 0.0);
            let mut hd = Complex64::new(0.0, 0.0);
            for j in 0..n {
                let lx = (j as f64 + a).ln();
                let term = (-s * lx).exp();
                h += term;
                hd -= term * lx;
                mag += term.norm();
            }
            let x = n as f64 + a;
            let lx = x.ln();
            let xs = (-s * lx).exp(); // x^{-s}
            h += xs * 0.5;
            hd -= xs * (0.5 * lx);

            // corrections c_k (s)_{2k-1} x^{-s-2k+1}, with w = (s)_{2k-1} x^{-2k+1}
            let inv_x = 1.0 / x;
            let mut w = s * inv_x;
            let mut wd = Complex64::new(inv_x, 0.0);
            let mut corr = Complex64::new(0.0, 0.0);
            let mut corr_d = Complex64::new(0.0, 0.0);
            let mut converged = false;
            for (k, &ck) in coeffs.iter().enumerate().skip(1) {
                let term = w * ck;
                corr += term;
                corr_d += wd * ck - term * lx;
                let size = term.norm();
                if size < EPS * 0.01 * corr.norm().max(1e-300) || (k > 1 && size == 0.0) {
                    trunc = trunc.max(size * xs.norm() * 4.0);
                    converged = true;
                    break;
                }
                let p1 = s + (2 * k) as f64 - 1.0;
                let p2 = s + (2 * k) as f64;
                let step = p1 * p2 * (inv_x * inv_x);
                wd = wd * step + w * (p1 + p2) * (inv_x * inv_x);
                w *= step;
            }
            if !converged {
                trunc = f64::INFINITY;
            }
            h += corr * xs;
            hd += corr_d * xs;
            mag += (corr.norm() + 1.0) * xs.norm();

            sum += c * h;
            sum_d += c * hd;

            let x1s = xs * x; // x^{1-s}
            if self.integer_lambda {
                pole += x1s;
                pole_d -= x1s * lx;
            } else {
                let (ph, dph) = phi(-sm1 * lx);
                pole -= c * ph * lx;
                pole_d += c * dph * (lx * lx);
                mag += (ph * lx).norm();
            }
        }
        if self.integer_lambda {
            let inv = 1.0 / sm1;
            pole_d = pole_d * inv - pole * inv * inv;
            pole *= inv;
            mag += pole.norm();
        }
        let scale = (-s * self.ln_d).exp();
        let value = scale * (sum + pole);
        let deriv = scale * (sum_d + pole_d) - value * self.ln_d;
        // rounding in exp(-s ln x) grows with |s| ln x
        let phase_growth = 8.0 + 2.0 * s.norm() * ((n + 1) as f64).ln();
        let err = (EPS * mag * phase_growth + trunc * self.weights.len() as f64) * scale.norm();
        FastValue { value, deriv, err }
    }

    /// `L(s)` only.
    pub fn value(&self, s: Complex64) -> Complex64 {
        self.eval(s).value
    }
}
