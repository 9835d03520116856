//! Reference values of `L(λ, α, s)` for `σ > 1` straight from the series.
//!
//! Terms with `m < N` are summed one by one. Splitting `m ≥ N` by the residue
//! `m ≡ r (mod d)` leaves the smooth tails `Σ_{q≥Q} (qd + r + α)^{-s}`, each
//! closed by Euler–Maclaurin and stopped once the next correction, which
//! bounds the remainder, is below the tolerance. Nothing here calls into the
//! library's evaluation code.

use rug::float::Constant;
use rug::{Float, Rational};

/// Minimal complex arithmetic on `Float` pairs.
#[derive(Clone, Debug)]
pub struct C {
    pub re: Float,
    pub im: Float,
}

impl C {
    fn new(prec: u32, re: f64, im: f64) -> Self {
        Self {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    fn add(&self, o: &C) -> C {
        C {
            re: Float::with_val(self.re.prec(), &self.re + &o.re),
            im: Float::with_val(self.re.prec(), &self.im + &o.im),
        }
    }

    fn sub(&self, o: &C) -> C {
        C {
            re: Float::with_val(self.re.prec(), &self.re - &o.re),
            im: Float::with_val(self.re.prec(), &self.im - &o.im),
        }
    }

    fn mul(&self, o: &C) -> C {
        let p = self.re.prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        C { re, im }
    }

    fn scale(&self, k: &Float) -> C {
        C {
            re: Float::with_val(self.re.prec(), &self.re * k),
            im: Float::with_val(self.re.prec(), &self.im * k),
        }
    }

    fn div(&self, o: &C) -> C {
        let p = self.re.prec();
        let den = Float::with_val(p, o.re.square_ref()) + Float::with_val(p, o.im.square_ref());
        let conj = C {
            re: o.re.clone(),
            im: Float::with_val(p, -&o.im),
        };
        let n = self.mul(&conj);
        C {
            re: n.re / &den,
            im: n.im / den,
        }
    }

    /// `e^{iθ}`.
    fn cis(theta: &Float) -> C {
        let (sin, cos) = theta.clone().sin_cos(Float::new(theta.prec()));
        C { re: cos, im: sin }
    }

    /// `x^{-s}` for real `x > 0`.
    fn real_pow_neg(x: &Float, s: &C) -> C {
        let ln = Float::with_val(x.prec(), x.ln_ref());
        let mag = (-Float::with_val(x.prec(), &s.re * &ln)).exp();
        let angle = -Float::with_val(x.prec(), &s.im * &ln);
        C::cis(&angle).scale(&mag)
    }

    pub fn abs(&self) -> f64 {
        Float::with_val(self.re.prec(), self.re.hypot_ref(&self.im)).to_f64()
    }
}

/// `B_0 .. B_n` by the Akiyama–Tanigawa algorithm (`B_1 = +1/2`).
fn bernoulli(n: usize) -> Vec<Rational> {
    let mut a: Vec<Rational> = Vec::with_capacity(n + 1);
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(Rational::from((1, m as u64 + 1)));
        for j in (1..=m).rev() {
            let diff = Rational::from(&a[j - 1] - &a[j]);
            a[j - 1] = diff * j as u64;
        }
        out.push(a[0].clone());
    }
    out
}

/// `(b, d)` pairs for `λ` and `α`, both in `(0, 1]`.
pub struct Series {
    pub lambda: (u64, u64),
    pub alpha: (u64, u64),
}

impl Series {
    /// Value at `sigma + i t` with absolute error below `tol`, at `prec` bits.
    pub fn eval(&self, sigma: f64, t: f64, prec: u32, tol: f64) -> C {
        assert!(sigma > 1.0);
        let s = C::new(prec, sigma, t);
        let alpha = Float::with_val(prec, Rational::from(self.alpha));
        let d = self.lambda.1;
        let two_pi = Float::with_val(prec, Constant::Pi) * 2u32;

        // Q ≥ |s| keeps the Euler–Maclaurin corrections decreasing
        let q0 = (sigma.hypot(t).ceil() as u64 + 10).max(40);
        let mut sum = C::new(prec, 0.0, 0.0);
        for m in 0..q0 * d {
            let phase =
                Float::with_val(prec, &two_pi * Rational::from((self.lambda.0 * (m % d), d)));
            let base = Float::with_val(prec, &alpha + m);
            sum = sum.add(&C::cis(&phase).mul(&C::real_pow_neg(&base, &s)));
        }

        let b = bernoulli(200);
        let d_f = Float::with_val(prec, d);
        for r in 0..d {
            let phase = Float::with_val(prec, &two_pi * Rational::from((self.lambda.0 * r, d)));
            let x0 = Float::with_val(prec, &d_f * q0) + r + &alpha;
            let tail = em_tail(&s, &x0, &d_f, &b, tol / d as f64);
            sum = sum.add(&C::cis(&phase).mul(&tail));
        }
        sum
    }
}

/// `Σ_{q≥0} (x0 + q d)^{-s}` by Euler–Maclaurin from `q = 0`.
fn em_tail(s: &C, x0: &Float, d: &Float, b: &[Rational], tol: f64) -> C {
    let prec = x0.prec();
    let one = C::new(prec, 1.0, 0.0);
    let s_minus_1 = s.sub(&one);
    let f0 = C::real_pow_neg(x0, s);
    // ∫_0^∞ (x0 + q d)^{-s} dq = x0^{1-s} / (d (s-1))
    let integral = C::real_pow_neg(x0, &s_minus_1).div(&s_minus_1.scale(d));
    let half = Float::with_val(prec, 0.5);
    let mut acc = integral.add(&f0.scale(&half));

    // f^{(k)}(0) = (-s)(-s-1)…(-s-k+1) d^k x0^{-s-k}
    let ratio = Float::with_val(prec, d / x0);
    let minus = |z: &C| C {
        re: Float::with_val(prec, -&z.re),
        im: Float::with_val(prec, -&z.im),
    };
    let mut deriv = minus(&f0.mul(s)).scale(&ratio);
    let mut fact = Float::with_val(prec, 2u32);
    let mut k = 1u32;
    for j in 1..b.len() / 2 {
        let coef = Float::with_val(prec, &b[2 * j]) / &fact;
        let term = deriv.scale(&coef);
        acc = acc.sub(&term);
        if term.abs() < tol * 1e-3 && j > 2 {
            return acc;
        }
        for _ in 0..2 {
            let c = minus(&s.add(&C::new(prec, f64::from(k), 0.0)));
            deriv = deriv.mul(&c).scale(&ratio);
            k += 1;
        }
        fact *= (2 * j + 1) as u32;
        fact *= (2 * j + 2) as u32;
    }
    panic!("Euler–Maclaurin tail did not reach {tol:e}");
}

#[cfg(test)]
mod self_check {
    use super::*;

    #[test]
    fn bernoulli_small() {
        let b = bernoulli(8);
        assert_eq!(b[2], Rational::from((1, 6)));
        assert_eq!(b[4], Rational::from((-1, 30)));
        assert_eq!(b[8], Rational::from((-1, 30)));
    }

    #[test]
    fn zeta_two() {
        let v = Series {
            lambda: (1, 1),
            alpha: (1, 1),
        }
        .eval(2.0, 0.0, 200, 1e-45);
        let pi = Float::with_val(200, Constant::Pi);
        let exact = Float::with_val(200, pi.square_ref()) / 6u32;
        assert!(Float::with_val(200, &v.re - &exact).abs().to_f64() < 1e-44);
    }
}
