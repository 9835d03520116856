use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use rug::float::Constant;
use rug::Float;

use super::{bits_to_digits, digits_to_bits};
use crate::error::{Error, Result};

/// Complex number with MPFR real and imaginary parts at a shared precision.
///
/// Binary operations produce results at the smaller of the two operand
/// precisions.
#[derive(Clone, Debug, PartialEq)]
pub struct HpComplex {
    re: Float,
    im: Float,
}

impl HpComplex {
    pub fn new(mut re: Float, mut im: Float) -> Self {
        let prec = re.prec().min(im.prec());
        re.set_prec(prec);
        im.set_prec(prec);
        Self { re, im }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Self {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        Self { re, im }
    }

    pub fn from_c64(prec: u32, z: Complex64) -> Self {
        Self::from_f64(prec, z.re, z.im)
    }

    pub fn zero(prec: u32) -> Self {
        Self {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(prec, 1.0, 0.0)
    }

    pub fn i(prec: u32) -> Self {
        Self::from_f64(prec, 0.0, 1.0)
    }

    /// Parses `a`, `a+bi`, `a-bi`, `bi`, with optional spaces, at `digits`
    /// decimal digits.
    pub fn parse(text: &str, digits: u32) -> Result<Self> {
        let prec = digits_to_bits(digits) + 8;
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("not a complex number: {text:?}"));
        if compact.is_empty() {
            return Err(bad());
        }
        let float = |s: &str| -> Result<Float> {
            let parsed = Float::parse(s).map_err(|_| bad())?;
            Ok(Float::with_val(prec, parsed))
        };
        let Some(body) = compact
            .strip_suffix('i')
            .or_else(|| compact.strip_suffix('j'))
        else {
            return Ok(Self::from_real(float(&compact)?));
        };
        // split at the last sign that is not the leading one nor an exponent sign
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            if (bytes[idx] == b'+' || bytes[idx] == b'-') && !matches!(bytes[idx - 1], b'e' | b'E')
            {
                split = Some(idx);
                break;
            }
        }
        let imag = |s: &str| -> Result<Float> {
            match s {
                "" | "+" => Ok(Float::with_val(prec, 1)),
                "-" => Ok(Float::with_val(prec, -1)),
                _ => float(s),
            }
        };
        match split {
            Some(idx) => Ok(Self::new(float(&body[..idx])?, imag(&body[idx..])?)),
            None => Ok(Self::new(Float::new(prec), imag(body)?)),
        }
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn into_parts(self) -> (Float, Float) {
        (self.re, self.im)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    /// Decimal digits carried by this value.
    pub fn precision_digits(&self) -> u32 {
        bits_to_digits(self.prec())
    }

    pub fn with_prec(mut self, prec: u32) -> Self {
        self.re.set_prec(prec);
        self.im.set_prec(prec);
        self
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    /// Rejects NaN or infinite components.
    pub fn checked(self, context: &'static str) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite(context))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: Float::with_val(self.prec(), -&self.im),
        }
    }

    pub fn norm_sqr(&self) -> Float {
        let prec = self.prec();
        let mut n = Float::with_val(prec, self.re.square_ref());
        n += Float::with_val(prec, self.im.square_ref());
        n
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    /// |z| as f64, saturating instead of overflowing.
    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    /// log10 |z|, finite even when |z| under- or overflows f64.
    pub fn log10_abs(&self) -> f64 {
        let a = self.abs();
        if a.is_zero() {
            return f64::NEG_INFINITY;
        }
        let (mant, exp) = a.to_f64_exp();
        mant.abs().log10() + f64::from(exp) * std::f64::consts::LOG10_2
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn scale(&self, k: &Float) -> Self {
        let prec = self.prec().min(k.prec());
        Self {
            re: Float::with_val(prec, &self.re * k),
            im: Float::with_val(prec, &self.im * k),
        }
    }

    pub fn scale_f64(&self, k: f64) -> Self {
        let prec = self.prec();
        Self {
            re: Float::with_val(prec, &self.re * k),
            im: Float::with_val(prec, &self.im * k),
        }
    }

    pub fn add_real(&self, k: &Float) -> Self {
        let prec = self.prec().min(k.prec());
        Self {
            re: Float::with_val(prec, &self.re + k),
            im: Float::with_val(prec, &self.im),
        }
    }

    pub fn add_f64(&self, k: f64) -> Self {
        let prec = self.prec();
        Self {
            re: Float::with_val(prec, &self.re + k),
            im: self.im.clone(),
        }
    }

    /// Multiplies by `i`.
    pub fn mul_i(&self) -> Self {
        Self {
            re: Float::with_val(self.prec(), -&self.im),
            im: self.re.clone(),
        }
    }

    pub fn recip(&self) -> Self {
        let prec = self.prec();
        let n = self.norm_sqr();
        Self {
            re: Float::with_val(prec, &self.re / &n),
            im: Float::with_val(prec, -Float::with_val(prec, &self.im / &n)),
        }
    }

    pub fn exp(&self) -> Self {
        let prec = self.prec();
        let mag = Float::with_val(prec, self.re.exp_ref());
        let (sin, cos) = self.im.clone().sin_cos(Float::new(prec));
        Self {
            re: Float::with_val(prec, &mag * &cos),
            im: mag * sin,
        }
    }

    /// Principal logarithm; `ln 0` is an error.
    pub fn ln(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("logarithm of zero".into()));
        }
        let prec = self.prec();
        Ok(Self {
            re: Float::with_val(prec, self.abs().ln_ref()),
            im: self.arg(),
        })
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let prec = self.prec();
        if self.is_zero() {
            return Self::zero(prec);
        }
        let r = self.abs();
        // sqrt((r + |re|)/2) is free of cancellation
        let mut u = Float::with_val(prec, self.re.abs_ref());
        u += &r;
        u /= 2;
        u.sqrt_mut();
        let v = Float::with_val(prec, &self.im / &u) / 2u32;
        if self.re.is_sign_positive() {
            Self { re: u, im: v }
        } else if self.im.is_sign_negative() {
            Self {
                re: v.abs(),
                im: -u,
            }
        } else {
            Self { re: v.abs(), im: u }
        }
    }

    /// `x^self` for real `x > 0`, given `ln x`.
    pub fn real_pow_from_ln(&self, ln_x: &Float) -> Self {
        let prec = self.prec().min(ln_x.prec());
        let mag = Float::with_val(prec, &self.re * ln_x).exp();
        let angle = Float::with_val(prec, &self.im * ln_x);
        let (sin, cos) = angle.sin_cos(Float::new(prec));
        Self {
            re: Float::with_val(prec, &mag * &cos),
            im: mag * sin,
        }
    }

    /// `x^self` for real `x > 0`.
    pub fn real_pow(&self, x: &Float) -> Self {
        let ln_x = Float::with_val(self.prec().min(x.prec()), x.ln_ref());
        self.real_pow_from_ln(&ln_x)
    }

    /// `e^{2πi·num/den}` with `num` reduced modulo `den` before scaling.
    pub fn unit_root(prec: u32, num: i64, den: u64) -> Self {
        let den_i = den as i64;
        let reduced = num.rem_euclid(den_i);
        let mut angle = Float::with_val(prec, Constant::Pi) * 2u32;
        angle *= reduced;
        angle /= den;
        let (sin, cos) = angle.sin_cos(Float::new(prec));
        Self { re: cos, im: sin }
    }

    /// Euclidean distance to `other` as f64.
    pub fn dist_f64(&self, other: &Self) -> f64 {
        (self - other).abs_f64()
    }

    /// Decimal rendering with `digits` significant digits per component.
    pub fn to_string_digits(&self, digits: usize) -> String {
        let re = self.re.to_string_radix(10, Some(digits));
        let im_abs = Float::with_val(self.prec(), self.im.abs_ref());
        let im = im_abs.to_string_radix(10, Some(digits));
        let sign = if self.im.is_sign_negative() { '-' } else { '+' };
        format!("{re} {sign} {im}i")
    }
}

impl fmt::Display for HpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_digits(self.precision_digits().max(1) as usize))
    }
}

impl<'a> Add<&'a HpComplex> for &'a HpComplex {
    type Output = HpComplex;
    fn add(self, rhs: &HpComplex) -> HpComplex {
        let prec = self.prec().min(rhs.prec());
        HpComplex {
            re: Float::with_val(prec, &self.re + &rhs.re),
            im: Float::with_val(prec, &self.im + &rhs.im),
        }
    }
}

impl<'a> Sub<&'a HpComplex> for &'a HpComplex {
    type Output = HpComplex;
    fn sub(self, rhs: &HpComplex) -> HpComplex {
        let prec = self.prec().min(rhs.prec());
        HpComplex {
            re: Float::with_val(prec, &self.re - &rhs.re),
            im: Float::with_val(prec, &self.im - &rhs.im),
        }
    }
}

impl<'a> Mul<&'a HpComplex> for &'a HpComplex {
    type Output = HpComplex;
    fn mul(self, rhs: &HpComplex) -> HpComplex {
        let prec = self.prec().min(rhs.prec());
        let mut re = Float::with_val(prec, &self.re * &rhs.re);
        re -= Float::with_val(prec, &self.im * &rhs.im);
        let mut im = Float::with_val(prec, &self.re * &rhs.im);
        im += Float::with_val(prec, &self.im * &rhs.re);
        HpComplex { re, im }
    }
}

impl<'a> Div<&'a HpComplex> for &'a HpComplex {
    type Output = HpComplex;
    fn div(self, rhs: &HpComplex) -> HpComplex {
        let prec = self.prec().min(rhs.prec());
        let n = rhs.norm_sqr();
        let mut re = Float::with_val(prec, &self.re * &rhs.re);
        re += Float::with_val(prec, &self.im * &rhs.im);
        re /= &n;
        let mut im = Float::with_val(prec, &self.im * &rhs.re);
        im -= Float::with_val(prec, &self.re * &rhs.im);
        im /= &n;
        HpComplex { re, im }
    }
}

impl Neg for &HpComplex {
    type Output = HpComplex;
    fn neg(self) -> HpComplex {
        let prec = self.prec();
        HpComplex {
            re: Float::with_val(prec, -&self.re),
            im: Float::with_val(prec, -&self.im),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<HpComplex> for HpComplex {
            type Output = HpComplex;
            fn $method(self, rhs: HpComplex) -> HpComplex { (&self).$method(&rhs) }
        }
        impl<'a> $tr<&'a HpComplex> for HpComplex {
            type Output = HpComplex;
            fn $method(self, rhs: &HpComplex) -> HpComplex { (&self).$method(rhs) }
        }
        impl<'a> $tr<HpComplex> for &'a HpComplex {
            type Output = HpComplex;
            fn $method(self, rhs: HpComplex) -> HpComplex { self.$method(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for HpComplex {
    type Output = HpComplex;
    fn neg(self) -> HpComplex {
        -&self
    }
}
