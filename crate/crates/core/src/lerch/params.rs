use std::fmt;
use std::str::FromStr;

use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Exact rational parameter `b/d` in `(0, 1]`, in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct RationalParam {
    num: u64,
    den: u64,
}

impl RationalParam {
    pub const ONE: Self = Self { num: 1, den: 1 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num == 0 || num > den {
            return Err(Error::Domain(format!("{num}/{den} is not in (0, 1]")));
        }
        if gcd(num, den) != 1 {
            return Err(Error::Domain(format!("{num}/{den} is not in lowest terms")));
        }
        Ok(Self { num, den })
    }

    /// Reduces `num/den` first; `0/d` is mapped to `1/1`, the same point of the
    /// circle `λ mod 1`.
    pub fn reduced(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Domain("zero denominator".into()));
        }
        let num = num % den;
        if num == 0 {
            return Ok(Self::ONE);
        }
        let g = gcd(num, den);
        Self::new(num / g, den / g)
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn to_rational(&self) -> Rational {
        Rational::from((self.num, self.den))
    }

    pub fn to_float(&self, prec: u32) -> Float {
        Float::with_val(prec, self.to_rational())
    }

    /// `1 - {λ}`: `1 - λ` for `λ < 1`, and `1` for `λ = 1`. As a λ-slot value
    /// this is also `1 - λ` read modulo 1.
    pub fn complement(&self) -> Self {
        if self.is_one() {
            Self::ONE
        } else {
            Self {
                num: self.den - self.num,
                den: self.den,
            }
        }
    }
}

impl fmt::Display for RationalParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for RationalParam {
    type Err = Error;

    /// Accepts `"b/d"` or a bare integer `"1"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected a rational \"b/d\", got {s:?}"));
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<u64>().map_err(|_| bad())?,
                d.trim().parse::<u64>().map_err(|_| bad())?,
            ),
            None => (s.parse::<u64>().map_err(|_| bad())?, 1),
        };
        Self::new(num, den)
    }
}

impl TryFrom<String> for RationalParam {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<RationalParam> for String {
    fn from(p: RationalParam) -> String {
        p.to_string()
    }
}

/// A Lerch parameter: exact rational, or a high-precision real in `(0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Rational(RationalParam),
    Real(Float),
}

impl Param {
    pub fn real(value: Float) -> Result<Self> {
        if !value.is_finite() || value <= 0 || value > 1 {
            return Err(Error::Domain(format!(
                "parameter {} is not in (0, 1]",
                value.to_f64()
            )));
        }
        Ok(Self::Real(value))
    }

    pub fn as_rational(&self) -> Option<RationalParam> {
        match self {
            Self::Rational(r) => Some(*r),
            Self::Real(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Self::Rational(r) => r.to_f64(),
            Self::Real(f) => f.to_f64(),
        }
    }

    pub fn to_float(&self, prec: u32) -> Float {
        match self {
            Self::Rational(r) => r.to_float(prec),
            Self::Real(f) => Float::with_val(prec, f),
        }
    }
}

impl From<RationalParam> for Param {
    fn from(r: RationalParam) -> Self {
        Self::Rational(r)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Rational(r) => r.fmt(f),
            Self::Real(x) => write!(f, "{}", x.to_string_radix(10, Some(20))),
        }
    }
}

/// The pair `(λ, α)` of `L(λ, α, s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LerchParams {
    lambda: Param,
    alpha: Param,
}

impl LerchParams {
    pub fn new(lambda: Param, alpha: Param) -> Self {
        Self { lambda, alpha }
    }

    pub fn rational(lambda: RationalParam, alpha: RationalParam) -> Self {
        Self::new(lambda.into(), alpha.into())
    }

    /// `λ = α = b/d`.
    pub fn equal(lambda: RationalParam) -> Self {
        Self::rational(lambda, lambda)
    }

    /// Parses `"b/d"` strings for both parameters.
    pub fn parse(lambda: &str, alpha: &str) -> Result<Self> {
        Ok(Self::rational(lambda.parse()?, alpha.parse()?))
    }

    pub fn lambda(&self) -> &Param {
        &self.lambda
    }

    pub fn alpha(&self) -> &Param {
        &self.alpha
    }

    /// Both parameters as exact rationals, if they are.
    pub fn rationals(&self) -> Option<(RationalParam, RationalParam)> {
        Some((self.lambda.as_rational()?, self.alpha.as_rational()?))
    }

    /// True iff `λ = α` exactly.
    pub fn equal_params(&self) -> bool {
        self.lambda == self.alpha
    }

    /// `λ ∈ ℤ`, the case with a pole at `s = 1`.
    pub fn has_pole(&self) -> bool {
        match &self.lambda {
            Param::Rational(r) => r.is_one(),
            Param::Real(x) => *x == 1,
        }
    }
}

impl fmt::Display for LerchParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({}, {}, s)", self.lambda, self.alpha)
    }
}
