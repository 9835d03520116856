//! Multiprecision complex arithmetic and the two special functions the rest
//! of the crate is built on.

mod bernoulli;
mod complex;
mod gamma;
mod hurwitz;

pub use bernoulli::{bernoulli_numbers, BERNOULLI_CAP};
pub use complex::HpComplex;
pub use gamma::gamma_hp;
pub use hurwitz::{hurwitz_zeta, hurwitz_zeta_deriv, MAX_SHIFT};

pub(crate) use bernoulli::{em_coefficients, stirling_coefficients};
pub(crate) use hurwitz::{em_sum, EmConfig};

use crate::error::{Error, Result};

pub(crate) const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Converts decimal digits to a binary precision, rounding up.
pub fn digits_to_bits(digits: u32) -> u32 {
    (f64::from(digits) * LOG2_10).ceil() as u32
}

/// Converts a binary precision to the decimal digits it fully represents.
pub fn bits_to_digits(bits: u32) -> u32 {
    (f64::from(bits) / LOG2_10).floor() as u32
}

/// Working precision and error target for a computation.
///
/// Values are carried with `working_digits` significant decimal digits and
/// every special-function result is accurate to
/// `target_error = 10^-(working_digits - guard_digits)`, absolute or relative
/// to the result's magnitude, whichever is larger.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PrecisionPolicy {
    working_digits: u32,
    guard_digits: u32,
}

impl PrecisionPolicy {
    pub const MIN_DIGITS: u32 = 15;
    pub const MIN_GUARD: u32 = 5;

    pub fn new(working_digits: u32, guard_digits: u32) -> Result<Self> {
        if working_digits < Self::MIN_DIGITS {
            return Err(Error::Domain(format!(
                "working precision {working_digits} digits is below {}",
                Self::MIN_DIGITS
            )));
        }
        if guard_digits < Self::MIN_GUARD || guard_digits >= working_digits {
            return Err(Error::Domain(format!(
                "guard digits {guard_digits} must lie in [{}, {working_digits})",
                Self::MIN_GUARD
            )));
        }
        Ok(Self {
            working_digits,
            guard_digits,
        })
    }

    /// `digits` working digits with the minimum guard.
    pub fn digits(digits: u32) -> Result<Self> {
        Self::new(digits, Self::MIN_GUARD)
    }

    pub fn working_digits(&self) -> u32 {
        self.working_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    pub fn target_error(&self) -> f64 {
        10f64.powi(-((self.working_digits - self.guard_digits) as i32))
    }

    /// Binary precision used for values at this policy.
    pub fn bits(&self) -> u32 {
        digits_to_bits(self.working_digits) + 8
    }

    /// Same policy with `extra` more working digits.
    pub fn raised(&self, extra: u32) -> Self {
        Self {
            working_digits: self.working_digits + extra,
            guard_digits: self.guard_digits,
        }
    }
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        Self {
            working_digits: 30,
            guard_digits: Self::MIN_GUARD,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policy_validation() {
        assert!(PrecisionPolicy::new(14, 5).is_err());
        assert!(PrecisionPolicy::new(30, 4).is_err());
        assert!(PrecisionPolicy::new(15, 15).is_err());
        let p = PrecisionPolicy::new(40, 10).unwrap();
        assert_eq!(p.target_error(), 1e-30);
        assert!(p.bits() >= 133);
    }

    #[test]
    fn digit_bit_conversion() {
        assert_eq!(digits_to_bits(30), 100);
        assert_eq!(bits_to_digits(100), 30);
    }
}
