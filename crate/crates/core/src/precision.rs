//! Working precision shared by every numeric routine.

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{domain, Result};

/// log2(10), used to turn decimal digits into mantissa bits.
const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;

/// Smallest working precision accepted by [`PrecisionContext::new`].
pub const MIN_DIGITS: u32 = 16;

/// Decimal working precision plus guard digits.
///
/// Results of magnitude O(1) computed from exact inputs carry an absolute
/// error of at most `10^-digits`. Internally every routine works with
/// `digits + guard` decimal digits and a few extra binary digits on top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    digits: u32,
    guard: u32,
}

impl PrecisionContext {
    /// Context with the default guard policy: 10 guard digits, growing as
    /// `ceil(log10(digits)) + 10` above 10^4 digits.
    pub fn new(digits: u32) -> Result<Self> {
        Self::with_guard(digits, default_guard(digits))
    }

    pub fn with_guard(digits: u32, guard: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return domain(format!(
                "working precision must be at least {MIN_DIGITS} digits, got {digits}"
            ));
        }
        Ok(Self { digits, guard })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    /// Same guard policy at a different number of digits.
    pub fn with_digits(&self, digits: u32) -> Result<Self> {
        Self::new(digits)
    }

    /// Mantissa bits used for every working value.
    pub fn bits(&self) -> u32 {
        ((self.digits + self.guard) as f64 * BITS_PER_DIGIT).ceil() as u32 + 32
    }

    pub fn float(&self, v: impl Into<f64>) -> Float {
        Float::with_val(self.bits(), v.into())
    }

    pub fn zero(&self) -> Float {
        Float::with_val(self.bits(), 0)
    }

    pub fn one(&self) -> Float {
        Float::with_val(self.bits(), 1)
    }

    pub fn int(&self, v: i64) -> Float {
        Float::with_val(self.bits(), v)
    }

    pub fn rational(&self, q: &Rational) -> Float {
        Float::with_val(self.bits(), q)
    }

    pub fn integer(&self, n: &Integer) -> Float {
        Float::with_val(self.bits(), n)
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.bits(), Constant::Pi)
    }

    /// `sqrt(v)` for a rational `v`.
    pub fn sqrt_rational(&self, v: &Rational) -> Float {
        self.rational(v).sqrt()
    }

    /// `10^-e` at working precision.
    pub fn ten_pow_neg(&self, e: i64) -> Float {
        let ten = Float::with_val(self.bits(), 10);
        ten.pow(-e)
    }

    /// Series truncation threshold `10^-(digits+guard)`.
    pub fn epsilon(&self) -> Float {
        self.ten_pow_neg(i64::from(self.digits + self.guard))
    }

    /// `10^-(digits - slack)`, the usual shape of an identity tolerance.
    pub fn tolerance(&self, slack: i32) -> Float {
        self.ten_pow_neg(i64::from(self.digits) - i64::from(slack))
    }
}

fn default_guard(digits: u32) -> u32 {
    if digits > 10_000 {
        (digits as f64).log10().ceil() as u32 + 10
    } else {
        10
    }
}

/// `-log10(|x|)`, or +inf for zero. Handy for reporting defects as digits.
pub fn digits_of_agreement(defect: &Float) -> f64 {
    if defect.is_zero() {
        f64::INFINITY
    } else {
        -Float::with_val(64, defect.abs_ref()).log10().to_f64()
    }
}

/// Truncated decimal expansion of `x >= 0`: integer part, then exactly
/// `places` fractional digits.
pub fn decimal_digits(x: &Float, places: usize) -> Result<(Integer, String)> {
    if x.is_sign_negative() || !x.is_finite() {
        return domain("decimal expansion needs a finite non-negative value");
    }
    let scale = Integer::from(10).pow(places as u32);
    let scaled = Float::with_val(x.prec() + 8, x * &scale);
    let Some(n) = scaled.floor().to_integer() else {
        return domain("value is not finite");
    };
    let (int_part, frac) = n.div_rem(scale);
    let mut frac_digits = frac.to_string();
    while frac_digits.len() < places {
        frac_digits.insert(0, '0');
    }
    Ok((int_part, frac_digits))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_low_precision() {
        assert!(PrecisionContext::new(15).is_err());
        assert!(PrecisionContext::new(16).is_ok());
    }

    #[test]
    fn guard_policy() {
        assert_eq!(PrecisionContext::new(100).unwrap().guard(), 10);
        assert_eq!(PrecisionContext::new(10_000).unwrap().guard(), 10);
        assert_eq!(PrecisionContext::new(100_000).unwrap().guard(), 15);
    }

    #[test]
    fn truncated_digits() {
        let ctx = PrecisionContext::new(40).unwrap();
        let (i, f) = decimal_digits(&ctx.pi(), 10).unwrap();
        assert_eq!(i, 3);
        assert_eq!(f, "1415926535");
        let (_, f) = decimal_digits(&ctx.float(0.0625), 3).unwrap();
        assert_eq!(f, "062");
    }
}
