//! Elements `a + b sqrt(d)` of a real quadratic field, and fundamental units.

use std::fmt;

use rug::ops::DivRounding;
use rug::{Float, Integer, Rational};

use super::SurdExpr;
use crate::error::{domain, Error, Result};
use crate::precision::PrecisionContext;

/// `a + b sqrt(d)` with rational `a, b` and square-free `d >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    a: Rational,
    b: Rational,
    d: u64,
}

pub fn is_square_free(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Discriminant of `Q(sqrt d)`: `d` when `d = 1 mod 4`, else `4d`.
pub fn field_discriminant(d: u64) -> u64 {
    if d % 4 == 1 {
        d
    } else {
        4 * d
    }
}

impl QuadraticSurd {
    pub fn new(a: Rational, b: Rational, d: u64) -> Result<Self> {
        if d < 2 || !is_square_free(d) {
            return domain(format!("{d} is not a square-free integer >= 2"));
        }
        Ok(Self { a, b, d })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn conjugate(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: Rational::from(-&self.b),
            d: self.d,
        }
    }

    /// `a^2 - d b^2`.
    pub fn norm(&self) -> Rational {
        Rational::from(self.a.square_ref()) - Rational::from(self.b.square_ref()) * self.d
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::Unsupported(format!(
                "mixed quadratic fields Q(sqrt {}) and Q(sqrt {})",
                self.d, other.d
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(Self {
            a: Rational::from(&self.a + &other.a),
            b: Rational::from(&self.b + &other.b),
            d: self.d,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let a = Rational::from(&self.a * &other.a) + Rational::from(&self.b * &other.b) * self.d;
        let b = Rational::from(&self.a * &other.b) + Rational::from(&self.b * &other.a);
        Ok(Self { a, b, d: self.d })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self {
            a: Rational::from(1),
            b: Rational::new(),
            d: self.d,
        };
        for _ in 0..e {
            acc = acc.checked_mul(self).expect("same field");
        }
        acc
    }

    pub fn to_float(&self, ctx: &PrecisionContext) -> Float {
        let root = ctx.int(self.d as i64).sqrt();
        ctx.rational(&self.a) + root * &self.b
    }

    pub fn to_surd_expr(&self) -> SurdExpr {
        SurdExpr::Const(self.a.clone()) + SurdExpr::Const(self.b.clone()) * SurdExpr::sqrt_of(self.d as i64)
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b < 0 { '-' } else { '+' };
        let b = Rational::from(self.b.abs_ref());
        if *b.denom() == 1 {
            write!(f, "{} {sign} {}*sqrt({})", self.a, b, self.d)
        } else {
            write!(f, "{} {sign} ({})*sqrt({})", self.a, b, self.d)
        }
    }
}

/// Continued fraction of the quadratic irrational `(p + sqrt(disc)) / q`
/// with `q | disc - p^2`, yielding successive convergents `(num, den)`.
struct Convergents {
    disc: Integer,
    isqrt: Integer,
    p: Integer,
    q: Integer,
    prev: (Integer, Integer),
    cur: (Integer, Integer),
}

impl Convergents {
    fn new(p: i64, disc: u64, q: i64) -> Self {
        let disc = Integer::from(disc);
        let isqrt = Integer::from(disc.sqrt_ref());
        Self {
            disc,
            isqrt,
            p: Integer::from(p),
            q: Integer::from(q),
            prev: (Integer::new(), Integer::from(1)),
            cur: (Integer::from(1), Integer::new()),
        }
    }
}

impl Iterator for Convergents {
    type Item = (Integer, Integer);

    fn next(&mut self) -> Option<Self::Item> {
        if self.q <= 0 {
            return None;
        }
        let a = Integer::from(&self.p + &self.isqrt).div_floor(self.q.clone());
        let num = Integer::from(&a * &self.cur.0) + &self.prev.0;
        let den = Integer::from(&a * &self.cur.1) + &self.prev.1;
        self.prev = std::mem::replace(&mut self.cur, (num.clone(), den.clone()));
        let next_p = Integer::from(&a * &self.q) - &self.p;
        let next_q = (Integer::from(&self.disc - next_p.square_ref())) / &self.q;
        self.p = next_p;
        self.q = next_q;
        Some((num, den))
    }
}

/// Fundamental unit `u_d > 1` of `Q(sqrt d)`: `(m + n sqrt(D))/2` for the
/// least positive solution of `m^2 - D n^2 = +-4`, `D` the field
/// discriminant.
///
/// For `d = 1 mod 4` the units come from convergents `p/q` of
/// `(1 + sqrt d)/2` with `p^2 - pq - q^2 (d-1)/4 = +-1`; otherwise from
/// convergents of `sqrt d` with `p^2 - d q^2 = +-1`. The first hit is the
/// fundamental unit.
pub fn fundamental_unit(d: u64) -> Result<QuadraticSurd> {
    if d < 2 || !is_square_free(d) {
        return domain(format!("fundamental_unit needs a square-free d >= 2, got {d}"));
    }
    let one = Integer::from(1);
    if d % 4 == 1 {
        let c = Integer::from((d - 1) / 4);
        for (p, q) in Convergents::new(1, d, 2) {
            let norm =
                Integer::from(p.square_ref()) - Integer::from(&p * &q) - Integer::from(q.square_ref()) * &c;
            if norm.clone().abs() == one {
                // m = 2p - q, n = q, u = m/2 + (n/2) sqrt d
                let m = Integer::from(&p * 2u32) - &q;
                return QuadraticSurd::new(Rational::from((m, 2)), Rational::from((q, 2)), d);
            }
        }
    } else {
        for (p, q) in Convergents::new(0, d, 1) {
            let norm = Integer::from(p.square_ref()) - Integer::from(q.square_ref()) * d;
            if norm.abs() == one {
                return QuadraticSurd::new(Rational::from(p), Rational::from(q), d);
            }
        }
    }
    Err(Error::Evaluation(format!(
        "continued fraction for d = {d} terminated unexpectedly"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qs(a: (i64, i64), b: (i64, i64), d: u64) -> QuadraticSurd {
        QuadraticSurd::new(Rational::from(a), Rational::from(b), d).unwrap()
    }

    #[test]
    fn square_free() {
        assert!(is_square_free(2));
        assert!(is_square_free(58));
        assert!(!is_square_free(18));
        assert!(!is_square_free(49));
        assert!(fundamental_unit(18).is_err());
        assert!(fundamental_unit(1).is_err());
    }

    #[test]
    fn units_from_the_tables() {
        assert_eq!(fundamental_unit(2).unwrap(), qs((1, 1), (1, 1), 2));
        assert_eq!(fundamental_unit(29).unwrap(), qs((5, 2), (1, 2), 29));
        assert_eq!(fundamental_unit(37).unwrap(), qs((6, 1), (1, 1), 37));
        assert_eq!(fundamental_unit(58).unwrap(), qs((99, 1), (13, 1), 58));
        assert_eq!(fundamental_unit(22).unwrap(), qs((197, 1), (42, 1), 22));
    }

    #[test]
    fn arithmetic() {
        let u = fundamental_unit(29).unwrap();
        assert_eq!(u.norm(), -1);
        let one = u.checked_mul(&u.conjugate()).unwrap();
        assert_eq!(one, qs((-1, 1), (0, 1), 29));
        let cube = u.pow(3);
        assert_eq!(cube, u.checked_mul(&u).unwrap().checked_mul(&u).unwrap());
        assert!(u.checked_add(&fundamental_unit(2).unwrap()).is_err());
        assert_eq!(u.to_string(), "5/2 + (1/2)*sqrt(29)");
    }

    #[test]
    fn float_value() {
        let ctx = PrecisionContext::new(40).unwrap();
        let u = fundamental_unit(58).unwrap();
        let via_expr = u.to_surd_expr().eval(&ctx).unwrap();
        assert!((u.to_float(&ctx) - via_expr).abs() < ctx.tolerance(0));
    }
}
