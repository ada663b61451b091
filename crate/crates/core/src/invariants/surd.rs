//! Exact surd expressions: trees over rationals with sums, products,
//! integer powers and rational-exponent radicals.
//!
//! Text form (used by the singular-value data file):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' exponent)?
//! exponent := ['-'] integer | '(' ['-'] integer ['/' integer] ')'
//! atom   := integer | 'sqrt' '(' expr ')' | '(' expr ')'
//! ```
//!
//! `x^(p/q)` with `q > 1` is a radical and needs `x >= 0` at evaluation time.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::precision::PrecisionContext;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurdExpr {
    Const(Rational),
    Add(Box<SurdExpr>, Box<SurdExpr>),
    Mul(Box<SurdExpr>, Box<SurdExpr>),
    /// Integer power; negative exponents are reciprocals.
    Pow(Box<SurdExpr>, i32),
    /// `x^(p/q)` with `q > 1` in lowest terms.
    Radical(Box<SurdExpr>, Rational),
}

impl SurdExpr {
    pub fn int(n: i64) -> Self {
        SurdExpr::Const(Rational::from(n))
    }

    pub fn rational(num: i64, den: i64) -> Self {
        SurdExpr::Const(Rational::from((num, den)))
    }

    pub fn sqrt(self) -> Self {
        self.pow_rational(Rational::from((1, 2)))
    }

    pub fn sqrt_of(n: i64) -> Self {
        SurdExpr::int(n).sqrt()
    }

    pub fn powi(self, e: i32) -> Self {
        SurdExpr::Pow(Box::new(self), e)
    }

    /// `self^e`; integral exponents become [`SurdExpr::Pow`].
    pub fn pow_rational(self, e: Rational) -> Self {
        if *e.denom() == 1 {
            let n = e.numer().to_i32().expect("exponent fits in i32");
            SurdExpr::Pow(Box::new(self), n)
        } else {
            SurdExpr::Radical(Box::new(self), e)
        }
    }

    /// The exact value when the tree has no radicals.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            SurdExpr::Const(q) => Some(q.clone()),
            SurdExpr::Add(a, b) => Some(a.as_rational()? + b.as_rational()?),
            SurdExpr::Mul(a, b) => Some(a.as_rational()? * b.as_rational()?),
            SurdExpr::Pow(a, e) => {
                let base = a.as_rational()?;
                if base == 0 && *e < 0 {
                    return None;
                }
                let mag = rational_pow(&base, e.unsigned_abs());
                Some(if *e < 0 { mag.recip() } else { mag })
            }
            SurdExpr::Radical(..) => None,
        }
    }

    pub fn eval(&self, ctx: &PrecisionContext) -> Result<Float> {
        let bits = ctx.bits();
        match self {
            SurdExpr::Const(q) => Ok(ctx.rational(q)),
            SurdExpr::Add(a, b) => Ok(a.eval(ctx)? + b.eval(ctx)?),
            SurdExpr::Mul(a, b) => Ok(a.eval(ctx)? * b.eval(ctx)?),
            SurdExpr::Pow(a, e) => {
                let base = a.eval(ctx)?;
                if base.is_zero() && *e < 0 {
                    return Err(Error::Evaluation(format!("zero raised to {e} in {self}")));
                }
                Ok(Float::with_val(bits, rug::ops::Pow::pow(base, *e)))
            }
            SurdExpr::Radical(a, e) => {
                let base = a.eval(ctx)?;
                if base.is_sign_negative() && !base.is_zero() {
                    return Err(Error::Evaluation(format!(
                        "negative radicand {} in {self}",
                        base.to_f64()
                    )));
                }
                let q = e.denom().to_u32().expect("radical index fits in u32");
                let p = e.numer().to_i32().expect("radical exponent fits in i32");
                let root = base.root(q);
                if root.is_zero() && p < 0 {
                    return Err(Error::Evaluation(format!("zero raised to {e} in {self}")));
                }
                Ok(Float::with_val(bits, rug::ops::Pow::pow(root, p)))
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }
}

fn rational_pow(base: &Rational, e: u32) -> Rational {
    let num = Integer::from(base.numer().pow(e));
    let den = Integer::from(base.denom().pow(e));
    Rational::from((num, den))
}

impl Add for SurdExpr {
    type Output = SurdExpr;
    fn add(self, rhs: SurdExpr) -> SurdExpr {
        SurdExpr::Add(Box::new(self), Box::new(rhs))
    }
}

impl Mul for SurdExpr {
    type Output = SurdExpr;
    fn mul(self, rhs: SurdExpr) -> SurdExpr {
        SurdExpr::Mul(Box::new(self), Box::new(rhs))
    }
}

impl Neg for SurdExpr {
    type Output = SurdExpr;
    fn neg(self) -> SurdExpr {
        match self {
            SurdExpr::Const(q) => SurdExpr::Const(-q),
            other => SurdExpr::int(-1) * other,
        }
    }
}

impl Sub for SurdExpr {
    type Output = SurdExpr;
    fn sub(self, rhs: SurdExpr) -> SurdExpr {
        self + (-rhs)
    }
}

impl Div for SurdExpr {
    type Output = SurdExpr;
    fn div(self, rhs: SurdExpr) -> SurdExpr {
        self * rhs.powi(-1)
    }
}

impl fmt::Display for SurdExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurdExpr::Const(q) => {
                if *q.denom() == 1 && *q.numer() >= 0 {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "({q})")
                }
            }
            SurdExpr::Add(a, b) => write!(f, "({a} + {b})"),
            SurdExpr::Mul(a, b) => write!(f, "{a}*{b}"),
            SurdExpr::Pow(a, e) => {
                if *e < 0 {
                    write!(f, "{}^({e})", Atom(a))
                } else {
                    write!(f, "{}^{e}", Atom(a))
                }
            }
            SurdExpr::Radical(a, e) if *e.numer() == 1 && *e.denom() == 2 => write!(f, "sqrt({a})"),
            SurdExpr::Radical(a, e) => write!(f, "{}^({e})", Atom(a)),
        }
    }
}

/// Parenthesizes anything that is not already atomic.
struct Atom<'a>(&'a SurdExpr);

impl fmt::Display for Atom<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            SurdExpr::Const(q) if *q.denom() == 1 && *q.numer() >= 0 => write!(f, "{}", self.0),
            SurdExpr::Add(..) | SurdExpr::Radical(..) | SurdExpr::Const(_) => write!(f, "{}", self.0),
            other => write!(f, "({other})"),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{msg} at offset {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<SurdExpr> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SurdExpr> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.unary()?;
            } else if self.eat(b'/') {
                let rhs = self.unary()?;
                acc = match (&acc, &rhs) {
                    (SurdExpr::Const(a), SurdExpr::Const(b)) if *b != 0 => {
                        SurdExpr::Const(Rational::from(a / b))
                    }
                    _ => acc / rhs,
                };
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<SurdExpr> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<SurdExpr> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let e = if self.eat(b'(') {
            let neg = self.eat(b'-');
            let num = self.integer()?;
            let den = if self.eat(b'/') {
                self.integer()?
            } else {
                Integer::from(1)
            };
            self.expect(b')')?;
            if den == 0 {
                return Err(self.error("zero exponent denominator"));
            }
            let q = Rational::from((num, den));
            if neg {
                -q
            } else {
                q
            }
        } else {
            let neg = self.eat(b'-');
            let n = Rational::from(self.integer()?);
            if neg {
                -n
            } else {
                n
            }
        };
        if e.numer().to_i32().is_none() || e.denom().to_u32().is_none() {
            return Err(self.error("exponent out of range"));
        }
        Ok(base.pow_rational(e))
    }

    fn atom(&mut self) -> Result<SurdExpr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(SurdExpr::Const(Rational::from(self.integer()?))),
            Some(b's') => {
                if self.src[self.pos..].starts_with(b"sqrt") {
                    self.pos += 4;
                    self.expect(b'(')?;
                    let e = self.expr()?;
                    self.expect(b')')?;
                    Ok(e.sqrt())
                } else {
                    Err(self.error("unknown identifier"))
                }
            }
            _ => Err(self.error("expected a number, 'sqrt(' or '('")),
        }
    }

    fn integer(&mut self) -> Result<Integer> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Integer::from_str_radix(text, 10).map_err(|_| self.error("bad integer"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(60).unwrap()
    }

    fn eval(text: &str) -> Float {
        SurdExpr::parse(text).unwrap().eval(&ctx()).unwrap()
    }

    #[test]
    fn constants() {
        assert_eq!(eval("7/2"), 3.5);
        assert_eq!(SurdExpr::parse("7/2").unwrap(), SurdExpr::rational(7, 2));
        assert_eq!(eval("-3 + 2*5"), 7);
        assert_eq!(eval("2^10 / 4^(-1)"), 4096);
    }

    #[test]
    fn difference_of_squares_is_one() {
        let v = eval("((sqrt(29) + 5)/2) * ((sqrt(29) - 5)/2)");
        assert!((v - 1u32).abs() < ctx().tolerance(0));
    }

    #[test]
    fn radicals() {
        let c = ctx();
        let v = eval("3^(3/4)");
        let w = c.int(27).root(4);
        assert!((v - w).abs() < c.tolerance(0));
        let v = eval("(5 - 2*sqrt(6))^(1/2)");
        let w = c.int(3).sqrt() - c.int(2).sqrt();
        assert!((v - w).abs() < c.tolerance(0));
    }

    #[test]
    fn negative_radicand_rejected() {
        let e = SurdExpr::parse("sqrt(2 - 3)").unwrap();
        assert!(matches!(e.eval(&ctx()), Err(Error::Evaluation(_))));
        // odd integer powers of negatives are fine
        assert_eq!(eval("(-2)^3"), -8);
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "sqrt 2", "(1 + 2", "1 +", "2^(1/0)", "foo(3)", "3 3"] {
            assert!(SurdExpr::parse(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn display_roundtrips() {
        for text in [
            "(sqrt(2) - 1)^6*(13*sqrt(58) - 99)",
            "(3 - 3^(3/4)*sqrt(2)*(sqrt(3) - 1))/2",
            "5*(1 - 2*5^(1/4)*(7 - 3*sqrt(5)))/2",
            "(sqrt(37) - (171 - 25*sqrt(37))*sqrt(sqrt(37) - 6))/2",
            "-1/2 + 2^(-3)",
        ] {
            let e = SurdExpr::parse(text).unwrap();
            let again = SurdExpr::parse(&e.to_string()).unwrap();
            assert_eq!(
                e.eval(&ctx()).unwrap(),
                again.eval(&ctx()).unwrap(),
                "{text} -> {e}"
            );
        }
    }

    #[test]
    fn exact_rationals() {
        let e = SurdExpr::parse("(2/3)^(-2) + 1/4").unwrap();
        assert_eq!(e.as_rational(), Some(Rational::from((5, 2))));
        assert_eq!(SurdExpr::sqrt_of(2).as_rational(), None);
    }
}
