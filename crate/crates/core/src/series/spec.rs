//! Series specifications: `M sum (+-1)^n c^n a_n (A + nB) z^e(n)` and the
//! elementary benchmark series sharing the same record shape.

use std::fmt;

use rug::{Float, Rational};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::CoefficientFamily;
use crate::error::{Error, Result};
use crate::invariants::SurdExpr;
use crate::precision::PrecisionContext;

/// An exact surd or a real computed at some working precision.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(SurdExpr),
    Real(Float),
}

impl Scalar {
    pub fn int(n: i64) -> Self {
        Scalar::Exact(SurdExpr::int(n))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(Scalar::Exact(SurdExpr::parse(text)?))
    }

    pub fn eval(&self, ctx: &PrecisionContext) -> Result<Float> {
        match self {
            Scalar::Exact(e) => e.eval(ctx),
            Scalar::Real(x) => Ok(Float::with_val(ctx.bits(), x)),
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Exact(e) => e.as_rational(),
            Scalar::Real(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(e) => write!(f, "{e}"),
            Scalar::Real(x) => {
                let digits = (f64::from(x.prec()) * std::f64::consts::LOG10_2) as usize;
                write!(f, "{}", x.to_string_radix(10, Some(digits.clamp(2, 40))))
            }
        }
    }
}

/// Exponent of the base as a function of `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pattern {
    #[serde(rename = "n")]
    N,
    #[serde(rename = "2n")]
    TwoN,
    #[serde(rename = "2n+1")]
    TwoNPlusOne,
    #[serde(rename = "3n")]
    ThreeN,
    #[serde(rename = "3(n+1/2)")]
    ThreeNPlusHalf,
    #[serde(rename = "12(n+1/2)")]
    TwelveNPlusHalf,
}

impl Pattern {
    /// `e(n+1) - e(n)`.
    pub fn step(self) -> u32 {
        match self {
            Pattern::N => 1,
            Pattern::TwoN | Pattern::TwoNPlusOne => 2,
            Pattern::ThreeN | Pattern::ThreeNPlusHalf => 3,
            Pattern::TwelveNPlusHalf => 12,
        }
    }

    /// `e(0)`, doubled so it stays integral.
    pub fn twice_offset(self) -> u32 {
        match self {
            Pattern::N | Pattern::TwoN | Pattern::ThreeN => 0,
            Pattern::TwoNPlusOne => 2,
            Pattern::ThreeNPlusHalf => 3,
            Pattern::TwelveNPlusHalf => 12,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Pattern::N => "n",
            Pattern::TwoN => "2n",
            Pattern::TwoNPlusOne => "2n+1",
            Pattern::ThreeN => "3n",
            Pattern::ThreeNPlusHalf => "3(n+1/2)",
            Pattern::TwelveNPlusHalf => "12(n+1/2)",
        }
    }
}

/// The constant a series sums to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Target {
    #[serde(rename = "1/pi")]
    ReciprocalPi,
    #[serde(rename = "pi/4")]
    PiOver4,
    #[serde(rename = "pi^2/6")]
    PiSquaredOver6,
    #[serde(rename = "4/pi")]
    FourOverPi,
}

impl Target {
    pub fn label(self) -> &'static str {
        match self {
            Target::ReciprocalPi => "1/pi",
            Target::PiOver4 => "pi/4",
            Target::PiSquaredOver6 => "pi^2/6",
            Target::FourOverPi => "4/pi",
        }
    }

    /// The target's value from MPFR's pi.
    pub fn value(self, ctx: &PrecisionContext) -> Float {
        let pi = ctx.pi();
        match self {
            Target::ReciprocalPi => pi.recip(),
            Target::PiOver4 => pi / 4u32,
            Target::PiSquaredOver6 => pi.square() / 6u32,
            Target::FourOverPi => pi.recip() * 4u32,
        }
    }

    /// Recovers pi from a value of the target.
    pub fn to_pi(self, v: &Float) -> Float {
        let v = v.clone();
        match self {
            Target::ReciprocalPi => v.recip(),
            Target::PiOver4 => v * 4u32,
            Target::PiSquaredOver6 => (v * 6u32).sqrt(),
            Target::FourOverPi => v.recip() * 4u32,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    /// Builder family tag, when the series comes from singular data.
    pub tag: Option<String>,
    pub n: Option<u32>,
    pub citation: String,
}

impl Provenance {
    pub fn cite(citation: &str) -> Self {
        Self {
            tag: None,
            n: None,
            citation: citation.to_string(),
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.tag, self.n) {
            (Some(t), Some(n)) => write!(f, "{t}, N = {n}; {}", self.citation),
            (None, Some(n)) => write!(f, "N = {n}; {}", self.citation),
            _ => f.write_str(&self.citation),
        }
    }
}

/// `multiplier * sum_n (+-1)^n scale^n a_n (A + nB) base^pattern(n)`.
///
/// `scale` turns the normalized family coefficient into the one printed in
/// a published form: `(4n)!/n!^4 = 256^n a_n`, `(2n)!^3/n!^6 = 64^n a_n`,
/// `(6n)!/((3n)! n!^3) = 1728^n a_n`.
///
/// For the elementary families `A + nB` is the reciprocal (Gregory),
/// reciprocal square (Basel) or squared partial numerator (Brouncker).
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSpec {
    pub key: String,
    pub family: CoefficientFamily,
    pub multiplier: Scalar,
    pub a: Scalar,
    pub b: Scalar,
    pub base: Scalar,
    pub alternating: bool,
    pub pattern: Pattern,
    pub scale: u32,
    pub target: Target,
    pub provenance: Provenance,
}

impl SeriesSpec {
    pub fn is_geometric(&self) -> bool {
        self.family.is_geometric()
    }

    /// Every field rational and the ratio rational: the series can be
    /// summed by binary splitting.
    pub fn is_rational(&self) -> bool {
        self.family.is_hypergeometric()
            && self.a.as_rational().is_some()
            && self.b.as_rational().is_some()
            && self.base.as_rational().is_some()
    }

    /// `|base|` must be below one for the geometric families.
    pub fn check_convergent(&self, ctx: &PrecisionContext) -> Result<()> {
        if !self.is_geometric() {
            return Ok(());
        }
        let z = self.base.eval(ctx)?;
        if z.is_zero() || Float::with_val(ctx.bits(), z.abs_ref()) >= 1 {
            return Err(Error::Domain(format!(
                "{}: base {} does not satisfy 0 < |z| < 1",
                self.key,
                z.to_f64()
            )));
        }
        Ok(())
    }

    /// `M z^e(0)`, the constant in front of every term.
    pub fn prefactor(&self, ctx: &PrecisionContext) -> Result<Float> {
        let m = self.multiplier.eval(ctx)?;
        let twice = self.pattern.twice_offset();
        if twice == 0 || !self.is_geometric() {
            return Ok(m);
        }
        let z = self.base.eval(ctx)?;
        let mut zo = Float::with_val(ctx.bits(), rug::ops::Pow::pow(&z, twice / 2));
        if twice % 2 == 1 {
            zo *= z.sqrt();
        }
        Ok(m * zo)
    }

    /// `sign * scale * base^step`, the geometric part of the term ratio.
    pub fn step_factor(&self, ctx: &PrecisionContext) -> Result<Float> {
        let z = self.base.eval(ctx)?;
        let mut w = Float::with_val(ctx.bits(), rug::ops::Pow::pow(&z, self.pattern.step()));
        w *= self.scale;
        if self.alternating {
            w = -w;
        }
        Ok(w)
    }

    /// Stable JSON record.
    pub fn to_json(&self) -> Value {
        json!({
            "key": self.key,
            "family": self.family.name(),
            "multiplier": self.multiplier.to_string(),
            "A": self.a.to_string(),
            "B": self.b.to_string(),
            "base": self.base.to_string(),
            "alternating": self.alternating,
            "pattern": self.pattern.label(),
            "scale": self.scale,
            "target": self.target.label(),
            "provenance": self.provenance.to_string(),
        })
    }
}

/// `-log10 |limiting term ratio|`: `scale |base|^step` times the family's
/// coefficient growth, which is 1 for every geometric family here.
pub fn digits_per_term(spec: &SeriesSpec) -> Result<f64> {
    if !spec.is_geometric() {
        return Err(Error::Unsupported(format!(
            "{}: digits per term is defined for geometric series only",
            spec.key
        )));
    }
    let ctx = PrecisionContext::new(40)?;
    let w = spec.step_factor(&ctx)?.abs();
    Ok(-w.log10().to_f64())
}
