//! Series built from singular data, and the normalizer that maps them onto
//! their published integer forms.

use std::fmt;
use std::str::FromStr;

use rug::{Float, Integer};

use super::{evaluate_direct, CoefficientFamily, Pattern, Provenance, Scalar, SeriesSpec, Target};
use crate::elliptic::{d_ellip_k, ellip_k, Modulus};
use crate::error::{Error, Result};
use crate::invariants::{lambda_star, InvariantKind, SingularData};
use crate::precision::PrecisionContext;

/// Which singular-data series to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyTag {
    /// Powers of `1/G^12`.
    BigG,
    /// Powers of `1/g^12`, alternating.
    SmallG,
    /// Powers of `1/g_{4N}^12`, alternating.
    G4N,
    /// Powers of `x_N = 2/(g^12 + g^-12)`.
    XN,
    /// Powers of `y_N = 2/(G^12 - G^-12)`, alternating.
    YN,
    /// Powers of `J_N^(-1/2)`.
    JN,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 6] = [
        FamilyTag::BigG,
        FamilyTag::SmallG,
        FamilyTag::G4N,
        FamilyTag::XN,
        FamilyTag::YN,
        FamilyTag::JN,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::BigG => "G",
            FamilyTag::SmallG => "g",
            FamilyTag::G4N => "g4N",
            FamilyTag::XN => "xN",
            FamilyTag::YN => "yN",
            FamilyTag::JN => "JN",
        }
    }

    /// Range of `N` on which the series is known to hold.
    pub fn check_n(self, n: u32) -> Result<()> {
        let ok = match self {
            FamilyTag::BigG | FamilyTag::JN => n > 1,
            FamilyTag::YN => n >= 4,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            let range = match self {
                FamilyTag::YN => "N >= 4",
                _ => "N > 1",
            };
            Err(Error::Domain(format!(
                "the {} series is valid for {range}, got N = {n}",
                self.name()
            )))
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilyTag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family tag {s:?}")))
    }
}

/// Numeric ingredients shared by every builder.
struct Ingredients {
    sqrt_n: Float,
    k2: Float,
    kp2: Float,
    kp: Float,
    /// `G^12`
    big12: Float,
    /// `g^12`
    small12: Float,
    alpha: Float,
}

fn ingredients(data: &SingularData, ctx: &PrecisionContext) -> Result<Ingredients> {
    let bits = ctx.bits();
    let m = data.modulus(ctx)?;
    let k = m.k().clone();
    let kp = m.kprime().clone();
    let k2 = Float::with_val(bits, k.square_ref());
    let kp2 = Float::with_val(bits, kp.square_ref());
    // the tabulated invariant where there is one, k otherwise
    let inv12 = data.inv12.eval(ctx)?;
    let (big12, small12) = match data.kind {
        InvariantKind::BigG => {
            let small = Float::with_val(bits, &kp2 / Float::with_val(bits, &k * 2u32));
            (inv12.recip(), small)
        }
        InvariantKind::SmallG => {
            let big = (Float::with_val(bits, &k * &kp) * 2u32).recip();
            (big, inv12.recip())
        }
    };
    Ok(Ingredients {
        sqrt_n: ctx.int(i64::from(data.n)).sqrt(),
        k2,
        kp2,
        kp,
        big12,
        small12,
        alpha: data.alpha_value(ctx)?,
    })
}

/// Builds the raw series for `tag` from one table row.
///
/// The result has real-valued `A`, `B` and base and the normalized family
/// coefficient (`scale = 1`). Its sum is checked against `1/pi`.
pub fn build_series(tag: FamilyTag, data: &SingularData, ctx: &PrecisionContext) -> Result<SeriesSpec> {
    tag.check_n(data.n)?;
    let bits = ctx.bits();
    let f = |x: Float| Scalar::Real(x);
    let ing = ingredients(data, ctx)?;
    let Ingredients {
        sqrt_n,
        k2,
        kp2,
        kp,
        big12,
        small12,
        alpha,
    } = ing;
    let one = ctx.one();

    let (family, multiplier, a, b, base, alternating, pattern) = match tag {
        FamilyTag::BigG => {
            let a = Float::with_val(bits, &alpha - Float::with_val(bits, &sqrt_n * &k2));
            let b = Float::with_val(bits, &sqrt_n * Float::with_val(bits, &kp2 - &k2));
            let z = big12.recip();
            (CoefficientFamily::HalfCubed, one, a, b, z, false, Pattern::TwoN)
        }
        FamilyTag::SmallG => {
            let a = Float::with_val(bits, &alpha / &kp2);
            let b = Float::with_val(bits, &sqrt_n * Float::with_val(bits, &k2 + 1u32)) / &kp2;
            let z = small12.recip();
            (CoefficientFamily::HalfCubed, one, a, b, z, true, Pattern::TwoN)
        }
        FamilyTag::G4N => {
            // g_{4N}^12 = 8 g^12 G^12 = 2k'/k^2
            let half = Float::with_val(bits, &sqrt_n * &k2) / 2u32;
            let a = Float::with_val(bits, &alpha - half) / &kp;
            let b = Float::with_val(
                bits,
                &sqrt_n * Float::with_val(bits, &kp + Float::with_val(bits, kp.recip_ref())),
            );
            let z = Float::with_val(bits, &k2 / Float::with_val(bits, &kp * 2u32));
            (CoefficientFamily::HalfCubed, one, a, b, z, true, Pattern::TwoN)
        }
        FamilyTag::XN => {
            let inv = Float::with_val(bits, small12.recip_ref());
            let x = Float::with_val(bits, Float::with_val(bits, &small12 + &inv).recip() * 2u32);
            let first = Float::with_val(
                bits,
                &alpha / (Float::with_val(bits, &x * Float::with_val(bits, &k2 + 1u32))),
            );
            let second = Float::with_val(bits, &sqrt_n / Float::with_val(bits, &small12 * 4u32));
            let a = first - second;
            let b = Float::with_val(bits, &sqrt_n * Float::with_val(bits, &small12 - &inv)) / 2u32;
            (
                CoefficientFamily::QuarterHalfThreeQuarter,
                one,
                a,
                b,
                x,
                false,
                Pattern::TwoNPlusOne,
            )
        }
        FamilyTag::YN => {
            let inv = Float::with_val(bits, big12.recip_ref());
            let y = Float::with_val(bits, Float::with_val(bits, &big12 - &inv).recip() * 2u32);
            let gap = Float::with_val(bits, &kp2 - &k2);
            let first = Float::with_val(bits, &alpha / Float::with_val(bits, &y * &gap));
            let second = Float::with_val(bits, &sqrt_n * &k2) * &big12 / 2u32;
            let a = first + second;
            let b = Float::with_val(bits, &sqrt_n * Float::with_val(bits, &big12 + &inv)) / 2u32;
            (
                CoefficientFamily::QuarterHalfThreeQuarter,
                one,
                a,
                b,
                y,
                true,
                Pattern::TwoNPlusOne,
            )
        }
        FamilyTag::JN => {
            let g24 = Float::with_val(bits, big12.square_ref());
            let root = (ctx.one() - Float::with_val(bits, g24.recip_ref())).sqrt();
            let core = Float::with_val(bits, &alpha - Float::with_val(bits, &sqrt_n * &k2));
            let a = core * (Float::with_val(bits, &g24 * 4u32) - 1u32) * 2u32
                + Float::with_val(bits, &sqrt_n * &root);
            let b =
                Float::with_val(bits, &sqrt_n * 2u32) * (Float::with_val(bits, &g24 * 8u32) + 1u32) * &root;
            // J = (4G^24 - 1)^3 / (27 G^24), base J^(-1/2)
            let j = (Float::with_val(bits, &g24 * 4u32) - 1u32).square()
                * (Float::with_val(bits, &g24 * 4u32) - 1u32)
                / (g24 * 27u32);
            let z = j.sqrt().recip();
            let m = (ctx.int(3).sqrt() * 3u32).recip();
            (
                CoefficientFamily::SixthHalfFiveSixth,
                m,
                a,
                b,
                z,
                false,
                Pattern::TwoNPlusOne,
            )
        }
    };

    let zabs = Float::with_val(bits, base.abs_ref());
    if zabs >= 1 {
        return Err(Error::Domain(format!(
            "{} series at N = {}: base {} is not below 1 in absolute value",
            tag.name(),
            data.n,
            base.to_f64()
        )));
    }

    let spec = SeriesSpec {
        key: format!("{}-{}", tag.name(), data.n),
        family,
        multiplier: f(multiplier),
        a: f(a),
        b: f(b),
        base: f(base),
        alternating,
        pattern,
        scale: 1,
        target: Target::ReciprocalPi,
        provenance: Provenance {
            tag: Some(tag.name().to_string()),
            n: Some(data.n),
            citation: "built from singular values".to_string(),
        },
    };

    let sum = evaluate_direct(&spec, ctx)?.value;
    let defect = (sum - ctx.pi().recip()).abs();
    if defect > ctx.tolerance(8) {
        return Err(Error::Consistency(format!(
            "{} series at N = {} sums to 1/pi only within {}",
            tag.name(),
            data.n,
            defect.to_f64()
        )));
    }
    Ok(spec)
}

/// Integer `A`, `B` of a raw series, expressed in a published form.
#[derive(Debug, Clone, PartialEq)]
pub struct Normalized {
    pub a: Integer,
    pub b: Integer,
    /// `M_pub z_pub^e(0) / (M_raw z_raw^e(0))`, the factor divided out.
    pub divisor: Float,
    /// Largest distance of the rescaled `A`, `B` from the nearest integer.
    pub residual: Float,
}

/// Rescales `raw` onto the multiplier, base and coefficient scale of
/// `published`, rounding `A` and `B` to integers. Fails when the term
/// ratios differ or the residual exceeds `10^-(digits-12)`.
pub fn normalize(raw: &SeriesSpec, published: &SeriesSpec, ctx: &PrecisionContext) -> Result<Normalized> {
    let bits = ctx.bits();
    if raw.family != published.family || raw.alternating != published.alternating {
        return Err(Error::Consistency(format!(
            "{} and {} are different series shapes",
            raw.key, published.key
        )));
    }
    let wr = raw.step_factor(ctx)?;
    let wp = published.step_factor(ctx)?;
    let rel = Float::with_val(bits, &wr - &wp).abs() / Float::with_val(bits, wp.abs_ref());
    if rel > ctx.tolerance(12) {
        return Err(Error::Consistency(format!(
            "{} and {}: term ratios differ ({} vs {})",
            raw.key,
            published.key,
            wr.to_f64(),
            wp.to_f64()
        )));
    }
    let divisor = published.prefactor(ctx)? / raw.prefactor(ctx)?;
    let ra = raw.a.eval(ctx)? / &divisor;
    let rb = raw.b.eval(ctx)? / &divisor;
    let round = |x: &Float| -> Result<(Integer, Float)> {
        let n = x
            .to_integer()
            .ok_or_else(|| Error::Evaluation("non-finite coefficient".into()))?;
        let r = Float::with_val(bits, x - &n).abs();
        Ok((n, r))
    };
    let (a, da) = round(&ra)?;
    let (b, db) = round(&rb)?;
    let residual = if da > db { da } else { db };
    if residual >= ctx.tolerance(12) {
        return Err(Error::Consistency(format!(
            "{}: rescaled coefficients {} and {} are not integers (residual {})",
            raw.key,
            ra.to_f64(),
            rb.to_f64(),
            residual.to_f64()
        )));
    }
    Ok(Normalized {
        a,
        b,
        divisor,
        residual,
    })
}

/// `|rhs - 1/pi|` where `rhs` is
/// `sqrt(N) k k'^2 (2/pi)^2 K dK/dk + (alpha - sqrt(N) k^2) (2K/pi)^2`
/// at `k = lambda*(N)`, with `alpha` from the table row. No series involved.
pub fn reciprocal_pi_identity_check(
    data: &SingularData,
    tag: FamilyTag,
    ctx: &PrecisionContext,
) -> Result<Float> {
    tag.check_n(data.n)?;
    let bits = ctx.bits();
    let m: Modulus = lambda_star(&data.r(), ctx)?;
    let k = m.k();
    let kp2 = Float::with_val(bits, m.kprime().square_ref());
    let big_k = ellip_k(&m, ctx);
    let dk = d_ellip_k(&m, ctx);
    let pi = ctx.pi();
    let two_over_pi = Float::with_val(bits, 2u32 / &pi);
    let sqrt_n = ctx.int(i64::from(data.n)).sqrt();
    let alpha = data.alpha_value(ctx)?;

    let first = Float::with_val(bits, &sqrt_n * k)
        * &kp2
        * Float::with_val(bits, two_over_pi.square_ref())
        * &big_k
        * dk;
    let k2 = Float::with_val(bits, k.square_ref());
    let second = (alpha - sqrt_n * k2) * (two_over_pi * big_k).square();
    Ok((first + second - pi.recip()).abs())
}
