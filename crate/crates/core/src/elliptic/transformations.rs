//! Alternate hypergeometric representations of `(2/pi) K` and `((2/pi) K)^2`
//! obtained from quadratic and cubic transformations, checked against the AGM.

use rug::{Float, Rational};

use super::{ellip_k, hyp_2f1, hyp_3f2, Modulus};
use crate::error::{domain, Result};
use crate::precision::PrecisionContext;

/// Validity range of one representation, as a closed interval on `k` (or on `k^2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KRange {
    /// `k in [0, 1/sqrt 2]`
    UpToSelfDual,
    /// `k in [0, sqrt 2 - 1]`
    UpToSilver,
    /// `k^2 in [0, 2(sqrt 2 - 1)]`
    SquareUpToTwiceSilver,
    /// `k in [0, (1 - sqrt(sqrt 2 - 1)) / 2^(3/4)]`
    UpToYBound,
}

impl KRange {
    pub fn describe(&self) -> &'static str {
        match self {
            KRange::UpToSelfDual => "k in [0, 1/sqrt(2)]",
            KRange::UpToSilver => "k in [0, sqrt(2) - 1]",
            KRange::SquareUpToTwiceSilver => "k^2 in [0, 2(sqrt(2) - 1)]",
            KRange::UpToYBound => "k in (0, (1 - sqrt(sqrt(2) - 1))/2^(3/4))",
        }
    }

    /// Upper end of the range, expressed on `k`.
    pub fn upper(&self, ctx: &PrecisionContext) -> Float {
        let silver = ctx.int(2).sqrt() - 1u32;
        match self {
            KRange::UpToSelfDual => ctx.float(0.5).sqrt(),
            KRange::UpToSilver => silver,
            KRange::SquareUpToTwiceSilver => (silver * 2u32).sqrt(),
            KRange::UpToYBound => {
                let num = ctx.one() - silver.sqrt();
                // 2^(3/4) = 8^(1/4)
                num / ctx.int(8).root(4)
            }
        }
    }

    pub fn contains(&self, m: &Modulus, ctx: &PrecisionContext) -> bool {
        let up = self.upper(ctx);
        match self {
            // the endpoint of this one is left untested: check strictly inside
            KRange::UpToYBound => *m.k() < up,
            _ => *m.k() <= up,
        }
    }
}

/// Which closed form a given identity asserts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `(2/pi) K`
    First,
    /// `((2/pi) K)^2`
    Squared,
}

#[derive(Debug, Clone)]
pub struct IdentityDefect {
    pub name: &'static str,
    pub side: Side,
    pub range: KRange,
    pub defect: Float,
}

/// The quantities every representation is expressed in.
struct Invariants {
    k: Float,
    kp: Float,
    /// `(2 k k')^2`
    four_p: Float,
    /// `1 - (2 k k')^2 = (k'^2 - k^2)^2`
    gap_sq: Float,
    /// `2/(g^12 + g^-12)`
    x: Float,
    /// `2/(G^12 - G^-12)`, only meaningful below `k'^2 = k^2`
    y: Float,
    /// `1/J`
    inv_j: Float,
    /// `1 - 1/J`
    inv_j_gap: Float,
}

impl Invariants {
    fn new(m: &Modulus, ctx: &PrecisionContext) -> Self {
        let bits = ctx.bits();
        let k = Float::with_val(bits, m.k());
        let kp = Float::with_val(bits, m.kprime());
        let k2 = Float::with_val(bits, k.square_ref());
        let kp2 = Float::with_val(bits, kp.square_ref());
        let s = Float::with_val(bits, &k * &kp);
        let four_p = Float::with_val(bits, &s * 2u32).square();
        let gap_sq = Float::with_val(bits, &kp2 - &k2).square();
        let x = Float::with_val(bits, &k * &kp2) * 4u32 / (ctx.one() + &k2).square();
        let y = Float::with_val(bits, &s * 4u32) / &gap_sq;
        // J - 1 = (u - 1)(8u + 1)^2 / (27u), u = G^24 = 1/(2kk')^2, u - 1 = gap_sq/four_p
        let u = ctx.one() / &four_p;
        let u_minus_one = Float::with_val(bits, &gap_sq / &four_p);
        let p = Float::with_val(bits, s.square_ref());
        let j = (ctx.one() - &p).square() * (ctx.one() - &p) * 4u32 / (p.square() * 27u32);
        let eight_u_plus_one = Float::with_val(bits, &u * 8u32) + 1u32;
        let j_minus_one = u_minus_one * eight_u_plus_one.square() / (u * 27u32);
        let inv_j_gap = j_minus_one / &j;
        let inv_j = ctx.one() / j;
        Self {
            k,
            kp,
            four_p,
            gap_sq,
            x,
            y,
            inv_j,
            inv_j_gap,
        }
    }
}

/// `z`, or exactly 1 when `1 - z` is below the truncation threshold
/// (the self-dual point, where the closed forms at unit argument apply).
fn snap_to_one(z: &Float, one_minus: &Float, ctx: &PrecisionContext) -> Float {
    if one_minus.clone().abs() < ctx.epsilon() {
        ctx.one()
    } else {
        z.clone()
    }
}

/// Evaluates every representation whose stated range contains `k` and
/// returns `|LHS - RHS|` for each, with the AGM value of `K` on the left.
///
/// Covers the 2 quadratic/Clausen forms in `(2kk')^2`, the 5 alternates
/// for `(2/pi) K` and the 5 alternates for `((2/pi) K)^2`.
pub fn check_transformations(m: &Modulus, ctx: &PrecisionContext) -> Result<Vec<IdentityDefect>> {
    let bits = ctx.bits();
    let q = |n: i32, d: i32| Rational::from((n, d));
    let v = Invariants::new(m, ctx);
    let lhs = ellip_k(m, ctx) * 2u32 / ctx.pi();
    let lhs_sq = Float::with_val(bits, lhs.square_ref());
    let one = Rational::from(1);

    let mut out = Vec::new();
    let mut push = |name, side, range: KRange, rhs: Float| {
        let target = match side {
            Side::First => &lhs,
            Side::Squared => &lhs_sq,
        };
        out.push(IdentityDefect {
            name,
            side,
            range,
            defect: (rhs - target).abs(),
        });
    };

    if KRange::UpToSelfDual.contains(m, ctx) {
        let z = snap_to_one(&v.four_p, &v.gap_sq, ctx);
        let r = KRange::UpToSelfDual;
        push(
            "2F1(1/4,1/4;1;(2kk')^2)",
            Side::First,
            r,
            hyp_2f1(&q(1, 4), &q(1, 4), &one, &z, ctx)?,
        );
        push(
            "3F2(1/2,1/2,1/2;1,1;(2kk')^2)",
            Side::Squared,
            r,
            hyp_3f2([&q(1, 2), &q(1, 2), &q(1, 2)], [&one, &one], &z, ctx)?,
        );
    }

    let k2 = Float::with_val(bits, v.k.square_ref());
    let kp2 = Float::with_val(bits, v.kp.square_ref());

    if KRange::UpToSilver.contains(m, ctx) {
        let r = KRange::UpToSilver;
        let z = -(Float::with_val(bits, &v.k * 2u32) / &kp2).square();
        let f = hyp_2f1(&q(1, 4), &q(1, 4), &one, &z, ctx)?;
        push("(1/k') 2F1(1/4,1/4;1;-(2k/k'^2)^2)", Side::First, r, f / &v.kp);
        let f = hyp_3f2([&q(1, 2), &q(1, 2), &q(1, 2)], [&one, &one], &z, ctx)?;
        push(
            "(1/k'^2) 3F2(1/2,1/2,1/2;1,1;-(2k/k'^2)^2)",
            Side::Squared,
            r,
            f / &kp2,
        );

        let z = Float::with_val(bits, v.x.square_ref());
        let f = hyp_2f1(&q(1, 8), &q(3, 8), &one, &z, ctx)?;
        let one_plus = ctx.one() + &k2;
        push(
            "(1+k^2)^(-1/2) 2F1(1/8,3/8;1;x^2)",
            Side::First,
            r,
            f / Float::with_val(bits, one_plus.sqrt_ref()),
        );
        let f = hyp_3f2([&q(1, 4), &q(3, 4), &q(1, 2)], [&one, &one], &z, ctx)?;
        push(
            "(1+k^2)^(-1) 3F2(1/4,3/4,1/2;1,1;x^2)",
            Side::Squared,
            r,
            f / one_plus,
        );
    }

    if KRange::SquareUpToTwiceSilver.contains(m, ctx) {
        let r = KRange::SquareUpToTwiceSilver;
        let z = -(Float::with_val(bits, &k2 / &v.kp) / 2u32).square();
        let f = hyp_2f1(&q(1, 4), &q(1, 4), &one, &z, ctx)?;
        push(
            "(k')^(-1/2) 2F1(1/4,1/4;1;-(k^2/(2k'))^2)",
            Side::First,
            r,
            f / Float::with_val(bits, v.kp.sqrt_ref()),
        );
        let f = hyp_3f2([&q(1, 2), &q(1, 2), &q(1, 2)], [&one, &one], &z, ctx)?;
        push(
            "(1/k') 3F2(1/2,1/2,1/2;1,1;-(k^2/(2k'))^2)",
            Side::Squared,
            r,
            f / &v.kp,
        );
    }

    if KRange::UpToYBound.contains(m, ctx) {
        let r = KRange::UpToYBound;
        let z = -Float::with_val(bits, v.y.square_ref());
        let diff = Float::with_val(bits, &kp2 - &k2);
        let f = hyp_2f1(&q(1, 8), &q(3, 8), &one, &z, ctx)?;
        push(
            "(k'^2-k^2)^(-1/2) 2F1(1/8,3/8;1;-y^2)",
            Side::First,
            r,
            f / Float::with_val(bits, diff.sqrt_ref()),
        );
        let f = hyp_3f2([&q(1, 4), &q(3, 4), &q(1, 2)], [&one, &one], &z, ctx)?;
        push(
            "(k'^2-k^2)^(-1) 3F2(1/4,3/4,1/2;1,1;-y^2)",
            Side::Squared,
            r,
            f / diff,
        );
    }

    if KRange::UpToSelfDual.contains(m, ctx) {
        let r = KRange::UpToSelfDual;
        let z = snap_to_one(&v.inv_j, &v.inv_j_gap, ctx);
        let p = Float::with_val(bits, Float::with_val(bits, &v.k * &v.kp).square_ref());
        let base = ctx.one() - p;
        let f = hyp_2f1(&q(1, 12), &q(5, 12), &one, &z, ctx)?;
        let quart = Float::with_val(bits, base.root_ref(4));
        push(
            "(1-(kk')^2)^(-1/4) 2F1(1/12,5/12;1;1/J)",
            Side::First,
            r,
            f / quart,
        );
        let f = hyp_3f2([&q(1, 6), &q(5, 6), &q(1, 2)], [&one, &one], &z, ctx)?;
        push(
            "(1-(kk')^2)^(-1/2) 3F2(1/6,5/6,1/2;1,1;1/J)",
            Side::Squared,
            r,
            f / base.sqrt(),
        );
    }

    if out.is_empty() {
        return domain(format!(
            "k = {} is outside every range ({}; {}; {}; {})",
            m.k().to_f64(),
            KRange::UpToSelfDual.describe(),
            KRange::UpToSilver.describe(),
            KRange::SquareUpToTwiceSilver.describe(),
            KRange::UpToYBound.describe()
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_twelve_inside_every_range() {
        let c = PrecisionContext::new(60).unwrap();
        let m = Modulus::from_f64(0.2, &c).unwrap();
        let defects = check_transformations(&m, &c).unwrap();
        assert_eq!(defects.len(), 12);
        let tol = c.tolerance(4);
        for d in &defects {
            assert!(d.defect < tol, "{}: {}", d.name, d.defect.to_f64());
        }
    }

    #[test]
    fn self_dual_point_uses_unit_argument_forms() {
        let c = PrecisionContext::new(60).unwrap();
        let m = Modulus::self_dual(&c);
        let defects = check_transformations(&m, &c).unwrap();
        // two in (2kk')^2, two in k^2/(2k'), two in 1/J
        assert_eq!(defects.len(), 6);
        let tol = c.tolerance(4);
        for d in &defects {
            assert!(d.defect < tol, "{}: {}", d.name, d.defect.to_f64());
        }
    }

    #[test]
    fn just_inside_each_endpoint() {
        // every upper endpoint is a singular point of some argument
        let c = PrecisionContext::new(60).unwrap();
        let tol = c.tolerance(4);
        for r in [
            KRange::UpToSelfDual,
            KRange::UpToSilver,
            KRange::SquareUpToTwiceSilver,
            KRange::UpToYBound,
        ] {
            let k = r.upper(&c) - c.ten_pow_neg(7);
            let m = Modulus::from_k(&k, &c).unwrap();
            let defects = check_transformations(&m, &c).unwrap();
            assert!(defects.iter().any(|d| d.range == r));
            for d in &defects {
                assert!(
                    d.defect < tol,
                    "{} near {}: {}",
                    d.name,
                    r.describe(),
                    d.defect.to_f64()
                );
            }
        }
    }

    #[test]
    fn outside_every_range() {
        let c = PrecisionContext::new(30).unwrap();
        let m = Modulus::from_f64(0.95, &c).unwrap();
        let err = check_transformations(&m, &c).unwrap_err();
        assert!(err.to_string().contains("outside every range"));
    }

    #[test]
    fn y_bound_value() {
        let c = PrecisionContext::new(30).unwrap();
        let up = KRange::UpToYBound.upper(&c).to_f64();
        assert!((up - 0.211_9).abs() < 1e-3, "{up}");
    }
}
