//! Ramanujan-Weber class invariants `G`, `g` and Klein's absolute invariant.

use rug::ops::Pow;
use rug::Float;

use crate::elliptic::Modulus;
use crate::error::{domain, Error, Result};
use crate::precision::PrecisionContext;

#[derive(Debug, Clone, PartialEq)]
pub struct ClassInvariants {
    /// `G = (1/(2 k k'))^(1/12)`
    pub big_g: Float,
    /// `g = (k'^2/(2k))^(1/12)`
    pub small_g: Float,
}

pub fn class_invariants(m: &Modulus, ctx: &PrecisionContext) -> ClassInvariants {
    let bits = ctx.bits();
    let two_kkp = Float::with_val(bits, m.k() * m.kprime()) * 2u32;
    let big_g = (ctx.one() / two_kkp).root(12);
    let kp2 = Float::with_val(bits, m.kprime().square_ref());
    let small_g = (kp2 / Float::with_val(bits, m.k() * 2u32)).root(12);
    ClassInvariants { big_g, small_g }
}

/// `k = (sqrt(1 + G^-12) - sqrt(1 - G^-12))/2`, written without the
/// cancellation as `G^-12 / (sqrt(1 + G^-12) + sqrt(1 - G^-12))`.
pub fn modulus_from_big_g(big_g: &Float, ctx: &PrecisionContext) -> Result<Modulus> {
    if !big_g.is_finite() || *big_g < 1 {
        return domain("G must be at least 1 (k would be complex)");
    }
    let bits = ctx.bits();
    let x = ctx.one() / Float::with_val(bits, big_g).pow(12u32);
    let plus = (ctx.one() + &x).sqrt();
    let minus = (ctx.one() - &x).sqrt();
    let sum = plus + minus;
    let k = x / &sum;
    let kprime = sum / 2u32;
    Modulus::from_pair(k, kprime)
}

/// `k = g^6 sqrt(g^12 + g^-12) - g^12`, evaluated as
/// `1 / (g^12 (1 + sqrt(1 + g^-24)))`; `k' = sqrt(2k) g^6`.
pub fn modulus_from_small_g(small_g: &Float, ctx: &PrecisionContext) -> Result<Modulus> {
    if !small_g.is_finite() || *small_g <= 0 {
        return domain("g must be positive");
    }
    let bits = ctx.bits();
    let g6 = Float::with_val(bits, small_g).pow(6u32);
    let g12 = Float::with_val(bits, g6.square_ref());
    let inv24 = ctx.one() / Float::with_val(bits, g12.square_ref());
    let k = ctx.one() / (Float::with_val(bits, &g12) * ((ctx.one() + inv24).sqrt() + 1u32));
    let kprime = Float::with_val(bits, &k * 2u32).sqrt() * g6;
    Modulus::from_pair(k, kprime)
}

/// The three forms of `J`, in the order G-form, g-form, k-form.
pub fn klein_j_forms(m: &Modulus, ctx: &PrecisionContext) -> [Float; 3] {
    let bits = ctx.bits();
    let inv = class_invariants(m, ctx);
    let g24 = Float::with_val(bits, inv.big_g.pow(24u32));
    let via_big = (Float::with_val(bits, &g24 * 4u32) - 1u32).pow(3u32) / (g24 * 27u32);
    let s24 = Float::with_val(bits, inv.small_g.pow(24u32));
    let via_small = (Float::with_val(bits, &s24 * 4u32) + 1u32).pow(3u32) / (s24 * 27u32);
    let p = Float::with_val(bits, m.k() * m.kprime()).square();
    let via_k = (ctx.one() - &p).pow(3u32) * 4u32 / (p.square() * 27u32);
    [via_big, via_small, via_k]
}

/// Klein's `J`; all three forms must agree to `10^-(digits-4)` relative.
pub fn klein_j(m: &Modulus, ctx: &PrecisionContext) -> Result<Float> {
    let [a, b, c] = klein_j_forms(m, ctx);
    let tol = Float::with_val(ctx.bits(), c.abs_ref()) * ctx.tolerance(4);
    for (name, other) in [("G", &a), ("g", &b)] {
        let diff = Float::with_val(ctx.bits(), other - &c).abs();
        if diff > tol {
            return Err(Error::Consistency(format!(
                "J via {name} differs from the k-form by {}",
                diff.to_f64()
            )));
        }
    }
    Ok(c)
}
