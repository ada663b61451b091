//! Arithmetic-geometric mean and the complete elliptic integrals built on it.

use rug::Float;

use super::Modulus;
use crate::error::{domain, Result};
use crate::precision::PrecisionContext;

/// Limit of the AGM iteration together with `sum_{n>=0} 2^(n-1) c_n^2`,
/// where `c_0` is supplied by the caller and `c_{n+1} = (a_n - b_n)/2`.
struct AgmRun {
    mean: Float,
    side_sum: Float,
}

fn agm_run(a0: &Float, b0: &Float, c0_sq: Float, ctx: &PrecisionContext) -> AgmRun {
    let bits = ctx.bits();
    let eps = ctx.epsilon();
    let mut a = Float::with_val(bits, a0);
    let mut b = Float::with_val(bits, b0);
    let mut weight = ctx.float(0.5);
    let mut side_sum = c0_sq * &weight;
    loop {
        let gap = Float::with_val(bits, &a - &b).abs();
        if gap <= Float::with_val(bits, &eps * &a) {
            break;
        }
        let c = Float::with_val(bits, &a - &b) / 2u32;
        let next_a = Float::with_val(bits, &a + &b) / 2u32;
        b = Float::with_val(bits, &a * &b).sqrt();
        a = next_a;
        weight *= 2u32;
        side_sum += c.square() * &weight;
    }
    AgmRun {
        mean: (a + b) / 2u32,
        side_sum,
    }
}

/// Common limit of `a_{n+1} = (a_n + b_n)/2`, `b_{n+1} = sqrt(a_n b_n)`.
///
/// Stops once `|a_n - b_n| <= 10^-(digits+guard) * a_n`.
pub fn agm(a: &Float, b: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if !(a.is_finite() && b.is_finite()) || *a <= 0 || *b <= 0 {
        return domain("agm requires positive finite arguments");
    }
    Ok(agm_run(a, b, ctx.zero(), ctx).mean)
}

/// `K(k) = pi / (2 agm(1, k'))`.
pub fn ellip_k(m: &Modulus, ctx: &PrecisionContext) -> Float {
    let run = agm_run(&ctx.one(), m.kprime(), ctx.zero(), ctx);
    ctx.pi() / (run.mean * 2u32)
}

/// `E(k) = K(k) (1 - sum 2^(n-1) c_n^2)` with `c_0 = k`.
pub fn ellip_e(m: &Modulus, ctx: &PrecisionContext) -> Float {
    ellip_ke(m, ctx).1
}

/// `(K(k), E(k))` from a single AGM run.
pub fn ellip_ke(m: &Modulus, ctx: &PrecisionContext) -> (Float, Float) {
    let c0_sq = m.k().clone().square();
    let run = agm_run(&ctx.one(), m.kprime(), c0_sq, ctx);
    let k = ctx.pi() / (run.mean * 2u32);
    let e = Float::with_val(ctx.bits(), &k * (ctx.one() - run.side_sum));
    (k, e)
}

/// `K` for a raw modulus value, accepting the limit point `k = 0` (`pi/2`).
pub fn ellip_k_of(k: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if k.is_zero() {
        return Ok(ctx.pi() / 2u32);
    }
    Ok(ellip_k(&Modulus::from_k(k, ctx)?, ctx))
}

/// `E` for a raw modulus value on the closed interval: `E(0) = pi/2`, `E(1) = 1`.
pub fn ellip_e_of(k: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if k.is_zero() {
        return Ok(ctx.pi() / 2u32);
    }
    if *k == 1 {
        return Ok(ctx.one());
    }
    Ok(ellip_e(&Modulus::from_k(k, ctx)?, ctx))
}

/// `dK/dk = (E - k'^2 K) / (k k'^2)`.
pub fn d_ellip_k(m: &Modulus, ctx: &PrecisionContext) -> Float {
    let (k_int, e_int) = ellip_ke(m, ctx);
    let kp2 = m.kprime().clone().square();
    let num = e_int - Float::with_val(ctx.bits(), &kp2 * &k_int);
    num / (kp2 * m.k())
}

/// `dE/dk = (E - K) / k`.
pub fn d_ellip_e(m: &Modulus, ctx: &PrecisionContext) -> Float {
    let (k_int, e_int) = ellip_ke(m, ctx);
    (e_int - k_int) / m.k()
}

/// `K E' + E K' - K K' - pi/2`, zero by Legendre's relation.
pub fn legendre_defect(m: &Modulus, ctx: &PrecisionContext) -> Float {
    let (k, e) = ellip_ke(m, ctx);
    let (kc, ec) = ellip_ke(&m.complement(), ctx);
    let bits = ctx.bits();
    let lhs =
        Float::with_val(bits, &k * &ec) + Float::with_val(bits, &e * &kc) - Float::with_val(bits, &k * &kc);
    lhs - ctx.pi() / 2u32
}

/// pi by the Gauss-Legendre (Salamin-Brent) iteration: the AGM at
/// `k = 1/sqrt(2)` combined with Legendre's relation. Independent of the
/// series machinery.
pub fn pi_agm(ctx: &PrecisionContext) -> Float {
    let kp = ctx.float(0.5).sqrt();
    // c_0^2 = k^2 = 1/2
    let run = agm_run(&ctx.one(), &kp, ctx.float(0.5), ctx);
    let denom = ctx.int(2) - run.side_sum * 4u32;
    run.mean.square() * 4u32 / denom
}
