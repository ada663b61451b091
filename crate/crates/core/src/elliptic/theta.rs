//! Jacobi theta functions at a real nome and the nome <-> modulus maps.

use rug::Float;

use super::{ellip_k, Modulus};
use crate::error::{domain, Result};
use crate::precision::PrecisionContext;

/// Hard cap on theta terms; only reachable for q extremely close to 1.
const MAX_THETA_TERMS: u64 = 10_000_000;

/// `(theta_2, theta_3, theta_4)` at one nome.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaTriple {
    pub t2: Float,
    pub t3: Float,
    pub t4: Float,
}

impl ThetaTriple {
    /// `theta_3^4 - theta_2^4 - theta_4^4` (Jacobi's quartic identity).
    pub fn quartic_defect(&self) -> Float {
        let p = |x: &Float| x.clone().square().square();
        p(&self.t3) - p(&self.t2) - p(&self.t4)
    }
}

/// Sums `theta_2, theta_3, theta_4` at `0 < q < 1`.
///
/// Terms are dropped once `q^(n^2)` (resp. `q^(n(n+1))`) falls below
/// `10^-(digits+guard)`; successive terms shrink by `q^(2n+1)`, so the
/// tail is bounded by the first dropped term over `1 - q`.
pub fn theta(q: &Float, ctx: &PrecisionContext) -> Result<ThetaTriple> {
    if !q.is_finite() || *q <= 0 || *q >= 1 {
        return domain(format!("theta needs 0 < q < 1, got {}", q.to_f64()));
    }
    let bits = ctx.bits();
    let q = Float::with_val(bits, q);
    let one_minus_q = ctx.one() - &q;
    let cutoff = ctx.epsilon() * &one_minus_q;

    // theta_3 and theta_4 share q^(n^2).
    let q2 = q.clone().square();
    let mut power = q.clone(); // q^(n^2)
    let mut step = q.clone(); // q^(2n-1)
    let mut s3 = ctx.zero();
    let mut s4 = ctx.zero();
    let mut n: u64 = 1;
    while power >= cutoff {
        s3 += &power;
        if n % 2 == 1 {
            s4 -= &power;
        } else {
            s4 += &power;
        }
        n += 1;
        if n > MAX_THETA_TERMS {
            return domain("theta series needs too many terms; q is too close to 1");
        }
        step *= &q2;
        power *= &step;
    }
    let t3 = s3 * 2u32 + 1u32;
    let t4 = s4 * 2u32 + 1u32;

    // theta_2 = 2 q^(1/4) sum_{n>=0} q^(n(n+1))
    let mut power = ctx.one(); // q^(n(n+1))
    let mut step = ctx.one(); // q^(2n)
    let mut s2 = ctx.zero();
    while power >= cutoff {
        s2 += &power;
        step *= &q2;
        power *= &step;
    }
    let t2 = s2 * q.root(4) * 2u32;
    Ok(ThetaTriple { t2, t3, t4 })
}

/// `q = exp(-pi K'/K)`.
pub fn nome(m: &Modulus, ctx: &PrecisionContext) -> Float {
    let k = ellip_k(m, ctx);
    let kc = ellip_k(&m.complement(), ctx);
    let ratio = kc / k;
    (-(ratio * ctx.pi())).exp()
}

/// Inverse of [`nome`]: `k = theta_2^2/theta_3^2`, `k' = theta_4^2/theta_3^2`.
pub fn modulus_from_nome(q: &Float, ctx: &PrecisionContext) -> Result<Modulus> {
    let t = theta(q, ctx)?;
    let t3sq = t.t3.square();
    let k = t.t2.square() / &t3sq;
    let kprime = t.t4.square() / &t3sq;
    Modulus::from_pair(k, kprime)
}
