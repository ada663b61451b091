//! Singular values `lambda*(r)` and the singular value function `alpha(r)`.

use rug::{Float, Rational};

use crate::elliptic::{ellip_ke, modulus_from_nome, Modulus};
use crate::error::{domain, Error, Result};
use crate::precision::PrecisionContext;

fn sqrt_of(r: &Rational, ctx: &PrecisionContext) -> Float {
    ctx.sqrt_rational(r)
}

/// `lambda*(r) = k(e^(-pi sqrt r))`, through the theta quotients.
pub fn lambda_star(r: &Rational, ctx: &PrecisionContext) -> Result<Modulus> {
    if *r <= 0 {
        return domain(format!("lambda* needs r > 0, got {r}"));
    }
    let q = (-(ctx.pi() * sqrt_of(r, ctx))).exp();
    modulus_from_nome(&q, ctx)
}

/// `|K'/K - sqrt r|` at `k = lambda*(r)`, the defining property of the
/// singular value, used to cross-check the theta route.
pub fn singular_ratio_defect(r: &Rational, ctx: &PrecisionContext) -> Result<Float> {
    let m = lambda_star(r, ctx)?;
    let (k, _) = ellip_ke(&m, ctx);
    let (kc, _) = ellip_ke(&m.complement(), ctx);
    Ok((kc / k - sqrt_of(r, ctx)).abs())
}

/// `alpha(r) = E'/K - pi/(4K^2)` at `k = lambda*(r)`.
///
/// Also evaluated as `pi/(4K^2) - sqrt(r) (E/K - 1)` (Legendre's relation
/// with `K'/K = sqrt r`); the two must agree to `10^-(digits-4)`.
pub fn alpha(r: &Rational, ctx: &PrecisionContext) -> Result<Float> {
    let bits = ctx.bits();
    let m = lambda_star(r, ctx)?;
    let (k, e) = ellip_ke(&m, ctx);
    let (_, ec) = ellip_ke(&m.complement(), ctx);
    let pi_term = ctx.pi() / (Float::with_val(bits, k.square_ref()) * 4u32);
    let direct = Float::with_val(bits, &ec / &k) - &pi_term;
    let rearranged = Float::with_val(bits, &pi_term) - sqrt_of(r, ctx) * (e / &k - 1u32);
    let diff = Float::with_val(bits, &direct - &rearranged).abs();
    if diff > ctx.tolerance(4) {
        return Err(Error::Consistency(format!(
            "alpha({r}) forms disagree by {}",
            diff.to_f64()
        )));
    }
    Ok(direct)
}

/// `alpha(r) - 1/pi`, which lies in `(0, 16 sqrt(r) e^(-pi sqrt r)]` for `r >= 1`.
pub fn alpha_convergence_check(r: &Rational, ctx: &PrecisionContext) -> Result<Float> {
    if *r < 1 {
        return domain(format!("alpha convergence bound needs r >= 1, got {r}"));
    }
    Ok(alpha(r, ctx)? - ctx.one() / ctx.pi())
}

/// `16 sqrt(r) e^(-pi sqrt r)`.
pub fn alpha_convergence_bound(r: &Rational, ctx: &PrecisionContext) -> Float {
    let s = sqrt_of(r, ctx);
    let decay = (-(ctx.pi() * &s)).exp();
    s * decay * 16u32
}
