//! Generalized hypergeometric series with rational parameters.

use rug::ops::Pow;
use rug::{Float, Rational};

use crate::error::{domain, Result};
use crate::precision::PrecisionContext;

/// Above this many terms the argument is considered too close to |z| = 1.
const MAX_TERMS: f64 = 5.0e6;
/// Above this many terms a transformation is tried before summing.
const SLOW_TERMS: f64 = 2.0e4;

fn is_non_positive_integer(q: &Rational) -> bool {
    *q.denom() == 1 && *q.numer() <= 0
}

/// Past this index the coefficient ratio is monotone.
fn monotone_from(upper: &[Rational], lower: &[Rational]) -> u64 {
    let spread: f64 = upper.iter().chain(lower).map(|p| p.to_f64().abs()).sum();
    (2.0 * spread).ceil() as u64 + 2
}

/// Rough number of terms direct summation needs at `|z|`.
fn direct_terms(upper: &[Rational], lower: &[Rational], abs_z: &Float, ctx: &PrecisionContext) -> f64 {
    let ln = abs_z.to_f64().ln();
    if ln >= 0.0 {
        return f64::INFINITY;
    }
    monotone_from(upper, lower) as f64 + f64::from(ctx.digits() + ctx.guard()) * std::f64::consts::LN_10 / -ln
}

/// `pFq(upper; lower; z)` for `p = q + 1`, `|z| < 1`.
///
/// Term ratios are formed exactly in rationals. Once `n` is past every
/// parameter's magnitude, the coefficient ratio `r(n)` is monotone in `n`
/// and tends to 1, so every later term ratio is at most
/// `rho = max(r(n), 1) |z|`, and the tail after term `n` is bounded by
/// `|t_n| rho / (1 - rho)`.
fn hyp_series(upper: &[Rational], lower: &[Rational], z: &Float, ctx: &PrecisionContext) -> Result<Float> {
    debug_assert_eq!(upper.len(), lower.len() + 1);
    if let Some(b) = lower.iter().find(|b| is_non_positive_integer(b)) {
        return domain(format!("lower parameter {b} is a non-positive integer"));
    }
    let bits = ctx.bits();
    let z = Float::with_val(bits, z);
    let abs_z = Float::with_val(bits, z.abs_ref());
    if abs_z >= 1 {
        return domain(format!("|z| = {} is outside the disc |z| < 1", abs_z.to_f64()));
    }
    if z.is_zero() {
        return Ok(ctx.one());
    }
    let eps = ctx.epsilon();
    let monotone_from = monotone_from(upper, lower);
    if direct_terms(upper, lower, &abs_z, ctx) > MAX_TERMS {
        return domain("argument too close to the unit circle for direct summation");
    }

    let mut term = ctx.one();
    let mut sum = ctx.one();
    let mut n: u64 = 0;
    loop {
        let mut ratio = Rational::from(1);
        for a in upper {
            ratio *= Rational::from(a + n);
        }
        for b in lower {
            ratio /= Rational::from(b + n);
        }
        ratio /= n + 1;
        if ratio == 0 {
            // terminating series
            return Ok(sum);
        }
        term *= &z;
        term *= &ratio;
        sum += &term;
        n += 1;
        if n >= monotone_from {
            let next = {
                let mut r = Rational::from(1);
                for a in upper {
                    r *= Rational::from(a + n);
                }
                for b in lower {
                    r /= Rational::from(b + n);
                }
                r /= n + 1;
                r.abs()
            };
            let coef = if next > 1 { ctx.rational(&next) } else { ctx.one() };
            let rho = coef * &abs_z;
            if rho < 1 {
                let tail = Float::with_val(bits, term.abs_ref()) * &rho / (ctx.one() - &rho);
                let scale = Float::with_val(bits, sum.abs_ref()).max(&ctx.one());
                if tail < Float::with_val(bits, &eps * &scale) {
                    return Ok(sum);
                }
            }
        }
        if n as f64 > MAX_TERMS {
            return domain("hypergeometric series did not converge within the term budget");
        }
    }
}

fn gamma(q: &Rational, ctx: &PrecisionContext) -> Float {
    ctx.rational(q).gamma()
}

/// Gauss: `2F1(a,b;c;1) = G(c) G(c-a-b) / (G(c-a) G(c-b))` for `c - a - b > 0`.
fn hyp_2f1_at_one(a: &Rational, b: &Rational, c: &Rational, ctx: &PrecisionContext) -> Result<Float> {
    let excess = Rational::from(c - a) - b;
    if excess <= 0 {
        return domain("2F1 diverges at z = 1 unless c - a - b > 0");
    }
    let ca = Rational::from(c - a);
    let cb = Rational::from(c - b);
    if [&ca, &cb].iter().any(|q| is_non_positive_integer(q)) {
        return Ok(ctx.zero());
    }
    Ok(gamma(c, ctx) * gamma(&excess, ctx) / (gamma(&ca, ctx) * gamma(&cb, ctx)))
}

/// Watson: `3F2(a,b,c; (a+b+1)/2, 2c; 1)`, tried over every arrangement of
/// the parameters.
fn hyp_3f2_at_one(upper: [&Rational; 3], lower: [&Rational; 2], ctx: &PrecisionContext) -> Result<Float> {
    let excess = Rational::from(lower[0] + lower[1]) - upper[0] - upper[1] - upper[2];
    if excess <= 0 {
        return domain("3F2 diverges at z = 1 unless sum(lower) - sum(upper) > 0");
    }
    let half = Rational::from((1, 2));
    for c_idx in 0..3 {
        let c = upper[c_idx];
        let ab: Vec<&Rational> = (0..3).filter(|&i| i != c_idx).map(|i| upper[i]).collect();
        let (a, b) = (ab[0], ab[1]);
        let mid = (Rational::from(a + b) + 1u32) / 2u32;
        let two_c = Rational::from(c * 2u32);
        let matches = (*lower[0] == mid && *lower[1] == two_c) || (*lower[1] == mid && *lower[0] == two_c);
        if !matches {
            continue;
        }
        let g = |q: Rational| gamma(&q, ctx);
        let num = ctx.pi().sqrt()
            * g(Rational::from(c + &half))
            * g(mid.clone())
            * g(c - (Rational::from(a + b) - 1u32) / 2u32);
        let den = g((Rational::from(a) + 1u32) / 2u32)
            * g((Rational::from(b) + 1u32) / 2u32)
            * g(c - (Rational::from(a) - 1u32) / 2u32)
            * g(c - (Rational::from(b) - 1u32) / 2u32);
        return Ok(num / den);
    }
    domain("no closed form implemented for this 3F2 at z = 1")
}

/// `2F1(a, b; c; z)` for `|z| < 1`, plus the point `z = 1` when `c - a - b > 0`
/// and `z = -1`. Arguments where plain summation would be slow go through
/// Pfaff's transformation (`z < -1/2`) or the `1 - z` connection formula
/// (`z` near 1, `c - a - b` not an integer).
pub fn hyp_2f1(a: &Rational, b: &Rational, c: &Rational, z: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if *z == 1 {
        if is_non_positive_integer(c) {
            return domain(format!("lower parameter {c} is a non-positive integer"));
        }
        return hyp_2f1_at_one(a, b, c, ctx);
    }
    let upper = [a.clone(), b.clone()];
    let lower = [c.clone()];
    let bits = ctx.bits();
    let abs_z = Float::with_val(bits, z.abs_ref());
    if abs_z > 1 || is_non_positive_integer(c) || direct_terms(&upper, &lower, &abs_z, ctx) <= SLOW_TERMS {
        return hyp_series(&upper, &lower, z, ctx);
    }
    if *z < -0.5f64 {
        // 2F1(a,b;c;z) = (1-z)^-a 2F1(a, c-b; c; z/(z-1)), and z/(z-1) is in [1/3, 1/2)
        let one_minus = Float::with_val(bits, 1u32 - z);
        let w = -Float::with_val(bits, z / &one_minus);
        let cb = Rational::from(c - b);
        let scale = one_minus.pow(&ctx.rational(&Rational::from(-a)));
        return Ok(scale * hyp_series(&[a.clone(), cb], &lower, &w, ctx)?);
    }
    let excess = Rational::from(c - a) - b;
    if *z > 0.5f64 && *excess.denom() != 1 {
        return connection(a, b, c, &excess, z, ctx);
    }
    hyp_series(&upper, &lower, z, ctx)
}

/// The `1 - z` connection formula for non-integer `c - a - b`:
/// `G(c)G(c-a-b)/(G(c-a)G(c-b)) F(a,b;a+b-c+1;1-z)
///  + (1-z)^(c-a-b) G(c)G(a+b-c)/(G(a)G(b)) F(c-a,c-b;c-a-b+1;1-z)`.
fn connection(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    excess: &Rational,
    z: &Float,
    ctx: &PrecisionContext,
) -> Result<Float> {
    let bits = ctx.bits();
    let w = Float::with_val(bits, 1u32 - z);
    let ca = Rational::from(c - a);
    let cb = Rational::from(c - b);
    let neg = Rational::from(-excess);
    // 1/G at a pole is zero
    let rgamma = |q: &Rational| {
        if is_non_positive_integer(q) {
            ctx.zero()
        } else {
            ctx.one() / gamma(q, ctx)
        }
    };
    let first = gamma(c, ctx) * gamma(excess, ctx) * rgamma(&ca) * rgamma(&cb);
    let first = if first.is_zero() {
        first
    } else {
        first * hyp_series(&[a.clone(), b.clone()], &[Rational::from(&neg + 1u32)], &w, ctx)?
    };
    let second = gamma(c, ctx) * gamma(&neg, ctx) * rgamma(a) * rgamma(b);
    let second = if second.is_zero() {
        second
    } else {
        let power = Float::with_val(bits, &w).pow(&ctx.rational(excess));
        second * power * hyp_series(&[ca, cb], &[Rational::from(excess + 1u32)], &w, ctx)?
    };
    Ok(first + second)
}

/// `(a, b)` with `3F2(2a, 2b, a+b; 2a+2b, a+b+1/2; z) = 2F1(a, b; a+b+1/2; z)^2`.
fn clausen_pair(upper: [&Rational; 3], lower: [&Rational; 2]) -> Option<(Rational, Rational)> {
    let half = Rational::from((1, 2));
    (0..3).find_map(|s_idx| {
        let s = upper[s_idx];
        let pq: Vec<&Rational> = (0..3).filter(|&i| i != s_idx).map(|i| upper[i]).collect();
        let two_s = Rational::from(s * 2u32);
        if Rational::from(pq[0] + pq[1]) != two_s {
            return None;
        }
        let top = Rational::from(s + &half);
        let ok = (*lower[0] == two_s && *lower[1] == top) || (*lower[1] == two_s && *lower[0] == top);
        ok.then(|| (Rational::from(pq[0] / 2u32), Rational::from(pq[1] / 2u32)))
    })
}

/// `3F2(a1, a2, a3; b1, b2; z)` for `|z| < 1`, plus `z = 1` for
/// Watson-type parameters.
pub fn hyp_3f2(
    upper: [&Rational; 3],
    lower: [&Rational; 2],
    z: &Float,
    ctx: &PrecisionContext,
) -> Result<Float> {
    if *z == 1 {
        if let Some(b) = lower.iter().find(|b| is_non_positive_integer(b)) {
            return domain(format!("lower parameter {b} is a non-positive integer"));
        }
        return hyp_3f2_at_one(upper, lower, ctx);
    }
    let up: Vec<Rational> = upper.iter().map(|q| (*q).clone()).collect();
    let lo: Vec<Rational> = lower.iter().map(|q| (*q).clone()).collect();
    let abs_z = Float::with_val(ctx.bits(), z.abs_ref());
    if abs_z <= 1 && direct_terms(&up, &lo, &abs_z, ctx) > SLOW_TERMS {
        // too slow to sum near the unit circle: square the Clausen 2F1 instead
        if let Some((a, b)) = clausen_pair(upper, lower) {
            let c = Rational::from(&a + &b) + Rational::from((1, 2));
            return Ok(hyp_2f1(&a, &b, &c, z, ctx)?.square());
        }
    }
    hyp_series(&up, &lo, z, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::{ellip_k, Modulus};

    fn q(n: i32, d: i32) -> Rational {
        Rational::from((n, d))
    }

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::new(d).unwrap()
    }

    #[test]
    fn zero_argument() {
        let c = ctx(30);
        let v = hyp_2f1(&q(7, 3), &q(-5, 2), &q(11, 4), &c.zero(), &c).unwrap();
        assert_eq!(v, 1);
        let w = hyp_3f2(
            [&q(1, 2), &q(1, 3), &q(2, 1)],
            [&q(5, 1), &q(1, 7)],
            &c.zero(),
            &c,
        )
        .unwrap();
        assert_eq!(w, 1);
    }

    #[test]
    fn elliptic_k_form() {
        let c = ctx(60);
        let m = Modulus::from_f64(0.4, &c).unwrap();
        let z = m.k().clone().square();
        let f = hyp_2f1(&q(1, 2), &q(1, 2), &q(1, 1), &z, &c).unwrap();
        let lhs = f * c.pi() / 2u32;
        assert!((lhs - ellip_k(&m, &c)).abs() < c.tolerance(4));
    }

    #[test]
    fn kummer_quadratic_transformation() {
        let c = ctx(60);
        let (a, b) = (q(1, 8), q(1, 8));
        let top = Rational::from(&a + &b) + q(1, 2);
        let z = c.float(0.1);
        let w = Float::with_val(c.bits(), &z * 4u32) * (c.one() - &z);
        let lhs = hyp_2f1(
            &Rational::from(&a * 2u32),
            &Rational::from(&b * 2u32),
            &top,
            &z,
            &c,
        )
        .unwrap();
        let rhs = hyp_2f1(&a, &b, &top, &w, &c).unwrap();
        assert!((lhs - rhs).abs() < c.tolerance(4));
    }

    #[test]
    fn clausen_product() {
        let c = ctx(60);
        let m = Modulus::from_f64(0.3, &c).unwrap();
        let z = (Float::with_val(c.bits(), m.k() * m.kprime()) * 2u32).square();
        let f = hyp_2f1(&q(1, 4), &q(1, 4), &q(1, 1), &z, &c).unwrap();
        let g = hyp_3f2([&q(1, 2), &q(1, 2), &q(1, 2)], [&q(1, 1), &q(1, 1)], &z, &c).unwrap();
        assert!((f.square() - g).abs() < c.tolerance(4));
    }

    #[test]
    fn terminating_series() {
        let c = ctx(30);
        // 2F1(-2, 1; 1; z) = (1 - z)^2
        let z = c.float(0.25);
        let v = hyp_2f1(&q(-2, 1), &q(1, 1), &q(1, 1), &z, &c).unwrap();
        assert!((v - 0.5625f64).abs() < c.tolerance(0));
    }

    #[test]
    fn domain_errors() {
        let c = ctx(30);
        assert!(hyp_2f1(&q(1, 2), &q(1, 2), &q(1, 1), &c.float(1.5), &c).is_err());
        assert!(hyp_2f1(&q(1, 2), &q(1, 2), &q(-1, 1), &c.float(0.5), &c).is_err());
        // c - a - b = 0: divergent at 1
        assert!(hyp_2f1(&q(1, 2), &q(1, 2), &q(1, 1), &c.one(), &c).is_err());
    }

    #[test]
    fn values_at_one() {
        let c = ctx(50);
        // 2F1(1/4,1/4;1;1) = G(1/2) / G(3/4)^2
        let v = hyp_2f1(&q(1, 4), &q(1, 4), &q(1, 1), &c.one(), &c).unwrap();
        let expected = c.pi().sqrt() / c.float(0.75).gamma().square();
        assert!((v - expected).abs() < c.tolerance(0));
        // 3F2(1/2,1/2,1/2;1,1;1) = pi / G(3/4)^4
        let w = hyp_3f2([&q(1, 2), &q(1, 2), &q(1, 2)], [&q(1, 1), &q(1, 1)], &c.one(), &c).unwrap();
        let expected = c.pi() / c.float(0.75).gamma().square().square();
        assert!((w - expected).abs() < c.tolerance(0));
    }

    #[test]
    fn watson_matches_slow_partial_sums() {
        // 3F2(1/4, 3/4, 1/2; 1, 1; 1) at low precision against summation with
        // algebraic tail ~ n^(-3/2): compare to ~1e-6.
        let c = ctx(20);
        let w = hyp_3f2([&q(1, 4), &q(3, 4), &q(1, 2)], [&q(1, 1), &q(1, 1)], &c.one(), &c).unwrap();
        let mut term = 1.0f64;
        let mut sum = 1.0f64;
        let terms = 4_000_000u64;
        for n in 0..terms {
            let nf = n as f64;
            term *= (0.25 + nf) * (0.75 + nf) * (0.5 + nf) / ((1.0 + nf).powi(3));
            sum += term;
        }
        // tail ~ C * N^(-1/2) with term ~ C' n^(-3/2)
        let tail = 2.0 * term * terms as f64;
        assert!(
            (w.to_f64() - sum - tail).abs() < 1e-5,
            "{} vs {}",
            w.to_f64(),
            sum + tail
        );
    }

    #[test]
    fn minus_one_via_pfaff() {
        // 2F1(1/2,1/2;1;-1) = (2/pi) K(m = -1) = (2/pi) K(m = 1/2) / sqrt 2
        let c = ctx(60);
        let v = hyp_2f1(&q(1, 2), &q(1, 2), &q(1, 1), &c.float(-1.0), &c).unwrap();
        let k = ellip_k(&Modulus::self_dual(&c), &c);
        let expected = k * 2u32 / c.pi() / c.int(2).sqrt();
        assert!((v - expected).abs() < c.tolerance(2));
    }

    #[test]
    fn near_one_via_connection() {
        // 2F1(1/4,1/4;1;(2kk')^2) = (2/pi) K(k) just below the self-dual point,
        // where plain summation would need ~10^11 terms
        let c = ctx(60);
        let k = c.float(0.5).sqrt() - c.ten_pow_neg(5);
        let m = Modulus::from_k(&k, &c).unwrap();
        let arg = (Float::with_val(c.bits(), m.k() * m.kprime()) * 2u32).square();
        let lhs = hyp_2f1(&q(1, 4), &q(1, 4), &q(1, 1), &arg, &c).unwrap();
        let expected = ellip_k(&m, &c) * 2u32 / c.pi();
        assert!((lhs - expected).abs() < c.tolerance(4));
    }

    #[test]
    fn clausen_near_unit_circle() {
        let c = ctx(50);
        let z = c.one() - c.ten_pow_neg(6);
        let f = hyp_2f1(&q(1, 8), &q(3, 8), &q(1, 1), &z, &c).unwrap();
        let g = hyp_3f2([&q(1, 4), &q(3, 4), &q(1, 2)], [&q(1, 1), &q(1, 1)], &z, &c).unwrap();
        assert!((f.square() - g).abs() < c.tolerance(2));
        assert!(clausen_pair([&q(1, 2), &q(1, 3), &q(2, 1)], [&q(5, 1), &q(1, 7)]).is_none());
    }
}
