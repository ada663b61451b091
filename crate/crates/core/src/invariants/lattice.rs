//! The punctured lattice sum `S(r) = sum' (-1)^m / (m^2 + r n^2)` and its
//! closed forms in terms of class invariants.
//!
//! Rows are summed over `m` first. Row `n = 0` is `2 sum_{m>=1} (-1)^m/m^2
//! = -pi^2/6`; for `n != 0`, `sum_m (-1)^m/(m^2 + a^2) = pi/(a sinh(pi a))`
//! with `a = |n| sqrt r`. Hence
//!
//! ```text
//! S(r) = -pi^2/6 + (2 pi / sqrt r) sum_{n>=1} 1/(n sinh(pi n sqrt r))
//! ```

use rug::ops::Pow;
use rug::{Float, Rational};

use super::{class_invariants, lambda_star};
use crate::error::{domain, Result};
use crate::precision::PrecisionContext;

/// `S(r)` by the row reduction above.
pub fn lattice_sum_g(r: &Rational, ctx: &PrecisionContext) -> Result<Float> {
    if *r <= 0 {
        return domain(format!("lattice sum needs r > 0, got {r}"));
    }
    let bits = ctx.bits();
    let pi = ctx.pi();
    let root = ctx.sqrt_rational(r);
    let step = Float::with_val(bits, &pi * &root);
    let eps = ctx.epsilon();
    let mut rows = ctx.zero();
    let mut n: u32 = 1;
    loop {
        let arg = Float::with_val(bits, &step * n);
        let term = ctx.one() / (arg.sinh() * n);
        let small = term < eps;
        rows += term;
        // later terms shrink by at least e^(-pi sqrt r) each
        if small {
            break;
        }
        n += 1;
    }
    let zero_row = -Float::with_val(bits, pi.square_ref()) / 6u32;
    Ok(zero_row + rows * pi * 2u32 / root)
}

/// `-(pi/sqrt r) log(2 g_r^4)` with `g_r` from `lambda*(r)`.
pub fn lattice_sum_g_closed_form(r: &Rational, ctx: &PrecisionContext) -> Result<Float> {
    let m = lambda_star(r, ctx)?;
    let g = class_invariants(&m, ctx).small_g;
    let inner = g.pow(4u32) * 2u32;
    Ok(-(ctx.pi() / ctx.sqrt_rational(r)) * inner.ln())
}

/// `S(2r) - 4 S(8r)`.
pub fn lattice_sum_k(r: &Rational, ctx: &PrecisionContext) -> Result<Float> {
    let two = Rational::from(r * 2u32);
    let eight = Rational::from(r * 8u32);
    Ok(lattice_sum_g(&two, ctx)? - lattice_sum_g(&eight, ctx)? * 4u32)
}

/// `-(pi/sqrt(2r)) log(k/4)` with `k = lambda*(2r)`.
///
/// The modulus belongs to `2r`, the same discriminant as the sums; with
/// `lambda*(r)` the identity fails already at `r = 1`.
pub fn lattice_sum_k_closed_form(r: &Rational, ctx: &PrecisionContext) -> Result<Float> {
    let two = Rational::from(r * 2u32);
    let m = lambda_star(&two, ctx)?;
    let inner = Float::with_val(ctx.bits(), m.k() / 4u32);
    Ok(-(ctx.pi() / ctx.sqrt_rational(&two)) * inner.ln())
}

/// Inverts the `S(2r) - 4 S(8r)` identity: `lambda*(2r) = 4 exp(-sqrt(2r) T / pi)`.
pub fn modulus_from_lattice_sums(r: &Rational, ctx: &PrecisionContext) -> Result<Float> {
    let t = lattice_sum_k(r, ctx)?;
    let two = Rational::from(r * 2u32);
    let e = -(ctx.sqrt_rational(&two) * t) / ctx.pi();
    Ok(e.exp() * 4u32)
}

/// Brute-force truncation `|m|, |n| <= bound` in `f64`, used to validate
/// the row reduction. Each truncated alternating row in `m` is closed by
/// averaging its last two partial sums.
pub fn lattice_sum_brute_force(r: f64, bound: i64) -> f64 {
    let mut total = 0.0f64;
    for n in -bound..=bound {
        let c = r * (n * n) as f64;
        let mut row = 0.0f64;
        let mut last = 0.0f64;
        for m in 1..=bound {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            last = 2.0 * sign / ((m * m) as f64 + c);
            row += last;
        }
        // average of partial sums S_bound and S_{bound-1}
        row -= 0.5 * last;
        if n != 0 {
            row += 1.0 / c;
        }
        total += row;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(50).unwrap()
    }

    #[test]
    fn row_reduction_matches_brute_force() {
        let c = PrecisionContext::new(20).unwrap();
        for r in [2, 6, 10] {
            let reduced = lattice_sum_g(&Rational::from(r), &c).unwrap().to_f64();
            let brute = lattice_sum_brute_force(r as f64, 2000);
            assert!((reduced - brute).abs() < 1e-5, "r = {r}: {reduced} vs {brute}");
        }
    }

    #[test]
    fn r2_closed_form() {
        let c = ctx();
        let s = lattice_sum_g(&Rational::from(2), &c).unwrap();
        let expected = -(c.pi() / c.int(2).sqrt()) * c.int(2).ln();
        assert!((s - expected).abs() < c.tolerance(6));
    }

    #[test]
    fn closed_forms_agree() {
        let c = ctx();
        for r in [1, 3, 6, 58] {
            let r = Rational::from(r);
            let a = lattice_sum_g(&r, &c).unwrap();
            let b = lattice_sum_g_closed_form(&r, &c).unwrap();
            assert!((a - b).abs() < c.tolerance(6));
            let a = lattice_sum_k(&r, &c).unwrap();
            let b = lattice_sum_k_closed_form(&r, &c).unwrap();
            assert!((a - b).abs() < c.tolerance(6));
        }
    }

    #[test]
    fn r1_k_form() {
        let c = ctx();
        let s = lattice_sum_k(&Rational::from(1), &c).unwrap();
        // -(pi/sqrt 2) log((sqrt 2 - 1)/4)
        let inner = (c.int(2).sqrt() - 1u32) / 4u32;
        let expected = -(c.pi() / c.int(2).sqrt()) * inner.ln();
        assert!((s - expected).abs() < c.tolerance(6));
    }

    #[test]
    fn k58_from_lattice_sums() {
        let c = ctx();
        let k = modulus_from_lattice_sums(&Rational::from(29), &c).unwrap();
        let s2 = c.int(2).sqrt();
        let table = (Float::with_val(c.bits(), &s2 - 1u32)).pow(6u32) * (c.int(58).sqrt() * 13u32 - 99u32);
        // exp amplifies the sum's error by sqrt(58)/pi
        assert!((k.clone() - table).abs() < c.tolerance(8));
        let sum = Float::with_val(c.bits(), &k + k.clone().recip());
        let expected = s2 * 198u32 * (c.int(29).sqrt() * 13u32 + 70u32);
        let rel = (sum - &expected).abs() / expected;
        assert!(rel < c.tolerance(8));
    }

    #[test]
    fn r58_g_form_unit() {
        let c = ctx();
        let s = lattice_sum_g(&Rational::from(58), &c).unwrap();
        let u29 = (c.int(29).sqrt() + 5u32) / 2u32;
        let inner = u29.square() * 2u32;
        let expected = -(c.pi() / c.int(58).sqrt()) * inner.ln();
        assert!((s - expected).abs() < c.tolerance(6));
    }

    #[test]
    fn rejects_non_positive() {
        assert!(lattice_sum_g(&Rational::from(0), &ctx()).is_err());
    }
}
