use std::time::Instant;

use rug::Float;

use crate::elliptic::pi_agm;
use crate::error::{Error, Result};
use crate::precision::{decimal_digits, PrecisionContext, MIN_DIGITS};
use crate::series::{
    self, estimated_terms_log10, evaluate_binary_splitting, evaluate_direct, terms_for_digits, SeriesSpec,
};

/// Elementary series are refused above this many estimated terms (log10).
pub const MAX_TERMS_LOG10: f64 = 9.0;

/// Extra places carried by the internal recompute.
const RECOMPUTE_EXTRA: u32 = 20;

/// Fractional digits of pi, checked.
#[derive(Debug, Clone)]
pub struct Computed {
    pub method: String,
    pub fraction: String,
    pub terms: Option<u64>,
    pub seconds: f64,
}

/// Plain digit file: `3.` then the digits, 80 to a line, final newline.
pub fn format_plain(fraction: &str) -> String {
    let mut s = String::with_capacity(fraction.len() + fraction.len() / 80 + 4);
    s.push_str("3.");
    let bytes = fraction.as_bytes();
    for (i, chunk) in bytes.chunks(80).enumerate() {
        if i > 0 {
            s.push('\n');
        }
        s.push_str(std::str::from_utf8(chunk).expect("ascii digits"));
    }
    s.push('\n');
    s
}

fn working_ctx(digits: u32) -> Result<PrecisionContext> {
    PrecisionContext::new(digits.max(MIN_DIGITS))
}

/// pi by `method` to `places` decimals at the precision of `ctx`, with the
/// terms used (none for the AGM) and an absolute error bound on the value.
/// Only the elementary series look at `places`; the rest fill `ctx`.
pub fn pi_digits(method: &str, places: u32, ctx: &PrecisionContext) -> Result<(Float, Option<u64>, Float)> {
    if method == "agm" {
        // quadratic convergence; the guard digits cover rounding
        return Ok((pi_agm(ctx), None, ctx.epsilon()));
    }
    let spec = series::lookup(method)?;
    let bits = ctx.bits();
    if !spec.is_geometric() {
        let places = places.min(ctx.digits());
        let want = estimated_terms_log10(&spec, f64::from(places) + 2.0)?;
        if want > MAX_TERMS_LOG10 {
            return Err(Error::Unsupported(format!(
                "impractical method for requested digits: {method} needs about 10^{want:.0} terms"
            )));
        }
        let tol = ctx.ten_pow_neg(i64::from(places) + 2);
        let budget = 10f64.powf(MAX_TERMS_LOG10) as u64;
        let r = series::evaluate_elementary(&spec, &tol, budget, ctx)?;
        // |d pi / d target| is at most 4 for all three targets
        let bound = Float::with_val(bits, &r.error_bound * 4u32);
        return Ok((spec.target.to_pi(&r.value), Some(r.terms_used), bound));
    }
    let r = if spec.is_rational() {
        let n = terms_for_digits(&spec, ctx)?;
        evaluate_binary_splitting(&spec, n, ctx)?
    } else {
        evaluate_direct(&spec, ctx)?
    };
    if r.error_bound > ctx.epsilon() {
        return Err(Error::Evaluation(format!(
            "{method}: tail bound {:e} above working epsilon",
            r.error_bound.to_f64()
        )));
    }
    // pi = 1/v: the relative error carries over, and v > 0.3
    let bound = Float::with_val(bits, &r.error_bound * 40u32);
    Ok((to_pi(&spec, &r.value), Some(r.terms_used), bound))
}

fn to_pi(spec: &SeriesSpec, v: &Float) -> Float {
    spec.target.to_pi(v)
}

fn fraction(x: &Float, places: u32) -> Result<String> {
    let (int_part, frac) = decimal_digits(x, places as usize)?;
    if int_part != 3 {
        return Err(Error::Verification(format!(
            "integer part came out as {int_part}"
        )));
    }
    Ok(frac)
}

/// `digits` places of pi by `method`. Every printed digit is confirmed:
/// series with a geometric rate are recomputed 20 places deeper and the
/// truncations compared; the slow elementary series are checked by
/// truncating both ends of their error bracket.
pub fn compute_pi(method: &str, digits: u32) -> Result<Computed> {
    let start = Instant::now();
    let ctx = working_ctx(digits)?;
    let (pi, terms, bound) = pi_digits(method, digits, &ctx)?;
    let frac = fraction(&pi, digits)?;

    let elementary = method != "agm" && !series::lookup(method)?.is_geometric();
    if elementary {
        let lo = Float::with_val(ctx.bits(), &pi - &bound);
        let hi = Float::with_val(ctx.bits(), &pi + &bound);
        if fraction(&lo, digits)? != frac || fraction(&hi, digits)? != frac {
            return Err(Error::Verification(format!(
                "{method}: error bracket straddles a digit boundary at {digits} places"
            )));
        }
    } else {
        let deep = working_ctx(digits + RECOMPUTE_EXTRA)?;
        let (pi2, _, _) = pi_digits(method, digits, &deep)?;
        if fraction(&pi2, digits)? != frac {
            return Err(Error::Verification(format!(
                "{method}: recompute at {} digits disagrees",
                digits + RECOMPUTE_EXTRA
            )));
        }
    }
    Ok(Computed {
        method: method.to_string(),
        fraction: frac,
        terms,
        seconds: start.elapsed().as_secs_f64(),
    })
}
