//! The slow classical series: Gregory's arctangent series, the Basel sum
//! and Brouncker's continued fraction.

use rug::Float;

use super::{CoefficientFamily, EvaluationReport, SeriesSpec};
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;

/// `log10` of the number of terms needed for absolute error `10^-digits`.
pub fn estimated_terms_log10(spec: &SeriesSpec, digits: f64) -> Result<f64> {
    match spec.family {
        // tail after n terms is below 1/(2n+1)
        CoefficientFamily::Gregory => Ok(digits - 2f64.log10()),
        // tail after n terms is below 1/n
        CoefficientFamily::Basel => Ok(digits),
        // convergent n is 1/(Gregory partial sum n+1): error ~ 8/(pi^2 n)
        CoefficientFamily::Brouncker => Ok(digits + (8.0 / std::f64::consts::PI.powi(2)).log10()),
        _ => {
            let d = super::digits_per_term(spec)?;
            Ok((digits / d).max(1.0).log10())
        }
    }
}

fn lin(spec: &SeriesSpec, ctx: &PrecisionContext) -> Result<(Float, Float)> {
    Ok((spec.a.eval(ctx)?, spec.b.eval(ctx)?))
}

/// Brouncker convergent with `depth` partial numerators:
/// `1 + A^2/(2 + (A+B)^2/(2 + ... (A+(depth-1)B)^2/2))`.
fn brouncker(depth: u64, a: &Float, b: &Float, ctx: &PrecisionContext) -> Float {
    let bits = ctx.bits();
    if depth == 0 {
        return ctx.one();
    }
    let mut t = ctx.int(2);
    for j in (1..depth).rev() {
        let num = (Float::with_val(bits, b * j) + a).square();
        t = num / t + 2u32;
    }
    Float::with_val(bits, a.square_ref()) / t + 1u32
}

fn gregory_like(spec: &SeriesSpec, n: u64, ctx: &PrecisionContext) -> Result<(Float, Float)> {
    let bits = ctx.bits();
    let (a, b) = lin(spec, ctx)?;
    let mut sum = ctx.zero();
    let mut d = a.clone();
    for j in 0..n {
        let term = match spec.family {
            CoefficientFamily::Basel => Float::with_val(bits, d.square_ref()).recip(),
            _ => Float::with_val(bits, d.recip_ref()),
        };
        if spec.alternating && j % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        d += &b;
    }
    let bound = match spec.family {
        // next term
        CoefficientFamily::Gregory => d.recip(),
        // sum_{j>=n} 1/(A+jB)^2 <= 1/(B (A + (n-1)B))
        _ => (Float::with_val(bits, &d - &b) * &b).recip(),
    };
    Ok((sum, bound))
}

pub fn evaluate_fixed(spec: &SeriesSpec, n: u64, ctx: &PrecisionContext) -> Result<EvaluationReport> {
    let (value, error_bound) = match spec.family {
        CoefficientFamily::Gregory | CoefficientFamily::Basel => gregory_like(spec, n, ctx)?,
        CoefficientFamily::Brouncker => {
            let (a, b) = lin(spec, ctx)?;
            let v = brouncker(n, &a, &b, ctx);
            let w = brouncker(n + 1, &a, &b, ctx);
            let bound = Float::with_val(ctx.bits(), &v - &w).abs();
            (v, bound)
        }
        _ => return Err(Error::Unsupported(format!("{} is not elementary", spec.key))),
    };
    Ok(EvaluationReport {
        value,
        terms_used: n,
        error_bound,
        digits_per_term: 0.0,
    })
}

/// Evaluates with at most `budget` terms, aiming at absolute error `tol`.
/// The report's bound says what was reached.
pub fn evaluate(
    spec: &SeriesSpec,
    tol: &Float,
    budget: u64,
    ctx: &PrecisionContext,
) -> Result<EvaluationReport> {
    let digits = -tol.clone().log10().to_f64();
    let want = estimated_terms_log10(spec, digits)?;
    let n = if want >= (budget as f64).log10() {
        budget
    } else {
        (10f64.powf(want).ceil() as u64).max(1)
    };
    match spec.family {
        CoefficientFamily::Brouncker => {
            // doubling depth until two successive depths agree
            let (a, b) = lin(spec, ctx)?;
            let mut depth = 1u64;
            let mut prev = brouncker(depth, &a, &b, ctx);
            loop {
                let next_depth = (depth * 2).min(budget);
                let cur = brouncker(next_depth, &a, &b, ctx);
                let diff = Float::with_val(ctx.bits(), &cur - &prev).abs();
                if diff <= *tol || next_depth == budget || next_depth == depth {
                    return Ok(EvaluationReport {
                        value: cur,
                        terms_used: next_depth,
                        error_bound: diff,
                        digits_per_term: 0.0,
                    });
                }
                depth = next_depth;
                prev = cur;
            }
        }
        _ => evaluate_fixed(spec, n, ctx),
    }
}
