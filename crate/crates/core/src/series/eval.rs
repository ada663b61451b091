//! Direct summation with a geometric tail bound.

use rug::Float;

use super::{CoefficientFamily, SeriesSpec};
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;

/// Safety cap for direct summation.
pub const MAX_DIRECT_TERMS: u64 = 10_000_000;

#[derive(Debug, Clone)]
pub struct EvaluationReport {
    pub value: Float,
    pub terms_used: u64,
    pub error_bound: Float,
    /// Mean of `-log10 |t_{n+1}/t_n|` over the last five terms; zero for
    /// the elementary series.
    pub digits_per_term: f64,
}

/// Term generator for the geometric families. Yields `t_0, t_1, ...`.
pub(crate) struct Terms {
    family: CoefficientFamily,
    prefactor: Float,
    step: Float,
    a: Float,
    b: Float,
    /// `step^n a_n`
    running: Float,
    n: u64,
}

impl Terms {
    pub(crate) fn new(spec: &SeriesSpec, ctx: &PrecisionContext) -> Result<Self> {
        if !spec.is_geometric() {
            return Err(Error::Unsupported(format!(
                "{} is not a geometric series",
                spec.key
            )));
        }
        spec.check_convergent(ctx)?;
        Ok(Self {
            family: spec.family,
            prefactor: spec.prefactor(ctx)?,
            step: spec.step_factor(ctx)?,
            a: spec.a.eval(ctx)?,
            b: spec.b.eval(ctx)?,
            running: ctx.one(),
            n: 0,
        })
    }
}

impl Iterator for Terms {
    type Item = Float;

    fn next(&mut self) -> Option<Float> {
        let bits = self.prefactor.prec();
        let n = self.n;
        let lin = Float::with_val(bits, &self.b * n) + &self.a;
        let t = match self.family.ratio_factors(n) {
            Some((num, den)) => {
                let t = Float::with_val(bits, &self.prefactor * &self.running) * lin;
                self.running *= &self.step;
                for f in num.iter().filter(|&&f| f != 1) {
                    self.running *= *f;
                }
                for f in den.iter().filter(|&&f| f != 1) {
                    self.running /= *f;
                }
                t
            }
            None => {
                let c = Float::with_val(bits, &self.family.coeff(n));
                let t = Float::with_val(bits, &self.prefactor * &self.running) * c * lin;
                self.running *= &self.step;
                t
            }
        };
        self.n += 1;
        Some(t)
    }
}

fn log_ratio(next: &Float, prev: &Float) -> f64 {
    if prev.is_zero() || next.is_zero() {
        return f64::NAN;
    }
    let r = Float::with_val(64, next / prev).abs();
    -r.log10().to_f64()
}

/// Sums until the tail bound drops below `10^-(digits+guard)`.
///
/// The bound is geometric: with `r` the largest of the last three term
/// ratios plus 10%, the tail after `t_n` is at most `|t_n| r / (1 - r)`.
pub fn evaluate_direct(spec: &SeriesSpec, ctx: &PrecisionContext) -> Result<EvaluationReport> {
    if !spec.is_geometric() {
        return super::elementary::evaluate(spec, &ctx.epsilon(), MAX_DIRECT_TERMS, ctx).and_then(|r| {
            if r.error_bound > ctx.epsilon() {
                Err(Error::Unsupported(format!(
                    "{}: impractical method for requested digits",
                    spec.key
                )))
            } else {
                Ok(r)
            }
        });
    }
    let eps = ctx.epsilon();
    let mut sum = ctx.zero();
    let mut prev: Option<Float> = None;
    let mut ratios: Vec<f64> = Vec::new();
    let mut logs: Vec<f64> = Vec::new();
    for (n, t) in Terms::new(spec, ctx)?.enumerate() {
        let n = n as u64;
        sum += &t;
        let mag = Float::with_val(ctx.bits(), t.abs_ref());
        if let Some(p) = &prev {
            let l = log_ratio(&mag, p);
            logs.push(l);
            ratios.push(10f64.powf(-l));
        }
        if ratios.len() >= 3 {
            let r = 1.1 * ratios[ratios.len() - 3..].iter().cloned().fold(0.0, f64::max);
            if r < 1.0 {
                let bound = Float::with_val(ctx.bits(), &mag * (r / (1.0 - r)));
                if bound < eps || mag.is_zero() {
                    return Ok(EvaluationReport {
                        value: sum,
                        terms_used: n + 1,
                        error_bound: bound,
                        digits_per_term: mean_tail(&logs, 5),
                    });
                }
            }
        }
        if n + 1 >= MAX_DIRECT_TERMS {
            break;
        }
        prev = Some(mag);
    }
    Err(Error::Evaluation(format!(
        "{}: no convergence within {MAX_DIRECT_TERMS} terms",
        spec.key
    )))
}

fn mean_tail(v: &[f64], k: usize) -> f64 {
    let tail: Vec<f64> = v
        .iter()
        .rev()
        .take(k)
        .cloned()
        .filter(|x| x.is_finite())
        .collect();
    if tail.is_empty() {
        return 0.0;
    }
    tail.iter().sum::<f64>() / tail.len() as f64
}

/// The partial sum of the first `n_terms` terms.
pub fn evaluate_terms(spec: &SeriesSpec, n_terms: u64, ctx: &PrecisionContext) -> Result<EvaluationReport> {
    if n_terms == 0 {
        return Err(Error::Domain("need at least one term".into()));
    }
    if !spec.is_geometric() {
        return super::elementary::evaluate_fixed(spec, n_terms, ctx);
    }
    let mut sum = ctx.zero();
    let mut mags: Vec<Float> = Vec::new();
    for t in Terms::new(spec, ctx)?.take(n_terms as usize + 1) {
        mags.push(Float::with_val(ctx.bits(), t.abs_ref()));
        if mags.len() as u64 <= n_terms {
            sum += t;
        }
    }
    let logs: Vec<f64> = mags.windows(2).map(|w| log_ratio(&w[1], &w[0])).collect();
    let summed = &logs[..logs.len() - 1];
    // the first omitted term and its ratio give the tail estimate
    let next = mags.last().expect("at least two terms").clone();
    let r = 10f64.powf(-logs[logs.len() - 1]) * 1.1;
    let error_bound = if r < 1.0 {
        next / (1.0 - r)
    } else {
        Float::with_val(ctx.bits(), f64::INFINITY)
    };
    Ok(EvaluationReport {
        value: sum,
        terms_used: n_terms,
        error_bound,
        digits_per_term: mean_tail(summed, 5),
    })
}

/// Mean of `-log10 |t_{n+1}/t_n|` for `n` in `from..to`.
pub fn measured_digits_per_term(
    spec: &SeriesSpec,
    from: u64,
    to: u64,
    ctx: &PrecisionContext,
) -> Result<f64> {
    if to <= from {
        return Err(Error::Domain("empty term range".into()));
    }
    let terms: Vec<Float> = Terms::new(spec, ctx)?.take(to as usize + 1).collect();
    let logs: Vec<f64> = (from..to)
        .map(|n| log_ratio(&terms[n as usize + 1], &terms[n as usize]))
        .collect();
    Ok(logs.iter().sum::<f64>() / logs.len() as f64)
}
