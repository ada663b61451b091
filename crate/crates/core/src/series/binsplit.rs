//! Binary splitting over `(P, Q, T)` integer triples.

use rug::ops::Pow;
use rug::{Float, Integer};

use super::{digits_per_term, EvaluationReport, SeriesSpec};
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;

/// Below this many terms a range is split serially.
const PARALLEL_CUTOFF: u64 = 512;

struct Ratio {
    family: super::CoefficientFamily,
    u: Integer,
    v: Integer,
    a: Integer,
    b: Integer,
}

impl Ratio {
    /// `p(j)/q(j) = t_j/t_{j-1}` without the linear factor; `p(0) = q(0) = 1`.
    fn pq(&self, j: u64) -> (Integer, Integer) {
        if j == 0 {
            return (Integer::from(1), Integer::from(1));
        }
        let (num, den) = self.family.ratio_factors(j - 1).expect("hypergeometric family");
        let p = num.iter().fold(self.u.clone(), |acc, &f| acc * f);
        let q = den.iter().fold(self.v.clone(), |acc, &f| acc * f);
        (p, q)
    }

    fn lin(&self, n: u64) -> Integer {
        Integer::from(&self.b * n) + &self.a
    }
}

struct Triple {
    p: Integer,
    q: Integer,
    t: Integer,
}

fn split(r: &Ratio, lo: u64, hi: u64) -> Triple {
    if hi - lo == 1 {
        let (p, q) = r.pq(lo);
        let t = Integer::from(&p * &r.lin(lo));
        return Triple { p, q, t };
    }
    let mid = lo + (hi - lo) / 2;
    let (left, right) = if hi - lo >= PARALLEL_CUTOFF {
        rayon::join(|| split(r, lo, mid), || split(r, mid, hi))
    } else {
        (split(r, lo, mid), split(r, mid, hi))
    };
    // T = T_l Q_r + P_l T_r
    let t = Integer::from(&left.t * &right.q) + Integer::from(&left.p * &right.t);
    Triple {
        p: left.p * right.p,
        q: left.q * right.q,
        t,
    }
}

/// Partial sum of the first `n_terms` terms of a rational catalog series.
pub fn evaluate_binary_splitting(
    spec: &SeriesSpec,
    n_terms: u64,
    ctx: &PrecisionContext,
) -> Result<EvaluationReport> {
    if n_terms == 0 {
        return Err(Error::Domain("need at least one term".into()));
    }
    let unsupported =
        || Error::Unsupported(format!("{}: binary splitting needs a rational series", spec.key));
    if !spec.is_rational() {
        return Err(unsupported());
    }
    spec.check_convergent(ctx)?;
    let a = spec.a.as_rational().ok_or_else(unsupported)?;
    let b = spec.b.as_rational().ok_or_else(unsupported)?;
    let z = spec.base.as_rational().ok_or_else(unsupported)?;
    let mut w = z.pow(spec.pattern.step() as i32) * spec.scale;
    if spec.alternating {
        w = -w;
    }
    // A + nB = (a' + n b')/d
    let d = Integer::from(a.denom().lcm_ref(b.denom()));
    let a_int = a.numer() * Integer::from(&d / a.denom());
    let b_int = b.numer() * Integer::from(&d / b.denom());
    let (u, v) = w.into_numer_denom();
    let ratio = Ratio {
        family: spec.family,
        u,
        v,
        a: a_int,
        b: b_int,
    };
    let triple = split(&ratio, 0, n_terms);

    let bits = ctx.bits();
    let pre = spec.prefactor(ctx)?;
    let den = Float::with_val(bits, Integer::from(&triple.q * &d));
    let value = Float::with_val(bits, &pre * (Float::with_val(bits, &triple.t) / &den));

    // last term and a geometric tail bound: p(j)/q(j) <= |w| for these
    // families, and (A + nB)/(A + (n-1)B) decreases when A, B >= 0
    let prod = Float::with_val(bits, &triple.p) / Float::with_val(bits, &triple.q);
    let last_lin = ratio.lin(n_terms - 1);
    let next_lin = ratio.lin(n_terms);
    let last = Float::with_val(bits, &pre * &prod) * &last_lin / Float::with_val(bits, &d);
    let w_abs = Float::with_val(bits, &ratio.u) / Float::with_val(bits, &ratio.v);
    let w_abs = w_abs.abs();
    let error_bound = if last_lin > 0 && ratio.b >= 0 {
        let rho = w_abs * Float::with_val(bits, &next_lin) / Float::with_val(bits, &last_lin);
        if rho < 1 {
            let f = Float::with_val(bits, &rho / (1u32 - rho.clone()));
            last.abs() * f
        } else {
            Float::with_val(bits, f64::INFINITY)
        }
    } else {
        Float::with_val(bits, f64::INFINITY)
    };
    Ok(EvaluationReport {
        value,
        terms_used: n_terms,
        error_bound,
        digits_per_term: digits_per_term(spec)?,
    })
}

/// Enough terms for the tail to drop below `10^-(digits+guard)`.
pub fn terms_for_digits(spec: &SeriesSpec, ctx: &PrecisionContext) -> Result<u64> {
    let dpt = digits_per_term(spec)?;
    let want = f64::from(ctx.digits() + ctx.guard());
    Ok((want / dpt).ceil() as u64 + 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{catalog, evaluate_terms, lookup};

    #[test]
    fn one_term_is_bit_identical() {
        let c = PrecisionContext::new(50).unwrap();
        for s in catalog().into_iter().filter(SeriesSpec::is_rational) {
            let bs = evaluate_binary_splitting(&s, 1, &c).unwrap();
            let direct = evaluate_terms(&s, 1, &c).unwrap();
            assert_eq!(bs.value, direct.value, "{}", s.key);
        }
    }

    #[test]
    fn agrees_with_direct() {
        let c = PrecisionContext::new(80).unwrap();
        for s in catalog().into_iter().filter(SeriesSpec::is_rational) {
            for n in [2u64, 7, 30] {
                let bs = evaluate_binary_splitting(&s, n, &c).unwrap();
                let direct = evaluate_terms(&s, n, &c).unwrap();
                let d = (bs.value - direct.value).abs();
                assert!(d < c.tolerance(2), "{} n = {n}", s.key);
            }
        }
    }

    #[test]
    fn thousand_digits() {
        let c = PrecisionContext::new(1000).unwrap();
        let pi = c.pi();
        for (key, n) in [("ramanujan58", 130u64), ("chudnovsky", 72)] {
            let r = evaluate_binary_splitting(&lookup(key).unwrap(), n, &c).unwrap();
            let d = (r.value.recip() - &pi).abs();
            assert!(d < c.ten_pow_neg(1000), "{key}");
            assert!(r.error_bound < c.ten_pow_neg(1000), "{key}");
        }
    }

    #[test]
    fn bound_covers_true_error() {
        let c = PrecisionContext::new(100).unwrap();
        let s = lookup("ramanujan7g").unwrap();
        let r = evaluate_binary_splitting(&s, 10, &c).unwrap();
        let err = (r.value - c.pi().recip()).abs();
        assert!(err <= r.error_bound);
    }

    #[test]
    fn refuses_irrational() {
        let c = PrecisionContext::new(30).unwrap();
        assert!(matches!(
            evaluate_binary_splitting(&lookup("chancooper").unwrap(), 5, &c),
            Err(Error::Unsupported(_))
        ));
    }
}
