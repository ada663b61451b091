use std::cmp::Ordering;
use std::time::Instant;

use rug::Float;
use serde_json::{json, Value};

use super::compute::pi_digits;
use crate::error::Result;
use crate::precision::{digits_of_agreement, PrecisionContext};
use crate::series::{self, digits_per_term, evaluate_elementary};

/// Term budget for the elementary series.
pub const ELEMENTARY_BUDGET: u64 = 10_000_000;
/// Working precision for the elementary series; they never get near it.
const ELEMENTARY_DIGITS: u32 = 20;

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub method: String,
    pub terms: Option<u64>,
    /// Correct decimal places against the MPFR constant.
    pub achieved: f64,
    /// Asymptotic rate; `None` for the AGM and the elementary series.
    pub digits_per_term: Option<f64>,
    pub seconds: f64,
}

impl BenchRow {
    pub fn line(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        format!(
            "{:<12} {:>10} {:>10.1} {:>10} {:>10.4}",
            self.method,
            opt(self.terms.map(|t| t.to_string())),
            self.achieved,
            opt(self.digits_per_term.map(|d| format!("{d:.3}"))),
            self.seconds
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "method": self.method,
            "terms": self.terms,
            "digits": self.achieved,
            "digits_per_term": self.digits_per_term,
            "seconds": self.seconds,
        })
    }
}

fn achieved(pi: &Float, ctx: &PrecisionContext) -> f64 {
    let err = Float::with_val(ctx.bits(), pi - ctx.pi());
    digits_of_agreement(&err).min(f64::from(ctx.digits()))
}

/// Every catalog series plus the AGM at a `digits` target, fastest rate
/// first. Elementary series get `budget` terms and report what they reach.
pub fn bench(digits: u32, budget: u64) -> Result<Vec<BenchRow>> {
    let ctx = PrecisionContext::new(digits.max(crate::precision::MIN_DIGITS))?;
    let mut rows = Vec::new();
    let start = Instant::now();
    let (pi, _, _) = pi_digits("agm", digits, &ctx)?;
    rows.push(BenchRow {
        method: "agm".into(),
        terms: None,
        achieved: achieved(&pi, &ctx),
        digits_per_term: None,
        seconds: start.elapsed().as_secs_f64(),
    });
    for spec in series::catalog() {
        let start = Instant::now();
        let row = if spec.is_geometric() {
            let (pi, terms, _) = pi_digits(&spec.key, digits, &ctx)?;
            BenchRow {
                method: spec.key.clone(),
                terms,
                achieved: achieved(&pi, &ctx),
                digits_per_term: Some(digits_per_term(&spec)?),
                seconds: 0.0,
            }
        } else {
            let low = PrecisionContext::new(ELEMENTARY_DIGITS)?;
            let tol = low.ten_pow_neg(i64::from(digits.min(ELEMENTARY_DIGITS)));
            let r = evaluate_elementary(&spec, &tol, budget, &low)?;
            BenchRow {
                method: spec.key.clone(),
                terms: Some(r.terms_used),
                achieved: achieved(&spec.target.to_pi(&r.value), &low),
                digits_per_term: None,
                seconds: 0.0,
            }
        };
        rows.push(BenchRow {
            seconds: start.elapsed().as_secs_f64(),
            ..row
        });
    }
    // fastest rate first; rows without a rate go last, in catalog order
    rows.sort_by(|a, b| match (a.digits_per_term, b.digits_per_term) {
        (Some(x), Some(y)) => y.partial_cmp(&x).unwrap_or(Ordering::Equal),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    });
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row<'a>(rows: &'a [BenchRow], m: &str) -> &'a BenchRow {
        rows.iter().find(|r| r.method == m).unwrap()
    }

    #[test]
    fn rates_order_the_table() {
        let rows = bench(300, 20_000).unwrap();
        assert_eq!(rows.len(), 11);
        assert_eq!(rows[0].method, "chudnovsky");
        let t = |m| row(&rows, m).terms.unwrap();
        assert!(t("chudnovsky") < t("ramanujan58"));
        assert!(t("ramanujan58") < t("ramanujan7j"));
        for m in ["chudnovsky", "ramanujan58", "ramanujan7j", "agm"] {
            assert!(row(&rows, m).achieved >= 300.0, "{m}");
        }
        // 20000 Gregory terms leave an error near 1/40000
        let g = row(&rows, "gregory");
        assert!(g.achieved > 3.5 && g.achieved < 5.5, "{}", g.achieved);
    }
}
