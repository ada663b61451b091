use std::path::Path;

use rayon::prelude::*;
use rug::{Float, Rational};
use serde_json::{json, Value};

use crate::elliptic::{check_transformations, legendre_defect, Modulus};
use crate::error::{Error, Result};
use crate::invariants::{
    lattice_sum_brute_force, lattice_sum_g, lattice_sum_g_closed_form, modulus_from_lattice_sums,
    verify_tables, SingularTable,
};
use crate::precision::PrecisionContext;
use crate::series::{
    build_series, pochhammer_forms, lookup, normalize, reciprocal_pi_identity_check, CoefficientFamily, FamilyTag,
};

/// Below this the table tolerance `10^-(digits-8)` is meaningless.
pub const VERIFY_MIN_DIGITS: u32 = 30;

/// Moduli for the Legendre sweep.
const LEGENDRE_SAMPLES: u32 = 20;
/// Largest `n` in the exact coefficient comparison.
const CLOSED_FORM_MAX_N: u64 = 200;
const BRUTE_FORCE_BOUND: i64 = 2000;

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub max_defect: Option<Float>,
    pub detail: Option<String>,
}

impl CheckResult {
    fn new(name: impl Into<String>, defect: Float, tol: &Float) -> Self {
        Self {
            name: name.into(),
            passed: defect <= *tol,
            max_defect: Some(defect),
            detail: None,
        }
    }

    fn exact(name: impl Into<String>, passed: bool, detail: Option<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            max_defect: None,
            detail,
        }
    }

    fn failed(name: impl Into<String>, e: &Error) -> Self {
        Self::exact(name, false, Some(e.to_string()))
    }

    fn defect_text(&self) -> String {
        match &self.max_defect {
            Some(d) if d.is_zero() => "0".into(),
            Some(d) => format!("{:.2e}", Float::with_val(53, d)),
            None => "exact".into(),
        }
    }

    pub fn line(&self) -> String {
        let mut s = format!(
            "{:<4} {:<36} {}",
            if self.passed { "pass" } else { "FAIL" },
            self.name,
            self.defect_text()
        );
        if let Some(d) = &self.detail {
            s.push_str("  ");
            s.push_str(d);
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "passed": self.passed,
            "max_defect": self.max_defect.as_ref().map(|_| self.defect_text()),
            "detail": self.detail,
        })
    }
}

fn max_float(xs: impl IntoIterator<Item = Float>) -> Option<Float> {
    xs.into_iter().reduce(|a, b| if b > a { b } else { a })
}

fn legendre(ctx: &PrecisionContext) -> CheckResult {
    let tol = ctx.tolerance(2);
    let defects: Result<Vec<Float>> = (1..=LEGENDRE_SAMPLES)
        .into_par_iter()
        .map(|i| {
            let k = ctx.rational(&Rational::from((i, LEGENDRE_SAMPLES + 1)));
            Ok(legendre_defect(&Modulus::from_k(&k, ctx)?, ctx).abs())
        })
        .collect();
    match defects {
        Ok(d) => CheckResult::new("legendre relation", max_float(d).expect("samples"), &tol),
        Err(e) => CheckResult::failed("legendre relation", &e),
    }
}

fn transformations(ctx: &PrecisionContext) -> Vec<CheckResult> {
    let tol = ctx.tolerance(4);
    let mut moduli = vec![Modulus::self_dual(ctx)];
    for k in [0.02, 0.1, 0.2, 0.35, 0.5, 0.65] {
        moduli.push(Modulus::from_f64(k, ctx).expect("k in (0, 1)"));
    }
    let runs: Vec<_> = moduli.par_iter().map(|m| check_transformations(m, ctx)).collect();
    let mut by_name: Vec<(&'static str, Float)> = Vec::new();
    for run in runs {
        match run {
            Ok(defects) => {
                for d in defects {
                    match by_name.iter_mut().find(|(n, _)| *n == d.name) {
                        Some((_, worst)) if d.defect > *worst => *worst = d.defect,
                        Some(_) => {}
                        None => by_name.push((d.name, d.defect)),
                    }
                }
            }
            Err(e) => return vec![CheckResult::failed("transformations", &e)],
        }
    }
    by_name
        .into_iter()
        .map(|(n, d)| CheckResult::new(format!("transformation {n}"), d, &tol))
        .collect()
}

fn tables(table: &SingularTable, ctx: &PrecisionContext) -> Vec<CheckResult> {
    let report = verify_tables(table, ctx);
    report
        .rows
        .iter()
        .map(|row| {
            let failures: Vec<String> = row
                .failures()
                .map(|c| match &c.detail {
                    Some(d) => format!("{}: {d}", c.name),
                    None => c.name.clone(),
                })
                .collect();
            CheckResult {
                name: format!("table row N={}", row.n),
                passed: row.passed(),
                max_defect: row.max_defect(),
                detail: (!failures.is_empty()).then(|| failures.join("; ")),
            }
        })
        .collect()
}

fn lattice(table: &SingularTable, ctx: &PrecisionContext) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let tol = ctx.tolerance(6);
    for r in [2u32, 6, 10, 58] {
        let name = format!("lattice sum r={r}");
        let q = Rational::from(r);
        let res = lattice_sum_g(&q, ctx)
            .and_then(|s| Ok(Float::with_val(ctx.bits(), s - lattice_sum_g_closed_form(&q, ctx)?).abs()));
        out.push(match res {
            Ok(d) => CheckResult::new(name, d, &tol),
            Err(e) => CheckResult::failed(name, &e),
        });
    }
    // the row reduction against plain truncation
    let low = PrecisionContext::new(20).expect("20 digits");
    let brute: Vec<f64> = [2.0, 6.0]
        .par_iter()
        .map(|&r| lattice_sum_brute_force(r, BRUTE_FORCE_BOUND))
        .collect();
    let gap = [2u32, 6]
        .iter()
        .zip(&brute)
        .map(|(&r, b)| {
            let s = lattice_sum_g(&Rational::from(r), &low)
                .map(|s| s.to_f64())
                .unwrap_or(f64::NAN);
            (s - b).abs()
        })
        .fold(0f64, f64::max);
    out.push(CheckResult {
        name: "lattice sum truncation".into(),
        passed: gap <= 1e-5,
        max_defect: Some(Float::with_val(53, gap)),
        detail: None,
    });

    let name = "lattice modulus k58";
    let res = (|| -> Result<Float> {
        let k = modulus_from_lattice_sums(&Rational::from(29), ctx)?;
        let row = table.get(58)?;
        Ok(Float::with_val(ctx.bits(), &k - row.k.eval(ctx)?).abs())
    })();
    out.push(match res {
        Ok(d) => CheckResult::new(name, d, &tol),
        Err(e) => CheckResult::failed(name, &e),
    });
    out
}

fn closed_forms() -> CheckResult {
    let mut bad = Vec::new();
    for family in CoefficientFamily::ALL {
        for n in 0..=CLOSED_FORM_MAX_N {
            if let Some((direct, factorial)) = pochhammer_forms(family, n) {
                if direct != factorial {
                    bad.push(format!("{family} n={n}"));
                }
            }
        }
    }
    CheckResult::exact(
        format!("coefficient closed forms n<={CLOSED_FORM_MAX_N}"),
        bad.is_empty(),
        (!bad.is_empty()).then(|| bad.join(", ")),
    )
}

const PUBLISHED: [(FamilyTag, u32, &str); 5] = [
    (FamilyTag::BigG, 7, "ramanujan7g"),
    (FamilyTag::YN, 7, "ramanujan7y"),
    (FamilyTag::JN, 7, "ramanujan7j"),
    (FamilyTag::YN, 37, "ramanujan37"),
    (FamilyTag::XN, 58, "ramanujan58"),
];

fn builder(table: &SingularTable, ctx: &PrecisionContext) -> Vec<CheckResult> {
    PUBLISHED
        .par_iter()
        .map(|&(tag, n, key)| {
            let name = format!("coefficients {key}");
            let res = (|| -> Result<(Float, bool, String)> {
                let published = lookup(key)?;
                let raw = build_series(tag, table.get(n)?, ctx)?;
                let got = normalize(&raw, &published, ctx)?;
                let want_a = published
                    .a
                    .as_rational()
                    .and_then(|q| q.is_integer().then(|| q.numer().clone()));
                let want_b = published
                    .b
                    .as_rational()
                    .and_then(|q| q.is_integer().then(|| q.numer().clone()));
                let ok = want_a.as_ref() == Some(&got.a) && want_b.as_ref() == Some(&got.b);
                Ok((got.residual, ok, format!("A={} B={}", got.a, got.b)))
            })();
            match res {
                Ok((residual, ok, detail)) => CheckResult {
                    name,
                    passed: ok && residual < ctx.tolerance(12),
                    max_defect: Some(residual),
                    detail: Some(detail),
                },
                Err(e) => CheckResult::failed(name, &e),
            }
        })
        .collect()
}

fn identity(table: &SingularTable, ctx: &PrecisionContext) -> Vec<CheckResult> {
    let tol = ctx.tolerance(6);
    [(2u32, FamilyTag::G4N), (7, FamilyTag::BigG), (58, FamilyTag::XN)]
        .par_iter()
        .map(|&(n, tag)| {
            let name = format!("reciprocal pi identity N={n}");
            match table
                .get(n)
                .and_then(|row| reciprocal_pi_identity_check(row, tag, ctx))
            {
                Ok(d) => CheckResult::new(name, d, &tol),
                Err(e) => CheckResult::failed(name, &e),
            }
        })
        .collect()
}

/// Every suite at `digits` working precision, in a fixed order.
pub fn run_checks(digits: u32, table_path: Option<&Path>) -> Result<Vec<CheckResult>> {
    if digits < VERIFY_MIN_DIGITS {
        return Err(Error::Domain(format!(
            "precision too low for table suite (need at least {VERIFY_MIN_DIGITS} digits)"
        )));
    }
    let ctx = PrecisionContext::new(digits)?;
    let table = match table_path {
        Some(p) => SingularTable::from_path(p)?,
        None => SingularTable::builtin(),
    };
    let mut out = vec![legendre(&ctx)];
    out.extend(transformations(&ctx));
    out.extend(tables(&table, &ctx));
    out.extend(lattice(&table, &ctx));
    out.push(closed_forms());
    out.extend(builder(&table, &ctx));
    out.extend(identity(&table, &ctx));
    Ok(out)
}
