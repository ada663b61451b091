//! The singular-value table: `k_N`, the class invariant, `alpha(N)` and the
//! fundamental units for a handful of `N`, stored as surd expressions in
//! `data/singular_values.toml` and checked numerically against the theta
//! and elliptic-integral routes.

use std::path::Path;

use rayon::prelude::*;
use rug::ops::Pow;
use rug::{Float, Rational};
use serde::Deserialize;

use super::{alpha, fundamental_unit, lambda_star, QuadraticSurd, SurdExpr};
use crate::elliptic::Modulus;
use crate::error::{Error, Result};
use crate::precision::PrecisionContext;

const BUILTIN: &str = include_str!("../../data/singular_values.toml");

/// Which class invariant a row carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum InvariantKind {
    #[serde(rename = "G")]
    BigG,
    #[serde(rename = "g")]
    SmallG,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnitEntry {
    pub label: String,
    pub unit: QuadraticSurd,
}

/// `invariant^power = unit`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct UnitRelation {
    pub power: u32,
    pub unit: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularData {
    pub n: u32,
    pub kind: InvariantKind,
    pub k: SurdExpr,
    /// `1/G^12` or `1/g^12`, depending on `kind`.
    pub inv12: SurdExpr,
    pub alpha: SurdExpr,
    pub units: Vec<UnitEntry>,
    pub relation: Option<UnitRelation>,
}

impl SingularData {
    pub fn r(&self) -> Rational {
        Rational::from(self.n)
    }

    /// The modulus from the tabulated `k_N`.
    pub fn modulus(&self, ctx: &PrecisionContext) -> Result<Modulus> {
        Modulus::from_k(&self.k.eval(ctx)?, ctx)
    }

    /// `G_N` or `g_N` from the tabulated `1/G^12` or `1/g^12`.
    pub fn invariant(&self, ctx: &PrecisionContext) -> Result<Float> {
        let inv = self.inv12.eval(ctx)?;
        if inv <= 0 {
            return Err(Error::Evaluation(format!(
                "N = {}: 1/invariant^12 is not positive",
                self.n
            )));
        }
        Ok((ctx.one() / inv).root(12))
    }

    pub fn alpha_value(&self, ctx: &PrecisionContext) -> Result<Float> {
        self.alpha.eval(ctx)
    }

    pub fn unit(&self, label: &str) -> Option<&QuadraticSurd> {
        self.units.iter().find(|u| u.label == label).map(|u| &u.unit)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularTable {
    rows: Vec<SingularData>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    format: u32,
    #[serde(default)]
    row: Vec<RawRow>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRow {
    n: u32,
    invariant: InvariantKind,
    k: String,
    inv12: String,
    alpha: String,
    #[serde(default)]
    units: Vec<RawUnit>,
    relation: Option<UnitRelation>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawUnit {
    label: String,
    d: u64,
    a: String,
    b: String,
}

fn parse_rational(text: &str, what: &str) -> Result<Rational> {
    text.trim()
        .parse::<Rational>()
        .map_err(|e| Error::Parse(format!("{what}: bad rational {text:?}: {e}")))
}

fn parse_expr(text: &str, n: u32, field: &str) -> Result<SurdExpr> {
    SurdExpr::parse(text).map_err(|e| Error::Parse(format!("N = {n}, {field}: {e}")))
}

impl SingularTable {
    /// The table shipped with the crate.
    pub fn builtin() -> Self {
        Self::from_toml_str(BUILTIN).expect("embedded singular-value table parses")
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: RawFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if raw.format != 1 {
            return Err(Error::Parse(format!("unsupported table format {}", raw.format)));
        }
        let mut rows = Vec::with_capacity(raw.row.len());
        for r in raw.row {
            if r.n == 0 {
                return Err(Error::Parse("N must be positive".into()));
            }
            let mut units = Vec::with_capacity(r.units.len());
            for u in r.units {
                let what = format!("N = {}, {}", r.n, u.label);
                let a = parse_rational(&u.a, &what)?;
                let b = parse_rational(&u.b, &what)?;
                let unit = QuadraticSurd::new(a, b, u.d).map_err(|e| Error::Parse(format!("{what}: {e}")))?;
                units.push(UnitEntry { label: u.label, unit });
            }
            if let Some(rel) = &r.relation {
                if !units.iter().any(|u| u.label == rel.unit) {
                    return Err(Error::Parse(format!(
                        "N = {}: relation names unknown unit {}",
                        r.n, rel.unit
                    )));
                }
            }
            rows.push(SingularData {
                n: r.n,
                kind: r.invariant,
                k: parse_expr(&r.k, r.n, "k")?,
                inv12: parse_expr(&r.inv12, r.n, "inv12")?,
                alpha: parse_expr(&r.alpha, r.n, "alpha")?,
                units,
                relation: r.relation,
            });
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[SingularData] {
        &self.rows
    }

    pub fn row(&self, n: u32) -> Option<&SingularData> {
        self.rows.iter().find(|r| r.n == n)
    }

    pub fn get(&self, n: u32) -> Result<&SingularData> {
        self.row(n)
            .ok_or_else(|| Error::Domain(format!("no singular-value row for N = {n}")))
    }
}

/// One numeric comparison. `defect` is `None` for exact checks (units),
/// where `passed` is the whole story.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub defect: Option<Float>,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone)]
pub struct RowReport {
    pub n: u32,
    pub checks: Vec<Check>,
}

impl RowReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn max_defect(&self) -> Option<Float> {
        max_of(self.checks.iter().filter_map(|c| c.defect.as_ref()))
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Debug, Clone)]
pub struct TableReport {
    pub tolerance: Float,
    pub rows: Vec<RowReport>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(RowReport::passed)
    }

    pub fn max_defect(&self) -> Option<Float> {
        let per_row: Vec<Float> = self.rows.iter().filter_map(RowReport::max_defect).collect();
        max_of(per_row.iter())
    }

    /// `N` of every failing row, in table order.
    pub fn failing_rows(&self) -> Vec<u32> {
        self.rows.iter().filter(|r| !r.passed()).map(|r| r.n).collect()
    }
}

fn max_of<'a>(it: impl Iterator<Item = &'a Float>) -> Option<Float> {
    it.fold(None, |acc: Option<Float>, d| match acc {
        Some(m) if m >= *d => Some(m),
        _ => Some(d.clone()),
    })
}

fn numeric_check(name: &str, table: Result<Float>, reference: Result<Float>, tol: &Float) -> Check {
    match (table, reference) {
        (Ok(t), Ok(r)) => {
            let defect = (t - r).abs();
            let passed = defect <= *tol;
            Check {
                name: name.to_string(),
                defect: Some(defect),
                passed,
                detail: None,
            }
        }
        (Err(e), _) | (_, Err(e)) => Check {
            name: name.to_string(),
            defect: None,
            passed: false,
            detail: Some(e.to_string()),
        },
    }
}

fn square_free_kernel(mut n: u64) -> u64 {
    let mut out = 1;
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p * p) {
            n /= p * p;
        }
        if n.is_multiple_of(p) {
            out *= p;
            n /= p;
        }
        p += 1;
    }
    out * n
}

/// Checks one row against independently computed values.
pub fn verify_row(row: &SingularData, ctx: &PrecisionContext) -> RowReport {
    let tol = ctx.tolerance(8);
    let bits = ctx.bits();
    let r = row.r();
    let mut checks = Vec::new();

    let reference = lambda_star(&r, ctx);
    let ref_k = reference.as_ref().map(|m| m.k().clone()).map_err(Clone::clone);
    checks.push(numeric_check("k", row.k.eval(ctx), ref_k, &tol));

    // 1/G^12 = 2kk', 1/g^12 = 2k/k'^2
    let ref_inv = reference.as_ref().map_err(Clone::clone).map(|m| match row.kind {
        InvariantKind::BigG => Float::with_val(bits, m.k() * m.kprime()) * 2u32,
        InvariantKind::SmallG => {
            Float::with_val(bits, m.k() * 2u32) / Float::with_val(bits, m.kprime().square_ref())
        }
    });
    let inv_name = match row.kind {
        InvariantKind::BigG => "1/G^12",
        InvariantKind::SmallG => "1/g^12",
    };
    checks.push(numeric_check(inv_name, row.inv12.eval(ctx), ref_inv, &tol));

    checks.push(numeric_check("alpha", row.alpha.eval(ctx), alpha(&r, ctx), &tol));

    for u in &row.units {
        let d = u.unit.d();
        let name = format!("{} (d = {d})", u.label);
        let check = match fundamental_unit(d) {
            Ok(found) => {
                let passed = found == u.unit && square_free_kernel(label_index(&u.label).unwrap_or(d)) == d;
                Check {
                    name,
                    defect: None,
                    passed,
                    detail: (!passed).then(|| format!("table {} vs Pell {}", u.unit, found)),
                }
            }
            Err(e) => Check {
                name,
                defect: None,
                passed: false,
                detail: Some(e.to_string()),
            },
        };
        checks.push(check);
    }

    if let Some(rel) = &row.relation {
        let sym = match row.kind {
            InvariantKind::BigG => "G",
            InvariantKind::SmallG => "g",
        };
        let name = format!("{sym}^{} = {}", rel.power, rel.unit);
        let lhs = row.invariant(ctx).map(|v| v.pow(rel.power));
        let rhs = row
            .unit(&rel.unit)
            .map(|u| u.to_float(ctx))
            .ok_or_else(|| Error::Parse(format!("unknown unit {}", rel.unit)));
        checks.push(numeric_check(&name, lhs, rhs, &tol));
    }

    RowReport { n: row.n, checks }
}

/// `u_18` -> 18.
fn label_index(label: &str) -> Option<u64> {
    label.strip_prefix("u_")?.parse().ok()
}

/// Verifies every row, in parallel; tolerance `10^-(digits-8)`.
pub fn verify_tables(table: &SingularTable, ctx: &PrecisionContext) -> TableReport {
    let rows = table.rows.par_iter().map(|row| verify_row(row, ctx)).collect();
    TableReport {
        tolerance: ctx.tolerance(8),
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(60).unwrap()
    }

    #[test]
    fn builtin_has_fourteen_rows() {
        let t = SingularTable::builtin();
        let mut ns: Vec<u32> = t.rows().iter().map(|r| r.n).collect();
        ns.sort_unstable();
        assert_eq!(ns, vec![2, 3, 5, 6, 7, 9, 10, 13, 15, 18, 22, 25, 37, 58]);
    }

    #[test]
    fn n3_row() {
        let c = ctx();
        let t = SingularTable::builtin();
        let report = verify_row(t.get(3).unwrap(), &c);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn n9_radicals() {
        let c = ctx();
        let t = SingularTable::builtin();
        let row = t.get(9).unwrap();
        let report = verify_row(row, &c);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn whole_table_passes() {
        let c = ctx();
        let report = verify_tables(&SingularTable::builtin(), &c);
        assert!(report.passed(), "failing rows {:?}", report.failing_rows());
        assert!(report.max_defect().unwrap() <= c.tolerance(8));
    }

    #[test]
    fn corrupted_entry_names_the_row() {
        let text = BUILTIN.replace("(sqrt(7) - 2)/2", "(sqrt(7) - 2)/3");
        let table = SingularTable::from_toml_str(&text).unwrap();
        let report = verify_tables(&table, &ctx());
        assert_eq!(report.failing_rows(), vec![7]);
        let row = report.rows.iter().find(|r| r.n == 7).unwrap();
        assert_eq!(row.failures().next().unwrap().name, "alpha");
    }

    #[test]
    fn wrong_unit_is_caught() {
        let text = BUILTIN.replace(r#"d = 37, a = "6", b = "1""#, r#"d = 37, a = "5", b = "1""#);
        let table = SingularTable::from_toml_str(&text).unwrap();
        let report = verify_tables(&table, &ctx());
        assert_eq!(report.failing_rows(), vec![37]);
    }

    #[test]
    fn kernel() {
        assert_eq!(square_free_kernel(18), 2);
        assert_eq!(square_free_kernel(58), 58);
        assert_eq!(square_free_kernel(50), 2);
        assert_eq!(square_free_kernel(1), 1);
    }

    #[test]
    fn parse_errors() {
        assert!(SingularTable::from_toml_str("format = 2").is_err());
        let bad =
            "format = 1\n[[row]]\nn = 3\ninvariant = \"G\"\nk = \"sqrt(\"\ninv12 = \"1\"\nalpha = \"1\"\n";
        assert!(matches!(SingularTable::from_toml_str(bad), Err(Error::Parse(_))));
    }

    #[test]
    fn modulus_from_row() {
        let c = ctx();
        let t = SingularTable::builtin();
        let m = t.get(2).unwrap().modulus(&c).unwrap();
        let expected = c.int(2).sqrt() - 1u32;
        assert!((m.k().clone() - expected).abs() < c.tolerance(2));
        let g = t.get(2).unwrap().invariant(&c).unwrap();
        assert!((g - 1u32).abs() < c.tolerance(2));
    }
}
