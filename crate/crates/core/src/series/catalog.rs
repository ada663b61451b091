//! The built-in series.

use super::{CoefficientFamily, Pattern, Provenance, Scalar, SeriesSpec, Target};
use crate::error::{Error, Result};

struct Entry {
    key: &'static str,
    family: CoefficientFamily,
    multiplier: &'static str,
    a: &'static str,
    b: &'static str,
    base: &'static str,
    alternating: bool,
    pattern: Pattern,
    scale: u32,
    target: Target,
    tag: Option<&'static str>,
    n: Option<u32>,
    citation: &'static str,
}

const ENTRIES: [Entry; 10] = [
    Entry {
        key: "ramanujan7g",
        family: CoefficientFamily::HalfCubed,
        multiplier: "1/16",
        a: "5",
        b: "42",
        base: "1/64^2",
        alternating: false,
        pattern: Pattern::N,
        scale: 64,
        target: Target::ReciprocalPi,
        tag: Some("G"),
        n: Some(7),
        citation: "Ramanujan 1914",
    },
    Entry {
        key: "ramanujan7y",
        family: CoefficientFamily::QuarterHalfThreeQuarter,
        multiplier: "1/(9*sqrt(7))",
        a: "8",
        b: "65",
        base: "1/63^2",
        alternating: true,
        pattern: Pattern::N,
        scale: 256,
        target: Target::ReciprocalPi,
        tag: Some("yN"),
        n: Some(7),
        citation: "Ramanujan 1914",
    },
    Entry {
        key: "ramanujan7j",
        family: CoefficientFamily::SixthHalfFiveSixth,
        multiplier: "18/85*(3/85)^(1/2)",
        a: "8",
        b: "7*19",
        base: "1/255^3",
        alternating: false,
        pattern: Pattern::N,
        scale: 1728,
        target: Target::ReciprocalPi,
        tag: Some("JN"),
        n: Some(7),
        citation: "Ramanujan 1914",
    },
    Entry {
        key: "ramanujan37",
        family: CoefficientFamily::QuarterHalfThreeQuarter,
        multiplier: "1/3528",
        a: "1123",
        b: "37*580",
        base: "1/14112^2",
        alternating: true,
        pattern: Pattern::N,
        scale: 256,
        target: Target::ReciprocalPi,
        tag: Some("yN"),
        n: Some(37),
        citation: "Ramanujan 1914",
    },
    Entry {
        key: "ramanujan58",
        family: CoefficientFamily::QuarterHalfThreeQuarter,
        multiplier: "2*sqrt(2)/9801",
        a: "1103",
        b: "29*910",
        base: "1/396^4",
        alternating: false,
        pattern: Pattern::N,
        scale: 256,
        target: Target::ReciprocalPi,
        tag: Some("xN"),
        n: Some(58),
        citation: "Ramanujan 1914",
    },
    Entry {
        key: "chudnovsky",
        family: CoefficientFamily::SixthHalfFiveSixth,
        multiplier: "12",
        a: "13591409",
        b: "163*3344418",
        base: "1/640320",
        alternating: true,
        pattern: Pattern::ThreeNPlusHalf,
        scale: 1728,
        target: Target::ReciprocalPi,
        tag: None,
        n: Some(163),
        citation: "Chudnovsky & Chudnovsky 1988",
    },
    Entry {
        key: "chancooper",
        family: CoefficientFamily::ChanCooperNested,
        multiplier: "2*sqrt(2)",
        a: "-24184 + 9801*sqrt(29)/2",
        b: "9801*sqrt(29)",
        base: "(sqrt(29) - 5)/2",
        alternating: false,
        pattern: Pattern::TwelveNPlusHalf,
        scale: 1,
        target: Target::ReciprocalPi,
        tag: None,
        n: None,
        citation: "Chan & Cooper 2012",
    },
    Entry {
        key: "gregory",
        family: CoefficientFamily::Gregory,
        multiplier: "1",
        a: "1",
        b: "2",
        base: "1",
        alternating: true,
        pattern: Pattern::N,
        scale: 1,
        target: Target::PiOver4,
        tag: None,
        n: None,
        citation: "Gregory 1671",
    },
    Entry {
        key: "euler",
        family: CoefficientFamily::Basel,
        multiplier: "1",
        a: "1",
        b: "1",
        base: "1",
        alternating: false,
        pattern: Pattern::N,
        scale: 1,
        target: Target::PiSquaredOver6,
        tag: None,
        n: None,
        citation: "Euler 1734",
    },
    Entry {
        key: "brouncker",
        family: CoefficientFamily::Brouncker,
        multiplier: "1",
        a: "1",
        b: "2",
        base: "1",
        alternating: false,
        pattern: Pattern::N,
        scale: 1,
        target: Target::FourOverPi,
        tag: None,
        n: None,
        citation: "Brouncker 1655",
    },
];

fn build(e: &Entry) -> SeriesSpec {
    let p = |s: &str| Scalar::parse(s).expect("catalog expression parses");
    let fold = |s: &str| match p(s).as_rational() {
        Some(q) => Scalar::Exact(crate::invariants::SurdExpr::Const(q)),
        None => p(s),
    };
    SeriesSpec {
        key: e.key.to_string(),
        family: e.family,
        multiplier: fold(e.multiplier),
        a: fold(e.a),
        b: fold(e.b),
        base: fold(e.base),
        alternating: e.alternating,
        pattern: e.pattern,
        scale: e.scale,
        target: e.target,
        provenance: Provenance {
            tag: e.tag.map(str::to_string),
            n: e.n,
            citation: e.citation.to_string(),
        },
    }
}

pub fn catalog() -> Vec<SeriesSpec> {
    ENTRIES.iter().map(build).collect()
}

pub fn catalog_keys() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.key).collect()
}

pub fn lookup(key: &str) -> Result<SeriesSpec> {
    ENTRIES.iter().find(|e| e.key == key).map(build).ok_or_else(|| {
        Error::Domain(format!(
            "unknown series {key:?} (known: {})",
            catalog_keys().join(", ")
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    #[test]
    fn ten_entries() {
        assert_eq!(catalog().len(), 10);
    }

    #[test]
    fn chudnovsky_coefficients() {
        let s = lookup("chudnovsky").unwrap();
        assert_eq!(s.a.as_rational().unwrap(), 13591409);
        assert_eq!(s.b.as_rational().unwrap(), 545140134);
        assert_eq!(Rational::from(163) * 3344418, 545140134);
    }

    #[test]
    fn published_integers() {
        let s = lookup("ramanujan58").unwrap();
        assert_eq!(s.b.as_rational().unwrap(), 26390);
        assert_eq!(lookup("ramanujan37").unwrap().b.as_rational().unwrap(), 21460);
        assert_eq!(lookup("ramanujan7j").unwrap().b.as_rational().unwrap(), 133);
    }

    #[test]
    fn rational_entries() {
        let rational: Vec<String> = catalog()
            .into_iter()
            .filter(SeriesSpec::is_rational)
            .map(|s| s.key)
            .collect();
        assert_eq!(
            rational,
            [
                "ramanujan7g",
                "ramanujan7y",
                "ramanujan7j",
                "ramanujan37",
                "ramanujan58",
                "chudnovsky"
            ]
        );
    }

    #[test]
    fn unknown_key() {
        assert!(matches!(lookup("nope"), Err(Error::Domain(_))));
    }
}
