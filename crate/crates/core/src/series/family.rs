//! Exact coefficient families `a_n`, normalized so that `a_0 = 1` and the
//! hypergeometric ones have `a_{n+1}/a_n -> 1`.

use std::fmt;

use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum CoefficientFamily {
    /// `((1/2)_n / n!)^3 = (binom(2n, n) / 4^n)^3`
    HalfCubed,
    /// `(1/4)_n (1/2)_n (3/4)_n / n!^3 = (4n)! / (4^(4n) n!^4)`
    QuarterHalfThreeQuarter,
    /// `(1/6)_n (1/2)_n (5/6)_n / n!^3 = (6n)! / (12^(3n) (3n)! n!^3)`
    SixthHalfFiveSixth,
    /// `sum_m (-1)^(n-m) 64^-m (4m)!/m!^4 binom(n+m, n-m)`
    ChanCooperNested,
    /// `a_n = 1`; the linear form enters as a reciprocal.
    Gregory,
    /// `a_n = 1`; the linear form enters as a reciprocal square.
    Basel,
    /// Continued fraction with partial numerators `(A + nB)^2`.
    Brouncker,
}

impl CoefficientFamily {
    pub const ALL: [CoefficientFamily; 7] = [
        CoefficientFamily::HalfCubed,
        CoefficientFamily::QuarterHalfThreeQuarter,
        CoefficientFamily::SixthHalfFiveSixth,
        CoefficientFamily::ChanCooperNested,
        CoefficientFamily::Gregory,
        CoefficientFamily::Basel,
        CoefficientFamily::Brouncker,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CoefficientFamily::HalfCubed => "halfCubed",
            CoefficientFamily::QuarterHalfThreeQuarter => "quarterHalfThreeQuarter",
            CoefficientFamily::SixthHalfFiveSixth => "sixthHalfFiveSixth",
            CoefficientFamily::ChanCooperNested => "chanCooperNested",
            CoefficientFamily::Gregory => "gregory",
            CoefficientFamily::Basel => "basel",
            CoefficientFamily::Brouncker => "brouncker",
        }
    }

    /// Families whose consecutive ratio is a fixed rational function of `n`.
    pub fn is_hypergeometric(self) -> bool {
        matches!(
            self,
            CoefficientFamily::HalfCubed
                | CoefficientFamily::QuarterHalfThreeQuarter
                | CoefficientFamily::SixthHalfFiveSixth
        )
    }

    /// The Ramanujan-type families: summand `a_n (A + nB) z^e(n)`.
    pub fn is_geometric(self) -> bool {
        self.is_hypergeometric() || self == CoefficientFamily::ChanCooperNested
    }

    /// `a_{n+1}/a_n` as integer factor lists `(numerator, denominator)`.
    /// `None` for families without a rational ratio.
    pub fn ratio_factors(self, n: u64) -> Option<([u64; 4], [u64; 4])> {
        let m = n + 1;
        match self {
            CoefficientFamily::HalfCubed => {
                let t = 2 * n + 1;
                Some(([t, t, t, 1], [2 * m, 2 * m, 2 * m, 1]))
            }
            CoefficientFamily::QuarterHalfThreeQuarter => Some((
                [4 * n + 1, 4 * n + 2, 4 * n + 3, 4 * n + 4],
                [4 * m, 4 * m, 4 * m, 4 * m],
            )),
            CoefficientFamily::SixthHalfFiveSixth => {
                Some(([6 * n + 1, 6 * n + 3, 6 * n + 5, 1], [6 * m, 6 * m, 6 * m, 1]))
            }
            CoefficientFamily::Gregory | CoefficientFamily::Basel | CoefficientFamily::Brouncker => {
                Some(([1; 4], [1; 4]))
            }
            CoefficientFamily::ChanCooperNested => None,
        }
    }

    /// Exact `a_n`.
    pub fn coeff(self, n: u64) -> Rational {
        match self {
            CoefficientFamily::ChanCooperNested => chan_cooper(n),
            _ => self.coefficients().nth(n as usize).expect("unbounded iterator"),
        }
    }

    /// `a_0, a_1, ...`, one ratio step per item.
    pub fn coefficients(self) -> Coefficients {
        Coefficients {
            family: self,
            n: 0,
            current: Rational::from(1),
        }
    }
}

impl fmt::Display for CoefficientFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub struct Coefficients {
    family: CoefficientFamily,
    n: u64,
    current: Rational,
}

impl Iterator for Coefficients {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        let out = match self.family.ratio_factors(self.n) {
            Some((num, den)) => {
                let next = Rational::from((product(&num), product(&den)));
                let next = Rational::from(&self.current * &next);
                std::mem::replace(&mut self.current, next)
            }
            None => chan_cooper(self.n),
        };
        self.n += 1;
        Some(out)
    }
}

fn product(fs: &[u64]) -> Integer {
    fs.iter().fold(Integer::from(1), |acc, &f| acc * f)
}

fn factorial(n: u64) -> Integer {
    Integer::from(Integer::factorial(n as u32))
}

/// `64^n c_n` for the Chan-Cooper nested sum, an integer.
pub fn chan_cooper_scaled(n: u64) -> Integer {
    // (4m)!/m!^4 by its ratio (4m+1)(4m+2)(4m+3)(4m+4)/(m+1)^4
    let mut quartic = Integer::from(1);
    let mut binom = Integer::from(1); // binom(n+m, n-m) at m = 0
    let mut pow64 = Integer::from(64u32).pow(n as u32);
    let mut total = Integer::new();
    for m in 0..=n {
        let term = Integer::from(&quartic * &binom) * &pow64;
        if (n - m).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
        if m == n {
            break;
        }
        quartic *= (4 * m + 1) * (4 * m + 2);
        quartic *= (4 * m + 3) * (4 * m + 4);
        quartic /= Integer::from(m + 1).pow(4);
        // binom(n+m+1, n-m-1) = binom(n+m, n-m) (n+m+1)(n-m) / ((2m+1)(2m+2))
        binom *= (n + m + 1) * (n - m);
        binom /= (2 * m + 1) * (2 * m + 2);
        pow64 /= 64u32;
    }
    total
}

fn chan_cooper(n: u64) -> Rational {
    Rational::from((chan_cooper_scaled(n), Integer::from(64u32).pow(n as u32)))
}

/// Both closed forms of the quarter and sixth Pochhammer products,
/// `(direct product, factorial form)`, for checking they agree exactly.
pub fn pochhammer_forms(family: CoefficientFamily, n: u64) -> Option<(Rational, Rational)> {
    let mut direct = Rational::from(1);
    let factorial_form = match family {
        CoefficientFamily::QuarterHalfThreeQuarter => {
            for m in 1..=n {
                direct *= Rational::from(((4 * m - 3) * (4 * m - 2) * (4 * m - 1), 64u64));
            }
            let den = Integer::from(256u32).pow(n as u32) * factorial(n);
            Rational::from((factorial(4 * n), den))
        }
        CoefficientFamily::SixthHalfFiveSixth => {
            for m in 1..=n {
                direct *= Rational::from(((6 * m - 5) * (6 * m - 3) * (6 * m - 1), 216u64));
            }
            let den = Integer::from(1728u32).pow(n as u32) * factorial(3 * n);
            Rational::from((factorial(6 * n), den))
        }
        _ => return None,
    };
    Some((direct, factorial_form))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_coefficient_is_one() {
        for f in CoefficientFamily::ALL {
            assert_eq!(f.coeff(0), 1, "{f}");
        }
    }

    #[test]
    fn known_values() {
        use CoefficientFamily::*;
        assert_eq!(HalfCubed.coeff(1), Rational::from((1, 8)));
        assert_eq!(HalfCubed.coeff(2), Rational::from((27, 512)));
        assert_eq!(QuarterHalfThreeQuarter.coeff(1), Rational::from((3, 32)));
        assert_eq!(SixthHalfFiveSixth.coeff(1), Rational::from((720, 10368)));
        assert_eq!(SixthHalfFiveSixth.coeff(1), Rational::from((5, 72)));
    }

    #[test]
    fn closed_forms() {
        use CoefficientFamily::*;
        for n in 0..30u64 {
            // (binom(2n,n)/4^n)^3
            let c = Integer::from(Integer::binomial_u(2 * n as u32, n as u32));
            let b = Rational::from((c, Integer::from(4u32).pow(n as u32)));
            assert_eq!(HalfCubed.coeff(n), b.pow(3));
            let (_, f) = pochhammer_forms(QuarterHalfThreeQuarter, n).unwrap();
            assert_eq!(QuarterHalfThreeQuarter.coeff(n), f / factorial(n).pow(3));
            let (_, f) = pochhammer_forms(SixthHalfFiveSixth, n).unwrap();
            assert_eq!(SixthHalfFiveSixth.coeff(n), f / factorial(n).pow(3));
        }
    }

    #[test]
    fn pochhammer_sides_agree() {
        for f in [
            CoefficientFamily::QuarterHalfThreeQuarter,
            CoefficientFamily::SixthHalfFiveSixth,
        ] {
            for n in [0u64, 1, 2, 7, 50] {
                let (a, b) = pochhammer_forms(f, n).unwrap();
                assert_eq!(a, b, "{f} n = {n}");
            }
        }
        assert!(pochhammer_forms(CoefficientFamily::HalfCubed, 3).is_none());
    }

    #[test]
    fn chan_cooper_against_definition() {
        for n in 0..25u64 {
            let mut direct = Rational::new();
            for m in 0..=n {
                let q = Rational::from((
                    factorial(4 * m),
                    factorial(m).pow(4) * Integer::from(64u32).pow(m as u32),
                ));
                let binom = Integer::from(Integer::binomial_u((n + m) as u32, (n - m) as u32));
                let t = q * binom;
                if (n - m) % 2 == 0 {
                    direct += t;
                } else {
                    direct -= t;
                }
            }
            assert_eq!(CoefficientFamily::ChanCooperNested.coeff(n), direct, "n = {n}");
        }
    }

    #[test]
    fn chan_cooper_scaled_is_integral() {
        // 64^n c_n for the first few n
        let v: Vec<Integer> = (0..4).map(chan_cooper_scaled).collect();
        assert_eq!(v[0], 1);
        assert_eq!(v[1], -64 + 24);
        let c = CoefficientFamily::ChanCooperNested.coeff(3);
        assert_eq!(c * Integer::from(64u32).pow(3), v[3]);
    }

    #[test]
    fn iterator_matches_coeff() {
        let f = CoefficientFamily::QuarterHalfThreeQuarter;
        let v: Vec<Rational> = f.coefficients().take(6).collect();
        assert_eq!(v[5], f.coeff(5));
        let g: Vec<Rational> = CoefficientFamily::ChanCooperNested
            .coefficients()
            .take(4)
            .collect();
        assert_eq!(g[3], CoefficientFamily::ChanCooperNested.coeff(3));
    }
}
