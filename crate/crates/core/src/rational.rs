use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational used for all weights.
pub type Rational = BigRational;

/// Parses `p/q` or a plain integer. Returns `None` for anything else,
/// including a zero denominator.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p, q),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Formats a rational as `p` or `p/q` in lowest terms.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A rational number extended by `+∞` and `-∞`.
///
/// The variant order gives the total order `-∞ < q < +∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtRational {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl ExtRational {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRational::Finite(_))
    }
}

impl From<Rational> for ExtRational {
    fn from(q: Rational) -> Self {
        ExtRational::Finite(q)
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtRational::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for ExtRational {
    type Output = ExtRational;

    fn neg(self) -> ExtRational {
        match self {
            ExtRational::NegInf => ExtRational::PosInf,
            ExtRational::PosInf => ExtRational::NegInf,
            ExtRational::Finite(q) => ExtRational::Finite(-q),
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::NegInf => f.write_str("-inf"),
            ExtRational::PosInf => f.write_str("inf"),
            ExtRational::Finite(q) => f.write_str(&format_rational(q)),
        }
    }
}

/// Least common multiple of the denominators, used to move a set of
/// rationals onto a common integer grid.
pub(crate) fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, q| {
        num_integer::Integer::lcm(&acc, q.denom())
    })
}

pub(crate) fn abs_sum<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values.into_iter().fold(Rational::zero(), |acc, q| acc + q.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("-3"), Some(q(-3, 1)));
        assert_eq!(parse_rational("6/4"), Some(q(3, 2)));
        assert_eq!(parse_rational("1/-2"), Some(q(-1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("0.5"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn extended_order() {
        let a = ExtRational::Finite(q(-100, 1));
        assert!(ExtRational::NegInf < a);
        assert!(a < ExtRational::PosInf);
        assert!(ExtRational::NegInf < ExtRational::PosInf);
        assert_eq!(-ExtRational::NegInf, ExtRational::PosInf);
        assert_eq!(ExtRational::Finite(q(7, 2)).to_string(), "7/2");
        assert_eq!(ExtRational::Finite(q(4, 2)).to_string(), "2");
    }
}
