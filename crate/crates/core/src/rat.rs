//! Exact rational scalars. Everything that decides anything runs on these;
//! floats appear only at the rendering edge.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact fraction with unbounded numerator and denominator.
/// `BigRational` keeps values in lowest terms with a positive denominator,
/// which is exactly the canonical form we rely on for `Eq`/`Hash`/`Ord`.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

pub fn half() -> Rat {
    rat(1, 2)
}

/// True iff `0 <= x <= 1`.
pub fn in_unit(x: &Rat) -> bool {
    !x.is_negative() && *x <= one()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RatParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("denominator must be positive in `{0}`")]
    BadDenominator(String),
}

/// Parses `"p/q"` or a plain integer string. Whitespace is not tolerated and
/// the denominator must be strictly positive, so parsing is a left inverse of
/// `format_rat` on every value.
pub fn parse_rat(text: &str) -> Result<Rat, RatParseError> {
    if text.is_empty() {
        return Err(RatParseError::Empty);
    }
    let mut parts = text.splitn(2, '/');
    let numer = parts.next().unwrap();
    let numer: BigInt = numer
        .parse()
        .map_err(|_| RatParseError::Malformed(text.to_string()))?;
    match parts.next() {
        None => Ok(Rat::from_integer(numer)),
        Some(denom) => {
            let denom: BigInt = denom
                .parse()
                .map_err(|_| RatParseError::Malformed(text.to_string()))?;
            if denom <= BigInt::zero() {
                return Err(RatParseError::BadDenominator(text.to_string()));
            }
            Ok(Rat::new(numer, denom))
        }
    }
}

/// Formats as `"p/q"`, or `"p"` when the value is an integer.
pub fn format_rat(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Display-only conversion used by the SVG renderer.
pub fn to_f64(x: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_fractions_and_integers() {
        assert_eq!(parse_rat("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rat("7").unwrap(), rat_int(7));
        assert_eq!(parse_rat("0").unwrap(), zero());
    }

    #[test]
    fn parse_rejects_zero_or_negative_denominator() {
        assert!(matches!(
            parse_rat("1/0"),
            Err(RatParseError::BadDenominator(_))
        ));
        assert!(matches!(
            parse_rat("1/-2"),
            Err(RatParseError::BadDenominator(_))
        ));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rat("").is_err());
        assert!(parse_rat("a/b").is_err());
        assert!(parse_rat("1.5").is_err());
        assert!(parse_rat("1/2/3").is_err());
    }

    #[test]
    fn format_round_trips() {
        for x in [rat(1, 3), rat(-5, 7), rat_int(4), zero(), rat(6, 4)] {
            assert_eq!(parse_rat(&format_rat(&x)).unwrap(), x);
        }
    }

    #[test]
    fn reduction_is_canonical() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(format_rat(&rat(2, 4)), "1/2");
    }
}
