//! Exact rational arithmetic helpers.
//!
//! All exact quantities in the crate are arbitrary-precision rationals,
//! kept reduced with a positive denominator by the underlying
//! representation. The canonical text form is `p/q` (always with the
//! denominator, so `0/1` and `1/1` are valid outputs); the parser also
//! accepts plain integers and decimal literals such as `0.5`.

use crate::error::Error;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Exact rational number.
pub type Rational = BigRational;

/// Builds `n/d` from machine integers. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Reciprocal of a positive count, `1/n`. Panics if `n == 0`.
pub fn recip(n: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(n))
}

/// Nearest double to a rational.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Canonical `p/q` rendering of a reduced rational.
pub fn format(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q`, a plain integer, or a decimal literal into a rational.
pub fn parse(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::parse("empty rational literal"));
    }
    if let Some((p, q)) = s.split_once('/') {
        let numer: BigInt = p
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad numerator in {s:?}")))?;
        let denom: BigInt = q
            .trim()
            .parse()
            .map_err(|_| Error::parse(format!("bad denominator in {s:?}")))?;
        if denom.is_zero() {
            return Err(Error::parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(numer, denom));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let whole: BigInt = if whole.is_empty() || whole == "-" {
            BigInt::zero()
        } else {
            whole
                .parse()
                .map_err(|_| Error::parse(format!("bad decimal in {s:?}")))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(format!("bad decimal in {s:?}")));
        }
        let digits: BigInt = frac
            .parse()
            .map_err(|_| Error::parse(format!("bad decimal in {s:?}")))?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = Rational::new(digits, scale);
        let whole_part = Rational::from_integer(whole);
        return Ok(if negative {
            whole_part - frac_part
        } else {
            whole_part + frac_part
        });
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::parse(format!("bad rational literal {s:?}")))?;
    Ok(Rational::from_integer(n))
}

/// True if `r` lies in the closed interval `[0, 1]`.
pub fn in_unit_interval(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_reduces_and_normalizes_sign() {
        let r = ratio(4, -6);
        assert_eq!(format(&r), "-2/3");
        assert_eq!(format(&ratio(0, 5)), "0/1");
    }

    #[test]
    fn parse_accepts_fraction_integer_and_decimal() {
        assert_eq!(parse("2/3").unwrap(), ratio(2, 3));
        assert_eq!(parse("-7").unwrap(), int(-7));
        assert_eq!(parse("0.5").unwrap(), ratio(1, 2));
        assert_eq!(parse("1.25").unwrap(), ratio(5, 4));
        assert_eq!(parse("-0.5").unwrap(), ratio(-1, 2));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse("").is_err());
        assert!(parse("1/0").is_err());
        assert!(parse("a/b").is_err());
        assert!(parse("1.2.3").is_err());
        assert!(parse("1.x").is_err());
    }

    #[test]
    fn roundtrips_through_text() {
        for (n, d) in [(1i64, 3i64), (-5, 7), (0, 1), (10, 2)] {
            let r = ratio(n, d);
            assert_eq!(parse(&format(&r)).unwrap(), r);
        }
    }

    #[test]
    fn recip_and_f64() {
        assert_eq!(recip(4), ratio(1, 4));
        assert_eq!(to_f64(&ratio(1, 2)), 0.5);
    }
}
