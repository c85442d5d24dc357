use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Field of exact rationals every computation runs over.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `p` or `p/q` in lowest terms, with `q > 0`.
pub fn scalar_to_string(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let text = text.trim();
    let bad = || Error::parse("rational", format!("malformed rational literal '{text}'"));
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::parse("rational", "zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalises_sign_and_gcd() {
        assert_eq!(scalar_to_string(&rat(4, -6)), "-2/3");
        assert_eq!(scalar_to_string(&rat(6, 3)), "2");
    }

    #[test]
    fn parses_round_trip() {
        for s in ["0", "-7", "3/2", "-11/13"] {
            assert_eq!(scalar_to_string(&parse_scalar(s).unwrap()), s);
        }
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
    }
}
