//! Exact rational scalars.
//!
//! Every numeric quantity the library reports (heights, pairings, error
//! bounds) is a `Rat`. Nothing in the crate touches floating point.

use crate::error::{FfhError, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_zero() -> Rat {
    Rat::zero()
}

pub fn rat_one() -> Rat {
    Rat::one()
}

pub fn rat_abs(x: &Rat) -> Rat {
    x.abs()
}

/// Canonical "a/b" rendering; integers print without the "/1".
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse "a", "a/b" or "-a/b" into a rational.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |txt: &str| -> Result<BigInt> {
        txt.trim()
            .parse::<BigInt>()
            .map_err(|_| FfhError::parse(format!("bad integer {txt:?} in rational")))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(FfhError::parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(parse_int(n)?, den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["0", "1", "-3", "1/2", "-7/3", "22/7"] {
            let r = rat_from_str(s).unwrap();
            assert_eq!(rat_to_string(&r), s);
        }
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(rat_from_str("1/0").is_err());
    }
}
