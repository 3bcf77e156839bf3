//! Small helpers around [`BigRational`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Q = BigRational;

pub fn q_int<T: Into<BigInt>>(n: T) -> Q {
    Q::from_integer(n.into())
}

pub fn q_frac<T: Into<BigInt>, U: Into<BigInt>>(n: T, d: U) -> Q {
    Q::new(n.into(), d.into())
}

/// Formats as `p/q`, or `p` for integers.
pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(parse_int(n)?, d))
        }
        None => Ok(Q::from_integer(parse_int(s)?)),
    }
}

/// Whether `x` is the square of a rational number.
pub fn is_rational_square(x: &Q) -> bool {
    if x.is_negative() {
        return false;
    }
    is_square(x.numer()) && is_square(x.denom())
}

pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}
