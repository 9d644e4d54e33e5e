//! Rational number helpers: `num/den` text round-tripping and integer
//! extraction.

use crate::error::{Error, Result};
use num::{BigInt, BigRational, One, Signed, Zero};
use std::str::FromStr;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Canonical `num/den` text, always in lowest terms with positive
/// denominator, e.g. `-3/4`, `5/1`.
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den` text; a bare integer is read as denominator 1.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let numer = BigInt::from_str(n.trim()).map_err(|e| Error::Parse(format!("bad numerator {n:?}: {e}")))?;
    let denom = BigInt::from_str(d.trim()).map_err(|e| Error::Parse(format!("bad denominator {d:?}: {e}")))?;
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(numer, denom))
}

/// Converts to `i64`, failing on non-integers and overflow.
pub fn rat_to_i64(r: &Rat) -> Result<i64> {
    if !r.is_integer() {
        return Err(Error::Internal(format!("expected integer, got {}", format_rat(r))));
    }
    let n = r.to_integer();
    i64::try_from(&n).map_err(|_| Error::Internal(format!("integer {n} overflows i64")))
}

pub fn is_one(r: &Rat) -> bool {
    r.is_one()
}

pub fn is_nonneg(r: &Rat) -> bool {
    !r.is_negative()
}

/// FNV-1a 64-bit digest, used for convention fingerprints in cache
/// headers. Stability across platforms matters; cryptographic strength
/// does not.
pub fn fnv64(data: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in data {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}
