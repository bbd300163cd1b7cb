//! Exact scalar arithmetic: arbitrary-precision rationals, Gaussian
//! rationals, quadratic surds and periodic continued fractions.
//!
//! Every value is immutable once built and kept in canonical form
//! (rationals in lowest terms with positive denominator, surds with a
//! square-free radicand), so equality is structural throughout.

mod cf;
mod gaussian;
mod surd;

pub use cf::{cf_convergent, cf_expand, PeriodicCF};
pub use gaussian::GaussianRational;
pub use surd::{surd_roots, QuadraticSurd};

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

use crate::error::{Error, Result};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Rational from an integer.
pub fn rat_int<T: Into<BigInt>>(n: T) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Rational p/q. Panics when q = 0.
pub fn rat<P: Into<BigInt>, Q: Into<BigInt>>(p: P, q: Q) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// Parses "p/q" or "n" into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

/// Exact square root of a nonnegative rational, when it is itself rational.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(BigRational::zero());
    }
    let ns = r.numer().sqrt();
    let ds = r.denom().sqrt();
    if &(&ns * &ns) == r.numer() && &(&ds * &ds) == r.denom() {
        Some(BigRational::new(ns, ds))
    } else {
        None
    }
}

/// Exact integer square root of a nonnegative integer, when perfect.
pub fn integer_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &(&s * &s) == n {
        Some(s)
    } else {
        None
    }
}

/// Floor division helper for signed big integers.
pub(crate) fn div_floor_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

/// f64 view of a rational, for reporting only.
pub fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_display_matches_wire_form() {
        assert_eq!(rat(3, 6).to_string(), "1/2");
        assert_eq!(rat(-4, 2).to_string(), "-2");
        assert_eq!(rat_int(7).to_string(), "7");
    }

    #[test]
    fn parse_round_trips() {
        for s in ["0", "-3", "5/9", "-11/30"] {
            assert_eq!(parse_rational(s).unwrap().to_string(), s);
        }
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn rational_sqrt_exact_only() {
        assert_eq!(rational_sqrt(&rat(1, 4)), Some(rat(1, 2)));
        assert_eq!(rational_sqrt(&rat(9, 16)), Some(rat(3, 4)));
        assert_eq!(rational_sqrt(&rat(1, 2)), None);
        assert_eq!(rational_sqrt(&rat(-1, 4)), None);
    }
}
