//! Gaussian rationals: exact points of the complex plane.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numerics::{rat_int, rational_sqrt};

/// A complex number with rational real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn from_ints<A: Into<num_bigint::BigInt>, B: Into<num_bigint::BigInt>>(
        re: A,
        im: B,
    ) -> Self {
        Self::new(rat_int(re), rat_int(im))
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Complex conjugate; an involution.
    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// |z|^2 = re^2 + im^2, always rational.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        let n = self.norm_sq();
        assert!(!n.is_zero(), "division by zero Gaussian rational");
        Self::new(&self.re / &n, -(&self.im / &n))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(&self.re * s, &self.im * s)
    }

    /// Exact Gaussian-rational square root, when one exists.
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let r = rational_sqrt(&self.norm_sq())?;
        // w = u + iv with u^2 = (re + |z|)/2 and 2uv = im.
        let two = rat_int(2);
        let u2 = (&self.re + &r) / &two;
        let u = rational_sqrt(&u2)?;
        if u.is_zero() {
            // purely imaginary square: re <= 0, im = 0
            let v = rational_sqrt(&(-self.re.clone()))?;
            if self.im.is_zero() {
                return Some(Self::new(BigRational::zero(), v));
            }
            return None;
        }
        let v = &self.im / &(&u * &two);
        let cand = Self::new(u, v);
        if &cand * &cand == *self {
            Some(cand)
        } else {
            None
        }
    }

    pub fn to_complex_f64(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self * &rhs.recip()
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

/// Wire form "p/q+r/si" with an explicit sign between the parts.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_abs = self.im.abs();
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}i", self.re, sign, im_abs)
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(body) = s.strip_suffix('i') {
            // split at the last +/- that is not a leading sign or inside "/"
            let bytes = body.as_bytes();
            let mut split = None;
            for (idx, &b) in bytes.iter().enumerate().skip(1) {
                if (b == b'+' || b == b'-') && bytes[idx - 1] != b'/' {
                    split = Some(idx);
                }
            }
            let idx = split.ok_or_else(|| Error::Parse(format!("bad complex literal {s:?}")))?;
            let re = crate::numerics::parse_rational(&body[..idx])?;
            let im_str = &body[idx..];
            let im = match im_str {
                "+" => rat_int(1),
                "-" => rat_int(-1),
                _ => crate::numerics::parse_rational(im_str)?,
            };
            Ok(Self::new(re, im))
        } else {
            Ok(Self::from_real(crate::numerics::parse_rational(s)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    fn g(a: (i64, i64), b: (i64, i64)) -> GaussianRational {
        GaussianRational::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn field_identities() {
        let x = g((2, 5), (1, 5));
        let y = g((3, 10), (1, 10));
        let z = g((-1, 3), (7, 2));
        // associativity and distributivity on a fixed sample
        assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        // conjugation is an involution and multiplicative
        assert_eq!(x.conj().conj(), x);
        assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        // division undoes multiplication
        assert_eq!(&(&x * &y) / &y, x);
    }

    #[test]
    fn display_and_parse() {
        let x = g((2, 5), (1, 5));
        assert_eq!(x.to_string(), "2/5+1/5i");
        assert_eq!("2/5+1/5i".parse::<GaussianRational>().unwrap(), x);
        let y = g((-1, 3), (-2, 1));
        assert_eq!(y.to_string(), "-1/3-2i");
        assert_eq!("-1/3-2i".parse::<GaussianRational>().unwrap(), y);
        assert_eq!(
            "7".parse::<GaussianRational>().unwrap(),
            GaussianRational::from_ints(7, 0)
        );
    }

    #[test]
    fn exact_sqrt() {
        let z = g((3, 1), (4, 1));
        let w = z.sqrt_exact().unwrap();
        assert_eq!(&w * &w, z);
        assert_eq!(w, g((2, 1), (1, 1)));
        // -1 has the exact root i
        let m1 = GaussianRational::from_ints(-1, 0);
        assert_eq!(m1.sqrt_exact().unwrap(), GaussianRational::i());
        // 2 has no rational square root
        assert!(GaussianRational::from_ints(2, 0).sqrt_exact().is_none());
    }
}
