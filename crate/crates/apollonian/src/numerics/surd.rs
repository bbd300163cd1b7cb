//! Quadratic surds a + b*sqrt(d) with rational a, b and square-free d.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numerics::rat_int;

/// Value a + b*sqrt(d). Kept canonical: d is square-free, d = 0 exactly
/// when the value is rational, and then b = 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    a: BigRational,
    b: BigRational,
    d: BigInt,
}

/// Pulls the largest square factor out of n, returning (square_root, rest).
fn extract_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut root = BigInt::one();
    let mut f = BigInt::from(2u8);
    // trial division; desk-scale radicands factor instantly
    while &f * &f <= rest {
        let f2 = &f * &f;
        while (&rest % &f2).is_zero() {
            rest /= &f2;
            root *= &f;
        }
        f += 1;
        if f > BigInt::from(1_000_000u32) {
            break;
        }
    }
    if let Some(s) = crate::numerics::integer_sqrt(&rest) {
        root *= &s;
        rest = BigInt::one();
    }
    (root, rest)
}

impl QuadraticSurd {
    /// Builds a + b*sqrt(d) and normalizes. Errors on negative d.
    pub fn new(a: BigRational, b: BigRational, d: BigInt) -> Result<Self> {
        if d.is_negative() {
            return Err(Error::InvalidSurd(format!("negative radicand {d}")));
        }
        let mut s = Self { a, b, d };
        s.normalize();
        Ok(s)
    }

    pub fn from_rational(a: BigRational) -> Self {
        Self {
            a,
            b: BigRational::zero(),
            d: BigInt::zero(),
        }
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Self::from_rational(rat_int(n))
    }

    /// sqrt(d) itself.
    pub fn sqrt_of(d: BigInt) -> Result<Self> {
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    fn normalize(&mut self) {
        if self.b.is_zero() || self.d.is_zero() {
            self.b = BigRational::zero();
            self.d = BigInt::zero();
            return;
        }
        let (root, rest) = extract_square(&self.d);
        if !root.is_one() {
            self.b *= rat_int(root);
            self.d = rest;
        }
        if self.d.is_one() {
            self.a += self.b.clone();
            self.b = BigRational::zero();
            self.d = BigInt::zero();
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_coefficient(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.is_rational() && self.a.is_zero()
    }

    /// Galois conjugate a - b*sqrt(d).
    pub fn conjugate(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    fn common_d(&self, rhs: &Self) -> Result<BigInt> {
        match (self.d.is_zero(), rhs.d.is_zero()) {
            (true, true) => Ok(BigInt::zero()),
            (false, true) => Ok(self.d.clone()),
            (true, false) => Ok(rhs.d.clone()),
            (false, false) => {
                if self.d == rhs.d {
                    Ok(self.d.clone())
                } else {
                    Err(Error::MixedRadicands)
                }
            }
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        let d = self.common_d(rhs)?;
        Self::new(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        let d = self.common_d(rhs)?;
        Self::new(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        let d = self.common_d(rhs)?;
        let dr = rat_int(d.clone());
        Self::new(
            &self.a * &rhs.a + &(&self.b * &rhs.b) * &dr,
            &self.a * &rhs.b + &self.b * &rhs.a,
            d,
        )
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        let d = self.common_d(rhs)?;
        let dr = rat_int(d.clone());
        let norm = &rhs.a * &rhs.a - &(&rhs.b * &rhs.b) * &dr;
        if norm.is_zero() {
            return Err(Error::Domain("division by zero surd".into()));
        }
        let conj = rhs.conjugate();
        let num = Self::new(
            &self.a * &conj.a + &(&self.b * &conj.b) * &dr,
            &self.a * &conj.b + &self.b * &conj.a,
            d,
        )?;
        Self::new(num.a / norm.clone(), num.b / norm, num.d)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self {
            a: &self.a * s,
            b: &self.b * s,
            d: self.d.clone(),
        }
    }

    /// Exact sign of the value.
    pub fn sign(&self) -> Ordering {
        if self.b.is_zero() {
            return self
                .a
                .partial_cmp(&BigRational::zero())
                .unwrap_or(Ordering::Equal);
        }
        let b_pos = self.b.is_positive();
        if self.a.is_zero() {
            return if b_pos {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
        let a_pos = self.a.is_positive();
        if a_pos == b_pos {
            return if a_pos {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
        // opposite signs: compare a^2 with b^2 d
        let a2 = &self.a * &self.a;
        let b2d = &(&self.b * &self.b) * &rat_int(self.d.clone());
        match a2.cmp(&b2d) {
            Ordering::Equal => Ordering::Equal,
            Ordering::Greater => {
                if a_pos {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            Ordering::Less => {
                if b_pos {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        a + b * d.sqrt()
    }

    /// JSON form {"a": "...", "b": "...", "d": n}.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "a": self.a.to_string(),
            "b": self.b.to_string(),
            "d": self.d.to_string(),
        })
    }
}

impl Add for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn add(self, rhs: &QuadraticSurd) -> QuadraticSurd {
        self.try_add(rhs).expect("surd addition: mixed radicands")
    }
}

impl Sub for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn sub(self, rhs: &QuadraticSurd) -> QuadraticSurd {
        self.try_sub(rhs).expect("surd subtraction: mixed radicands")
    }
}

impl Mul for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn mul(self, rhs: &QuadraticSurd) -> QuadraticSurd {
        self.try_mul(rhs).expect("surd product: mixed radicands")
    }
}

impl Div for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn div(self, rhs: &QuadraticSurd) -> QuadraticSurd {
        self.try_div(rhs).expect("surd quotient: mixed radicands")
    }
}

impl Neg for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn neg(self) -> QuadraticSurd {
        QuadraticSurd {
            a: -self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt({})", self.b, self.d);
        }
        if self.b.is_negative() {
            write!(f, "{}-{}*sqrt({})", self.a, self.b.abs(), self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

/// Both roots of x^2 - trace*x + det = 0, larger first, as exact surds.
pub fn surd_roots(trace: &BigInt, det: &BigInt) -> Result<(QuadraticSurd, QuadraticSurd)> {
    let disc = trace * trace - BigInt::from(4u8) * det;
    if disc.is_negative() {
        return Err(Error::ComplexRoots);
    }
    let half_trace = BigRational::new(trace.clone(), BigInt::from(2u8));
    let half = BigRational::new(BigInt::one(), BigInt::from(2u8));
    let plus = QuadraticSurd::new(half_trace.clone(), half.clone(), disc.clone())?;
    let minus = QuadraticSurd::new(half_trace, -half, disc)?;
    Ok((plus, minus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    fn surd(a: (i64, i64), b: (i64, i64), d: i64) -> QuadraticSurd {
        QuadraticSurd::new(rat(a.0, a.1), rat(b.0, b.1), BigInt::from(d)).unwrap()
    }

    #[test]
    fn normalization_extracts_squares() {
        // 1 + 2*sqrt(12) = 1 + 4*sqrt(3)
        let s = surd((1, 1), (2, 1), 12);
        assert_eq!(s, surd((1, 1), (4, 1), 3));
        // sqrt(9) collapses to the rational 3
        let t = surd((0, 1), (1, 1), 9);
        assert!(t.is_rational());
        assert_eq!(t.as_rational().unwrap(), &rat(3, 1));
    }

    #[test]
    fn roots_of_trace_det() {
        let (p, m) = surd_roots(&BigInt::from(4), &BigInt::from(1)).unwrap();
        assert_eq!(p, surd((2, 1), (1, 1), 3));
        assert_eq!(m, surd((2, 1), (-1, 1), 3));

        let (p, m) = surd_roots(&BigInt::from(3), &BigInt::from(1)).unwrap();
        assert_eq!(p, surd((3, 2), (1, 2), 5));
        assert_eq!(m, surd((3, 2), (-1, 2), 5));

        // parabolic double root
        let (p, m) = surd_roots(&BigInt::from(2), &BigInt::from(1)).unwrap();
        assert_eq!(p, QuadraticSurd::from_int(1));
        assert_eq!(p, m);

        assert!(surd_roots(&BigInt::from(1), &BigInt::from(1)).is_err());
    }

    #[test]
    fn root_sum_and_product_are_exact() {
        let t = BigInt::from(7);
        let d = BigInt::from(1);
        let (p, m) = surd_roots(&t, &d).unwrap();
        assert_eq!(p.try_add(&m).unwrap(), QuadraticSurd::from_int(7));
        assert_eq!(p.try_mul(&m).unwrap(), QuadraticSurd::from_int(1));
    }

    #[test]
    fn mixed_radicands_rejected() {
        let a = surd((0, 1), (1, 1), 2);
        let b = surd((0, 1), (1, 1), 3);
        assert!(a.try_add(&b).is_err());
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn exact_sign() {
        // 2 - sqrt(3) > 0, 1 - sqrt(3) < 0, sqrt(4) - 2 = 0
        assert_eq!(surd((2, 1), (-1, 1), 3).sign(), Ordering::Greater);
        assert_eq!(surd((1, 1), (-1, 1), 3).sign(), Ordering::Less);
        assert_eq!(surd((-2, 1), (1, 1), 4).sign(), Ordering::Equal);
    }

    #[test]
    fn division_round_trips() {
        let x = surd((3, 2), (1, 2), 5);
        let y = surd((-1, 3), (2, 1), 5);
        let q = x.try_div(&y).unwrap();
        assert_eq!(q.try_mul(&y).unwrap(), x);
    }
}
