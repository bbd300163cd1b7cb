//! Farey fractions, friendly triplets and Ford circles: the arithmetic
//! skeleton of the gasket.
//!
//! Geometry lives in unscaled coordinates, where the circle of p/q has
//! radius 1/(2q^2) and geometric curvature 2q^2; curvature labels are
//! reported in the halved convention q^2. The extended quadruple of a
//! triplet is built in the doubled plane, where the label curvatures are
//! the geometric ones.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::descartes::{DescartesQuad, ExtendedQuad};
use crate::error::{Error, Result};
use crate::geometry::GeneralizedCircle;
use crate::numerics::{rat_int, GaussianRational};

/// A reduced nonnegative fraction p/q.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fraction {
    p: BigUint,
    q: BigUint,
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.p * &other.q).cmp(&(&other.p * &self.q))
    }
}

impl Fraction {
    pub fn new<P: Into<BigUint>, Q: Into<BigUint>>(p: P, q: Q) -> Result<Self> {
        let p = p.into();
        let q = q.into();
        if q.is_zero() {
            return Err(Error::Parse("fraction with zero denominator".into()));
        }
        let g = p.gcd(&q);
        Ok(Fraction {
            p: &p / &g,
            q: &q / &g,
        })
    }

    pub fn zero() -> Self {
        Fraction {
            p: BigUint::zero(),
            q: BigUint::one(),
        }
    }

    pub fn one() -> Self {
        Fraction {
            p: BigUint::one(),
            q: BigUint::one(),
        }
    }

    pub fn numer(&self) -> &BigUint {
        &self.p
    }

    pub fn denom(&self) -> &BigUint {
        &self.q
    }

    pub fn value(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.p.clone()),
            BigInt::from(self.q.clone()),
        )
    }

    /// Curvature label q^2 in the halved convention.
    pub fn curvature_label(&self) -> BigUint {
        &self.q * &self.q
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, q) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("expected p/q, got {s:?}")))?;
        let p: BigUint = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let q: BigUint = q
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        Fraction::new(p, q)
    }
}

/// The Ford circle of a fraction: tangent to the x-axis at p/q with
/// radius 1/(2q^2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FordCircle {
    pub fraction: Fraction,
    pub circle: GeneralizedCircle,
}

pub fn ford_circle(f: &Fraction) -> FordCircle {
    let q2 = BigInt::from(&f.q * &f.q);
    let center = GaussianRational::new(
        f.value(),
        BigRational::new(BigInt::one(), 2 * q2.clone()),
    );
    let radius_sq = BigRational::new(BigInt::one(), 4 * &q2 * &q2);
    FordCircle {
        fraction: f.clone(),
        circle: GeneralizedCircle::circle(center, radius_sq, 1),
    }
}

/// (p_a + p_b) / (q_a + q_b), reduced. Reduction is a no-op for Farey
/// neighbors.
pub fn mediant(a: &Fraction, b: &Fraction) -> Fraction {
    Fraction::new(&a.p + &b.p, &a.q + &b.q).expect("mediant denominator is positive")
}

/// Farey-neighbor test |q_a p_b - q_b p_a| = 1; equivalent to tangency of
/// the two Ford circles.
pub fn is_neighbor(a: &Fraction, b: &Fraction) -> bool {
    let cross = BigInt::from(a.q.clone()) * BigInt::from(b.p.clone())
        - BigInt::from(b.q.clone()) * BigInt::from(a.p.clone());
    cross.abs().is_one()
}

/// Three fractions whose center is the mediant of the outer two, all
/// pairwise Farey neighbors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FriendlyTriplet {
    pub left: Fraction,
    pub center: Fraction,
    pub right: Fraction,
}

impl FriendlyTriplet {
    pub fn new(left: Fraction, center: Fraction, right: Fraction) -> Result<Self> {
        if center != mediant(&left, &right) {
            return Err(Error::InvalidTriplet(format!(
                "{center} is not the mediant of {left} and {right}"
            )));
        }
        if !is_neighbor(&left, &right)
            || !is_neighbor(&left, &center)
            || !is_neighbor(&center, &right)
        {
            return Err(Error::InvalidTriplet(format!(
                "{left}, {center}, {right} are not pairwise neighbors"
            )));
        }
        Ok(FriendlyTriplet {
            left,
            center,
            right,
        })
    }

    /// The root triplet (0/1, 1/2, 1/1).
    pub fn farey_root() -> Self {
        FriendlyTriplet::new(
            Fraction::zero(),
            Fraction::new(1u8, 2u8).unwrap(),
            Fraction::one(),
        )
        .unwrap()
    }

    /// Text form "pL/qL,pc/qc,pR/qR".
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!(
                "expected left,center,right fractions, got {s:?}"
            )));
        }
        FriendlyTriplet::new(parts[0].parse()?, parts[1].parse()?, parts[2].parse()?)
    }
}

impl fmt::Display for FriendlyTriplet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.left, self.center, self.right)
    }
}

/// The Descartes quadruple (q_c^2, q_R^2, q_L^2, 0) of a friendly triplet
/// in the halved label convention.
pub fn triplet_to_quad(t: &FriendlyTriplet) -> DescartesQuad {
    let sq = |f: &Fraction| rat_int(BigInt::from(f.curvature_label()));
    DescartesQuad::new([
        sq(&t.center),
        sq(&t.right),
        sq(&t.left),
        BigRational::zero(),
    ])
    .expect("friendly triplets satisfy the Descartes relation")
}

/// Extended quadruple of a triplet in the doubled plane: the circle of
/// p/q has curvature q^2 and weighted center 2pq + i, the x-axis has
/// normal -i.
pub fn triplet_to_extended(t: &FriendlyTriplet) -> ExtendedQuad {
    let quad = triplet_to_quad(t);
    let kz = |f: &Fraction| {
        GaussianRational::new(
            rat_int(BigInt::from(2u8) * BigInt::from(f.numer() * f.denom())),
            rat_int(1),
        )
    };
    ExtendedQuad::new(
        quad,
        [
            kz(&t.center),
            kz(&t.right),
            kz(&t.left),
            -&GaussianRational::i(),
        ],
    )
    .expect("Ford quadruples reconstruct to tangent circles")
}

/// The two Farey parents of a fraction in (0, 1): its unique neighbors
/// with smaller denominators.
pub fn parents(f: &Fraction) -> Result<(Fraction, Fraction)> {
    if f.q.is_one() {
        return Err(Error::Domain(format!("{f} has no Farey parents")));
    }
    let p = BigInt::from(f.p.clone());
    let q = BigInt::from(f.q.clone());
    // right parent c/d with c q - d p = 1: d = -p^{-1} mod q
    let egcd = p.extended_gcd(&q);
    debug_assert!(egcd.gcd.is_one());
    let p_inv = egcd.x.mod_floor(&q);
    let d = (-p_inv).mod_floor(&q);
    let c = (BigInt::one() + &p * &d) / &q;
    let right = Fraction::new(
        c.to_biguint()
            .ok_or_else(|| Error::Domain("negative parent numerator".into()))?,
        d.to_biguint()
            .ok_or_else(|| Error::Domain("negative parent denominator".into()))?,
    )?;
    let left = Fraction::new(
        (&p - BigInt::from(right.p.clone()))
            .to_biguint()
            .ok_or_else(|| Error::Domain("negative parent numerator".into()))?,
        (&q - BigInt::from(right.q.clone()))
            .to_biguint()
            .ok_or_else(|| Error::Domain("negative parent denominator".into()))?,
    )?;
    debug_assert_eq!(mediant(&left, &right), *f);
    Ok((left, right))
}

/// Left/right descent from the root 1/2 of the Farey tree to f, one
/// letter per mediant step. Defined for 0 < f < 1.
pub fn stern_brocot_path(f: &Fraction) -> Result<String> {
    if f <= &Fraction::zero() || f >= &Fraction::one() {
        return Err(Error::Domain(format!(
            "{f} is outside the open unit interval"
        )));
    }
    let mut lo = Fraction::zero();
    let mut hi = Fraction::one();
    let mut med = mediant(&lo, &hi);
    let mut path = String::new();
    for _ in 0..10_000 {
        if &med == f {
            return Ok(path);
        }
        if f.value() < med.value() {
            path.push('L');
            hi = med;
        } else {
            path.push('R');
            lo = med;
        }
        med = mediant(&lo, &hi);
    }
    Err(Error::Domain("Farey descent failed to terminate".into()))
}

/// All friendly triplets with center denominator at most `max_qc`,
/// descending the Farey tree from (0/1, 1/2, 1/1). Deterministic order.
pub fn enumerate_friendly(max_qc: &BigUint) -> Vec<FriendlyTriplet> {
    let mut out = Vec::new();
    let mut stack = vec![(Fraction::zero(), Fraction::one())];
    while let Some((l, r)) = stack.pop() {
        let c = mediant(&l, &r);
        if c.denom() > max_qc {
            continue;
        }
        out.push(FriendlyTriplet::new(l.clone(), c.clone(), r.clone()).unwrap());
        stack.push((c.clone(), r));
        stack.push((l, c));
    }
    out.sort_by(|a, b| {
        (a.center.denom(), a.center.numer()).cmp(&(b.center.denom(), b.center.numer()))
    });
    out
}

/// The Farey sequence of order n on [0, 1], in increasing order.
pub fn farey_sequence(n: &BigUint) -> Vec<Fraction> {
    let mut out = vec![Fraction::zero()];
    fn descend(l: &Fraction, r: &Fraction, n: &BigUint, out: &mut Vec<Fraction>) {
        let c = mediant(l, r);
        if c.denom() > n {
            return;
        }
        descend(l, &c, n, out);
        out.push(c.clone());
        descend(&c, r, n, out);
    }
    descend(&Fraction::zero(), &Fraction::one(), n, &mut out);
    out.push(Fraction::one());
    out
}
