//! Möbius and anti-Möbius transformations over the Gaussian rationals.
//!
//! A map is stored as an unnormalized 2x2 matrix together with a
//! `conjugating` flag; when the flag is set the input is conjugated first,
//! which represents anti-conformal maps such as inversions in mirrors.
//! Maps that differ by a nonzero scalar are equal. Determinant-1
//! normalization would require a square root, so it is never applied to the
//! stored entries; classification works with the scale-free quantity
//! trace^2 / det.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::geometry::{GeneralizedCircle, Hermitian};
use crate::numerics::{rat_int, GaussianRational, QuadraticSurd};

/// A point of the Riemann sphere with exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtendedPoint {
    Finite(GaussianRational),
    Infinity,
}

impl ExtendedPoint {
    pub fn finite(re: BigRational, im: BigRational) -> Self {
        ExtendedPoint::Finite(GaussianRational::new(re, im))
    }

    pub fn from_real(re: BigRational) -> Self {
        ExtendedPoint::Finite(GaussianRational::from_real(re))
    }

    pub fn as_finite(&self) -> Option<&GaussianRational> {
        match self {
            ExtendedPoint::Finite(z) => Some(z),
            ExtendedPoint::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ExtendedPoint::Infinity)
    }
}

impl fmt::Display for ExtendedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedPoint::Finite(z) => write!(f, "{z}"),
            ExtendedPoint::Infinity => write!(f, "inf"),
        }
    }
}

impl From<GaussianRational> for ExtendedPoint {
    fn from(z: GaussianRational) -> Self {
        ExtendedPoint::Finite(z)
    }
}

/// z -> (az + b) / (cz + d), optionally conjugating the input first.
#[derive(Debug, Clone)]
pub struct MobiusMap {
    pub a: GaussianRational,
    pub b: GaussianRational,
    pub c: GaussianRational,
    pub d: GaussianRational,
    pub conjugating: bool,
}

/// Conjugacy class of a conformal map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapClass {
    Identity,
    Parabolic,
    Elliptic,
    Hyperbolic,
    Loxodromic,
}

/// Fixed points in the most exact representation available.
#[derive(Debug, Clone)]
pub enum FixedPoints {
    /// Every point is fixed (identity map).
    All,
    Single(ExtendedPoint),
    Pair(ExtendedPoint, ExtendedPoint),
    /// Real quadratic-irrational pair, exact.
    PairSurd(QuadraticSurd, QuadraticSurd),
    /// Not exactly representable here; double-precision approximations.
    PairNumeric((f64, f64), (f64, f64)),
}

impl MobiusMap {
    pub fn try_new(
        a: GaussianRational,
        b: GaussianRational,
        c: GaussianRational,
        d: GaussianRational,
        conjugating: bool,
    ) -> Result<Self> {
        let m = MobiusMap {
            a,
            b,
            c,
            d,
            conjugating,
        };
        if m.det().is_zero() {
            return Err(Error::Domain("singular Möbius matrix".into()));
        }
        Ok(m)
    }

    pub fn new(
        a: GaussianRational,
        b: GaussianRational,
        c: GaussianRational,
        d: GaussianRational,
    ) -> Self {
        Self::try_new(a, b, c, d, false).expect("matrix must be nonsingular")
    }

    pub fn new_conjugating(
        a: GaussianRational,
        b: GaussianRational,
        c: GaussianRational,
        d: GaussianRational,
    ) -> Self {
        Self::try_new(a, b, c, d, true).expect("matrix must be nonsingular")
    }

    /// Map with rational integer entries [[a, b], [c, d]].
    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(
            GaussianRational::from_ints(a, 0),
            GaussianRational::from_ints(b, 0),
            GaussianRational::from_ints(c, 0),
            GaussianRational::from_ints(d, 0),
        )
    }

    pub fn identity() -> Self {
        Self::from_ints(1, 0, 0, 1)
    }

    pub fn det(&self) -> GaussianRational {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn trace(&self) -> GaussianRational {
        &self.a + &self.d
    }

    /// Inverse map; exact, no normalization.
    pub fn inverse(&self) -> Self {
        let adj = (self.d.clone(), -&self.b, -&self.c, self.a.clone());
        if self.conjugating {
            MobiusMap {
                a: adj.0.conj(),
                b: adj.1.conj(),
                c: adj.2.conj(),
                d: adj.3.conj(),
                conjugating: true,
            }
        } else {
            MobiusMap {
                a: adj.0,
                b: adj.1,
                c: adj.2,
                d: adj.3,
                conjugating: false,
            }
        }
    }

    /// Composition: apply `g` first, then `self`.
    pub fn compose(&self, g: &MobiusMap) -> MobiusMap {
        let (ga, gb, gc, gd) = if self.conjugating {
            (g.a.conj(), g.b.conj(), g.c.conj(), g.d.conj())
        } else {
            (g.a.clone(), g.b.clone(), g.c.clone(), g.d.clone())
        };
        MobiusMap {
            a: &(&self.a * &ga) + &(&self.b * &gc),
            b: &(&self.a * &gb) + &(&self.b * &gd),
            c: &(&self.c * &ga) + &(&self.d * &gc),
            d: &(&self.c * &gb) + &(&self.d * &gd),
            conjugating: self.conjugating ^ g.conjugating,
        }
    }

    /// Applies the map to a point of the Riemann sphere.
    pub fn apply_point(&self, z: &ExtendedPoint) -> ExtendedPoint {
        let z = match (self.conjugating, z) {
            (true, ExtendedPoint::Finite(w)) => ExtendedPoint::Finite(w.conj()),
            _ => z.clone(),
        };
        match z {
            ExtendedPoint::Infinity => {
                if self.c.is_zero() {
                    ExtendedPoint::Infinity
                } else {
                    ExtendedPoint::Finite(&self.a / &self.c)
                }
            }
            ExtendedPoint::Finite(w) => {
                let den = &(&self.c * &w) + &self.d;
                if den.is_zero() {
                    ExtendedPoint::Infinity
                } else {
                    ExtendedPoint::Finite(&(&(&self.a * &w) + &self.b) / &den)
                }
            }
        }
    }

    /// Exact image of a generalized circle.
    pub fn apply_circle(&self, gc: &GeneralizedCircle) -> Result<GeneralizedCircle> {
        let h = Hermitian::from_circle(gc);
        let h = if self.conjugating { h.conjugated() } else { h };
        let image = h.pullback(&self.a, &self.b, &self.c, &self.d);
        image.to_circle()
    }

    /// Conjugacy classification with fixed points. Conjugating maps are
    /// rejected; normalize trace^2 by the determinant instead of scaling
    /// the entries.
    pub fn classify(&self) -> Result<(MapClass, FixedPoints)> {
        if self.conjugating {
            return Err(Error::UnsupportedClassification);
        }
        let det = self.det();
        let tr = self.trace();
        let tau = &(&tr * &tr) / &det;

        if self.b.is_zero() && self.c.is_zero() && self.a == self.d {
            return Ok((MapClass::Identity, FixedPoints::All));
        }

        let four = GaussianRational::from_ints(4, 0);
        let class = if tau == four {
            MapClass::Parabolic
        } else if !tau.is_real() {
            MapClass::Loxodromic
        } else if tau.re.is_negative() {
            MapClass::Loxodromic
        } else if tau.re < rat_int(4) {
            MapClass::Elliptic
        } else {
            MapClass::Hyperbolic
        };
        Ok((class, self.fixed_points()))
    }

    /// Fixed points of a non-conjugating map, as exactly as possible.
    fn fixed_points(&self) -> FixedPoints {
        if self.c.is_zero() {
            // f(z) = (a z + b)/d fixes infinity
            if self.a == self.d {
                return FixedPoints::Single(ExtendedPoint::Infinity);
            }
            let finite = &self.b / &(&self.d - &self.a);
            return FixedPoints::Pair(
                ExtendedPoint::Finite(finite),
                ExtendedPoint::Infinity,
            );
        }
        // c z^2 + (d - a) z - b = 0
        let two_c = self.c.scale(&rat_int(2));
        let amd = &self.a - &self.d;
        let disc = &(&amd * &amd) + &(&self.b * &self.c).scale(&rat_int(4));
        if disc.is_zero() {
            return FixedPoints::Single(ExtendedPoint::Finite(&amd / &two_c));
        }
        if let Some(root) = disc.sqrt_exact() {
            let z1 = &(&amd + &root) / &two_c;
            let z2 = &(&amd - &root) / &two_c;
            return FixedPoints::Pair(ExtendedPoint::Finite(z1), ExtendedPoint::Finite(z2));
        }
        let all_real = self.a.is_real() && self.b.is_real() && self.c.is_real() && self.d.is_real();
        if all_real && disc.is_real() && disc.re.is_positive() {
            // [(a - d) +- sqrt(disc)] / (2c) as exact surds
            let base = &amd.re / &two_c.re;
            let radicand = disc.re.numer() * disc.re.denom();
            let coeff = BigRational::new(BigInt::from(1), disc.re.denom().clone()) / &two_c.re;
            let plus = QuadraticSurd::new(base.clone(), coeff.clone(), radicand.clone())
                .expect("nonnegative radicand");
            let minus =
                QuadraticSurd::new(base, -coeff, radicand).expect("nonnegative radicand");
            return FixedPoints::PairSurd(plus, minus);
        }
        // numeric fallback
        let (ar, ai) = amd.to_complex_f64();
        let (dr, di) = disc.to_complex_f64();
        let (cr, ci) = two_c.to_complex_f64();
        let s = num_complex::Complex64::new(dr, di).sqrt();
        let a = num_complex::Complex64::new(ar, ai);
        let c = num_complex::Complex64::new(cr, ci);
        let z1 = (a + s) / c;
        let z2 = (a - s) / c;
        FixedPoints::PairNumeric((z1.re, z1.im), (z2.re, z2.im))
    }

    /// True when applying the map twice gives the identity.
    pub fn is_involution(&self) -> bool {
        let sq = self.compose(self);
        sq.b.is_zero() && sq.c.is_zero() && sq.a == sq.d && !sq.a.is_zero()
    }

    /// Fixed circle of a conjugating involution: the mirror whose inversion
    /// this map is.
    pub fn fixed_circle(&self) -> Result<GeneralizedCircle> {
        if !self.conjugating || !self.is_involution() {
            return Err(Error::NoFixedCircle);
        }
        // fixed set of z = (a conj(z) + b)/(c conj(z) + d):
        // c z conj(z) + d z - a conj(z) - b = 0, made Hermitian by a
        // scalar lambda.
        if !self.c.is_zero() {
            let lambda = self.c.conj();
            let a_coef = &lambda * &self.c;
            let z_coef = &lambda * &self.d;
            let zbar_coef = -&(&lambda * &self.a);
            let const_coef = -&(&lambda * &self.b);
            debug_assert!(a_coef.is_real() && const_coef.is_real());
            debug_assert_eq!(z_coef.conj(), zbar_coef);
            let herm = Hermitian {
                a: a_coef.re,
                b: zbar_coef,
                c: const_coef.re,
            };
            let circle = herm.to_circle()?;
            // mirrors are unoriented; normalize
            Ok(match circle {
                GeneralizedCircle::Circle {
                    center, radius_sq, ..
                } => GeneralizedCircle::circle(center, radius_sq, 1),
                line => line,
            })
        } else {
            // reflection z -> alpha conj(z) + beta across a straight axis
            let alpha = &self.a / &self.d;
            let beta = &self.b / &self.d;
            // involution forces alpha conj(beta) + beta = 0; axis passes
            // through beta/2 with direction t satisfying alpha conj(t) = t
            let check = &(&alpha * &beta.conj()) + &beta;
            if !check.is_zero() {
                return Err(Error::NoFixedCircle);
            }
            let minus_one = GaussianRational::from_ints(-1, 0);
            let t = if alpha == minus_one {
                GaussianRational::from_ints(0, 2)
            } else {
                &alpha + &GaussianRational::one()
            };
            let p0 = beta.scale(&crate::numerics::rat(1, 2));
            let p1 = &p0 + &t;
            Ok(GeneralizedCircle::line(p0, p1))
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "a": self.a.to_string(),
            "b": self.b.to_string(),
            "c": self.c.to_string(),
            "d": self.d.to_string(),
            "conjugating": self.conjugating,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let entry = |k: &str| -> Result<GaussianRational> {
            v.get(k)
                .and_then(|x| x.as_str())
                .ok_or_else(|| Error::Parse(format!("missing map entry {k}")))?
                .parse()
        };
        let conjugating = v
            .get("conjugating")
            .and_then(|x| x.as_bool())
            .unwrap_or(false);
        Self::try_new(entry("a")?, entry("b")?, entry("c")?, entry("d")?, conjugating)
    }
}

/// Scalar-equivalence: equal when one matrix is a nonzero multiple of the
/// other and the conjugating flags agree.
impl PartialEq for MobiusMap {
    fn eq(&self, other: &Self) -> bool {
        if self.conjugating != other.conjugating {
            return false;
        }
        let cross = |x: &GaussianRational, y: &GaussianRational,
                     u: &GaussianRational, v: &GaussianRational| {
            &(x * v) == &(y * u)
        };
        cross(&self.a, &self.b, &other.a, &other.b)
            && cross(&self.a, &self.c, &other.a, &other.c)
            && cross(&self.a, &self.d, &other.a, &other.d)
            && cross(&self.b, &self.c, &other.b, &other.c)
            && cross(&self.b, &self.d, &other.b, &other.d)
            && cross(&self.c, &self.d, &other.c, &other.d)
    }
}

impl Eq for MobiusMap {}

impl fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let conj = if self.conjugating { " after conj" } else { "" };
        write!(
            f,
            "(({})z + ({})) / (({})z + ({})){}",
            self.a, self.b, self.c, self.d, conj
        )
    }
}

fn det3(m: &[[GaussianRational; 3]; 3]) -> GaussianRational {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1])
    };
    let t0 = &m[0][0] * &minor(1, 2, 1, 2);
    let t1 = &m[0][1] * &minor(1, 2, 0, 2);
    let t2 = &m[0][2] * &minor(1, 2, 0, 1);
    &(&t0 - &t1) + &t2
}

/// The unique Möbius map sending (z1, z2, z3) to (w1, w2, w3), via the
/// three-point determinant formulas with the standard row limits when a
/// source or target point is infinite.
pub fn from_three_points(
    z: [&ExtendedPoint; 3],
    w: [&ExtendedPoint; 3],
) -> Result<MobiusMap> {
    for i in 0..3 {
        for j in (i + 1)..3 {
            if z[i] == z[j] || w[i] == w[j] {
                return Err(Error::DegenerateTriple);
            }
        }
    }

    let zero = GaussianRational::zero;
    let one = GaussianRational::one;

    let mut rows_a = Vec::new();
    let mut rows_b = Vec::new();
    let mut rows_c = Vec::new();
    let mut rows_d = Vec::new();
    for i in 0..3 {
        match (z[i], w[i]) {
            (ExtendedPoint::Finite(zi), ExtendedPoint::Finite(wi)) => {
                let zw = zi * wi;
                rows_a.push([zw.clone(), wi.clone(), one()]);
                rows_b.push([zw.clone(), zi.clone(), wi.clone()]);
                rows_c.push([zi.clone(), wi.clone(), one()]);
                rows_d.push([zw, zi.clone(), one()]);
            }
            (ExtendedPoint::Infinity, ExtendedPoint::Finite(wi)) => {
                rows_a.push([wi.clone(), zero(), zero()]);
                rows_b.push([wi.clone(), one(), zero()]);
                rows_c.push([one(), zero(), zero()]);
                rows_d.push([wi.clone(), one(), zero()]);
            }
            (ExtendedPoint::Finite(zi), ExtendedPoint::Infinity) => {
                rows_a.push([zi.clone(), one(), zero()]);
                rows_b.push([zi.clone(), zero(), one()]);
                rows_c.push([zero(), one(), zero()]);
                rows_d.push([zi.clone(), zero(), zero()]);
            }
            (ExtendedPoint::Infinity, ExtendedPoint::Infinity) => {
                rows_a.push([one(), zero(), zero()]);
                rows_b.push([one(), zero(), zero()]);
                rows_c.push([zero(), zero(), zero()]);
                rows_d.push([one(), zero(), zero()]);
            }
        }
    }
    let to_m = |rows: Vec<[GaussianRational; 3]>| -> [[GaussianRational; 3]; 3] {
        let mut it = rows.into_iter();
        [
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
        ]
    };
    let a = det3(&to_m(rows_a));
    let b = det3(&to_m(rows_b));
    let c = det3(&to_m(rows_c));
    let d = det3(&to_m(rows_d));

    let map = MobiusMap::try_new(a, b, c, d, false)
        .map_err(|_| Error::DegenerateTriple)?;
    for i in 0..3 {
        debug_assert_eq!(&map.apply_point(z[i]), w[i]);
    }
    Ok(map)
}

/// Cross-ratio (z4-z1)(z2-z3) / ((z2-z1)(z4-z3)) with the usual limit when
/// one of the points is infinite.
pub fn cross_ratio(
    z1: &ExtendedPoint,
    z2: &ExtendedPoint,
    z3: &ExtendedPoint,
    z4: &ExtendedPoint,
) -> Result<ExtendedPoint> {
    let pts = [z1, z2, z3, z4];
    let mut distinct: Vec<&ExtendedPoint> = Vec::new();
    for p in pts {
        if !distinct.iter().any(|q| *q == p) {
            distinct.push(p);
        }
    }
    if distinct.len() < 3 {
        return Err(Error::DegenerateCrossRatio);
    }
    let inf_count = pts.iter().filter(|p| p.is_infinity()).count();
    if inf_count > 1 {
        return Err(Error::DegenerateCrossRatio);
    }

    let fin = |p: &ExtendedPoint| p.as_finite().cloned();
    let (num, den) = match (fin(z1), fin(z2), fin(z3), fin(z4)) {
        (Some(a), Some(b), Some(c), Some(d)) => {
            ((&(&d - &a) * &(&b - &c)), (&(&b - &a) * &(&d - &c)))
        }
        (None, Some(b), Some(c), Some(d)) => (&b - &c, &d - &c),
        (Some(a), None, Some(c), Some(d)) => (&d - &a, &d - &c),
        (Some(a), Some(b), None, Some(d)) => (&d - &a, &b - &a),
        (Some(a), Some(b), Some(c), None) => (&b - &c, &b - &a),
        _ => unreachable!("at most one infinite point"),
    };
    if den.is_zero() {
        return Ok(ExtendedPoint::Infinity);
    }
    Ok(ExtendedPoint::Finite(&num / &den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{tangency, TangencyKind};
    use crate::numerics::rat;

    fn fin(re: (i64, i64), im: (i64, i64)) -> ExtendedPoint {
        ExtendedPoint::finite(rat(re.0, re.1), rat(im.0, im.1))
    }

    fn real(p: i64, q: i64) -> ExtendedPoint {
        ExtendedPoint::from_real(rat(p, q))
    }

    /// z / (-i z + 1): the standard map of the x-axis onto the circle of
    /// the fraction 0/1.
    fn b0() -> MobiusMap {
        MobiusMap::new(
            GaussianRational::one(),
            GaussianRational::zero(),
            GaussianRational::from_ints(0, -1),
            GaussianRational::one(),
        )
    }

    #[test]
    fn three_points_real_to_real() {
        let m = from_three_points(
            [&real(0, 1), &real(1, 2), &real(1, 1)],
            [&real(1, 3), &real(2, 5), &real(1, 2)],
        )
        .unwrap();
        assert_eq!(m, MobiusMap::from_ints(0, 1, -1, 3));
    }

    #[test]
    fn three_points_onto_circle() {
        let m = from_three_points(
            [&real(0, 1), &real(1, 2), &real(1, 3)],
            [&real(0, 1), &fin((2, 5), (1, 5)), &fin((3, 10), (1, 10))],
        )
        .unwrap();
        assert_eq!(m, b0());
    }

    #[test]
    fn three_points_identity_with_infinity() {
        let m = from_three_points(
            [&real(0, 1), &real(1, 1), &ExtendedPoint::Infinity],
            [&real(0, 1), &real(1, 1), &ExtendedPoint::Infinity],
        )
        .unwrap();
        assert_eq!(m, MobiusMap::identity());
    }

    #[test]
    fn coincident_points_rejected() {
        assert!(matches!(
            from_three_points(
                [&real(0, 1), &real(0, 1), &real(1, 1)],
                [&real(0, 1), &real(1, 2), &real(1, 1)],
            ),
            Err(Error::DegenerateTriple)
        ));
    }

    #[test]
    fn composition_matches_matrix_product() {
        let t = MobiusMap::from_ints(1, 1, 0, 1);
        assert_eq!(t.compose(&t), MobiusMap::from_ints(1, 2, 0, 1));

        let f = MobiusMap::from_ints(1, 1, 2, 3);
        let sq = f.compose(&f);
        assert_eq!(sq, MobiusMap::from_ints(3, 4, 8, 11));
        assert_eq!(sq.det(), GaussianRational::one());

        let inv = f.inverse();
        assert_eq!(f.compose(&inv), MobiusMap::identity());
    }

    #[test]
    fn composition_law_with_conjugation() {
        let f = MobiusMap::new_conjugating(
            GaussianRational::from_ints(1, 2),
            GaussianRational::from_ints(0, 1),
            GaussianRational::from_ints(3, 0),
            GaussianRational::one(),
        );
        let g = MobiusMap::new(
            GaussianRational::from_ints(2, -1),
            GaussianRational::one(),
            GaussianRational::from_ints(0, 5),
            GaussianRational::from_ints(1, 1),
        );
        for z in [
            fin((1, 2), (1, 3)),
            fin((-2, 1), (5, 7)),
            ExtendedPoint::Infinity,
        ] {
            assert_eq!(
                f.compose(&g).apply_point(&z),
                f.apply_point(&g.apply_point(&z)),
                "f∘g at {z}"
            );
            assert_eq!(
                g.compose(&f).apply_point(&z),
                g.apply_point(&f.apply_point(&z)),
                "g∘f at {z}"
            );
        }
        assert!(!f.compose(&f).conjugating);
        assert!(f.compose(&g).conjugating);
    }

    #[test]
    fn point_application() {
        let m = b0();
        assert_eq!(m.apply_point(&real(1, 2)), fin((2, 5), (1, 5)));

        let f = MobiusMap::from_ints(1, 1, 2, 3);
        assert_eq!(f.apply_point(&real(3, 8)), real(11, 30));

        // the pole maps to infinity
        let pole = fin((-3, 2), (0, 1));
        assert_eq!(f.apply_point(&pole), ExtendedPoint::Infinity);
        assert_eq!(f.apply_point(&ExtendedPoint::Infinity), real(1, 2));
    }

    #[test]
    fn circle_images() {
        // x-axis onto the circle centered (0, 1/2) with radius_sq 1/4
        let axis = GeneralizedCircle::x_axis();
        let img = b0().apply_circle(&axis).unwrap();
        let expected = GeneralizedCircle::circle(
            GaussianRational::new(rat(0, 1), rat(1, 2)),
            rat(1, 4),
            1,
        );
        assert_eq!(img, expected);

        // identity keeps any circle
        let c = GeneralizedCircle::circle(
            GaussianRational::new(rat(1, 3), rat(-2, 7)),
            rat(5, 9),
            -1,
        );
        assert_eq!(MobiusMap::identity().apply_circle(&c).unwrap(), c);

        // the mirror x^2 + (y-1)^2 = 1 also sends the axis onto that circle
        // (as a point set; the disk side flips through the inversion)
        let mirror = GeneralizedCircle::circle(
            GaussianRational::new(rat(0, 1), rat(1, 1)),
            rat(1, 1),
            1,
        );
        let inv = crate::geometry::inversion_map(&mirror);
        assert!(inv.apply_circle(&axis).unwrap().same_point_set(&expected));
    }

    #[test]
    fn tangency_is_preserved() {
        let f0 = GeneralizedCircle::circle(
            GaussianRational::new(rat(0, 1), rat(1, 2)),
            rat(1, 4),
            1,
        );
        let axis = GeneralizedCircle::x_axis();
        let m = MobiusMap::from_ints(1, 1, 2, 3);
        let i1 = m.apply_circle(&f0).unwrap();
        let i2 = m.apply_circle(&axis).unwrap();
        assert_eq!(tangency(&i1, &i2).unwrap(), TangencyKind::External);
    }

    #[test]
    fn classification() {
        let (class, fixed) = b0().classify().unwrap();
        assert_eq!(class, MapClass::Parabolic);
        match fixed {
            FixedPoints::Single(p) => assert_eq!(p, real(0, 1)),
            other => panic!("expected a single fixed point, got {other:?}"),
        }

        let f = MobiusMap::from_ints(1, 1, 2, 3);
        let (class, fixed) = f.classify().unwrap();
        assert_eq!(class, MapClass::Hyperbolic);
        match fixed {
            FixedPoints::PairSurd(p, m) => {
                // (-1 +- sqrt(3)) / 2
                let expect_p =
                    QuadraticSurd::new(rat(-1, 2), rat(1, 2), 3.into()).unwrap();
                let expect_m =
                    QuadraticSurd::new(rat(-1, 2), rat(-1, 2), 3.into()).unwrap();
                assert_eq!(p, expect_p);
                assert_eq!(m, expect_m);
            }
            other => panic!("expected surd fixed points, got {other:?}"),
        }

        let (class, fixed) = MobiusMap::identity().classify().unwrap();
        assert_eq!(class, MapClass::Identity);
        assert!(matches!(fixed, FixedPoints::All));

        let conj = MobiusMap::new_conjugating(
            GaussianRational::one(),
            GaussianRational::zero(),
            GaussianRational::zero(),
            GaussianRational::one(),
        );
        assert!(conj.classify().is_err());
    }

    #[test]
    fn cross_ratios() {
        let r = cross_ratio(&real(0, 1), &real(1, 2), &real(1, 1), &real(1, 3)).unwrap();
        assert_eq!(r, real(1, 2));

        // normalization triple (0, 1, inf, z) gives z itself
        let r = cross_ratio(
            &real(0, 1),
            &real(1, 1),
            &ExtendedPoint::Infinity,
            &real(1, 2),
        )
        .unwrap();
        assert_eq!(r, real(1, 2));

        // invariance under a rational map
        let f = MobiusMap::from_ints(1, 1, 2, 3);
        let pts = [real(0, 1), real(2, 7), real(-1, 3), real(5, 2)];
        let before = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]).unwrap();
        let imgs: Vec<ExtendedPoint> = pts.iter().map(|p| f.apply_point(p)).collect();
        let after = cross_ratio(&imgs[0], &imgs[1], &imgs[2], &imgs[3]).unwrap();
        assert_eq!(before, after);

        assert!(cross_ratio(&real(0, 1), &real(0, 1), &real(0, 1), &real(1, 1)).is_err());
    }

    #[test]
    fn fixed_circle_of_inversion_round_trips() {
        let mirror = GeneralizedCircle::circle(
            GaussianRational::new(rat(1, 2), rat(1, 4)),
            rat(1, 16),
            1,
        );
        let inv = crate::geometry::inversion_map(&mirror);
        assert!(inv.is_involution());
        assert_eq!(inv.fixed_circle().unwrap(), mirror);

        // reflection across the x-axis fixes the x-axis
        let refl = MobiusMap::new_conjugating(
            GaussianRational::one(),
            GaussianRational::zero(),
            GaussianRational::zero(),
            GaussianRational::one(),
        );
        assert_eq!(refl.fixed_circle().unwrap(), GeneralizedCircle::x_axis());
    }

    #[test]
    fn json_round_trip() {
        let m = MobiusMap::new_conjugating(
            GaussianRational::from_ints(1, -2),
            GaussianRational::from_ints(0, 1),
            GaussianRational::from_ints(0, -4),
            GaussianRational::from_ints(1, 2),
        );
        let j = m.to_json();
        assert_eq!(MobiusMap::from_json(&j).unwrap(), m);
    }
}
