//! Exact generalized circles: tangency predicates, tangency points,
//! circumcircles, inversion mirrors and the three-point construction of a
//! Descartes configuration.
//!
//! A circle stores its squared radius, never the radius itself, so mirrors
//! obtained from circumcircles (irrational radius, rational square) stay
//! exact. Orientation is explicit: +1 bounds its interior disk, -1 marks an
//! enclosing circle whose disk is the exterior. A line is the curvature-zero
//! limit; its disk is the half-plane to the left of the directed segment
//! p0 -> p1.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::mobius::MobiusMap;
use crate::numerics::{rat, rat_int, rational_sqrt, GaussianRational};

/// A circle or a line in the extended complex plane.
#[derive(Debug, Clone)]
pub enum GeneralizedCircle {
    Circle {
        center: GaussianRational,
        radius_sq: BigRational,
        orientation: i8,
    },
    Line {
        p0: GaussianRational,
        p1: GaussianRational,
    },
}

/// Exact point-set relation of two generalized circles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TangencyKind {
    External,
    Internal,
    Disjoint,
    Nested,
    Intersecting,
}

impl GeneralizedCircle {
    pub fn circle(center: GaussianRational, radius_sq: BigRational, orientation: i8) -> Self {
        assert!(radius_sq.is_positive(), "radius_sq must be positive");
        assert!(orientation == 1 || orientation == -1);
        GeneralizedCircle::Circle {
            center,
            radius_sq,
            orientation,
        }
    }

    pub fn line(p0: GaussianRational, p1: GaussianRational) -> Self {
        assert!(p0 != p1, "a line needs two distinct points");
        GeneralizedCircle::Line { p0, p1 }
    }

    /// The x-axis, oriented with the upper half-plane as its disk.
    pub fn x_axis() -> Self {
        Self::line(GaussianRational::zero(), GaussianRational::one())
    }

    pub fn is_line(&self) -> bool {
        matches!(self, GeneralizedCircle::Line { .. })
    }

    /// Exact membership test.
    pub fn contains(&self, z: &GaussianRational) -> bool {
        match self {
            GeneralizedCircle::Circle {
                center, radius_sq, ..
            } => {
                let d = z - center;
                d.norm_sq() == *radius_sq
            }
            GeneralizedCircle::Line { p0, p1 } => {
                let t = p1 - p0;
                let v = z - p0;
                // Im(conj(t) v) == 0
                (&t.re * &v.im - &t.im * &v.re).is_zero()
            }
        }
    }

    /// Same point set, ignoring which side is the disk.
    pub fn same_point_set(&self, other: &Self) -> bool {
        self == other || *self == other.reversed()
    }

    /// Flips which side counts as the disk.
    pub fn reversed(&self) -> Self {
        match self {
            GeneralizedCircle::Circle {
                center,
                radius_sq,
                orientation,
            } => GeneralizedCircle::Circle {
                center: center.clone(),
                radius_sq: radius_sq.clone(),
                orientation: -orientation,
            },
            GeneralizedCircle::Line { p0, p1 } => GeneralizedCircle::Line {
                p0: p1.clone(),
                p1: p0.clone(),
            },
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            GeneralizedCircle::Circle {
                center,
                radius_sq,
                orientation,
            } => serde_json::json!({
                "center": [center.re.to_string(), center.im.to_string()],
                "radius_sq": radius_sq.to_string(),
                "orientation": orientation,
            }),
            GeneralizedCircle::Line { p0, p1 } => serde_json::json!({
                "line": [
                    [p0.re.to_string(), p0.im.to_string()],
                    [p1.re.to_string(), p1.im.to_string()],
                ],
            }),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let get_pt = |arr: &serde_json::Value| -> Result<GaussianRational> {
            let a = arr
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::Parse("expected [re, im]".into()))?;
            let re = crate::numerics::parse_rational(
                a[0].as_str().ok_or_else(|| Error::Parse("re".into()))?,
            )?;
            let im = crate::numerics::parse_rational(
                a[1].as_str().ok_or_else(|| Error::Parse("im".into()))?,
            )?;
            Ok(GaussianRational::new(re, im))
        };
        if let Some(line) = v.get("line") {
            let pts = line
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::Parse("line needs two points".into()))?;
            return Ok(GeneralizedCircle::line(get_pt(&pts[0])?, get_pt(&pts[1])?));
        }
        let center = get_pt(
            v.get("center")
                .ok_or_else(|| Error::Parse("missing center".into()))?,
        )?;
        let radius_sq = crate::numerics::parse_rational(
            v.get("radius_sq")
                .and_then(|r| r.as_str())
                .ok_or_else(|| Error::Parse("missing radius_sq".into()))?,
        )?;
        let orientation = v
            .get("orientation")
            .and_then(|o| o.as_i64())
            .ok_or_else(|| Error::Parse("missing orientation".into()))? as i8;
        Ok(GeneralizedCircle::circle(center, radius_sq, orientation))
    }
}

/// Geometric equality: same point set and same disk side.
impl PartialEq for GeneralizedCircle {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (
                GeneralizedCircle::Circle {
                    center: c1,
                    radius_sq: r1,
                    orientation: o1,
                },
                GeneralizedCircle::Circle {
                    center: c2,
                    radius_sq: r2,
                    orientation: o2,
                },
            ) => c1 == c2 && r1 == r2 && o1 == o2,
            (
                GeneralizedCircle::Line { p0: a0, p1: a1 },
                GeneralizedCircle::Line { p0: b0, p1: b1 },
            ) => {
                let ta = a1 - a0;
                let tb = b1 - b0;
                // parallel, same side, and b0 on the line through a0
                let cross = &ta.re * &tb.im - &ta.im * &tb.re;
                if !cross.is_zero() {
                    return false;
                }
                let dot = &ta.re * &tb.re + &ta.im * &tb.im;
                if !dot.is_positive() {
                    return false;
                }
                let v = b0 - a0;
                (&ta.re * &v.im - &ta.im * &v.re).is_zero()
            }
            _ => false,
        }
    }
}

impl Eq for GeneralizedCircle {}

impl fmt::Display for GeneralizedCircle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneralizedCircle::Circle {
                center,
                radius_sq,
                orientation,
            } => write!(
                f,
                "circle(center {}, radius_sq {}, orientation {:+})",
                center, radius_sq, orientation
            ),
            GeneralizedCircle::Line { p0, p1 } => write!(f, "line({} -> {})", p0, p1),
        }
    }
}

/// Internal Hermitian form a|z|^2 + conj(b) z + b conj(z) + c with the disk
/// as its nonpositive locus. Transforms exactly under Möbius maps.
#[derive(Debug, Clone)]
pub(crate) struct Hermitian {
    pub a: BigRational,
    pub b: GaussianRational,
    pub c: BigRational,
}

impl Hermitian {
    pub(crate) fn from_circle(gc: &GeneralizedCircle) -> Hermitian {
        match gc {
            GeneralizedCircle::Circle {
                center,
                radius_sq,
                orientation,
            } => {
                let mut h = Hermitian {
                    a: rat_int(1),
                    b: -center,
                    c: center.norm_sq() - radius_sq.clone(),
                };
                if *orientation < 0 {
                    h = h.negated();
                }
                h
            }
            GeneralizedCircle::Line { p0, p1 } => {
                let t = p1 - p0;
                // b = -i t; c = 2 Im(conj(t) p0)
                let b = GaussianRational::new(t.im.clone(), -t.re.clone());
                let c = (&t.re * &p0.im - &t.im * &p0.re) * rat_int(2);
                Hermitian {
                    a: BigRational::zero(),
                    b,
                    c,
                }
            }
        }
    }

    pub(crate) fn negated(&self) -> Hermitian {
        Hermitian {
            a: -self.a.clone(),
            b: -&self.b,
            c: -self.c.clone(),
        }
    }

    pub(crate) fn conjugated(&self) -> Hermitian {
        Hermitian {
            a: self.a.clone(),
            b: self.b.conj(),
            c: self.c.clone(),
        }
    }

    /// Value of the form at a finite point.
    pub(crate) fn eval(&self, z: &GaussianRational) -> BigRational {
        let bz = &self.b * &z.conj();
        &self.a * &z.norm_sq() + rat_int(2) * bz.re + &self.c
    }

    /// Pullback under the matrix [[a,b],[c,d]]: H' = N* H N with N the
    /// adjugate, keeping every entry Gaussian-rational.
    pub(crate) fn pullback(
        &self,
        ma: &GaussianRational,
        mb: &GaussianRational,
        mc: &GaussianRational,
        md: &GaussianRational,
    ) -> Hermitian {
        // N = adj(M) = [[d, -b], [-c, a]]
        let n11 = md.clone();
        let n12 = -mb;
        let n21 = -mc;
        let n22 = ma.clone();
        // H as a complex 2x2 with value [conj(z), 1] H [z; 1]:
        // the z-bar coefficient b sits in the (1,2) slot
        let h11 = GaussianRational::from_real(self.a.clone());
        let h12 = self.b.clone();
        let h21 = self.b.conj();
        let h22 = GaussianRational::from_real(self.c.clone());
        // K = H N
        let k11 = &(&h11 * &n11) + &(&h12 * &n21);
        let k12 = &(&h11 * &n12) + &(&h12 * &n22);
        let k21 = &(&h21 * &n11) + &(&h22 * &n21);
        let k22 = &(&h21 * &n12) + &(&h22 * &n22);
        // H' = N^* K where N^* is the conjugate transpose
        let s11 = &(&n11.conj() * &k11) + &(&n21.conj() * &k21);
        let s12 = &(&n11.conj() * &k12) + &(&n21.conj() * &k22);
        let s22 = &(&n12.conj() * &k12) + &(&n22.conj() * &k22);
        debug_assert!(s11.is_real() && s22.is_real());
        Hermitian {
            a: s11.re,
            b: s12,
            c: s22.re,
        }
    }

    /// Recovers the geometric circle or line, with orientation taken from
    /// the sign convention of the form.
    pub(crate) fn to_circle(&self) -> Result<GeneralizedCircle> {
        if !self.a.is_zero() {
            let inv_a = BigRational::new(self.a.denom().clone(), self.a.numer().clone());
            let center = self.b.scale(&(-inv_a));
            let radius_sq = center.norm_sq() - &self.c / &self.a;
            if !radius_sq.is_positive() {
                return Err(Error::Domain(
                    "Hermitian form does not describe a real circle".into(),
                ));
            }
            let orientation = if self.a.is_positive() { 1 } else { -1 };
            Ok(GeneralizedCircle::circle(center, radius_sq, orientation))
        } else {
            if self.b.is_zero() {
                return Err(Error::Domain("degenerate Hermitian form".into()));
            }
            // t = i b; p0 = -c/(2|b|^2) conj(B) with B = conj(b)
            let t = &GaussianRational::i() * &self.b;
            let scale = -&self.c / (rat_int(2) * self.b.norm_sq());
            let p0 = self.b.scale(&scale);
            let p1 = &p0 + &t;
            Ok(GeneralizedCircle::line(p0, p1))
        }
    }
}

/// Signed curvature of a generalized circle: orientation / radius. Exact
/// when the squared radius is a perfect rational square; a line has zero.
pub fn signed_curvature(c: &GeneralizedCircle) -> Result<BigRational> {
    match c {
        GeneralizedCircle::Line { .. } => Ok(BigRational::zero()),
        GeneralizedCircle::Circle {
            radius_sq,
            orientation,
            ..
        } => {
            let r = rational_sqrt(radius_sq).ok_or_else(|| {
                Error::NonSquareCurvature(format!(
                    "radius_sq {radius_sq} is not a rational square"
                ))
            })?;
            let k = BigRational::new(r.denom().clone(), r.numer().clone());
            Ok(if *orientation >= 0 { k } else { -k })
        }
    }
}

/// Curvature as a float for reporting, exact or not.
pub fn curvature_f64(c: &GeneralizedCircle) -> f64 {
    match c {
        GeneralizedCircle::Line { .. } => 0.0,
        GeneralizedCircle::Circle {
            radius_sq,
            orientation,
            ..
        } => {
            let r = crate::numerics::rat_to_f64(radius_sq).sqrt();
            (*orientation as f64) / r
        }
    }
}

/// Exact tangency classification from squared distances; no square roots.
pub fn tangency(c1: &GeneralizedCircle, c2: &GeneralizedCircle) -> Result<TangencyKind> {
    use GeneralizedCircle::*;
    match (c1, c2) {
        (
            Circle {
                center: z1,
                radius_sq: r1,
                ..
            },
            Circle {
                center: z2,
                radius_sq: r2,
                ..
            },
        ) => {
            let d = (z1 - z2).norm_sq();
            if d.is_zero() && r1 == r2 {
                return Err(Error::CoincidentCircles);
            }
            let s = r1 + r2;
            let p4 = rat_int(4) * r1 * r2; // (2 r1 r2)^2 = 4 r1^2 r2^2 under squaring
            let diff = &d - &s;
            let diff_sq = &diff * &diff;
            match diff_sq.cmp(&p4) {
                Ordering::Equal => {
                    if diff.is_positive() || diff.is_zero() {
                        Ok(TangencyKind::External)
                    } else {
                        Ok(TangencyKind::Internal)
                    }
                }
                Ordering::Greater => {
                    if diff.is_positive() {
                        Ok(TangencyKind::Disjoint)
                    } else {
                        Ok(TangencyKind::Nested)
                    }
                }
                Ordering::Less => Ok(TangencyKind::Intersecting),
            }
        }
        (Circle { .. }, Line { .. }) => tangency(c2, c1),
        (
            Line { p0, p1 },
            Circle {
                center,
                radius_sq, ..
            },
        ) => {
            let t = p1 - p0;
            let v = center - p0;
            let cross = &t.re * &v.im - &t.im * &v.re;
            let dist_sq = &cross * &cross / t.norm_sq();
            match dist_sq.cmp(radius_sq) {
                Ordering::Equal => Ok(TangencyKind::External),
                Ordering::Greater => Ok(TangencyKind::Disjoint),
                Ordering::Less => Ok(TangencyKind::Intersecting),
            }
        }
        (Line { p0: a0, p1: a1 }, Line { p0: b0, p1: b1 }) => {
            if c1 == c2 || c1 == &c2.reversed() {
                return Err(Error::CoincidentCircles);
            }
            let ta = a1 - a0;
            let tb = b1 - b0;
            let cross = &ta.re * &tb.im - &ta.im * &tb.re;
            if cross.is_zero() {
                // distinct parallel lines: point-set disjoint (tangent at infinity)
                Ok(TangencyKind::Disjoint)
            } else {
                Ok(TangencyKind::Intersecting)
            }
        }
    }
}

/// The point where two tangent generalized circles touch, exactly.
pub fn tangency_point(
    c1: &GeneralizedCircle,
    c2: &GeneralizedCircle,
) -> Result<GaussianRational> {
    use GeneralizedCircle::*;
    let kind = tangency(c1, c2)?;
    if kind != TangencyKind::External && kind != TangencyKind::Internal {
        return Err(Error::NotTangent);
    }
    match (c1, c2) {
        (
            Circle {
                center: z1,
                radius_sq: r1,
                ..
            },
            Circle {
                center: z2,
                radius_sq: r2,
                ..
            },
        ) => {
            let d = (z2 - z1).norm_sq();
            // r1 r2 is rational at tangency: external d = r1^2+r2^2+2 r1 r2,
            // internal d = r1^2+r2^2-2 r1 r2.
            let (r1r2, num) = match kind {
                TangencyKind::External => {
                    let p = (&d - r1 - r2) / rat_int(2);
                    (p.clone(), r1 + &p)
                }
                TangencyKind::Internal => {
                    let p = (r1 + r2 - &d) / rat_int(2);
                    (p.clone(), r1 - &p)
                }
                _ => unreachable!(),
            };
            debug_assert_eq!(&r1r2 * &r1r2, r1 * r2);
            let tfrac = num / d;
            Ok(z1 + &(z2 - z1).scale(&tfrac))
        }
        (Circle { .. }, Line { .. }) => tangency_point(c2, c1),
        (
            Line { p0, p1 },
            Circle { center, .. },
        ) => {
            // foot of the perpendicular from the center
            let t = p1 - p0;
            let v = center - p0;
            let dot = &t.re * &v.re + &t.im * &v.im;
            let s = dot / t.norm_sq();
            Ok(p0 + &t.scale(&s))
        }
        _ => Err(Error::NotTangent),
    }
}

/// Circle through three distinct points; collinear points give the line.
pub fn circumcircle(
    p1: &GaussianRational,
    p2: &GaussianRational,
    p3: &GaussianRational,
) -> Result<GeneralizedCircle> {
    if p1 == p2 || p2 == p3 || p1 == p3 {
        return Err(Error::DegenerateTriple);
    }
    let d1 = p2 - p1;
    let d2 = p3 - p1;
    let cross = &d1.re * &d2.im - &d1.im * &d2.re;
    if cross.is_zero() {
        return Ok(GeneralizedCircle::line(p1.clone(), p2.clone()));
    }
    // perpendicular bisector intersection, solved linearly
    let m1 = (&d1.norm_sq() + rat_int(2) * (&p1.re * &d1.re + &p1.im * &d1.im)) / rat_int(2);
    let m2 = (&d2.norm_sq() + rat_int(2) * (&p1.re * &d2.re + &p1.im * &d2.im)) / rat_int(2);
    let det = &cross;
    let cx = (&m1 * &d2.im - &m2 * &d1.im) / det;
    let cy = (&m2 * &d1.re - &m1 * &d2.re) / det;
    let center = GaussianRational::new(cx, cy);
    let radius_sq = (p1 - &center).norm_sq();
    Ok(GeneralizedCircle::circle(center, radius_sq, 1))
}

/// Inversion in a circular or straight mirror, as a conjugating Möbius map.
pub fn inversion_map(mirror: &GeneralizedCircle) -> MobiusMap {
    match mirror {
        GeneralizedCircle::Circle {
            center, radius_sq, ..
        } => {
            // z -> z0 + r^2 / conj(z - z0)
            let a = center.clone();
            let b = GaussianRational::from_real(radius_sq - &center.norm_sq());
            let c = GaussianRational::one();
            let d = -&center.conj();
            MobiusMap::new_conjugating(a, b, c, d)
        }
        GeneralizedCircle::Line { p0, p1 } => {
            // z -> p0 + (t/conj(t)) conj(z - p0)
            let t = p1 - p0;
            let alpha = &t / &t.conj();
            let b = p0 - &(&alpha * &p0.conj());
            MobiusMap::new_conjugating(alpha, b, GaussianRational::zero(), GaussianRational::one())
        }
    }
}

/// Inverts a generalized circle in a mirror.
pub fn invert_circle(
    mirror: &GeneralizedCircle,
    obj: &GeneralizedCircle,
) -> Result<GeneralizedCircle> {
    inversion_map(mirror).apply_circle(obj)
}

/// Inverts a point in a mirror; the mirror circle's own center maps to
/// infinity, reported as None.
pub fn invert_point(
    mirror: &GeneralizedCircle,
    z: &GaussianRational,
) -> Option<GaussianRational> {
    use crate::mobius::ExtendedPoint;
    match inversion_map(mirror).apply_point(&ExtendedPoint::Finite(z.clone())) {
        ExtendedPoint::Finite(w) => Some(w),
        ExtendedPoint::Infinity => None,
    }
}

/// A circle in floating-point form, for the numeric three-point
/// construction only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumCircle {
    pub center: (f64, f64),
    /// Signed curvature; 0 encodes a line through `center` with unit
    /// direction `dir`.
    pub curvature: f64,
    pub dir: (f64, f64),
}

impl NumCircle {
    fn circle(center: (f64, f64), curvature: f64) -> Self {
        NumCircle {
            center,
            curvature,
            dir: (0.0, 0.0),
        }
    }
}

/// Result of the geometric construction from three points: three mutually
/// tangent members plus both completions of the quadruple. When two of the
/// input points are antipodal on their circumcircle the tangents there are
/// parallel and one member degenerates to a half-plane; `degenerate` flags
/// that case and the member is reported as a line.
#[derive(Debug, Clone)]
pub struct DescartesConstruction {
    pub circles: [NumCircle; 3],
    pub fourth: (NumCircle, NumCircle),
    pub degenerate: bool,
}

fn cx_mul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cx_sqrt(z: (f64, f64)) -> (f64, f64) {
    let r = (z.0 * z.0 + z.1 * z.1).sqrt();
    let u = ((r + z.0) / 2.0).max(0.0).sqrt();
    let v = ((r - z.0) / 2.0).max(0.0).sqrt();
    (u, if z.1 >= 0.0 { v } else { -v })
}

/// The tangent-line construction: from any three non-collinear points,
/// build three mutually tangent circles touching pairwise at those points,
/// then complete the quadruple. The only approximate operation in the
/// crate; everything downstream of integer gaskets stays exact.
pub fn descartes_from_three_points(
    p1: (f64, f64),
    p2: (f64, f64),
    p3: (f64, f64),
) -> Result<DescartesConstruction> {
    let sub = |a: (f64, f64), b: (f64, f64)| (a.0 - b.0, a.1 - b.1);
    let norm = |a: (f64, f64)| (a.0 * a.0 + a.1 * a.1).sqrt();
    let cross = |a: (f64, f64), b: (f64, f64)| a.0 * b.1 - a.1 * b.0;

    let area2 = cross(sub(p2, p1), sub(p3, p1));
    let scale = norm(sub(p2, p1)).max(norm(sub(p3, p1)));
    if area2.abs() <= 1e-14 * scale * scale {
        return Err(Error::CollinearPoints);
    }

    // The tangent to the circumcircle at P is perpendicular to P - O, and
    // the two tangent segments from their intersection have equal length,
    // so the circle centered there through both points closes the triple.
    let circ = circumcircle_f64(p1, p2, p3)?;
    let o = circ.0;
    let pts = [p1, p2, p3];
    let mut circles = [NumCircle::circle((0.0, 0.0), 0.0); 3];
    let mut degenerate = false;
    // member i comes from the tangents at the two points other than P_i
    for i in 0..3 {
        let a = pts[(i + 1) % 3];
        let b = pts[(i + 2) % 3];
        let da = (-(a.1 - o.1), a.0 - o.0);
        let db = (-(b.1 - o.1), b.0 - o.0);
        let denom = cross(da, db);
        if denom.abs() <= 1e-12 * circ.1 * circ.1 {
            // antipodal pair: the member is the half-plane bounded by the
            // line through a and b
            degenerate = true;
            let dir = sub(b, a);
            let len = norm(dir);
            circles[i] = NumCircle {
                center: a,
                curvature: 0.0,
                dir: (dir.0 / len, dir.1 / len),
            };
            continue;
        }
        let rhs = sub(b, a);
        let s = cross(rhs, db) / denom;
        let center = (a.0 + s * da.0, a.1 + s * da.1);
        let r = norm(sub(center, a));
        circles[i] = NumCircle::circle(center, 1.0 / r);
    }

    // fourth circle: curvature from the quadratic relation, center from
    // the same relation applied to curvature-weighted centers; a line
    // member contributes its unit normal as weighted-center datum.
    let k = [circles[0].curvature, circles[1].curvature, circles[2].curvature];
    let kz: Vec<(f64, f64)> = (0..3)
        .map(|i| {
            if k[i].abs() < 1e-12 {
                // normal pointing away from the opposite point
                let n = (-circles[i].dir.1, circles[i].dir.0);
                let to_opp = sub(pts[i], circles[i].center);
                if n.0 * to_opp.0 + n.1 * to_opp.1 > 0.0 {
                    (-n.0, -n.1)
                } else {
                    n
                }
            } else {
                (k[i] * circles[i].center.0, k[i] * circles[i].center.1)
            }
        })
        .collect();
    let sum_k = k[0] + k[1] + k[2];
    let rad = (k[0] * k[1] + k[1] * k[2] + k[2] * k[0]).max(0.0).sqrt();
    let sum_kz = (
        kz[0].0 + kz[1].0 + kz[2].0,
        kz[0].1 + kz[1].1 + kz[2].1,
    );
    let prod = (
        cx_mul(kz[0], kz[1]).0 + cx_mul(kz[1], kz[2]).0 + cx_mul(kz[2], kz[0]).0,
        cx_mul(kz[0], kz[1]).1 + cx_mul(kz[1], kz[2]).1 + cx_mul(kz[2], kz[0]).1,
    );
    let rad_z = cx_sqrt(prod);

    let make_fourth = |k4: f64, kz4: (f64, f64)| -> NumCircle {
        if k4.abs() < 1e-9 * sum_k.abs().max(1.0) {
            // a line; kz4 is its unit normal, position from tangency to
            // the first proper circle
            let n = (kz4.0 * kz4.0 + kz4.1 * kz4.1).sqrt().max(1e-300);
            let nh = (kz4.0 / n, kz4.1 / n);
            let anchor = circles
                .iter()
                .find(|c| c.curvature.abs() > 1e-12)
                .copied()
                .unwrap_or(circles[0]);
            let r = 1.0 / anchor.curvature;
            let center = (anchor.center.0 - r * nh.0, anchor.center.1 - r * nh.1);
            NumCircle {
                center,
                curvature: 0.0,
                dir: (-nh.1, nh.0),
            }
        } else {
            NumCircle::circle((kz4.0 / k4, kz4.1 / k4), k4)
        }
    };

    // pair each curvature root with the weighted-center root that realizes
    // tangency to all three members
    let k_plus = sum_k + 2.0 * rad;
    let k_minus = sum_k - 2.0 * rad;
    let cand = |k4: f64| -> NumCircle {
        let mut best: Option<(f64, NumCircle)> = None;
        for sgn in [1.0, -1.0] {
            for nsgn in [1.0, -1.0] {
                let kz4 = (
                    nsgn * (sum_kz.0 + sgn * 2.0 * rad_z.0),
                    nsgn * (sum_kz.1 + sgn * 2.0 * rad_z.1),
                );
                let c = make_fourth(k4, kz4);
                let resid = tangency_residual(&c, &circles);
                match &best {
                    None => best = Some((resid, c)),
                    Some((r, _)) if resid < *r => best = Some((resid, c)),
                    _ => {}
                }
            }
        }
        best.unwrap().1
    };

    Ok(DescartesConstruction {
        circles,
        fourth: (cand(k_plus), cand(k_minus)),
        degenerate,
    })
}

fn line_point_distance(line: &NumCircle, p: (f64, f64)) -> f64 {
    let len = (line.dir.0 * line.dir.0 + line.dir.1 * line.dir.1)
        .sqrt()
        .max(1e-300);
    ((p.0 - line.center.0) * line.dir.1 - (p.1 - line.center.1) * line.dir.0).abs() / len
}

/// Worst deviation of `c` from tangency with each member of `others`.
fn tangency_residual(c: &NumCircle, others: &[NumCircle; 3]) -> f64 {
    let mut worst: f64 = 0.0;
    for o in others {
        let c_line = c.curvature.abs() < 1e-12;
        let o_line = o.curvature.abs() < 1e-12;
        let r = match (c_line, o_line) {
            (true, true) => 0.0,
            (true, false) => {
                (line_point_distance(c, o.center) - (1.0 / o.curvature).abs()).abs()
            }
            (false, true) => {
                (line_point_distance(o, c.center) - (1.0 / c.curvature).abs()).abs()
            }
            (false, false) => {
                let dx = c.center.0 - o.center.0;
                let dy = c.center.1 - o.center.1;
                let d = (dx * dx + dy * dy).sqrt();
                let sum = (1.0 / c.curvature + 1.0 / o.curvature).abs();
                let diff = (1.0 / c.curvature - 1.0 / o.curvature).abs();
                (d - sum).abs().min((d - diff).abs())
            }
        };
        worst = worst.max(r);
    }
    worst
}

fn circumcircle_f64(
    p1: (f64, f64),
    p2: (f64, f64),
    p3: (f64, f64),
) -> Result<((f64, f64), f64)> {
    let d = 2.0
        * (p1.0 * (p2.1 - p3.1) + p2.0 * (p3.1 - p1.1) + p3.0 * (p1.1 - p2.1));
    if d.abs() < 1e-14 {
        return Err(Error::CollinearPoints);
    }
    let sq = |p: (f64, f64)| p.0 * p.0 + p.1 * p.1;
    let ux = (sq(p1) * (p2.1 - p3.1) + sq(p2) * (p3.1 - p1.1) + sq(p3) * (p1.1 - p2.1)) / d;
    let uy = (sq(p1) * (p3.0 - p2.0) + sq(p2) * (p1.0 - p3.0) + sq(p3) * (p2.0 - p1.0)) / d;
    let r = ((p1.0 - ux).powi(2) + (p1.1 - uy).powi(2)).sqrt();
    Ok(((ux, uy), r))
}

/// Descartes residual |2 sum k_i^2 - (sum k_i)^2| for a numeric quadruple.
pub fn descartes_residual(ks: &[f64; 4]) -> f64 {
    let sum: f64 = ks.iter().sum();
    let sq: f64 = ks.iter().map(|k| k * k).sum();
    (2.0 * sq - sum * sum).abs()
}
