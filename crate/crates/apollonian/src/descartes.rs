//! Descartes quadruple algebra: the quadratic relation, fourth-circle
//! solutions, linear reflection, the duality operator, and the Apollonian
//! group generators.
//!
//! Quadruples are ordered 4-tuples; the duality matrix and the group
//! generators act positionally. Sorting into non-increasing order is a
//! precondition of the monotone D-generators and is applied on entry.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geometry::{tangency, GeneralizedCircle, TangencyKind};
use crate::numerics::{rat, rat_int, rational_sqrt, GaussianRational, QuadraticSurd};

/// Four mutually tangent curvatures satisfying
/// 2(k1^2+k2^2+k3^2+k4^2) = (k1+k2+k3+k4)^2, with at most one negative
/// entry (the enclosing circle).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DescartesQuad {
    k: [BigRational; 4],
}

/// Checks the Descartes relation exactly.
pub fn check_descartes(k: &[BigRational; 4]) -> bool {
    let sum: BigRational = k.iter().sum();
    let sq: BigRational = k.iter().map(|x| x * x).sum();
    rat_int(2) * sq == &sum * &sum
}

impl DescartesQuad {
    pub fn new(k: [BigRational; 4]) -> Result<Self> {
        if !check_descartes(&k) {
            return Err(Error::InvalidQuad(format!(
                "({}, {}, {}, {}) fails the Descartes relation",
                k[0], k[1], k[2], k[3]
            )));
        }
        let negatives = k.iter().filter(|x| x.is_negative()).count();
        if negatives > 1 {
            return Err(Error::InvalidQuad(
                "more than one negative curvature".into(),
            ));
        }
        if k.iter().all(|x| x.is_zero()) {
            return Err(Error::InvalidQuad("all curvatures vanish".into()));
        }
        Ok(DescartesQuad { k })
    }

    pub fn from_ints(k: [i64; 4]) -> Result<Self> {
        Self::new([
            rat_int(k[0]),
            rat_int(k[1]),
            rat_int(k[2]),
            rat_int(k[3]),
        ])
    }

    pub fn curvatures(&self) -> &[BigRational; 4] {
        &self.k
    }

    pub fn get(&self, i: usize) -> &BigRational {
        &self.k[i]
    }

    pub fn is_integral(&self) -> bool {
        self.k.iter().all(|x| x.is_integer())
    }

    /// Non-increasing copy.
    pub fn sorted_desc(&self) -> Self {
        let mut k = self.k.clone();
        k.sort_by(|a, b| b.cmp(a));
        DescartesQuad { k }
    }

    /// Replaces entry i by the other solution of the quadratic:
    /// k_i' = 2 (sum of the others) - k_i. An involution at fixed i.
    pub fn reflect(&self, i: usize) -> Self {
        assert!(i < 4);
        let sum_others: BigRational = self
            .k
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v)
            .sum();
        let mut k = self.k.clone();
        k[i] = rat_int(2) * sum_others - &self.k[i];
        DescartesQuad { k }
    }

    /// The involutive duality operator: entrywise k_i -> (sum k)/2 - k_i.
    /// Its matrix satisfies D^2 = I, and v D v^T = 0 restates the Descartes
    /// relation.
    pub fn dual(&self) -> Self {
        let half_sum: BigRational = self.k.iter().sum::<BigRational>() / rat_int(2);
        let k = [
            &half_sum - &self.k[0],
            &half_sum - &self.k[1],
            &half_sum - &self.k[2],
            &half_sum - &self.k[3],
        ];
        DescartesQuad { k }
    }
}

impl fmt::Display for DescartesQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            self.k[0], self.k[1], self.k[2], self.k[3]
        )
    }
}

/// Both tangent completions of three mutually tangent curvatures, as exact
/// surds: (k1+k2+k3) +- 2 sqrt(k1 k2 + k2 k3 + k3 k1).
#[derive(Debug, Clone)]
pub struct FourthSolutions {
    pub plus: QuadraticSurd,
    pub minus: QuadraticSurd,
    /// Set when the radical is a perfect rational square, so both
    /// solutions are rational (integral for integral inputs).
    pub rational: bool,
}

pub fn solve_fourth(
    k1: &BigRational,
    k2: &BigRational,
    k3: &BigRational,
) -> Result<FourthSolutions> {
    let sum = k1 + k2 + k3;
    let rad = k1 * k2 + k2 * k3 + k3 * k1;
    if rad.is_negative() {
        return Err(Error::InvalidQuad(format!(
            "k1 k2 + k2 k3 + k3 k1 = {rad} is negative: not mutually realizable"
        )));
    }
    // 2 sqrt(p/q) = 2 sqrt(p q) / q
    let radicand = rad.numer() * rad.denom();
    let coeff = rat(2, 1) / rat_int(rad.denom().clone());
    let plus = QuadraticSurd::new(sum.clone(), coeff.clone(), radicand.clone())?;
    let minus = QuadraticSurd::new(sum, -coeff, radicand)?;
    let rational = plus.is_rational();
    Ok(FourthSolutions {
        plus,
        minus,
        rational,
    })
}

/// With lambda1 + lambda2 + lambda3 = 0 (checked), verifies the exact
/// identity (sum lambda_i^2)^2 = 2 sum lambda_i^4. Certifies the
/// Descartes relation for triples of circles resting on a line.
pub fn homogeneous_identity(
    l1: &BigRational,
    l2: &BigRational,
    l3: &BigRational,
) -> Result<bool> {
    if !(l1 + l2 + l3).is_zero() {
        return Err(Error::Domain(
            "homogeneous identity needs a zero-sum triple".into(),
        ));
    }
    let t2 = l1 * l1 + l2 * l2 + l3 * l3;
    let t4 = l1 * l1 * l1 * l1 + l2 * l2 * l2 * l2 + l3 * l3 * l3 * l3;
    Ok(&t2 * &t2 == rat_int(2) * t4)
}

/// One letter of the Apollonian group alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    /// Reflection generator S_i, i in 1..=4.
    S(u8),
    /// Monotone generator D_i, i in 1..=4.
    D(u8),
}

impl Letter {
    pub fn matrix(&self) -> [[i64; 4]; 4] {
        match self {
            Letter::S(1) => [[-1, 2, 2, 2], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            Letter::S(2) => [[1, 0, 0, 0], [2, -1, 2, 2], [0, 0, 1, 0], [0, 0, 0, 1]],
            Letter::S(3) => [[1, 0, 0, 0], [0, 1, 0, 0], [2, 2, -1, 2], [0, 0, 0, 1]],
            Letter::S(4) => [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [2, 2, 2, -1]],
            Letter::D(1) => [[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [-1, 2, 2, 2]],
            Letter::D(2) => [[2, -1, 2, 2], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            Letter::D(3) => [[2, 2, -1, 2], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
            Letter::D(4) => [[2, 2, 2, -1], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]],
            _ => panic!("generator index must be 1..=4"),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::S(i) => write!(f, "S{i}"),
            Letter::D(i) => write!(f, "D{i}"),
        }
    }
}

/// A word over the generator alphabet, written left to right with the
/// leftmost letter applied last (matrix-product order).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorWord(pub Vec<Letter>);

impl GeneratorWord {
    pub fn empty() -> Self {
        GeneratorWord(Vec::new())
    }

    /// Product of the letter matrices in written order.
    pub fn matrix(&self) -> [[BigInt; 4]; 4] {
        let mut acc = identity4();
        for letter in &self.0 {
            acc = mat_mul(&acc, &int_matrix(&letter.matrix()));
        }
        acc
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for GeneratorWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for token in s.split_whitespace() {
            if token.len() < 2 {
                return Err(Error::Parse(format!("bad generator {token:?}")));
            }
            let (kind, idx) = token.split_at(1);
            let i: u8 = idx
                .parse()
                .map_err(|_| Error::Parse(format!("bad generator {token:?}")))?;
            if !(1..=4).contains(&i) {
                return Err(Error::Parse(format!(
                    "generator index out of range: {token}"
                )));
            }
            match kind {
                "S" | "s" => letters.push(Letter::S(i)),
                "D" | "d" => letters.push(Letter::D(i)),
                _ => return Err(Error::Parse(format!("bad generator {token:?}"))),
            }
        }
        Ok(GeneratorWord(letters))
    }
}

fn identity4() -> [[BigInt; 4]; 4] {
    let mut m: [[BigInt; 4]; 4] = Default::default();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

fn int_matrix(m: &[[i64; 4]; 4]) -> [[BigInt; 4]; 4] {
    let mut out: [[BigInt; 4]; 4] = Default::default();
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = BigInt::from(m[i][j]);
        }
    }
    out
}

fn mat_mul(a: &[[BigInt; 4]; 4], b: &[[BigInt; 4]; 4]) -> [[BigInt; 4]; 4] {
    let mut out: [[BigInt; 4]; 4] = Default::default();
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = BigInt::zero();
            for (l, row) in b.iter().enumerate() {
                acc += &a[i][l] * &row[j];
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Applies a generator word to a quadruple. The quadruple is sorted into
/// non-increasing order first, as the D-generators require; the rightmost
/// letter acts first.
pub fn apply_word(word: &GeneratorWord, quad: &DescartesQuad) -> Result<DescartesQuad> {
    let sorted = quad.sorted_desc();
    let mut v: Vec<BigRational> = sorted.k.to_vec();
    for letter in word.0.iter().rev() {
        let m = letter.matrix();
        let mut next = vec![BigRational::zero(); 4];
        for (i, row) in m.iter().enumerate() {
            for (j, &mij) in row.iter().enumerate() {
                if mij != 0 {
                    next[i] += rat_int(mij) * &v[j];
                }
            }
        }
        v = next;
    }
    DescartesQuad::new([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()])
}

/// Exact characteristic polynomial and numeric spectrum of a word's
/// 4x4 matrix product.
#[derive(Debug, Clone)]
pub struct WordSpectrum {
    /// Monic coefficients [c0, c1, c2, c3, 1] of
    /// c0 + c1 x + c2 x^2 + c3 x^3 + x^4.
    pub char_poly: [BigInt; 5],
    /// Roots ordered by decreasing modulus, accurate to ~1e-12.
    pub eigenvalues: Vec<Complex64>,
}

pub fn word_eigen(word: &GeneratorWord) -> WordSpectrum {
    let m = word.matrix();
    // power sums via traces of matrix powers, then Newton's identities
    let mut powers = Vec::with_capacity(4);
    let mut acc = m.clone();
    for _ in 0..4 {
        let tr: BigInt = (0..4).map(|i| acc[i][i].clone()).sum();
        powers.push(rat_int(tr));
        acc = mat_mul(&acc, &m);
    }
    let p1 = powers[0].clone();
    let p2 = powers[1].clone();
    let p3 = powers[2].clone();
    let p4 = powers[3].clone();
    let e1 = p1.clone();
    let e2 = (&e1 * &p1 - &p2) / rat_int(2);
    let e3 = (&e2 * &p1 - &e1 * &p2 + &p3) / rat_int(3);
    let e4 = (&e3 * &p1 - &e2 * &p2 + &e1 * &p3 - &p4) / rat_int(4);
    let to_int = |r: BigRational| -> BigInt {
        debug_assert!(r.is_integer());
        r.to_integer()
    };
    // x^4 - e1 x^3 + e2 x^2 - e3 x + e4
    let char_poly = [
        to_int(e4),
        to_int(-e3),
        to_int(e2),
        to_int(-e1),
        BigInt::one(),
    ];
    // deflate exact integer roots (repeated roots included) so the
    // remaining numeric solve only sees simple roots
    let mut eigenvalues: Vec<Complex64> = Vec::new();
    let mut poly: Vec<BigInt> = char_poly.to_vec();
    'outer: while poly.len() > 1 {
        for cand in integer_root_candidates(&poly[0]) {
            if eval_int_poly(&poly, &cand).is_zero() {
                eigenvalues.push(Complex64::new(cand.to_f64().unwrap(), 0.0));
                poly = deflate(&poly, &cand);
                continue 'outer;
            }
        }
        break;
    }
    match poly.len() {
        1 => {}
        2 => {
            // linear: x = -c0/c1
            let r = -poly[0].to_f64().unwrap() / poly[1].to_f64().unwrap();
            eigenvalues.push(Complex64::new(r, 0.0));
        }
        3 => {
            let a = poly[2].to_f64().unwrap();
            let b = poly[1].to_f64().unwrap();
            let c = poly[0].to_f64().unwrap();
            let disc = Complex64::new(b * b - 4.0 * a * c, 0.0).sqrt();
            eigenvalues.push((-Complex64::new(b, 0.0) + disc) / (2.0 * a));
            eigenvalues.push((-Complex64::new(b, 0.0) - disc) / (2.0 * a));
        }
        _ => {
            let coeffs: Vec<f64> = poly
                .iter()
                .map(|c| c.to_f64().unwrap_or(f64::NAN))
                .collect();
            eigenvalues.extend(durand_kerner(&coeffs));
        }
    }
    eigenvalues.sort_by(|a, b| b.norm().partial_cmp(&a.norm()).unwrap());
    WordSpectrum {
        char_poly,
        eigenvalues,
    }
}

fn integer_root_candidates(c0: &BigInt) -> Vec<BigInt> {
    if c0.is_zero() {
        return vec![BigInt::zero()];
    }
    let mut out = Vec::new();
    let abs = c0.abs();
    let mut d = BigInt::one();
    // divisors by trial division, good for desk-scale constants
    while &d * &d <= abs && d < BigInt::from(1_000_000) {
        if (&abs % &d).is_zero() {
            let q = &abs / &d;
            for v in [d.clone(), q] {
                out.push(v.clone());
                out.push(-v);
            }
        }
        d += 1;
    }
    out
}

fn eval_int_poly(poly: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in poly.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Divides an ascending-coefficient polynomial by (x - r), assuming r is
/// an exact root.
fn deflate(poly: &[BigInt], r: &BigInt) -> Vec<BigInt> {
    let n = poly.len();
    let mut out = vec![BigInt::zero(); n - 1];
    let mut carry = BigInt::zero();
    for i in (0..n - 1).rev() {
        carry = &poly[i + 1] + r * &carry;
        out[i] = carry.clone();
    }
    debug_assert!((&poly[0] + r * &out[0]).is_zero());
    out
}

/// Durand-Kerner root finding for a monic polynomial given by ascending
/// coefficients (constant first, leading 1 last).
fn durand_kerner(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            acc = acc * z + Complex64::new(*c, 0.0);
        }
        acc
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..500 {
        let mut shift = 0.0f64;
        let prev = roots.clone();
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    denom *= prev[i] - prev[j];
                }
            }
            let delta = eval(prev[i]) / denom;
            roots[i] = prev[i] - delta;
            shift = shift.max(delta.norm());
        }
        if shift < 1e-14 {
            break;
        }
    }
    // polish with a few Newton steps
    let dcoeffs: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();
    let deval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in dcoeffs.iter().rev() {
            acc = acc * z + Complex64::new(*c, 0.0);
        }
        acc
    };
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let d = deval(*r);
            if d.norm() > 1e-30 {
                *r -= eval(*r) / d;
            }
        }
        if r.im.abs() < 1e-9 {
            r.im = 0.0;
        }
    }
    roots
}

/// A quadruple together with curvature-weighted centers k_i z_i; for a
/// line member (k = 0) the weighted-center slot holds the unit normal
/// pointing into the line's own half-plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedQuad {
    quad: DescartesQuad,
    kz: [GaussianRational; 4],
}

impl ExtendedQuad {
    /// Builds and validates: the four reconstructed circles must be
    /// pairwise tangent.
    pub fn new(quad: DescartesQuad, kz: [GaussianRational; 4]) -> Result<Self> {
        let eq = ExtendedQuad { quad, kz };
        eq.validate()?;
        Ok(eq)
    }

    pub fn quad(&self) -> &DescartesQuad {
        &self.quad
    }

    pub fn weighted_centers(&self) -> &[GaussianRational; 4] {
        &self.kz
    }

    /// Reconstructs member i as a geometric circle or line.
    pub fn circle(&self, i: usize) -> Result<GeneralizedCircle> {
        let k = self.quad.get(i);
        if k.is_zero() {
            let n = &self.kz[i];
            if n.norm_sq() != rat(1, 1) {
                return Err(Error::InconsistentCenters(format!(
                    "line member {i} has non-unit normal {n}"
                )));
            }
            // offset from any circle partner: c = Re(conj(n) z_p) + rho_p
            let j = (0..4)
                .find(|&j| !self.quad.get(j).is_zero())
                .ok_or_else(|| Error::InvalidQuad("no circle member".into()))?;
            let kj = self.quad.get(j);
            let zj = self.kz[j].scale(&(rat(1, 1) / kj));
            let rho = rat(1, 1) / kj;
            let c = (&n.conj() * &zj).re + rho;
            let p0 = n.scale(&c);
            let t = &(-&GaussianRational::i()) * n;
            Ok(GeneralizedCircle::line(p0.clone(), &p0 + &t))
        } else {
            let inv_k = rat(1, 1) / k;
            let center = self.kz[i].scale(&inv_k);
            let radius_sq = &inv_k * &inv_k;
            let orientation = if k.is_positive() { 1 } else { -1 };
            Ok(GeneralizedCircle::circle(center, radius_sq, orientation))
        }
    }

    pub fn circles(&self) -> Result<[GeneralizedCircle; 4]> {
        Ok([
            self.circle(0)?,
            self.circle(1)?,
            self.circle(2)?,
            self.circle(3)?,
        ])
    }

    /// Exact pairwise-tangency check of the reconstructed configuration.
    pub fn validate(&self) -> Result<()> {
        let circles = self.circles()?;
        for i in 0..4 {
            for j in (i + 1)..4 {
                let ki = self.quad.get(i);
                let kj = self.quad.get(j);
                let kind = tangency(&circles[i], &circles[j]).map_err(|e| {
                    Error::InconsistentCenters(format!("members {i},{j}: {e}"))
                })?;
                let expected = if ki.is_zero() && kj.is_zero() {
                    TangencyKind::Disjoint // parallel lines touch at infinity
                } else if ki.is_negative() || kj.is_negative() {
                    TangencyKind::Internal
                } else {
                    TangencyKind::External
                };
                if kind != expected {
                    return Err(Error::InconsistentCenters(format!(
                        "members {i},{j}: found {kind:?}, expected {expected:?}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Reflects member i: both the curvature and the weighted center obey
    /// the same linear rule, and the result is re-validated geometrically.
    pub fn reflect(&self, i: usize) -> Result<ExtendedQuad> {
        assert!(i < 4);
        let quad = self.quad.reflect(i);
        let sum_others = self
            .kz
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .fold(GaussianRational::zero(), |acc, (_, v)| &acc + v);
        let mut kz = self.kz.clone();
        kz[i] = &sum_others.scale(&rat_int(2)) - &self.kz[i];
        ExtendedQuad::new(quad, kz)
    }

    /// Tangency point of members i and j.
    pub fn tangency_point(&self, i: usize, j: usize) -> Result<GaussianRational> {
        crate::geometry::tangency_point(&self.circle(i)?, &self.circle(j)?)
    }
}

/// Places a quadruple in the plane with exact rational coordinates, in a
/// canonical position: smallest curvature at the origin or, when a line
/// member exists, the line along the x-axis. Fails when the canonical
/// placement needs an irrational coordinate.
pub fn realize(quad: &DescartesQuad) -> Result<ExtendedQuad> {
    let zeros = quad.k.iter().filter(|k| k.is_zero()).count();
    if zeros >= 1 {
        realize_with_line(quad, zeros)
    } else {
        realize_circles(quad)
    }
}

fn realize_with_line(quad: &DescartesQuad, zeros: usize) -> Result<ExtendedQuad> {
    // order: zero members first, then circles by decreasing radius
    let mut idx: Vec<usize> = (0..4).collect();
    idx.sort_by(|&a, &b| {
        let ka = quad.get(a);
        let kb = quad.get(b);
        match (ka.is_zero(), kb.is_zero()) {
            (true, false) => std::cmp::Ordering::Less,
            (false, true) => std::cmp::Ordering::Greater,
            _ => ka.cmp(kb),
        }
    });
    let mut kz: [GaussianRational; 4] = std::array::from_fn(|_| GaussianRational::zero());
    // x-axis with the packing above it
    kz[idx[0]] = -&GaussianRational::i();
    let circle_ids: Vec<usize> = idx[zeros..].to_vec();
    let rho: Vec<BigRational> = circle_ids
        .iter()
        .map(|&i| rat(1, 1) / quad.get(i))
        .collect();
    if zeros == 2 {
        // a strip: both circles share the radius, second line on top
        kz[idx[1]] = GaussianRational::i();
        let r = &rho[0];
        let c0 = GaussianRational::new(rat(0, 1), r.clone());
        let c1 = GaussianRational::new(rat_int(2) * r, r.clone());
        kz[circle_ids[0]] = c0.scale(quad.get(circle_ids[0]));
        kz[circle_ids[1]] = c1.scale(quad.get(circle_ids[1]));
        return ExtendedQuad::new(quad.clone(), kz);
    }
    // one line, three circles resting on it at heights rho_i; horizontal
    // gaps are 2 sqrt(rho_i rho_j)
    let gap = |i: usize, j: usize| -> Result<BigRational> {
        let p = &rho[i] * &rho[j];
        rational_sqrt(&p).map(|s| rat_int(2) * s).ok_or_else(|| {
            Error::NonRealizable(format!(
                "horizontal gap needs sqrt({p}), which is irrational"
            ))
        })
    };
    let x0 = rat(0, 1);
    let x1 = gap(0, 1)?;
    // the third circle's abscissa must satisfy both remaining gaps
    let g02 = gap(0, 2)?;
    let g12 = gap(1, 2)?;
    let mut x2 = None;
    for cand in [&x0 + &g02, &x0 - &g02] {
        if (&cand - &x1).abs() == g12 {
            x2 = Some(cand);
            break;
        }
    }
    let x2 = x2.ok_or_else(|| {
        Error::NonRealizable("line-resting placement is inconsistent".into())
    })?;
    let xs = [x0, x1, x2];
    for (n, &i) in circle_ids.iter().enumerate() {
        let center = GaussianRational::new(xs[n].clone(), rho[n].clone());
        kz[i] = center.scale(quad.get(i));
    }
    ExtendedQuad::new(quad.clone(), kz)
}

fn realize_circles(quad: &DescartesQuad) -> Result<ExtendedQuad> {
    // signed radii make every gasket tangency |z_i - z_j| = |rho_i + rho_j|
    let mut idx: Vec<usize> = (0..4).collect();
    idx.sort_by(|&a, &b| quad.get(a).cmp(quad.get(b)));
    let rho: Vec<BigRational> = idx.iter().map(|&i| rat(1, 1) / quad.get(i)).collect();

    let z0 = GaussianRational::zero();
    let z1 = GaussianRational::from_real(&rho[0] + &rho[1]);
    // third center: |z|^2 = (rho0+rho2)^2, |z - z1|^2 = (rho1+rho2)^2
    let s02 = &rho[0] + &rho[2];
    let s12 = &rho[1] + &rho[2];
    let x1 = &z1.re;
    if x1.is_zero() {
        return Err(Error::NonRealizable("coincident first pair".into()));
    }
    let x2 = (&s02 * &s02 - &s12 * &s12 + x1 * x1) / (rat_int(2) * x1);
    let y2_sq = &s02 * &s02 - &x2 * &x2;
    if y2_sq.is_negative() {
        return Err(Error::NonRealizable(
            "third circle cannot touch both anchors".into(),
        ));
    }
    let y2 = rational_sqrt(&y2_sq).ok_or_else(|| {
        Error::NonRealizable(format!("third center needs sqrt({y2_sq})"))
    })?;
    let z2 = GaussianRational::new(x2, y2.clone());

    // fourth center from the linear differences of the distance equations
    let s03 = &rho[0] + &rho[3];
    let s13 = &rho[1] + &rho[3];
    let s23 = &rho[2] + &rho[3];
    let x3 = (&s03 * &s03 - &s13 * &s13 + x1 * x1) / (rat_int(2) * x1);
    let z3 = if y2.is_zero() {
        // collinear anchors: fall back to the quadratic for y
        let y3_sq = &s03 * &s03 - &x3 * &x3;
        if y3_sq.is_negative() {
            return Err(Error::NonRealizable("fourth circle cannot touch".into()));
        }
        let y3 = rational_sqrt(&y3_sq).ok_or_else(|| {
            Error::NonRealizable(format!("fourth center needs sqrt({y3_sq})"))
        })?;
        GaussianRational::new(x3, y3)
    } else {
        // |z|^2 - |z - z2|^2 = s03^2 - s23^2
        let rhs = (&s03 * &s03 - &s23 * &s23 + z2.norm_sq()) / rat_int(2);
        let y3 = (rhs - &x3 * &z2.re) / &z2.im;
        GaussianRational::new(x3, y3)
    };
    // consistency of the remaining quadratic
    if z3.norm_sq() != &s03 * &s03 {
        return Err(Error::NonRealizable(
            "fourth center violates its distance equation".into(),
        ));
    }

    let centers = [z0, z1, z2, z3];
    let mut kz: [GaussianRational; 4] = std::array::from_fn(|_| GaussianRational::zero());
    for (n, &i) in idx.iter().enumerate() {
        kz[i] = centers[n].scale(quad.get(i));
    }
    ExtendedQuad::new(quad.clone(), kz)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: [i64; 4]) -> DescartesQuad {
        DescartesQuad::from_ints(k).unwrap()
    }

    fn rq(k: [i64; 4]) -> [BigRational; 4] {
        [rat_int(k[0]), rat_int(k[1]), rat_int(k[2]), rat_int(k[3])]
    }

    #[test]
    fn descartes_check() {
        assert!(check_descartes(&rq([-1, 2, 2, 3])));
        assert!(check_descartes(&rq([4, 1, 1, 0])));
        assert!(!check_descartes(&rq([1, 2, 2, 3])));
    }

    #[test]
    fn quad_constructor_guards() {
        assert!(DescartesQuad::from_ints([-1, 2, 2, 3]).is_ok());
        assert!(DescartesQuad::from_ints([1, 2, 2, 3]).is_err());
        assert!(DescartesQuad::from_ints([0, 0, 0, 0]).is_err());
    }

    #[test]
    fn fourth_solutions() {
        let s = solve_fourth(&rat_int(2), &rat_int(2), &rat_int(3)).unwrap();
        assert!(s.rational);
        assert_eq!(s.plus, QuadraticSurd::from_int(15));
        assert_eq!(s.minus, QuadraticSurd::from_int(-1));

        let s = solve_fourth(&rat_int(0), &rat_int(1), &rat_int(1)).unwrap();
        assert_eq!(s.plus, QuadraticSurd::from_int(4));
        assert_eq!(s.minus, QuadraticSurd::from_int(0));

        let s = solve_fourth(&rat_int(3), &rat_int(6), &rat_int(7)).unwrap();
        assert_eq!(s.plus, QuadraticSurd::from_int(34));
        assert_eq!(s.minus, QuadraticSurd::from_int(-2));

        assert!(solve_fourth(&rat_int(-1), &rat_int(1), &rat_int(5)).is_err());
    }

    #[test]
    fn reflection_is_an_involution_matching_the_twin() {
        let root = q([-1, 2, 2, 3]);
        let r = root.reflect(0);
        assert_eq!(r.sorted_desc(), q([15, 3, 2, 2]));
        assert_eq!(r.reflect(0), root);

        // the Ford root's largest curvature reflects onto the second line
        let ford = q([4, 1, 1, 0]);
        let twin = ford.reflect(0);
        assert_eq!(twin, q([0, 1, 1, 0]));
    }

    #[test]
    fn duality_matches_the_caption_pairs() {
        assert_eq!(q([4, 1, 1, 0]).dual(), q([-1, 2, 2, 3]));
        assert_eq!(q([-1, 2, 2, 3]).dual(), q([4, 1, 1, 0]));
        assert_eq!(q([0, 1, 1, 4]).dual(), q([3, 2, 2, -1]));
        // involution
        let x = q([-2, 3, 6, 7]);
        assert_eq!(x.dual().dual(), x);
    }

    #[test]
    fn word_application() {
        let ford = q([4, 1, 1, 0]);
        let d3sq: GeneratorWord = "D3 D3".parse().unwrap();
        assert_eq!(apply_word(&d3sq, &ford).unwrap(), q([25, 9, 4, 0]));

        let d3sq_d2: GeneratorWord = "D3 D3 D2".parse().unwrap();
        assert_eq!(apply_word(&d3sq_d2, &ford).unwrap(), q([64, 25, 9, 0]));

        // S-reflection at position 2 equals the positional reflect on the
        // sorted quad
        let s2: GeneratorWord = "S2".parse().unwrap();
        assert_eq!(
            apply_word(&s2, &ford).unwrap(),
            ford.sorted_desc().reflect(1)
        );
    }

    #[test]
    fn word_round_trip_text() {
        let w: GeneratorWord = "D3 D3 D2".parse().unwrap();
        assert_eq!(w.to_string(), "D3 D3 D2");
        assert!("X1".parse::<GeneratorWord>().is_err());
        assert!("D5".parse::<GeneratorWord>().is_err());
    }

    #[test]
    fn word_spectra() {
        let d3sq: GeneratorWord = "D3 D3".parse().unwrap();
        let spec = word_eigen(&d3sq);
        // ((3 +- sqrt 5)/2)^2 = (7 +- 3 sqrt 5)/2, plus a double unit root
        let phi2 = (7.0 + 3.0 * 5.0f64.sqrt()) / 2.0;
        let phi2_inv = (7.0 - 3.0 * 5.0f64.sqrt()) / 2.0;
        let got: Vec<f64> = spec.eigenvalues.iter().map(|z| z.re).collect();
        assert!((got[0] - phi2).abs() < 1e-12);
        assert!((got[3] - phi2_inv).abs() < 1e-12);
        assert!((got[1] - 1.0).abs() < 1e-9 && (got[2] - 1.0).abs() < 1e-9);
        // char poly (x-1)^2 (x^2 - 7x + 1) = x^4 - 9x^3 + 16x^2 - 9x + 1
        let c: Vec<i64> = spec
            .char_poly
            .iter()
            .map(|b| b.to_string().parse().unwrap())
            .collect();
        assert_eq!(c, vec![1, -9, 16, -9, 1]);
    }

    #[test]
    fn homogeneous_identity_cases() {
        assert!(homogeneous_identity(&rat_int(1), &rat_int(1), &rat_int(-2)).unwrap());
        assert!(homogeneous_identity(&rat_int(3), &rat_int(5), &rat_int(-8)).unwrap());
        assert!(homogeneous_identity(&rat_int(1), &rat_int(2), &rat_int(-3)).unwrap());
        assert!(homogeneous_identity(&rat_int(1), &rat_int(1), &rat_int(1)).is_err());
    }

    #[test]
    fn realize_outer_root() {
        let e = realize(&q([-1, 2, 2, 3])).unwrap();
        e.validate().unwrap();
        let circles = e.circles().unwrap();
        // enclosing unit circle at the origin
        let outer = circles
            .iter()
            .find(|c| {
                matches!(
                    c,
                    GeneralizedCircle::Circle {
                        orientation: -1,
                        ..
                    }
                )
            })
            .unwrap();
        assert_eq!(
            *outer,
            GeneralizedCircle::circle(GaussianRational::zero(), rat(1, 1), -1)
        );
    }

    #[test]
    fn realize_collinear_case() {
        realize(&q([-2, 3, 6, 7])).unwrap().validate().unwrap();
    }

    #[test]
    fn realize_all_positive() {
        realize(&q([28, 9, 4, 1])).unwrap().validate().unwrap();
    }

    #[test]
    fn realize_with_line_members() {
        realize(&q([4, 1, 1, 0])).unwrap().validate().unwrap();
        realize(&q([0, 0, 1, 1])).unwrap().validate().unwrap();
    }

    #[test]
    fn extended_reflection_of_the_double_line_root() {
        // the configuration {x-axis, top line, two unit-radius circles}:
        // reflecting the top line yields the circle wedged between the
        // two, tangent to the x-axis
        let e = realize(&q([0, 0, 1, 1])).unwrap();
        let top = (0..4)
            .find(|&i| {
                e.quad().get(i).is_zero()
                    && e.weighted_centers()[i] == GaussianRational::i()
            })
            .unwrap();
        let r = e.reflect(top).unwrap();
        assert_eq!(r.quad().get(top), &rat_int(4));
        let c = r.circle(top).unwrap();
        assert_eq!(
            c,
            GeneralizedCircle::circle(
                GaussianRational::new(rat(1, 1), rat(1, 4)),
                rat(1, 16),
                1
            )
        );
        // reflecting twice restores the original
        assert_eq!(r.reflect(top).unwrap(), e);
    }

    #[test]
    fn extended_reflection_of_outer_root() {
        let e = realize(&q([-1, 2, 2, 3])).unwrap();
        let outer = (0..4).find(|&i| e.quad().get(i).is_negative()).unwrap();
        let r = e.reflect(outer).unwrap();
        assert_eq!(r.quad().get(outer), &rat_int(15));
        r.validate().unwrap();
    }
}
