//! Continued fractions of rationals and quadratic irrationals.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::{div_floor_big, QuadraticSurd};

/// An eventually periodic continued fraction [head; repeating period].
/// The period is empty exactly for rational values, and is otherwise the
/// minimal repeating block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicCF {
    head: Vec<BigInt>,
    period: Vec<BigInt>,
}

impl PeriodicCF {
    /// Builds a CF, reducing the period to its minimal cyclic block.
    pub fn new(head: Vec<BigInt>, period: Vec<BigInt>) -> Self {
        let period = minimal_block(period);
        Self { head, period }
    }

    pub fn from_ints(head: &[i64], period: &[i64]) -> Self {
        Self::new(
            head.iter().map(|&n| BigInt::from(n)).collect(),
            period.iter().map(|&n| BigInt::from(n)).collect(),
        )
    }

    pub fn head(&self) -> &[BigInt] {
        &self.head
    }

    pub fn period(&self) -> &[BigInt] {
        &self.period
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// Digit at position k of the infinite expansion (None past the end of
    /// a finite expansion).
    pub fn digit(&self, k: usize) -> Option<BigInt> {
        if k < self.head.len() {
            Some(self.head[k].clone())
        } else if self.period.is_empty() {
            None
        } else {
            let idx = (k - self.head.len()) % self.period.len();
            Some(self.period[idx].clone())
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let digits = |v: &[BigInt]| -> Vec<serde_json::Value> {
            v.iter()
                .map(|d| match d.to_string().parse::<i64>() {
                    Ok(n) => serde_json::json!(n),
                    Err(_) => serde_json::json!(d.to_string()),
                })
                .collect()
        };
        serde_json::json!({ "head": digits(&self.head), "period": digits(&self.period) })
    }
}

impl fmt::Display for PeriodicCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| {
            v.iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        if self.head.is_empty() {
            write!(f, "[;")?;
        } else {
            write!(f, "[{}", self.head[0])?;
            if self.head.len() > 1 {
                write!(f, ",{}", join(&self.head[1..]))?;
            }
            write!(f, ";")?;
        }
        if self.period.is_empty() {
            write!(f, "]")
        } else {
            write!(f, " ({})]", join(&self.period))
        }
    }
}

fn minimal_block(period: Vec<BigInt>) -> Vec<BigInt> {
    let n = period.len();
    for len in 1..n {
        if n % len == 0 && (0..n).all(|i| period[i] == period[i % len]) {
            return period[..len].to_vec();
        }
    }
    period
}

/// Continued fraction of a rational: canonical Euclidean form with the
/// final term at least 2 whenever the expansion has more than one term.
fn cf_rational(x: &BigRational) -> Vec<BigInt> {
    let mut digits = Vec::new();
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    loop {
        let a = div_floor_big(&num, &den);
        digits.push(a.clone());
        let rem = &num - &a * &den;
        if rem.is_zero() {
            break;
        }
        num = den;
        den = rem;
    }
    // canonical: [..., a, 1] -> [..., a+1]
    if digits.len() > 1 && digits.last().map(|d| d.is_one()).unwrap_or(false) {
        digits.pop();
        if let Some(last) = digits.last_mut() {
            *last += 1;
        }
    }
    digits
}

/// Expands a real quadratic surd into its eventually periodic continued
/// fraction. Period detection tracks the (P, Q) state pair of the
/// classical algorithm, not the emitted digits.
pub fn cf_expand(x: &QuadraticSurd) -> Result<PeriodicCF> {
    if let Some(r) = x.as_rational() {
        return Ok(PeriodicCF::new(cf_rational(r), Vec::new()));
    }

    // write x = (P + sqrt(D)) / Q with integers satisfying Q | D - P^2
    let a = x.rational_part();
    let b = x.surd_coefficient();
    let d = x.radicand();
    let m = a.denom().lcm(b.denom());
    let u = a.numer() * (&m / a.denom());
    let v = b.numer() * (&m / b.denom());
    let w = m;

    let mut dd: BigInt = &v * &v * d;
    let (mut p, mut q) = if v.is_negative() {
        (-u, -w)
    } else {
        (u, w)
    };
    let rem = (&dd - &p * &p) % &q;
    if !rem.is_zero() {
        let qa = q.abs();
        p *= &qa;
        dd *= &qa * &qa;
        q *= &qa;
    }

    let sqrt_d = dd.sqrt();
    debug_assert!(&sqrt_d * &sqrt_d != dd, "radicand must not be square here");

    let mut digits: Vec<BigInt> = Vec::new();
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    for step in 0..100_000usize {
        if let Some(&first) = seen.get(&(p.clone(), q.clone())) {
            let head = digits[..first].to_vec();
            let period = digits[first..].to_vec();
            return Ok(PeriodicCF::new(head, period));
        }
        seen.insert((p.clone(), q.clone()), step);

        let a_k = if q.is_positive() {
            div_floor_big(&(&p + &sqrt_d), &q)
        } else {
            div_floor_big(&(&p + &sqrt_d + BigInt::one()), &q)
        };
        digits.push(a_k.clone());
        let p_next = &a_k * &q - &p;
        let q_next = (&dd - &p_next * &p_next) / &q;
        p = p_next;
        q = q_next;
    }
    Err(Error::Domain(
        "continued fraction failed to become periodic within bounds".into(),
    ))
}

/// k-th convergent p_k/q_k of a continued fraction (0-indexed). For a
/// finite expansion, indices past the end return the exact final value.
pub fn cf_convergent(cf: &PeriodicCF, k: usize) -> BigRational {
    let mut p_prev = BigInt::one();
    let mut p_prev2 = BigInt::zero();
    let mut q_prev = BigInt::zero();
    let mut q_prev2 = BigInt::one();
    let mut result = None;
    for i in 0..=k {
        let Some(a) = cf.digit(i) else { break };
        let p = &a * &p_prev + &p_prev2;
        let q = &a * &q_prev + &q_prev2;
        p_prev2 = std::mem::replace(&mut p_prev, p);
        q_prev2 = std::mem::replace(&mut q_prev, q);
        result = Some(BigRational::new(p_prev.clone(), q_prev.clone()));
    }
    result.expect("continued fraction has at least one digit")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{rat, rat_int, surd_roots};

    fn surd(a: (i64, i64), b: (i64, i64), d: i64) -> QuadraticSurd {
        QuadraticSurd::new(rat(a.0, a.1), rat(b.0, b.1), BigInt::from(d)).unwrap()
    }

    /// Exact value of a periodic CF: solve the period's fixed-point
    /// quadratic in surd arithmetic, then fold the head back on top.
    /// Independent of the expansion algorithm.
    fn eval_periodic_exact(cf: &PeriodicCF) -> QuadraticSurd {
        let fold = |digits: &[BigInt], tail: QuadraticSurd| -> QuadraticSurd {
            let mut x = tail;
            for a in digits.iter().rev() {
                // a + 1/x
                let one = QuadraticSurd::from_int(1);
                x = QuadraticSurd::from_rational(rat_int(a.clone()))
                    .try_add(&one.try_div(&x).unwrap())
                    .unwrap();
            }
            x
        };
        if cf.period().is_empty() {
            // finite: fold onto the last digit
            let digits = cf.head();
            let last = QuadraticSurd::from_rational(rat_int(digits[digits.len() - 1].clone()));
            return fold(&digits[..digits.len() - 1], last);
        }
        // tail t = [a0; a1, ..., a_{m-1}, t]: matrix product gives
        // t = (p t + p') / (q t + q'), so q t^2 + (q' - p) t - p' = 0.
        let (mut p, mut pp, mut q, mut qp) = (
            BigInt::one(),
            BigInt::zero(),
            BigInt::zero(),
            BigInt::one(),
        );
        for a in cf.period() {
            // right-multiply [[p, pp], [q, qp]] by [[a, 1], [1, 0]]
            let np = a * &p + &pp;
            let npp = p;
            let nq = a * &q + &qp;
            let nqp = q;
            p = np;
            pp = npp;
            q = nq;
            qp = nqp;
        }
        let disc = (&qp - &p) * (&qp - &p) + BigInt::from(4) * &q * &pp;
        let root = QuadraticSurd::sqrt_of(disc).unwrap();
        let t = QuadraticSurd::from_rational(rat_int(&p - &qp))
            .try_add(&root)
            .unwrap()
            .scale(&rat(1, 2))
            .try_div(&QuadraticSurd::from_rational(rat_int(q)))
            .unwrap();
        fold(cf.head(), t)
    }

    #[test]
    fn golden_class_surd_expands_to_period_one() {
        // (3+sqrt(5))/2 = [2; (1)]
        let x = surd((3, 2), (1, 2), 5);
        let cf = cf_expand(&x).unwrap();
        assert_eq!(cf, PeriodicCF::from_ints(&[2], &[1]));
        assert_eq!(eval_periodic_exact(&cf), x);
    }

    #[test]
    fn diamond_class_surd_expands_to_period_two() {
        // 2+sqrt(3) = [3; (1,2)]
        let x = surd((2, 1), (1, 1), 3);
        let cf = cf_expand(&x).unwrap();
        assert_eq!(cf, PeriodicCF::from_ints(&[3], &[1, 2]));
        assert_eq!(eval_periodic_exact(&cf), x);
    }

    #[test]
    fn rational_input_gives_finite_canonical_cf() {
        let x = QuadraticSurd::from_rational(rat(7, 3));
        let cf = cf_expand(&x).unwrap();
        assert_eq!(cf, PeriodicCF::from_ints(&[2, 3], &[]));
        // canonical form never ends in 1
        let y = QuadraticSurd::from_rational(rat(5, 3)); // naive [1,1,2]
        let cf_y = cf_expand(&y).unwrap();
        assert_eq!(cf_y, PeriodicCF::from_ints(&[1, 1, 2], &[]));
        assert!(!cf_y.head().last().unwrap().is_one() || cf_y.head().len() == 1);
    }

    #[test]
    fn convergents() {
        let cf = PeriodicCF::from_ints(&[3], &[1, 2]);
        assert_eq!(cf_convergent(&cf, 0), rat(3, 1));
        assert_eq!(cf_convergent(&cf, 2), rat(11, 3));
        let golden_like = PeriodicCF::from_ints(&[2], &[1]);
        assert_eq!(cf_convergent(&golden_like, 4), rat(13, 5));
    }

    #[test]
    fn negative_and_scaled_surds() {
        // sqrt(2) = [1; (2)]
        let cf = cf_expand(&surd((0, 1), (1, 1), 2)).unwrap();
        assert_eq!(cf, PeriodicCF::from_ints(&[1], &[2]));
        // -sqrt(2) = [-2; 1, (2)] canonical via floor arithmetic
        let cf_neg = cf_expand(&surd((0, 1), (-1, 1), 2)).unwrap();
        assert_eq!(eval_periodic_exact(&cf_neg), surd((0, 1), (-1, 1), 2));
        // (1 - sqrt(5))/7 exercises the divisibility fixup
        let x = surd((1, 7), (-1, 7), 5);
        let cf_x = cf_expand(&x).unwrap();
        assert_eq!(eval_periodic_exact(&cf_x), x);
    }

    #[test]
    fn minimal_period_after_scaled_trace_roots() {
        for n_star in 1i64..=10 {
            let (zeta, _) = surd_roots(&BigInt::from(n_star + 2), &BigInt::from(1)).unwrap();
            let cf = cf_expand(&zeta).unwrap();
            let expected = PeriodicCF::from_ints(&[n_star + 1], &[1, n_star]);
            assert_eq!(cf, expected, "n* = {n_star}");
            assert_eq!(eval_periodic_exact(&cf), zeta, "n* = {n_star}");
        }
    }

    #[test]
    fn convergent_error_shrinks_like_denominator_squared() {
        let x = surd((2, 1), (1, 1), 3);
        let cf = cf_expand(&x).unwrap();
        let v = x.to_f64();
        for k in 2..10 {
            let c = cf_convergent(&cf, k);
            let q = c.denom().to_string().parse::<f64>().unwrap();
            let err = (v - crate::numerics::rat_to_f64(&c)).abs();
            assert!(err <= 1.0 / (q * q), "k={k} err={err} q={q}");
        }
    }
}
