//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored lowest degree first and the vector never carries
//! trailing zeros, so the zero polynomial is the empty vector.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use super::interval::Interval;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Order of two rationals by cross-multiplication; `Ord` on `BigRational`
/// expands continued fractions, which is slow for large dyadic endpoints.
pub fn cmp_q(a: &Q, b: &Q) -> Ordering {
    if a.denom() == b.denom() {
        return a.numer().cmp(b.numer());
    }
    (a.numer() * b.denom()).cmp(&(b.numer() * a.denom()))
}

pub fn min_q<'a>(a: &'a Q, b: &'a Q) -> &'a Q {
    if cmp_q(a, b) == Ordering::Greater {
        b
    } else {
        a
    }
}

pub fn max_q<'a>(a: &'a Q, b: &'a Q) -> &'a Q {
    if cmp_q(a, b) == Ordering::Less {
        b
    } else {
        a
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Q>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Poly::new(vec![Q::zero(), Q::one()])
    }

    /// `x - r`
    pub fn linear_root(r: &Q) -> Self {
        Poly::new(vec![-r.clone(), Q::one()])
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| q(c)).collect())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation in interval arithmetic; the result encloses the range
    /// of the polynomial over `x`.
    pub fn eval_interval(&self, x: &Interval) -> Interval {
        let mut acc = Interval::point(Q::zero());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &Interval::point(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn scale(&self, s: &Q) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * q(i as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
            None => Poly::zero(),
        }
    }

    /// Euclidean division. Panics when dividing by the zero polynomial.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if nd < dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let coef = &rem[i + dd] / &lc;
            if !coef.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &coef * dc;
                }
            }
            quot[i] = coef;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `s` with `s * self = 1 (mod m)`, if `self` and `m` are coprime.
    pub fn inverse_mod(&self, m: &Poly) -> Option<Poly> {
        // invariant: s_i * self = r_i (mod m)
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (quot, r) = r0.div_rem(&r1);
            let s = &s0 - &(&quot * &s1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let c = r0.leading().unwrap().recip();
        Some(s0.scale(&c).rem(m))
    }

    pub fn is_square_free(&self) -> bool {
        Poly::gcd(self, &self.derivative()).degree() == Some(0)
    }

    /// Integer coefficients, if every coefficient is integral.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Canonical Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(-r);
        }
        seq
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots(&self, lo: &Q, hi: &Q) -> usize {
        self.count_roots_with(&self.sturm_sequence(), lo, hi)
    }

    pub(crate) fn count_roots_with(&self, sturm: &[Poly], lo: &Q, hi: &Q) -> usize {
        let vl = sign_variations(sturm, lo);
        let vh = sign_variations(sturm, hi);
        vl.saturating_sub(vh)
    }

    /// Substitutes `x -> (a x + b)` and returns the expanded polynomial.
    pub fn compose_affine(&self, a: &Q, b: &Q) -> Poly {
        let lin = Poly::new(vec![b.clone(), a.clone()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(c.clone());
        }
        acc
    }
}

fn sign_variations(seq: &[Poly], x: &Q) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for p in seq {
        let v = p.eval(x);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if last.is_some_and(|l| l != pos) {
            count += 1;
        }
        last = Some(pos);
    }
    count
}

/// Integer roots of a polynomial with integer coefficients, ascending.
///
/// Every rational root of a monic integer polynomial is an integer dividing
/// the lowest nonzero coefficient; `bound` caps the absolute value tried.
pub fn integer_roots(p: &Poly, bound: u64) -> Vec<BigInt> {
    let Some(ints) = p.integer_coeffs() else {
        return Vec::new();
    };
    if ints.is_empty() {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let shift = ints.iter().take_while(|c| c.is_zero()).count();
    if shift > 0 {
        roots.push(BigInt::zero());
    }
    let rest = &ints[shift..];
    let c0 = rest[0].abs();
    let small: Option<Vec<i128>> = rest.iter().map(|c| c.to_i128()).collect();
    let c0_small = c0.to_u128();
    for d in 1..=bound {
        let divides = match c0_small {
            Some(c) => c % d as u128 == 0,
            None => (&c0 % BigInt::from(d)).is_zero(),
        };
        if !divides {
            continue;
        }
        for cand in [-(d as i128), d as i128] {
            let zero = match &small {
                Some(cs) => eval_i128(cs, cand).map(|v| v == 0),
                None => None,
            }
            .unwrap_or_else(|| {
                let x = BigInt::from(cand);
                rest.iter()
                    .rev()
                    .fold(BigInt::zero(), |acc, c| acc * &x + c)
                    .is_zero()
            });
            if zero {
                roots.push(BigInt::from(cand));
            }
        }
    }
    roots.sort();
    roots
}

fn eval_i128(coeffs: &[i128], x: i128) -> Option<i128> {
    let mut acc: i128 = 0;
    for &c in coeffs.iter().rev() {
        acc = acc.checked_mul(x)?.checked_add(c)?;
    }
    Some(acc)
}

/// Cauchy bound: every real root lies in `[-B, B]`.
pub fn cauchy_bound(p: &Poly) -> Q {
    let lc = p.leading().expect("zero polynomial").abs();
    let m = p.coeffs[..p.coeffs.len() - 1]
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(Q::zero);
    m + Q::one()
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(Q::zero);
            let b = rhs.coeffs.get(i).cloned().unwrap_or_else(Q::zero);
            out.push(a + b);
        }
        Poly::new(out)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    /// Renders as e.g. `x^3 - x^2 - 3*x + 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coef = i == 0 || !a.is_one();
            if show_coef {
                write!(f, "{a}")?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_roundtrip() {
        let a = Poly::from_i64s(&[-2, 0, 1, 3]);
        let b = Poly::from_i64s(&[1, 1]);
        let (qt, r) = a.div_rem(&b);
        assert_eq!(&(&qt * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let f = &Poly::from_i64s(&[-1, 1]) * &Poly::from_i64s(&[-2, 0, 1]);
        let g = &Poly::from_i64s(&[-1, 1]) * &Poly::from_i64s(&[5, 1]);
        assert_eq!(Poly::gcd(&f, &g), Poly::from_i64s(&[-1, 1]));
    }

    #[test]
    fn sturm_counts_roots_of_x2_minus_2() {
        let p = Poly::from_i64s(&[-2, 0, 1]);
        assert_eq!(p.count_roots(&q(-2), &q(2)), 2);
        assert_eq!(p.count_roots(&q(0), &q(2)), 1);
        assert_eq!(p.count_roots(&q(-1), &q(1)), 0);
    }

    #[test]
    fn integer_roots_of_j73_char_poly() {
        // (x-12)(x-5)x(x+3)
        let p = [12, 5, 0, -3]
            .iter()
            .fold(Poly::one(), |acc, &r| &acc * &Poly::linear_root(&q(r)));
        let roots: Vec<i64> = integer_roots(&p, 12)
            .iter()
            .map(|r| r.to_i64().unwrap())
            .collect();
        assert_eq!(roots, vec![-3, 0, 5, 12]);
    }

    #[test]
    fn inverse_modulo_quadratic() {
        // x * x = 2 (mod x^2 - 2), so x^(-1) = x/2
        let m = Poly::from_i64s(&[-2, 0, 1]);
        let inv = Poly::x().inverse_mod(&m).unwrap();
        assert_eq!(inv, Poly::x().scale(&qr(1, 2)));
        assert!(Poly::from_i64s(&[-1, 1])
            .inverse_mod(&Poly::from_i64s(&[-1, 0, 1]))
            .is_none());
    }

    #[test]
    fn display_form() {
        let p = Poly::from_i64s(&[2, -3, -1, 1]);
        assert_eq!(p.to_string(), "x^3 - x^2 - 3*x + 2");
    }

    #[test]
    fn affine_composition() {
        // p(x) = x^2, p(2x + 1) = 4x^2 + 4x + 1
        let p = Poly::from_i64s(&[0, 0, 1]);
        assert_eq!(p.compose_affine(&q(2), &q(1)), Poly::from_i64s(&[1, 4, 4]));
    }
}
