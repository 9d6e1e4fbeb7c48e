//! Closed intervals with exact rational endpoints.

use std::ops::{Add, Mul, Neg, Sub};

use num::{Signed, ToPrimitive, Zero};

use super::poly::{cmp_q, max_q, min_q, q, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Q,
    pub hi: Q,
}

impl Interval {
    pub fn new(lo: Q, hi: Q) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: Q) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Q {
        (&self.lo + &self.hi) / q(2)
    }

    pub fn contains(&self, x: &Q) -> bool {
        cmp_q(&self.lo, x).is_le() && cmp_q(x, &self.hi).is_le()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Reciprocal; `None` when the interval contains zero.
    pub fn recip(&self) -> Option<Interval> {
        if self.contains_zero() {
            return None;
        }
        Some(Interval::new(self.hi.recip(), self.lo.recip()))
    }

    pub fn div(&self, rhs: &Interval) -> Option<Interval> {
        rhs.recip().map(|r| self * &r)
    }

    pub fn scale(&self, s: &Q) -> Interval {
        self * &Interval::point(s.clone())
    }

    /// Integers contained in the interval, ascending.
    pub fn integers(&self) -> Vec<Q> {
        let lo = self.lo.ceil();
        let hi = self.hi.floor();
        let mut out = Vec::new();
        let mut x = lo;
        while x <= hi {
            out.push(x.clone());
            x += q(1);
        }
        out
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.lo.to_f64().unwrap_or(f64::NAN),
            self.hi.to_f64().unwrap_or(f64::NAN),
        )
    }

    pub fn mid_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    /// Smallest enclosing interval with endpoints in `2^-bits Z`; points
    /// stay exact.
    pub fn round_out(&self, bits: u32) -> Interval {
        if self.is_point() {
            return self.clone();
        }
        let scale = Q::from_integer(num::BigInt::from(1) << bits);
        Interval::new(
            (&self.lo * &scale).floor() / &scale,
            (&self.hi * &scale).ceil() / &scale,
        )
    }

    pub fn is_point(&self) -> bool {
        (&self.hi - &self.lo).is_zero()
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval::new(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::new(-&self.hi, -&self.lo)
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        if self.is_point() && rhs.is_point() {
            return Interval::point(&self.lo * &rhs.lo);
        }
        let cands = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = cands[1..]
            .iter()
            .fold(&cands[0], |m, x| min_q(m, x))
            .clone();
        let hi = cands[1..]
            .iter()
            .fold(&cands[0], |m, x| max_q(m, x))
            .clone();
        Interval::new(lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::poly::qr;

    #[test]
    fn product_covers_sign_mix() {
        let a = Interval::new(q(-1), q(2));
        let b = Interval::new(q(3), q(4));
        assert_eq!(&a * &b, Interval::new(q(-4), q(8)));
    }

    #[test]
    fn recip_rejects_zero() {
        assert!(Interval::new(q(-1), q(1)).recip().is_none());
        assert_eq!(
            Interval::new(q(2), q(4)).recip().unwrap(),
            Interval::new(qr(1, 4), qr(1, 2))
        );
    }

    #[test]
    fn integers_inside() {
        let i = Interval::new(qr(-3, 2), qr(5, 2));
        assert_eq!(i.integers(), vec![q(-1), q(0), q(1), q(2)]);
    }
}
