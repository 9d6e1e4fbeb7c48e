//! Exact real algebraic numbers: rationals, or a real root of a square-free
//! rational polynomial pinned down by an isolating interval.

use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, One, Signed, ToPrimitive, Zero};

use super::interval::Interval;
use super::poly::{cmp_q, integer_roots, max_q, min_q, q, Poly, Q};

/// A real root of `poly` isolated in the open interval `(lo, hi)`.
///
/// `poly` is square-free, has no rational roots, and changes sign exactly
/// once on `(lo, hi)`; neither endpoint is a root.
#[derive(Clone, Debug)]
pub struct RealRoot {
    poly: Poly,
    lo: Q,
    hi: Q,
    lo_positive: bool,
}

impl RealRoot {
    /// Builds an isolated root after checking that `poly` has exactly one
    /// root in `(lo, hi)` and none at the endpoints.
    pub fn new(poly: Poly, lo: Q, hi: Q) -> Option<RealRoot> {
        let plo = poly.eval(&lo);
        let phi = poly.eval(&hi);
        if plo.is_zero() || phi.is_zero() || lo >= hi {
            return None;
        }
        if poly.count_roots(&lo, &hi) != 1 {
            return None;
        }
        Some(RealRoot {
            poly,
            lo_positive: plo.is_positive(),
            lo,
            hi,
        })
    }

    fn new_unchecked(poly: Poly, lo: Q, hi: Q) -> RealRoot {
        let lo_positive = poly.eval(&lo).is_positive();
        RealRoot {
            poly,
            lo,
            hi,
            lo_positive,
        }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.lo.clone(), self.hi.clone())
    }

    /// Shrinks the interval around a floating-point Newton estimate when the
    /// polynomial changes sign across a small dyadic bracket around it; the
    /// bracket is as narrow as `width` or the estimate's accuracy allows.
    fn jump_towards(&mut self, width: &Q) {
        let (lo, hi) = (self.lo.to_f64(), self.hi.to_f64());
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return;
        };
        let d = self.poly.derivative();
        let mut x = (lo + hi) / 2.0;
        for _ in 0..60 {
            let step = self.poly.eval_f64(x) / d.eval_f64(x);
            if !step.is_finite() {
                return;
            }
            x = (x - step).clamp(lo, hi);
            if step.abs() <= x.abs().max(1.0) * 1e-15 {
                break;
            }
        }
        let target = width.to_f64().unwrap_or(0.0) / 4.0;
        let accuracy = x.abs().max(1.0) * (-40f64).exp2();
        let bits = (-target.max(accuracy).log2()).floor().clamp(0.0, 200.0) as u32;
        let scale = Q::from_integer(BigInt::one() << bits);
        let Some(centre) = Q::from_float(x) else {
            return;
        };
        let grid = (centre * &scale).floor();
        let a = (&grid - q(1)) / &scale;
        let b = (&grid + q(2)) / &scale;
        if cmp_q(&a, &self.lo).is_le() || cmp_q(&b, &self.hi).is_ge() {
            return;
        }
        let (pa, pb) = (self.poly.eval(&a), self.poly.eval(&b));
        if pa.is_zero() || pb.is_zero() || pa.is_positive() == pb.is_positive() {
            return;
        }
        self.lo_positive = pa.is_positive();
        self.lo = a;
        self.hi = b;
    }

    /// Halves the isolating interval. Returns the root itself if the
    /// midpoint happens to be it (impossible when `poly` has no rational
    /// roots, kept for robustness).
    fn bisect(&mut self) -> Option<Q> {
        let mid = (&self.lo + &self.hi) / q(2);
        let v = self.poly.eval(&mid);
        if v.is_zero() {
            return Some(mid);
        }
        if v.is_positive() == self.lo_positive {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
        None
    }

    fn refine_to(&mut self, width: &Q) -> Option<Q> {
        if cmp_q(&(&self.hi - &self.lo), width).is_gt() {
            self.jump_towards(width);
        }
        while cmp_q(&(&self.hi - &self.lo), width).is_gt() {
            if let Some(r) = self.bisect() {
                return Some(r);
            }
        }
        None
    }
}

#[derive(Clone, Debug)]
pub enum AlgebraicScalar {
    Rational(Q),
    Root(RealRoot),
}

/// Error raised when a polynomial handed to [`real_roots`] has a repeated root.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("polynomial {0} has a repeated root")]
pub struct RepeatedRoot(pub String);

/// All real roots of a monic integer polynomial, in descending order.
///
/// Integer roots are found exactly by testing divisors of the constant term;
/// the remaining roots are isolated by Sturm bisection inside
/// `(-bound, bound)`, where `bound` must exceed every root in absolute value.
pub fn real_roots(p: &Poly, bound: u64) -> Result<Vec<AlgebraicScalar>, RepeatedRoot> {
    assert!(
        p.leading().is_some_and(One::is_one) && p.integer_coeffs().is_some(),
        "real_roots expects a monic integer polynomial"
    );
    if !p.is_square_free() {
        return Err(RepeatedRoot(p.to_string()));
    }
    let mut roots = Vec::new();
    let mut rest = p.clone();
    for r in integer_roots(p, bound) {
        let r = Q::from_integer(r);
        rest = rest.div_rem(&Poly::linear_root(&r)).0;
        roots.push(AlgebraicScalar::Rational(r));
    }
    if rest.degree().unwrap_or(0) > 0 {
        let b = q(bound as i64);
        let sturm = rest.sturm_sequence();
        isolate(&rest, &sturm, -b.clone(), b, &mut roots);
    }
    roots.sort_by(|a, b| b.cmp(a));
    Ok(roots)
}

fn isolate(p: &Poly, sturm: &[Poly], lo: Q, hi: Q, out: &mut Vec<AlgebraicScalar>) {
    let n = p.count_roots_with(sturm, &lo, &hi);
    match n {
        0 => {}
        1 => out.push(AlgebraicScalar::Root(RealRoot::new_unchecked(
            p.clone(),
            lo,
            hi,
        ))),
        _ => {
            let mid = (&lo + &hi) / q(2);
            debug_assert!(!p.eval(&mid).is_zero());
            isolate(p, sturm, lo, mid.clone(), out);
            isolate(p, sturm, mid, hi, out);
        }
    }
}

impl AlgebraicScalar {
    pub fn integer(n: i64) -> Self {
        AlgebraicScalar::Rational(q(n))
    }

    pub fn rational(&self) -> Option<&Q> {
        match self {
            AlgebraicScalar::Rational(r) => Some(r),
            AlgebraicScalar::Root(_) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, AlgebraicScalar::Rational(_))
    }

    /// The integer value, if this is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    /// Polynomial vanishing at this number: `x - r` for rationals, the
    /// square-free defining polynomial otherwise.
    pub fn defining_poly(&self) -> Poly {
        match self {
            AlgebraicScalar::Rational(r) => Poly::linear_root(r),
            AlgebraicScalar::Root(rr) => rr.poly.clone(),
        }
    }

    /// Current enclosure (a point for rationals).
    pub fn enclosure(&self) -> Interval {
        match self {
            AlgebraicScalar::Rational(r) => Interval::point(r.clone()),
            AlgebraicScalar::Root(rr) => rr.interval(),
        }
    }

    /// A copy refined so that its enclosure is at most `width` wide.
    pub fn refined(&self, width: &Q) -> AlgebraicScalar {
        match self {
            AlgebraicScalar::Rational(_) => self.clone(),
            AlgebraicScalar::Root(rr) => {
                let mut rr = rr.clone();
                match rr.refine_to(width) {
                    Some(r) => AlgebraicScalar::Rational(r),
                    None => AlgebraicScalar::Root(rr),
                }
            }
        }
    }

    pub fn enclose(&self, width: &Q) -> Interval {
        self.refined(width).enclosure()
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            AlgebraicScalar::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            AlgebraicScalar::Root(_) => {
                let w = Q::new(BigInt::one(), BigInt::one() << 64u32);
                self.enclose(&w).mid_f64()
            }
        }
    }

    /// Exact comparison against a rational.
    pub fn cmp_rational(&self, r: &Q) -> Ordering {
        match self {
            AlgebraicScalar::Rational(x) => x.cmp(r),
            AlgebraicScalar::Root(rr) => {
                let mut rr = rr.clone();
                loop {
                    if cmp_q(r, &rr.lo).is_le() {
                        return Ordering::Greater;
                    }
                    if cmp_q(r, &rr.hi).is_ge() {
                        return Ordering::Less;
                    }
                    if rr.poly.eval(r).is_zero() {
                        return Ordering::Equal;
                    }
                    if let Some(x) = rr.bisect() {
                        return x.cmp(r);
                    }
                }
            }
        }
    }

    pub fn signum(&self) -> Ordering {
        self.cmp_rational(&Q::zero())
    }

    /// Exact sign of `f(self)`.
    ///
    /// A zero value is detected through `gcd(poly, f)`: it vanishes at the
    /// root iff it changes sign across the isolating interval. Otherwise the
    /// interval is bisected until the Horner enclosure of `f` excludes zero.
    pub fn sign_at(&self, f: &Poly) -> Ordering {
        match self {
            AlgebraicScalar::Rational(r) => f.eval(r).cmp(&Q::zero()),
            AlgebraicScalar::Root(rr) => {
                if f.is_zero() {
                    return Ordering::Equal;
                }
                let g = Poly::gcd(&rr.poly, f);
                if g.degree().unwrap_or(0) > 0 {
                    let a = g.eval(&rr.lo);
                    let b = g.eval(&rr.hi);
                    if a.is_positive() != b.is_positive() {
                        return Ordering::Equal;
                    }
                }
                let mut rr = rr.clone();
                loop {
                    let e = f.eval_interval(&rr.interval());
                    if e.is_positive() {
                        return Ordering::Greater;
                    }
                    if e.is_negative() {
                        return Ordering::Less;
                    }
                    if let Some(x) = rr.bisect() {
                        return f.eval(&x).cmp(&Q::zero());
                    }
                }
            }
        }
    }

    /// Largest real root of a monic integer polynomial.
    pub fn largest_root(p: &Poly) -> Option<AlgebraicScalar> {
        let bound = super::poly::cauchy_bound(p).ceil().to_integer().to_u64()? + 1;
        real_roots(p, bound).ok()?.into_iter().next()
    }

    /// `1 - k / self` for a negative number, kept exact.
    ///
    /// For a root `t` of `p` of degree `n`, `y = 1 - k/t` is a root of
    /// `(1 - y)^n p(k / (1 - y))`, and the map is increasing on `t < 0`.
    pub fn one_minus_k_over(&self, k: &Q) -> Option<AlgebraicScalar> {
        if self.signum() != Ordering::Less {
            return None;
        }
        match self {
            AlgebraicScalar::Rational(t) => Some(AlgebraicScalar::Rational(Q::one() - k / t)),
            AlgebraicScalar::Root(rr) => {
                let mut rr = rr.clone();
                while !rr.hi.is_negative() {
                    if let Some(x) = rr.bisect() {
                        return Some(AlgebraicScalar::Rational(Q::one() - k / x));
                    }
                }
                let n = rr.poly.degree().unwrap();
                let one_minus_y = Poly::new(vec![Q::one(), -Q::one()]);
                let mut acc = Poly::zero();
                let mut pow = Poly::one();
                // sum_i c_i k^i (1-y)^(n-i)
                let mut terms = Vec::with_capacity(n + 1);
                for _ in 0..=n {
                    terms.push(pow.clone());
                    pow = &pow * &one_minus_y;
                }
                for (i, c) in rr.poly.coeffs().iter().enumerate() {
                    let kc = c * num::pow(k.clone(), i);
                    acc = &acc + &terms[n - i].scale(&kc);
                }
                let lo = Q::one() - k / &rr.lo;
                let hi = Q::one() - k / &rr.hi;
                let acc = acc.monic();
                Some(AlgebraicScalar::Root(RealRoot::new(acc, lo, hi)?))
            }
        }
    }

    /// Decimal rendering with `sig` significant digits.
    pub fn to_decimal(&self, sig: usize) -> String {
        format_significant(self.to_f64(), sig)
    }
}

/// Formats `x` with `sig` significant digits in positional notation.
pub fn format_significant(x: f64, sig: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{:.*}", sig.saturating_sub(1), x);
    }
    let e = x.abs().log10().floor() as i64;
    let decimals = (sig as i64 - 1 - e).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // rounding may carry into a new leading digit
    let digits = s.chars().filter(char::is_ascii_digit).count();
    let lead_zeros = s
        .trim_start_matches('-')
        .chars()
        .take_while(|c| *c == '0' || *c == '.')
        .filter(|c| *c == '0')
        .count();
    if digits - lead_zeros > sig && decimals > 0 {
        format!("{:.*}", decimals - 1, x)
    } else {
        s
    }
}

impl PartialEq for AlgebraicScalar {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for AlgebraicScalar {}

impl PartialOrd for AlgebraicScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgebraicScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        use AlgebraicScalar::*;
        match (self, other) {
            (Rational(a), Rational(b)) => a.cmp(b),
            (Root(_), Rational(b)) => self.cmp_rational(b),
            (Rational(a), Root(_)) => other.cmp_rational(a).reverse(),
            (Root(a), Root(b)) => {
                let (mut a, mut b) = (a.clone(), b.clone());
                // equal iff the common factor has a single root spanning both
                let g = Poly::gcd(&a.poly, &b.poly);
                let sturm = (g.degree().unwrap_or(0) > 0).then(|| g.sturm_sequence());
                loop {
                    if cmp_q(&a.hi, &b.lo).is_le() {
                        return Ordering::Less;
                    }
                    if cmp_q(&b.hi, &a.lo).is_le() {
                        return Ordering::Greater;
                    }
                    if let Some(sturm) = &sturm {
                        let changes = |r: &RealRoot| {
                            g.eval(&r.lo).is_positive() != g.eval(&r.hi).is_positive()
                        };
                        if changes(&a) && changes(&b) {
                            let lo = min_q(&a.lo, &b.lo).clone();
                            let hi = max_q(&a.hi, &b.hi).clone();
                            if g.count_roots_with(sturm, &lo, &hi) == 1 {
                                return Ordering::Equal;
                            }
                        }
                    }
                    let xa = a.bisect();
                    let xb = b.bisect();
                    match (xa, xb) {
                        (Some(x), _) => return Rational(x).cmp(&Root(b)),
                        (_, Some(y)) => return Root(a).cmp(&Rational(y)),
                        _ => {}
                    }
                }
            }
        }
    }
}

impl fmt::Display for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraicScalar::Rational(r) => write!(f, "{r}"),
            AlgebraicScalar::Root(rr) => write!(
                f,
                "root of {} in ({}, {}) ~ {}",
                rr.poly,
                rr.lo,
                rr.hi,
                self.to_decimal(12)
            ),
        }
    }
}

/// Maximum refinement depth, in bits of absolute width, for expressions that
/// combine several algebraic numbers.
pub const MAX_REFINEMENT_BITS: u32 = 256;

/// Sign of an expression in several algebraic numbers, decided by interval
/// evaluation at increasing precision.
///
/// `f` maps enclosures of `vars` to an enclosure of the expression, returning
/// `None` when it is undefined on the current boxes (e.g. a divisor interval
/// straddling zero). When every variable is rational the answer is exact.
/// An expression still straddling zero at [`MAX_REFINEMENT_BITS`] is reported
/// as `Equal`.
pub fn certified_sign<F>(vars: &[&AlgebraicScalar], f: F) -> Ordering
where
    F: Fn(&[Interval]) -> Option<Interval>,
{
    let mut bits = 8u32;
    loop {
        let width = Q::new(BigInt::one(), BigInt::one() << bits);
        let boxes: Vec<Interval> = vars.iter().map(|v| v.enclose(&width)).collect();
        if let Some(e) = f(&boxes) {
            if e.is_positive() {
                return Ordering::Greater;
            }
            if e.is_negative() {
                return Ordering::Less;
            }
            if e.is_point() {
                return Ordering::Equal;
            }
        }
        if bits >= MAX_REFINEMENT_BITS {
            return Ordering::Equal;
        }
        bits = (bits * 2).min(MAX_REFINEMENT_BITS);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::poly::qr;

    fn sqrt5() -> AlgebraicScalar {
        AlgebraicScalar::largest_root(&Poly::from_i64s(&[-5, 0, 1])).unwrap()
    }

    #[test]
    fn roots_are_sorted_descending() {
        // (x-2)(x^2+x-1): pentagon
        let p = &Poly::from_i64s(&[-2, 1]) * &Poly::from_i64s(&[-1, 1, 1]);
        let r = real_roots(&p, 2).unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r[0], AlgebraicScalar::integer(2));
        assert!((r[1].to_f64() - 0.6180339887498949).abs() < 1e-12);
        assert!((r[2].to_f64() + 1.618033988749895).abs() < 1e-12);
    }

    #[test]
    fn repeated_root_is_reported() {
        let p = &Poly::from_i64s(&[-1, 1]) * &Poly::from_i64s(&[-1, 1]);
        assert!(real_roots(&p, 3).is_err());
    }

    #[test]
    fn equality_across_different_polynomials() {
        // sqrt5 as a root of x^2-5 and of (x^2-5)(x-7)
        let a = sqrt5();
        let p = &Poly::from_i64s(&[-5, 0, 1]) * &Poly::from_i64s(&[1, 1]);
        let b = real_roots(&p, 10).unwrap().into_iter().next().unwrap();
        assert_eq!(a, b);
        assert!(a > AlgebraicScalar::integer(2));
        assert!(a < AlgebraicScalar::Rational(qr(9, 4)));
    }

    #[test]
    fn exact_sign_detects_zero() {
        let s = sqrt5();
        // x^2 - 5 vanishes, x^2 - 4 is positive, x - 3 negative
        assert_eq!(s.sign_at(&Poly::from_i64s(&[-5, 0, 1])), Ordering::Equal);
        assert_eq!(s.sign_at(&Poly::from_i64s(&[-4, 0, 1])), Ordering::Greater);
        assert_eq!(s.sign_at(&Poly::from_i64s(&[-3, 1])), Ordering::Less);
    }

    #[test]
    fn delsarte_transform_of_minus_sqrt5() {
        let m = real_roots(&Poly::from_i64s(&[-5, 0, 1]), 3)
            .unwrap()
            .pop()
            .unwrap();
        let y = m.one_minus_k_over(&q(5)).unwrap();
        // 1 - 5/(-sqrt5) = 1 + sqrt5
        assert!((y.to_f64() - (1.0 + 5f64.sqrt())).abs() < 1e-12);
        assert_eq!(y.sign_at(&Poly::from_i64s(&[-4, -2, 1])), Ordering::Equal);
    }

    #[test]
    fn multi_variable_sign() {
        let s = sqrt5();
        let t = AlgebraicScalar::integer(-1);
        // sqrt5 * (-1) + 2 < 0
        let sign = certified_sign(&[&s, &t], |b| {
            Some(&(&b[0] * &b[1]) + &Interval::point(q(2)))
        });
        assert_eq!(sign, Ordering::Less);
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(12.0, 12), "12.0000000000");
        assert_eq!(format_significant(-3.0, 12), "-3.00000000000");
        assert_eq!(format_significant(2.23606797749979, 12), "2.23606797750");
        assert_eq!(format_significant(9.9999999999999, 3), "10.0");
    }
}
