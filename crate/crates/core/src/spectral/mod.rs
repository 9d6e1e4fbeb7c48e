//! Exact eigenvalue machinery for the tridiagonal intersection matrix.
//!
//! Eigenvalues are [`AlgebraicScalar`]s: integers are found exactly from the
//! divisors of the constant term, the remaining roots are isolated by Sturm
//! bisection over the rationals. Quantities that depend on an irrational
//! eigenvalue (standard sequences, multiplicities) are kept as polynomials in
//! that eigenvalue and evaluated exactly where possible.

pub mod algebraic;
pub mod interval;
pub mod poly;

use std::cmp::Ordering;

use num::{BigInt, One, Signed, ToPrimitive, Zero};

pub use algebraic::{certified_sign, format_significant, AlgebraicScalar, RepeatedRoot};
pub use interval::Interval;
pub use poly::{Poly, Q};

use crate::arrays::{DerivedCounts, IntersectionArray};
use poly::{cmp_q, q};

/// Width under which a multiplicity enclosure is considered certified.
pub fn certification_width() -> Q {
    Q::new(BigInt::one(), BigInt::from(1_000_000))
}

/// Characteristic polynomial `det(xI - T)` of the `(D+1) x (D+1)` tridiagonal
/// matrix with rows `(c_i, a_i, b_i)`, via the three-term recurrence
/// `P_(j+1) = (x - a_j) P_j - b_(j-1) c_j P_(j-1)`.
pub fn char_poly(arr: &IntersectionArray) -> Poly {
    let x = Poly::x();
    let mut prev = Poly::one();
    let mut cur = &x - &Poly::constant(q(arr.a(0)));
    for j in 1..=arr.diameter() {
        let off = q((arr.b(j - 1) * arr.c(j)) as i64);
        let next = &(&(&x - &Poly::constant(q(arr.a(j)))) * &cur) - &prev.scale(&off);
        prev = cur;
        cur = next;
    }
    cur
}

/// The `D+1` distinct eigenvalues, descending. All lie in `[-k, k]`.
pub fn eigenvalues(arr: &IntersectionArray) -> Result<Vec<AlgebraicScalar>, RepeatedRoot> {
    algebraic::real_roots(&char_poly(arr), arr.k())
}

/// The standard sequence `u_0, ..., u_D` of `theta`, held as polynomials in
/// `theta`: `u_0 = 1`, `u_1 = x/k`, and
/// `c_i u_(i-1) + a_i u_i + b_i u_(i+1) = x u_i`.
#[derive(Clone, Debug)]
pub struct StandardSequence {
    pub theta: AlgebraicScalar,
    pub terms: Vec<Poly>,
    /// `c_D u_(D-1) + a_D u_D - x u_D`; vanishes at `theta` iff `theta` is an
    /// eigenvalue.
    pub terminal: Poly,
}

impl StandardSequence {
    /// Exact values when `theta` is rational.
    pub fn exact_values(&self) -> Option<Vec<Q>> {
        let t = self.theta.rational()?;
        Some(self.terms.iter().map(|p| p.eval(t)).collect())
    }

    pub fn signs(&self) -> Vec<Ordering> {
        self.terms.iter().map(|p| self.theta.sign_at(p)).collect()
    }

    pub fn sign_changes(&self) -> usize {
        sign_changes(&self.signs())
    }

    pub fn terminal_identity_holds(&self) -> bool {
        self.theta.sign_at(&self.terminal) == Ordering::Equal
    }

    /// Enclosures of each term after refining `theta` to `width`.
    pub fn enclosures(&self, width: &Q) -> Vec<Interval> {
        let t = self.theta.enclose(width);
        self.terms.iter().map(|p| p.eval_interval(&t)).collect()
    }

    /// Term `i` evaluated at `theta` as a polynomial expression.
    pub fn term(&self, i: usize) -> &Poly {
        &self.terms[i]
    }
}

/// Standard sequence polynomials for an arbitrary scalar `theta`.
pub fn standard_sequence(arr: &IntersectionArray, theta: &AlgebraicScalar) -> StandardSequence {
    let (terms, terminal) = standard_polys(arr);
    StandardSequence {
        theta: theta.clone(),
        terms,
        terminal,
    }
}

/// The polynomials `u_0(x), ..., u_D(x)` and the terminal polynomial.
fn standard_polys(arr: &IntersectionArray) -> (Vec<Poly>, Poly) {
    let d = arr.diameter();
    let x = Poly::x();
    let mut terms = vec![Poly::one(), x.scale(&Q::new(BigInt::one(), arr.k().into()))];
    for i in 1..d {
        let shifted = &x - &Poly::constant(q(arr.a(i)));
        let next = &(&shifted * &terms[i]) - &terms[i - 1].scale(&q(arr.c(i) as i64));
        terms.push(next.scale(&Q::new(BigInt::one(), arr.b(i).into())));
    }
    terms.truncate(d + 1);
    let shifted = &Poly::constant(q(arr.a(d))) - &x;
    let terminal = &terms[d - 1].scale(&q(arr.c(d) as i64)) + &(&shifted * &terms[d]);
    (terms, terminal)
}

/// A multiplicity `v / sum_i k_i u_i(theta)^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Multiplicity {
    /// Known exactly: the eigenvalue is rational, or the value was confirmed
    /// to be a specific integer.
    Exact(Q),
    /// Certified enclosure (narrower than [`certification_width`]) of a value
    /// proven not to be an integer.
    Approx(Interval),
}

impl Multiplicity {
    /// The value as a positive integer, if it is one.
    pub fn positive_integer(&self) -> Option<u64> {
        match self {
            Multiplicity::Exact(m) if m.is_integer() && m.is_positive() => m.to_integer().to_u64(),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Multiplicity::Exact(m) => m.to_f64().unwrap_or(f64::NAN),
            Multiplicity::Approx(i) => i.mid_f64(),
        }
    }

    /// Exact comparison with a rational threshold.
    pub fn cmp_rational(&self, r: &Q) -> Ordering {
        match self {
            Multiplicity::Exact(m) => m.cmp(r),
            Multiplicity::Approx(i) => {
                if cmp_q(&i.hi, r).is_lt() {
                    Ordering::Less
                } else if cmp_q(&i.lo, r).is_gt() {
                    Ordering::Greater
                } else {
                    // a non-integer straddling a threshold: the thresholds used
                    // here are multiples of 1/2, fall back to the midpoint
                    i.midpoint().cmp(r)
                }
            }
        }
    }
}

/// `sum_i k_i u_i(x)^2` as a polynomial.
fn norm_poly(counts: &DerivedCounts, seq: &StandardSequence) -> Poly {
    norm_of_terms(counts, &seq.terms)
}

fn norm_of_terms(counts: &DerivedCounts, terms: &[Poly]) -> Poly {
    terms
        .iter()
        .zip(&counts.kseq)
        .fold(Poly::zero(), |acc, (u, k)| &acc + &(u * u).scale(k))
}

/// If `v / norm(x)` is the same constant at every root of `f`, that
/// constant: it is `v * norm^(-1) mod f` when that remainder has degree 0.
fn constant_ratio(v: &Q, norm: &Poly, f: &Poly) -> Option<Q> {
    let r = norm.inverse_mod(f)?.scale(v).rem(f);
    match r.degree() {
        None => Some(Q::zero()),
        Some(0) => r.leading().cloned(),
        Some(_) => None,
    }
}

/// Decides whether all multiplicities are positive integers without
/// isolating irrational eigenvalues, where possible. `None` when undecided:
/// a repeated root, or an irrational factor of degree four or more whose
/// ratio is not constant (it may split over the rationals).
pub fn multiplicities_integral(arr: &IntersectionArray, counts: &DerivedCounts) -> Option<bool> {
    if arr.diameter() == 3 {
        if let Some(r) = multiplicities_integral_d3(arr, counts) {
            return Some(r);
        }
    }
    multiplicities_integral_general(arr, counts)
}

fn multiplicities_integral_general(
    arr: &IntersectionArray,
    counts: &DerivedCounts,
) -> Option<bool> {
    let p = char_poly(arr);
    let (terms, _) = standard_polys(arr);
    let norm = norm_of_terms(counts, &terms);
    let positive_integer = |m: &Q| m.is_integer() && m.is_positive();
    let mut rest = p;
    for r in poly::integer_roots(&rest, arr.k()) {
        let r = Q::from_integer(r);
        let n = norm.eval(&r);
        if n.is_zero() || !positive_integer(&(&counts.v / n)) {
            return Some(false);
        }
        rest = rest.div_rem(&Poly::linear_root(&r)).0;
    }
    if rest.degree().unwrap_or(0) == 0 {
        return Some(true);
    }
    if !rest.is_square_free() {
        return None;
    }
    let ratio = norm.inverse_mod(&rest)?.scale(&counts.v).rem(&rest);
    match ratio.degree() {
        None => Some(false),
        Some(0) => Some(positive_integer(ratio.leading().unwrap())),
        // no rational roots and degree at most three: irreducible, so the
        // multiplicities are irrational
        Some(_) if rest.degree() <= Some(3) => Some(false),
        Some(_) => ratio_values_integral(&ratio, &rest),
    }
}

/// Diameter three in machine integers. The cubic cofactor of `x - k` either
/// has an integer root or is irreducible, and conjugate eigenvalues share a
/// multiplicity whenever it is rational, so the moments `sum m = v`,
/// `sum m theta = 0` and `sum m theta^2 = v k` decide the rest. `None` on
/// overflow, fractional valencies or a repeated root.
fn multiplicities_integral_d3(arr: &IntersectionArray, counts: &DerivedCounts) -> Option<bool> {
    let int = |x: &Q| x.is_integer().then(|| x.numer().to_i128()).flatten();
    let v = int(&counts.v)?;
    let ks: Vec<i128> = counts.kseq.iter().map(int).collect::<Option<_>>()?;
    let k = arr.k() as i128;
    let b = |i: usize| arr.b(i) as i128;
    let c = |i: usize| arr.c(i) as i128;
    let a = |i: usize| arr.a(i) as i128;
    // p_(j+1) = (x - a_j) p_j - b_(j-1) c_j p_(j-1), coefficients low to high
    let (mut prev, mut cur) = (vec![1i128], vec![0i128, 1]);
    for j in 1..=3 {
        let mut next = vec![0i128; cur.len() + 1];
        for (e, &x) in cur.iter().enumerate() {
            next[e + 1] = next[e + 1].checked_add(x)?;
            next[e] = next[e].checked_sub(a(j).checked_mul(x)?)?;
        }
        for (e, &x) in prev.iter().enumerate() {
            next[e] = next[e].checked_sub(b(j - 1).checked_mul(c(j))?.checked_mul(x)?)?;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    let g = deflate(&cur, k)?;
    if eval_i128(&g, k)? == 0 {
        return None;
    }
    // exact multiplicity of an integer eigenvalue: v den^2 / sum k_i N_i^2
    // with N_i = den u_i(t) and den = k b1 b2
    let mult_at = |t: i128| -> Option<Option<i128>> {
        let n0 = k.checked_mul(b(1))?.checked_mul(b(2))?;
        let n1 = t.checked_mul(b(1))?.checked_mul(b(2))?;
        let n2 = ((t - a(1)).checked_mul(n1)?.checked_sub(n0)?) / b(1);
        let n3 = ((t - a(2))
            .checked_mul(n2)?
            .checked_sub(c(2).checked_mul(n1)?)?)
            / b(2);
        let mut s = 0i128;
        for (ki, n) in ks.iter().zip([n0, n1, n2, n3]) {
            s = s.checked_add(ki.checked_mul(n.checked_mul(n)?)?)?;
        }
        let top = v.checked_mul(n0)?.checked_mul(n0)?;
        Some((s > 0 && top % s == 0).then_some(top / s))
    };
    let root = (0..=k).find_map(|d| {
        if d == 0 {
            return (g[0] == 0).then_some(0);
        }
        if g[0] % d != 0 {
            return None;
        }
        [d, -d].into_iter().find(|&t| eval_i128(&g, t) == Some(0))
    });
    let Some(t) = root else {
        // irreducible cubic: all three multiplicities equal
        let (e2, e1) = (g[2], g[1]);
        if (v - 1) % 3 != 0 {
            return Some(false);
        }
        let m = (v - 1) / 3;
        let sum = -e2;
        let squares = sum.checked_mul(sum)?.checked_sub(2 * e1)?;
        return Some(
            m > 0
                && k.checked_add(m.checked_mul(sum)?)? == 0
                && k.checked_mul(k)?.checked_add(m.checked_mul(squares)?)? == v.checked_mul(k)?,
        );
    };
    let Some(mt) = mult_at(t)? else {
        return Some(false);
    };
    let h = deflate(&g, t)?;
    let (h1, h0) = (h[1], h[0]);
    let disc = h1.checked_mul(h1)?.checked_sub(4 * h0)?;
    if disc <= 0 {
        return None;
    }
    let r = disc.isqrt();
    if r * r == disc {
        let (x, y) = ((-h1 + r) / 2, (-h1 - r) / 2);
        if x == t || y == t {
            return None;
        }
        return Some(mult_at(x)?.is_some() && mult_at(y)?.is_some());
    }
    // a conjugate pair: equal multiplicities iff the first moment splits evenly
    let rest = v - 1 - mt;
    let first = -k - mt.checked_mul(t)?;
    Some(rest > 0 && rest % 2 == 0 && 2 * first == rest.checked_mul(-h1)?)
}

fn eval_i128(p: &[i128], x: i128) -> Option<i128> {
    p.iter()
        .rev()
        .try_fold(0i128, |acc, &c| acc.checked_mul(x)?.checked_add(c))
}

/// Quotient of `p` by `x - r`, coefficients low to high; `None` unless exact.
fn deflate(p: &[i128], r: i128) -> Option<Vec<i128>> {
    let n = p.len() - 1;
    let mut q = vec![0i128; n];
    let mut carry = 0i128;
    for e in (1..=n).rev() {
        carry = carry.checked_mul(r)?.checked_add(p[e])?;
        q[e - 1] = carry;
    }
    (carry.checked_mul(r)?.checked_add(p[0])? == 0).then_some(q)
}

/// Whether `r(theta)` is a positive integer at every root of the square-free
/// `f`. The values are the roots of the characteristic polynomial `g` of
/// multiplication by `r` modulo `f`, so they are all integers iff `g` has
/// integer coefficients and factors into integer linear factors. The factors
/// are guessed numerically and confirmed exactly; `None` if that fails.
fn ratio_values_integral(r: &Poly, f: &Poly) -> Option<bool> {
    let a = multiplication_matrix(r, f);
    let n = a.len();
    // integer values have integer power sums; tr(A^2) is the second
    let p2: Q = (0..n)
        .flat_map(|i| (0..n).map(move |l| (i, l)))
        .map(|(i, l)| &a[i][l] * &a[l][i])
        .sum();
    if !p2.is_integer() {
        return Some(false);
    }
    let g = char_poly_of(&a);
    let Some(ints) = g.integer_coeffs() else {
        return Some(false);
    };
    let n = ints.len() - 1;
    let mut companion = nalgebra::DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        if i + 1 < n {
            companion[(i + 1, i)] = 1.0;
        }
        companion[(i, n - 1)] = -ints[i].to_f64()?;
    }
    let guess: Vec<i64> = companion
        .complex_eigenvalues()
        .iter()
        .map(|z| z.re.round() as i64)
        .collect();
    let product = guess
        .iter()
        .fold(Poly::one(), |acc, &m| &acc * &Poly::linear_root(&q(m)));
    if product == g {
        return Some(guess.iter().all(|&m| m > 0));
    }
    None
}

/// Matrix of `h -> r h mod f` in the basis `1, x, ..., x^(n-1)`.
fn multiplication_matrix(r: &Poly, f: &Poly) -> Vec<Vec<Q>> {
    let n = f.degree().expect("nonzero modulus");
    let column = |p: &Poly| -> Vec<Q> {
        let mut c = p.coeffs().to_vec();
        c.resize(n, Q::zero());
        c
    };
    let mut cols = Vec::with_capacity(n);
    let mut h = r.rem(f);
    for _ in 0..n {
        cols.push(column(&h));
        h = (&h * &Poly::x()).rem(f);
    }
    (0..n)
        .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
        .collect()
}

/// Characteristic polynomial by the Faddeev-LeVerrier recurrence.
fn char_poly_of(a: &[Vec<Q>]) -> Poly {
    let n = a.len();
    let matmul = |x: &[Vec<Q>], y: &[Vec<Q>]| -> Vec<Vec<Q>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|l| &x[i][l] * &y[l][j]).sum())
                    .collect()
            })
            .collect()
    };
    // coefficients c[n] = 1, c[n-k] = -tr(A M_k) / k with M_k = A M_(k-1) + c[n-k+1] I
    let mut c = vec![Q::zero(); n + 1];
    c[n] = Q::one();
    let mut m = vec![vec![Q::zero(); n]; n];
    for k in 1..=n {
        let mut next = matmul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        let am = matmul(a, &next);
        let trace: Q = (0..n).map(|i| am[i][i].clone()).sum();
        c[n - k] = -trace / q(k as i64);
        m = next;
    }
    Poly::new(c)
}

/// Multiplicity of the eigenvalue carried by `seq`.
///
/// For a rational eigenvalue the value is exact. Otherwise the enclosure is
/// refined below [`certification_width`]; if it contains a single integer
/// `n`, the identity `v = n * sum k_i u_i^2` is then tested exactly at the
/// root, so integrality is decided without tolerance.
pub fn multiplicity(counts: &DerivedCounts, seq: &StandardSequence) -> Multiplicity {
    let norm = norm_poly(counts, seq);
    if let Some(t) = seq.theta.rational() {
        return Multiplicity::Exact(&counts.v / norm.eval(t));
    }
    if let Some(m) = constant_ratio(&counts.v, &norm, &seq.theta.defining_poly()) {
        return Multiplicity::Exact(m);
    }
    let target = certification_width();
    let vi = Interval::point(counts.v.clone());
    let mut width = Q::new(BigInt::one(), BigInt::from(1u64 << 20));
    let enclosure = loop {
        let t = seq.theta.enclose(&width);
        let s = norm.eval_interval(&t);
        if let Some(m) = vi.div(&s) {
            if cmp_q(&m.width(), &target).is_lt() {
                break m;
            }
        }
        width = width / q(1 << 8);
    };
    let ints = enclosure.integers();
    if ints.len() == 1 {
        let n = &ints[0];
        let residual = &Poly::constant(counts.v.clone()) - &norm.scale(n);
        if seq.theta.sign_at(&residual) == Ordering::Equal {
            return Multiplicity::Exact(n.clone());
        }
        // not that integer: tighten until the enclosure excludes it
        let mut width = width;
        loop {
            width = width / q(1 << 8);
            let t = seq.theta.enclose(&width);
            if let Some(m) = vi.div(&norm.eval_interval(&t)) {
                if !m.contains(n) {
                    return Multiplicity::Approx(m);
                }
            }
        }
    }
    Multiplicity::Approx(enclosure)
}

/// Eigenvalues with their standard sequences and multiplicities.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub eigenvalues: Vec<AlgebraicScalar>,
    pub multiplicities: Vec<Multiplicity>,
    pub standard_sequences: Vec<StandardSequence>,
}

impl Spectrum {
    pub fn of(arr: &IntersectionArray) -> Result<Spectrum, RepeatedRoot> {
        let counts = arr.derived_counts();
        Self::with_counts(arr, &counts)
    }

    pub fn with_counts(
        arr: &IntersectionArray,
        counts: &DerivedCounts,
    ) -> Result<Spectrum, RepeatedRoot> {
        let eigenvalues = eigenvalues(arr)?;
        let standard_sequences: Vec<_> = eigenvalues
            .iter()
            .map(|t| standard_sequence(arr, t))
            .collect();
        let multiplicities = standard_sequences
            .iter()
            .map(|s| multiplicity(counts, s))
            .collect();
        Ok(Spectrum {
            eigenvalues,
            multiplicities,
            standard_sequences,
        })
    }

    pub fn diameter(&self) -> usize {
        self.eigenvalues.len() - 1
    }

    pub fn is_rational(&self) -> bool {
        self.eigenvalues.iter().all(AlgebraicScalar::is_rational)
    }

    /// Multiplicities as positive integers, if all of them are.
    pub fn integral_multiplicities(&self) -> Option<Vec<u64>> {
        self.multiplicities
            .iter()
            .map(Multiplicity::positive_integer)
            .collect()
    }
}

/// Multiplicities `m_0, ..., m_D` of the array's eigenvalues.
pub fn multiplicities(arr: &IntersectionArray) -> Result<Vec<Multiplicity>, RepeatedRoot> {
    Spectrum::of(arr).map(|s| s.multiplicities)
}

/// Number of sign changes: pairs `i < j` with `u_i u_j < 0` and only zeros
/// strictly between them.
pub fn sign_changes(signs: &[Ordering]) -> usize {
    let mut last = None;
    let mut count = 0;
    for &s in signs.iter().filter(|s| **s != Ordering::Equal) {
        if last.is_some_and(|l| l != s) {
            count += 1;
        }
        last = Some(s);
    }
    count
}

/// Sign changes of a rational sequence.
pub fn sign_changes_of(values: &[Q]) -> usize {
    let signs: Vec<Ordering> = values.iter().map(|v| v.cmp(&Q::zero())).collect();
    sign_changes(&signs)
}

/// Interlacing of a principal submatrix's spectrum: with both sequences
/// descending, `outer[n-m+i] <= inner[i] <= outer[i]` for every `i`.
pub fn interlacing_check(outer: &[AlgebraicScalar], inner: &[AlgebraicScalar]) -> bool {
    let (n, m) = (outer.len(), inner.len());
    if m > n {
        return false;
    }
    inner
        .iter()
        .enumerate()
        .all(|(i, t)| outer[n - m + i] <= *t && *t <= outer[i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use poly::qr;

    fn arr(s: &str) -> IntersectionArray {
        s.parse().unwrap()
    }

    fn ints(v: &[AlgebraicScalar]) -> Vec<i64> {
        v.iter()
            .map(|t| t.as_integer().unwrap().to_i64().unwrap())
            .collect()
    }

    fn poly_from_roots(roots: &[i64]) -> Poly {
        roots
            .iter()
            .fold(Poly::one(), |acc, &r| &acc * &Poly::linear_root(&q(r)))
    }

    #[test]
    fn diameter_three_shortcut_agrees_with_general_path() {
        let mut decided = 0;
        for k in 2..=11u64 {
            for b1 in 1..k {
                for b2 in 1..=b1 {
                    for c2 in 1..=b1.min(k - b2) {
                        for c3 in c2..=k {
                            let Ok(a) = IntersectionArray::new(&[k, b1, b2], &[1, c2, c3]) else {
                                continue;
                            };
                            let counts = a.derived_counts();
                            let Some(fast) = multiplicities_integral_d3(&a, &counts) else {
                                continue;
                            };
                            decided += 1;
                            let slow = multiplicities_integral_general(&a, &counts);
                            let spectrum = Spectrum::with_counts(&a, &counts)
                                .ok()
                                .map(|s| s.integral_multiplicities().is_some());
                            assert!(slow.is_none() || slow == Some(fast), "{a}");
                            assert!(spectrum.is_none() || spectrum == Some(fast), "{a}");
                        }
                    }
                }
            }
        }
        assert!(decided > 1000, "{decided}");
    }

    #[test]
    fn multiplication_char_poly_has_the_values_as_roots() {
        // r = x on Q[x]/(x^2 - 2): values +-sqrt2
        let f = Poly::from_i64s(&[-2, 0, 1]);
        assert_eq!(char_poly_of(&multiplication_matrix(&Poly::x(), &f)), f);
        // r = 3 + x on Q[x]/((x-1)(x-2)): values 4 and 5
        let f = Poly::from_i64s(&[2, -3, 1]);
        let r = Poly::from_i64s(&[3, 1]);
        assert_eq!(
            char_poly_of(&multiplication_matrix(&r, &f)),
            Poly::from_i64s(&[20, -9, 1])
        );
        assert_eq!(ratio_values_integral(&r, &f), Some(true));
    }

    #[test]
    fn char_poly_examples() {
        let pent = &Poly::from_i64s(&[-2, 1]) * &Poly::from_i64s(&[-1, 1, 1]);
        assert_eq!(char_poly(&arr("2,1;1,1")), pent);
        assert_eq!(
            char_poly(&arr("12,6,2;1,4,9")),
            poly_from_roots(&[12, 5, 0, -3])
        );
        assert_eq!(char_poly(&arr("9;1")), poly_from_roots(&[9, -1]));
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(
            ints(&eigenvalues(&arr("12,6,2;1,4,9")).unwrap()),
            [12, 5, 0, -3]
        );
        assert_eq!(
            ints(&eigenvalues(&arr("21,10,3;1,6,15")).unwrap()),
            [21, 9, 1, -3]
        );
        let ico = eigenvalues(&arr("5,2,1;1,2,5")).unwrap();
        assert_eq!(ico[0], AlgebraicScalar::integer(5));
        assert_eq!(ico[2], AlgebraicScalar::integer(-1));
        let s5 = Poly::from_i64s(&[-5, 0, 1]);
        assert_eq!(ico[1].sign_at(&s5), Ordering::Equal);
        assert_eq!(ico[3].sign_at(&s5), Ordering::Equal);
        assert_eq!(ico[1].signum(), Ordering::Greater);
        assert_eq!(ico[3].signum(), Ordering::Less);
    }

    #[test]
    fn standard_sequence_examples() {
        let a = arr("12,6,2;1,4,9");
        let s = standard_sequence(&a, &AlgebraicScalar::integer(5));
        assert_eq!(
            s.exact_values().unwrap(),
            vec![q(1), qr(5, 12), qr(-1, 6), qr(-3, 4)]
        );
        assert!(s.terminal_identity_holds());
        assert!(!standard_sequence(&a, &AlgebraicScalar::integer(6)).terminal_identity_holds());
        let ones = standard_sequence(&a, &AlgebraicScalar::integer(12));
        assert_eq!(ones.exact_values().unwrap(), vec![q(1); 4]);
        let ico = standard_sequence(&arr("5,2,1;1,2,5"), &AlgebraicScalar::integer(-1));
        assert_eq!(
            ico.exact_values().unwrap(),
            vec![q(1), qr(-1, 5), qr(-1, 5), q(1)]
        );
        assert!(ico.terminal_identity_holds());
    }

    #[test]
    fn multiplicity_examples() {
        let m = multiplicities(&arr("12,6,2;1,4,9")).unwrap();
        assert_eq!(m, [1, 6, 14, 14].map(|x| Multiplicity::Exact(q(x))));
        let m = multiplicities(&arr("5,2,1;1,2,5")).unwrap();
        assert_eq!(m, [1, 3, 5, 3].map(|x| Multiplicity::Exact(q(x))));
        let m = multiplicities(&arr("6;1")).unwrap();
        assert_eq!(m, [1, 6].map(|x| Multiplicity::Exact(q(x))));
        // pentagon: irrational eigenvalues with multiplicity 2
        let m = multiplicities(&arr("2,1;1,1")).unwrap();
        assert_eq!(m, [1, 2, 2].map(|x| Multiplicity::Exact(q(x))));
    }

    #[test]
    fn non_integral_irrational_multiplicity_is_approx() {
        // {4,2;1,1}: v = 13, eigenvalues +-sqrt 3 with fractional multiplicities
        let m = multiplicities(&arr("4,2;1,1")).unwrap();
        assert_eq!(m[0], Multiplicity::Exact(q(1)));
        for x in &m[1..] {
            match x {
                Multiplicity::Approx(i) => assert!(i.width() < certification_width()),
                other => panic!("expected approx, got {other:?}"),
            }
        }
    }

    #[test]
    fn sign_change_examples() {
        assert_eq!(sign_changes_of(&[q(1), q(1), q(1), q(1)]), 0);
        assert_eq!(sign_changes_of(&[q(1), qr(5, 12), qr(-1, 6), qr(-3, 4)]), 1);
        assert_eq!(sign_changes_of(&[q(1), qr(-1, 5), qr(-1, 5), q(1)]), 2);
        assert_eq!(sign_changes_of(&[q(1), q(0), q(-1), q(0), q(0), q(2)]), 2);
    }

    #[test]
    fn interlacing_examples() {
        let ints = |v: &[i64]| {
            v.iter()
                .map(|&x| AlgebraicScalar::integer(x))
                .collect::<Vec<_>>()
        };
        let outer = ints(&[12, 5, 0, -3]);
        // 0 >= -1 is required for i=1 with n-m+i = 3 -> outer[2] = 0 <= -1 fails
        assert!(!interlacing_check(&outer, &ints(&[-1, -2])));
        assert!(interlacing_check(&outer, &ints(&[0, -3])));
        let ico = eigenvalues(&arr("5,2,1;1,2,5")).unwrap();
        assert!(interlacing_check(&ico, &ico));
        assert!(!interlacing_check(&ints(&[4, 2, 0, -2, -4]), &ints(&[5])));
    }
}
