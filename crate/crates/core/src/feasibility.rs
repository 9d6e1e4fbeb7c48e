//! The feasibility gate.
//!
//! An array is feasible when its intersection numbers (the `k_i` and every
//! `p^i_jh`) are nonnegative integers, its multiplicities are positive
//! integers, every `k_i a_i` is even and every Krein parameter is
//! nonnegative. On top of those four core conditions the gate runs a set of
//! named filters, each a necessary condition for a distance-regular graph
//! that can be decided from the array and its spectrum.
//!
//! Array-only filters are written against [`Params`], which may describe a
//! partially chosen array, so the enumerator can reject prefixes with the
//! same code the gate uses on complete arrays.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::arrays::{DerivedCounts, IntersectionArray};
use crate::krein;
use crate::spectral::{
    certified_sign, multiplicities_integral, AlgebraicScalar, Interval, Multiplicity, Poly,
    Spectrum, Q,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail(String),
}

impl Verdict {
    pub fn fail(witness: impl Into<String>) -> Self {
        Verdict::Fail(witness.into())
    }

    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&str> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }
}

/// Intersection numbers of a possibly partial array. `b` holds a prefix of
/// `b_0, ..., b_(D-1)` (never empty) and `c` a prefix of `c_1, ..., c_D`;
/// accessors return `None` for entries not chosen yet.
#[derive(Clone, Copy, Debug)]
pub struct Params<'a> {
    d: usize,
    b: &'a [u64],
    c: &'a [u64],
}

impl<'a> Params<'a> {
    pub fn new(d: usize, b: &'a [u64], c: &'a [u64]) -> Self {
        assert!(!b.is_empty() && b.len() <= d && c.len() <= d);
        Params { d, b, c }
    }

    pub fn of(arr: &'a IntersectionArray) -> Self {
        Params::new(arr.diameter(), arr.bs(), arr.cs())
    }

    pub fn diameter(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> i64 {
        self.b[0] as i64
    }

    pub fn b(&self, i: usize) -> Option<i64> {
        if i == self.d {
            return Some(0);
        }
        self.b.get(i).map(|&x| x as i64)
    }

    pub fn c(&self, i: usize) -> Option<i64> {
        if i == 0 {
            return Some(0);
        }
        self.c.get(i - 1).map(|&x| x as i64)
    }

    pub fn a(&self, i: usize) -> Option<i64> {
        Some(self.k() - self.b(i)? - self.c(i)?)
    }

    pub fn is_complete(&self) -> bool {
        self.b.len() == self.d && self.c.len() == self.d
    }
}

/// Named necessary conditions beyond the core four, in gate order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Filter {
    Monotone,
    B1LowerBound,
    LocalNonAdjacent,
    ASum,
    LargeC2OrB2,
    HalfValencyA1,
    A3ZeroEigenvalues,
    SmallMultiplicity,
    LocalEigenvalueBound,
    C2OneDivides,
    A2Min,
    Theta1LowerBound,
    C3Ratio,
    Theta2NonNeg,
}

impl Filter {
    pub const COUNT: usize = 14;

    pub const ALL: [Filter; Filter::COUNT] = [
        Filter::Monotone,
        Filter::B1LowerBound,
        Filter::LocalNonAdjacent,
        Filter::ASum,
        Filter::LargeC2OrB2,
        Filter::HalfValencyA1,
        Filter::A3ZeroEigenvalues,
        Filter::SmallMultiplicity,
        Filter::LocalEigenvalueBound,
        Filter::C2OneDivides,
        Filter::A2Min,
        Filter::Theta1LowerBound,
        Filter::C3Ratio,
        Filter::Theta2NonNeg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Filter::Monotone => "monotone",
            Filter::B1LowerBound => "b1-lower-bound",
            Filter::LocalNonAdjacent => "local-non-adjacent",
            Filter::ASum => "a-sum",
            Filter::LargeC2OrB2 => "large-c2-or-b2",
            Filter::HalfValencyA1 => "half-valency-a1",
            Filter::A3ZeroEigenvalues => "a3-zero-eigenvalues",
            Filter::SmallMultiplicity => "small-multiplicity",
            Filter::LocalEigenvalueBound => "local-eigenvalue-bound",
            Filter::C2OneDivides => "c2-one-divides",
            Filter::A2Min => "a2-min",
            Filter::Theta1LowerBound => "theta1-lower-bound",
            Filter::C3Ratio => "c3-ratio",
            Filter::Theta2NonNeg => "theta2-nonneg",
        }
    }

    /// The condition checked, recorded in reports.
    pub fn condition(self) -> &'static str {
        match self {
            Filter::Monotone => "k > b1 >= ... >= b(D-1), 1 <= c2 <= ... <= cD, b_i >= c_j for i+j <= D",
            Filter::B1LowerBound => "D >= 3 implies 3 b1 >= k + 1",
            Filter::LocalNonAdjacent => "D >= 2 implies 2(a1+1) - (c2-1) <= k",
            Filter::ASum => "D >= 3, a1 > 0 implies a_i + a_(i+1) >= a1, with equality only at i = D-1 where aD = 0, a(D-1) = a1, b(D-1) = 1",
            Filter::LargeC2OrB2 => "c2 > k/2 or b2 > k3/2 implies D = 3 and bipartite or Taylor",
            Filter::HalfValencyA1 => "a1 >= k/2 - 1 and c2 >= 2 implies D = 3 and b2 < c2",
            Filter::A3ZeroEigenvalues => "D = 3, a3 = 0 implies theta1 > 0 > -1 >= theta2 >= -b2 >= theta3",
            Filter::SmallMultiplicity => "multiplicity < k/2 implies theta in {theta1, thetaD}, integral, (theta+1) | b1",
            Filter::LocalEigenvalueBound => "m1 <= k-2 implies theta2 >= -1 - b1/(theta1+1); mD <= k-2 implies theta(D-1) <= -1 - b1/(thetaD+1)",
            Filter::C2OneDivides => "c2 = 1 implies (a1+1) | k",
            Filter::A2Min => "a1 > 0, D >= 3 implies a2 >= min(b2, c2)",
            Filter::Theta1LowerBound => "D >= 3 implies theta1 >= min((a1 + sqrt(a1^2 + 4k))/2, a3)",
            Filter::C3Ratio => "D >= 4, c2 >= 2 implies 2 c3 >= 3 c2",
            Filter::Theta2NonNeg => "D >= 4 implies theta2 >= 0",
        }
    }

    pub fn from_name(name: &str) -> Option<Filter> {
        Filter::ALL.into_iter().find(|f| f.name() == name)
    }

    /// Needs the spectrum rather than just the array.
    pub fn is_spectral(self) -> bool {
        matches!(
            self,
            Filter::A3ZeroEigenvalues
                | Filter::SmallMultiplicity
                | Filter::LocalEigenvalueBound
                | Filter::Theta1LowerBound
                | Filter::Theta2NonNeg
        )
    }

    /// Evaluates an array-only filter on a possibly partial array. `None`
    /// means the entries needed are not all chosen yet and no violation is
    /// visible so far. Spectral filters always return `None`.
    pub fn eval_params(self, p: &Params) -> Option<Verdict> {
        match self {
            Filter::Monotone => monotone(p),
            Filter::B1LowerBound => b1_lower_bound(p),
            Filter::LocalNonAdjacent => local_non_adjacent(p),
            Filter::ASum => a_sum(p),
            Filter::LargeC2OrB2 => large_c2_or_b2(p),
            Filter::HalfValencyA1 => half_valency_a1(p),
            Filter::C2OneDivides => c2_one_divides(p),
            Filter::A2Min => a2_min(p),
            Filter::C3Ratio => c3_ratio(p),
            _ => None,
        }
    }

    /// Evaluates the filter on a complete array; `spec` is needed for the
    /// spectral ones and must have integral multiplicities.
    pub fn eval(self, arr: &IntersectionArray, spec: Option<&Spectrum>) -> Verdict {
        if !self.is_spectral() {
            return self
                .eval_params(&Params::of(arr))
                .expect("complete arrays decide every array filter");
        }
        let spec = spec.expect("spectral filter without a spectrum");
        match self {
            Filter::A3ZeroEigenvalues => a3_zero_eigenvalues(arr, spec),
            Filter::SmallMultiplicity => small_multiplicity(arr, spec),
            Filter::LocalEigenvalueBound => local_eigenvalue_bound(arr, spec),
            Filter::Theta1LowerBound => theta1_lower_bound(arr, spec),
            Filter::Theta2NonNeg => theta2_nonneg(spec),
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Collects per-condition outcomes on a partial array: the first visible
/// violation wins, otherwise undecided if anything was missing.
struct Partial {
    incomplete: bool,
}

impl Partial {
    fn new() -> Self {
        Partial { incomplete: false }
    }

    /// Runs `check` when all its inputs are known.
    fn check(&mut self, check: impl FnOnce() -> Option<Option<String>>) -> Option<Verdict> {
        match check() {
            None => {
                self.incomplete = true;
                None
            }
            Some(Some(w)) => Some(Verdict::Fail(w)),
            Some(None) => None,
        }
    }

    fn finish(self) -> Option<Verdict> {
        (!self.incomplete).then_some(Verdict::Pass)
    }
}

fn monotone(p: &Params) -> Option<Verdict> {
    let d = p.d;
    let mut acc = Partial::new();
    if d >= 2 {
        let r = acc.check(|| {
            let (b0, b1) = (p.b(0)?, p.b(1)?);
            Some((b0 <= b1).then(|| format!("b0 = {b0} <= b1 = {b1}")))
        });
        if r.is_some() {
            return r;
        }
    }
    for i in 1..d.saturating_sub(1) {
        let r = acc.check(|| {
            let (x, y) = (p.b(i)?, p.b(i + 1)?);
            Some((x < y).then(|| format!("b{i} = {x} < b{} = {y}", i + 1)))
        });
        if r.is_some() {
            return r;
        }
    }
    for i in 1..d {
        let r = acc.check(|| {
            let (x, y) = (p.c(i)?, p.c(i + 1)?);
            Some((x > y).then(|| format!("c{i} = {x} > c{} = {y}", i + 1)))
        });
        if r.is_some() {
            return r;
        }
    }
    for i in 0..d {
        for j in 1..=d - i {
            let r = acc.check(|| {
                let (x, y) = (p.b(i)?, p.c(j)?);
                Some((x < y).then(|| format!("b{i} = {x} < c{j} = {y}")))
            });
            if r.is_some() {
                return r;
            }
        }
    }
    acc.finish()
}

fn b1_lower_bound(p: &Params) -> Option<Verdict> {
    if p.d < 3 {
        return Some(Verdict::Pass);
    }
    let (k, b1) = (p.k(), p.b(1)?);
    Some(if 3 * b1 >= k + 1 {
        Verdict::Pass
    } else {
        Verdict::fail(format!("3*b1 = {} < k + 1 = {}", 3 * b1, k + 1))
    })
}

fn local_non_adjacent(p: &Params) -> Option<Verdict> {
    if p.d < 2 {
        return Some(Verdict::Pass);
    }
    let (k, a1, c2) = (p.k(), p.a(1)?, p.c(2)?);
    let lhs = 2 * (a1 + 1) - (c2 - 1);
    Some(if lhs <= k {
        Verdict::Pass
    } else {
        Verdict::fail(format!("2(a1+1) - (c2-1) = {lhs} > k = {k}"))
    })
}

fn a_sum(p: &Params) -> Option<Verdict> {
    let d = p.d;
    if d < 3 {
        return Some(Verdict::Pass);
    }
    let a1 = p.a(1)?;
    if a1 <= 0 {
        return Some(Verdict::Pass);
    }
    let mut acc = Partial::new();
    for i in 1..d {
        let r = acc.check(|| {
            let s = p.a(i)? + p.a(i + 1)?;
            if s < a1 {
                return Some(Some(format!("a{i} + a{} = {s} < a1 = {a1}", i + 1)));
            }
            if s > a1 {
                return Some(None);
            }
            if i != d - 1 {
                return Some(Some(format!("a{i} + a{} = a1 with {i} < D-1", i + 1)));
            }
            let (ad, ad1, bd1) = (p.a(d)?, p.a(d - 1)?, p.b(d - 1)?);
            Some((ad != 0 || ad1 != a1 || bd1 != 1).then(|| {
                format!(
                    "a{} + a{d} = a1 but (aD, a(D-1), b(D-1)) = ({ad}, {ad1}, {bd1})",
                    d - 1
                )
            }))
        });
        if r.is_some() {
            return r;
        }
    }
    acc.finish()
}

fn bipartite_or_taylor(p: &Params) -> Option<bool> {
    let k = p.k();
    let bip = p.a(1)? == 0 && p.a(2)? == 0 && p.a(3)? == 0;
    let taylor = p.b(2)? == 1 && p.c(3)? == k && p.b(1)? == p.c(2)?;
    Some(bip || taylor)
}

fn large_c2_or_b2(p: &Params) -> Option<Verdict> {
    if p.d < 3 {
        return Some(Verdict::Pass);
    }
    let k = p.k();
    let big_c2 = p.c(2).map(|c2| 2 * c2 > k);
    // b2 > k3/2 with k3 = k b1 b2 / (c2 c3) is 2 c2 c3 > k b1
    let big_b2 = (|| Some(2 * p.c(2)? * p.c(3)? > k * p.b(1)?))();
    let triggered = match (big_c2, big_b2) {
        (Some(true), _) | (_, Some(true)) => true,
        (Some(false), Some(false)) => return Some(Verdict::Pass),
        _ => return None,
    };
    debug_assert!(triggered);
    let which = if big_c2 == Some(true) {
        format!("c2 = {} > k/2", p.c(2)?)
    } else {
        format!(
            "b2 > k3/2 (2*c2*c3 = {} > k*b1 = {})",
            2 * p.c(2)? * p.c(3)?,
            k * p.b(1)?
        )
    };
    if p.d != 3 {
        return Some(Verdict::fail(format!("{which} but D = {}", p.d)));
    }
    Some(if bipartite_or_taylor(p)? {
        Verdict::Pass
    } else {
        Verdict::fail(format!("{which} but neither bipartite nor Taylor"))
    })
}

fn half_valency_a1(p: &Params) -> Option<Verdict> {
    if p.d < 3 {
        return Some(Verdict::Pass);
    }
    let (k, a1, c2) = (p.k(), p.a(1)?, p.c(2)?);
    if 2 * a1 < k - 2 || c2 < 2 {
        return Some(Verdict::Pass);
    }
    if p.d != 3 {
        return Some(Verdict::fail(format!(
            "a1 = {a1} >= k/2 - 1 and c2 = {c2} but D = {}",
            p.d
        )));
    }
    let b2 = p.b(2)?;
    Some(if b2 < c2 {
        Verdict::Pass
    } else {
        Verdict::fail(format!("a1 = {a1} >= k/2 - 1 but b2 = {b2} >= c2 = {c2}"))
    })
}

fn c2_one_divides(p: &Params) -> Option<Verdict> {
    if p.d < 2 {
        return Some(Verdict::Pass);
    }
    let (k, a1, c2) = (p.k(), p.a(1)?, p.c(2)?);
    Some(if c2 != 1 || k % (a1 + 1) == 0 {
        Verdict::Pass
    } else {
        Verdict::fail(format!(
            "c2 = 1 but a1 + 1 = {} does not divide k = {k}",
            a1 + 1
        ))
    })
}

fn a2_min(p: &Params) -> Option<Verdict> {
    if p.d < 3 {
        return Some(Verdict::Pass);
    }
    let a1 = p.a(1)?;
    if a1 <= 0 {
        return Some(Verdict::Pass);
    }
    let (a2, b2, c2) = (p.a(2)?, p.b(2)?, p.c(2)?);
    Some(if a2 >= b2.min(c2) {
        Verdict::Pass
    } else {
        Verdict::fail(format!("a2 = {a2} < min(b2, c2) = {}", b2.min(c2)))
    })
}

fn c3_ratio(p: &Params) -> Option<Verdict> {
    if p.d < 4 {
        return Some(Verdict::Pass);
    }
    let c2 = p.c(2)?;
    if c2 < 2 {
        return Some(Verdict::Pass);
    }
    let c3 = p.c(3)?;
    Some(if 2 * c3 >= 3 * c2 {
        Verdict::Pass
    } else {
        Verdict::fail(format!(
            "c3 = {c3} < 3/2 c2 = {}",
            Q::new(BigInt::from(3 * c2), BigInt::from(2))
        ))
    })
}

fn theta(spec: &Spectrum, i: usize) -> &AlgebraicScalar {
    &spec.eigenvalues[i]
}

fn mult(spec: &Spectrum, i: usize) -> Q {
    match &spec.multiplicities[i] {
        Multiplicity::Exact(m) => m.clone(),
        Multiplicity::Approx(iv) => iv.midpoint(),
    }
}

fn a3_zero_eigenvalues(arr: &IntersectionArray, spec: &Spectrum) -> Verdict {
    if arr.diameter() != 3 || arr.a(3) != 0 {
        return Verdict::Pass;
    }
    let b2 = AlgebraicScalar::integer(arr.b(2) as i64);
    let minus_one = AlgebraicScalar::integer(-1);
    let zero = AlgebraicScalar::integer(0);
    let (t1, t2, t3) = (theta(spec, 1), theta(spec, 2), theta(spec, 3));
    let minus_b2 = -b2.as_integer().unwrap();
    let minus_b2 = AlgebraicScalar::Rational(Q::from_integer(minus_b2));
    if *t1 <= zero {
        return Verdict::fail(format!("theta1 = {t1} <= 0"));
    }
    if *t2 > minus_one {
        return Verdict::fail(format!("theta2 = {t2} > -1"));
    }
    if *t2 < minus_b2 {
        return Verdict::fail(format!("theta2 = {t2} < -b2 = {minus_b2}"));
    }
    if *t3 > minus_b2 {
        return Verdict::fail(format!("theta3 = {t3} > -b2 = {minus_b2}"));
    }
    Verdict::Pass
}

fn small_multiplicity(arr: &IntersectionArray, spec: &Spectrum) -> Verdict {
    let d = arr.diameter();
    if d < 3 {
        return Verdict::Pass;
    }
    let k = Q::from_integer(BigInt::from(arr.k()));
    let b1 = BigInt::from(arr.b(1));
    for j in 1..=d {
        let m = mult(spec, j);
        if &m * Q::from_integer(2.into()) >= k {
            continue;
        }
        let t = theta(spec, j);
        if j != 1 && j != d {
            return Verdict::fail(format!("m{j} = {m} < k/2 but theta{j} is not extreme"));
        }
        let Some(ti) = t.as_integer() else {
            return Verdict::fail(format!(
                "m{j} = {m} < k/2 but theta{j} = {t} is not integral"
            ));
        };
        let t1: BigInt = &ti + 1;
        if t1.is_zero() || !(&b1 % &t1).is_zero() {
            return Verdict::fail(format!(
                "m{j} = {m} < k/2 but theta{j} + 1 = {t1} does not divide b1 = {b1}"
            ));
        }
    }
    Verdict::Pass
}

/// Compares `x` with `-1 - b1/(t+1)`; `None` when `t = -1`.
fn cmp_local_bound(x: &AlgebraicScalar, t: &AlgebraicScalar, b1: u64) -> Option<Ordering> {
    let s = t.cmp_rational(&-Q::one());
    if s == Ordering::Equal {
        return None;
    }
    // x - bound = ((x+1)(t+1) + b1) / (t+1)
    let one = Interval::point(Q::one());
    let b1 = Interval::point(Q::from_integer(b1.into()));
    let g = certified_sign(&[x, t], |iv| {
        Some(&(&(&iv[0] + &one) * &(&iv[1] + &one)) + &b1)
    });
    Some(if s == Ordering::Greater {
        g
    } else {
        g.reverse()
    })
}

fn local_bound_text(t: &str, b1: u64) -> String {
    format!("-1 - {b1}/({t}+1)")
}

fn local_eigenvalue_bound(arr: &IntersectionArray, spec: &Spectrum) -> Verdict {
    let d = arr.diameter();
    if d < 3 {
        return Verdict::Pass;
    }
    let k = Q::from_integer(BigInt::from(arr.k()));
    let b1 = arr.b(1);
    let limit = &k - Q::from_integer(2.into());
    if mult(spec, 1) <= limit {
        match cmp_local_bound(theta(spec, 2), theta(spec, 1), b1) {
            None => return Verdict::fail("theta1 = -1"),
            Some(Ordering::Less) => {
                return Verdict::fail(format!(
                    "m1 <= k-2 but theta2 = {} < {}",
                    theta(spec, 2),
                    local_bound_text("theta1", b1)
                ))
            }
            _ => {}
        }
    }
    if mult(spec, d) <= limit {
        match cmp_local_bound(theta(spec, d - 1), theta(spec, d), b1) {
            None => return Verdict::fail(format!("theta{d} = -1")),
            Some(Ordering::Greater) => {
                return Verdict::fail(format!(
                    "m{d} <= k-2 but theta{} = {} > {}",
                    d - 1,
                    theta(spec, d - 1),
                    local_bound_text(&format!("theta{d}"), b1)
                ))
            }
            _ => {}
        }
    }
    Verdict::Pass
}

fn theta1_lower_bound(arr: &IntersectionArray, spec: &Spectrum) -> Verdict {
    if arr.diameter() < 3 {
        return Verdict::Pass;
    }
    let t1 = theta(spec, 1);
    let (a1, a3, k) = (arr.a(1), arr.a(3), arr.k() as i64);
    if t1.cmp_rational(&Q::from_integer(a3.into())) != Ordering::Less {
        return Verdict::Pass;
    }
    // theta1 >= (a1 + sqrt(a1^2 + 4k))/2 iff theta1 >= 0 and theta1^2 - a1 theta1 - k >= 0
    let quad = Poly::from_i64s(&[-k, -a1, 1]);
    if t1.signum() != Ordering::Less && t1.sign_at(&quad) != Ordering::Less {
        return Verdict::Pass;
    }
    Verdict::fail(format!(
        "theta1 = {t1} < min((a1 + sqrt(a1^2+4k))/2, a3) with a1 = {a1}, a3 = {a3}"
    ))
}

fn theta2_nonneg(spec: &Spectrum) -> Verdict {
    if spec.diameter() < 4 {
        return Verdict::Pass;
    }
    let t2 = theta(spec, 2);
    if t2.signum() == Ordering::Less {
        Verdict::fail(format!("theta2 = {t2} < 0"))
    } else {
        Verdict::Pass
    }
}

/// Which optional filters run. The core conditions always run.
#[derive(Clone, Debug, PartialEq)]
pub struct FilterConfig {
    enabled: [bool; Filter::COUNT],
    /// Krein tolerance for irrational spectra; rational spectra use zero.
    pub krein_tolerance: f64,
}

impl Default for FilterConfig {
    fn default() -> Self {
        FilterConfig {
            enabled: [true; Filter::COUNT],
            krein_tolerance: 1e-8,
        }
    }
}

impl FilterConfig {
    /// Only the four core conditions.
    pub fn core_only() -> Self {
        FilterConfig {
            enabled: [false; Filter::COUNT],
            ..Default::default()
        }
    }

    pub fn is_enabled(&self, f: Filter) -> bool {
        self.enabled[f as usize]
    }

    pub fn set(&mut self, f: Filter, on: bool) -> &mut Self {
        self.enabled[f as usize] = on;
        self
    }

    pub fn with(mut self, f: Filter, on: bool) -> Self {
        self.set(f, on);
        self
    }

    pub fn enabled(&self) -> impl Iterator<Item = Filter> + '_ {
        Filter::ALL.into_iter().filter(|&f| self.is_enabled(f))
    }

    /// Enabled array-only filters, in gate order.
    pub fn array_filters(&self) -> Vec<Filter> {
        self.enabled().filter(|f| !f.is_spectral()).collect()
    }

    fn krein_tol(&self, exact: bool) -> Q {
        if exact {
            Q::zero()
        } else {
            Q::from_float(self.krein_tolerance).unwrap_or_else(krein::default_tolerance)
        }
    }
}

impl Serialize for FilterConfig {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            filters: BTreeMap<&'a str, bool>,
            krein_tolerance: f64,
        }
        Repr {
            filters: Filter::ALL
                .iter()
                .map(|&f| (f.name(), self.is_enabled(f)))
                .collect(),
            krein_tolerance: self.krein_tolerance,
        }
        .serialize(s)
    }
}

/// One row of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub condition: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    fn new(name: &str, condition: &str, v: Verdict) -> Self {
        CheckResult {
            name: name.to_string(),
            condition: condition.to_string(),
            pass: v.passed(),
            witness: v.witness().map(str::to_string),
        }
    }
}

pub const CORE_INTERSECTION_NUMBERS: &str = "intersection-numbers";
pub const CORE_MULTIPLICITIES: &str = "multiplicities";
pub const CORE_PARITY: &str = "parity";
pub const CORE_KREIN: &str = "krein";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Feasibility {
    Feasible,
    Infeasible,
}

/// Eigenvalue as printed in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenvalueReport {
    pub value: String,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
}

impl EigenvalueReport {
    pub fn of(t: &AlgebraicScalar) -> Self {
        EigenvalueReport {
            value: t.to_decimal(12),
            exact: t.is_rational(),
            polynomial: (!t.is_rational()).then(|| t.defining_poly().to_string()),
        }
    }
}

pub fn multiplicity_text(m: &Multiplicity) -> String {
    match m {
        Multiplicity::Exact(x) => x.to_string(),
        Multiplicity::Approx(i) => crate::spectral::format_significant(i.mid_f64(), 12),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FeasibilityReport {
    pub array: IntersectionArray,
    pub verdict: Feasibility,
    pub checks: Vec<CheckResult>,
    pub config: FilterConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Vec<EigenvalueReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplicities: Option<Vec<String>>,
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        self.verdict == Feasibility::Feasible
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn intersection_numbers(arr: &IntersectionArray, counts: &DerivedCounts) -> Verdict {
    if let Some((i, k)) = counts
        .kseq
        .iter()
        .enumerate()
        .find(|(_, k)| !k.is_integer())
    {
        return Verdict::fail(format!("k{i} = {k}"));
    }
    match arr.p_numbers().first_violation() {
        Some((i, j, h, p)) => Verdict::fail(format!("p^{i}_({j},{h}) = {p}")),
        None => Verdict::Pass,
    }
}

fn parity(counts: &DerivedCounts) -> Verdict {
    for (i, (k, &a)) in counts.kseq.iter().zip(&counts.a).enumerate() {
        let prod = k * Q::from_integer(a.into());
        let half = &prod / Q::from_integer(2.into());
        if !half.is_integer() {
            return Verdict::fail(format!("k{i}*a{i} = {k}*{a} = {prod} is not even"));
        }
    }
    Verdict::Pass
}

fn multiplicities_check(spec: &Spectrum, counts: &DerivedCounts) -> Verdict {
    let mut sum = Q::zero();
    for (i, m) in spec.multiplicities.iter().enumerate() {
        match m {
            Multiplicity::Exact(x) if x.is_integer() && x.is_positive() => sum += x,
            _ => return Verdict::fail(format!("m{i} = {}", multiplicity_text(m))),
        }
    }
    if sum != counts.v {
        return Verdict::fail(format!("sum of multiplicities {sum} != v = {}", counts.v));
    }
    Verdict::Pass
}

fn krein_check(spec: &Spectrum, counts: &DerivedCounts, cfg: &FilterConfig) -> Verdict {
    match krein::krein_parameters(spec, counts) {
        Ok(t) => krein::krein_nonneg(&t, &cfg.krein_tol(t.is_exact())),
        Err(e) => Verdict::fail(e.to_string()),
    }
}

/// Full report: the four core conditions, then, if they all pass, every
/// enabled filter in [`Filter::ALL`] order.
pub fn gate(arr: &IntersectionArray, cfg: &FilterConfig) -> FeasibilityReport {
    gate_with_order(arr, cfg, &Filter::ALL)
}

/// As [`gate`], running the enabled filters in the given order.
pub fn gate_with_order(
    arr: &IntersectionArray,
    cfg: &FilterConfig,
    order: &[Filter],
) -> FeasibilityReport {
    let counts = arr.derived_counts();
    let mut checks = Vec::new();
    checks.push(CheckResult::new(
        CORE_INTERSECTION_NUMBERS,
        "all k_i and p^i_jh are nonnegative integers",
        intersection_numbers(arr, &counts),
    ));
    let spectrum = Spectrum::with_counts(arr, &counts);
    let mult_verdict = match &spectrum {
        Ok(spec) => multiplicities_check(spec, &counts),
        Err(e) => Verdict::fail(e.to_string()),
    };
    checks.push(CheckResult::new(
        CORE_MULTIPLICITIES,
        "all multiplicities are positive integers summing to v",
        mult_verdict,
    ));
    checks.push(CheckResult::new(
        CORE_PARITY,
        "k_i a_i is even",
        parity(&counts),
    ));
    if let Ok(spec) = &spectrum {
        checks.push(CheckResult::new(
            CORE_KREIN,
            "all Krein parameters are nonnegative",
            krein_check(spec, &counts, cfg),
        ));
    }
    let core_ok = checks.iter().all(|c| c.pass);
    if core_ok {
        let spec = spectrum.as_ref().ok();
        for &f in order.iter().filter(|&&f| cfg.is_enabled(f)) {
            checks.push(CheckResult::new(f.name(), f.condition(), f.eval(arr, spec)));
        }
    }
    let feasible = checks.iter().all(|c| c.pass);
    let (eigs, mults) = match &spectrum {
        Ok(s) => (
            Some(s.eigenvalues.iter().map(EigenvalueReport::of).collect()),
            Some(s.multiplicities.iter().map(multiplicity_text).collect()),
        ),
        Err(_) => (None, None),
    };
    FeasibilityReport {
        array: arr.clone(),
        verdict: if feasible {
            Feasibility::Feasible
        } else {
            Feasibility::Infeasible
        },
        checks,
        config: cfg.clone(),
        spectrum: eigs,
        multiplicities: mults,
    }
}

/// Name of the condition that rejected an array on the fast path.
pub type Rejection = &'static str;

/// `k_0, ..., k_D` as integers, or `None` if one is fractional.
pub fn integral_valencies(p: &Params) -> Option<Vec<i128>> {
    let mut ks = vec![1i128];
    for i in 1..=p.d {
        let num = ks[i - 1] * p.b(i - 1)? as i128;
        let den = p.c(i)? as i128;
        if num % den != 0 {
            return None;
        }
        ks.push(num / den);
    }
    Some(ks)
}

/// Checks that every `p^i_jh` is a nonnegative integer, using the integer
/// recurrence obtained from `A_1 A_j = b_(j-1) A_(j-1) + a_j A_j + c_(j+1) A_(j+1)`.
/// A fractional entry shows up as an inexact division.
pub fn p_numbers_nonneg_integral(p: &Params) -> bool {
    let d = p.d;
    let n = d + 1;
    let (b, c, a): (Vec<i128>, Vec<i128>, Vec<i128>) = (
        (0..=d).map(|i| p.b(i).unwrap() as i128).collect(),
        (0..=d).map(|i| p.c(i).unwrap() as i128).collect(),
        (0..=d).map(|i| p.a(i).unwrap() as i128).collect(),
    );
    // rows[j][h][i] = p^i_jh
    let mut prev = vec![vec![0i128; n]; n];
    for (h, row) in prev.iter_mut().enumerate() {
        row[h] = 1;
    }
    let mut cur = vec![vec![0i128; n]; n];
    for h in 0..n {
        if h > 0 {
            cur[h][h - 1] = b[h - 1];
        }
        cur[h][h] = a[h];
        if h + 1 < n {
            cur[h][h + 1] = c[h + 1];
        }
    }
    if cur.iter().flatten().any(|&x| x < 0) {
        return false;
    }
    for j in 1..d {
        let mut next = vec![vec![0i128; n]; n];
        for h in 0..n {
            for i in 0..n {
                let up = if i + 1 < n { b[i] * cur[h][i + 1] } else { 0 };
                let down = if i > 0 { c[i] * cur[h][i - 1] } else { 0 };
                let num = up + a[i] * cur[h][i] + down - b[j - 1] * prev[h][i] - a[j] * cur[h][i];
                let den = c[j + 1];
                if num < 0 || num % den != 0 {
                    return false;
                }
                next[h][i] = num / den;
            }
        }
        prev = std::mem::replace(&mut cur, next);
    }
    true
}

/// The array-only part of the gate: enabled array filters, integral
/// valencies and p-numbers, and parity. Cheap, integer arithmetic only.
pub fn screen_array(p: &Params, cfg: &FilterConfig) -> Result<(), Rejection> {
    for f in cfg.enabled().filter(|f| !f.is_spectral()) {
        if !f.eval_params(p).expect("complete array").passed() {
            return Err(f.name());
        }
    }
    screen_counts(p)
}

/// Integral valencies, nonnegative integral p-numbers and parity of a
/// complete array.
pub fn screen_counts(p: &Params) -> Result<(), Rejection> {
    let ks = integral_valencies(p).ok_or(CORE_INTERSECTION_NUMBERS)?;
    if !p_numbers_nonneg_integral(p) {
        return Err(CORE_INTERSECTION_NUMBERS);
    }
    for (i, k) in ks.iter().enumerate() {
        if (k * p.a(i).unwrap() as i128) % 2 != 0 {
            return Err(CORE_PARITY);
        }
    }
    Ok(())
}

/// The spectral part of the gate for an array that passed [`screen_array`].
pub fn screen_spectrum(
    arr: &IntersectionArray,
    counts: &DerivedCounts,
    spec: &Spectrum,
    cfg: &FilterConfig,
) -> Result<(), Rejection> {
    if !multiplicities_check(spec, counts).passed() {
        return Err(CORE_MULTIPLICITIES);
    }
    for f in cfg.enabled().filter(|f| f.is_spectral()) {
        if !f.eval(arr, Some(spec)).passed() {
            return Err(f.name());
        }
    }
    if !krein_check(spec, counts, cfg).passed() {
        return Err(CORE_KREIN);
    }
    Ok(())
}

/// Fast verdict with the name of the first rejecting condition. Agrees
/// with [`gate`] on every array.
pub fn screen(arr: &IntersectionArray, cfg: &FilterConfig) -> Result<Spectrum, Rejection> {
    screen_array(&Params::of(arr), cfg)?;
    let counts = arr.derived_counts();
    if multiplicities_integral(arr, &counts) == Some(false) {
        return Err(CORE_MULTIPLICITIES);
    }
    let spec = Spectrum::with_counts(arr, &counts).map_err(|_| CORE_MULTIPLICITIES)?;
    screen_spectrum(arr, &counts, &spec, cfg)?;
    Ok(spec)
}

pub fn is_feasible(arr: &IntersectionArray, cfg: &FilterConfig) -> bool {
    screen(arr, cfg).is_ok()
}

/// The two-sided eigenvalue inequality for diameter three:
/// `-1 - b1/(theta3+1) >= theta2 >= -1 - b1/(theta1+1)`.
pub fn theta2_bracket_check(arr: &IntersectionArray, spec: &Spectrum) -> Verdict {
    if arr.diameter() != 3 {
        return Verdict::fail(format!("diameter {} != 3", arr.diameter()));
    }
    let b1 = arr.b(1);
    let (t1, t2, t3) = (theta(spec, 1), theta(spec, 2), theta(spec, 3));
    match cmp_local_bound(t2, t1, b1) {
        None => return Verdict::fail("theta1 = -1"),
        Some(Ordering::Less) => {
            return Verdict::fail(format!(
                "theta2 = {t2} < {}",
                local_bound_text("theta1", b1)
            ))
        }
        _ => {}
    }
    match cmp_local_bound(t2, t3, b1) {
        None => Verdict::fail("theta3 = -1"),
        Some(Ordering::Greater) => Verdict::fail(format!(
            "theta2 = {t2} > {}",
            local_bound_text("theta3", b1)
        )),
        _ => Verdict::Pass,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("epsilon must lie in (0, 2], got {0}")]
pub struct DomainError(pub String);

/// `kappa(eps) = (40/eps^2 - 1)(40/eps^2 + 2)/2`, the valency beyond which
/// `k2 <= (2 - eps) k` forces diameter three and a bipartite or Taylor array.
pub fn kappa(eps: &Q) -> Result<Q, DomainError> {
    if !eps.is_positive() || *eps > Q::from_integer(2.into()) {
        return Err(DomainError(eps.to_string()));
    }
    let x = Q::from_integer(40.into()) / (eps * eps);
    Ok((&x - Q::one()) * (&x + Q::from_integer(2.into())) / Q::from_integer(2.into()))
}

/// Smallest integer `k >= kappa(eps)`.
pub fn kappa_ceil(eps: &Q) -> Result<u64, DomainError> {
    Ok(kappa(eps)?.ceil().to_integer().to_u64().unwrap_or(u64::MAX))
}
