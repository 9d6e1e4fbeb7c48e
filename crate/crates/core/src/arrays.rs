//! Intersection arrays `{b0,...,b(D-1); c1,...,cD}` and every quantity that
//! follows from them by rational arithmetic.

use std::fmt;
use std::str::FromStr;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::feasibility::{Filter, Params, Verdict};
use crate::spectral::poly::{q, Poly, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArrayError {
    #[error("b and c must have the same nonzero length (got {b} and {c})")]
    Shape { b: usize, c: usize },
    #[error("intersection numbers must be positive ({which}{index} = 0)")]
    NonPositive { which: char, index: usize },
    #[error("c1 must be 1 (got {0})")]
    BadC1(u64),
    #[error("a{index} = {value} is negative")]
    NegativeA { index: usize, value: i64 },
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

/// Intersection array of a (putative) distance-regular graph.
///
/// Construction enforces only shape, positivity, `c1 = 1` and `a_i >= 0`;
/// monotonicity is left to the feasibility filters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntersectionArray {
    b: Vec<u64>,
    c: Vec<u64>,
}

impl IntersectionArray {
    /// `b = (b0, ..., b(D-1))`, `c = (c1, ..., cD)`.
    pub fn new(b: &[u64], c: &[u64]) -> Result<Self, ArrayError> {
        if b.len() != c.len() || b.is_empty() {
            return Err(ArrayError::Shape {
                b: b.len(),
                c: c.len(),
            });
        }
        if let Some(i) = b.iter().position(|&x| x == 0) {
            return Err(ArrayError::NonPositive {
                which: 'b',
                index: i,
            });
        }
        if let Some(i) = c.iter().position(|&x| x == 0) {
            return Err(ArrayError::NonPositive {
                which: 'c',
                index: i + 1,
            });
        }
        if c[0] != 1 {
            return Err(ArrayError::BadC1(c[0]));
        }
        let arr = IntersectionArray {
            b: b.to_vec(),
            c: c.to_vec(),
        };
        for i in 0..=arr.diameter() {
            let a = arr.a(i);
            if a < 0 {
                return Err(ArrayError::NegativeA { index: i, value: a });
            }
        }
        Ok(arr)
    }

    pub fn diameter(&self) -> usize {
        self.b.len()
    }

    pub fn k(&self) -> u64 {
        self.b[0]
    }

    /// `b_i` for `0 <= i <= D`, with `b_D = 0`.
    pub fn b(&self, i: usize) -> u64 {
        self.b.get(i).copied().unwrap_or(0)
    }

    /// `c_i` for `0 <= i <= D`, with `c_0 = 0`.
    pub fn c(&self, i: usize) -> u64 {
        if i == 0 {
            0
        } else {
            self.c[i - 1]
        }
    }

    /// `a_i = k - b_i - c_i`.
    pub fn a(&self, i: usize) -> i64 {
        self.k() as i64 - self.b(i) as i64 - self.c(i) as i64
    }

    pub fn bs(&self) -> &[u64] {
        &self.b
    }

    pub fn cs(&self) -> &[u64] {
        &self.c
    }

    /// Taylor pattern `{k, mu, 1; 1, mu, k}`.
    pub fn is_taylor(&self) -> bool {
        self.diameter() == 3 && self.b(2) == 1 && self.c(3) == self.k() && self.b(1) == self.c(2)
    }

    /// All `a_i` vanish for `i >= 1`.
    pub fn is_bipartite(&self) -> bool {
        (1..=self.diameter()).all(|i| self.a(i) == 0)
    }

    /// For diameter three, the `r` of an antipodal `r`-cover pattern
    /// (`b2 = 1`, `c3 = k`, `b1 = k3 c2` with `k3` integral), so `r = k3 + 1`.
    pub fn antipodal_d3_cover(&self) -> Option<u64> {
        if self.diameter() != 3 || self.b(2) != 1 || self.c(3) != self.k() {
            return None;
        }
        let (b1, c2) = (self.b(1), self.c(2));
        (b1 % c2 == 0).then(|| b1 / c2 + 1)
    }

    /// Monotonicity and the cross inequalities of a distance-regular graph:
    /// `k = b0 > b1 >= ... >= b(D-1)`, `1 = c1 <= ... <= cD`, and
    /// `b_i >= c_j` whenever `i + j <= D`. Reports the first violation.
    pub fn basic_valid(&self) -> Verdict {
        Filter::Monotone
            .eval_params(&Params::of(self))
            .expect("complete array")
    }

    pub fn derived_counts(&self) -> DerivedCounts {
        let d = self.diameter();
        let mut kseq = Vec::with_capacity(d + 1);
        let mut ki = Q::one();
        kseq.push(ki.clone());
        for i in 1..=d {
            ki = ki * q(self.b(i - 1) as i64) / q(self.c(i) as i64);
            kseq.push(ki.clone());
        }
        let v = kseq.iter().fold(Q::zero(), |acc, x| acc + x);
        DerivedCounts {
            k: self.k(),
            a: (0..=d).map(|i| self.a(i)).collect(),
            kseq,
            v,
        }
    }

    /// Distance polynomials `v_0, ..., v_D` (so that `A_i = v_i(A)`), and the
    /// degree `D+1` relation `(x - a_D) v_D - b_(D-1) v_(D-1)` that vanishes on
    /// the adjacency algebra.
    pub fn distance_polynomials(&self) -> (Vec<Poly>, Poly) {
        let d = self.diameter();
        let x = Poly::x();
        let mut v = vec![Poly::one(), x.clone()];
        for i in 1..d {
            let shifted = &x - &Poly::constant(q(self.a(i)));
            let next = &(&shifted * &v[i]) - &v[i - 1].scale(&q(self.b(i - 1) as i64));
            v.push(next.scale(&Q::new(1.into(), (self.c(i + 1) as i64).into())));
        }
        let shifted = &x - &Poly::constant(q(self.a(d)));
        let relation = &(&shifted * &v[d]) - &v[d - 1].scale(&q(self.b(d - 1) as i64));
        (v, relation)
    }

    /// The full tensor `p^i_{jh}`.
    ///
    /// Each product `v_j v_h` is reduced modulo the minimal relation of the
    /// adjacency algebra and rewritten in the `v_i` basis by back
    /// substitution from the top degree. Entries may be negative or
    /// fractional for infeasible arrays.
    pub fn p_numbers(&self) -> PNumberTensor {
        let d = self.diameter();
        let (v, relation) = self.distance_polynomials();
        let n = d + 1;
        let mut entries = vec![Q::zero(); n * n * n];
        for j in 0..n {
            for h in j..n {
                let mut prod = (&v[j] * &v[h]).rem(&relation);
                for i in (0..n).rev() {
                    let coef = prod.coeffs().get(i).cloned().unwrap_or_else(Q::zero);
                    if coef.is_zero() {
                        continue;
                    }
                    let lead = v[i].leading().unwrap().clone();
                    let p = coef / lead;
                    prod = &prod - &v[i].scale(&p);
                    entries[(i * n + j) * n + h] = p.clone();
                    entries[(i * n + h) * n + j] = p;
                }
                debug_assert!(prod.is_zero());
            }
        }
        PNumberTensor { d, entries }
    }
}

impl fmt::Display for IntersectionArray {
    /// Canonical text form, e.g. `12,6,2;1,4,9`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[u64]| xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{};{}", join(&self.b), join(&self.c))
    }
}

impl FromStr for IntersectionArray {
    type Err = ArrayError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |position: usize, message: &str| ArrayError::Parse {
            position,
            message: message.to_string(),
        };
        let Some(semi) = s.find(';') else {
            return Err(err(s.len(), "expected ';' between b and c"));
        };
        let parse_list = |part: &str, offset: usize| -> Result<Vec<u64>, ArrayError> {
            let mut out = Vec::new();
            let mut pos = offset;
            for tok in part.split(',') {
                if tok.is_empty() {
                    return Err(err(pos, "empty entry"));
                }
                if let Some(bad) = tok.find(|ch: char| !ch.is_ascii_digit()) {
                    return Err(err(pos + bad, "expected an ASCII digit"));
                }
                let val = tok
                    .parse::<u64>()
                    .map_err(|_| err(pos, "number out of range"))?;
                out.push(val);
                pos += tok.len() + 1;
            }
            Ok(out)
        };
        let b = parse_list(&s[..semi], 0)?;
        let c = parse_list(&s[semi + 1..], semi + 1)?;
        IntersectionArray::new(&b, &c)
    }
}

impl Serialize for IntersectionArray {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IntersectionArray {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedCounts {
    pub k: u64,
    /// `a_0, ..., a_D`
    pub a: Vec<i64>,
    /// `k_0, ..., k_D`, exact and possibly fractional.
    pub kseq: Vec<Q>,
    pub v: Q,
}

impl DerivedCounts {
    pub fn all_integral(&self) -> bool {
        self.kseq.iter().all(|x| x.is_integer())
    }
}

/// `p^i_{jh}` for `0 <= i, j, h <= D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PNumberTensor {
    d: usize,
    entries: Vec<Q>,
}

impl PNumberTensor {
    pub fn diameter(&self) -> usize {
        self.d
    }

    /// `p^i_{jh}`
    pub fn get(&self, i: usize, j: usize, h: usize) -> &Q {
        let n = self.d + 1;
        &self.entries[(i * n + j) * n + h]
    }

    /// First entry that is negative or fractional, as `(i, j, h, value)`.
    pub fn first_violation(&self) -> Option<(usize, usize, usize, Q)> {
        let n = self.d + 1;
        for i in 0..n {
            for j in 0..n {
                for h in 0..n {
                    let p = self.get(i, j, h);
                    if p.is_negative() || !p.is_integer() {
                        return Some((i, j, h, p.clone()));
                    }
                }
            }
        }
        None
    }
}
