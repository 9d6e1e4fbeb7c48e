//! Krein parameters `q^k_ij`, defined by `E_i o E_j = (1/v) sum_k q^k_ij E_k`,
//! and the Delsarte clique bound.
//!
//! On a pair at distance `d` the idempotent `E_i` has entry
//! `(m_i / v) u_d(theta_i)`, so the defining identity read off on each
//! distance class gives the square system
//! `sum_k q^k_ij m_k u_d(theta_k) = m_i m_j u_d(theta_i) u_d(theta_j)`.
//! For a rational spectrum that system is solved exactly. Otherwise the
//! orthogonality of standard sequences gives the closed form
//! `q^k_ij = (m_i m_j / v) sum_d k_d u_d(theta_i) u_d(theta_j) u_d(theta_k)`,
//! which is evaluated on certified enclosures.

use std::cmp::Ordering;

use num::{BigInt, One, Signed, ToPrimitive, Zero};

use crate::arrays::DerivedCounts;
use crate::feasibility::Verdict;
use crate::linalg;
use crate::spectral::algebraic::MAX_REFINEMENT_BITS;
use crate::spectral::poly::cmp_q;
use crate::spectral::{
    format_significant, AlgebraicScalar, Interval, Multiplicity, Spectrum, StandardSequence, Q,
};

/// Eigenvalues are refined to `2^-BASE_BITS` before evaluating the tensor.
const BASE_BITS: u32 = 48;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("the distance-class system for the Krein parameters is singular")]
pub struct SingularSystem;

/// All `q^k_ij`, indexed superscript first like the p-numbers.
#[derive(Clone, Debug)]
pub struct KreinTensor {
    d: usize,
    exact: Option<Vec<Q>>,
    seqs: Vec<StandardSequence>,
    kseq: Vec<Q>,
    v: Q,
    mults: Vec<Interval>,
}

/// One Krein parameter as reported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KreinEntry {
    Exact(Q),
    Approx(Interval),
}

impl KreinEntry {
    pub fn to_f64(&self) -> f64 {
        match self {
            KreinEntry::Exact(x) => x.to_f64().unwrap_or(f64::NAN),
            KreinEntry::Approx(i) => i.mid_f64(),
        }
    }
}

fn mult_interval(m: &Multiplicity) -> Interval {
    match m {
        Multiplicity::Exact(x) => Interval::point(x.clone()),
        Multiplicity::Approx(i) => i.clone(),
    }
}

pub fn krein_parameters(
    spec: &Spectrum,
    counts: &DerivedCounts,
) -> Result<KreinTensor, SingularSystem> {
    let d = spec.diameter();
    let n = d + 1;
    // one refinement up front; later enclosures at coarser widths reuse it
    let base = Q::new(BigInt::one(), BigInt::one() << BASE_BITS);
    let seqs = spec
        .standard_sequences
        .iter()
        .map(|s| StandardSequence {
            theta: s.theta.refined(&base),
            ..s.clone()
        })
        .collect();
    let mut tensor = KreinTensor {
        d,
        exact: None,
        seqs,
        kseq: counts.kseq.clone(),
        v: counts.v.clone(),
        mults: spec.multiplicities.iter().map(mult_interval).collect(),
    };
    let exact_mults: Option<Vec<Q>> = spec
        .multiplicities
        .iter()
        .map(|m| match m {
            Multiplicity::Exact(x) => Some(x.clone()),
            Multiplicity::Approx(_) => None,
        })
        .collect();
    let values: Option<Vec<Vec<Q>>> = spec
        .standard_sequences
        .iter()
        .map(StandardSequence::exact_values)
        .collect();
    if let (Some(m), Some(u)) = (exact_mults, values) {
        // u[l][d] = u_d(theta_l)
        let sys: Vec<Vec<Q>> = (0..n)
            .map(|dist| (0..n).map(|l| &m[l] * &u[l][dist]).collect())
            .collect();
        let inv = linalg::inverse(&sys).ok_or(SingularSystem)?;
        let mut entries = vec![Q::zero(); n * n * n];
        for i in 0..n {
            for j in i..n {
                let mm = &m[i] * &m[j];
                let rhs: Vec<Q> = (0..n).map(|dist| &mm * &u[i][dist] * &u[j][dist]).collect();
                let sol = linalg::mat_vec(&inv, &rhs);
                for (l, val) in sol.into_iter().enumerate() {
                    entries[(l * n + i) * n + j] = val.clone();
                    entries[(l * n + j) * n + i] = val;
                }
            }
        }
        tensor.exact = Some(entries);
    }
    Ok(tensor)
}

impl KreinTensor {
    /// A tensor with prescribed exact entries, `entries[(k*n + i)*n + j]`.
    pub fn from_exact(d: usize, entries: Vec<Q>) -> Self {
        assert_eq!(entries.len(), (d + 1).pow(3));
        KreinTensor {
            d,
            exact: Some(entries),
            seqs: Vec::new(),
            kseq: Vec::new(),
            v: Q::one(),
            mults: Vec::new(),
        }
    }

    pub fn diameter(&self) -> usize {
        self.d
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// `q^k_ij` when the spectrum is rational.
    pub fn exact(&self, k: usize, i: usize, j: usize) -> Option<&Q> {
        let n = self.d + 1;
        self.exact.as_ref().map(|e| &e[(k * n + i) * n + j])
    }

    /// The closed form, evaluated exactly; `None` for irrational spectra.
    pub fn closed_form(&self, k: usize, i: usize, j: usize) -> Option<Q> {
        let vals: Option<Vec<Vec<Q>>> = [i, j, k]
            .iter()
            .map(|&x| self.seqs.get(x).and_then(StandardSequence::exact_values))
            .collect();
        let vals = vals?;
        let sum: Q = (0..=self.d)
            .map(|dist| &self.kseq[dist] * &vals[0][dist] * &vals[1][dist] * &vals[2][dist])
            .sum();
        let (mi, mj) = (&self.mults[i], &self.mults[j]);
        if !mi.is_point() || !mj.is_point() {
            return None;
        }
        Some(&mi.lo * &mj.lo / &self.v * sum)
    }

    /// Enclosure of `q^k_ij` with every eigenvalue refined to `width`.
    pub fn enclosure(&self, k: usize, i: usize, j: usize, width: &Q) -> Interval {
        if let Some(x) = self.exact(k, i, j) {
            return Interval::point(x.clone());
        }
        self.enclosure_from(&self.term_enclosures(width), k, i, j)
    }

    /// `u_d(theta_l)` enclosures for every `l`, indexed `[l][d]`.
    fn term_enclosures(&self, width: &Q) -> Vec<Vec<Interval>> {
        let bits = width.denom().bits() as u32 + 8;
        self.seqs
            .iter()
            .map(|s| {
                s.enclosures(width)
                    .iter()
                    .map(|e| e.round_out(bits))
                    .collect()
            })
            .collect()
    }

    fn enclosure_from(&self, u: &[Vec<Interval>], k: usize, i: usize, j: usize) -> Interval {
        let mut sum = Interval::point(Q::zero());
        for dist in 0..=self.d {
            let t = &(&u[i][dist] * &u[j][dist]) * &u[k][dist];
            sum = &sum + &t.scale(&self.kseq[dist]);
        }
        let scale = (&self.mults[i] * &self.mults[j]).scale(&self.v.recip());
        &scale * &sum
    }

    /// As [`KreinTensor::sign`], settling most entries from one shared set of
    /// enclosures first.
    fn sign_with(
        &self,
        u: Option<&[Vec<Interval>]>,
        k: usize,
        i: usize,
        j: usize,
        tol: &Q,
    ) -> Ordering {
        if let (None, Some(u)) = (self.exact.as_ref(), u) {
            let e = self.enclosure_from(u, k, i, j);
            if cmp_q(&e.lo, &-tol.clone()).is_ge() && cmp_q(&e.hi, tol).is_le() {
                return Ordering::Equal;
            }
            if e.is_positive() {
                return Ordering::Greater;
            }
            if e.is_negative() {
                return Ordering::Less;
            }
        }
        self.sign(k, i, j, tol)
    }

    /// Sign of `q^k_ij`, treating values that settle inside `[-tol, tol]`
    /// as zero. Enclosures are refined until they either exclude zero or fit
    /// in that band.
    pub fn sign(&self, k: usize, i: usize, j: usize, tol: &Q) -> Ordering {
        if let Some(x) = self.exact(k, i, j) {
            if x.abs() <= *tol {
                return Ordering::Equal;
            }
            return x.cmp(&Q::zero());
        }
        let mut bits = 8u32;
        loop {
            let width = Q::new(BigInt::one(), BigInt::one() << bits);
            let e = self.enclosure(k, i, j, &width);
            if cmp_q(&e.lo, &-tol.clone()).is_ge() && cmp_q(&e.hi, tol).is_le() {
                return Ordering::Equal;
            }
            if e.is_positive() {
                return Ordering::Greater;
            }
            if e.is_negative() {
                return Ordering::Less;
            }
            if bits >= MAX_REFINEMENT_BITS {
                return Ordering::Equal;
            }
            bits = (bits * 2).min(MAX_REFINEMENT_BITS);
        }
    }

    pub fn entry(&self, k: usize, i: usize, j: usize) -> KreinEntry {
        match self.exact(k, i, j) {
            Some(x) => KreinEntry::Exact(x.clone()),
            None => {
                let w = Q::new(BigInt::one(), BigInt::from(10u64.pow(12)));
                KreinEntry::Approx(self.enclosure(k, i, j, &w))
            }
        }
    }
}

/// Default tolerance for Krein parameters of irrational spectra.
pub fn default_tolerance() -> Q {
    Q::new(BigInt::one(), BigInt::from(100_000_000))
}

/// Passes iff every `q^k_ij >= -tol`; the first failing entry is the witness.
/// On the exact path `tol` is normally zero.
pub fn krein_nonneg(q: &KreinTensor, tol: &Q) -> Verdict {
    let n = q.d + 1;
    let shared = (!q.is_exact())
        .then(|| q.term_enclosures(&Q::new(BigInt::one(), BigInt::one() << BASE_BITS)));
    // m_k q^k_ij is symmetric in i, j, k, so one sign per index multiset
    let mut seen = std::collections::HashMap::new();
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                if shared.is_some() && (i == 0 || k == 0) {
                    // q^0_ij = m_i [i = j] and q^k_0j = m_j [j = k]
                    continue;
                }
                let mut key = [i, j, k];
                key.sort_unstable();
                let sign = *seen
                    .entry(key)
                    .or_insert_with(|| q.sign_with(shared.as_deref(), k, i, j, tol));
                if sign == Ordering::Less {
                    let shown = match q.entry(k, i, j) {
                        KreinEntry::Exact(x) => x.to_string(),
                        KreinEntry::Approx(e) => format_significant(e.mid_f64(), 12),
                    };
                    return Verdict::fail(format!("q^{k}_({i},{j}) = {shown}"));
                }
            }
        }
    }
    Verdict::Pass
}

/// The tolerance matching the tensor: zero on the exact path, the default
/// otherwise.
pub fn tolerance_for(q: &KreinTensor) -> Q {
    if q.is_exact() {
        Q::zero()
    } else {
        default_tolerance()
    }
}

/// `1 - k / theta_D`, the size of a Delsarte clique.
pub fn delsarte_clique_size(spec: &Spectrum) -> AlgebraicScalar {
    let k = spec.eigenvalues[0]
        .rational()
        .expect("largest eigenvalue is the valency")
        .clone();
    spec.eigenvalues
        .last()
        .unwrap()
        .one_minus_k_over(&k)
        .expect("smallest eigenvalue is negative")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrays::IntersectionArray;
    use crate::spectral::poly::q;

    fn tensor(s: &str) -> KreinTensor {
        let a: IntersectionArray = s.parse().unwrap();
        let spec = Spectrum::of(&a).unwrap();
        krein_parameters(&spec, &a.derived_counts()).unwrap()
    }

    #[test]
    fn trivial_row_is_identity() {
        for s in ["12,6,2;1,4,9", "5,2,1;1,2,5", "2,1;1,1"] {
            let t = tensor(s);
            let tol = tolerance_for(&t);
            let n = t.diameter() + 1;
            let zero = Q::zero();
            for j in 0..n {
                for k in 0..n {
                    let e = t.enclosure(k, 0, j, &Q::new(1.into(), BigInt::from(1u64 << 40)));
                    let want = if j == k { q(1) } else { zero.clone() };
                    assert!(
                        e.lo <= &want + &tol && e.hi >= &want - &tol,
                        "{s}: q^{k}_0{j} = {e:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn johnson_exact_and_nonnegative() {
        let t = tensor("12,6,2;1,4,9");
        assert!(t.is_exact());
        for k in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    let x = t.exact(k, i, j).unwrap();
                    assert_eq!(Some(x.clone()), t.closed_form(k, i, j));
                    assert!(!x.is_negative());
                    assert_eq!(x, t.exact(k, j, i).unwrap());
                }
            }
        }
        assert!(krein_nonneg(&t, &Q::zero()).passed());
    }

    #[test]
    fn pentagon_tight_entry_vanishes() {
        let t = tensor("2,1;1,1");
        assert!(!t.is_exact());
        assert_eq!(t.sign(1, 1, 1, &default_tolerance()), Ordering::Equal);
        let e = t.enclosure(1, 1, 1, &Q::new(1.into(), BigInt::from(1u64 << 60)));
        assert!(e.lo.abs() < default_tolerance() && e.hi.abs() < default_tolerance());
        assert!(krein_nonneg(&t, &default_tolerance()).passed());
    }

    #[test]
    fn injected_negative_entry_fails() {
        let mut entries = vec![Q::zero(); 8];
        entries[(1 * 2 + 1) * 2 + 1] = q(-1);
        let t = KreinTensor::from_exact(1, entries);
        assert_eq!(
            krein_nonneg(&t, &Q::zero()),
            Verdict::fail("q^1_(1,1) = -1")
        );
    }

    #[test]
    fn delsarte_examples() {
        let size = |s: &str| {
            let a: IntersectionArray = s.parse().unwrap();
            delsarte_clique_size(&Spectrum::of(&a).unwrap())
        };
        assert_eq!(size("12,6,2;1,4,9"), AlgebraicScalar::integer(5));
        assert_eq!(size("7;1"), AlgebraicScalar::integer(8));
        let ico = size("5,2,1;1,2,5");
        assert!((ico.to_f64() - (1.0 + 5f64.sqrt())).abs() < 1e-12);
    }
}
