//! Fixed searches with known outcomes: four classification searches over
//! diameter three, the small-`k2` check and the theta2 bracket check.

use num::{BigInt, One};
use serde::{Serialize, Serializer};

use super::{enumerate, SearchResult, SearchSpec};
use crate::arrays::IntersectionArray;
use crate::feasibility::{kappa, kappa_ceil, theta2_bracket_check, DomainError, Verdict};
use crate::spectral::{Spectrum, Q};

fn renamed(mut spec: SearchSpec, name: &str) -> SearchSpec {
    spec.name = name.to_string();
    spec
}

fn arrays(list: &[&str]) -> Vec<IntersectionArray> {
    list.iter()
        .map(|s| s.parse().expect("valid array"))
        .collect()
}

/// Antipodal 3-covers of diameter three `{k, 2c2, 1; 1, c2, k}` with
/// `k < 96`, `a1 >= k/2 - 1`, `c2 > k/6` and `c2 >= 2`.
pub fn s1_spec() -> SearchSpec {
    renamed(s1_literal_spec().with("c2 >= 2"), "s1")
}

/// The antipodal 3-cover search without `c2 >= 2`; admits the line graph
/// of the Petersen graph.
pub fn s1_literal_spec() -> SearchSpec {
    SearchSpec::new("s1-literal", 3, 3, 95)
        .with("b2 = 1")
        .with("c3 = k")
        .with("b1 = 2*c2")
        .with("c2 > k/6")
        .with("a1 >= k/2 - 1")
}

/// Diameter three, `k <= 945`, `a1 >= k/2 - 1`, `c2 > k/6`, `a3 != 0` and
/// `c2 >= 2`.
pub fn s2_spec() -> SearchSpec {
    renamed(s2_literal_spec().with("c2 >= 2"), "s2")
}

/// The `k <= 945` search without `c2 >= 2`; admits the line graph of the
/// Heawood graph.
pub fn s2_literal_spec() -> SearchSpec {
    SearchSpec::new("s2-literal", 3, 3, 945)
        .with("a1 >= k/2 - 1")
        .with("c2 > k/6")
        .with("a3 != 0")
}

/// Diameter three, `5 <= k <= 80`, `k2 <= 3k/2` and the bounds of the
/// `m1 >= k/2` branch.
pub fn s3_spec() -> SearchSpec {
    SearchSpec::new("s3", 3, 5, 80)
        .with("k2 <= 3*k/2")
        .with("a1 > 0")
        .with("a1 < k/2 - 1")
        .with("c2 > k/3")
        .with("c2 <= k/2")
        .with("b2 < k/3")
        .with("a1 >= k/4 - 1")
        .with("a3 >= k/4")
        .with("v <= 7*k/2")
        .with("m1 >= k/2")
}

/// Only `k2 <= 3k/2` and the family exclusions, over the range of
/// [`s3_spec`].
pub fn s3_relaxed_spec() -> SearchSpec {
    SearchSpec::new("s3-relaxed", 3, 5, 80)
        .with("k2 <= 3*k/2")
        .with("not bipartite")
        .with("not taylor")
}

/// Diameter three, `k <= 1127`, `k2 <= 3k/2`, `a1 > 0`, `a1 < k/2 - 1`,
/// `k/3 < c2 <= k/2`, `theta1 = b1/2 - 1` and `m1 < k/2`.
pub fn s4_spec() -> SearchSpec {
    SearchSpec::new("s4", 3, 3, 1127)
        .with("k2 <= 3*k/2")
        .with("a1 > 0")
        .with("a1 < k/2 - 1")
        .with("c2 > k/3")
        .with("c2 <= k/2")
        .with("theta1 = b1/2 - 1")
        .with("m1 < k/2")
}

/// Names accepted by [`named_search`].
pub const SEARCH_NAMES: [&str; 7] = [
    "s1",
    "s1-literal",
    "s2",
    "s2-literal",
    "s3",
    "s3-relaxed",
    "s4",
];

pub fn named_search(name: &str) -> Option<SearchSpec> {
    Some(match name {
        "s1" => s1_spec(),
        "s1-literal" => s1_literal_spec(),
        "s2" => s2_spec(),
        "s2-literal" => s2_literal_spec(),
        "s3" => s3_spec(),
        "s3-relaxed" => s3_relaxed_spec(),
        "s4" => s4_spec(),
        _ => return None,
    })
}

pub fn s1_expected() -> Vec<IntersectionArray> {
    Vec::new()
}

pub fn s2_expected() -> Vec<IntersectionArray> {
    arrays(&["12,6,2;1,4,9", "21,10,3;1,6,15"])
}

/// Expected survivors of a named search, possibly with a smaller `k_max`.
/// The literal variants admit line graphs with `c2 = 1`: of the Petersen
/// graph for s1 and of the Heawood graph for s2. The relaxed s3 admits
/// J(7,3).
pub fn expected_for(spec: &SearchSpec) -> Vec<IntersectionArray> {
    let all = match spec.name.as_str() {
        "s2" => s2_expected(),
        "s1-literal" => arrays(&["4,2,1;1,1,4"]),
        "s2-literal" => arrays(&["4,2,2;1,1,2", "12,6,2;1,4,9", "21,10,3;1,6,15"]),
        "s3-relaxed" => arrays(&["12,6,2;1,4,9"]),
        _ => Vec::new(),
    };
    all.into_iter()
        .filter(|a| (spec.k_min..=spec.k_max).contains(&a.k()))
        .collect()
}

/// A search run next to the set it should produce.
#[derive(Clone, Debug, Serialize)]
pub struct Reproduction {
    pub expected: Vec<IntersectionArray>,
    pub result: SearchResult,
}

impl Reproduction {
    pub fn run(spec: &SearchSpec) -> Reproduction {
        Reproduction {
            expected: expected_for(spec),
            result: enumerate(spec),
        }
    }

    pub fn matches(&self) -> bool {
        self.result.arrays() == self.expected
    }
}

fn ser_q<S: Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// Survivors of `k2 <= (2 - eps) k` over diameters three to five, and those
/// that are neither bipartite nor Taylor of diameter three.
#[derive(Clone, Debug, Serialize)]
pub struct SmallK2Check {
    #[serde(serialize_with = "ser_q")]
    pub epsilon: Q,
    #[serde(serialize_with = "ser_q")]
    pub kappa: Q,
    pub k_min: u64,
    pub k_max: u64,
    /// The valency range is empty.
    pub vacuous: bool,
    pub searches: Vec<SearchResult>,
    pub violations: Vec<IntersectionArray>,
}

impl SmallK2Check {
    pub fn survivors(&self) -> Vec<IntersectionArray> {
        self.searches
            .iter()
            .flat_map(SearchResult::arrays)
            .collect()
    }
}

fn bipartite_or_taylor_d3(a: &IntersectionArray) -> bool {
    a.diameter() == 3 && (a.is_bipartite() || a.is_taylor())
}

/// Enumerates feasible arrays with `3 <= D <= 5`, `k_min <= k <= k_max` and
/// `k2 <= (2 - eps) k`.
pub fn verify_small_k2(eps: &Q, k_min: u64, k_max: u64) -> Result<SmallK2Check, DomainError> {
    let kappa = kappa(eps)?;
    let k_min = k_min.max(3);
    let two = Q::from_integer(BigInt::from(2));
    let bound = format!("k2 <= ({})*k", &two - eps);
    let searches: Vec<SearchResult> = (3..=5)
        .map(|d| enumerate(&SearchSpec::new("small-k2", d, k_min, k_max).with(&bound)))
        .collect();
    let violations = searches
        .iter()
        .flat_map(SearchResult::arrays)
        .filter(|a| !bipartite_or_taylor_d3(a))
        .collect();
    Ok(SmallK2Check {
        epsilon: eps.clone(),
        kappa,
        k_min,
        k_max,
        vacuous: k_min > k_max,
        searches,
        violations,
    })
}

/// [`verify_small_k2`] from `max(3, kappa(eps))` on, where every survivor
/// must be a bipartite or Taylor array of diameter three.
pub fn verify_small_k2_from_kappa(eps: &Q, k_max: u64) -> Result<SmallK2Check, DomainError> {
    let k_min = kappa_ceil(eps)?.max(3);
    verify_small_k2(eps, k_min, k_max)
}

/// Arrays allowed below `kappa` when `k2 <= 3k/2`: besides bipartite and
/// Taylor arrays of diameter three, those of J(7,3) and the 4-cube.
pub fn small_k2_exceptions() -> Vec<IntersectionArray> {
    arrays(&["12,6,2;1,4,9", "4,3,2,1;1,2,3,4"])
}

/// The theta2 bracket `-1 - b1/(theta3+1) >= theta2 >= -1 - b1/(theta1+1)`
/// over every feasible diameter-three array up to a valency.
#[derive(Clone, Debug, Serialize)]
pub struct BracketCheck {
    pub k_max: u64,
    pub checked: Vec<IntersectionArray>,
    pub violations: Vec<(IntersectionArray, String)>,
}

pub fn verify_theta2_bracket(k_max: u64) -> BracketCheck {
    let result = enumerate(&SearchSpec::new("theta2-bracket", 3, 2, k_max));
    let checked = result.arrays();
    let violations = checked
        .iter()
        .filter_map(|a| {
            let spec = Spectrum::of(a).expect("feasible array has distinct eigenvalues");
            match theta2_bracket_check(a, &spec) {
                Verdict::Pass => None,
                Verdict::Fail(w) => Some((a.clone(), w)),
            }
        })
        .collect();
    BracketCheck {
        k_max,
        checked,
        violations,
    }
}

/// `1/2` as used by the default small-`k2` run.
pub fn one_half() -> Q {
    Q::new(BigInt::one(), BigInt::from(2))
}
