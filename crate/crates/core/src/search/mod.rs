//! Exhaustive enumeration of intersection arrays of a fixed diameter.
//!
//! The pruned enumerator chooses `b1, c2, b2, c3, ...` in that order and
//! only tries `c_(i+1)` among the divisors of `k_i b_i`, so every prefix has
//! integral valencies. At each node the array filters and constraints are
//! run on the partial array and the subtree is cut on the first visible
//! violation. The unpruned enumerator walks the whole box and exists as an
//! oracle for the pruned one.
//!
//! Both only ever produce arrays satisfying the monotone conditions
//! regardless of the filter configuration: that is the search domain.

pub mod constraint;
pub mod runs;

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::arrays::IntersectionArray;
use crate::feasibility::{
    gate, screen, screen_counts, screen_spectrum, FeasibilityReport, Filter, FilterConfig, Params,
};
use crate::spectral::{multiplicities_integral, Spectrum};
use constraint::EigenvaluePin;
pub use constraint::{Constraint, ConstraintError};

/// Largest diameter the enumerators accept.
pub const MAX_DIAMETER: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct SearchSpec {
    pub name: String,
    #[serde(rename = "D")]
    pub d: usize,
    pub k_min: u64,
    pub k_max: u64,
    pub constraints: Vec<Constraint>,
    pub config: FilterConfig,
}

impl SearchSpec {
    pub fn new(name: &str, d: usize, k_min: u64, k_max: u64) -> SearchSpec {
        assert!((1..=MAX_DIAMETER).contains(&d), "diameter {d} out of range");
        SearchSpec {
            name: name.to_string(),
            d,
            k_min,
            k_max,
            constraints: Vec::new(),
            config: FilterConfig::default(),
        }
    }

    /// Adds a constraint given in the syntax of [`constraint`].
    pub fn constraint(mut self, text: &str) -> Result<SearchSpec, ConstraintError> {
        let c = Constraint::parse(text)?;
        c.check_diameter(self.d)?;
        self.constraints.push(c);
        Ok(self)
    }

    /// As [`SearchSpec::constraint`] for constraints known to be valid.
    pub fn with(self, text: &str) -> SearchSpec {
        self.constraint(text).expect("valid constraint")
    }

    pub fn with_config(mut self, config: FilterConfig) -> SearchSpec {
        self.config = config;
        self
    }

    pub fn with_k_max(mut self, k_max: u64) -> SearchSpec {
        self.k_max = k_max;
        self
    }
}

/// Candidate counts. `pruned` maps a rejecting condition to the number of
/// partial or complete arrays it cut.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counters {
    pub generated: u64,
    pub structurally_valid: u64,
    pub gated: u64,
    pub survivors: u64,
    pub pruned: BTreeMap<String, u64>,
}

impl Counters {
    fn reject(&mut self, reason: &str) {
        *self.pruned.entry(reason.to_string()).or_insert(0) += 1;
    }

    fn merge(&mut self, other: Counters) {
        self.generated += other.generated;
        self.structurally_valid += other.structurally_valid;
        self.gated += other.gated;
        self.survivors += other.survivors;
        for (k, v) in other.pruned {
            *self.pruned.entry(k).or_insert(0) += v;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Survivor {
    pub array: IntersectionArray,
    pub report: FeasibilityReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub spec: SearchSpec,
    pub survivors: Vec<Survivor>,
    pub counters: Counters,
    pub wall_time_secs: f64,
}

impl SearchResult {
    pub fn arrays(&self) -> Vec<IntersectionArray> {
        self.survivors.iter().map(|s| s.array.clone()).collect()
    }

    /// One JSON object per survivor and line.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> io::Result<()> {
        for s in &self.survivors {
            serde_json::to_writer(&mut w, s)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }

    /// Spec echo, counters, timing and the survivor arrays, without reports.
    pub fn summary(&self) -> serde_json::Value {
        serde_json::json!({
            "spec": self.spec,
            "counters": self.counters,
            "wall_time_secs": self.wall_time_secs,
            "survivors": self.survivors.iter().map(|s| s.array.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// How the `k` range is scheduled. Output is identical either way.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Serial,
    Parallel,
}

/// Pruned enumeration, parallel over `k`.
pub fn enumerate(spec: &SearchSpec) -> SearchResult {
    enumerate_with(spec, Execution::Parallel)
}

pub fn enumerate_with(spec: &SearchSpec, exec: Execution) -> SearchResult {
    let start = Instant::now();
    let ctx = Context::new(spec);
    let run = |k: u64| {
        let mut unit = Unit::new(&ctx, k);
        unit.run();
        (unit.survivors, unit.counters)
    };
    let parts = over_k(spec, exec, run);
    finish(spec, parts, start)
}

/// Brute-force enumeration over `1 <= b_i, c_i <= k`, checking each complete
/// array from scratch.
pub fn enumerate_unpruned(spec: &SearchSpec) -> SearchResult {
    enumerate_unpruned_with(spec, Execution::Parallel)
}

pub fn enumerate_unpruned_with(spec: &SearchSpec, exec: Execution) -> SearchResult {
    let start = Instant::now();
    let parts = over_k(spec, exec, |k| unpruned_k(spec, k));
    finish(spec, parts, start)
}

type Part = (Vec<Survivor>, Counters);

fn over_k(spec: &SearchSpec, exec: Execution, f: impl Fn(u64) -> Part + Sync + Send) -> Vec<Part> {
    let ks = spec.k_min.max(1)..=spec.k_max;
    match exec {
        Execution::Serial => ks.map(f).collect(),
        Execution::Parallel => ks.into_par_iter().map(f).collect(),
    }
}

fn finish(spec: &SearchSpec, parts: Vec<Part>, start: Instant) -> SearchResult {
    let mut survivors = Vec::new();
    let mut counters = Counters::default();
    for (s, c) in parts {
        survivors.extend(s);
        counters.merge(c);
    }
    survivors.sort_by(|a, b| a.array.cmp(&b.array));
    SearchResult {
        spec: spec.clone(),
        survivors,
        counters,
        wall_time_secs: start.elapsed().as_secs_f64(),
    }
}

/// A check run at enumeration nodes.
enum NodeCheck<'a> {
    Filter(Filter),
    Constraint(&'a Constraint),
    /// A pinned eigenvalue is a rational root of a monic integer
    /// polynomial, so it must be an integer.
    PinIntegral(EigenvaluePin),
}

impl NodeCheck<'_> {
    fn eval(&self, p: &Params) -> Option<bool> {
        match self {
            NodeCheck::Filter(f) => f.eval_params(p).map(|v| v.passed()),
            NodeCheck::Constraint(c) => c.eval_params(p),
            NodeCheck::PinIntegral(pin) => pin.value(p).map(|(_, d)| d == 1),
        }
    }

    fn reason(&self) -> String {
        match self {
            NodeCheck::Filter(f) => f.name().to_string(),
            NodeCheck::Constraint(c) => format!("constraint: {c}"),
            NodeCheck::PinIntegral(pin) => pin_reason(pin),
        }
    }
}

fn pin_reason(pin: &EigenvaluePin) -> String {
    format!("eigenvalue pin: theta{}", pin.j)
}

/// Shared, read-only search state.
struct Context<'a> {
    spec: &'a SearchSpec,
    checks: Vec<NodeCheck<'a>>,
    reasons: Vec<String>,
    spectral: Vec<&'a Constraint>,
    pins: Vec<EigenvaluePin>,
    /// Smallest prime factor of every integer up to `k_max`.
    spf: Vec<u32>,
}

impl<'a> Context<'a> {
    fn new(spec: &'a SearchSpec) -> Self {
        // monotone first, always: it defines the search domain
        let mut checks = vec![NodeCheck::Filter(Filter::Monotone)];
        checks.extend(
            spec.config
                .array_filters()
                .into_iter()
                .filter(|&f| f != Filter::Monotone)
                .map(NodeCheck::Filter),
        );
        checks.extend(
            spec.constraints
                .iter()
                .filter(|c| !c.is_spectral())
                .map(NodeCheck::Constraint),
        );
        checks.extend(
            spec.constraints
                .iter()
                .filter_map(|c| c.eigenvalue_pin())
                .map(NodeCheck::PinIntegral),
        );
        assert!(checks.len() <= 64, "too many constraints");
        let reasons = checks.iter().map(NodeCheck::reason).collect();
        let spectral = spec
            .constraints
            .iter()
            .filter(|c| c.is_spectral())
            .collect();
        let pins = spec
            .constraints
            .iter()
            .filter_map(|c| c.eigenvalue_pin())
            .collect();
        Context {
            spec,
            checks,
            reasons,
            spectral,
            pins,
            spf: smallest_prime_factors(spec.k_max as usize),
        }
    }

    fn all_checks(&self) -> u64 {
        if self.checks.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.checks.len()) - 1
        }
    }

    fn factor(&self, mut n: u64) -> Factors {
        let mut out: Factors = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        out
    }
}

fn smallest_prime_factors(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            for j in (i..=n).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
            }
        }
    }
    spf
}

/// Prime factorization as sorted `(prime, exponent)` pairs.
type Factors = Vec<(u64, u32)>;

fn mul_factors(a: &Factors, b: &Factors) -> Factors {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(&(p, e)), Some(&(q, f))) if p == q => {
                out.push((p, e + f));
                i += 1;
                j += 1;
            }
            (Some(&(p, e)), Some(&(q, _))) if p < q => {
                out.push((p, e));
                i += 1;
            }
            (Some(&(p, e)), None) => {
                out.push((p, e));
                i += 1;
            }
            (_, Some(&(q, f))) => {
                out.push((q, f));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// `a / b`, assuming `b` divides `a`.
fn div_factors(a: &Factors, b: &Factors) -> Factors {
    let mut out = Vec::with_capacity(a.len());
    let mut j = 0;
    for &(p, e) in a {
        let mut e = e;
        if j < b.len() && b[j].0 == p {
            e -= b[j].1;
            j += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    debug_assert_eq!(j, b.len());
    out
}

/// Divisors of the number with factorization `f` lying in `[lo, hi]`,
/// ascending.
fn divisors_in(f: &Factors, lo: u64, hi: u64) -> Vec<u64> {
    fn go(f: &[(u64, u32)], acc: u64, hi: u64, out: &mut Vec<u64>) {
        let Some((&(p, e), rest)) = f.split_first() else {
            out.push(acc);
            return;
        };
        let mut x = acc;
        for i in 0..=e {
            go(rest, x, hi, out);
            if i < e {
                match x.checked_mul(p) {
                    Some(y) if y <= hi => x = y,
                    _ => break,
                }
            }
        }
    }
    let mut out = Vec::new();
    if lo <= hi {
        go(f, 1, hi, &mut out);
        out.retain(|&x| x >= lo);
        out.sort_unstable();
    }
    out
}

/// The enumeration for one valency.
struct Unit<'c, 'a> {
    ctx: &'c Context<'a>,
    d: usize,
    k: u64,
    b: Vec<u64>,
    c: Vec<u64>,
    /// Factorization of `k_i` for the chosen prefix.
    valency_factors: Vec<Factors>,
    survivors: Vec<Survivor>,
    counters: Counters,
}

impl<'c, 'a> Unit<'c, 'a> {
    fn new(ctx: &'c Context<'a>, k: u64) -> Self {
        let d = ctx.spec.d;
        Unit {
            ctx,
            d,
            k,
            b: Vec::with_capacity(d),
            c: Vec::with_capacity(d),
            valency_factors: Vec::with_capacity(d + 1),
            survivors: Vec::new(),
            counters: Counters::default(),
        }
    }

    fn run(&mut self) {
        let k = self.k;
        self.b.push(k);
        self.c.push(1);
        self.valency_factors.push(Vec::new());
        self.valency_factors.push(self.ctx.factor(k));
        let pending = self.ctx.all_checks();
        if let Some(pending) = self.node(pending) {
            if self.d == 1 {
                self.leaf(pending);
            } else {
                self.choose_b(1, pending);
            }
        }
    }

    fn params(&self) -> Params<'_> {
        Params::new(self.d, &self.b, &self.c)
    }

    /// Runs the undecided checks on the current prefix. Returns the checks
    /// still undecided, or `None` if one failed.
    fn node(&mut self, pending: u64) -> Option<u64> {
        let p = Params::new(self.d, &self.b, &self.c);
        let mut rest = pending;
        let mut bits = pending;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            match self.ctx.checks[i].eval(&p) {
                Some(true) => rest &= !(1 << i),
                Some(false) => {
                    let reason = &self.ctx.reasons[i];
                    self.counters.reject(reason);
                    return None;
                }
                None => {}
            }
        }
        Some(rest)
    }

    /// Chooses `b_i` for `1 <= i < D`; `c_1..c_i` are known.
    fn choose_b(&mut self, i: usize, pending: u64) {
        let (k, d) = (self.k, self.d);
        let prev = self.b[i - 1];
        let hi = if i == 1 { k - 1 } else { prev }.min(k - self.c[i - 1]);
        // b_i >= c_j for j <= D - i, and the c's are nondecreasing
        let j = i.min(d - i);
        let lo = if j == 0 { 1 } else { self.c[j - 1].max(1) };
        for bi in (lo..=hi).rev() {
            self.b.push(bi);
            if let Some(p) = self.node(pending) {
                self.choose_c(i + 1, p);
            }
            self.b.pop();
        }
    }

    /// Chooses `c_i` for `2 <= i <= D` among divisors of `k_(i-1) b_(i-1)`.
    fn choose_c(&mut self, i: usize, pending: u64) {
        let (k, d) = (self.k, self.d);
        let lo = self.c[i - 2];
        let mut hi = if i < d { k - 1 } else { k };
        // c_i <= b_j for j <= D - i
        hi = hi.min(self.b[(d - i).min(i - 1)]);
        if lo > hi {
            return;
        }
        let b_prev = self.b[i - 1];
        let num = mul_factors(&self.valency_factors[i - 1], &self.ctx.factor(b_prev));
        for ci in divisors_in(&num, lo, hi) {
            self.c.push(ci);
            self.valency_factors
                .push(div_factors(&num, &self.ctx.factor(ci)));
            if let Some(p) = self.node(pending) {
                if i == d {
                    self.leaf(p);
                } else {
                    self.choose_b(i, p);
                }
            }
            self.valency_factors.pop();
            self.c.pop();
        }
    }

    fn leaf(&mut self, pending: u64) {
        self.counters.generated += 1;
        // every node check is decidable on a complete array
        let p = self.params();
        let mut structural = true;
        let mut bits = pending;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if !self.ctx.checks[i].eval(&p).expect("complete array") {
                let reason = self.ctx.reasons[i].clone();
                self.counters.reject(&reason);
                if i == 0 {
                    structural = false;
                }
                if structural {
                    self.counters.structurally_valid += 1;
                }
                return;
            }
        }
        self.counters.structurally_valid += 1;
        self.counters.gated += 1;
        match self.gate_leaf() {
            Ok(survivor) => {
                self.counters.survivors += 1;
                self.survivors.push(survivor);
            }
            Err(reason) => self.counters.reject(&reason),
        }
    }

    fn gate_leaf(&self) -> Result<Survivor, String> {
        let p = self.params();
        screen_counts(&p).map_err(String::from)?;
        for pin in &self.ctx.pins {
            if !char_poly_vanishes(&p, pin.value(&p).expect("complete array")) {
                return Err(pin_reason(pin));
            }
        }
        let arr = IntersectionArray::new(&self.b, &self.c).expect("valid array");
        let counts = arr.derived_counts();
        if multiplicities_integral(&arr, &counts) == Some(false) {
            return Err(crate::feasibility::CORE_MULTIPLICITIES.to_string());
        }
        let spec = Spectrum::with_counts(&arr, &counts)
            .map_err(|_| crate::feasibility::CORE_MULTIPLICITIES.to_string())?;
        screen_spectrum(&arr, &counts, &spec, &self.ctx.spec.config).map_err(String::from)?;
        spectral_constraints(&self.ctx.spectral, &arr, &spec)?;
        Ok(survivor(arr, &self.ctx.spec.config))
    }
}

fn spectral_constraints(
    constraints: &[&Constraint],
    arr: &IntersectionArray,
    spec: &Spectrum,
) -> Result<(), String> {
    let p = Params::of(arr);
    for c in constraints {
        if !c.eval_spectral(&p, spec) {
            return Err(format!("constraint: {c}"));
        }
    }
    Ok(())
}

fn survivor(array: IntersectionArray, cfg: &FilterConfig) -> Survivor {
    let report = gate(&array, cfg);
    debug_assert!(report.is_feasible(), "{array}");
    Survivor { array, report }
}

/// Whether `x = n/d` is a root of the characteristic polynomial of a complete
/// array, by the scaled recurrence `Q_(j+1) = (n - a_j d) Q_j - d^2 b_(j-1) c_j Q_(j-1)`
/// with `Q_j = d^j P_j(n/d)`.
pub fn char_poly_vanishes(p: &Params, (n, d): (i128, i128)) -> bool {
    let step = || -> Option<bool> {
        let mut prev: i128 = 1;
        let mut cur = n.checked_sub(p.a(0)? as i128 * d)?;
        for j in 1..=p.diameter() {
            let lin = n.checked_sub((p.a(j)? as i128).checked_mul(d)?)?;
            let off = (p.b(j - 1)? as i128 * p.c(j)? as i128).checked_mul(d.checked_mul(d)?)?;
            let next = lin.checked_mul(cur)?.checked_sub(off.checked_mul(prev)?)?;
            prev = cur;
            cur = next;
        }
        Some(cur == 0)
    };
    step().unwrap_or(true)
}

/// Brute force over `1 <= b_1..b_(D-1) <= k`, `1 <= c_2..c_D <= k`.
fn unpruned_k(spec: &SearchSpec, k: u64) -> Part {
    let d = spec.d;
    let mut counters = Counters::default();
    let mut survivors = Vec::new();
    let free = 2 * (d - 1);
    counters.generated = k.pow(free as u32);
    let mut b = vec![k; d];
    let mut c = vec![1; d];
    let mut digits = vec![1u64; free];
    let array_constraints: Vec<&Constraint> = spec
        .constraints
        .iter()
        .filter(|c| !c.is_spectral())
        .collect();
    let spectral: Vec<&Constraint> = spec
        .constraints
        .iter()
        .filter(|c| c.is_spectral())
        .collect();
    loop {
        for i in 1..d {
            b[i] = digits[2 * (i - 1)];
            c[i] = digits[2 * (i - 1) + 1];
        }
        if let Some(reason) = unpruned_candidate(spec, &b, &c, &array_constraints, &mut counters) {
            counters.reject(reason);
        } else {
            let arr = IntersectionArray::new(&b, &c).expect("valid array");
            counters.gated += 1;
            let outcome = screen(&arr, &spec.config)
                .map_err(String::from)
                .and_then(|s| spectral_constraints(&spectral, &arr, &s));
            match outcome {
                Ok(()) => {
                    counters.survivors += 1;
                    survivors.push(survivor(arr, &spec.config));
                }
                Err(reason) => counters.reject(&reason),
            }
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == free {
                return (survivors, counters);
            }
            if digits[pos] < k {
                digits[pos] += 1;
                break;
            }
            digits[pos] = 1;
            pos += 1;
        }
    }
}

/// Structural and array-level checks for one box point, `None` if it goes
/// on to the gate.
fn unpruned_candidate(
    spec: &SearchSpec,
    b: &[u64],
    c: &[u64],
    constraints: &[&Constraint],
    counters: &mut Counters,
) -> Option<&'static str> {
    let d = spec.d;
    let k = b[0];
    let nonneg = (1..d).all(|i| b[i] + c[i - 1] <= k) && c[d - 1] <= k;
    if !nonneg {
        return Some("negative a_i");
    }
    let p = Params::new(d, b, c);
    if !Filter::Monotone.eval_params(&p).expect("complete").passed() {
        return Some("monotone");
    }
    counters.structurally_valid += 1;
    for f in spec.config.array_filters() {
        if !f.eval_params(&p).expect("complete").passed() {
            return Some(f.name());
        }
    }
    if constraints
        .iter()
        .any(|con| !con.eval_params(&p).expect("complete"))
    {
        return Some("constraint");
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(s: &str) -> IntersectionArray {
        s.parse().unwrap()
    }

    #[test]
    fn divisors_in_range() {
        let spf = smallest_prime_factors(100);
        let ctx_factor = |mut n: u64| {
            let mut out: Factors = Vec::new();
            while n > 1 {
                let p = spf[n as usize] as u64;
                let mut e = 0;
                while n % p == 0 {
                    n /= p;
                    e += 1;
                }
                out.push((p, e));
            }
            out
        };
        let f = mul_factors(&ctx_factor(12), &ctx_factor(6));
        assert_eq!(
            divisors_in(&f, 1, 72),
            vec![1, 2, 3, 4, 6, 8, 9, 12, 18, 24, 36, 72]
        );
        assert_eq!(divisors_in(&f, 5, 20), vec![6, 8, 9, 12, 18]);
        assert_eq!(div_factors(&f, &ctx_factor(8)), ctx_factor(9));
        assert!(divisors_in(&f, 30, 20).is_empty());
    }

    #[test]
    fn char_poly_root_test() {
        let a = arr("12,6,2;1,4,9");
        let p = Params::of(&a);
        for r in [12, 5, 0, -3] {
            assert!(char_poly_vanishes(&p, (r, 1)));
        }
        assert!(!char_poly_vanishes(&p, (4, 1)));
        assert!(!char_poly_vanishes(&p, (5, 2)));
    }

    #[test]
    fn empty_range_has_zero_counters() {
        let spec = SearchSpec::new("empty", 3, 10, 9);
        let r = enumerate(&spec);
        assert!(r.survivors.is_empty());
        assert_eq!(r.counters, Counters::default());
    }

    #[test]
    fn small_d3_search_contains_known_arrays() {
        let spec = SearchSpec::new("small", 3, 1, 6);
        let r = enumerate(&spec);
        let found = r.arrays();
        for s in ["3,2,1;1,2,3", "5,2,1;1,2,5", "6,5,1;1,5,6", "2,1,1;1,1,2"] {
            assert!(found.contains(&arr(s)), "{s} missing from {found:?}");
        }
        // Taylor pattern with m1 = 21/5
        assert!(!found.contains(&arr("6,3,1;1,3,6")));
        assert!(r.survivors.iter().all(|s| s.report.is_feasible()));
        let c = &r.counters;
        assert!(c.survivors <= c.gated && c.gated <= c.structurally_valid);
        assert!(c.structurally_valid <= c.generated);
    }

    #[test]
    fn pruned_matches_unpruned_small() {
        for d in 1..=4 {
            let spec = SearchSpec::new("small", d, 1, if d <= 2 { 14 } else { 9 });
            let a = enumerate_with(&spec, Execution::Serial).arrays();
            let b = enumerate_unpruned_with(&spec, Execution::Serial).arrays();
            assert_eq!(a, b, "D = {d}");
        }
    }

    #[test]
    fn serial_and_parallel_agree() {
        let spec = SearchSpec::new("small", 3, 1, 12);
        let mut x = Vec::new();
        let mut y = Vec::new();
        enumerate_with(&spec, Execution::Serial)
            .write_jsonl(&mut x)
            .unwrap();
        enumerate_with(&spec, Execution::Parallel)
            .write_jsonl(&mut y)
            .unwrap();
        assert_eq!(x, y);
        assert!(!x.is_empty());
    }
}
