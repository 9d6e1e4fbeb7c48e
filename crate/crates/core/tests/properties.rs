//! Algebraic identities and gate invariants over random and enumerated arrays.

use std::cmp::Ordering;
use std::sync::OnceLock;

use drg_core::feasibility::{gate_with_order, screen, Params};
use drg_core::krein::krein_parameters;
use drg_core::search::{enumerate, SearchSpec};
use drg_core::spectral::{interlacing_check, AlgebraicScalar, Q};
use drg_core::{gate, Filter, FilterConfig, IntersectionArray, Spectrum};
use num::{BigInt, Signed, Zero};
use proptest::prelude::*;
use proptest::sample::Index;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Arrays satisfying only the constructor's shape rules.
fn any_array() -> impl Strategy<Value = IntersectionArray> {
    (2u64..=24, 2usize..=4)
        .prop_flat_map(|(k, d)| {
            (
                Just(k),
                Just(d),
                prop::collection::vec((0u64..1 << 20, 0u64..1 << 20), d),
            )
        })
        .prop_map(|(k, _, seeds)| {
            let mut b = vec![k];
            let mut c = Vec::new();
            for (i, &(s, t)) in seeds.iter().enumerate().skip(1) {
                let ci = if i == 1 { 1 } else { 1 + s % (k - 1) };
                c.push(ci);
                b.push(1 + t % (k - ci));
            }
            c.push(1 + seeds[0].0 % k);
            IntersectionArray::new(&b, &c).expect("shape rules hold by construction")
        })
}

/// Arrays passing the four core conditions, diameters three and four.
fn pool() -> &'static [IntersectionArray] {
    static POOL: OnceLock<Vec<IntersectionArray>> = OnceLock::new();
    POOL.get_or_init(|| {
        let d3 = SearchSpec::new("pool", 3, 2, 20).with_config(FilterConfig::core_only());
        let d4 = SearchSpec::new("pool", 4, 2, 10).with_config(FilterConfig::core_only());
        let mut all = enumerate(&d3).arrays();
        all.extend(enumerate(&d4).arrays());
        assert!(all.len() > 50);
        all
    })
}

fn pooled() -> impl Strategy<Value = IntersectionArray> {
    any::<Index>().prop_map(|i| i.get(pool()).clone())
}

fn mixed() -> impl Strategy<Value = IntersectionArray> {
    prop_oneof![any_array(), pooled()]
}

fn config_from(bits: u16) -> FilterConfig {
    let mut cfg = FilterConfig::core_only();
    for (i, f) in Filter::ALL.into_iter().enumerate() {
        cfg.set(f, bits >> i & 1 == 1);
    }
    cfg
}

fn check_summary(
    arr: &IntersectionArray,
    cfg: &FilterConfig,
    order: &[Filter],
) -> Vec<(String, bool)> {
    let mut v: Vec<_> = gate_with_order(arr, cfg, order)
        .checks
        .iter()
        .map(|c| (c.name.clone(), c.pass))
        .collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn p_number_row_sums_and_symmetry(arr in mixed()) {
        let p = arr.p_numbers();
        let counts = arr.derived_counts();
        let d = arr.diameter();
        for i in 0..=d {
            for j in 0..=d {
                let row: Q = (0..=d).map(|h| p.get(i, j, h).clone()).sum();
                prop_assert_eq!(&row, &counts.kseq[j]);
                for h in 0..=d {
                    prop_assert_eq!(p.get(i, j, h), p.get(i, h, j));
                    prop_assert_eq!(
                        &counts.kseq[i] * p.get(i, j, h),
                        &counts.kseq[j] * p.get(j, i, h)
                    );
                }
            }
            if i > 0 {
                prop_assert_eq!(p.get(i, 1, i - 1), &q(arr.c(i) as i64));
                prop_assert_eq!(p.get(i, 1, i), &q(arr.a(i)));
            }
            if i < d {
                prop_assert_eq!(p.get(i, 1, i + 1), &q(arr.b(i) as i64));
            }
        }
    }

    #[test]
    fn p_next_two_formula(arr in mixed()) {
        let p = arr.p_numbers();
        let d = arr.diameter();
        let (a1, c2) = (arr.a(1), arr.c(2) as i64);
        for i in 1..d {
            let lhs = p.get(i + 1, i, 2) * q(c2);
            let rhs = q(arr.c(i + 1) as i64 * (arr.a(i) + arr.a(i + 1) - a1));
            prop_assert_eq!(lhs, rhs, "i = {}", i);
        }
    }

    #[test]
    fn a_sum_matches_p_next_two_sign(arr in mixed()) {
        prop_assume!(arr.basic_valid().passed() && arr.diameter() >= 3 && arr.a(1) > 0);
        let p = arr.p_numbers();
        for i in 1..arr.diameter() {
            let nonneg = !p.get(i + 1, i, 2).is_negative();
            prop_assert_eq!(nonneg, arr.a(i) + arr.a(i + 1) >= arr.a(1), "i = {}", i);
        }
    }

    #[test]
    fn b1_bound_follows_from_local_non_adjacency(arr in mixed()) {
        prop_assume!(arr.diameter() >= 3);
        let holds = |f: Filter| f.eval(&arr, None).passed();
        if holds(Filter::Monotone) && holds(Filter::LocalNonAdjacent) {
            prop_assert!(holds(Filter::B1LowerBound));
            prop_assert!(3 * arr.b(1) >= arr.k() + 1);
        }
    }

    #[test]
    fn enabling_filters_never_admits_more(arr in mixed(), base in any::<u16>(), extra in any::<u16>()) {
        let small = config_from(base);
        let large = config_from(base | extra);
        if gate(&arr, &large).is_feasible() {
            prop_assert!(gate(&arr, &small).is_feasible());
        }
        if gate(&arr, &small).is_feasible() {
            prop_assert!(gate(&arr, &FilterConfig::core_only()).is_feasible());
        }
    }

    #[test]
    fn filter_order_does_not_matter(arr in mixed(), bits in any::<u16>(), order in Just(Filter::ALL.to_vec()).prop_shuffle()) {
        let cfg = config_from(bits);
        let fixed = gate(&arr, &cfg);
        let shuffled = gate_with_order(&arr, &cfg, &order);
        prop_assert_eq!(fixed.is_feasible(), shuffled.is_feasible());
        prop_assert_eq!(
            check_summary(&arr, &cfg, &Filter::ALL),
            check_summary(&arr, &cfg, &order)
        );
    }

    #[test]
    fn screen_agrees_with_gate(arr in mixed(), bits in any::<u16>()) {
        let cfg = config_from(bits);
        prop_assert_eq!(screen(&arr, &cfg).is_ok(), gate(&arr, &cfg).is_feasible());
    }

    #[test]
    fn filter_on_partial_params_agrees_with_full_array(arr in mixed()) {
        let p = Params::of(&arr);
        for f in Filter::ALL.into_iter().filter(|f| !f.is_spectral()) {
            if let Some(v) = f.eval_params(&p) {
                prop_assert_eq!(v.passed(), f.eval(&arr, None).passed(), "{}", f);
            }
        }
    }

    #[test]
    fn krein_tensor_is_symmetric_and_solves_its_system(arr in pooled()) {
        let counts = arr.derived_counts();
        let Ok(spec) = Spectrum::with_counts(&arr, &counts) else { return Ok(()) };
        let Some(ms) = spec.integral_multiplicities() else { return Ok(()) };
        let tensor = krein_parameters(&spec, &counts).unwrap();
        let d = arr.diameter();
        let n = d + 1;
        let mut q = vec![0.0; n * n * n];
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let e = tensor.entry(k, i, j);
                    if i < j {
                        prop_assert_eq!(&e, &tensor.entry(k, j, i));
                    }
                    q[(k * n + i) * n + j] = e.to_f64();
                }
            }
        }
        // sum_l m_l u_t(theta_l) q^l_ij = m_i m_j u_t(theta_i) u_t(theta_j)
        let m: Vec<f64> = ms.iter().map(|&x| x as f64).collect();
        let u: Vec<Vec<f64>> = spec
            .standard_sequences
            .iter()
            .map(|s| s.terms.iter().map(|p| p.eval_f64(s.theta.to_f64())).collect())
            .collect();
        for i in 0..=d {
            for j in 0..=d {
                for t in 0..=d {
                    let lhs: f64 = (0..n).map(|l| m[l] * u[l][t] * q[(l * n + i) * n + j]).sum();
                    let rhs = m[i] * m[j] * u[i][t] * u[j][t];
                    prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.abs().max(1.0), "{} vs {}", lhs, rhs);
                }
            }
        }
        if let Some(exact) = exact_residual(&spec, &tensor, &ms) {
            prop_assert!(exact.is_zero());
        }
    }
}

fn exact_residual(spec: &Spectrum, tensor: &drg_core::krein::KreinTensor, ms: &[u64]) -> Option<Q> {
    let u: Vec<Vec<Q>> = spec
        .standard_sequences
        .iter()
        .map(|s| s.exact_values())
        .collect::<Option<_>>()?;
    let m: Vec<Q> = ms.iter().map(|&x| q(x as i64)).collect();
    let d = spec.diameter();
    let mut worst = Q::zero();
    for i in 0..=d {
        for j in 0..=d {
            for t in 0..=d {
                let lhs: Q = (0..=d)
                    .map(|l| &m[l] * &u[l][t] * tensor.exact(l, i, j).unwrap())
                    .sum();
                let rhs = &m[i] * &m[j] * &u[i][t] * &u[j][t];
                worst = worst.max((lhs - rhs).abs());
            }
        }
    }
    Some(worst)
}

/// Diameter-three survivors up to `k = 40` with the two filters whose
/// conclusions are checked below switched off.
fn d3_survivors() -> &'static [IntersectionArray] {
    static SET: OnceLock<Vec<IntersectionArray>> = OnceLock::new();
    SET.get_or_init(|| {
        let cfg = FilterConfig::default()
            .with(Filter::B1LowerBound, false)
            .with(Filter::A3ZeroEigenvalues, false);
        enumerate(&SearchSpec::new("property", 3, 2, 40).with_config(cfg)).arrays()
    })
}

#[test]
fn b1_bound_holds_on_the_enumerated_set() {
    assert!(!d3_survivors().is_empty());
    for a in d3_survivors() {
        assert!(3 * a.b(1) >= a.k() + 1, "{a}");
    }
}

fn ge(x: &AlgebraicScalar, r: i64) -> bool {
    x.cmp_rational(&q(r)) != Ordering::Less
}

fn le(x: &AlgebraicScalar, r: i64) -> bool {
    x.cmp_rational(&q(r)) != Ordering::Greater
}

#[test]
fn a3_zero_survivors_have_ordered_eigenvalues() {
    let survivors: Vec<_> = d3_survivors().iter().filter(|a| a.a(3) == 0).collect();
    assert!(!survivors.is_empty());
    for a in survivors {
        let spec = Spectrum::of(a).unwrap();
        let t = &spec.eigenvalues;
        let b2 = a.b(2) as i64;
        assert!(t[1].signum() == Ordering::Greater, "{a}");
        assert!(le(&t[2], -1) && ge(&t[2], -b2) && le(&t[3], -b2), "{a}");
        let mut outer = Vec::new();
        for (x, m) in t.iter().zip(spec.integral_multiplicities().unwrap()) {
            outer.extend(std::iter::repeat_n(x.clone(), m as usize));
        }
        let inner = [AlgebraicScalar::integer(-1), AlgebraicScalar::integer(-b2)];
        assert!(interlacing_check(&outer, &inner), "{a}");
    }
}

#[test]
fn interlacing_examples() {
    let ints = |v: &[i64]| {
        v.iter()
            .map(|&x| AlgebraicScalar::integer(x))
            .collect::<Vec<_>>()
    };
    // 0 > -1 breaks the lower bound
    assert!(!interlacing_check(&ints(&[12, 5, 0, -3]), &ints(&[-1, -2])));
    assert!(interlacing_check(&ints(&[12, 5, -1, -3]), &ints(&[-1, -2])));
    assert!(!interlacing_check(&ints(&[4, 2, 0, -2, -4]), &ints(&[5])));
    let t = Spectrum::of(&"5,2,1;1,2,5".parse().unwrap())
        .unwrap()
        .eigenvalues;
    assert!(interlacing_check(&t, &t));
}
