//! Known distance-regular graphs against the array-only machinery.

use std::cmp::Ordering;

use drg_core::graphs::{self, certify_drg, Graph};
use drg_core::krein::krein_parameters;
use drg_core::spectral::{certified_sign, Interval, Q};
use drg_core::{gate, FilterConfig, IntersectionArray, Spectrum};
use nalgebra::DMatrix;
use num::{BigInt, One, ToPrimitive, Zero};

struct Fixture {
    name: &'static str,
    graph: Graph,
    array: &'static str,
}

fn fixtures() -> Vec<Fixture> {
    let fx = |name, graph, array| Fixture { name, graph, array };
    vec![
        fx("pentagon", graphs::pentagon(), "2,1;1,1"),
        fx("hexagon", graphs::cycle(6).unwrap(), "2,1,1;1,1,2"),
        fx("heptagon", graphs::cycle(7).unwrap(), "2,1,1;1,1,1"),
        fx("petersen", graphs::petersen(), "3,2;1,1"),
        fx("icosahedron", graphs::icosahedron(), "5,2,1;1,2,5"),
        fx("3-cube", graphs::hypercube(3).unwrap(), "3,2,1;1,2,3"),
        fx("4-cube", graphs::hypercube(4).unwrap(), "4,3,2,1;1,2,3,4"),
        fx("J(7,3)", graphs::johnson(7, 3).unwrap(), "12,6,2;1,4,9"),
        fx(
            "halved 7-cube",
            graphs::halved_cube(7).unwrap(),
            "21,10,3;1,6,15",
        ),
        fx(
            "line graph of petersen",
            graphs::line_graph(&graphs::petersen()),
            "4,2,1;1,1,4",
        ),
        fx(
            "hadamard 4",
            graphs::hadamard_graph(2).unwrap(),
            "4,3,2,1;1,2,3,4",
        ),
        fx(
            "hadamard 8",
            graphs::hadamard_graph(3).unwrap(),
            "8,7,4,1;1,4,7,8",
        ),
    ]
}

fn array(f: &Fixture) -> IntersectionArray {
    f.array.parse().unwrap()
}

fn width() -> Q {
    Q::new(BigInt::one(), BigInt::from(1_000_000))
}

fn int(n: usize) -> Q {
    Q::from_integer(BigInt::from(n))
}

#[test]
fn certification_recovers_the_array() {
    for f in fixtures() {
        let got = certify_drg(&f.graph);
        assert_eq!(got.array(), Some(&array(&f)), "{}", f.name);
    }
}

#[test]
fn fixtures_pass_the_gate() {
    let cfg = FilterConfig::default();
    for f in fixtures() {
        let r = gate(&array(&f), &cfg);
        assert!(r.is_feasible(), "{}: {:?}", f.name, r.first_failure());
    }
}

#[test]
fn spectrum_matches_the_adjacency_matrix() {
    for f in fixtures() {
        let spec = Spectrum::of(&array(&f)).unwrap();
        let clusters = f.graph.spectrum(1e-6);
        assert_eq!(clusters.len(), spec.eigenvalues.len(), "{}", f.name);
        for (i, theta) in spec.eigenvalues.iter().enumerate() {
            let m = spec.multiplicities[i]
                .positive_integer()
                .unwrap_or_else(|| panic!("{}: m{i} not integral", f.name));
            match theta.rational() {
                Some(t) => {
                    assert_eq!(
                        f.graph.eigenspace_dimension(t),
                        m as usize,
                        "{} theta{i}",
                        f.name
                    );
                }
                None => {
                    let (lo, hi) = theta.enclose(&width()).to_f64();
                    let (x, mult) = clusters[i];
                    assert!(lo - 1e-9 <= x && x <= hi + 1e-9, "{} theta{i}", f.name);
                    assert_eq!(mult, m as usize, "{} theta{i}", f.name);
                }
            }
        }
    }
}

#[test]
fn multiplicity_moments() {
    for f in fixtures() {
        let arr = array(&f);
        let spec = Spectrum::of(&arr).unwrap();
        let v = arr.derived_counts().v;
        let k = Q::from_integer(BigInt::from(arr.k()));
        let ms: Vec<Q> = spec
            .integral_multiplicities()
            .unwrap()
            .into_iter()
            .map(|m| int(m as usize))
            .collect();
        assert_eq!(ms.iter().sum::<Q>(), v, "{}", f.name);
        if spec.is_rational() {
            let ts: Vec<&Q> = spec
                .eigenvalues
                .iter()
                .map(|t| t.rational().unwrap())
                .collect();
            let s1: Q = ms.iter().zip(&ts).map(|(m, t)| m * *t).sum();
            let s2: Q = ms.iter().zip(&ts).map(|(m, t)| m * *t * *t).sum();
            assert!(s1.is_zero(), "{}", f.name);
            assert_eq!(s2, &v * &k, "{}", f.name);
        } else {
            let ts: Vec<f64> = spec.eigenvalues.iter().map(|t| t.to_f64()).collect();
            let ms: Vec<f64> = ms.iter().map(|m| m.to_f64().unwrap()).collect();
            let s1: f64 = ms.iter().zip(&ts).map(|(m, t)| m * t).sum();
            let s2: f64 = ms.iter().zip(&ts).map(|(m, t)| m * t * t).sum();
            let vk = (&v * &k).to_f64().unwrap();
            assert!(s1.abs() < 1e-9, "{}: {s1}", f.name);
            assert!((s2 - vk).abs() < 1e-9 * vk, "{}: {s2}", f.name);
        }
    }
}

#[test]
fn valencies_match_distance_layers() {
    for f in fixtures() {
        let counts = array(&f).derived_counts();
        let dist = f.graph.distance_matrix().unwrap();
        for row in &dist {
            for (i, ki) in counts.kseq.iter().enumerate() {
                let layer = row.iter().filter(|&&d| d == i).count();
                assert_eq!(int(layer), *ki, "{} k{i}", f.name);
            }
        }
        assert_eq!(int(f.graph.n()), counts.v, "{}", f.name);
    }
}

#[test]
fn p_numbers_match_triangle_counts() {
    for f in fixtures() {
        let arr = array(&f);
        let p = arr.p_numbers();
        let d = arr.diameter();
        let dist = f.graph.distance_matrix().unwrap();
        let n = f.graph.n();
        for x in 0..n {
            for y in 0..n {
                let i = dist[x][y];
                let mut count = vec![vec![0usize; d + 1]; d + 1];
                for z in 0..n {
                    count[dist[x][z]][dist[y][z]] += 1;
                }
                for j in 0..=d {
                    for h in 0..=d {
                        assert_eq!(
                            int(count[j][h]),
                            *p.get(i, j, h),
                            "{} p^{i}_({j},{h})",
                            f.name
                        );
                    }
                }
            }
        }
    }
}

/// Primitive idempotents of the adjacency matrix, one per distinct eigenvalue
/// in descending order.
fn idempotents(g: &Graph, thetas: &[f64]) -> Vec<DMatrix<f64>> {
    let eig = g.adjacency_f64().symmetric_eigen();
    let n = g.n();
    thetas
        .iter()
        .map(|&t| {
            let mut e = DMatrix::zeros(n, n);
            for (c, &x) in eig.eigenvalues.iter().enumerate() {
                if (x - t).abs() < 1e-6 {
                    let u = eig.eigenvectors.column(c);
                    e += &u * u.transpose();
                }
            }
            e
        })
        .collect()
}

#[test]
fn krein_parameters_match_graph_idempotents() {
    for f in fixtures() {
        let arr = array(&f);
        let counts = arr.derived_counts();
        let spec = Spectrum::of(&arr).unwrap();
        let q = krein_parameters(&spec, &counts).unwrap();
        let thetas: Vec<f64> = spec.eigenvalues.iter().map(|t| t.to_f64()).collect();
        let es = idempotents(&f.graph, &thetas);
        let v = f.graph.n() as f64;
        let d = arr.diameter();
        for k in 0..=d {
            let mk = es[k].trace();
            for i in 0..=d {
                for j in 0..=d {
                    let sum: f64 = (0..f.graph.n() * f.graph.n())
                        .map(|x| es[i][x] * es[j][x] * es[k][x])
                        .sum();
                    let expected = v * sum / mk;
                    let got = q.entry(k, i, j).to_f64();
                    assert!(
                        (got - expected).abs() < 1e-8 * expected.abs().max(1.0),
                        "{} q^{k}_({i},{j}): {got} vs {expected}",
                        f.name
                    );
                }
            }
        }
    }
}

#[test]
fn standard_sequence_sign_changes_follow_eigenvalue_rank() {
    for f in fixtures() {
        let spec = Spectrum::of(&array(&f)).unwrap();
        for (j, s) in spec.standard_sequences.iter().enumerate() {
            assert_eq!(s.sign_changes(), j, "{} theta{j}", f.name);
        }
    }
}

#[test]
fn terminal_identity_holds_only_at_eigenvalues() {
    for f in fixtures() {
        let spec = Spectrum::of(&array(&f)).unwrap();
        for s in &spec.standard_sequences {
            assert!(s.terminal_identity_holds(), "{}", f.name);
        }
        let s1 = &spec.standard_sequences[1];
        let one = Interval::point(Q::one());
        let shifted = certified_sign(&[&s1.theta], |b| {
            Some(s1.terminal.eval_interval(&(&b[0] + &one)))
        });
        // the hexagon has theta1 + 1 = k
        let lands_on_eigenvalue = s1.theta.rational().is_some_and(|t| {
            let t1 = t + Q::one();
            spec.eigenvalues.iter().any(|e| e.rational() == Some(&t1))
        });
        assert_eq!(
            shifted == Ordering::Equal,
            lands_on_eigenvalue,
            "{}",
            f.name
        );
    }
}

#[test]
fn distance_two_graph_of_the_icosahedron_is_an_icosahedron() {
    let g = graphs::distance_i_graph(&graphs::icosahedron(), 2).unwrap();
    let a = certify_drg(&g).array().cloned().unwrap();
    assert_eq!(a.to_string(), "5,2,1;1,2,5");
    assert!(a.is_taylor());
}

#[test]
fn family_structure_flags() {
    assert!(graphs::is_bipartite(&graphs::hypercube(4).unwrap()));
    assert!(graphs::is_antipodal(&graphs::icosahedron()));
    assert!(!graphs::is_bipartite(&graphs::johnson(7, 3).unwrap()));
    let hadamard = graphs::hadamard_graph(3).unwrap();
    assert!(graphs::is_bipartite(&hadamard) && graphs::is_antipodal(&hadamard));
}

#[test]
fn known_arrays_without_fixture_graphs_are_feasible() {
    let cfg = FilterConfig::default();
    for s in ["10,6,4;1,2,5", "10,6,4,1;1,2,6,10"] {
        let arr: IntersectionArray = s.parse().unwrap();
        assert!(gate(&arr, &cfg).is_feasible(), "{s}");
        let spec = Spectrum::of(&arr).unwrap();
        assert!(spec.integral_multiplicities().is_some(), "{s}");
        assert!(spec.multiplicities.iter().all(|m| m.to_f64() > 0.0));
    }
}
