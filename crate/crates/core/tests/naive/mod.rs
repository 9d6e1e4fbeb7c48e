//! A diameter-three feasibility gate coded from the definitions, sharing
//! nothing with the library's checks.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, SymmetricEigen};
use num::rational::Ratio;
use num::Zero;

const EPS: f64 = 1e-9;

type R = Ratio<i128>;

/// `L[i][j][h] = p^h_ij` from `L_(i+1) = (L_1 L_i - b_(i-1) L_(i-1) - a_i L_i) / c_(i+1)`.
fn p_numbers(b: [i128; 3], c: [i128; 4], k: i128) -> Option<Vec<Vec<Vec<R>>>> {
    let a = |i: usize| k - c[i] - if i < 3 { b[i] } else { 0 };
    let bb = |i: usize| if i < 3 { b[i] } else { 0 };
    let n = 4;
    let mut l1 = vec![vec![R::zero(); n]; n];
    for j in 0..n {
        if j > 0 {
            l1[j][j - 1] = R::from(bb(j - 1));
        }
        l1[j][j] = R::from(a(j));
        if j + 1 < n {
            l1[j][j + 1] = R::from(c[j + 1]);
        }
    }
    let mul = |x: &Vec<Vec<R>>, y: &Vec<Vec<R>>| {
        let mut z = vec![vec![R::zero(); n]; n];
        for i in 0..n {
            for t in 0..n {
                for j in 0..n {
                    z[i][j] += x[i][t] * y[t][j];
                }
            }
        }
        z
    };
    let id: Vec<Vec<R>> = (0..n)
        .map(|i| (0..n).map(|j| R::from((i == j) as i128)).collect())
        .collect();
    let mut ls = vec![id, l1.clone()];
    for i in 1..3 {
        let prod = mul(&l1, &ls[i]);
        let mut next = vec![vec![R::zero(); n]; n];
        for r in 0..n {
            for s in 0..n {
                let x =
                    prod[r][s] - R::from(bb(i - 1)) * ls[i - 1][r][s] - R::from(a(i)) * ls[i][r][s];
                next[r][s] = x / R::from(c[i + 1]);
            }
        }
        ls.push(next);
    }
    let ok = ls
        .iter()
        .flatten()
        .flatten()
        .all(|x| x.is_integer() && *x >= R::zero());
    ok.then_some(ls)
}

fn is_int(x: f64) -> bool {
    (x - x.round()).abs() < 1e-6
}

/// All core conditions and default filters for `{k, b1, b2; 1, c2, c3}`,
/// with floating-point spectra and tolerances.
pub fn naive_feasible(k: i128, b1: i128, b2: i128, c2: i128, c3: i128) -> bool {
    let b = [k, b1, b2];
    let c = [0, 1, c2, c3];
    let a = [0, k - b1 - 1, k - b2 - c2, k - c3];
    let (a1, a2, a3) = (a[1], a[2], a[3]);
    if a.iter().any(|&x| x < 0) {
        return false;
    }
    // monotone with b_i >= c_j for i + j <= 3
    if !(k > b1 && b1 >= b2 && c2 <= c3 && b1 >= c2 && b2 >= 1) {
        return false;
    }
    if 3 * b1 < k + 1 || 2 * (a1 + 1) - (c2 - 1) > k {
        return false;
    }
    if a1 > 0 {
        let s1 = a1 + a2;
        let s2 = a2 + a3;
        if s1 <= a1 || s2 < a1 || (s2 == a1 && !(a3 == 0 && a2 == a1 && b2 == 1)) {
            return false;
        }
        if a2 < b2.min(c2) {
            return false;
        }
    }
    let bipartite = a1 == 0 && a2 == 0 && a3 == 0;
    let taylor = b2 == 1 && c3 == k && b1 == c2;
    if (2 * c2 > k || 2 * c2 * c3 > k * b1) && !(bipartite || taylor) {
        return false;
    }
    if 2 * a1 >= k - 2 && c2 >= 2 && b2 >= c2 {
        return false;
    }
    if c2 == 1 && k % (a1 + 1) != 0 {
        return false;
    }

    if k * b1 % c2 != 0 || k * b1 / c2 * b2 % c3 != 0 {
        return false;
    }
    let kk = [1, k, k * b1 / c2, k * b1 / c2 * b2 / c3];
    if (1..4).any(|i| kk[i] * a[i] % 2 != 0) {
        return false;
    }
    let v: i128 = kk.iter().sum();

    let mut t = DMatrix::zeros(4, 4);
    for i in 0..4 {
        t[(i, i)] = a[i] as f64;
        if i < 3 {
            let off = ((b[i] * c[i + 1]) as f64).sqrt();
            t[(i, i + 1)] = off;
            t[(i + 1, i)] = off;
        }
    }
    let mut th: Vec<f64> = SymmetricEigen::new(t).eigenvalues.iter().copied().collect();
    th.sort_by(|x, y| y.total_cmp(x));
    if th.windows(2).any(|w| w[0] - w[1] < 1e-7) {
        return false;
    }
    let u: Vec<[f64; 4]> = th
        .iter()
        .map(|&x| {
            let mut s = [1.0, x / k as f64, 0.0, 0.0];
            for i in 1..3 {
                s[i + 1] = ((x - a[i] as f64) * s[i] - c[i] as f64 * s[i - 1]) / b[i] as f64;
            }
            s
        })
        .collect();
    let m: Vec<f64> = u
        .iter()
        .map(|s| v as f64 / (0..4).map(|i| kk[i] as f64 * s[i] * s[i]).sum::<f64>())
        .collect();
    if m.iter().any(|&x| !is_int(x) || x < 0.5) {
        return false;
    }
    let Some(ls) = p_numbers(b, c, k) else {
        return false;
    };
    if (0..4).any(|i| *ls[i][i][0].numer() != kk[i]) {
        return false;
    }
    let vf = v as f64;
    for x in 0..4 {
        for y in 0..4 {
            for z in 0..4 {
                let terms: Vec<f64> = (0..4)
                    .map(|l| kk[l] as f64 * u[x][l] * u[y][l] * u[z][l])
                    .collect();
                let q = m[x] * m[y] / vf * terms.iter().sum::<f64>();
                let scale = m[x] * m[y] / vf * terms.iter().map(|t| t.abs()).sum::<f64>();
                if q < -1e-7 * scale.max(1.0) {
                    return false;
                }
            }
        }
    }

    let (t1, t2, t3) = (th[1], th[2], th[3]);
    let kf = k as f64;
    let fb1 = b1 as f64;
    let fb2 = b2 as f64;
    if a3 == 0 && !(t1 > EPS && t2 <= -1.0 + EPS && t2 >= -fb2 - EPS && t3 <= -fb2 + EPS) {
        return false;
    }
    for j in 1..4 {
        if 2.0 * m[j] < kf {
            let tj = th[j];
            if j == 2 || !is_int(tj) {
                return false;
            }
            let ti = tj.round() as i128;
            if ti == -1 || b1 % (ti + 1) != 0 {
                return false;
            }
        }
    }
    if m[1] <= kf - 2.0 && ((t1 + 1.0).abs() < EPS || t2 < -1.0 - fb1 / (t1 + 1.0) - EPS) {
        return false;
    }
    if m[3] <= kf - 2.0 && ((t3 + 1.0).abs() < EPS || t2 > -1.0 - fb1 / (t3 + 1.0) + EPS) {
        return false;
    }
    let af = a1 as f64;
    let root = (af + (af * af + 4.0 * kf).sqrt()) / 2.0;
    t1 >= root.min(a3 as f64) - EPS
}

/// Every diameter-three array with `2 <= k <= k_max` passing [`naive_feasible`].
pub fn naive_survivors(k_max: u64) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for k in 2..=k_max as i128 {
        for b1 in 1..k {
            for b2 in 1..=b1 {
                for c2 in 1..=(k - b2).min(b1) {
                    for c3 in c2..=k {
                        if naive_feasible(k, b1, b2, c2, c3) {
                            out.insert(format!("{k},{b1},{b2};1,{c2},{c3}"));
                        }
                    }
                }
            }
        }
    }
    out
}
