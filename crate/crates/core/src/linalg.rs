//! Dense linear algebra over the rationals.

use num::{One, Zero};

use crate::spectral::Q;

/// Row-reduces `m` in place to reduced echelon form and returns the pivot
/// columns.
fn reduce(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let (top, bottom) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&mut a[i], &b[0])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&mut b[0], &a[r])
                };
                for (x, y) in top.iter_mut().zip(bottom) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Q>]) -> usize {
    let mut work = m.to_vec();
    reduce(&mut work).len()
}

/// Dimension of the null space of a square or rectangular matrix.
pub fn nullity(m: &[Vec<Q>]) -> usize {
    m.first().map_or(0, Vec::len) - rank(m)
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let pivots = reduce(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `m x = rhs`, `None` if `m` is singular.
pub fn solve(m: &[Vec<Q>], rhs: &[Q]) -> Option<Vec<Q>> {
    let inv = inverse(m)?;
    Some(mat_vec(&inv, rhs))
}

pub fn mat_vec(m: &[Vec<Q>], x: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::poly::{q, qr};

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect()
    }

    #[test]
    fn solves_small_system() {
        let m = mat(&[&[2, 1], &[1, 3]]);
        let x = solve(&m, &[q(3), q(5)]).unwrap();
        assert_eq!(x, vec![qr(4, 5), qr(7, 5)]);
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = mat(&[&[1, 2], &[2, 4]]);
        assert!(inverse(&m).is_none());
        assert_eq!(nullity(&m), 1);
    }

    #[test]
    fn nullity_of_cycle_shift() {
        // C4 adjacency minus 2I has the all-ones vector in its kernel
        let m = mat(&[
            &[-2, 1, 0, 1],
            &[1, -2, 1, 0],
            &[0, 1, -2, 1],
            &[1, 0, 1, -2],
        ]);
        assert_eq!(nullity(&m), 1);
        assert_eq!(rank(&mat(&[&[0, 0], &[0, 0]])), 0);
    }
}
