//! Dense exact linear algebra over the rationals.

use num::{One, Zero};

use crate::Q;

pub type QMatrix = Vec<Vec<Q>>;

pub fn q(x: i64) -> Q {
    Q::from_integer(x.into())
}

pub fn from_ints<T: Copy + Into<i64>>(rows: &[Vec<T>]) -> QMatrix {
    rows.iter().map(|r| r.iter().map(|&x| q(x.into())).collect()).collect()
}

pub fn identity(n: usize) -> QMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
}

pub fn transpose(a: &QMatrix, n_cols: usize) -> QMatrix {
    (0..n_cols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_mul(a: &QMatrix, b: &QMatrix, b_cols: usize) -> QMatrix {
    a.iter()
        .map(|row| {
            (0..b_cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .fold(Q::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref_in_place(m: &mut QMatrix) -> Vec<usize> {
    let n_cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n_cols {
        let Some(k) = (r..m.len()).find(|&k| !m[k][c].is_zero()) else {
            continue;
        };
        m.swap(r, k);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (k, row) in m.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    rref_in_place(&mut m).len()
}

/// A solution of `a x = b`, if one exists (free variables set to zero).
pub fn solve(a: &QMatrix, b: &[Q]) -> Option<Vec<Q>> {
    let n_cols = a.first().map_or(0, Vec::len);
    let mut aug: QMatrix = a
        .iter()
        .zip(b)
        .map(|(row, y)| row.iter().cloned().chain(std::iter::once(y.clone())).collect())
        .collect();
    let pivots = rref_in_place(&mut aug);
    if pivots.last() == Some(&n_cols) {
        return None;
    }
    let mut x = vec![Q::zero(); n_cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][n_cols].clone();
    }
    Some(x)
}

/// Coefficients expressing `v` in terms of the rows of `basis`.
pub fn express_in_span(basis: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    let a = transpose(&basis.to_vec(), v.len());
    solve(&a, v)
}

pub fn inverse(a: &QMatrix) -> Option<QMatrix> {
    let n = a.len();
    let mut aug: QMatrix = a
        .iter()
        .zip(identity(n))
        .map(|(row, e)| row.iter().cloned().chain(e).collect())
        .collect();
    let pivots = rref_in_place(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn trace(a: &QMatrix) -> Q {
    a.iter().enumerate().fold(Q::zero(), |acc, (i, row)| acc + &row[i])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_system() {
        let a = from_ints(&[vec![1i64, 2], vec![3, 4]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv, 2), identity(2));
        assert_eq!(solve(&a, &[q(5), q(11)]).unwrap(), vec![q(1), q(2)]);
        assert_eq!(rank(&from_ints(&[vec![1i64, 2], vec![2, 4]])), 1);
        assert!(inverse(&from_ints(&[vec![1i64, 2], vec![2, 4]])).is_none());
        assert!(solve(&from_ints(&[vec![1i64, 2], vec![2, 4]]), &[q(1), q(1)]).is_none());
        let basis = from_ints(&[vec![1i64, 0, 1], vec![0, 1, 1]]);
        assert_eq!(express_in_span(&basis, &[q(2), q(3), q(5)]).unwrap(), vec![q(2), q(3)]);
        assert!(express_in_span(&basis, &[q(2), q(3), q(4)]).is_none());
    }
}
