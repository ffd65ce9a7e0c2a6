use super::{ContingencyMatrix, Tableau};
use crate::{Error, Result};

/// Row insertion of `x`; returns the row index of the new box.
fn insert(p: &mut Vec<Vec<usize>>, mut x: usize) -> usize {
    for (i, row) in p.iter_mut().enumerate() {
        match row.iter().position(|&y| y > x) {
            Some(k) => std::mem::swap(&mut row[k], &mut x),
            None => {
                row.push(x);
                return i;
            }
        }
    }
    p.push(vec![x]);
    p.len() - 1
}

/// The RSK correspondence. The two-line array of `m` is read in row-major
/// order, entry `m[i][j]` contributing that many biletters `(i + 1, j + 1)`;
/// bottom letters are row-inserted into `P` and the top letters recorded in
/// `Q`. `P` has the column margin as content and `Q` the row margin.
pub fn rsk(m: &ContingencyMatrix) -> (Tableau, Tableau) {
    let mut p: Vec<Vec<usize>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (i, row) in m.rows().iter().enumerate() {
        for (j, &count) in row.iter().enumerate() {
            for _ in 0..count {
                let r = insert(&mut p, j + 1);
                if r == q.len() {
                    q.push(Vec::new());
                }
                q[r].push(i + 1);
            }
        }
    }
    (Tableau::from_rows_unchecked(p), Tableau::from_rows_unchecked(q))
}

/// Inverse of [`rsk`]; the matrix has as many rows as the largest label of
/// `Q` and as many columns as the largest label of `P`.
pub fn rsk_inverse(p: &Tableau, q: &Tableau) -> Result<ContingencyMatrix> {
    rsk_inverse_sized(p, q, q.max_label(), p.max_label())
}

/// Inverse of [`rsk`] into a matrix of the given size (trailing zero rows or
/// columns are kept).
pub fn rsk_inverse_sized(
    p: &Tableau,
    q: &Tableau,
    n_rows: usize,
    n_cols: usize,
) -> Result<ContingencyMatrix> {
    if p.shape() != q.shape() {
        return Err(Error::ShapeMismatch(format!("{} vs {}", p.shape(), q.shape())));
    }
    if !p.is_semistandard() || !q.is_semistandard() {
        return Err(Error::NotSemistandard);
    }
    if q.max_label() > n_rows || p.max_label() > n_cols {
        return Err(Error::DimensionMismatch(format!(
            "labels exceed a {n_rows}x{n_cols} matrix"
        )));
    }
    let mut pr: Vec<Vec<usize>> = p.rows().to_vec();
    let mut qr: Vec<Vec<usize>> = q.rows().to_vec();
    let mut m = vec![vec![0usize; n_cols]; n_rows];
    while !qr.is_empty() {
        // the largest top letter; equal letters form a horizontal strip, so
        // the one inserted last is the rightmost
        let top = qr.iter().map(|row| *row.last().expect("rows are nonempty")).max().unwrap();
        let r = (0..qr.len())
            .filter(|&k| *qr[k].last().unwrap() == top)
            .max_by_key(|&k| qr[k].len())
            .unwrap();
        qr[r].pop();
        let mut x = pr[r].pop().expect("shapes agree");
        for row in pr[..r].iter_mut().rev() {
            // reverse bump: the largest entry strictly smaller than x
            let k = row.iter().rposition(|&y| y < x).expect("semistandard");
            std::mem::swap(&mut row[k], &mut x);
        }
        if qr[r].is_empty() {
            qr.pop();
            pr.pop();
        }
        m[top - 1][x - 1] += 1;
    }
    Ok(ContingencyMatrix::new(m))
}
