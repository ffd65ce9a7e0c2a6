use std::fmt;

use serde::{Deserialize, Serialize};

use super::Composition;
use crate::{Error, Result};

/// A nonnegative integer matrix; its margins are the compositions it lives
/// between.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ContingencyMatrix {
    rows: Vec<Vec<usize>>,
}

impl ContingencyMatrix {
    pub fn new(rows: Vec<Vec<usize>>) -> Self {
        debug_assert!(rows.windows(2).all(|w| w[0].len() == w[1].len()));
        ContingencyMatrix { rows }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.rows[i][j]
    }

    pub fn row_margin(&self) -> Composition {
        Composition::new(self.rows.iter().map(|r| r.iter().sum()).collect())
    }

    pub fn col_margin(&self) -> Composition {
        Composition::new((0..self.n_cols()).map(|j| self.rows.iter().map(|r| r[j]).sum()).collect())
    }

    pub fn transpose(&self) -> ContingencyMatrix {
        ContingencyMatrix {
            rows: (0..self.n_cols()).map(|j| self.rows.iter().map(|r| r[j]).collect()).collect(),
        }
    }

    pub fn total(&self) -> usize {
        self.rows.iter().flatten().sum()
    }

    /// Parses `"0,1;1,0"` (rows separated by `;`).
    pub fn parse(s: &str) -> Result<Self> {
        let rows: Vec<Vec<usize>> = s
            .split(';')
            .map(|r| {
                r.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<usize>()
                            .map_err(|e| Error::DimensionMismatch(format!("bad entry {x:?}: {e}")))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        if rows.is_empty() || rows.windows(2).any(|w| w[0].len() != w[1].len()) {
            return Err(Error::DimensionMismatch(format!("ragged matrix {s:?}")));
        }
        Ok(ContingencyMatrix { rows })
    }
}

impl fmt::Display for ContingencyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

/// Every nonnegative integer matrix with the given row and column sums, in
/// reverse-lexicographic order of the row-major entry sequence.
pub fn contingency_matrices(rows: &Composition, cols: &Composition) -> Result<Vec<ContingencyMatrix>> {
    if rows.n() != cols.n() {
        return Err(Error::IncomparableSizes(rows.n(), cols.n()));
    }
    let mut out = Vec::new();
    let mut remaining = cols.parts().to_vec();
    let mut acc = Vec::with_capacity(rows.len());
    fill_rows(rows.parts(), &mut remaining, &mut acc, &mut out);
    Ok(out)
}

fn fill_rows(
    rows: &[usize],
    remaining: &mut Vec<usize>,
    acc: &mut Vec<Vec<usize>>,
    out: &mut Vec<ContingencyMatrix>,
) {
    let i = acc.len();
    if i == rows.len() {
        if remaining.iter().all(|&r| r == 0) {
            out.push(ContingencyMatrix { rows: acc.clone() });
        }
        return;
    }
    let mut row = vec![0; remaining.len()];
    fill_row(rows, remaining, acc, out, &mut row, 0, rows[i]);
}

fn fill_row(
    rows: &[usize],
    remaining: &mut Vec<usize>,
    acc: &mut Vec<Vec<usize>>,
    out: &mut Vec<ContingencyMatrix>,
    row: &mut Vec<usize>,
    j: usize,
    left: usize,
) {
    if j == row.len() {
        if left == 0 {
            for (r, x) in remaining.iter_mut().zip(row.iter()) {
                *r -= x;
            }
            acc.push(row.clone());
            fill_rows(rows, remaining, acc, out);
            acc.pop();
            for (r, x) in remaining.iter_mut().zip(row.iter()) {
                *r += x;
            }
        }
        return;
    }
    let room: usize = remaining[j + 1..].iter().sum();
    for x in (0..=left.min(remaining[j])).rev() {
        if left - x > room {
            break;
        }
        row[j] = x;
        fill_row(rows, remaining, acc, out, row, j + 1, left - x);
    }
    row[j] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[usize]) -> Composition {
        Composition::new(v.to_vec())
    }

    fn m(rows: &[&[usize]]) -> ContingencyMatrix {
        ContingencyMatrix::new(rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn small_enumerations() {
        let ms = contingency_matrices(&c(&[1, 1]), &c(&[1, 1])).unwrap();
        assert_eq!(ms, vec![m(&[&[1, 0], &[0, 1]]), m(&[&[0, 1], &[1, 0]])]);
        let ms = contingency_matrices(&c(&[2, 1]), &c(&[2, 1])).unwrap();
        assert_eq!(ms, vec![m(&[&[2, 0], &[0, 1]]), m(&[&[1, 1], &[1, 0]])]);
        let ms = contingency_matrices(&c(&[3]), &c(&[1, 1, 1])).unwrap();
        assert_eq!(ms, vec![m(&[&[1, 1, 1]])]);
        assert!(contingency_matrices(&c(&[2]), &c(&[1])).is_err());
    }

    #[test]
    fn margins_hold_and_zero_parts_are_forced() {
        let ms = contingency_matrices(&c(&[1, 0, 2]), &c(&[2, 0, 1])).unwrap();
        assert!(!ms.is_empty());
        for e in &ms {
            assert_eq!(e.row_margin(), c(&[1, 0, 2]));
            assert_eq!(e.col_margin(), c(&[2, 0, 1]));
            assert!(e.rows()[1].iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn parse_round_trip() {
        let e = ContingencyMatrix::parse("0,1;1,0").unwrap();
        assert_eq!(e, m(&[&[0, 1], &[1, 0]]));
        assert_eq!(e.to_string(), "[0,1;1,0]");
        assert!(ContingencyMatrix::parse("1,2;3").is_err());
    }
}
