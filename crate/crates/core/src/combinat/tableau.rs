use std::fmt;

use serde::{Deserialize, Serialize};

use super::{contingency_matrices, Composition, ContingencyMatrix, Partition};
use crate::{Error, Result};

/// A filling of a Young diagram by positive labels, stored row by row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    /// Builds a tableau; rows must have non-increasing positive lengths.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let lens: Vec<usize> = rows.iter().map(Vec::len).collect();
        Partition::new(lens.clone())
            .map_err(|_| Error::ShapeMismatch(format!("row lengths {lens:?}")))?;
        if rows.iter().flatten().any(|&x| x == 0) {
            return Err(Error::ShapeMismatch("labels are 1-based".into()));
        }
        Ok(Tableau { rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<usize>>) -> Self {
        Tableau { rows }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(Vec::len).collect()).expect("valid shape")
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn max_label(&self) -> usize {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Multiplicity vector of labels `1..=len`.
    pub fn content(&self, len: usize) -> Vec<usize> {
        let mut c = vec![0; len];
        for &x in self.rows.iter().flatten() {
            if x <= len {
                c[x - 1] += 1;
            }
        }
        c
    }

    pub fn get(&self, row: usize, col: usize) -> Option<usize> {
        self.rows.get(row).and_then(|r| r.get(col)).copied()
    }

    pub fn is_row_weak(&self) -> bool {
        self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]))
    }

    pub fn is_column_strict(&self) -> bool {
        self.rows.windows(2).all(|pair| pair[1].iter().zip(&pair[0]).all(|(lo, hi)| hi < lo))
    }

    pub fn is_semistandard(&self) -> bool {
        self.is_row_weak() && self.is_column_strict()
    }

    /// Semistandard with labels exactly `1..=size`, each once.
    pub fn is_standard(&self) -> bool {
        let n = self.size();
        self.is_semistandard() && self.content(n).iter().all(|&c| c == 1) && self.max_label() == n
    }

    /// Rows strictly increasing and labels `1..=size` used once.
    pub fn is_row_standard(&self) -> bool {
        let n = self.size();
        self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]))
            && self.content(n).iter().all(|&c| c == 1)
            && self.max_label() == n
    }

    /// Replaces each label by `f(label)`.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Tableau {
        Tableau { rows: self.rows.iter().map(|r| r.iter().map(|&x| f(x)).collect()).collect() }
    }

    /// The superstandard tableau of shape and type `shape`: row `i` holds label `i`.
    pub fn superstandard(shape: &Partition) -> Tableau {
        Tableau {
            rows: shape.parts().iter().enumerate().map(|(i, &len)| vec![i + 1; len]).collect(),
        }
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "/")?;
            }
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

/// All semistandard tableaux of the given shape in which label `i + 1`
/// occurs `content[i]` times.
pub fn sstd_enumerate(shape: &Partition, content: &Composition) -> Vec<Tableau> {
    if shape.n() != content.n() {
        return Vec::new();
    }
    let rows = vec![Vec::new(); shape.len()];
    let mut out = Vec::new();
    fill_strips(shape.parts(), content.parts(), 0, rows, &mut out);
    out
}

// Places label `idx + 1` as a horizontal strip on top of the current filling.
fn fill_strips(
    shape: &[usize],
    content: &[usize],
    idx: usize,
    rows: Vec<Vec<usize>>,
    out: &mut Vec<Tableau>,
) {
    if idx == content.len() {
        out.push(Tableau { rows });
        return;
    }
    let cur: Vec<usize> = rows.iter().map(Vec::len).collect();
    let caps: Vec<usize> = (0..shape.len())
        .map(|j| {
            let cap = if j == 0 { shape[0] } else { shape[j].min(cur[j - 1]) };
            cap.saturating_sub(cur[j])
        })
        .collect();
    let mut adds = vec![0; shape.len()];
    distribute(&caps, content[idx], 0, &mut adds, &mut |adds| {
        let mut next = rows.clone();
        for (j, &a) in adds.iter().enumerate() {
            next[j].extend(std::iter::repeat_n(idx + 1, a));
        }
        fill_strips(shape, content, idx + 1, next, out);
    });
}

fn distribute(
    caps: &[usize],
    remaining: usize,
    j: usize,
    adds: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if j == caps.len() {
        if remaining == 0 {
            visit(adds);
        }
        return;
    }
    let rest: usize = caps[j + 1..].iter().sum();
    for a in (0..=caps[j].min(remaining)).rev() {
        if remaining - a > rest {
            break;
        }
        adds[j] = a;
        distribute(caps, remaining - a, j + 1, adds, visit);
    }
    adds[j] = 0;
}

/// All standard tableaux of the given shape.
pub fn std_enumerate(shape: &Partition) -> Vec<Tableau> {
    sstd_enumerate(shape, &Composition::new(vec![1; shape.n()]))
}

/// Number of semistandard tableaux of the given shape and content.
pub fn kostka(shape: &Partition, content: &Composition) -> usize {
    sstd_enumerate(shape, content).len()
}

/// The tableau attached to an intersection matrix `E`: row `i` of the
/// tableau holds `E[i][j]` copies of label `j + 1`, so the shape is the row
/// margin and the content is the column margin. Trailing zero rows of the
/// margin are allowed and produce no tableau row.
pub fn tableau_of_intersection_matrix(e: &ContingencyMatrix) -> Result<Tableau> {
    let margin = e.row_margin();
    let parts = margin.parts();
    if parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidPartition(format!("row margin {margin} is not a partition")));
    }
    let rows = e
        .rows()
        .iter()
        .filter(|r| r.iter().sum::<usize>() > 0)
        .map(|r| {
            r.iter()
                .enumerate()
                .flat_map(|(j, &count)| std::iter::repeat_n(j + 1, count))
                .collect()
        })
        .collect();
    Ok(Tableau { rows })
}

/// Whether the embedding recorded by `e` is permissible, i.e. its tableau is
/// semistandard.
pub fn is_permissible(e: &ContingencyMatrix) -> Result<bool> {
    Ok(tableau_of_intersection_matrix(e)?.is_semistandard())
}

/// The permissible intersection matrices in `M_{nu, c}`.
pub fn permissible_matrices(nu: &Partition, c: &Composition) -> Vec<ContingencyMatrix> {
    contingency_matrices(&nu.to_composition(), c)
        .expect("sizes checked by caller")
        .into_iter()
        .filter(|e| is_permissible(e).expect("row margin is a partition"))
        .collect()
}
