use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A non-increasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

/// A sequence of nonnegative integers; zero parts are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not non-increasing")));
        }
        Ok(Partition(parts))
    }

    /// Sorts the nonzero parts of an arbitrary sequence.
    pub fn from_unsorted(parts: &[usize]) -> Self {
        let mut v: Vec<usize> = parts.iter().copied().filter(|&p| p > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    /// The one-row partition `(n)`, or the empty partition when `n == 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Partition(vec![])
        } else {
            Partition(vec![n])
        }
    }

    /// `(1, ..., 1)` with `n` ones.
    pub fn column(n: usize) -> Self {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_composition(&self) -> Composition {
        Composition(self.0.clone())
    }

    pub fn conjugate(&self) -> Partition {
        let m = self.0.first().copied().unwrap_or(0);
        Partition((1..=m).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }

    fn prefix_sums(&self, len: usize) -> Vec<usize> {
        let mut acc = 0;
        (0..len)
            .map(|i| {
                acc += self.0.get(i).copied().unwrap_or(0);
                acc
            })
            .collect()
    }

    fn from_prefix_sums(sums: &[usize]) -> Partition {
        let mut prev = 0;
        let mut parts = Vec::new();
        for &s in sums {
            if s > prev {
                parts.push(s - prev);
            }
            prev = s;
        }
        Partition(parts)
    }
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Composition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of parts, zero parts included.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The associated partition (nonzero parts, sorted).
    pub fn sorted(&self) -> Partition {
        Partition::from_unsorted(&self.0)
    }

    /// The partition with the same parts if the composition is already one.
    pub fn as_partition(&self) -> Option<Partition> {
        Partition::new(self.0.clone()).ok()
    }
}

impl From<&Partition> for Composition {
    fn from(p: &Partition) -> Self {
        p.to_composition()
    }
}

impl From<Partition> for Composition {
    fn from(p: Partition) -> Self {
        Composition(p.0)
    }
}

fn fmt_parts(parts: &[usize], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "(")?;
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{p}")?;
    }
    write!(f, ")")
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(&self.0, f)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(&self.0, f)
    }
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for part in (1..=rem.min(max)).rev() {
            cur.push(part);
            go(rem - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn check_sizes(a: &Partition, b: &Partition) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::IncomparableSizes(a.n(), b.n()));
    }
    Ok(())
}

/// The opposite dominance order: `a <= b` iff every prefix sum of `a` is at
/// least the corresponding prefix sum of `b`. `(n)` is the minimum.
pub fn opp_dominance_leq(a: &Partition, b: &Partition) -> Result<bool> {
    check_sizes(a, b)?;
    let len = a.len().max(b.len());
    Ok(a.prefix_sums(len).iter().zip(b.prefix_sums(len)).all(|(x, y)| *x >= y))
}

/// Greatest lower bound in the opposite dominance order.
pub fn meet(a: &Partition, b: &Partition) -> Result<Partition> {
    check_sizes(a, b)?;
    // the lower bound in this order is the upper bound in dominance order,
    // obtained by conjugating the dominance-infimum of the conjugates
    let (ca, cb) = (a.conjugate(), b.conjugate());
    Ok(dominance_inf(&ca, &cb).conjugate())
}

/// Least upper bound in the opposite dominance order.
pub fn join(a: &Partition, b: &Partition) -> Result<Partition> {
    check_sizes(a, b)?;
    Ok(dominance_inf(a, b))
}

fn dominance_inf(a: &Partition, b: &Partition) -> Partition {
    let len = a.len().max(b.len());
    let sums: Vec<usize> = a
        .prefix_sums(len)
        .into_iter()
        .zip(b.prefix_sums(len))
        .map(|(x, y)| x.min(y))
        .collect();
    Partition::from_prefix_sums(&sums)
}
