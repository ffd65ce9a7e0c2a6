use num::Zero;

use crate::qlinalg::inverse;
use crate::Q;

/// Assigns orbits to cells so that every element of cell `τ` is supported
/// on orbits assigned to cells `≥ τ`, with an invertible square block on
/// the orbits assigned to `τ`. `elements[k]` lists the coefficient vectors
/// of cell `k`. Such an assignment is forced when it exists: cells are
/// processed from the top, and an unassigned orbit met by cell `τ` can
/// only belong to `τ`. Returns the cell of every orbit, or a witness.
pub fn triangular_labels(
    elements: &[Vec<Vec<Q>>],
    n_orbits: usize,
    leq: impl Fn(usize, usize) -> bool,
) -> Result<Vec<usize>, String> {
    let n_cells = elements.len();
    let mut label: Vec<Option<usize>> = vec![None; n_orbits];
    let mut done = vec![false; n_cells];
    for _ in 0..n_cells {
        let k = (0..n_cells)
            .find(|&k| !done[k] && (0..n_cells).all(|j| done[j] || j == k || !leq(k, j)))
            .ok_or("the cell order has a cycle")?;
        done[k] = true;
        let touched: Vec<usize> =
            (0..n_orbits).filter(|&o| elements[k].iter().any(|e| !e[o].is_zero())).collect();
        let mut fresh = Vec::new();
        for &o in &touched {
            match label[o] {
                Some(j) if !leq(k, j) => return Err(format!("cell {k} meets orbit {o} of cell {j}")),
                Some(_) => {}
                None => fresh.push(o),
            }
        }
        if fresh.len() != elements[k].len() {
            return Err(format!("cell {k} has {} elements but {} new orbits", elements[k].len(), fresh.len()));
        }
        let block: Vec<Vec<Q>> = elements[k].iter().map(|e| fresh.iter().map(|&o| e[o].clone()).collect()).collect();
        if !block.is_empty() && inverse(&block).is_none() {
            return Err(format!("diagonal block of cell {k} is singular"));
        }
        for o in fresh {
            label[o] = Some(k);
        }
    }
    label
        .into_iter()
        .enumerate()
        .map(|(o, l)| l.ok_or_else(|| format!("orbit {o} is not reached by any cell")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::q;

    #[test]
    fn chain_of_two() {
        // cell 0 < cell 1; cell 1 = g_a, cell 0 = g_a + g_b
        let elements = vec![vec![vec![q(1), q(1)]], vec![vec![q(1), q(0)]]];
        let leq = |j: usize, k: usize| j <= k;
        assert_eq!(triangular_labels(&elements, 2, leq).unwrap(), vec![1, 0]);
        // reversed order fails
        let geq = |j: usize, k: usize| j >= k;
        assert!(triangular_labels(&elements, 2, geq).is_err());
    }
}
