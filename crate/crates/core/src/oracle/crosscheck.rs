use std::collections::BTreeMap;

use crate::error::Result;
use crate::representation::{DimVector, Representation};
use crate::schubert::{combinations, CellIndex};

use super::enumerate::{assign_cell, check_budget, is_subrepresentation};

/// Every `e`-dimensional subspace of `F_p^m`, as row bases in reduced echelon form with leftmost pivots.
pub fn subspaces(m: usize, e: usize, p: u64) -> Vec<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    let positions: Vec<usize> = (0..m).collect();
    for pivots in combinations(&positions, e) {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| ((c + 1)..m).filter(|j| !pivots.contains(j)).map(move |j| (i, j)))
            .collect();
        let mut vals = vec![0u64; free.len()];
        loop {
            let mut rows = vec![vec![0u64; m]; e];
            for (i, &c) in pivots.iter().enumerate() {
                rows[i][c] = 1;
            }
            for (&(i, j), &x) in free.iter().zip(&vals) {
                rows[i][j] = x;
            }
            out.push(rows);
            let mut pos = 0;
            loop {
                if pos == vals.len() {
                    break;
                }
                vals[pos] += 1;
                if vals[pos] < p {
                    break;
                }
                vals[pos] = 0;
                pos += 1;
            }
            if pos == vals.len() {
                break;
            }
        }
    }
    out
}

/// Per-cell counts by an independent route: all tuples of subspaces, a rank test per arrow,
/// then cell assignment by max-index reduction. Only cells with points appear.
pub fn crosscheck_counts(m: &Representation, e: &DimVector, p: u64, budget: u128) -> Result<BTreeMap<CellIndex, u64>> {
    let rank = m.rank_vector();
    check_budget(&rank, e, p, budget)?;
    crate::schubert::enumerate_cells(m.basis(), e)?;
    let n = rank.0.len();
    let choices: Vec<Vec<Vec<Vec<u64>>>> = (0..n).map(|v| subspaces(rank.0[v], e.0[v], p)).collect();
    let mut counts = BTreeMap::new();
    let mut idx = vec![0usize; n];
    if choices.iter().any(|c| c.is_empty()) {
        return Ok(counts);
    }
    loop {
        let spans: Vec<Vec<Vec<u64>>> = (0..n).map(|v| choices[v][idx[v]].clone()).collect();
        if is_subrepresentation(m, &spans, p) {
            *counts.entry(assign_cell(m.basis(), &spans, p)).or_insert(0) += 1;
        }
        let mut v = 0;
        loop {
            if v == n {
                return Ok(counts);
            }
            idx[v] += 1;
            if idx[v] < choices[v].len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::gaussian_binomial;

    #[test]
    fn subspace_counts_are_gaussian_binomials() {
        for m in 0..=4 {
            for e in 0..=m {
                for p in [2u64, 3] {
                    assert_eq!(subspaces(m, e, p).len() as u128, gaussian_binomial(m, e, p));
                }
            }
        }
    }
}
