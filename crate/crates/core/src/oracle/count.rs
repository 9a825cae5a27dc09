use crate::error::{input, Result};
use crate::matrix::is_prime;
use crate::representation::{DimVector, Representation};
use crate::schubert::{enumerate_cells, CellIndex};

use super::enumerate::{check_budget, count_cells};

/// Counts over one prime; `per_cell` follows the canonical cell order and sums to `total`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub prime: u64,
    pub total: u64,
    pub per_cell: Vec<(CellIndex, u64)>,
}

impl CountReport {
    pub fn cell(&self, beta: &CellIndex) -> Option<u64> {
        self.per_cell.iter().find(|(b, _)| b == beta).map(|&(_, c)| c)
    }

    pub fn nonempty_cells(&self) -> usize {
        self.per_cell.iter().filter(|(_, c)| *c > 0).count()
    }

    pub fn is_partition(&self) -> bool {
        self.per_cell.iter().map(|(_, c)| c).sum::<u64>() == self.total
    }
}

pub(crate) fn check_primes(primes: &[u64]) -> Result<()> {
    if primes.is_empty() {
        return input("no primes given");
    }
    if let Some(p) = primes.iter().find(|&&p| !is_prime(p) || p > u32::MAX as u64) {
        return input(format!("{p} is not a prime below 2^32"));
    }
    Ok(())
}

/// Per-cell and total counts of `Gr_e(M)(F_p)` for each prime.
pub fn count(m: &Representation, e: &DimVector, primes: &[u64], budget: u128) -> Result<Vec<CountReport>> {
    check_primes(primes)?;
    let cells = enumerate_cells(m.basis(), e)?;
    let rank = m.rank_vector();
    for &p in primes {
        check_budget(&rank, e, p, budget)?;
    }
    Ok(primes
        .iter()
        .map(|&p| {
            let counts = count_cells(m, &cells, p);
            let total = counts.iter().sum();
            CountReport { prime: p, total, per_cell: cells.iter().cloned().zip(counts).collect() }
        })
        .collect())
}
