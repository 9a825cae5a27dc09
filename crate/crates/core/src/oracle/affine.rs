use num_rational::BigRational;

use crate::error::{input, precondition, Result};
use crate::representation::{DimVector, Representation};
use crate::schubert::CellIndex;

use super::count::{count, CountReport};
use super::interpolate::format_terms;

/// Primes sampled by `verify_affine` when none are given.
pub const AFFINE_PRIMES: [u64; 2] = [2, 3];

/// Verdict on one cell from its counts at several primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellVerdict {
    /// Count `q^dim` at every sampled prime.
    Affine { dim: u32 },
    Empty,
    /// The count at `prime` is not a power of `prime`.
    NotAPrimePower { prime: u64, count: u64 },
    /// Pure powers, but the exponent varies with the prime.
    InconsistentExponent { exponents: Vec<(u64, u32)> },
}

impl CellVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, CellVerdict::Affine { .. } | CellVerdict::Empty)
    }

    pub fn label(&self) -> String {
        match self {
            CellVerdict::Affine { dim } => format!("affine dim {dim}"),
            CellVerdict::Empty => "empty".into(),
            CellVerdict::NotAPrimePower { prime, count } => format!("not-a-prime-power ({count} points over F_{prime})"),
            CellVerdict::InconsistentExponent { exponents } => {
                let parts: Vec<String> = exponents.iter().map(|(p, d)| format!("{p}^{d}")).collect();
                format!("inconsistent exponent ({})", parts.join(", "))
            }
        }
    }
}

/// `d` with `n = p^d`.
pub fn exponent_of(mut n: u64, p: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut d = 0;
    while n.is_multiple_of(p) {
        n /= p;
        d += 1;
    }
    (n == 1).then_some(d)
}

/// Verdict from `(prime, count)` samples.
pub fn classify_counts(samples: &[(u64, u64)]) -> CellVerdict {
    if samples.iter().all(|&(_, n)| n == 0) {
        return CellVerdict::Empty;
    }
    let mut exponents = Vec::new();
    for &(p, n) in samples {
        match exponent_of(n, p) {
            Some(d) => exponents.push((p, d)),
            None => return CellVerdict::NotAPrimePower { prime: p, count: n },
        }
    }
    if exponents.windows(2).all(|w| w[0].1 == w[1].1) {
        CellVerdict::Affine { dim: exponents[0].1 }
    } else {
        CellVerdict::InconsistentExponent { exponents }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellCertificate {
    pub cell: CellIndex,
    pub counts: Vec<u64>,
    pub verdict: CellVerdict,
}

/// Per-cell verdicts; numerical evidence, not a proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineReport {
    pub primes: Vec<u64>,
    pub cells: Vec<CellCertificate>,
    pub reports: Vec<CountReport>,
}

impl AffineReport {
    pub fn all_certified(&self) -> bool {
        self.cells.iter().all(|c| c.verdict.is_certified())
    }

    pub fn nonempty_cells(&self) -> usize {
        self.cells.iter().filter(|c| c.verdict != CellVerdict::Empty).count()
    }

    /// Dimensions of the certified nonempty cells, in cell order.
    pub fn dimensions(&self) -> Vec<u32> {
        self.cells
            .iter()
            .filter_map(|c| match c.verdict {
                CellVerdict::Affine { dim } => Some(dim),
                _ => None,
            })
            .collect()
    }

    pub fn certificate_label(&self) -> String {
        let ps: Vec<String> = self.primes.iter().map(|p| p.to_string()).collect();
        format!("numerical evidence at primes {{{}}}", ps.join(", "))
    }

    pub fn failures(&self) -> Vec<&CellCertificate> {
        self.cells.iter().filter(|c| !c.verdict.is_certified()).collect()
    }
}

pub fn affine_report_from(reports: Vec<CountReport>) -> AffineReport {
    let primes: Vec<u64> = reports.iter().map(|r| r.prime).collect();
    let cells = match reports.first() {
        None => Vec::new(),
        Some(first) => first
            .per_cell
            .iter()
            .enumerate()
            .map(|(i, (cell, _))| {
                let counts: Vec<u64> = reports.iter().map(|r| r.per_cell[i].1).collect();
                let samples: Vec<(u64, u64)> = primes.iter().copied().zip(counts.iter().copied()).collect();
                CellCertificate { cell: cell.clone(), counts, verdict: classify_counts(&samples) }
            })
            .collect(),
    };
    AffineReport { primes, cells, reports }
}

/// Certifies each cell as `A^d` when its count is `q^d` at every sampled prime.
pub fn verify_affine(m: &Representation, e: &DimVector, primes: Option<&[u64]>, budget: u128) -> Result<AffineReport> {
    let primes = primes.unwrap_or(&AFFINE_PRIMES);
    let mut distinct = primes.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 2 {
        return input("affine verification needs at least two distinct primes");
    }
    Ok(affine_report_from(count(m, e, primes, budget)?))
}

fn require_certified(report: &AffineReport) -> Result<()> {
    if report.all_certified() {
        return Ok(());
    }
    precondition(format!("{} of {} cells failed affine verification", report.failures().len(), report.cells.len()))
}

/// Number of nonempty cells, once every cell is certified.
pub fn euler_from_report(report: &AffineReport) -> Result<u64> {
    require_certified(report)?;
    Ok(report.nonempty_cells() as u64)
}

pub fn euler_characteristic(m: &Representation, e: &DimVector, primes: Option<&[u64]>, budget: u128) -> Result<u64> {
    euler_from_report(&verify_affine(m, e, primes, budget)?)
}

/// `Σ_β t^{2 d_β}` over the nonempty certified cells; `betti[k]` is the coefficient of `t^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincarePolynomial {
    pub betti: Vec<u64>,
    pub smoothness_asserted: bool,
    pub certificate: String,
}

impl std::fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<(usize, BigRational)> = self
            .betti
            .iter()
            .enumerate()
            .filter(|(_, &b)| b > 0)
            .map(|(k, &b)| (k, BigRational::from_integer(b.into())))
            .collect();
        f.write_str(&format_terms(&terms, "t"))
    }
}

pub fn poincare_from_report(report: &AffineReport, smoothness_asserted: bool) -> Result<PoincarePolynomial> {
    require_certified(report)?;
    let dims = report.dimensions();
    let top = dims.iter().map(|&d| 2 * d as usize).max().map_or(0, |d| d + 1);
    let mut betti = vec![0u64; top];
    for d in dims {
        betti[2 * d as usize] += 1;
    }
    Ok(PoincarePolynomial { betti, smoothness_asserted, certificate: report.certificate_label() })
}

pub fn poincare_polynomial(
    m: &Representation,
    e: &DimVector,
    primes: Option<&[u64]>,
    budget: u128,
    smoothness_asserted: bool,
) -> Result<PoincarePolynomial> {
    poincare_from_report(&verify_affine(m, e, primes, budget)?, smoothness_asserted)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        assert_eq!(classify_counts(&[(2, 1), (3, 1)]), CellVerdict::Affine { dim: 0 });
        assert_eq!(classify_counts(&[(2, 4), (3, 9)]), CellVerdict::Affine { dim: 2 });
        assert_eq!(classify_counts(&[(2, 0), (3, 0)]), CellVerdict::Empty);
        assert_eq!(classify_counts(&[(2, 10), (3, 33)]), CellVerdict::NotAPrimePower { prime: 2, count: 10 });
        assert_eq!(
            classify_counts(&[(2, 2), (3, 9)]),
            CellVerdict::InconsistentExponent { exponents: vec![(2, 1), (3, 2)] }
        );
    }
}
