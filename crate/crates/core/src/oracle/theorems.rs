use crate::error::Result;
use crate::quiver::{QuiverMorphism, Subquiver};
use crate::representation::{push_forward, restrict, DimVector, Representation};
use crate::schubert::{fibration_fibres, tree_cell_dimension, CellIndex, GrassmannianFibre};

use super::affine::exponent_of;
use super::count::count;
use super::enumerate::count_cell;

/// `M`, `F_*M`, `M_S` and `F_*M_S` for one winding.
pub struct PushForwardSetting<'a> {
    pub m: &'a Representation,
    pub s: &'a Subquiver,
    pub f: &'a QuiverMorphism,
    pub n: Representation,
    pub n_s: Representation,
    pub parent_position: Vec<usize>,
}

impl<'a> PushForwardSetting<'a> {
    pub fn new(m: &'a Representation, s: &'a Subquiver, f: &'a QuiverMorphism) -> Result<PushForwardSetting<'a>> {
        let n = push_forward(f, m)?;
        let restriction = restrict(m, s)?;
        let n_s = push_forward(&f.restrict(s)?, &restriction.representation)?;
        Ok(PushForwardSetting { m, s, f, n, n_s, parent_position: restriction.parent_position })
    }
}

/// Outcome of `|C_β^{F_*M}| = |C_{β_S}^{F_*M_S}| · q^{n_β + n_{F,β}}` for one cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MainTheoremCell {
    pub beta: CellIndex,
    pub primes: Vec<u64>,
    pub counts: Vec<u64>,
    pub base_counts: Vec<u64>,
    /// `None` when `C_β^M` is empty.
    pub n_beta: Option<usize>,
    /// `n_{F,β}` when the identity holds with a constant nonnegative exponent.
    pub n_f: Option<usize>,
    pub holds: bool,
}

/// Checks one cell; `None` if a chart exceeds `budget` at the largest prime.
pub fn check_main_theorem_cell(
    setting: &PushForwardSetting<'_>,
    beta: &CellIndex,
    primes: &[u64],
    budget: u128,
) -> Result<Option<MainTheoremCell>> {
    let beta_s = beta.restrict_to(&setting.parent_position);
    let mut counts = Vec::new();
    let mut base_counts = Vec::new();
    for &p in primes {
        match count_cell(&setting.n, beta, p, budget) {
            Ok(c) => counts.push(c),
            Err(crate::Error::BudgetExceeded { .. }) => return Ok(None),
            Err(e) => return Err(e),
        }
        match count_cell(&setting.n_s, &beta_s, p, budget) {
            Ok(c) => base_counts.push(c),
            Err(crate::Error::BudgetExceeded { .. }) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    let n_beta = tree_cell_dimension(setting.m, setting.s, beta).ok();
    let mut cell = MainTheoremCell {
        beta: beta.clone(),
        primes: primes.to_vec(),
        counts,
        base_counts,
        n_beta,
        n_f: None,
        holds: false,
    };
    let Some(nb) = n_beta else {
        // C_β^M is empty, so C_β^{F_*M} must be empty too.
        cell.holds = cell.counts.iter().all(|&c| c == 0);
        return Ok(Some(cell));
    };
    let mut exps = Vec::new();
    for ((&p, &c), &b) in primes.iter().zip(&cell.counts).zip(&cell.base_counts) {
        if b == 0 || c % b != 0 {
            exps.clear();
            break;
        }
        match exponent_of(c / b, p) {
            Some(d) if d as usize >= nb => exps.push(d as usize - nb),
            _ => {
                exps.clear();
                break;
            }
        }
    }
    if exps.len() == primes.len() && exps.windows(2).all(|w| w[0] == w[1]) {
        cell.n_f = exps.first().copied();
        cell.holds = true;
    } else if cell.base_counts.iter().all(|&b| b == 0) {
        cell.holds = cell.counts.iter().all(|&c| c == 0);
    }
    Ok(Some(cell))
}

/// Result of the fibration count identity at one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrationCheck {
    pub prime: u64,
    pub total: u64,
    pub base: u64,
    pub fibres: Vec<GrassmannianFibre>,
    pub holds: bool,
}

/// `#Gr_e(M) = #Gr_{e_S}(M_S) · Π #Gr(ẽ_i, m̃_i)` for isomorphisms on `T − S`.
pub fn check_fibration(
    m: &Representation,
    s: &Subquiver,
    e: &DimVector,
    primes: &[u64],
    budget: u128,
) -> Result<Vec<FibrationCheck>> {
    let fibres = fibration_fibres(m, s, e)?;
    let restriction = restrict(m, s)?;
    let e_s = DimVector(s.vertices().map(|v| e.0[v]).collect());
    let totals = count(m, e, primes, budget)?;
    let bases = count(&restriction.representation, &e_s, primes, budget)?;
    Ok(totals
        .iter()
        .zip(&bases)
        .map(|(t, b)| {
            let product = fibres.iter().fold(b.total as u128, |acc, fib| acc * fib.count(t.prime));
            FibrationCheck {
                prime: t.prime,
                total: t.total,
                base: b.total,
                fibres: fibres.clone(),
                holds: product == t.total as u128,
            }
        })
        .collect())
}
