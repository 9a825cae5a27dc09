use crate::error::{input, precondition, Result};
use crate::matrix::FpMatrix;
use crate::quiver::{is_strictly_ordered, is_winding, QuiverMorphism};
use crate::representation::{OrderedBasis, Representation};

use super::cells::CellIndex;

/// An `F_p`-point of a cell chart: the `|B| × |β|` echelon matrix `w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellPoint {
    pub beta: CellIndex,
    pub prime: u64,
    pub w: FpMatrix,
}

impl CellPoint {
    /// Point with the given values on the chart coordinates `vars` (pivots set to 1).
    pub fn from_chart(basis: &OrderedBasis, beta: &CellIndex, vars: &[(usize, usize)], values: &[u64], prime: u64) -> CellPoint {
        let mut w = FpMatrix::zeros(basis.len(), beta.len());
        for (j, &b) in beta.positions().iter().enumerate() {
            w.set(b, j, 1);
        }
        for (&(r, c), &v) in vars.iter().zip(values) {
            w.set(r, beta.column_of(c).expect("chart column lies in beta"), v % prime);
        }
        CellPoint { beta: beta.clone(), prime, w }
    }

    /// Values of `w` on the chart coordinates `vars`.
    pub fn chart_values(&self, vars: &[(usize, usize)]) -> Vec<u64> {
        vars.iter().map(|&(r, c)| self.w.get(r, self.beta.column_of(c).unwrap())).collect()
    }

    /// Whether every nonzero off-pivot entry sits at `(b′, b)` with `b′ < b`, `b′ ∉ β` and `same(b′, b)`.
    pub fn fits_chart(&self, same: impl Fn(usize, usize) -> bool) -> bool {
        for (j, &b) in self.beta.positions().iter().enumerate() {
            for r in 0..self.w.rows {
                let v = self.w.get(r, j);
                let ok = if r == b {
                    v == 1
                } else if self.beta.contains(r) || r > b || !same(r, b) {
                    v == 0
                } else {
                    true
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

/// `ι`: a point of `C_β^M` viewed in `C_β^{F_*M}` (same matrix).
pub fn iota(f: &QuiverMorphism, m: &Representation, v: &CellPoint) -> Result<CellPoint> {
    if f.domain() != m.quiver() {
        return input("morphism domain differs from the representation's quiver");
    }
    let basis = m.basis();
    if v.w.rows != basis.len() || !v.fits_chart(|r, c| basis.vertex_of(r) == basis.vertex_of(c)) {
        return input("point is not in the echelon chart of the source cell");
    }
    Ok(v.clone())
}

/// `π`: keeps the diagonal fibre blocks `w^{p,p}` and zeroes `w^{p,p′}` for `p ≠ p′`.
pub fn pi(f: &QuiverMorphism, m: &Representation, w: &CellPoint) -> Result<CellPoint> {
    if f.domain() != m.quiver() {
        return input("morphism domain differs from the representation's quiver");
    }
    if !is_winding(f) || !is_strictly_ordered(f, &m.basis().vertex_order())? {
        return precondition("the retraction needs a strictly ordered winding");
    }
    let basis = m.basis();
    if w.w.rows != basis.len() {
        return input("point has the wrong number of rows");
    }
    let mut out = w.clone();
    for (j, &b) in w.beta.positions().iter().enumerate() {
        for r in 0..w.w.rows {
            if basis.vertex_of(r) != basis.vertex_of(b) {
                out.w.set(r, j, 0);
            }
        }
    }
    Ok(out)
}
