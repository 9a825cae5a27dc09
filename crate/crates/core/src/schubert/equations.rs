use std::collections::HashMap;

use crate::error::{input, precondition, Result};
use crate::poly::Poly;
use crate::quiver::{is_winding, QuiverMorphism};
use crate::representation::{OrderedBasis, Representation};

use super::cells::CellIndex;

/// Free coordinates `(b′, b)` of the echelon chart of `β`: `b ∈ β`, `b′ ∉ β`, `b′ < b`, same vertex.
///
/// Ordered by column `b`, then row `b′`.
pub fn cell_coordinates(basis: &OrderedBasis, beta: &CellIndex) -> Vec<(usize, usize)> {
    let mut vars = Vec::new();
    for &b in beta.positions() {
        for &r in basis.block(basis.vertex_of(b)) {
            if r < b && !beta.contains(r) {
                vars.push((r, b));
            }
        }
    }
    vars
}

/// A representation `N` presented as the push-forward of `source` along a winding.
#[derive(Clone, Copy, Debug)]
pub struct Fibred<'a> {
    pub morphism: &'a QuiverMorphism,
    pub source: &'a Representation,
}

/// One polynomial condition: entry `(row, col)` of `E(arrow, t, s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellEquation {
    pub arrow: usize,
    pub t: usize,
    pub s: usize,
    pub row: usize,
    pub col: usize,
    pub poly: Poly,
}

/// The defining equations of a cell in its echelon chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellEquationSystem {
    pub beta: CellIndex,
    pub vars: Vec<(usize, usize)>,
    pub equations: Vec<CellEquation>,
    basis_ids: Vec<String>,
    arrow_ids: Vec<String>,
    tag_vertex_ids: Vec<String>,
}

impl CellEquationSystem {
    pub fn var_name(&self, v: u32) -> String {
        let (r, c) = self.vars[v as usize];
        format!("w_{{{},{}}}", self.basis_ids[r], self.basis_ids[c])
    }

    pub fn basis_id(&self, k: usize) -> &str {
        &self.basis_ids[k]
    }

    pub fn arrow_id(&self, a: usize) -> &str {
        &self.arrow_ids[a]
    }

    pub fn tag_vertex_id(&self, v: usize) -> &str {
        &self.tag_vertex_ids[v]
    }

    pub fn var_index(&self, row: usize, col: usize) -> Option<usize> {
        self.vars.iter().position(|&x| x == (row, col))
    }

    pub fn poly_text(&self, eq: &CellEquation) -> String {
        eq.poly.display_with(&|v| self.var_name(v))
    }

    /// One line per equation: `E(a,t,s) row r, col b: <poly> = 0`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "variables: {}\n",
            (0..self.vars.len() as u32).map(|v| self.var_name(v)).collect::<Vec<_>>().join(", ")
        ));
        if self.equations.is_empty() {
            out.push_str("no equations\n");
        }
        for eq in &self.equations {
            out.push_str(&format!(
                "E({},{},{}) row {}, col {}: {} = 0\n",
                self.arrow_ids[eq.arrow],
                self.tag_vertex_ids[eq.t],
                self.tag_vertex_ids[eq.s],
                self.basis_ids[eq.row],
                self.basis_ids[eq.col],
                self.poly_text(eq)
            ));
        }
        out
    }

    /// Whether all equations vanish mod `p` at `values` (indexed like `vars`).
    pub fn is_satisfied(&self, values: &[u64], p: u64) -> bool {
        self.equations.iter().all(|eq| eq.poly.eval_mod(values, p) == 0)
    }

    /// The normalised polynomials, for comparisons up to sign.
    pub fn normalized_polys(&self) -> Vec<Poly> {
        self.equations.iter().map(|e| e.poly.normalize_sign()).collect()
    }
}

/// The equations `E(α̃,t,s)` cutting `C_β^N` out of its echelon chart.
///
/// Rows in `β` are skipped and zero polynomials dropped. Tags `(t, s)` are vertices of the
/// fibred quiver when `fibred` is given, else of `n`'s own quiver.
pub fn generate_equations(
    n: &Representation,
    beta: &CellIndex,
    fibred: Option<Fibred<'_>>,
) -> Result<CellEquationSystem> {
    let basis = n.basis();
    beta.check_in(basis)?;
    let tag_of: Vec<usize> = match fibred {
        Some(fb) => {
            let f = fb.morphism;
            if f.codomain() != n.quiver() || f.domain() != fb.source.quiver() {
                return input("fibration does not match the representation");
            }
            if !is_winding(f) {
                return precondition("equation generation needs a winding");
            }
            let sb = fb.source.basis();
            if sb.ids() != basis.ids() {
                return input("fibration source basis differs from the push-forward basis");
            }
            for k in 0..sb.len() {
                if f.map_vertex(sb.vertex_of(k)) != basis.vertex_of(k) {
                    return input("fibration source basis is not regrouped by the morphism");
                }
            }
            (0..sb.len()).map(|k| sb.vertex_of(k)).collect()
        }
        None => (0..basis.len()).map(|k| basis.vertex_of(k)).collect(),
    };
    let tag_vertex_ids: Vec<String> = match fibred {
        Some(fb) => fb.source.quiver().vertices().to_vec(),
        None => n.quiver().vertices().to_vec(),
    };

    let vars = cell_coordinates(basis, beta);
    let var_of: HashMap<(usize, usize), u32> = vars.iter().enumerate().map(|(i, &rc)| (rc, i as u32)).collect();
    let entry = |r: usize, c: usize| -> Poly {
        if r == c {
            Poly::constant(1)
        } else {
            var_of.get(&(r, c)).map(|&v| Poly::var(v)).unwrap_or_default()
        }
    };

    let mut equations = Vec::new();
    for (a, arrow) in n.quiver().arrows().iter().enumerate() {
        let mat = n.matrix(a);
        let src_block = basis.block(arrow.src);
        let tgt_block = basis.block(arrow.tgt);
        let beta_t: Vec<usize> = tgt_block.iter().copied().filter(|&k| beta.contains(k)).collect();
        for &b in src_block.iter().filter(|&&k| beta.contains(k)) {
            let column: Vec<Poly> = src_block.iter().map(|&r| entry(r, b)).collect();
            let image: Vec<Poly> = (0..tgt_block.len())
                .map(|i| {
                    let mut acc = Poly::zero();
                    for (j, w) in column.iter().enumerate() {
                        let c = mat.get(i, j);
                        if c != 0 && !w.is_zero() {
                            acc = &acc + &w.scale(c);
                        }
                    }
                    acc
                })
                .collect();
            for (i, &r) in tgt_block.iter().enumerate() {
                if beta.contains(r) {
                    continue;
                }
                let mut poly = image[i].clone();
                for &c in &beta_t {
                    let x = &image[basis.local(c)];
                    let w = entry(r, c);
                    if !x.is_zero() && !w.is_zero() {
                        poly = &poly - &(x * &w);
                    }
                }
                if !poly.is_zero() {
                    equations.push(CellEquation {
                        arrow: a,
                        t: tag_of[r],
                        s: tag_of[b],
                        row: r,
                        col: b,
                        poly: poly.normalize_sign(),
                    });
                }
            }
        }
    }
    Ok(CellEquationSystem {
        beta: beta.clone(),
        vars,
        equations,
        basis_ids: basis.ids().to_vec(),
        arrow_ids: n.quiver().arrows().iter().map(|a| a.id.clone()).collect(),
        tag_vertex_ids,
    })
}
