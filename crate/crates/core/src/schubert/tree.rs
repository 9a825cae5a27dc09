use crate::error::{precondition, Result};
use crate::matrix::gaussian_binomial;
use crate::quiver::{difference_of, is_tree_extension, Subquiver};
use crate::representation::{require_ordered_above, DimVector, Representation};

use super::cells::CellIndex;

/// Outcome of the tree-extension emptiness criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellEmptiness {
    Nonempty,
    /// The cell over the subquiver is empty.
    EmptyBase,
    /// `M_α(β_p) ⊄ β_q`: `element` of `β_p` maps outside `β_q` along `arrow`.
    EmptyArrow { arrow: usize, element: usize },
}

impl CellEmptiness {
    pub fn is_empty(&self) -> bool {
        !matches!(self, CellEmptiness::Nonempty)
    }
}

/// Which end of `T − S` to peel first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PeelOrder {
    #[default]
    LargestEnd,
    SmallestEnd,
}

/// Whether the peeled end is the head or the tail of its arrow.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndKind {
    Head,
    Tail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeelStep {
    pub end: usize,
    pub arrow: usize,
    pub kind: EndKind,
}

/// Peeling of `T − S` down to `S`; `last` is the leftover vertex when `S` is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Peeling {
    pub steps: Vec<PeelStep>,
    pub last: Option<usize>,
}

fn require_tree_extension(m: &Representation, s: &Subquiver) -> Result<()> {
    if !is_tree_extension(m.quiver(), s)? {
        return precondition("the quiver is not a tree extension of the subquiver");
    }
    Ok(())
}

/// Removes ends of `T − S` one at a time until only `S` is left.
pub fn peel(m: &Representation, s: &Subquiver, order: PeelOrder) -> Result<Peeling> {
    let t = m.quiver();
    require_tree_extension(m, s)?;
    let ranks = m.basis().vertex_order().ranks(t).unwrap_or_else(|_| (0..t.vertex_count()).collect());
    let diff = difference_of(t, s)?;
    let mut alive_v: Vec<bool> = vec![true; t.vertex_count()];
    let mut alive_a: Vec<bool> = (0..t.arrow_count()).map(|a| diff.contains_arrow(a)).collect();
    let mut steps = Vec::new();
    loop {
        let remaining: Vec<usize> = (0..t.vertex_count()).filter(|&v| alive_v[v] && !s.contains_vertex(v)).collect();
        if remaining.is_empty() || (s.is_empty() && remaining.len() == 1) {
            break;
        }
        let mut ends: Vec<(usize, usize)> = remaining
            .iter()
            .filter_map(|&v| {
                let inc: Vec<usize> = (0..t.arrow_count())
                    .filter(|&a| alive_a[a] && (t.arrow(a).src == v || t.arrow(a).tgt == v))
                    .collect();
                (inc.len() == 1).then(|| (v, inc[0]))
            })
            .collect();
        ends.sort_by_key(|&(v, _)| ranks[v]);
        let (v, a) = match order {
            PeelOrder::LargestEnd => *ends.last().expect("a tree with an edge has an end"),
            PeelOrder::SmallestEnd => ends[0],
        };
        let kind = if t.arrow(a).tgt == v { EndKind::Head } else { EndKind::Tail };
        steps.push(PeelStep { end: v, arrow: a, kind });
        alive_v[v] = false;
        alive_a[a] = false;
    }
    let last = if s.is_empty() { (0..t.vertex_count()).find(|&v| alive_v[v]) } else { None };
    Ok(Peeling { steps, last })
}

/// Image of `b ∈ B_p` under the identity matrix of `α: p → q`.
fn image(m: &Representation, arrow: usize, b: usize) -> usize {
    let q = m.quiver().arrow(arrow).tgt;
    m.basis().block(q)[m.basis().local(b)]
}

/// Emptiness of `C_β^M` from the arrows of `T − S`, combined with the supplied base answer.
pub fn tree_cell_emptiness(
    m: &Representation,
    s: &Subquiver,
    beta: &CellIndex,
    base_nonempty: bool,
) -> Result<CellEmptiness> {
    require_tree_extension(m, s)?;
    require_ordered_above(m, s)?;
    beta.check_in(m.basis())?;
    if let Some(bad) = arrow_obstruction(m, s, beta)? {
        return Ok(bad);
    }
    Ok(if base_nonempty { CellEmptiness::Nonempty } else { CellEmptiness::EmptyBase })
}

fn arrow_obstruction(m: &Representation, s: &Subquiver, beta: &CellIndex) -> Result<Option<CellEmptiness>> {
    let diff = difference_of(m.quiver(), s)?;
    for a in diff.arrows() {
        let p = m.quiver().arrow(a).src;
        for b in beta.at_vertex(m.basis(), p) {
            if !beta.contains(image(m, a, b)) {
                return Ok(Some(CellEmptiness::EmptyArrow { arrow: a, element: b }));
            }
        }
    }
    Ok(None)
}

/// `n_β` with `C_β^M ≃ C_{β_S}^{M_S} × A^{n_β}`, peeling the largest end first.
pub fn tree_cell_dimension(m: &Representation, s: &Subquiver, beta: &CellIndex) -> Result<usize> {
    tree_cell_dimension_with(m, s, beta, PeelOrder::LargestEnd)
}

pub fn tree_cell_dimension_with(
    m: &Representation,
    s: &Subquiver,
    beta: &CellIndex,
    order: PeelOrder,
) -> Result<usize> {
    require_ordered_above(m, s)?;
    beta.check_in(m.basis())?;
    if arrow_obstruction(m, s, beta)?.is_some() {
        return precondition("the cell is empty");
    }
    let peeling = peel(m, s, order)?;
    let basis = m.basis();
    let t = m.quiver();
    let mut n = 0;
    for step in &peeling.steps {
        let arrow = t.arrow(step.arrow);
        let beta_p = beta.at_vertex(basis, arrow.src);
        let beta_q = beta.at_vertex(basis, arrow.tgt);
        let mapped: Vec<usize> = beta_p.iter().map(|&b| image(m, step.arrow, b)).collect();
        match step.kind {
            EndKind::Head => {
                for &b in beta_q.iter().filter(|b| !mapped.contains(b)) {
                    n += basis.block(arrow.tgt).iter().filter(|&&x| x < b && !beta.contains(x)).count();
                }
            }
            EndKind::Tail => {
                for &mb in &mapped {
                    n += beta_q.iter().filter(|&&x| x < mb && !mapped.contains(&x)).count();
                }
            }
        }
    }
    if let Some(r) = peeling.last {
        for b in beta.at_vertex(basis, r) {
            n += basis.block(r).iter().filter(|&&x| x < b && !beta.contains(x)).count();
        }
    }
    Ok(n)
}

/// A Grassmannian `Gr(sub, ambient)` occurring as a fibre; negative or oversized `sub` means empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrassmannianFibre {
    pub vertex: usize,
    pub sub: i64,
    pub ambient: i64,
}

impl GrassmannianFibre {
    pub fn count(&self, q: u64) -> u128 {
        if self.sub < 0 || self.ambient < 0 || self.sub > self.ambient {
            0
        } else {
            gaussian_binomial(self.ambient as usize, self.sub as usize, q)
        }
    }
}

/// Fibres of the tower `Gr_e(M) → ⋯ → Gr_{e_S}(M_S)` for isomorphisms on `T − S`.
pub fn fibration_fibres(m: &Representation, s: &Subquiver, e: &DimVector) -> Result<Vec<GrassmannianFibre>> {
    let t = m.quiver();
    let diff = difference_of(t, s)?;
    for a in diff.arrows() {
        let mat = m.matrix(a);
        if mat.rows() != mat.cols() {
            return precondition(format!("matrix of arrow {} is not square", t.arrow(a).id));
        }
    }
    let peeling = peel(m, s, PeelOrder::LargestEnd)?;
    let rank = m.rank_vector();
    let e_of = |v: usize| e.0[v] as i64;
    let mut out = Vec::new();
    for step in &peeling.steps {
        let arrow = t.arrow(step.arrow);
        let (p, q) = (arrow.src, arrow.tgt);
        out.push(match step.kind {
            EndKind::Head => GrassmannianFibre { vertex: q, sub: e_of(q) - e_of(p), ambient: rank.0[q] as i64 - e_of(p) },
            EndKind::Tail => GrassmannianFibre { vertex: p, sub: e_of(p), ambient: e_of(q) },
        });
    }
    if let Some(r) = peeling.last {
        out.push(GrassmannianFibre { vertex: r, sub: e_of(r), ambient: rank.0[r] as i64 });
    }
    Ok(out)
}
