//! Representations with an ordered basis, restriction, direct sums and push-forwards.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{input, precondition, Error, Result};
use crate::matrix::IntMatrix;
use crate::quiver::{difference_of, Quiver, QuiverMorphism, Subquiver, VertexOrder};

/// A globally ordered basis partitioned into per-vertex blocks.
///
/// Elements are addressed by global position `0..len`.
#[derive(Clone, Debug)]
pub struct OrderedBasis {
    ids: Vec<String>,
    vertex_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    local: Vec<usize>,
    index: HashMap<String, usize>,
}

impl PartialEq for OrderedBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.vertex_of == other.vertex_of && self.blocks.len() == other.blocks.len()
    }
}

impl Eq for OrderedBasis {}

impl OrderedBasis {
    /// `ids` in global order; `vertex_of[k]` is the vertex of `ids[k]`.
    pub fn new(vertex_count: usize, ids: Vec<String>, vertex_of: Vec<usize>) -> Result<OrderedBasis> {
        if ids.len() != vertex_of.len() {
            return input("basis ids and vertex assignment differ in length");
        }
        let mut index = HashMap::new();
        for (k, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), k).is_some() {
                return input(format!("duplicate basis id {id}"));
            }
        }
        let mut blocks = vec![Vec::new(); vertex_count];
        let mut local = vec![0; ids.len()];
        for (k, &v) in vertex_of.iter().enumerate() {
            if v >= vertex_count {
                return input(format!("basis element {} sits at an unknown vertex", ids[k]));
            }
            local[k] = blocks[v].len();
            blocks[v].push(k);
        }
        Ok(OrderedBasis { ids, vertex_of, blocks, local, index })
    }

    /// Builds a basis from ids in global order and a map id → vertex id.
    pub fn from_ids(q: &Quiver, order: &[String], vertex_of: &BTreeMap<String, String>) -> Result<OrderedBasis> {
        let mut vo = Vec::with_capacity(order.len());
        for id in order {
            let v = vertex_of.get(id).ok_or_else(|| Error::Input(format!("basis element {id} has no vertex")))?;
            vo.push(q.vertex_or_err(v)?);
        }
        if vertex_of.len() != order.len() {
            return input("vertex_of mentions basis elements missing from the order");
        }
        OrderedBasis::new(q.vertex_count(), order.to_vec(), vo)
    }

    /// Blocks laid out vertex by vertex with ids `b1, b2, …`.
    pub fn standard(dims: &[usize]) -> OrderedBasis {
        let mut ids = Vec::new();
        let mut vo = Vec::new();
        for (v, &d) in dims.iter().enumerate() {
            for _ in 0..d {
                ids.push(format!("b{}", ids.len() + 1));
                vo.push(v);
            }
        }
        OrderedBasis::new(dims.len(), ids, vo).expect("standard basis is valid")
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, k: usize) -> &str {
        &self.ids[k]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn vertex_of(&self, k: usize) -> usize {
        self.vertex_of[k]
    }

    pub fn vertex_assignment(&self) -> &[usize] {
        &self.vertex_of
    }

    /// Index of element `k` within its block.
    pub fn local(&self, k: usize) -> usize {
        self.local[k]
    }

    pub fn block(&self, v: usize) -> &[usize] {
        &self.blocks[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn rank_vector(&self) -> DimVector {
        DimVector(self.blocks.iter().map(|b| b.len()).collect())
    }

    /// Same ordered set, blocks regrouped by `new_vertex_of`.
    pub fn regroup(&self, vertex_count: usize, new_vertex_of: Vec<usize>) -> Result<OrderedBasis> {
        OrderedBasis::new(vertex_count, self.ids.clone(), new_vertex_of)
    }

    /// Vertex order induced by the block positions.
    pub fn vertex_order(&self) -> VertexOrder {
        VertexOrder::from_blocks(&self.blocks)
    }
}

/// A dimension vector indexed by vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    /// Parses `"1,2"` (quiver vertex order) or `"x=1,y=2"` (unlisted vertices default to 0).
    pub fn parse(q: &Quiver, text: &str) -> Result<DimVector> {
        let parts: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        if parts.iter().any(|p| p.contains('=')) {
            let mut e = vec![0; q.vertex_count()];
            for p in parts {
                let (v, n) = p.split_once('=').ok_or_else(|| Error::Input(format!("bad dimension entry {p}")))?;
                e[q.vertex_or_err(v.trim())?] = parse_usize(n)?;
            }
            return Ok(DimVector(e));
        }
        if parts.len() != q.vertex_count() {
            return input(format!("dimension vector needs {} entries, got {}", q.vertex_count(), parts.len()));
        }
        Ok(DimVector(parts.iter().map(|p| parse_usize(p)).collect::<Result<_>>()?))
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn le(&self, other: &DimVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn to_map(&self, q: &Quiver) -> BTreeMap<String, usize> {
        self.0.iter().enumerate().map(|(v, &e)| (q.vertex_id(v).to_string(), e)).collect()
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    }
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim().parse().map_err(|_| Error::Input(format!("not a nonnegative integer: {s}")))
}

/// A representation of a quiver: integer matrices `M_α` of shape `#B_{t(α)} × #B_{s(α)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    quiver: Quiver,
    basis: OrderedBasis,
    matrices: Vec<IntMatrix>,
}

impl Representation {
    pub fn new(quiver: Quiver, basis: OrderedBasis, matrices: Vec<IntMatrix>) -> Result<Representation> {
        if basis.vertex_count() != quiver.vertex_count() {
            return input("basis and quiver disagree on the number of vertices");
        }
        if matrices.len() != quiver.arrow_count() {
            return input("one matrix per arrow is required");
        }
        for (a, m) in quiver.arrows().iter().zip(&matrices) {
            let (r, c) = (basis.block(a.tgt).len(), basis.block(a.src).len());
            if m.rows() != r || m.cols() != c {
                return input(format!(
                    "matrix of arrow {} has shape {}x{}, expected {}x{}",
                    a.id,
                    m.rows(),
                    m.cols(),
                    r,
                    c
                ));
            }
        }
        Ok(Representation { quiver, basis, matrices })
    }

    /// Representation with standard basis `b1, b2, …` laid out vertex by vertex.
    pub fn with_standard_basis(quiver: Quiver, dims: &[usize], matrices: Vec<IntMatrix>) -> Result<Representation> {
        if dims.len() != quiver.vertex_count() {
            return input("one rank per vertex is required");
        }
        Representation::new(quiver, OrderedBasis::standard(dims), matrices)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn basis(&self) -> &OrderedBasis {
        &self.basis
    }

    pub fn matrix(&self, a: usize) -> &IntMatrix {
        &self.matrices[a]
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    pub fn rank_vector(&self) -> DimVector {
        self.basis.rank_vector()
    }

    /// Image of basis element `k` (global position) under arrow `a`, as `(target position, coefficient)`.
    pub fn apply_to_basis(&self, a: usize, k: usize) -> Vec<(usize, i64)> {
        let arrow = self.quiver.arrow(a);
        debug_assert_eq!(self.basis.vertex_of(k), arrow.src);
        let c = self.basis.local(k);
        let m = &self.matrices[a];
        self.basis
            .block(arrow.tgt)
            .iter()
            .enumerate()
            .filter_map(|(r, &pos)| {
                let v = m.get(r, c);
                (v != 0).then_some((pos, v))
            })
            .collect()
    }

    /// Same representation with the basis reordered; matrices are permuted accordingly.
    pub fn reorder(&self, order: &[String]) -> Result<Representation> {
        let map: BTreeMap<String, String> = (0..self.basis.len())
            .map(|k| (self.basis.id(k).to_string(), self.quiver.vertex_id(self.basis.vertex_of(k)).to_string()))
            .collect();
        let basis = OrderedBasis::from_ids(&self.quiver, order, &map)?;
        let matrices = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let mut m = IntMatrix::zeros(basis.block(arrow.tgt).len(), basis.block(arrow.src).len());
                for (c, &col) in basis.block(arrow.src).iter().enumerate() {
                    for (r, &row) in basis.block(arrow.tgt).iter().enumerate() {
                        let old_r = self.basis.local(self.basis.position(basis.id(row)).unwrap());
                        let old_c = self.basis.local(self.basis.position(basis.id(col)).unwrap());
                        m.set(r, c, self.matrices[a].get(old_r, old_c));
                    }
                }
                m
            })
            .collect();
        Representation::new(self.quiver.clone(), basis, matrices)
    }
}

/// `M_S` together with the map from its basis positions to positions in `M`.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub representation: Representation,
    pub parent_position: Vec<usize>,
}

/// The restriction `M_S` with basis `B ∩ M_S` in the inherited order.
pub fn restrict(m: &Representation, s: &Subquiver) -> Result<Restriction> {
    s.check_in(m.quiver())?;
    let sub = s.as_quiver(m.quiver());
    let mut new_vertex = vec![usize::MAX; m.quiver().vertex_count()];
    for (i, v) in s.vertices().enumerate() {
        new_vertex[v] = i;
    }
    let basis = m.basis();
    let mut ids = Vec::new();
    let mut vo = Vec::new();
    let mut parent_position = Vec::new();
    for k in 0..basis.len() {
        let v = basis.vertex_of(k);
        if s.contains_vertex(v) {
            ids.push(basis.id(k).to_string());
            vo.push(new_vertex[v]);
            parent_position.push(k);
        }
    }
    let sub_basis = OrderedBasis::new(sub.vertex_count(), ids, vo)?;
    let matrices = s.arrows().map(|a| m.matrix(a).clone()).collect();
    Ok(Restriction { representation: Representation::new(sub, sub_basis, matrices)?, parent_position })
}

/// The push-forward `F_*M` over the codomain of `f`; the basis is `B` regrouped by image vertex.
pub fn push_forward(f: &QuiverMorphism, m: &Representation) -> Result<Representation> {
    if f.domain() != m.quiver() {
        return input("morphism domain differs from the representation's quiver");
    }
    let q = f.codomain();
    let mb = m.basis();
    let new_vo: Vec<usize> = (0..mb.len()).map(|k| f.map_vertex(mb.vertex_of(k))).collect();
    let basis = mb.regroup(q.vertex_count(), new_vo)?;
    let mut matrices: Vec<IntMatrix> = q
        .arrows()
        .iter()
        .map(|a| IntMatrix::zeros(basis.block(a.tgt).len(), basis.block(a.src).len()))
        .collect();
    for (a, arrow) in m.quiver().arrows().iter().enumerate() {
        let image = f.map_arrow(a);
        let big = &mut matrices[image];
        for (c, &col) in mb.block(arrow.src).iter().enumerate() {
            for (r, &row) in mb.block(arrow.tgt).iter().enumerate() {
                let v = m.matrix(a).get(r, c);
                if v != 0 {
                    big.add_to(basis.local(row), basis.local(col), v);
                }
            }
        }
    }
    Representation::new(q.clone(), basis, matrices)
}

/// `M1 ⊕ M2` with block-diagonal matrices. The merged global order defaults to `B1` followed by `B2`.
pub fn direct_sum(m1: &Representation, m2: &Representation, order: Option<&[String]>) -> Result<Representation> {
    if m1.quiver() != m2.quiver() {
        return input("direct sum needs representations of the same quiver");
    }
    let q = m1.quiver();
    let mut vertex_of = BTreeMap::new();
    for m in [m1, m2] {
        for k in 0..m.basis().len() {
            let id = m.basis().id(k).to_string();
            if vertex_of.insert(id.clone(), q.vertex_id(m.basis().vertex_of(k)).to_string()).is_some() {
                return input(format!("basis id {id} occurs in both summands"));
            }
        }
    }
    let default: Vec<String> = m1.basis().ids().iter().chain(m2.basis().ids()).cloned().collect();
    let order = order.map(|o| o.to_vec()).unwrap_or(default);
    let basis = OrderedBasis::from_ids(q, &order, &vertex_of)?;
    let mut matrices: Vec<IntMatrix> = q
        .arrows()
        .iter()
        .map(|a| IntMatrix::zeros(basis.block(a.tgt).len(), basis.block(a.src).len()))
        .collect();
    for m in [m1, m2] {
        let mb = m.basis();
        for (a, arrow) in q.arrows().iter().enumerate() {
            for (c, &col) in mb.block(arrow.src).iter().enumerate() {
                for (r, &row) in mb.block(arrow.tgt).iter().enumerate() {
                    let nr = basis.local(basis.position(mb.id(row)).unwrap());
                    let nc = basis.local(basis.position(mb.id(col)).unwrap());
                    matrices[a].set(nr, nc, m.matrix(a).get(r, c));
                }
            }
        }
    }
    Representation::new(q.clone(), basis, matrices)
}

/// Interpretation of "paths" in the ordered-above condition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PathMode {
    /// Walks along arrows in either direction.
    #[default]
    Undirected,
    /// Walks following arrow direction only.
    Directed,
}

/// The four clauses of "ordered above S", each with diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedAboveReport {
    pub subquiver_basis_first: bool,
    pub induces_vertex_order: bool,
    pub monotone_paths: bool,
    pub identity_on_difference: bool,
    pub diagnostics: Vec<String>,
}

impl OrderedAboveReport {
    pub fn holds(&self) -> bool {
        self.subquiver_basis_first && self.induces_vertex_order && self.monotone_paths && self.identity_on_difference
    }
}

/// Checks whether the basis of `m` is ordered above `s`.
pub fn is_ordered_above(m: &Representation, s: &Subquiver, mode: PathMode) -> Result<OrderedAboveReport> {
    let t = m.quiver();
    s.check_in(t)?;
    let basis = m.basis();
    let mut diagnostics = Vec::new();

    let in_s = |k: usize| s.contains_vertex(basis.vertex_of(k));
    let last_s = (0..basis.len()).filter(|&k| in_s(k)).max();
    let first_rest = (0..basis.len()).filter(|&k| !in_s(k)).min();
    let subquiver_basis_first = match (last_s, first_rest) {
        (Some(a), Some(b)) => a < b,
        _ => true,
    };
    if !subquiver_basis_first {
        diagnostics.push("basis of the subquiver is not an initial segment of the basis".to_string());
    }

    let order = basis.vertex_order();
    let induces_vertex_order = match order.ranks(t) {
        Ok(_) => true,
        Err(e) => {
            diagnostics.push(e.to_string());
            false
        }
    };

    let diff = difference_of(t, s)?;
    let mut monotone_paths = true;
    if induces_vertex_order {
        let mut adj = vec![Vec::new(); t.vertex_count()];
        for a in t.arrows() {
            adj[a.src].push(a.tgt);
            if mode == PathMode::Undirected {
                adj[a.tgt].push(a.src);
            }
        }
        for p0 in s.vertices().filter(|&v| diff.contains_vertex(v)) {
            let mut path = vec![p0];
            if let Some((v, w)) = descending_step(&adj, s, &order, &mut path) {
                diagnostics.push(format!(
                    "path from {} descends from {} to {}",
                    t.vertex_id(p0),
                    t.vertex_id(v),
                    t.vertex_id(w)
                ));
                monotone_paths = false;
                break;
            }
        }
    } else {
        monotone_paths = false;
    }

    let mut identity_on_difference = true;
    for a in diff.arrows() {
        if !m.matrix(a).is_identity() {
            diagnostics.push(format!("matrix of arrow {} is not the identity", t.arrow(a).id));
            identity_on_difference = false;
        }
    }
    Ok(OrderedAboveReport { subquiver_basis_first, induces_vertex_order, monotone_paths, identity_on_difference, diagnostics })
}

/// Extends `path` through vertices outside `s`; returns the first non-increasing step.
fn descending_step(
    adj: &[Vec<usize>],
    s: &Subquiver,
    order: &VertexOrder,
    path: &mut Vec<usize>,
) -> Option<(usize, usize)> {
    let v = *path.last().unwrap();
    for &w in &adj[v] {
        if s.contains_vertex(w) || path.contains(&w) {
            continue;
        }
        if !order.less(v, w) {
            return Some((v, w));
        }
        path.push(w);
        if let Some(bad) = descending_step(adj, s, order, path) {
            return Some(bad);
        }
        path.pop();
    }
    None
}

/// Requires that the basis of `m` is ordered above `s`.
pub fn require_ordered_above(m: &Representation, s: &Subquiver) -> Result<()> {
    let report = is_ordered_above(m, s, PathMode::Undirected)?;
    if report.holds() {
        Ok(())
    } else {
        precondition(format!("basis is not ordered above the subquiver: {}", report.diagnostics.join("; ")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flag22() -> Representation {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        Representation::with_standard_basis(q, &[2, 2], vec![IntMatrix::identity(2)]).unwrap()
    }

    #[test]
    fn shapes_are_checked() {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        assert!(Representation::with_standard_basis(q, &[2, 1], vec![IntMatrix::identity(2)]).is_err());
    }

    #[test]
    fn restriction_keeps_order() {
        let m = flag22();
        let s = Subquiver::induced(m.quiver(), &["1"]).unwrap();
        let r = restrict(&m, &s).unwrap();
        assert_eq!(r.representation.basis().ids(), &["b1", "b2"]);
        assert_eq!(r.parent_position, vec![0, 1]);
        let full = restrict(&m, &Subquiver::full(m.quiver())).unwrap();
        assert_eq!(full.representation, m);
    }

    #[test]
    fn ordered_above_flag() {
        let m = flag22();
        let s = Subquiver::induced(m.quiver(), &["1"]).unwrap();
        assert!(is_ordered_above(&m, &s, PathMode::Undirected).unwrap().holds());
        let rev: Vec<String> = ["b3", "b4", "b1", "b2"].iter().map(|s| s.to_string()).collect();
        let r = m.reorder(&rev).unwrap();
        let rep = is_ordered_above(&r, &s, PathMode::Undirected).unwrap();
        assert!(!rep.subquiver_basis_first);
        assert!(!rep.holds());
    }

    #[test]
    fn direct_sum_with_zero() {
        let m = flag22();
        let zero = Representation::with_standard_basis(m.quiver().clone(), &[0, 0], vec![IntMatrix::zeros(0, 0)]).unwrap();
        assert_eq!(direct_sum(&m, &zero, None).unwrap(), m);
    }

    #[test]
    fn dim_vector_parsing() {
        let q = Quiver::new(&["x", "y"], &[]).unwrap();
        assert_eq!(DimVector::parse(&q, "1,2").unwrap().0, vec![1, 2]);
        assert_eq!(DimVector::parse(&q, "y=3").unwrap().0, vec![0, 3]);
        assert!(DimVector::parse(&q, "1").is_err());
    }
}
