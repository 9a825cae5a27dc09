//! Finite quivers, subquivers, quotients and quiver morphisms.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{input, precondition, Error, Result};

/// Raw quiver data as read from JSON, before validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// A violated quiver invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuiverIssue {
    DuplicateVertex(String),
    DuplicateArrow(String),
    DanglingSource { arrow: String, vertex: String },
    DanglingTarget { arrow: String, vertex: String },
}

impl fmt::Display for QuiverIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverIssue::DuplicateVertex(v) => write!(f, "duplicate vertex id {v}"),
            QuiverIssue::DuplicateArrow(a) => write!(f, "duplicate arrow id {a}"),
            QuiverIssue::DanglingSource { arrow, vertex } => {
                write!(f, "dangling endpoint: arrow {arrow} has undeclared source {vertex}")
            }
            QuiverIssue::DanglingTarget { arrow, vertex } => {
                write!(f, "dangling endpoint: arrow {arrow} has undeclared target {vertex}")
            }
        }
    }
}

impl QuiverSpec {
    /// All violated invariants; empty when the spec is a valid quiver.
    pub fn validate(&self) -> Vec<QuiverIssue> {
        let mut issues = Vec::new();
        let mut seen = HashSet::new();
        for v in &self.vertices {
            if !seen.insert(v.as_str()) {
                issues.push(QuiverIssue::DuplicateVertex(v.clone()));
            }
        }
        let mut seen_arrows = HashSet::new();
        for a in &self.arrows {
            if !seen_arrows.insert(a.id.as_str()) {
                issues.push(QuiverIssue::DuplicateArrow(a.id.clone()));
            }
            if !seen.contains(a.src.as_str()) {
                issues.push(QuiverIssue::DanglingSource { arrow: a.id.clone(), vertex: a.src.clone() });
            }
            if !seen.contains(a.tgt.as_str()) {
                issues.push(QuiverIssue::DanglingTarget { arrow: a.id.clone(), vertex: a.tgt.clone() });
            }
        }
        issues
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// A validated finite quiver. Vertices and arrows are addressed by index.
#[derive(Clone, Debug)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    pub fn from_spec(spec: &QuiverSpec) -> Result<Quiver> {
        let issues = spec.validate();
        if !issues.is_empty() {
            return Err(Error::InvalidQuiver(issues));
        }
        let vertex_index: HashMap<String, usize> =
            spec.vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let arrows: Vec<Arrow> = spec
            .arrows
            .iter()
            .map(|a| Arrow { id: a.id.clone(), src: vertex_index[&a.src], tgt: vertex_index[&a.tgt] })
            .collect();
        let arrow_index = arrows.iter().enumerate().map(|(i, a)| (a.id.clone(), i)).collect();
        Ok(Quiver { vertices: spec.vertices.clone(), arrows, vertex_index, arrow_index })
    }

    /// Convenience constructor from `(id, src, tgt)` triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(&str, &str, &str)]) -> Result<Quiver> {
        Quiver::from_spec(&QuiverSpec {
            vertices: vertices.iter().map(|v| v.as_ref().to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(id, s, t)| ArrowSpec { id: id.to_string(), src: s.to_string(), tgt: t.to_string() })
                .collect(),
        })
    }

    pub fn to_spec(&self) -> QuiverSpec {
        QuiverSpec {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowSpec {
                    id: a.id.clone(),
                    src: self.vertices[a.src].clone(),
                    tgt: self.vertices[a.tgt].clone(),
                })
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn arrow_by_id(&self, id: &str) -> Option<usize> {
        self.arrow_index.get(id).copied()
    }

    pub fn vertex_or_err(&self, id: &str) -> Result<usize> {
        self.vertex(id).ok_or_else(|| Error::Input(format!("unknown vertex {id}")))
    }

    pub fn arrow_or_err(&self, id: &str) -> Result<usize> {
        self.arrow_by_id(id).ok_or_else(|| Error::Input(format!("unknown arrow {id}")))
    }

    /// Undirected adjacency lists `(neighbour, arrow)`; loops appear once.
    pub fn undirected_adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (i, a) in self.arrows.iter().enumerate() {
            adj[a.src].push((a.tgt, i));
            if a.src != a.tgt {
                adj[a.tgt].push((a.src, i));
            }
        }
        adj
    }

    /// Connected components of the underlying undirected graph, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.undirected_adjacency();
        let mut comp = vec![usize::MAX; self.vertices.len()];
        let mut out = Vec::new();
        for start in 0..self.vertices.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &(w, _) in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

/// A subquiver `S ⊆ Q`, stored as membership masks over the parent's vertices and arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subquiver {
    vertex_mask: Vec<bool>,
    arrow_mask: Vec<bool>,
}

impl Subquiver {
    pub fn new<S: AsRef<str>>(parent: &Quiver, vertices: &[S], arrows: &[S]) -> Result<Subquiver> {
        let mut vertex_mask = vec![false; parent.vertex_count()];
        let mut arrow_mask = vec![false; parent.arrow_count()];
        for v in vertices {
            vertex_mask[parent.vertex_or_err(v.as_ref())?] = true;
        }
        for a in arrows {
            arrow_mask[parent.arrow_or_err(a.as_ref())?] = true;
        }
        Subquiver::from_masks(parent, vertex_mask, arrow_mask)
    }

    pub fn from_masks(parent: &Quiver, vertex_mask: Vec<bool>, arrow_mask: Vec<bool>) -> Result<Subquiver> {
        let s = Subquiver { vertex_mask, arrow_mask };
        s.check_in(parent)?;
        Ok(s)
    }

    /// The full subquiver on the given vertices.
    pub fn induced<S: AsRef<str>>(parent: &Quiver, vertices: &[S]) -> Result<Subquiver> {
        let mut vertex_mask = vec![false; parent.vertex_count()];
        for v in vertices {
            vertex_mask[parent.vertex_or_err(v.as_ref())?] = true;
        }
        let arrow_mask = parent.arrows().iter().map(|a| vertex_mask[a.src] && vertex_mask[a.tgt]).collect();
        Ok(Subquiver { vertex_mask, arrow_mask })
    }

    pub fn full(parent: &Quiver) -> Subquiver {
        Subquiver { vertex_mask: vec![true; parent.vertex_count()], arrow_mask: vec![true; parent.arrow_count()] }
    }

    pub fn empty(parent: &Quiver) -> Subquiver {
        Subquiver { vertex_mask: vec![false; parent.vertex_count()], arrow_mask: vec![false; parent.arrow_count()] }
    }

    /// Checks that this is a subquiver of `parent`.
    pub fn check_in(&self, parent: &Quiver) -> Result<()> {
        if self.vertex_mask.len() != parent.vertex_count() || self.arrow_mask.len() != parent.arrow_count() {
            return precondition("subquiver does not belong to this quiver");
        }
        for (i, a) in parent.arrows().iter().enumerate() {
            if self.arrow_mask[i] && !(self.vertex_mask[a.src] && self.vertex_mask[a.tgt]) {
                return precondition(format!("subquiver arrow {} has an endpoint outside the subquiver", a.id));
            }
        }
        Ok(())
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertex_mask[v]
    }

    pub fn contains_arrow(&self, a: usize) -> bool {
        self.arrow_mask[a]
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertex_mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn arrows(&self) -> impl Iterator<Item = usize> + '_ {
        self.arrow_mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn vertex_ids(&self, parent: &Quiver) -> Vec<String> {
        self.vertices().map(|v| parent.vertex_id(v).to_string()).collect()
    }

    pub fn arrow_ids(&self, parent: &Quiver) -> Vec<String> {
        self.arrows().map(|a| parent.arrow(a).id.clone()).collect()
    }

    pub fn is_empty(&self) -> bool {
        !self.vertex_mask.iter().any(|&b| b)
    }

    /// The subquiver as a standalone quiver, vertices and arrows in parent order.
    pub fn as_quiver(&self, parent: &Quiver) -> Quiver {
        let vertices = self.vertex_ids(parent);
        let arrows: Vec<ArrowSpec> = self
            .arrows()
            .map(|a| {
                let ar = parent.arrow(a);
                ArrowSpec {
                    id: ar.id.clone(),
                    src: parent.vertex_id(ar.src).to_string(),
                    tgt: parent.vertex_id(ar.tgt).to_string(),
                }
            })
            .collect();
        Quiver::from_spec(&QuiverSpec { vertices, arrows }).expect("subquiver of a valid quiver is valid")
    }
}

/// Id of the vertex that `S` collapses to in `T/S`.
pub const COLLAPSED_VERTEX: &str = "S";

/// The quotient `T/S`: arrows of `S` removed, vertices of `S` identified to the vertex `"S"`.
pub fn quotient_by(t: &Quiver, s: &Subquiver) -> Result<Quiver> {
    s.check_in(t)?;
    let mut vertices = Vec::new();
    let collapse = !s.is_empty();
    if collapse {
        if t.vertices().iter().enumerate().any(|(i, v)| v == COLLAPSED_VERTEX && !s.contains_vertex(i)) {
            return input("vertex id \"S\" is reserved for the collapsed subquiver");
        }
        vertices.push(COLLAPSED_VERTEX.to_string());
    }
    let name = |v: usize| -> String {
        if s.contains_vertex(v) {
            COLLAPSED_VERTEX.to_string()
        } else {
            t.vertex_id(v).to_string()
        }
    };
    vertices.extend((0..t.vertex_count()).filter(|&v| !s.contains_vertex(v)).map(|v| t.vertex_id(v).to_string()));
    let arrows = (0..t.arrow_count())
        .filter(|&a| !s.contains_arrow(a))
        .map(|a| {
            let ar = t.arrow(a);
            ArrowSpec { id: ar.id.clone(), src: name(ar.src), tgt: name(ar.tgt) }
        })
        .collect();
    Quiver::from_spec(&QuiverSpec { vertices, arrows })
}

/// `T − S`: all arrows outside `S` with their endpoints, plus all vertices outside `S`.
pub fn difference_of(t: &Quiver, s: &Subquiver) -> Result<Subquiver> {
    s.check_in(t)?;
    let mut vertex_mask: Vec<bool> = (0..t.vertex_count()).map(|v| !s.contains_vertex(v)).collect();
    let arrow_mask: Vec<bool> = (0..t.arrow_count()).map(|a| !s.contains_arrow(a)).collect();
    for (i, a) in t.arrows().iter().enumerate() {
        if arrow_mask[i] {
            vertex_mask[a.src] = true;
            vertex_mask[a.tgt] = true;
        }
    }
    Ok(Subquiver { vertex_mask, arrow_mask })
}

/// Whether the underlying undirected multigraph is a tree, via union-find cycle detection.
pub fn is_tree(q: &Quiver) -> bool {
    let n = q.vertex_count();
    if n == 0 {
        return false;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut merges = 0;
    for a in q.arrows() {
        let (x, y) = (find(&mut parent, a.src), find(&mut parent, a.tgt));
        if x == y {
            return false;
        }
        parent[x] = y;
        merges += 1;
    }
    merges == n - 1
}

/// Tree test by counting: `#edges = #vertices − 1` and connected.
pub fn is_tree_by_count(q: &Quiver) -> bool {
    q.vertex_count() > 0 && q.arrow_count() + 1 == q.vertex_count() && q.components().len() == 1
}

/// Whether `T/S` is a tree.
pub fn is_tree_extension(t: &Quiver, s: &Subquiver) -> Result<bool> {
    Ok(is_tree(&quotient_by(t, s)?))
}

/// Undirected distance from every vertex to the vertex set of `s`; `None` when unreachable.
pub fn distances_to(t: &Quiver, s: &Subquiver) -> Vec<Option<usize>> {
    let adj = t.undirected_adjacency();
    let mut dist = vec![None; t.vertex_count()];
    let mut queue = VecDeque::new();
    for v in s.vertices() {
        dist[v] = Some(0);
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap();
        for &(w, _) in &adj[v] {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// A morphism of quivers, stored as index maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverMorphism {
    domain: Quiver,
    codomain: Quiver,
    vertex_map: Vec<usize>,
    arrow_map: Vec<usize>,
}

impl QuiverMorphism {
    pub fn from_maps(
        domain: Quiver,
        codomain: Quiver,
        vertex_map: &BTreeMap<String, String>,
        arrow_map: &BTreeMap<String, String>,
    ) -> Result<QuiverMorphism> {
        let mut vm = Vec::with_capacity(domain.vertex_count());
        for v in domain.vertices() {
            let image = vertex_map.get(v).ok_or_else(|| Error::Input(format!("vertex {v} has no image")))?;
            vm.push(codomain.vertex_or_err(image)?);
        }
        let mut am = Vec::with_capacity(domain.arrow_count());
        for a in domain.arrows() {
            let image = arrow_map.get(&a.id).ok_or_else(|| Error::Input(format!("arrow {} has no image", a.id)))?;
            am.push(codomain.arrow_or_err(image)?);
        }
        for k in vertex_map.keys() {
            domain.vertex_or_err(k)?;
        }
        for k in arrow_map.keys() {
            domain.arrow_or_err(k)?;
        }
        QuiverMorphism::from_indices(domain, codomain, vm, am)
    }

    pub fn new(
        domain: Quiver,
        codomain: Quiver,
        vertex_map: &[(&str, &str)],
        arrow_map: &[(&str, &str)],
    ) -> Result<QuiverMorphism> {
        let vm = vertex_map.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        let am = arrow_map.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        QuiverMorphism::from_maps(domain, codomain, &vm, &am)
    }

    pub fn from_indices(
        domain: Quiver,
        codomain: Quiver,
        vertex_map: Vec<usize>,
        arrow_map: Vec<usize>,
    ) -> Result<QuiverMorphism> {
        if vertex_map.len() != domain.vertex_count() || arrow_map.len() != domain.arrow_count() {
            return input("morphism maps do not cover the domain");
        }
        for (i, a) in domain.arrows().iter().enumerate() {
            let image = codomain.arrow(arrow_map[i]);
            if vertex_map[a.src] != image.src || vertex_map[a.tgt] != image.tgt {
                return input(format!("arrow {} is not mapped compatibly with its endpoints", a.id));
            }
        }
        Ok(QuiverMorphism { domain, codomain, vertex_map, arrow_map })
    }

    pub fn identity(q: &Quiver) -> QuiverMorphism {
        QuiverMorphism {
            domain: q.clone(),
            codomain: q.clone(),
            vertex_map: (0..q.vertex_count()).collect(),
            arrow_map: (0..q.arrow_count()).collect(),
        }
    }

    pub fn domain(&self) -> &Quiver {
        &self.domain
    }

    pub fn codomain(&self) -> &Quiver {
        &self.codomain
    }

    pub fn map_vertex(&self, v: usize) -> usize {
        self.vertex_map[v]
    }

    pub fn map_arrow(&self, a: usize) -> usize {
        self.arrow_map[a]
    }

    pub fn vertex_map_ids(&self) -> BTreeMap<String, String> {
        (0..self.domain.vertex_count())
            .map(|v| (self.domain.vertex_id(v).to_string(), self.codomain.vertex_id(self.vertex_map[v]).to_string()))
            .collect()
    }

    pub fn arrow_map_ids(&self) -> BTreeMap<String, String> {
        (0..self.domain.arrow_count())
            .map(|a| (self.domain.arrow(a).id.clone(), self.codomain.arrow(self.arrow_map[a]).id.clone()))
            .collect()
    }

    /// Domain arrows over codomain arrow `a`, in domain order.
    pub fn arrow_fibre(&self, a: usize) -> Vec<usize> {
        (0..self.domain.arrow_count()).filter(|&x| self.arrow_map[x] == a).collect()
    }

    /// Domain vertices over codomain vertex `v`, in domain order.
    pub fn vertex_fibre(&self, v: usize) -> Vec<usize> {
        (0..self.domain.vertex_count()).filter(|&x| self.vertex_map[x] == v).collect()
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &QuiverMorphism) -> Result<QuiverMorphism> {
        if self.codomain != g.domain {
            return input("morphisms are not composable");
        }
        Ok(QuiverMorphism {
            domain: self.domain.clone(),
            codomain: g.codomain.clone(),
            vertex_map: self.vertex_map.iter().map(|&v| g.vertex_map[v]).collect(),
            arrow_map: self.arrow_map.iter().map(|&a| g.arrow_map[a]).collect(),
        })
    }

    /// Restriction to a subquiver of the domain, whose domain is `s.as_quiver(domain)`.
    pub fn restrict(&self, s: &Subquiver) -> Result<QuiverMorphism> {
        s.check_in(&self.domain)?;
        let sub = s.as_quiver(&self.domain);
        let vm = s.vertices().map(|v| self.vertex_map[v]).collect();
        let am = s.arrows().map(|a| self.arrow_map[a]).collect();
        QuiverMorphism::from_indices(sub, self.codomain.clone(), vm, am)
    }
}

/// Whether distinct arrows in a common fibre have distinct sources and distinct targets.
pub fn is_winding(f: &QuiverMorphism) -> bool {
    let arrows = f.domain().arrows();
    let mut seen_src = HashSet::new();
    let mut seen_tgt = HashSet::new();
    arrows.iter().enumerate().all(|(i, a)| {
        let image = f.map_arrow(i);
        seen_src.insert((image, a.src)) && seen_tgt.insert((image, a.tgt))
    })
}

/// A partial order on vertices. Each vertex carries a closed interval of positions;
/// `p < q` iff the interval of `p` lies strictly before that of `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrder {
    intervals: Vec<Option<(usize, usize)>>,
}

impl VertexOrder {
    /// Explicit total order: `order[k]` is the vertex of rank `k`.
    pub fn from_sequence(q: &Quiver, order: &[usize]) -> Result<VertexOrder> {
        let mut intervals = vec![None; q.vertex_count()];
        for (rank, &v) in order.iter().enumerate() {
            if v >= intervals.len() || intervals[v].is_some() {
                return input("vertex order lists a vertex twice or an unknown vertex");
            }
            intervals[v] = Some((rank, rank));
        }
        if intervals.iter().any(|i| i.is_none()) {
            return input("vertex order does not list every vertex");
        }
        Ok(VertexOrder { intervals })
    }

    pub fn from_ids<S: AsRef<str>>(q: &Quiver, order: &[S]) -> Result<VertexOrder> {
        let seq = order.iter().map(|v| q.vertex_or_err(v.as_ref())).collect::<Result<Vec<_>>>()?;
        VertexOrder::from_sequence(q, &seq)
    }

    /// Order induced by basis positions; `positions[v]` lists the global positions of `B_v`.
    pub fn from_blocks(blocks: &[Vec<usize>]) -> VertexOrder {
        VertexOrder {
            intervals: blocks
                .iter()
                .map(|b| Some((*b.iter().min()?, *b.iter().max()?)))
                .collect(),
        }
    }

    pub fn compare(&self, p: usize, q: usize) -> Option<Ordering> {
        if p == q {
            return Some(Ordering::Equal);
        }
        let (a, b) = (self.intervals[p]?, self.intervals[q]?);
        if a.1 < b.0 {
            Some(Ordering::Less)
        } else if b.1 < a.0 {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    pub fn less(&self, p: usize, q: usize) -> bool {
        self.compare(p, q) == Some(Ordering::Less)
    }

    /// Ranks `0..n` when the order is total, else an error naming an incomparable pair.
    pub fn ranks(&self, q: &Quiver) -> Result<Vec<usize>> {
        let n = self.intervals.len();
        let mut seq: Vec<usize> = (0..n).collect();
        for v in 0..n {
            if self.intervals[v].is_none() {
                return precondition(format!("vertex {} has an empty basis block and is not ordered", q.vertex_id(v)));
            }
        }
        seq.sort_by_key(|&v| self.intervals[v].unwrap().0);
        for w in seq.windows(2) {
            if !self.less(w[0], w[1]) {
                return precondition(format!(
                    "basis blocks of vertices {} and {} interleave",
                    q.vertex_id(w[0]),
                    q.vertex_id(w[1])
                ));
            }
        }
        let mut rank = vec![0; n];
        for (r, &v) in seq.iter().enumerate() {
            rank[v] = r;
        }
        Ok(rank)
    }
}

/// Whether every pair of distinct arrows in a common fibre is ordered the same way at both ends.
pub fn is_strictly_ordered(f: &QuiverMorphism, order: &VertexOrder) -> Result<bool> {
    let q = f.domain();
    for a in 0..f.codomain().arrow_count() {
        let fib = f.arrow_fibre(a);
        for (i, &x) in fib.iter().enumerate() {
            for &y in &fib[i + 1..] {
                let (ax, ay) = (q.arrow(x), q.arrow(y));
                let cs = order.compare(ax.src, ay.src);
                let ct = order.compare(ax.tgt, ay.tgt);
                let (Some(cs), Some(ct)) = (cs, ct) else {
                    return precondition(format!("order does not compare the endpoints of arrows {} and {}", ax.id, ay.id));
                };
                if cs == Ordering::Equal || cs != ct {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
