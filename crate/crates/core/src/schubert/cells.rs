use std::cmp::Ordering;

use crate::error::{input, Result};
use crate::representation::{DimVector, OrderedBasis};

/// A subset `β` of the basis, stored as sorted global positions.
///
/// `Ord` is colexicographic: sets are compared from their largest element down.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellIndex(Vec<usize>);

impl CellIndex {
    pub fn new(mut positions: Vec<usize>) -> CellIndex {
        positions.sort_unstable();
        positions.dedup();
        CellIndex(positions)
    }

    pub fn from_ids<S: AsRef<str>>(basis: &OrderedBasis, ids: &[S]) -> Result<CellIndex> {
        let mut pos = Vec::with_capacity(ids.len());
        for id in ids {
            match basis.position(id.as_ref()) {
                Some(k) => pos.push(k),
                None => return input(format!("{} is not a basis element", id.as_ref())),
            }
        }
        let n = pos.len();
        let beta = CellIndex::new(pos);
        if beta.0.len() != n {
            return input("cell index lists a basis element twice");
        }
        Ok(beta)
    }

    /// Parses a comma-separated list of basis ids.
    pub fn parse(basis: &OrderedBasis, text: &str) -> Result<CellIndex> {
        let ids: Vec<&str> =
            text.trim_matches(|c| c == '{' || c == '}').split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        CellIndex::from_ids(basis, &ids)
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.0.binary_search(&k).is_ok()
    }

    /// Column index of `k` within `β`.
    pub fn column_of(&self, k: usize) -> Option<usize> {
        self.0.binary_search(&k).ok()
    }

    pub fn type_in(&self, basis: &OrderedBasis) -> DimVector {
        let mut e = vec![0; basis.vertex_count()];
        for &k in &self.0 {
            e[basis.vertex_of(k)] += 1;
        }
        DimVector(e)
    }

    /// `β_v` in increasing order.
    pub fn at_vertex(&self, basis: &OrderedBasis, v: usize) -> Vec<usize> {
        self.0.iter().copied().filter(|&k| basis.vertex_of(k) == v).collect()
    }

    pub fn ids(&self, basis: &OrderedBasis) -> Vec<String> {
        self.0.iter().map(|&k| basis.id(k).to_string()).collect()
    }

    pub fn display(&self, basis: &OrderedBasis) -> String {
        format!("{{{}}}", self.ids(basis).join(","))
    }

    /// `β ∩ B'` re-expressed in positions of a sub-basis; `parent_position[i]` is the parent position of `i`.
    pub fn restrict_to(&self, parent_position: &[usize]) -> CellIndex {
        CellIndex::new((0..parent_position.len()).filter(|&i| self.contains(parent_position[i])).collect())
    }

    pub fn check_in(&self, basis: &OrderedBasis) -> Result<()> {
        match self.0.last() {
            Some(&k) if k >= basis.len() => input("cell index is not a subset of the basis"),
            _ => Ok(()),
        }
    }
}

impl Ord for CellIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for CellIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All `k`-subsets of `items`, each sorted.
pub(crate) fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

/// All subsets of the basis of type `e`, in canonical (colexicographic) order.
pub fn enumerate_cells(basis: &OrderedBasis, e: &DimVector) -> Result<Vec<CellIndex>> {
    let m = basis.rank_vector();
    if !e.le(&m) {
        return input(format!("dimension vector ({e}) exceeds the rank vector ({m})"));
    }
    let mut cells: Vec<Vec<usize>> = vec![Vec::new()];
    for v in 0..basis.vertex_count() {
        let choices = combinations(basis.block(v), e.0[v]);
        let mut next = Vec::with_capacity(cells.len() * choices.len());
        for c in &cells {
            for ch in &choices {
                let mut x = c.clone();
                x.extend_from_slice(ch);
                next.push(x);
            }
        }
        cells = next;
    }
    let mut out: Vec<CellIndex> = cells.into_iter().map(CellIndex::new).collect();
    out.sort();
    Ok(out)
}

/// `β ⪯ γ`: per vertex, the `l`-th smallest element of `β_p` is at most that of `γ_p`.
pub fn preceq(basis: &OrderedBasis, beta: &CellIndex, gamma: &CellIndex) -> bool {
    (0..basis.vertex_count()).all(|v| {
        let (b, c) = (beta.at_vertex(basis, v), gamma.at_vertex(basis, v));
        b.len() == c.len() && b.iter().zip(&c).all(|(x, y)| x <= y)
    })
}

/// `β ≤ β′`: `(β − β′) < (β ∩ β′) < (β′ − β)` elementwise.
pub fn block_le(beta: &CellIndex, other: &CellIndex) -> bool {
    let only_b: Vec<usize> = beta.0.iter().copied().filter(|&k| !other.contains(k)).collect();
    let both: Vec<usize> = beta.0.iter().copied().filter(|&k| other.contains(k)).collect();
    let only_o: Vec<usize> = other.0.iter().copied().filter(|&k| !beta.contains(k)).collect();
    let below = |a: &[usize], b: &[usize]| match (a.iter().max(), b.iter().min()) {
        (Some(x), Some(y)) => x < y,
        _ => true,
    };
    below(&only_b, &both) && below(&both, &only_o) && below(&only_b, &only_o)
}

/// Full relation tables of `⪯` and `≤` on a list of same-type cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellOrders {
    pub cells: Vec<CellIndex>,
    pub preceq: Vec<Vec<bool>>,
    pub block_le: Vec<Vec<bool>>,
}

pub fn cell_partial_orders(basis: &OrderedBasis, cells: &[CellIndex]) -> Result<CellOrders> {
    if let Some(first) = cells.first() {
        let t = first.type_in(basis);
        if cells.iter().any(|c| c.type_in(basis) != t) {
            return input("cells of different types cannot be compared");
        }
    }
    let table = |f: &dyn Fn(&CellIndex, &CellIndex) -> bool| -> Vec<Vec<bool>> {
        cells.iter().map(|a| cells.iter().map(|b| f(a, b)).collect()).collect()
    };
    Ok(CellOrders {
        cells: cells.to_vec(),
        preceq: table(&|a, b| preceq(basis, a, b)),
        block_le: table(&|a, b| block_le(a, b)),
    })
}
