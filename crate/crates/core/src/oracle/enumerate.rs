use std::cell::RefCell;
use std::collections::{BTreeMap, VecDeque};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{gaussian_binomial, FpMatrix};
use crate::representation::{DimVector, OrderedBasis, Representation};
use crate::schubert::{enumerate_cells, CellIndex, CellPoint};

/// Default cap on the estimated number of points enumerated per prime.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Budget from `QS_BUDGET`, falling back to [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u128 {
    std::env::var("QS_BUDGET").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

/// `Π_p [m_p choose e_p]_q`, saturating.
pub fn ambient_estimate(rank: &DimVector, e: &DimVector, q: u64) -> u128 {
    rank.0.iter().zip(&e.0).fold(1u128, |acc, (&m, &k)| acc.saturating_mul(gaussian_binomial(m, k, q)))
}

pub fn check_budget(rank: &DimVector, e: &DimVector, q: u64, budget: u128) -> Result<()> {
    let estimate = ambient_estimate(rank, e, q);
    if estimate > budget {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    Ok(())
}

/// A subrepresentation over `F_p` in canonical echelon form.
///
/// `blocks[v]` is `m_v × e_v`; column `j` has a 1 at the local row of the `j`-th element of `β_v`,
/// zeros at the other pivot rows and zeros below its pivot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubrepPoint {
    pub beta: CellIndex,
    pub prime: u64,
    pub blocks: Vec<FpMatrix>,
}

impl SubrepPoint {
    /// The global `|B| × |β|` matrix of the point.
    pub fn to_cell_point(&self, basis: &OrderedBasis) -> CellPoint {
        let mut w = FpMatrix::zeros(basis.len(), self.beta.len());
        for v in 0..basis.vertex_count() {
            let bv = self.beta.at_vertex(basis, v);
            for (j, &b) in bv.iter().enumerate() {
                let col = self.beta.column_of(b).unwrap();
                for (i, &row) in basis.block(v).iter().enumerate() {
                    w.set(row, col, self.blocks[v].get(i, j));
                }
            }
        }
        CellPoint { beta: self.beta.clone(), prime: self.prime, w }
    }

    /// Spanning vectors of `V_v` in local coordinates.
    pub fn spanning_vectors(&self, v: usize) -> Vec<Vec<u64>> {
        let b = &self.blocks[v];
        (0..b.cols).map(|j| (0..b.rows).map(|i| b.get(i, j)).collect()).collect()
    }
}

/// Solutions of the linear conditions on one vertex's chart: `particular + span(kernel)`.
struct AffineSolutions {
    particular: Vec<u64>,
    kernel: Vec<Vec<u64>>,
}

/// Depth-first enumeration of one echelon chart, vertex by vertex.
///
/// Once some vertices are assigned, each arrow joining them to the next vertex imposes affine-linear
/// conditions on that vertex's chart coordinates, so only the solution space is walked. The tail
/// `order[split..]` is an independent set without loops; there the count is a product of `p^dim`.
pub(crate) struct ChartEnumerator<'a> {
    p: u64,
    mats: &'a [FpMatrix],
    arrows: Vec<(usize, usize)>,
    order: Vec<usize>,
    split: usize,
    pivots: Vec<Vec<usize>>,
    free: Vec<Vec<(usize, usize)>>,
    /// `var_of[v][i * e_v + j]` is the chart coordinate at local entry `(i, j)`.
    var_of: Vec<Vec<Option<usize>>>,
    linear: Vec<Vec<usize>>,
    loops: Vec<Vec<usize>>,
    scratch: RefCell<Scratch>,
}

#[derive(Default)]
struct Scratch {
    data: Vec<u64>,
    x: Vec<u64>,
    images: Vec<u64>,
}

/// Undirected BFS order of the vertices, component by component.
pub(crate) fn visiting_order(rep: &Representation) -> Vec<usize> {
    let q = rep.quiver();
    let adj = q.undirected_adjacency();
    let mut seen = vec![false; q.vertex_count()];
    let mut order = Vec::new();
    for start in 0..q.vertex_count() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &(w, _) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

/// Minimum-weight vertex cover by branch and bound; `forced` vertices are always in the cover.
fn min_weight_cover(adj: &[Vec<usize>], weight: &[usize], forced: &[bool]) -> Vec<bool> {
    struct Search<'a> {
        adj: &'a [Vec<usize>],
        weight: &'a [usize],
        best: Vec<bool>,
        best_weight: usize,
        nodes: usize,
    }
    impl Search<'_> {
        /// `state[v]`: `Some(true)` in the cover, `Some(false)` outside it.
        fn go(&mut self, state: &mut Vec<Option<bool>>, w: usize) {
            if w >= self.best_weight || self.nodes > 200_000 {
                return;
            }
            self.nodes += 1;
            let open = (0..self.adj.len())
                .find(|&u| state[u].is_none() && self.adj[u].iter().any(|&x| state[x] != Some(true)));
            let Some(u) = open else {
                self.best_weight = w;
                self.best = state.iter().map(|s| *s == Some(true)).collect();
                return;
            };
            state[u] = Some(true);
            self.go(state, w + self.weight[u]);
            // u outside: every neighbour joins the cover.
            state[u] = Some(false);
            let mut added = Vec::new();
            let mut extra = 0;
            let mut ok = true;
            for &x in &self.adj[u] {
                match state[x] {
                    Some(false) => ok = false,
                    None => {
                        state[x] = Some(true);
                        extra += self.weight[x];
                        added.push(x);
                    }
                    Some(true) => {}
                }
            }
            if ok {
                self.go(state, w + extra);
            }
            for x in added {
                state[x] = None;
            }
            state[u] = None;
        }
    }
    let n = adj.len();
    let mut state: Vec<Option<bool>> = (0..n).map(|v| forced[v].then_some(true)).collect();
    let base: usize = (0..n).filter(|&v| forced[v]).map(|v| weight[v]).sum();
    // The trivial cover guarantees an answer if the search is cut off.
    let trivial: Vec<bool> = (0..n).map(|v| forced[v] || !adj[v].is_empty()).collect();
    let trivial_weight = (0..n).filter(|&v| trivial[v]).map(|v| weight[v]).sum::<usize>() + 1;
    let mut search = Search { adj, weight, best: trivial, best_weight: trivial_weight, nodes: 0 };
    search.go(&mut state, base);
    search.best
}

/// Simple undirected adjacency without loops, and which vertices carry loops.
fn loop_free_adjacency(rep: &Representation) -> (Vec<Vec<usize>>, Vec<bool>) {
    let q = rep.quiver();
    let n = q.vertex_count();
    let mut looped = vec![false; n];
    let mut adj = vec![Vec::new(); n];
    for arrow in q.arrows() {
        if arrow.src == arrow.tgt {
            looped[arrow.src] = true;
        } else if !adj[arrow.src].contains(&arrow.tgt) {
            adj[arrow.src].push(arrow.tgt);
            adj[arrow.tgt].push(arrow.src);
        }
    }
    (adj, looped)
}

/// Minimum-weight vertex cover (weights are chart dimensions) in BFS order, then the independent rest.
fn chart_order(rep: &Representation, weights: &[usize]) -> (Vec<usize>, usize) {
    let (adj, looped) = loop_free_adjacency(rep);
    let cover = min_weight_cover(&adj, weights, &looped);
    let bfs = visiting_order(rep);
    let mut order: Vec<usize> = bfs.iter().copied().filter(|&v| cover[v]).collect();
    let split = order.len();
    order.extend(bfs.iter().copied().filter(|&v| !cover[v]));
    (order, split)
}

pub(crate) fn reduced_matrices(rep: &Representation, p: u64) -> Vec<FpMatrix> {
    rep.matrices().iter().map(|m| m.reduce_mod(p)).collect()
}

impl<'a> ChartEnumerator<'a> {
    pub(crate) fn new(rep: &Representation, mats: &'a [FpMatrix], beta: &CellIndex, p: u64) -> ChartEnumerator<'a> {
        ChartEnumerator::with_order(rep, mats, beta, p, None)
    }

    /// As [`ChartEnumerator::new`], with a fixed `(order, split)` instead of the per-chart choice.
    fn with_order(
        rep: &Representation,
        mats: &'a [FpMatrix],
        beta: &CellIndex,
        p: u64,
        fixed: Option<(&[usize], usize)>,
    ) -> ChartEnumerator<'a> {
        let basis = rep.basis();
        let n = basis.vertex_count();
        let mut pivots = vec![Vec::new(); n];
        let mut free = vec![Vec::new(); n];
        let mut var_of = vec![Vec::new(); n];
        for v in 0..n {
            let block = basis.block(v);
            let piv: Vec<usize> = block.iter().enumerate().filter(|(_, &k)| beta.contains(k)).map(|(i, _)| i).collect();
            var_of[v] = vec![None; block.len() * piv.len()];
            for (j, &r) in piv.iter().enumerate() {
                for i in 0..r {
                    if !piv.contains(&i) {
                        var_of[v][i * piv.len() + j] = Some(free[v].len());
                        free[v].push((i, j));
                    }
                }
            }
            pivots[v] = piv;
        }
        let (order, split) = match fixed {
            Some((order, split)) => (order.to_vec(), split),
            None => chart_order(rep, &free.iter().map(Vec::len).collect::<Vec<_>>()),
        };
        let mut pos = vec![0; n];
        for (k, &v) in order.iter().enumerate() {
            pos[v] = k;
        }
        let mut linear = vec![Vec::new(); n];
        let mut loops = vec![Vec::new(); n];
        let arrows: Vec<(usize, usize)> = rep.quiver().arrows().iter().map(|a| (a.src, a.tgt)).collect();
        for (a, &(s, t)) in arrows.iter().enumerate() {
            if s == t {
                loops[pos[s]].push(a);
            } else {
                linear[pos[s].max(pos[t])].push(a);
            }
        }
        ChartEnumerator { p, mats, arrows, order, split, pivots, free, var_of, linear, loops, scratch: RefCell::default() }
    }

    pub(crate) fn chart_dimension(&self) -> usize {
        self.free.iter().map(|f| f.len()).sum()
    }

    /// Chart coordinates walked point by point when counting.
    pub(crate) fn walked_dimension(&self) -> usize {
        self.order[..self.split].iter().map(|&v| self.free[v].len()).sum()
    }

    fn initial_state(&self, rep: &Representation) -> Vec<FpMatrix> {
        (0..self.pivots.len())
            .map(|v| {
                let mut m = FpMatrix::zeros(rep.basis().block(v).len(), self.pivots[v].len());
                for (j, &r) in self.pivots[v].iter().enumerate() {
                    m.set(r, j, 1);
                }
                m
            })
            .collect()
    }

    /// Whether `M_α(V_src) ⊆ V_tgt` in the current state.
    fn compatible(&self, a: usize, state: &[FpMatrix]) -> bool {
        let p = self.p;
        let (u, v) = self.arrows[a];
        let mat = &self.mats[a];
        let (vu, vv) = (&state[u], &state[v]);
        let piv = &self.pivots[v];
        let mut x = vec![0u64; mat.rows];
        for j in 0..vu.cols {
            for (i, xi) in x.iter_mut().enumerate() {
                let mut acc = 0u64;
                for k in 0..mat.cols {
                    let c = vu.get(k, j);
                    if c != 0 {
                        acc += mat.get(i, k) * c % p;
                    }
                }
                *xi = acc % p;
            }
            for r in 0..mat.rows {
                if piv.contains(&r) {
                    continue;
                }
                let mut acc = x[r];
                for (c, &pr) in piv.iter().enumerate() {
                    let lambda = x[pr];
                    if lambda != 0 {
                        acc = (acc + p - lambda * vv.get(r, c) % p) % p;
                    }
                }
                if acc != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// The linear conditions on the chart of `order[k]` from earlier vertices, in reduced echelon form.
    ///
    /// Columns are the chart coordinates plus a right-hand side; returns the pivot columns.
    fn reduced_system(&self, k: usize, state: &[FpMatrix]) -> (FpMatrix, Vec<usize>) {
        let p = self.p;
        let v = self.order[k];
        let nf = self.free[v].len();
        let width = nf + 1;
        let piv = &self.pivots[v];
        let ev = piv.len();
        // Below 2^20, sums of up to 2^24 products fit in a u64 before reduction.
        let small = p < (1 << 20);
        let mut scratch = self.scratch.borrow_mut();
        let Scratch { data, x, images } = &mut *scratch;
        data.clear();
        for &a in &self.linear[k] {
            let (src, tgt) = self.arrows[a];
            let mat = &self.mats[a];
            if tgt == v {
                // x ∈ V_v for each x = M_α(column of V_src): x_r = Σ_c x_{piv_c} w_{r,c}.
                let vs = &state[src];
                for jj in 0..vs.cols {
                    x.clear();
                    x.extend((0..mat.rows).map(|i| {
                        let mut acc = 0u64;
                        for kk in 0..mat.cols {
                            let (a, b) = (mat.get(i, kk), vs.get(kk, jj));
                            if a != 0 && b != 0 {
                                acc = if small { acc + a * b } else { (acc + a * b % p) % p };
                            }
                        }
                        acc % p
                    }));
                    for r in (0..mat.rows).filter(|r| !piv.contains(r)) {
                        let start = data.len();
                        data.resize(start + width, 0);
                        let row = &mut data[start..];
                        for (c, &pc) in piv.iter().enumerate() {
                            if let Some(f) = self.var_of[v][r * ev + c] {
                                row[f] = (row[f] + x[pc]) % p;
                            }
                        }
                        row[nf] = x[r];
                        if row.iter().all(|&y| y == 0) {
                            data.truncate(start);
                        }
                    }
                }
            } else {
                // M_α(b_{piv_j} + Σ_r w_{r,j} b_r) ∈ V_tgt for each column j; the residual of
                // z is z_r − Σ_c z_{piv_c} V_tgt[r, c] over the non-pivot rows r of tgt.
                let vu = &state[tgt];
                let tpiv = &self.pivots[tgt];
                let len = vu.rows - tpiv.len();
                images.clear();
                for r in 0..mat.cols {
                    for rr in (0..vu.rows).filter(|rr| !tpiv.contains(rr)) {
                        let mut acc = mat.get(rr, r);
                        for (c, &pr) in tpiv.iter().enumerate() {
                            let z = mat.get(pr, r);
                            if z != 0 {
                                acc = (acc + p - z * vu.get(rr, c) % p) % p;
                            }
                        }
                        images.push(acc);
                    }
                }
                for (j, &pj) in piv.iter().enumerate() {
                    for t in 0..len {
                        let start = data.len();
                        data.resize(start + width, 0);
                        let row = &mut data[start..];
                        for r in 0..mat.cols {
                            if let Some(f) = self.var_of[v][r * ev + j] {
                                row[f] = images[r * len + t];
                            }
                        }
                        row[nf] = (p - images[pj * len + t]) % p;
                        if row.iter().all(|&y| y == 0) {
                            data.truncate(start);
                        }
                    }
                }
            }
        }
        let mut m = FpMatrix { rows: data.len() / width, cols: width, data: std::mem::take(data) };
        let pivots = if m.rows == 0 { Vec::new() } else { m.rref(p) };
        (m, pivots)
    }

    /// Dimension of the solution space at step `k`, or `None` if it is empty.
    fn solution_dimension(&self, k: usize, state: &[FpMatrix]) -> Option<usize> {
        let nf = self.free[self.order[k]].len();
        let (m, pivots) = self.reduced_system(k, state);
        self.scratch.borrow_mut().data = m.data;
        (pivots.last() != Some(&nf)).then(|| nf - pivots.len())
    }

    /// Chart coordinates of `order[k]` compatible with every earlier vertex, or `None` if there are none.
    fn solve(&self, k: usize, state: &[FpMatrix]) -> Option<AffineSolutions> {
        let p = self.p;
        let nf = self.free[self.order[k]].len();
        let (m, pivot_cols) = self.reduced_system(k, state);
        if pivot_cols.last() == Some(&nf) {
            return None;
        }
        let mut particular = vec![0u64; nf];
        for (i, &c) in pivot_cols.iter().enumerate() {
            particular[c] = m.get(i, nf);
        }
        let kernel = (0..nf)
            .filter(|f| !pivot_cols.contains(f))
            .map(|f| {
                let mut vec = vec![0u64; nf];
                vec[f] = 1;
                for (i, &c) in pivot_cols.iter().enumerate() {
                    vec[c] = (p - m.get(i, f)) % p;
                }
                vec
            })
            .collect();
        Some(AffineSolutions { particular, kernel })
    }

    /// Runs `body` on every solution at step `k` that also passes the loop checks.
    fn each_solution(&self, k: usize, state: &mut Vec<FpMatrix>, body: &mut dyn FnMut(&mut Vec<FpMatrix>)) {
        let Some(sol) = self.solve(k, state) else {
            return;
        };
        let p = self.p;
        let v = self.order[k];
        let free = &self.free[v];
        let mut t = vec![0u64; sol.kernel.len()];
        loop {
            for (f, &(i, j)) in free.iter().enumerate() {
                let mut x = sol.particular[f];
                for (&ti, kv) in t.iter().zip(&sol.kernel) {
                    if ti != 0 {
                        x = (x + ti * kv[f]) % p;
                    }
                }
                state[v].set(i, j, x);
            }
            if self.loops[k].iter().all(|&a| self.compatible(a, state)) {
                body(state);
            }
            let mut pos = 0;
            loop {
                if pos == t.len() {
                    for &(i, j) in free {
                        state[v].set(i, j, 0);
                    }
                    return;
                }
                t[pos] += 1;
                if t[pos] < p {
                    break;
                }
                t[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Visits every compatible assignment of `order[k..end]`.
    fn walk(&self, k: usize, end: usize, state: &mut Vec<FpMatrix>, visit: &mut dyn FnMut(&[FpMatrix])) {
        if k == end {
            visit(state);
            return;
        }
        self.each_solution(k, state, &mut |s| self.walk(k + 1, end, s, visit));
    }

    fn count_from(&self, k: usize, state: &mut Vec<FpMatrix>) -> u64 {
        if k == self.split {
            let mut total = 1u64;
            for kk in self.split..self.order.len() {
                match self.solution_dimension(kk, state) {
                    Some(d) => total *= self.p.pow(d as u32),
                    None => return 0,
                }
            }
            return total;
        }
        let mut total = 0u64;
        self.each_solution(k, state, &mut |s| total += self.count_from(k + 1, s));
        total
    }

    pub(crate) fn count(&self, rep: &Representation) -> u64 {
        let mut state = self.initial_state(rep);
        self.count_from(0, &mut state)
    }

    pub(crate) fn for_each(&self, rep: &Representation, visit: &mut dyn FnMut(&[FpMatrix])) {
        let mut state = self.initial_state(rep);
        self.walk(0, self.order.len(), &mut state, visit);
    }
}

fn check_chart_budget(dim: usize, p: u64, budget: u128) -> Result<()> {
    let estimate = (p as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if estimate > budget {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    Ok(())
}

/// Number of `F_p`-points of the single cell `C_β^M`.
pub fn count_cell(m: &Representation, beta: &CellIndex, p: u64, budget: u128) -> Result<u64> {
    beta.check_in(m.basis())?;
    let mats = reduced_matrices(m, p);
    let en = ChartEnumerator::new(m, &mats, beta, p);
    check_chart_budget(en.walked_dimension(), p, budget)?;
    Ok(en.count(m))
}

/// Per-cell counts of cells of one type; order follows `cells`.
///
/// One vertex cover serves every cell. Cells agreeing on the cover vertices share a single walk of
/// the cover chart, and each tail pivot set is solved once per cover point. Groups run in parallel.
pub fn count_cells(m: &Representation, cells: &[CellIndex], p: u64) -> Vec<u64> {
    let Some(first) = cells.first() else {
        return Vec::new();
    };
    let basis = m.basis();
    let e = first.type_in(basis);
    let weights: Vec<usize> = (0..basis.vertex_count()).map(|v| e.0[v] * (basis.block(v).len() - e.0[v])).collect();
    let (order, split) = chart_order(m, &weights);
    let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (i, beta) in cells.iter().enumerate() {
        let key: Vec<usize> = order[..split].iter().flat_map(|&v| beta.at_vertex(basis, v)).collect();
        groups.entry(key).or_default().push(i);
    }
    let mats = reduced_matrices(m, p);
    let groups: Vec<Vec<usize>> = groups.into_values().collect();
    let results: Vec<Vec<(usize, u64)>> = groups
        .par_iter()
        .map(|members| {
            let group: Vec<&CellIndex> = members.iter().map(|&i| &cells[i]).collect();
            let counts = count_group(m, &mats, &group, p, &order, split);
            members.iter().copied().zip(counts).collect()
        })
        .collect();
    let mut out = vec![0u64; cells.len()];
    for (i, c) in results.into_iter().flatten() {
        out[i] = c;
    }
    out
}

/// Cells with identical pivots on `order[..split]`.
fn count_group(
    m: &Representation,
    mats: &[FpMatrix],
    cells: &[&CellIndex],
    p: u64,
    order: &[usize],
    split: usize,
) -> Vec<u64> {
    let basis = m.basis();
    let ens: Vec<ChartEnumerator<'_>> =
        cells.iter().map(|b| ChartEnumerator::with_order(m, mats, b, p, Some((order, split)))).collect();
    // Per tail step: distinct pivot sets with a representative cell, and each cell's slot.
    let tail = order.len() - split;
    let mut reps: Vec<Vec<(Vec<usize>, usize)>> = vec![Vec::new(); tail];
    let mut slot = vec![vec![0usize; tail]; cells.len()];
    for (c, beta) in cells.iter().enumerate() {
        for t in 0..tail {
            let pivots = beta.at_vertex(basis, order[split + t]);
            slot[c][t] = match reps[t].iter().position(|(q, _)| *q == pivots) {
                Some(i) => i,
                None => {
                    reps[t].push((pivots, c));
                    reps[t].len() - 1
                }
            };
        }
    }
    let lead = &ens[0];
    let mut totals = vec![0u64; cells.len()];
    let mut state = lead.initial_state(m);
    let mut dims: Vec<Vec<Option<u32>>> = reps.iter().map(|r| vec![None; r.len()]).collect();
    lead.walk(0, split, &mut state, &mut |state| {
        for (t, list) in reps.iter().enumerate() {
            for (i, &(_, c)) in list.iter().enumerate() {
                dims[t][i] = ens[c].solution_dimension(split + t, state).map(|d| d as u32);
            }
        }
        for (c, total) in totals.iter_mut().enumerate() {
            let mut prod = 1u64;
            for t in 0..tail {
                match dims[t][slot[c][t]] {
                    Some(d) => prod *= p.pow(d),
                    None => {
                        prod = 0;
                        break;
                    }
                }
            }
            *total += prod;
        }
    });
    totals
}

/// Streams every subrepresentation of dimension vector `e` over `F_p`, chart by chart in canonical order.
pub fn enumerate_subreps(
    m: &Representation,
    e: &DimVector,
    p: u64,
    budget: u128,
    mut visit: impl FnMut(&SubrepPoint),
) -> Result<()> {
    check_budget(&m.rank_vector(), e, p, budget)?;
    let mats = reduced_matrices(m, p);
    for beta in enumerate_cells(m.basis(), e)? {
        let en = ChartEnumerator::new(m, &mats, &beta, p);
        en.for_each(m, &mut |state| {
            visit(&SubrepPoint { beta: beta.clone(), prime: p, blocks: state.to_vec() });
        });
    }
    Ok(())
}

/// Every point of the single cell `C_β^M` over `F_p`.
pub fn cell_points(m: &Representation, beta: &CellIndex, p: u64, budget: u128) -> Result<Vec<SubrepPoint>> {
    beta.check_in(m.basis())?;
    let mats = reduced_matrices(m, p);
    let en = ChartEnumerator::new(m, &mats, beta, p);
    check_chart_budget(en.chart_dimension(), p, budget)?;
    let mut out = Vec::new();
    en.for_each(m, &mut |state| out.push(SubrepPoint { beta: beta.clone(), prime: p, blocks: state.to_vec() }));
    Ok(out)
}

/// Cell of a subspace given by arbitrary spanning vectors per vertex (local coordinates).
///
/// Pivots are maximal indices: positions are eliminated from the highest down.
pub fn assign_cell(basis: &OrderedBasis, spans: &[Vec<Vec<u64>>], p: u64) -> CellIndex {
    let mut beta = Vec::new();
    for (v, vectors) in spans.iter().enumerate() {
        let block = basis.block(v);
        let mut rows: Vec<Vec<u64>> = vectors.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
        let mut used = vec![false; rows.len()];
        for pos in (0..block.len()).rev() {
            let Some(i) = (0..rows.len()).find(|&i| !used[i] && rows[i][pos] != 0) else {
                continue;
            };
            used[i] = true;
            let inv = crate::matrix::inv_mod(rows[i][pos], p);
            let pivot_row: Vec<u64> = rows[i].iter().map(|x| x * inv % p).collect();
            for (k, row) in rows.iter_mut().enumerate() {
                if k != i && row[pos] != 0 {
                    let f = row[pos];
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x = (*x + p - f * y % p) % p;
                    }
                }
            }
            rows[i] = pivot_row;
            beta.push(block[pos]);
        }
    }
    CellIndex::new(beta)
}

/// Whether the spanned subspaces form a subrepresentation of the given dimension vector.
pub fn is_subrepresentation(m: &Representation, spans: &[Vec<Vec<u64>>], p: u64) -> bool {
    let q = m.quiver();
    let rank_of = |vectors: &[Vec<u64>], len: usize| -> usize {
        let mut mat = FpMatrix::zeros(vectors.len(), len);
        for (i, r) in vectors.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                mat.set(i, j, x % p);
            }
        }
        mat.rank(p)
    };
    for (a, arrow) in q.arrows().iter().enumerate() {
        let mat = m.matrix(a).reduce_mod(p);
        let len = m.basis().block(arrow.tgt).len();
        let mut vectors = spans[arrow.tgt].clone();
        let base = rank_of(&vectors, len);
        for v in &spans[arrow.src] {
            let image: Vec<u64> =
                (0..mat.rows).map(|i| (0..mat.cols).map(|k| mat.get(i, k) * v[k] % p).sum::<u64>() % p).collect();
            vectors.push(image);
        }
        if rank_of(&vectors, len) != base {
            return false;
        }
    }
    true
}
