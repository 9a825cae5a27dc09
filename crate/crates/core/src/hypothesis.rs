//! Relevant pairs and triples, the Ψ order, triple types and Hypothesis (H).

use std::cmp::Ordering;
use std::fmt;

use crate::error::{input, Result};
use crate::quiver::{distances_to, is_tree_extension, QuiverMorphism, Subquiver, VertexOrder};
use crate::representation::{require_ordered_above, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TripleType {
    T0,
    T1,
    T2a,
    T2b,
    T3a,
    T3b,
    T4a,
    T4b,
    T5,
}

impl fmt::Display for TripleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TripleType::T0 => "T0",
            TripleType::T1 => "T1",
            TripleType::T2a => "T2a",
            TripleType::T2b => "T2b",
            TripleType::T3a => "T3a",
            TripleType::T3b => "T3b",
            TripleType::T4a => "T4a",
            TripleType::T4b => "T4b",
            TripleType::T5 => "T5",
        };
        f.write_str(s)
    }
}

/// A pair `(p, p′)` of `Adm²` with its distance `δ` and fibre length `ε`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelevantPair {
    pub p: usize,
    pub p_prime: usize,
    pub delta: usize,
    pub epsilon: usize,
}

/// `(α̃, t, s)` with `t` over the target and `s` over the source of `α̃`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelevantTriple {
    pub arrow: usize,
    pub t: usize,
    pub s: usize,
}

/// Distance used for unreachable vertices.
const FAR: usize = usize::MAX / 4;

/// Shared data for pair and triple computations on `F: T → Q` with `S ⊆ T`.
#[derive(Clone, Debug)]
pub struct HContext<'a> {
    f: &'a QuiverMorphism,
    s: &'a Subquiver,
    rank: Vec<usize>,
    dist: Vec<usize>,
}

impl<'a> HContext<'a> {
    pub fn new(f: &'a QuiverMorphism, s: &'a Subquiver, order: &VertexOrder) -> Result<HContext<'a>> {
        let t = f.domain();
        s.check_in(t)?;
        let rank = order.ranks(t)?;
        let dist = distances_to(t, s).into_iter().map(|d| d.unwrap_or(FAR)).collect();
        Ok(HContext { f, s, rank, dist })
    }

    pub fn morphism(&self) -> &QuiverMorphism {
        self.f
    }

    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn is_relevant(&self, p: usize, p_prime: usize) -> bool {
        self.f.map_vertex(p) == self.f.map_vertex(p_prime)
            && self.rank[p] <= self.rank[p_prime]
            && !self.s.contains_vertex(p_prime)
    }

    pub fn delta(&self, p: usize, p_prime: usize) -> usize {
        self.dist[p].max(self.dist[p_prime])
    }

    pub fn epsilon(&self, p: usize, p_prime: usize) -> usize {
        let fp = self.f.map_vertex(p);
        (0..self.rank.len())
            .filter(|&x| {
                self.f.map_vertex(x) == fp && self.rank[p] <= self.rank[x] && self.rank[x] < self.rank[p_prime]
            })
            .count()
    }

    /// Sort key: relevant pairs above all others, then `(ε, δ, p′, p)` lexicographically.
    pub fn psi_key(&self, p: usize, p_prime: usize) -> (bool, usize, usize, usize, usize) {
        (
            self.is_relevant(p, p_prime),
            self.epsilon(p, p_prime),
            self.delta(p, p_prime),
            self.rank[p_prime],
            self.rank[p],
        )
    }

    pub fn psi_cmp(&self, a: (usize, usize), b: (usize, usize)) -> Ordering {
        self.psi_key(a.0, a.1).cmp(&self.psi_key(b.0, b.1))
    }

    /// `Adm²` sorted by `Ψ`.
    pub fn relevant_pairs(&self) -> Vec<RelevantPair> {
        let n = self.rank.len();
        let mut pairs: Vec<RelevantPair> = (0..n)
            .flat_map(|p| (0..n).map(move |q| (p, q)))
            .filter(|&(p, q)| self.is_relevant(p, q))
            .map(|(p, q)| RelevantPair { p, p_prime: q, delta: self.delta(p, q), epsilon: self.epsilon(p, q) })
            .collect();
        pairs.sort_by(|a, b| self.psi_cmp((a.p, a.p_prime), (b.p, b.p_prime)));
        pairs
    }

    /// All triples of `Adm³`, by arrow, then `t`, then `s` in vertex order.
    pub fn relevant_triples(&self) -> Vec<RelevantTriple> {
        let q = self.f.codomain();
        let mut out = Vec::new();
        for a in 0..q.arrow_count() {
            let arrow = q.arrow(a);
            let mut ts = self.f.vertex_fibre(arrow.tgt);
            let mut ss = self.f.vertex_fibre(arrow.src);
            ts.sort_by_key(|&v| self.rank[v]);
            ss.sort_by_key(|&v| self.rank[v]);
            for &t in &ts {
                for &s in &ss {
                    out.push(RelevantTriple { arrow: a, t, s });
                }
            }
        }
        out
    }

    /// Type of `(α̃, t, s)`. Only fibre arrows `α` with `s(α) ≤ s` and `t ≤ t(α)` are considered.
    pub fn classify(&self, tr: RelevantTriple) -> TripleType {
        let t_quiver = self.f.domain();
        let r = &self.rank;
        let fib: Vec<(usize, usize)> = self
            .f
            .arrow_fibre(tr.arrow)
            .into_iter()
            .map(|a| (t_quiver.arrow(a).src, t_quiver.arrow(a).tgt))
            .collect();
        if fib.iter().any(|&(x, y)| x == tr.s && y == tr.t) {
            return TripleType::T1;
        }
        let within: Vec<(usize, usize)> =
            fib.iter().copied().filter(|&(x, y)| r[x] <= r[tr.s] && r[tr.t] <= r[y]).collect();
        if within.is_empty() {
            return TripleType::T0;
        }
        let head = within.iter().find(|&&(_, y)| y == tr.t).map(|&(x, _)| x);
        let tail = within.iter().find(|&&(x, _)| x == tr.s).map(|&(_, y)| y);
        let less = |a: (usize, usize), b: (usize, usize)| self.psi_cmp(a, b) == Ordering::Less;
        match (head, tail) {
            (Some(s1), Some(t2)) => {
                if less((tr.t, t2), (s1, tr.s)) {
                    TripleType::T2a
                } else {
                    TripleType::T2b
                }
            }
            (None, Some(t2)) => {
                let ok = fib
                    .iter()
                    .filter(|&&(_, y)| r[tr.t] < r[y] && r[y] < r[t2])
                    .all(|&(x, _)| less((x, tr.s), (tr.t, t2)));
                if ok {
                    TripleType::T3a
                } else {
                    TripleType::T3b
                }
            }
            (Some(s1), None) => {
                let ok = fib
                    .iter()
                    .filter(|&&(x, _)| r[s1] < r[x] && r[x] < r[tr.s])
                    .all(|&(_, y)| less((tr.t, y), (s1, tr.s)));
                if ok {
                    TripleType::T4a
                } else {
                    TripleType::T4b
                }
            }
            (None, None) => TripleType::T5,
        }
    }

    /// Vertices over `s(α̃)` that are the source of no arrow over `α̃`.
    pub fn in_i_source(&self, arrow: usize, v: usize) -> bool {
        let t = self.f.domain();
        self.f.map_vertex(v) == self.f.codomain().arrow(arrow).src
            && !self.f.arrow_fibre(arrow).iter().any(|&a| t.arrow(a).src == v)
    }

    /// Vertices over `t(α̃)` that are the target of no arrow over `α̃`.
    pub fn in_i_target(&self, arrow: usize, v: usize) -> bool {
        let t = self.f.domain();
        self.f.map_vertex(v) == self.f.codomain().arrow(arrow).tgt
            && !self.f.arrow_fibre(arrow).iter().any(|&a| t.arrow(a).tgt == v)
    }
}

/// How the third bullet of (H) is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum HReading {
    /// Incoming arrows: if `p′ ∈ I^t(α̃)`, every `(α̃, p′, q′)` must be of type 0.
    /// This mirrors the first bullet, which is stated for `p′`.
    #[default]
    Symmetric,
    /// Incoming arrows: if `p ∈ I^t(α̃)`, every `(α̃, p, q′)` must be of type 0, as printed.
    Literal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedTriple {
    pub triple: RelevantTriple,
    pub ty: TripleType,
}

/// First relevant pair (in Ψ order) violating (H), with the offending triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HWitness {
    pub pair: (usize, usize),
    pub triples: Vec<TypedTriple>,
    pub reason: String,
}

/// Use of one of the two exception shapes for a pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionUse {
    pub pair: (usize, usize),
    pub kind: u8,
    pub fibre_arrow: usize,
    pub triple: TypedTriple,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HVerdict {
    Pass { pairs: Vec<RelevantPair>, exceptions: Vec<ExceptionUse>, notes: Vec<String> },
    NotStrictlyOrdered { arrows: (usize, usize) },
    Fail(HWitness),
}

impl HVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, HVerdict::Pass { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Out,
    In,
}

struct BulletFailure {
    side: Side,
    arrow: usize,
    triples: Vec<TypedTriple>,
    reason: String,
}

/// Decides Hypothesis (H) for `F: T → Q`, `S ⊆ T`, and `M` with basis ordered above `S`.
///
/// `order` overrides the vertex order induced by the basis. Precondition violations are errors.
pub fn check_hypothesis_h(
    m: &Representation,
    s: &Subquiver,
    f: &QuiverMorphism,
    order: Option<&VertexOrder>,
    reading: HReading,
) -> Result<HVerdict> {
    let t = m.quiver();
    if f.domain() != t {
        return input("morphism domain differs from the representation's quiver");
    }
    if !is_tree_extension(t, s)? {
        return crate::error::precondition("the quiver is not a tree extension of the subquiver");
    }
    require_ordered_above(m, s)?;
    let induced = m.basis().vertex_order();
    let order = order.unwrap_or(&induced);
    let ctx = HContext::new(f, s, order)?;

    if let Some(arrows) = strict_order_violation(&ctx) {
        return Ok(HVerdict::NotStrictlyOrdered { arrows });
    }

    let pairs = ctx.relevant_pairs();
    let mut exceptions = Vec::new();
    let mut notes = Vec::new();
    for pair in &pairs {
        let (p, pp) = (pair.p, pair.p_prime);
        let failures = bullet_failures(&ctx, p, pp, reading);
        if failures.is_empty() {
            continue;
        }
        let excused = if failures.len() == 1 {
            let fail = &failures[0];
            match fail.side {
                Side::Out => exception_one(&ctx, m, s, p, pp, fail.arrow),
                Side::In => exception_two(&ctx, p, pp, fail.arrow),
            }
        } else {
            None
        };
        match excused {
            Some(use_) => {
                if use_.kind == 1 && !s.contains_arrow(use_.fibre_arrow) {
                    notes.push(format!(
                        "pair ({},{}): exception (1) via arrow {} outside S, identity clause vacuous",
                        t.vertex_id(p),
                        t.vertex_id(pp),
                        t.arrow(use_.fibre_arrow).id
                    ));
                }
                exceptions.push(use_);
            }
            None => {
                let triples = failures.iter().flat_map(|f| f.triples.clone()).collect();
                let reason = failures.iter().map(|f| f.reason.clone()).collect::<Vec<_>>().join("; ");
                return Ok(HVerdict::Fail(HWitness { pair: (p, pp), triples, reason }));
            }
        }
    }
    Ok(HVerdict::Pass { pairs, exceptions, notes })
}

fn strict_order_violation(ctx: &HContext<'_>) -> Option<(usize, usize)> {
    let f = ctx.morphism();
    let t = f.domain();
    for a in 0..f.codomain().arrow_count() {
        let fib = f.arrow_fibre(a);
        for (i, &x) in fib.iter().enumerate() {
            for &y in &fib[i + 1..] {
                let (ax, ay) = (t.arrow(x), t.arrow(y));
                let cs = ctx.rank(ax.src).cmp(&ctx.rank(ay.src));
                let ct = ctx.rank(ax.tgt).cmp(&ctx.rank(ay.tgt));
                if cs == Ordering::Equal || cs != ct {
                    return Some((x, y));
                }
            }
        }
    }
    None
}

fn typed(ctx: &HContext<'_>, arrow: usize, t: usize, s: usize) -> TypedTriple {
    let triple = RelevantTriple { arrow, t, s };
    TypedTriple { triple, ty: ctx.classify(triple) }
}

fn bullet_failures(ctx: &HContext<'_>, p: usize, pp: usize, reading: HReading) -> Vec<BulletFailure> {
    let f = ctx.morphism();
    let tq = f.domain();
    let q = f.codomain();
    let p_tilde = f.map_vertex(p);
    let mut out = Vec::new();
    for a in 0..q.arrow_count() {
        let arrow = q.arrow(a);
        let fib = f.arrow_fibre(a);
        if arrow.src == p_tilde {
            if ctx.in_i_source(a, pp) {
                let bad: Vec<TypedTriple> = f
                    .vertex_fibre(arrow.tgt)
                    .into_iter()
                    .map(|x| typed(ctx, a, x, pp))
                    .filter(|tt| tt.ty != TripleType::T0)
                    .collect();
                if !bad.is_empty() {
                    out.push(BulletFailure {
                        side: Side::Out,
                        arrow: a,
                        triples: bad,
                        reason: format!("{} has no arrow over {} but a triple is not of type 0", tq.vertex_id(pp), arrow.id),
                    });
                }
            } else {
                let from_p: Vec<TypedTriple> =
                    fib.iter().filter(|&&x| tq.arrow(x).src == p).map(|&x| typed(ctx, a, tq.arrow(x).tgt, pp)).collect();
                if !from_p.iter().any(|tt| matches!(tt.ty, TripleType::T1 | TripleType::T2b)) {
                    let triples = if from_p.is_empty() {
                        fib.iter().filter(|&&x| tq.arrow(x).src == pp).map(|&x| typed(ctx, a, tq.arrow(x).tgt, pp)).collect()
                    } else {
                        from_p
                    };
                    out.push(BulletFailure {
                        side: Side::Out,
                        arrow: a,
                        triples,
                        reason: format!("no arrow over {} from {} gives a triple of type 1 or 2b", arrow.id, tq.vertex_id(p)),
                    });
                }
            }
        }
        if arrow.tgt == p_tilde {
            let (isolated, row) = match reading {
                HReading::Symmetric => (ctx.in_i_target(a, pp), pp),
                HReading::Literal => (ctx.in_i_target(a, p), p),
            };
            if isolated {
                let bad: Vec<TypedTriple> = f
                    .vertex_fibre(arrow.src)
                    .into_iter()
                    .map(|x| typed(ctx, a, row, x))
                    .filter(|tt| tt.ty != TripleType::T0)
                    .collect();
                if !bad.is_empty() {
                    out.push(BulletFailure {
                        side: Side::In,
                        arrow: a,
                        triples: bad,
                        reason: format!("{} is hit by no arrow over {} but a triple is not of type 0", tq.vertex_id(row), arrow.id),
                    });
                }
            } else {
                let into_pp: Vec<TypedTriple> =
                    fib.iter().filter(|&&x| tq.arrow(x).tgt == pp).map(|&x| typed(ctx, a, p, tq.arrow(x).src)).collect();
                if !into_pp.iter().any(|tt| matches!(tt.ty, TripleType::T1 | TripleType::T2a)) {
                    let triples = if into_pp.is_empty() {
                        fib.iter().filter(|&&x| tq.arrow(x).tgt == p).map(|&x| typed(ctx, a, p, tq.arrow(x).src)).collect()
                    } else {
                        into_pp
                    };
                    out.push(BulletFailure {
                        side: Side::In,
                        arrow: a,
                        triples,
                        reason: format!("no arrow over {} into {} gives a triple of type 1 or 2a", arrow.id, tq.vertex_id(pp)),
                    });
                }
            }
        }
    }
    out
}

fn exception_one(
    ctx: &HContext<'_>,
    m: &Representation,
    s: &Subquiver,
    p: usize,
    pp: usize,
    a: usize,
) -> Option<ExceptionUse> {
    let f = ctx.morphism();
    let tq = f.domain();
    f.arrow_fibre(a).into_iter().filter(|&x| tq.arrow(x).src == p).find_map(|x| {
        let tt = typed(ctx, a, tq.arrow(x).tgt, pp);
        let shape = matches!(tt.ty, TripleType::T2a | TripleType::T4a);
        let identity = !s.contains_arrow(x) || m.matrix(x).is_identity();
        (shape && identity).then_some(ExceptionUse { pair: (p, pp), kind: 1, fibre_arrow: x, triple: tt })
    })
}

fn exception_two(ctx: &HContext<'_>, p: usize, pp: usize, a: usize) -> Option<ExceptionUse> {
    let f = ctx.morphism();
    let tq = f.domain();
    f.arrow_fibre(a).into_iter().filter(|&x| tq.arrow(x).tgt == pp).find_map(|x| {
        let tt = typed(ctx, a, p, tq.arrow(x).src);
        matches!(tt.ty, TripleType::T2b | TripleType::T3a)
            .then(|| ExceptionUse { pair: (p, pp), kind: 2, fibre_arrow: x, triple: tt })
    })
}
