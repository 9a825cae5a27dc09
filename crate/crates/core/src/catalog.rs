//! Constructible fixtures: classical examples, the push-forward examples and seeded random families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{input, Result};
use crate::matrix::IntMatrix;
use crate::quiver::{Quiver, QuiverMorphism, Subquiver};
use crate::representation::{push_forward, DimVector, OrderedBasis, Representation};

/// A fixture. With a morphism, `representation` lives on its domain and `dim_vector` on its codomain.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub params: Vec<i64>,
    pub representation: Representation,
    pub subquiver: Option<Subquiver>,
    pub morphism: Option<QuiverMorphism>,
    pub dim_vector: Option<DimVector>,
}

impl CatalogEntry {
    /// `F_*M` if there is a morphism, otherwise `M`.
    pub fn target(&self) -> Result<Representation> {
        match &self.morphism {
            Some(f) => push_forward(f, &self.representation),
            None => Ok(self.representation.clone()),
        }
    }

    /// `name(p1,p2,…)`.
    pub fn label(&self) -> String {
        if self.params.is_empty() {
            self.name.clone()
        } else {
            let ps: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
            format!("{}({})", self.name, ps.join(","))
        }
    }
}

/// Names accepted by [`catalog`].
pub const CATALOG_NAMES: &[&str] = &[
    "one_vertex",
    "flag",
    "one_loop",
    "two_lines",
    "kronecker_regular",
    "kronecker_preprojective",
    "kronecker_preinjective",
    "ex_4_5_1",
    "ex_4_5_2",
    "ex_4_5_5",
    "degenerate_flag",
    "degenerate_flag_pi",
    "forest_block",
    "tree_iso",
    "direct_sum_fold",
];

/// Parses `name`, `name(1,2)` or `flag(3;1,2)`.
pub fn parse_catalog_spec(text: &str) -> Result<(String, Vec<i64>)> {
    let text = text.trim();
    let Some(open) = text.find('(') else {
        return Ok((text.to_string(), Vec::new()));
    };
    let Some(inner) = text[open + 1..].strip_suffix(')') else {
        return input(format!("unbalanced parentheses in catalog name {text}"));
    };
    let params = inner
        .split([',', ';'])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i64>().map_err(|_| crate::Error::Input(format!("bad catalog parameter {s}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok((text[..open].trim().to_string(), params))
}

/// Looks up a fixture; missing parameters take documented defaults.
pub fn catalog(name: &str, params: &[i64]) -> Result<CatalogEntry> {
    let p = |i: usize, default: i64| params.get(i).copied().unwrap_or(default);
    let nat = |i: usize, default: i64, what: &str| -> Result<usize> {
        let v = p(i, default);
        if !(0..=64).contains(&v) {
            return input(format!("{name}: parameter {what} = {v} is out of range"));
        }
        Ok(v as usize)
    };
    let mut entry = match name {
        "one_vertex" => one_vertex(nat(0, 2, "m")?)?,
        "flag" => {
            let m = nat(0, 3, "m")?;
            let dims: Vec<usize> = if params.len() > 1 {
                (1..params.len()).map(|i| nat(i, 0, "e")).collect::<Result<_>>()?
            } else {
                (1..m).collect()
            };
            flag(m, &dims)?
        }
        "one_loop" => one_loop(nat(0, 2, "m")?, p(1, 0))?,
        "two_lines" => two_lines()?,
        "kronecker_regular" => kronecker_regular(nat(0, 2, "n")?, p(1, 0))?,
        "kronecker_preprojective" => kronecker_preprojective(nat(0, 1, "n")?)?,
        "kronecker_preinjective" => kronecker_preinjective(nat(0, 1, "n")?)?,
        "ex_4_5_1" => ex_4_5_1()?,
        "ex_4_5_2" => ex_4_5_2()?,
        "ex_4_5_5" => ex_4_5_5(nat(0, 1, "r")?)?,
        "degenerate_flag" => degenerate_flag(nat(0, 2, "n")?)?,
        "degenerate_flag_pi" => degenerate_flag_pi(nat(0, 2, "n")?)?,
        "forest_block" => forest_block(p(0, 0) as u64, nat(1, 6, "size")?)?,
        "tree_iso" => tree_iso(p(0, 0) as u64, nat(1, 6, "size")?)?,
        "direct_sum_fold" => direct_sum_fold(nat(0, 1, "r1")?, nat(1, 1, "r2")?)?,
        _ => return input(format!("unknown catalog entry {name}; known: {}", CATALOG_NAMES.join(", "))),
    };
    entry.params = params.to_vec();
    Ok(entry)
}

fn entry(name: &str, representation: Representation, dim_vector: Option<DimVector>) -> CatalogEntry {
    CatalogEntry { name: name.into(), params: Vec::new(), representation, subquiver: None, morphism: None, dim_vector }
}

fn ids(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// `k^m` at a single vertex.
pub fn one_vertex(m: usize) -> Result<CatalogEntry> {
    let q = Quiver::new(&["x"], &[])?;
    let rep = Representation::with_standard_basis(q, &[m], vec![])?;
    Ok(entry("one_vertex", rep, Some(DimVector(vec![m.min(1)]))))
}

/// `k^m → ⋯ → k^m` with identities along `1 → 2 → ⋯ → r`; suggested type `dims`.
pub fn flag(m: usize, dims: &[usize]) -> Result<CatalogEntry> {
    let r = dims.len();
    if r == 0 || dims.iter().any(|&e| e > m) {
        return input("flag needs a nonempty type with entries at most m");
    }
    let vs = ids("", r);
    let arrows: Vec<(String, String, String)> =
        (1..r).map(|i| (format!("alpha{i}"), i.to_string(), (i + 1).to_string())).collect();
    let q = quiver_from(&vs, &arrows)?;
    let rep = Representation::with_standard_basis(q.clone(), &vec![m; r], vec![IntMatrix::identity(m); r - 1])?;
    let mut e = entry("flag", rep, Some(DimVector(dims.to_vec())));
    if r > 0 {
        e.subquiver = Some(Subquiver::induced(&q, &["1"])?);
    }
    Ok(e)
}

/// A loop carrying the Jordan block `J(λ)` on `k^m`.
pub fn one_loop(m: usize, lambda: i64) -> Result<CatalogEntry> {
    let q = Quiver::new(&["x"], &[("alpha", "x", "x")])?;
    let rep = Representation::with_standard_basis(q, &[m], vec![IntMatrix::jordan(m, lambda)])?;
    Ok(entry("one_loop", rep, Some(DimVector(vec![m.min(1)]))))
}

/// `k^2 → k^2` with matrix `[[1,0],[0,0]]`: two projective lines meeting in a point.
pub fn two_lines() -> Result<CatalogEntry> {
    let q = Quiver::new(&["1", "2"], &[("alpha", "1", "2")])?;
    let m = IntMatrix::from_rows(&[vec![1, 0], vec![0, 0]], 2).unwrap();
    let rep = Representation::with_standard_basis(q, &[2, 2], vec![m])?;
    Ok(entry("two_lines", rep, Some(DimVector(vec![1, 1]))))
}

fn kronecker() -> Result<Quiver> {
    Quiver::new(&["x", "y"], &[("alpha", "x", "y"), ("gamma", "x", "y")])
}

/// Kronecker module `k^n ⇉ k^n` with maps `id` and `J(λ)`.
pub fn kronecker_regular(n: usize, lambda: i64) -> Result<CatalogEntry> {
    let rep = Representation::with_standard_basis(
        kronecker()?,
        &[n, n],
        vec![IntMatrix::identity(n), IntMatrix::jordan(n, lambda)],
    )?;
    Ok(entry("kronecker_regular", rep, Some(DimVector(vec![n.min(1), n.min(1)]))))
}

fn quiver_from(vertices: &[String], arrows: &[(String, String, String)]) -> Result<Quiver> {
    let a: Vec<(&str, &str, &str)> = arrows.iter().map(|(i, s, t)| (i.as_str(), s.as_str(), t.as_str())).collect();
    Quiver::new(vertices, &a)
}

/// Thin module with identity maps; basis ids are the vertex ids, ordered as `order`.
fn thin_identity(t: &Quiver, order: &[String]) -> Result<Representation> {
    let vo = order.iter().map(|v| t.vertex_or_err(v)).collect::<Result<Vec<_>>>()?;
    let basis = OrderedBasis::new(t.vertex_count(), order.to_vec(), vo)?;
    Representation::new(t.clone(), basis, vec![IntMatrix::identity(1); t.arrow_count()])
}

fn winding_entry(
    name: &str,
    m: Representation,
    q: Quiver,
    vmap: &[(String, String)],
    amap: &[(String, String)],
    s: &[&str],
    e: Vec<usize>,
) -> Result<CatalogEntry> {
    let vm: Vec<(&str, &str)> = vmap.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let am: Vec<(&str, &str)> = amap.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let f = QuiverMorphism::new(m.quiver().clone(), q, &vm, &am)?;
    let sub = Subquiver::induced(m.quiver(), s)?;
    let mut e_ = entry(name, m, Some(DimVector(e)));
    e_.subquiver = Some(sub);
    e_.morphism = Some(f);
    Ok(e_)
}

/// Thin tree `2i → 2i−1`, `2i → 2i+1` folded onto the Kronecker quiver; `S = {1}`.
pub fn kronecker_preprojective(n: usize) -> Result<CatalogEntry> {
    if n == 0 {
        return input("kronecker_preprojective needs n ≥ 1");
    }
    let vs = ids("", 2 * n + 1);
    let mut arrows = Vec::new();
    let mut amap = Vec::new();
    for i in 1..=n {
        arrows.push((format!("alpha{i}"), (2 * i).to_string(), (2 * i - 1).to_string()));
        arrows.push((format!("gamma{i}"), (2 * i).to_string(), (2 * i + 1).to_string()));
        amap.push((format!("alpha{i}"), "alpha".to_string()));
        amap.push((format!("gamma{i}"), "gamma".to_string()));
    }
    let t = quiver_from(&vs, &arrows)?;
    let vmap: Vec<(String, String)> =
        vs.iter().enumerate().map(|(k, v)| (v.clone(), if k % 2 == 1 { "x" } else { "y" }.to_string())).collect();
    let m = thin_identity(&t, &vs)?;
    winding_entry("kronecker_preprojective", m, kronecker()?, &vmap, &amap, &["1"], vec![1, 1])
}

/// Thin tree `2i−1 → 2i`, `2i+1 → 2i` folded onto the Kronecker quiver; `S = {1}`.
pub fn kronecker_preinjective(n: usize) -> Result<CatalogEntry> {
    if n == 0 {
        return input("kronecker_preinjective needs n ≥ 1");
    }
    let vs = ids("", 2 * n + 1);
    let mut arrows = Vec::new();
    let mut amap = Vec::new();
    for i in 1..=n {
        arrows.push((format!("alpha{i}"), (2 * i - 1).to_string(), (2 * i).to_string()));
        arrows.push((format!("gamma{i}"), (2 * i + 1).to_string(), (2 * i).to_string()));
        amap.push((format!("alpha{i}"), "alpha".to_string()));
        amap.push((format!("gamma{i}"), "gamma".to_string()));
    }
    let t = quiver_from(&vs, &arrows)?;
    let vmap: Vec<(String, String)> =
        vs.iter().enumerate().map(|(k, v)| (v.clone(), if k % 2 == 0 { "x" } else { "y" }.to_string())).collect();
    let m = thin_identity(&t, &vs)?;
    winding_entry("kronecker_preinjective", m, kronecker()?, &vmap, &amap, &["1"], vec![1, 1])
}

fn pairs(items: &[(&str, &str)]) -> Vec<(String, String)> {
    items.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

fn arrows3(items: &[(&str, &str, &str)]) -> Vec<(String, String, String)> {
    items.iter().map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string())).collect()
}

/// Thin tree on `1..4` whose push-forward is the Kronecker module `(id, J(0))` on `k^2`.
pub fn ex_4_5_1() -> Result<CatalogEntry> {
    let vs = ids("", 4);
    let t = quiver_from(&vs, &arrows3(&[("alpha1", "2", "1"), ("alpha2", "4", "3"), ("gamma", "2", "3")]))?;
    let m = thin_identity(&t, &vs)?;
    let vmap = pairs(&[("1", "y"), ("2", "x"), ("3", "y"), ("4", "x")]);
    let amap = pairs(&[("alpha1", "alpha"), ("alpha2", "alpha"), ("gamma", "gamma")]);
    winding_entry("ex_4_5_1", m, kronecker()?, &vmap, &amap, &["1"], vec![1, 1])
}

/// Thin tree on `1..7` over `x ⇉ y → z` with the cone cell `{2,3,7}`; `S = {1,2,3}`.
pub fn ex_4_5_2() -> Result<CatalogEntry> {
    let vs = ids("", 7);
    let t = quiver_from(
        &vs,
        &arrows3(&[("alpha1", "4", "2"), ("alpha2", "5", "3"), ("gamma", "6", "5"), ("delta", "6", "7")]),
    )?;
    let m = thin_identity(&t, &vs)?;
    let q = Quiver::new(&["x", "y", "z"], &[("gamma", "x", "y"), ("delta", "x", "y"), ("alpha", "y", "z")])?;
    let vmap = pairs(&[("1", "z"), ("2", "z"), ("3", "z"), ("4", "y"), ("5", "y"), ("6", "x"), ("7", "y")]);
    let amap = pairs(&[("alpha1", "alpha"), ("alpha2", "alpha"), ("gamma", "gamma"), ("delta", "delta")]);
    winding_entry("ex_4_5_2", m, q, &vmap, &amap, &["1", "2", "3"], vec![0, 1, 2])
}

/// The 14-vertex tree over `s ⇉ p ⇉ q`, with `S` a single vertex; rank `r` everywhere, identity maps.
pub fn ex_4_5_5(r: usize) -> Result<CatalogEntry> {
    if r == 0 {
        return input("ex_4_5_5 needs r ≥ 1");
    }
    let mut vs = vec!["S".to_string()];
    vs.extend(ids("", 14));
    let arrows = arrows3(&[
        ("alpha1", "S", "1"),
        ("alpha2", "2", "3"),
        ("alpha3", "9", "8"),
        ("gamma1", "S", "8"),
        ("gamma2", "2", "1"),
        ("gamma3", "9", "10"),
        ("sigma1", "8", "11"),
        ("tau1", "8", "12"),
        ("sigma2", "10", "13"),
        ("tau2", "10", "14"),
        ("sigma3", "3", "4"),
        ("tau3", "3", "5"),
        ("sigma4", "1", "6"),
        ("tau4", "1", "7"),
    ]);
    let t = quiver_from(&vs, &arrows)?;
    let q = Quiver::new(
        &["s", "p", "q"],
        &[("alpha", "s", "p"), ("gamma", "s", "p"), ("sigma", "p", "q"), ("tau", "p", "q")],
    )?;
    let image = |v: &str| match v {
        "S" | "2" | "9" => "s",
        "1" | "3" | "8" | "10" => "p",
        _ => "q",
    };
    let vmap: Vec<(String, String)> = vs.iter().map(|v| (v.clone(), image(v).to_string())).collect();
    let amap: Vec<(String, String)> =
        arrows.iter().map(|(a, _, _)| (a.clone(), a.trim_end_matches(char::is_numeric).to_string())).collect();
    let m = if r == 1 {
        thin_identity(&t, &vs)?
    } else {
        let mut bids = Vec::new();
        let mut vo = Vec::new();
        for (v, id) in vs.iter().enumerate() {
            for k in 1..=r {
                bids.push(format!("{id}.{k}"));
                vo.push(v);
            }
        }
        let basis = OrderedBasis::new(t.vertex_count(), bids, vo)?;
        Representation::new(t.clone(), basis, vec![IntMatrix::identity(r); t.arrow_count()])?
    };
    winding_entry("ex_4_5_5", m, q, &vmap, &amap, &["S"], vec![1, 1, 1])
}

fn a_n(n: usize) -> Result<Quiver> {
    let vs = ids("", n);
    let arrows: Vec<(String, String, String)> =
        (1..n).map(|i| (format!("alpha{i}"), i.to_string(), (i + 1).to_string())).collect();
    quiver_from(&vs, &arrows)
}

/// `k^{n+1} → ⋯ → k^{n+1}` along `1 → ⋯ → n`, every map `J(0)`; type `(1, …, n)`.
pub fn degenerate_flag(n: usize) -> Result<CatalogEntry> {
    if n == 0 {
        return input("degenerate_flag needs n ≥ 1");
    }
    let rep = Representation::with_standard_basis(a_n(n)?, &vec![n + 1; n], vec![IntMatrix::jordan(n + 1, 0); n - 1])?;
    Ok(entry("degenerate_flag", rep, Some(DimVector((1..=n).collect()))))
}

/// `P ⊕ I` on `1 → ⋯ → n`; at vertex `j` the basis is `I(j,j) < ⋯ < I(n,j) < P(1,j) < ⋯ < P(j,j)`.
pub fn degenerate_flag_pi(n: usize) -> Result<CatalogEntry> {
    if n == 0 {
        return input("degenerate_flag_pi needs n ≥ 1");
    }
    let q = a_n(n)?;
    let mut bids = Vec::new();
    let mut vo = Vec::new();
    // (is_projective, module index) per local position at each vertex
    let mut layout: Vec<Vec<(bool, usize)>> = Vec::new();
    for j in 1..=n {
        let mut here = Vec::new();
        for i in j..=n {
            here.push((false, i));
        }
        for i in 1..=j {
            here.push((true, i));
        }
        for &(proj, i) in &here {
            bids.push(format!("{}{i},{j}", if proj { "P" } else { "I" }));
            vo.push(j - 1);
        }
        layout.push(here);
    }
    let basis = OrderedBasis::new(n, bids, vo)?;
    let mut mats = Vec::new();
    for j in 1..n {
        let (src, tgt) = (&layout[j - 1], &layout[j]);
        let mut m = IntMatrix::zeros(tgt.len(), src.len());
        for (c, &(proj, i)) in src.iter().enumerate() {
            let survives = proj || j < i;
            if survives {
                let r = tgt.iter().position(|&x| x == (proj, i)).expect("summand continues");
                m.set(r, c, 1);
            }
        }
        mats.push(m);
    }
    let rep = Representation::new(q, basis, mats)?;
    Ok(entry("degenerate_flag_pi", rep, Some(DimVector((1..=n).collect()))))
}

/// Random forest with matrices `[[0, 1], [0, 0]]` (identity block top right); total rank at most `size`.
pub fn forest_block(seed: u64, size: usize) -> Result<CatalogEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(2..=5usize);
    let mut arrows = Vec::new();
    for v in 1..k {
        if rng.gen_bool(0.8) {
            let u = rng.gen_range(0..v);
            let (s, t) = if rng.gen_bool(0.5) { (u, v) } else { (v, u) };
            arrows.push((format!("a{}", arrows.len() + 1), (s + 1).to_string(), (t + 1).to_string()));
        }
    }
    let q = quiver_from(&ids("", k), &arrows)?;
    let mut dims: Vec<usize> = (0..k).map(|_| rng.gen_range(0..=3)).collect();
    while dims.iter().sum::<usize>() > size {
        let v = rng.gen_range(0..k);
        dims[v] = dims[v].saturating_sub(1);
    }
    let mats = q
        .arrows()
        .iter()
        .map(|a| {
            let (mp, mq) = (dims[a.src], dims[a.tgt]);
            let r = rng.gen_range(0..=mp.min(mq));
            let mut m = IntMatrix::zeros(mq, mp);
            for i in 0..r {
                m.set(i, mp - r + i, 1);
            }
            m
        })
        .collect();
    let e: Vec<usize> = dims.iter().map(|&d| rng.gen_range(0..=d)).collect();
    let rep = Representation::with_standard_basis(q, &dims, mats)?;
    Ok(entry("forest_block", rep, Some(DimVector(e))))
}

fn unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            m.set(0, 0, -1);
        }
        return m;
    }
    for _ in 0..rng.gen_range(0..=3) {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        for col in 0..n {
            let v = m.get(j, col);
            m.add_to(i, col, c * v);
        }
    }
    if rng.gen_bool(0.5) {
        let i = rng.gen_range(0..n);
        let j = (i + 1) % n;
        for col in 0..n {
            let (a, b) = (m.get(i, col), m.get(j, col));
            m.set(i, col, b);
            m.set(j, col, a);
        }
    }
    m
}

/// Random tree extension of `S` (one vertex, or one arrow with a random matrix) whose
/// arrows outside `S` carry unimodular matrices; total rank at most `size`.
pub fn tree_iso(seed: u64, size: usize) -> Result<CatalogEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dims = vec![rng.gen_range(1..=2usize)];
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut s_vertices = vec!["1".to_string()];
    let two = rng.gen_bool(0.5) && size >= 3;
    if two {
        dims.push(rng.gen_range(1..=2));
        arrows.push(("s1".into(), "1".into(), "2".into()));
        s_vertices.push("2".into());
    }
    let s_arrows = arrows.len();
    loop {
        let u = rng.gen_range(0..dims.len());
        if dims.iter().sum::<usize>() + dims[u] > size || dims.len() >= 6 {
            break;
        }
        let v = dims.len();
        dims.push(dims[u]);
        let (s, t) = if rng.gen_bool(0.5) { (u, v) } else { (v, u) };
        arrows.push((format!("a{}", arrows.len() + 1 - s_arrows), (s + 1).to_string(), (t + 1).to_string()));
    }
    let q = quiver_from(&ids("", dims.len()), &arrows)?;
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            if i < s_arrows {
                let mut m = IntMatrix::zeros(dims[a.tgt], dims[a.src]);
                for r in 0..dims[a.tgt] {
                    for c in 0..dims[a.src] {
                        m.set(r, c, rng.gen_range(-1..=1));
                    }
                }
                m
            } else {
                unimodular(&mut rng, dims[a.src])
            }
        })
        .collect();
    let e: Vec<usize> = dims.iter().map(|&d| rng.gen_range(0..=d)).collect();
    let rep = Representation::with_standard_basis(q.clone(), &dims, mats)?;
    let mut out = entry("tree_iso", rep, Some(DimVector(e)));
    out.subquiver = Some(Subquiver::new(&q, &s_vertices, &arrows[..s_arrows].iter().map(|a| a.0.clone()).collect::<Vec<_>>())?);
    Ok(out)
}

/// `T ⊔ T → T` folding two identity modules `k^{r1} → k^{r1}` and `k^{r2} → k^{r2}` on `1 → 2`.
pub fn direct_sum_fold(r1: usize, r2: usize) -> Result<CatalogEntry> {
    if r1 == 0 || r2 == 0 {
        return input("direct_sum_fold needs positive ranks");
    }
    let vs: Vec<String> = ["1a", "2a", "1b", "2b"].iter().map(|s| s.to_string()).collect();
    let t = quiver_from(&vs, &arrows3(&[("alpha_a", "1a", "2a"), ("alpha_b", "1b", "2b")]))?;
    let target = Quiver::new(&["1", "2"], &[("alpha", "1", "2")])?;
    let mut bids = Vec::new();
    let mut vo = Vec::new();
    for (v, r) in [(0usize, r1), (2, r2), (1, r1), (3, r2)] {
        for k in 1..=r {
            bids.push(format!("{}.{k}", vs[v]));
            vo.push(v);
        }
    }
    let basis = OrderedBasis::new(4, bids, vo)?;
    let m = Representation::new(t, basis, vec![IntMatrix::identity(r1), IntMatrix::identity(r2)])?;
    let vmap = pairs(&[("1a", "1"), ("2a", "2"), ("1b", "1"), ("2b", "2")]);
    let amap = pairs(&[("alpha_a", "alpha"), ("alpha_b", "alpha")]);
    winding_entry("direct_sum_fold", m, target, &vmap, &amap, &["1a", "1b"], vec![1, 1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs_parse() {
        assert_eq!(parse_catalog_spec("flag(3;1,2)").unwrap(), ("flag".into(), vec![3, 1, 2]));
        assert_eq!(parse_catalog_spec("two_lines").unwrap(), ("two_lines".into(), vec![]));
        assert!(parse_catalog_spec("flag(3").is_err());
    }

    #[test]
    fn every_entry_builds() {
        for name in CATALOG_NAMES {
            let e = catalog(name, &[]).unwrap();
            e.target().unwrap();
        }
        assert!(catalog("nope", &[]).is_err());
    }

    #[test]
    fn documented_shapes() {
        let e = catalog("degenerate_flag", &[2]).unwrap();
        assert_eq!(e.representation.rank_vector().0, vec![3, 3]);
        let e = catalog("kronecker_preprojective", &[1]).unwrap();
        assert_eq!(e.target().unwrap().rank_vector().0, vec![1, 2]);
        let e = catalog("one_loop", &[2, 0]).unwrap();
        assert_eq!(e.representation.matrix(0).to_rows(), vec![vec![0, 1], vec![0, 0]]);
    }

    #[test]
    fn pi_model_matches_jordan_chain() {
        for n in 1..=3 {
            let a = degenerate_flag(n).unwrap().representation;
            let b = degenerate_flag_pi(n).unwrap().representation;
            assert_eq!(a.matrices(), b.matrices());
        }
    }
}
