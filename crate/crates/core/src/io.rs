//! JSON formats. Everything is emitted through `serde_json::Value`, whose maps keep keys sorted.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::catalog::CatalogEntry;
use crate::error::{input, Error, Result};
use crate::hypothesis::{HContext, HVerdict, TypedTriple};
use crate::matrix::IntMatrix;
use crate::oracle::{AffineReport, CellVerdict, CountReport, CountingPolynomial, PoincarePolynomial};
use crate::quiver::{Quiver, QuiverMorphism, QuiverSpec, Subquiver};
use crate::representation::{DimVector, OrderedBasis, Representation};
use crate::schubert::{CellEquationSystem, CellIndex};

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_json_string<T: Serialize>(x: &T) -> String {
    let v = serde_json::to_value(x).expect("serialisable");
    let mut s = serde_json::to_string_pretty(&v).expect("serialisable");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed JSON: {e}")))
}

fn from_value<T: for<'de> Deserialize<'de>>(v: &Value, what: &str) -> Result<T> {
    T::deserialize(v).map_err(|e| Error::Input(format!("malformed {what}: {e}")))
}

#[derive(Serialize, Deserialize)]
struct BasisJson {
    order: Vec<String>,
    vertex_of: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
struct RepresentationJson {
    quiver: QuiverSpec,
    basis: BasisJson,
    matrices: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Serialize, Deserialize)]
struct MorphismJson {
    vertex_map: BTreeMap<String, String>,
    arrow_map: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
struct SubquiverJson {
    vertices: Vec<String>,
    #[serde(default)]
    arrows: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct BundleJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    params: Vec<i64>,
    representation: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    subquiver: Option<SubquiverJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target_quiver: Option<QuiverSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    morphism: Option<MorphismJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dim_vector: Option<BTreeMap<String, usize>>,
}

pub fn quiver_to_json(q: &Quiver) -> Value {
    serde_json::to_value(q.to_spec()).expect("serialisable")
}

pub fn quiver_from_json(v: &Value) -> Result<Quiver> {
    Quiver::from_spec(&from_value::<QuiverSpec>(v, "quiver")?)
}

pub fn representation_to_json(m: &Representation) -> Value {
    let q = m.quiver();
    let basis = m.basis();
    let rep = RepresentationJson {
        quiver: q.to_spec(),
        basis: BasisJson {
            order: basis.ids().to_vec(),
            vertex_of: (0..basis.len()).map(|k| (basis.id(k).to_string(), q.vertex_id(basis.vertex_of(k)).to_string())).collect(),
        },
        matrices: q.arrows().iter().enumerate().map(|(a, arrow)| (arrow.id.clone(), m.matrix(a).to_rows())).collect(),
    };
    serde_json::to_value(rep).expect("serialisable")
}

pub fn representation_from_json(v: &Value) -> Result<Representation> {
    let rep: RepresentationJson = from_value(v, "representation")?;
    let q = Quiver::from_spec(&rep.quiver)?;
    let basis = OrderedBasis::from_ids(&q, &rep.basis.order, &rep.basis.vertex_of)?;
    for id in rep.matrices.keys() {
        q.arrow_or_err(id)?;
    }
    let mut mats = Vec::with_capacity(q.arrow_count());
    for arrow in q.arrows() {
        let rows = rep.matrices.get(&arrow.id).ok_or_else(|| Error::Input(format!("arrow {} has no matrix", arrow.id)))?;
        let (r, c) = (basis.block(arrow.tgt).len(), basis.block(arrow.src).len());
        let m = if r == 0 && rows.is_empty() {
            Some(IntMatrix::zeros(0, c))
        } else if rows.len() == r {
            IntMatrix::from_rows(rows, c)
        } else {
            None
        };
        mats.push(m.ok_or_else(|| Error::Input(format!("matrix of arrow {} is not {r}×{c}", arrow.id)))?);
    }
    Representation::new(q, basis, mats)
}

fn morphism_json(f: &QuiverMorphism) -> MorphismJson {
    MorphismJson { vertex_map: f.vertex_map_ids(), arrow_map: f.arrow_map_ids() }
}

pub fn morphism_to_json(f: &QuiverMorphism) -> Value {
    serde_json::to_value(morphism_json(f)).expect("serialisable")
}

pub fn morphism_from_json(v: &Value, domain: &Quiver, codomain: &Quiver) -> Result<QuiverMorphism> {
    let m: MorphismJson = from_value(v, "morphism")?;
    QuiverMorphism::from_maps(domain.clone(), codomain.clone(), &m.vertex_map, &m.arrow_map)
}

fn subquiver_json(s: &Subquiver, parent: &Quiver) -> SubquiverJson {
    SubquiverJson { vertices: s.vertex_ids(parent), arrows: Some(s.arrow_ids(parent)) }
}

fn subquiver_from(s: &SubquiverJson, parent: &Quiver) -> Result<Subquiver> {
    match &s.arrows {
        Some(arrows) => Subquiver::new(parent, &s.vertices, arrows),
        None => Subquiver::induced(parent, &s.vertices),
    }
}

/// A catalog entry or an input file: representation plus optional subquiver, morphism and dimension vector.
pub fn bundle_to_json(e: &CatalogEntry) -> Value {
    let q = e.representation.quiver();
    let target = e.morphism.as_ref().map(|f| f.codomain());
    let b = BundleJson {
        name: Some(e.name.clone()),
        params: e.params.clone(),
        representation: representation_to_json(&e.representation),
        subquiver: e.subquiver.as_ref().map(|s| subquiver_json(s, q)),
        target_quiver: target.map(|t| t.to_spec()),
        morphism: e.morphism.as_ref().map(morphism_json),
        dim_vector: e.dim_vector.as_ref().map(|d| d.to_map(target.unwrap_or(q))),
    };
    serde_json::to_value(b).expect("serialisable")
}

/// Reads a bundle, or a bare representation (keys `quiver`, `basis`, `matrices`).
pub fn bundle_from_json(v: &Value) -> Result<CatalogEntry> {
    let b: BundleJson = if v.get("representation").is_some() {
        from_value(v, "bundle")?
    } else {
        BundleJson {
            name: None,
            params: Vec::new(),
            representation: v.clone(),
            subquiver: None,
            target_quiver: None,
            morphism: None,
            dim_vector: None,
        }
    };
    let m = representation_from_json(&b.representation)?;
    let q = m.quiver().clone();
    let morphism = match (&b.morphism, &b.target_quiver) {
        (Some(f), Some(t)) => {
            let target = Quiver::from_spec(t)?;
            Some(QuiverMorphism::from_maps(q.clone(), target, &f.vertex_map, &f.arrow_map)?)
        }
        (None, None) => None,
        _ => return input("a morphism needs both `morphism` and `target_quiver`"),
    };
    let subquiver = b.subquiver.as_ref().map(|s| subquiver_from(s, &q)).transpose()?;
    let dim_vector = match &b.dim_vector {
        None => None,
        Some(map) => {
            let target = morphism.as_ref().map(|f| f.codomain()).unwrap_or(&q);
            for k in map.keys() {
                target.vertex_or_err(k)?;
            }
            Some(DimVector(target.vertices().iter().map(|v| map.get(v).copied().unwrap_or(0)).collect()))
        }
    };
    Ok(CatalogEntry {
        name: b.name.unwrap_or_else(|| "input".into()),
        params: b.params,
        representation: m,
        subquiver,
        morphism,
        dim_vector,
    })
}

pub fn cell_json(beta: &CellIndex, basis: &OrderedBasis) -> Value {
    json!(beta.ids(basis))
}

pub fn cells_to_json(cells: &[CellIndex], basis: &OrderedBasis, e: &DimVector, q: &Quiver) -> Value {
    json!({
        "dim_vector": e.to_map(q),
        "cells": cells.iter().map(|b| cell_json(b, basis)).collect::<Vec<_>>(),
    })
}

pub fn equations_to_json(sys: &CellEquationSystem) -> Value {
    let vars: Vec<Value> = sys.vars.iter().map(|&(r, c)| json!([sys.basis_id(r), sys.basis_id(c)])).collect();
    let eqs: Vec<Value> = sys
        .equations
        .iter()
        .map(|eq| {
            let poly: Vec<Value> = eq
                .poly
                .ordered_terms()
                .into_iter()
                .map(|(mono, c)| json!([c, mono.iter().map(|&(v, e)| json!([v, e])).collect::<Vec<_>>()]))
                .collect();
            json!({
                "triple": [sys.arrow_id(eq.arrow), sys.tag_vertex_id(eq.t), sys.tag_vertex_id(eq.s)],
                "row": sys.basis_id(eq.row),
                "col": sys.basis_id(eq.col),
                "poly": poly,
                "text": sys.poly_text(eq),
            })
        })
        .collect();
    json!({
        "cell": (0..sys.beta.len()).map(|i| sys.basis_id(sys.beta.positions()[i])).collect::<Vec<_>>(),
        "vars": vars,
        "eqs": eqs,
    })
}

fn typed_triple_json(tt: &TypedTriple, f: &QuiverMorphism) -> Value {
    let (t, q) = (f.domain(), f.codomain());
    json!({
        "triple": [q.arrow(tt.triple.arrow).id, t.vertex_id(tt.triple.t), t.vertex_id(tt.triple.s)],
        "type": tt.ty.to_string(),
    })
}

/// `{pair, triples, reason}` for failures; pass and order verdicts are tagged by `verdict`.
pub fn verdict_to_json(v: &HVerdict, f: &QuiverMorphism) -> Value {
    let t = f.domain();
    match v {
        HVerdict::Pass { pairs, exceptions, notes } => json!({
            "verdict": "pass",
            "relevant_pairs": pairs.iter().map(|p| json!([t.vertex_id(p.p), t.vertex_id(p.p_prime)])).collect::<Vec<_>>(),
            "exceptions": exceptions.iter().map(|e| json!({
                "pair": [t.vertex_id(e.pair.0), t.vertex_id(e.pair.1)],
                "kind": e.kind,
                "arrow": t.arrow(e.fibre_arrow).id,
                "triple": typed_triple_json(&e.triple, f),
            })).collect::<Vec<_>>(),
            "notes": notes,
        }),
        HVerdict::NotStrictlyOrdered { arrows } => json!({
            "verdict": "not_strictly_ordered",
            "arrows": [t.arrow(arrows.0).id, t.arrow(arrows.1).id],
        }),
        HVerdict::Fail(w) => json!({
            "verdict": "fail",
            "pair": [t.vertex_id(w.pair.0), t.vertex_id(w.pair.1)],
            "triples": w.triples.iter().map(|tt| typed_triple_json(tt, f)).collect::<Vec<_>>(),
            "reason": w.reason,
        }),
    }
}

/// All relevant triples with their types, for inspection.
pub fn triple_table_json(ctx: &HContext<'_>) -> Value {
    let f = ctx.morphism();
    json!(ctx
        .relevant_triples()
        .into_iter()
        .map(|tr| typed_triple_json(&TypedTriple { triple: tr, ty: ctx.classify(tr) }, f))
        .collect::<Vec<_>>())
}

pub fn count_report_json(r: &CountReport, basis: &OrderedBasis) -> Value {
    json!({
        "prime": r.prime,
        "total": r.total,
        "cells": r.per_cell.iter().map(|(b, c)| json!({"cell": cell_json(b, basis), "count": c})).collect::<Vec<_>>(),
    })
}

pub fn polynomial_json(p: &CountingPolynomial) -> Value {
    json!({
        "polynomial": p.to_string(),
        "coefficients": p.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "degree_bound": p.degree_bound,
        "samples": p.samples,
        "warnings": p.warnings,
    })
}

fn verdict_json(v: &CellVerdict) -> Value {
    match v {
        CellVerdict::Affine { dim } => json!({"verdict": "affine", "dim": dim}),
        CellVerdict::Empty => json!({"verdict": "empty"}),
        CellVerdict::NotAPrimePower { prime, count } => {
            json!({"verdict": "not_a_prime_power", "prime": prime, "count": count})
        }
        CellVerdict::InconsistentExponent { exponents } => {
            json!({"verdict": "inconsistent_exponent", "exponents": exponents})
        }
    }
}

pub fn affine_report_json(r: &AffineReport, basis: &OrderedBasis) -> Value {
    json!({
        "certificate": r.certificate_label(),
        "primes": r.primes,
        "all_certified": r.all_certified(),
        "cells": r.cells.iter().map(|c| json!({
            "cell": cell_json(&c.cell, basis),
            "counts": c.counts,
            "result": verdict_json(&c.verdict),
        })).collect::<Vec<_>>(),
    })
}

pub fn poincare_json(p: &PoincarePolynomial) -> Value {
    json!({
        "poincare": p.to_string(),
        "betti": p.betti,
        "smoothness_asserted": p.smoothness_asserted,
        "certificate": p.certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, CATALOG_NAMES};

    #[test]
    fn catalog_entries_round_trip() {
        for name in CATALOG_NAMES {
            let e = catalog(name, &[]).unwrap();
            let text = to_json_string(&bundle_to_json(&e));
            let back = bundle_from_json(&parse_json(&text).unwrap()).unwrap();
            assert_eq!(to_json_string(&bundle_to_json(&back)), text, "{name}");
            assert_eq!(back.representation, e.representation);
        }
    }

    #[test]
    fn malformed_matrices_are_input_errors() {
        let e = catalog("two_lines", &[]).unwrap();
        let mut v = representation_to_json(&e.representation);
        v["matrices"]["alpha"] = json!([[1, 0, 0], [0, 0, 0]]);
        assert!(matches!(representation_from_json(&v), Err(Error::Input(_))));
    }
}
