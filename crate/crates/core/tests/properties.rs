use std::cmp::Ordering;

use proptest::prelude::*;
use qschubert::catalog::{catalog, CatalogEntry};
use qschubert::hypothesis::{HContext, HReading};
use qschubert::io::{parse_json, representation_from_json, representation_to_json, to_json_string};
use qschubert::matrix::{gaussian_binomial, IntMatrix};
use qschubert::oracle::*;
use qschubert::quiver::{difference_of, is_tree, is_tree_by_count, is_winding, Quiver, Subquiver};
use qschubert::representation::{push_forward, restrict};
use qschubert::schubert::{
    enumerate_cells, generate_equations, tree_cell_dimension_with, tree_cell_emptiness, PeelOrder,
};
use qschubert::{DimVector, Representation};

const BIG: u128 = u128::MAX;

/// Quiver on `n` vertices named `v0, v1, …` with arrows `a0, a1, …`.
fn quiver(n: usize, arrows: &[(usize, usize)]) -> Quiver {
    let vs: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let names: Vec<(String, String, String)> =
        arrows.iter().enumerate().map(|(i, &(s, t))| (format!("a{i}"), vs[s].clone(), vs[t].clone())).collect();
    let refs: Vec<(&str, &str, &str)> = names.iter().map(|(a, s, t)| (a.as_str(), s.as_str(), t.as_str())).collect();
    Quiver::new(&vs, &refs).unwrap()
}

fn rep(n: usize, arrows: &[(usize, usize)], dims: &[usize], entries: &[i64]) -> Representation {
    let q = quiver(n, arrows);
    let mut it = entries.iter().cycle();
    let mats = arrows
        .iter()
        .map(|&(s, t)| {
            let rows: Vec<Vec<i64>> = (0..dims[t]).map(|_| (0..dims[s]).map(|_| *it.next().unwrap()).collect()).collect();
            IntMatrix::from_rows(&rows, dims[s]).unwrap()
        })
        .collect();
    Representation::with_standard_basis(q, dims, mats).unwrap()
}

/// Representation with at most 3 vertices, 4 arrows (loops allowed) and total dimension ≤ 5,
/// together with a dimension vector below its rank.
fn small_rep() -> impl Strategy<Value = (Representation, DimVector)> {
    (1usize..=3)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec((0..n, 0..n), 0..=4),
                prop::collection::vec(0usize..=3, n),
                prop::collection::vec(-1i64..=2, 1..=12),
                prop::collection::vec(0.0f64..1.0, n),
            )
        })
        .prop_filter("total dimension ≤ 5", |(_, _, dims, _, _)| dims.iter().sum::<usize>() <= 5)
        .prop_map(|(n, arrows, dims, entries, fractions)| {
            let e = dims.iter().zip(&fractions).map(|(&d, f)| ((d + 1) as f64 * f) as usize).collect();
            (rep(n, &arrows, &dims, &entries), DimVector(e))
        })
}

/// Two-component version of [`small_rep`]: vertices `0..n1` and `n1..n1+n2` with no arrows between them.
fn split_rep() -> impl Strategy<Value = (Representation, usize, DimVector)> {
    (1usize..=2, 1usize..=2)
        .prop_flat_map(|(n1, n2)| {
            (
                Just((n1, n2)),
                prop::collection::vec((0..n1, 0..n1), 0..=2),
                prop::collection::vec((0..n2, 0..n2), 0..=2),
                prop::collection::vec(0usize..=2, n1 + n2),
                prop::collection::vec(-1i64..=2, 1..=8),
                prop::collection::vec(0.0f64..1.0, n1 + n2),
            )
        })
        .prop_filter("total dimension ≤ 5", |(_, _, _, dims, _, _)| dims.iter().sum::<usize>() <= 5)
        .prop_map(|((n1, n2), a1, a2, dims, entries, fractions)| {
            let arrows: Vec<(usize, usize)> = a1.into_iter().chain(a2.into_iter().map(|(s, t)| (s + n1, t + n1))).collect();
            let e = dims.iter().zip(&fractions).map(|(&d, f)| ((d + 1) as f64 * f) as usize).collect();
            (rep(n1 + n2, &arrows, &dims, &entries), n1, DimVector(e))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn chart_counts_match_subspace_enumeration((m, e) in small_rep(), p in prop::sample::select(vec![2u64, 3])) {
        let report = &count(&m, &e, &[p], BIG).unwrap()[0];
        prop_assert!(report.is_partition());
        let other = crosscheck_counts(&m, &e, p, BIG).unwrap();
        prop_assert_eq!(report.total, other.values().sum::<u64>());
        for (beta, c) in &report.per_cell {
            prop_assert_eq!(*c, other.get(beta).copied().unwrap_or(0), "cell {}", beta.display(m.basis()));
        }
    }

    #[test]
    fn grouped_counts_match_single_cells((m, e) in small_rep(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let cells = enumerate_cells(m.basis(), &e).unwrap();
        let grouped = count_cells(&m, &cells, p);
        for (beta, c) in cells.iter().zip(grouped) {
            prop_assert_eq!(c, count_cell(&m, beta, p, BIG).unwrap());
        }
    }

    #[test]
    fn cell_points_solve_the_equations((m, e) in small_rep()) {
        for beta in enumerate_cells(m.basis(), &e).unwrap() {
            let sys = generate_equations(&m, &beta, None).unwrap();
            let points = cell_points(&m, &beta, 2, BIG).unwrap();
            for point in &points {
                let v = point.to_cell_point(m.basis());
                prop_assert!(sys.is_satisfied(&v.chart_values(&sys.vars), 2));
            }
            let k = sys.vars.len();
            prop_assume!(k <= 12);
            let solutions = (0..1u64 << k)
                .filter(|bits| sys.is_satisfied(&(0..k).map(|i| (bits >> i) & 1).collect::<Vec<_>>(), 2))
                .count();
            prop_assert_eq!(solutions, points.len(), "cell {}", beta.display(m.basis()));
        }
    }

    #[test]
    fn disjoint_union_counts_multiply((m, n1, e) in split_rep(), p in prop::sample::select(vec![2u64, 3])) {
        let q = m.quiver();
        let halves: Vec<_> = [(0..n1).collect::<Vec<_>>(), (n1..q.vertex_count()).collect()]
            .iter()
            .map(|vs| {
                let ids: Vec<&str> = vs.iter().map(|&v| q.vertex_id(v)).collect();
                let r = restrict(&m, &Subquiver::induced(q, &ids).unwrap()).unwrap();
                let e_part = DimVector(vs.iter().map(|&v| e.0[v]).collect());
                (r, e_part)
            })
            .collect();
        let report = &count(&m, &e, &[p], BIG).unwrap()[0];
        for (beta, c) in &report.per_cell {
            let product: u64 = halves
                .iter()
                .map(|(r, _)| count_cell(&r.representation, &beta.restrict_to(&r.parent_position), p, BIG).unwrap())
                .product();
            prop_assert_eq!(*c, product);
        }
        let totals: u64 = halves.iter().map(|(r, e)| count(&r.representation, e, &[p], BIG).unwrap()[0].total).product();
        prop_assert_eq!(report.total, totals);
    }

    #[test]
    fn representations_round_trip_through_json((m, _) in small_rep()) {
        let text = to_json_string(&representation_to_json(&m));
        let back = representation_from_json(&parse_json(&text).unwrap()).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(to_json_string(&representation_to_json(&back)), text);
    }

    #[test]
    fn tree_checks_agree(n in 1usize..=5, arrows in prop::collection::vec((0usize..5, 0usize..5), 0..=6)) {
        let arrows: Vec<(usize, usize)> = arrows.into_iter().map(|(s, t)| (s % n, t % n)).collect();
        let q = quiver(n, &arrows);
        prop_assert_eq!(is_tree(&q), is_tree_by_count(&q));
    }

    #[test]
    fn difference_and_subquiver_cover_the_arrows(
        n in 1usize..=4,
        arrows in prop::collection::vec((0usize..4, 0usize..4), 0..=6),
        mask in prop::collection::vec(any::<bool>(), 4),
    ) {
        let arrows: Vec<(usize, usize)> = arrows.into_iter().map(|(s, t)| (s % n, t % n)).collect();
        let q = quiver(n, &arrows);
        let ids: Vec<&str> = (0..n).filter(|&v| mask[v]).map(|v| q.vertex_id(v)).collect();
        let s = Subquiver::induced(&q, &ids).unwrap();
        let d = difference_of(&q, &s).unwrap();
        for a in 0..q.arrow_count() {
            prop_assert!(s.contains_arrow(a) != d.contains_arrow(a));
        }
    }

    #[test]
    fn fibration_is_multiplicative(seed in 100u64..400) {
        let ent = catalog("tree_iso", &[seed as i64, 8]).unwrap();
        let m = &ent.representation;
        let e = ent.dim_vector.clone().unwrap();
        prop_assume!(ambient_estimate(&m.rank_vector(), &e, 3) <= 100_000);
        for c in check_fibration(m, ent.subquiver.as_ref().unwrap(), &e, &[2, 3], BIG).unwrap() {
            prop_assert!(c.holds, "{} over F_{}", ent.label(), c.prime);
        }
    }

    #[test]
    fn forest_cells_are_affine(seed in 100u64..400) {
        let ent = catalog("forest_block", &[seed as i64, 8]).unwrap();
        let m = &ent.representation;
        let e = ent.dim_vector.clone().unwrap();
        prop_assume!(ambient_estimate(&m.rank_vector(), &e, 3) <= 100_000);
        let report = verify_affine(m, &e, None, BIG).unwrap();
        prop_assert!(report.all_certified(), "{} e={}", ent.label(), e);
        let poly = counting_polynomial(m, &e, None, BIG).unwrap();
        prop_assert_eq!(poly.value_at_one(), num_rational::BigRational::from_integer(report.nonempty_cells().into()));
    }
}

#[test]
fn peeling_order_does_not_matter() {
    for m in 2..=5i64 {
        for mask in 1..(1 << (m - 1)) {
            let dims: Vec<i64> = (1..m).filter(|i| mask & (1 << (i - 1)) != 0).collect();
            let ent = catalog("flag", &[vec![m], dims].concat()).unwrap();
            let (rep, s) = (&ent.representation, ent.subquiver.as_ref().unwrap());
            for e in [ent.dim_vector.clone().unwrap(), DimVector(vec![1; rep.quiver().vertex_count()])] {
                for beta in enumerate_cells(rep.basis(), &e).unwrap() {
                    if tree_cell_emptiness(rep, s, &beta, true).unwrap().is_empty() {
                        continue;
                    }
                    assert_eq!(
                        tree_cell_dimension_with(rep, s, &beta, PeelOrder::LargestEnd).unwrap(),
                        tree_cell_dimension_with(rep, s, &beta, PeelOrder::SmallestEnd).unwrap(),
                        "{} cell {}",
                        ent.label(),
                        beta.display(rep.basis())
                    );
                }
            }
        }
    }
}

#[test]
fn one_vertex_counts_are_gaussian_binomials() {
    for m in 0..=5usize {
        let ent = catalog("one_vertex", &[m as i64]).unwrap();
        for e in 0..=m {
            for r in count(&ent.representation, &DimVector(vec![e]), &[2, 3, 5], BIG).unwrap() {
                assert_eq!(r.total as u128, gaussian_binomial(m, e, r.prime), "Gr({e},{m}) over F_{}", r.prime);
            }
        }
    }
}

fn windings() -> Vec<CatalogEntry> {
    [
        ("ex_4_5_1", vec![]),
        ("ex_4_5_2", vec![]),
        ("ex_4_5_5", vec![]),
        ("kronecker_preprojective", vec![2]),
        ("kronecker_preinjective", vec![2]),
        ("direct_sum_fold", vec![2, 1]),
    ]
    .into_iter()
    .map(|(n, p)| catalog(n, &p).unwrap())
    .collect()
}

#[test]
fn push_forward_keeps_the_basis_and_is_monomial() {
    for ent in windings() {
        let f = ent.morphism.as_ref().unwrap();
        let n = push_forward(f, &ent.representation).unwrap();
        assert_eq!(n.rank_vector().total(), ent.representation.rank_vector().total());
        assert!(is_winding(f));
        let (t, b) = (n.quiver(), n.basis());
        for (a, mat) in n.matrices().iter().enumerate() {
            let (src, tgt) = (t.arrow(a).src, t.arrow(a).tgt);
            let (rows, cols) = (b.block(tgt), b.block(src));
            for (j, &c) in cols.iter().enumerate() {
                let fibres: std::collections::BTreeSet<usize> = rows
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mat.get(i, j) != 0)
                    .map(|(_, &r)| ent.representation.basis().vertex_of(r))
                    .collect();
                assert!(fibres.len() <= 1, "{}: column {} of {} meets several blocks", ent.label(), b.id(c), t.arrow(a).id);
            }
        }
    }
}

#[test]
fn psi_is_injective_on_relevant_pairs() {
    for ent in windings() {
        let (f, s) = (ent.morphism.as_ref().unwrap(), ent.subquiver.as_ref().unwrap());
        let ctx = HContext::new(f, s, &ent.representation.basis().vertex_order()).unwrap();
        let pairs = ctx.relevant_pairs();
        for x in &pairs {
            for y in &pairs {
                let (a, b) = ((x.p, x.p_prime), (y.p, y.p_prime));
                assert_eq!(ctx.psi_cmp(a, b) == Ordering::Equal, a == b, "{}", ent.label());
                assert_eq!(ctx.psi_cmp(a, b), ctx.psi_cmp(b, a).reverse());
            }
        }
    }
}

#[test]
fn triple_classification_is_total_and_stable() {
    for ent in windings() {
        let (f, s) = (ent.morphism.as_ref().unwrap(), ent.subquiver.as_ref().unwrap());
        let ctx = HContext::new(f, s, &ent.representation.basis().vertex_order()).unwrap();
        let mut triples = ctx.relevant_triples();
        let forward: Vec<_> = triples.iter().map(|&t| ctx.classify(t)).collect();
        triples.reverse();
        let mut backward: Vec<_> = triples.iter().map(|&t| ctx.classify(t)).collect();
        backward.reverse();
        assert_eq!(forward, backward, "{}", ent.label());
        let again = qschubert::hypothesis::check_hypothesis_h(&ent.representation, s, f, None, HReading::Symmetric).unwrap();
        let first = qschubert::hypothesis::check_hypothesis_h(&ent.representation, s, f, None, HReading::Symmetric).unwrap();
        assert_eq!(format!("{again:?}"), format!("{first:?}"));
    }
}

#[test]
fn direct_sum_cells_factor() {
    for (r1, r2) in [(1, 1), (2, 1), (1, 2)] {
        let ent = catalog("direct_sum_fold", &[r1, r2]).unwrap();
        let m = &ent.representation;
        let n = ent.target().unwrap();
        let t = m.quiver();
        let summands: Vec<_> = t
            .components()
            .iter()
            .map(|c| {
                let ids: Vec<&str> = c.iter().map(|&v| t.vertex_id(v)).collect();
                restrict(m, &Subquiver::induced(t, &ids).unwrap()).unwrap()
            })
            .collect();
        assert_eq!(summands.len(), 2);
        for e in [vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2], vec![0, 1]] {
            let e = DimVector(e);
            if !e.le(&n.rank_vector()) {
                continue;
            }
            for beta in enumerate_cells(n.basis(), &e).unwrap() {
                let mut exponent = None;
                for p in [2u64, 3, 5] {
                    let c = count_cell(&n, &beta, p, BIG).unwrap();
                    let parts: u64 = summands
                        .iter()
                        .map(|r| count_cell(&r.representation, &beta.restrict_to(&r.parent_position), p, BIG).unwrap())
                        .product();
                    assert_eq!(c == 0, parts == 0, "{} cell {}", ent.label(), beta.display(n.basis()));
                    if c == 0 {
                        continue;
                    }
                    assert_eq!(c % parts, 0);
                    let k = exponent_of(c / parts, p).expect("ratio is a power of q");
                    assert_eq!(*exponent.get_or_insert(k), k, "exponent varies with q");
                }
            }
        }
    }
}
