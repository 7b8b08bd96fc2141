//! Randomized invariant checks for the core algorithms.

use std::collections::BTreeSet;

use proptest::prelude::*;

use fmlab::formula::{Formula, Term};
use fmlab::graph::Graph;
use fmlab::hom::is_hom;
use fmlab::parser::parse_formula_untyped;
use fmlab::scattered::{is_r_scattered, max_scattered_set, ScatterMode};
use fmlab::structure::{ElementId, Structure, Vocabulary};

fn term_strategy() -> impl Strategy<Value = Term> {
    prop_oneof![
        prop_oneof![Just("x"), Just("y"), Just("z")].prop_map(Term::var),
        prop_oneof![Just("a"), Just("b")].prop_map(|c| Term::Const(ElementId::new(c))),
    ]
}

fn formula_strategy() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        any::<bool>().prop_map(Formula::Bool),
        (
            prop_oneof![Just("E"), Just("P"), Just("Q")],
            proptest::collection::vec(term_strategy(), 0..3)
        )
            .prop_map(|(s, terms)| Formula::Atom {
                symbol: s.to_string(),
                terms
            }),
        (term_strategy(), term_strategy()).prop_map(|(s, t)| Formula::Eq(s, t)),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (prop_oneof![Just("x"), Just("y"), Just("z")], inner.clone())
                .prop_map(|(v, f)| Formula::exists(v, f)),
            (prop_oneof![Just("x"), Just("y"), Just("z")], inner)
                .prop_map(|(v, f)| Formula::forall(v, f)),
        ]
    })
}

/// An undirected graph on vertices 0..n given by a set of index pairs.
fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::btree_set((0..n, 0..n), 0..(2 * n)).prop_map(move |pairs| {
            let mut g = Graph::new();
            let vs: Vec<ElementId> = (0..n).map(|i| ElementId::new(i.to_string())).collect();
            for v in &vs {
                g.add_vertex(v.clone());
            }
            for (i, j) in pairs {
                if i != j {
                    g.add_edge(&vs[i], &vs[j]).unwrap();
                }
            }
            g
        })
    })
}

/// A {E/2, P/1} structure on elements 0..n with arbitrary tuples.
fn structure_strategy(max_n: usize) -> impl Strategy<Value = Structure> {
    (1..=max_n).prop_flat_map(|n| {
        (
            proptest::collection::btree_set((0..n, 0..n), 0..(2 * n)),
            proptest::collection::btree_set(0..n, 0..n),
        )
            .prop_map(move |(edges, points)| {
                let vocab = Vocabulary::of(&[("E", 2), ("P", 1)]);
                let mut s = Structure::new(vocab);
                let vs: Vec<ElementId> = (0..n).map(|i| ElementId::new(i.to_string())).collect();
                for v in &vs {
                    s.add_element(v.clone()).unwrap();
                }
                for (i, j) in edges {
                    s.add_tuple("E", vec![vs[i].clone(), vs[j].clone()]).unwrap();
                }
                for i in points {
                    s.add_tuple("P", vec![vs[i].clone()]).unwrap();
                }
                s
            })
    })
}

/// Builds the image structure of an arbitrary relabelling, which is a
/// homomorphism onto that image by construction.
fn quotient(
    s: &Structure,
    label: impl Fn(&ElementId) -> ElementId,
) -> (Structure, fmlab::hom::HomCertificate) {
    let map: fmlab::hom::HomCertificate = s
        .universe()
        .iter()
        .map(|e| (e.clone(), label(e)))
        .collect();
    let mut q = Structure::new(s.vocabulary().clone());
    for target in map.values() {
        if !q.has_element(target) {
            q.add_element(target.clone()).unwrap();
        }
    }
    for (sym, tuple) in s.all_tuples() {
        let image: Vec<ElementId> = tuple.iter().map(|e| map[e].clone()).collect();
        if !q.holds(sym, &image) {
            q.add_tuple(sym, image).unwrap();
        }
    }
    (q, map)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn formula_print_parse_roundtrip(f in formula_strategy()) {
        let printed = f.to_string();
        let parsed = parse_formula_untyped(&printed).unwrap();
        prop_assert_eq!(parsed, f);
    }

    #[test]
    fn well_naming_preserves_rank_and_free_variables(f in formula_strategy()) {
        let renamed = f.well_named(&BTreeSet::new());
        prop_assert_eq!(renamed.quantifier_rank(), f.quantifier_rank());
        prop_assert_eq!(renamed.free_variables(), f.free_variables());
    }

    #[test]
    fn greedy_scattered_set_is_scattered(g in graph_strategy(9), r in 0usize..3) {
        let s = max_scattered_set(&g, r, ScatterMode::Greedy).unwrap();
        prop_assert!(!s.is_empty());
        prop_assert!(is_r_scattered(&g, &s, r).unwrap());
        // scatteredness at radius r implies scatteredness at every smaller radius
        for r2 in 0..r {
            prop_assert!(is_r_scattered(&g, &s, r2).unwrap());
        }
    }

    #[test]
    fn exact_scattered_set_dominates_greedy(g in graph_strategy(7), r in 0usize..3) {
        let greedy = max_scattered_set(&g, r, ScatterMode::Greedy).unwrap();
        let exact = max_scattered_set(&g, r, ScatterMode::Exact { vertex_bound: 16 }).unwrap();
        prop_assert!(is_r_scattered(&g, &exact, r).unwrap());
        prop_assert!(exact.len() >= greedy.len());
    }

    #[test]
    fn quotient_maps_are_homomorphisms_and_compose(s in structure_strategy(8), c in 1usize..5) {
        let classes = c + 1;
        let (q, h) = quotient(&s, |e| {
            let idx: usize = e.as_str().parse().unwrap();
            ElementId::new(format!("q{}", idx % classes))
        });
        prop_assert!(is_hom(&s, &q, &h).unwrap());
        // collapse q once more and check that the composite is again a hom
        let (q2, h2) = quotient(&q, |e| {
            let idx: usize = e.as_str().trim_start_matches('q').parse().unwrap();
            ElementId::new(format!("p{}", idx % c))
        });
        prop_assert!(is_hom(&q, &q2, &h2).unwrap());
        let composed: fmlab::hom::HomCertificate = s
            .universe()
            .iter()
            .map(|e| (e.clone(), h2[&h[e]].clone()))
            .collect();
        prop_assert!(is_hom(&s, &q2, &composed).unwrap());
    }

    #[test]
    fn disjoint_union_gaifman_adds_up(a in structure_strategy(5), b in structure_strategy(5)) {
        let u = a.disjoint_union(&b).unwrap();
        let (ga, gb, gu) = (a.gaifman_graph(), b.gaifman_graph(), u.gaifman_graph());
        prop_assert_eq!(gu.vertex_count(), ga.vertex_count() + gb.vertex_count());
        prop_assert_eq!(gu.edge_count(), ga.edge_count() + gb.edge_count());
    }

    #[test]
    fn substructures_keep_homomorphisms_into_the_whole(s in structure_strategy(6)) {
        // the identity on a restricted universe is a homomorphism into the original
        let keep: BTreeSet<ElementId> = s
            .universe()
            .iter()
            .filter(|e| e.as_str().parse::<usize>().unwrap() % 2 == 0)
            .cloned()
            .collect();
        prop_assume!(!keep.is_empty());
        let sub = s.restrict(&keep);
        let id: fmlab::hom::HomCertificate =
            keep.iter().map(|e| (e.clone(), e.clone())).collect();
        prop_assert!(is_hom(&sub, &s, &id).unwrap());
        prop_assert!(sub.is_substructure_of(&s).unwrap());
    }
}
