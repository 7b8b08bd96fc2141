//! Homomorphism search between finite structures.
//!
//! The search is complete backtracking over a candidate table pruned to arc
//! consistency, with variables ordered by decreasing Gaifman degree. An
//! optional node budget turns "none" into "unknown" instead of lying.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::eval::models;
use crate::formula::Formula;
use crate::structure::{ElementId, Structure};

pub type HomCertificate = BTreeMap<ElementId, ElementId>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomSearch {
    Found(HomCertificate),
    None,
    /// The node budget ran out before the search space was exhausted.
    Unknown,
}

impl HomSearch {
    pub fn found(&self) -> Option<&HomCertificate> {
        match self {
            HomSearch::Found(h) => Some(h),
            _ => None,
        }
    }
}

/// Checks that `h` maps every tuple of `a` onto a tuple of `b`. A true
/// 0-ary symbol in `a` must be true in `b` (the empty tuple maps to itself).
pub fn is_hom(a: &Structure, b: &Structure, h: &HomCertificate) -> Result<bool> {
    if a.vocabulary() != b.vocabulary() {
        return Err(Error::VocabularyMismatch(
            "homomorphisms require identical vocabularies".into(),
        ));
    }
    for e in a.universe() {
        match h.get(e) {
            Some(img) if b.universe().contains(img) => {}
            _ => return Ok(false),
        }
    }
    for (symbol, tuple) in a.all_tuples() {
        let image: Vec<ElementId> = tuple.iter().map(|e| h[e].clone()).collect();
        if !b.holds(symbol, &image) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Complete search; `budget` bounds the number of search-tree nodes.
pub fn find_homomorphism_budgeted(a: &Structure, b: &Structure, budget: usize) -> Result<HomSearch> {
    if a.vocabulary() != b.vocabulary() {
        return Err(Error::VocabularyMismatch(
            "homomorphisms require identical vocabularies".into(),
        ));
    }
    // 0-ary relations have no variables to search over.
    for (symbol, arity) in a.vocabulary().symbols() {
        if arity == 0 && a.holds(symbol, &[]) && !b.holds(symbol, &[]) {
            return Ok(HomSearch::None);
        }
    }
    if a.universe().is_empty() {
        return Ok(HomSearch::Found(HomCertificate::new()));
    }
    if b.universe().is_empty() {
        return Ok(HomSearch::None);
    }

    let mut cands: BTreeMap<ElementId, Vec<ElementId>> = a
        .universe()
        .iter()
        .map(|e| (e.clone(), b.universe().to_vec()))
        .collect();
    if !propagate(a, b, &mut cands) {
        return Ok(HomSearch::None);
    }

    // Decreasing Gaifman degree, ties by element id.
    let gaifman = a.gaifman_graph();
    let mut order: Vec<ElementId> = a.universe().to_vec();
    order.sort_by(|x, y| {
        gaifman
            .degree(y)
            .cmp(&gaifman.degree(x))
            .then_with(|| x.cmp(y))
    });

    let mut nodes = 0usize;
    match assign(a, b, &order, 0, cands, &mut nodes, budget) {
        Outcome::Found(h) => Ok(HomSearch::Found(h)),
        Outcome::Exhausted => Ok(HomSearch::None),
        Outcome::OutOfBudget => Ok(HomSearch::Unknown),
    }
}

/// Unbudgeted complete search.
pub fn find_homomorphism(a: &Structure, b: &Structure) -> Result<Option<HomCertificate>> {
    match find_homomorphism_budgeted(a, b, usize::MAX)? {
        HomSearch::Found(h) => Ok(Some(h)),
        HomSearch::None => Ok(None),
        HomSearch::Unknown => unreachable!("unlimited budget cannot run out"),
    }
}

enum Outcome {
    Found(HomCertificate),
    Exhausted,
    OutOfBudget,
}

fn assign(
    a: &Structure,
    b: &Structure,
    order: &[ElementId],
    depth: usize,
    cands: BTreeMap<ElementId, Vec<ElementId>>,
    nodes: &mut usize,
    budget: usize,
) -> Outcome {
    if depth == order.len() {
        let h: HomCertificate = cands
            .iter()
            .map(|(e, vs)| (e.clone(), vs[0].clone()))
            .collect();
        debug_assert!(is_hom(a, b, &h).unwrap());
        return Outcome::Found(h);
    }
    let var = &order[depth];
    let options = cands[var].clone();
    for v in options {
        if *nodes >= budget {
            return Outcome::OutOfBudget;
        }
        *nodes += 1;
        let mut next = cands.clone();
        next.insert(var.clone(), vec![v]);
        if !propagate(a, b, &mut next) {
            continue;
        }
        match assign(a, b, order, depth + 1, next, nodes, budget) {
            Outcome::Exhausted => {}
            other => return other,
        }
    }
    Outcome::Exhausted
}

/// Arc-consistency fixpoint: a candidate v for x survives only if every
/// tuple of `a` through x has a supporting tuple in `b` with v at x's
/// position and the other positions drawn from their candidate sets
/// (respecting repeated elements).
fn propagate(a: &Structure, b: &Structure, cands: &mut BTreeMap<ElementId, Vec<ElementId>>) -> bool {
    let constraints: Vec<(&str, &Vec<ElementId>)> =
        a.all_tuples().filter(|(_, t)| !t.is_empty()).collect();
    loop {
        let mut changed = false;
        for (symbol, tuple) in &constraints {
            for i in 0..tuple.len() {
                let x = &tuple[i];
                let before = cands[x].len();
                let kept: Vec<ElementId> = cands[x]
                    .iter()
                    .filter(|v| has_support(b, symbol, tuple, i, v, cands))
                    .cloned()
                    .collect();
                if kept.is_empty() {
                    return false;
                }
                if kept.len() != before {
                    changed = true;
                    cands.insert(x.clone(), kept);
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn has_support(
    b: &Structure,
    symbol: &str,
    tuple: &[ElementId],
    pos: usize,
    value: &ElementId,
    cands: &BTreeMap<ElementId, Vec<ElementId>>,
) -> bool {
    'tuples: for u in b.tuples(symbol) {
        if &u[pos] != value {
            continue;
        }
        // Repeated elements of the source tuple must map consistently.
        for i in 0..tuple.len() {
            for j in i + 1..tuple.len() {
                if tuple[i] == tuple[j] && u[i] != u[j] {
                    continue 'tuples;
                }
            }
        }
        for (i, x) in tuple.iter().enumerate() {
            if !cands[x].contains(&u[i]) {
                continue 'tuples;
            }
        }
        return true;
    }
    false
}

pub fn homomorphically_equivalent(a: &Structure, b: &Structure) -> Result<bool> {
    Ok(find_homomorphism(a, b)?.is_some() && find_homomorphism(b, a)?.is_some())
}

/// All ordered sample pairs (i, j) with sample[i] ⊨ φ, a homomorphism
/// sample[i] → sample[j], and sample[j] ⊭ φ.
pub fn check_preservation(phi: &Formula, sample: &[Structure]) -> Result<Vec<(usize, usize)>> {
    let truth: Vec<bool> = sample
        .iter()
        .map(|s| models(s, phi))
        .collect::<Result<_>>()?;
    let mut violations = Vec::new();
    for i in 0..sample.len() {
        if !truth[i] {
            continue;
        }
        for j in 0..sample.len() {
            if i == j || truth[j] {
                continue;
            }
            if find_homomorphism(&sample[i], &sample[j])?.is_some() {
                violations.push((i, j));
            }
        }
    }
    Ok(violations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counterexample::make_ln;
    use crate::graph::Graph;
    use crate::parser::parse_formula_untyped;
    use crate::structure::Vocabulary;

    fn id(e: &str) -> ElementId {
        e.into()
    }

    fn identity(a: &Structure) -> HomCertificate {
        a.universe().iter().map(|e| (e.clone(), e.clone())).collect()
    }

    #[test]
    fn identity_is_hom() {
        let a = Graph::cycle(5).to_structure();
        assert!(is_hom(&a, &a, &identity(&a)).unwrap());
    }

    #[test]
    fn parity_map_path_to_edge() {
        let p3 = Graph::path(3).to_structure();
        let k2 = Graph::complete(2).to_structure();
        let h: HomCertificate = [(id("1"), id("1")), (id("2"), id("2")), (id("3"), id("1"))]
            .into_iter()
            .collect();
        assert!(is_hom(&p3, &k2, &h).unwrap());
        // Constant maps crush edges onto loops, which K_2 does not have.
        let constant: HomCertificate = p3
            .universe()
            .iter()
            .map(|e| (e.clone(), id("1")))
            .collect();
        assert!(!is_hom(&p3, &k2, &constant).unwrap());
    }

    #[test]
    fn odd_cycle_has_no_two_coloring() {
        let c5 = Graph::cycle(5).to_structure();
        let k2 = Graph::complete(2).to_structure();
        assert_eq!(find_homomorphism(&c5, &k2).unwrap(), None);
        let c6 = Graph::cycle(6).to_structure();
        assert!(find_homomorphism(&c6, &k2).unwrap().is_some());
    }

    #[test]
    fn inclusion_into_disjoint_union() {
        for g in [Graph::path(3), Graph::cycle(4)] {
            let a = g.to_structure();
            let union = a.disjoint_union(&a).unwrap();
            let h = find_homomorphism(&a, &union).unwrap().expect("inclusion");
            assert!(is_hom(&a, &union, &h).unwrap());
            assert!(homomorphically_equivalent(&a, &union).unwrap());
        }
    }

    #[test]
    fn ordered_paths_only_map_to_equals() {
        assert!(find_homomorphism(&make_ln(3), &make_ln(3)).unwrap().is_some());
        assert_eq!(find_homomorphism(&make_ln(3), &make_ln(4)).unwrap(), None);
        assert_eq!(find_homomorphism(&make_ln(4), &make_ln(3)).unwrap(), None);
        assert!(!homomorphically_equivalent(&make_ln(3), &make_ln(4)).unwrap());
    }

    #[test]
    fn zero_ary_truth_must_transfer() {
        let v = Vocabulary::of(&[("Flag", 0)]);
        let mut a = Structure::new(v.clone());
        a.add_element("x").unwrap();
        a.set_boolean("Flag").unwrap();
        let mut b = Structure::new(v);
        b.add_element("y").unwrap();
        assert_eq!(find_homomorphism(&a, &b).unwrap(), None);
        b.set_boolean("Flag").unwrap();
        assert!(find_homomorphism(&a, &b).unwrap().is_some());
    }

    #[test]
    fn budget_reports_unknown() {
        let c9 = Graph::cycle(9).to_structure();
        let k2 = Graph::complete(2).to_structure();
        assert_eq!(
            find_homomorphism_budgeted(&c9, &k2, 1).unwrap(),
            HomSearch::Unknown
        );
    }

    #[test]
    fn composition_is_hom() {
        let p4 = Graph::path(4).to_structure();
        let p2 = Graph::path(2).to_structure();
        let c6 = Graph::cycle(6).to_structure();
        let h1 = find_homomorphism(&p4, &c6).unwrap().unwrap();
        let h2 = find_homomorphism(&c6, &p2).unwrap().unwrap();
        let composed: HomCertificate = h1
            .iter()
            .map(|(x, y)| (x.clone(), h2[y].clone()))
            .collect();
        assert!(is_hom(&p4, &p2, &composed).unwrap());
    }

    /// Exhaustive oracle: enumerate all |B|^|A| maps.
    fn hom_exists_brute(a: &Structure, b: &Structure) -> bool {
        let n = a.universe().len();
        let m = b.universe().len();
        if n == 0 {
            return is_hom(a, b, &HomCertificate::new()).unwrap();
        }
        if m == 0 {
            return false;
        }
        let mut idx = vec![0usize; n];
        loop {
            let h: HomCertificate = a
                .universe()
                .iter()
                .zip(&idx)
                .map(|(e, &i)| (e.clone(), b.universe()[i].clone()))
                .collect();
            if is_hom(a, b, &h).unwrap() {
                return true;
            }
            let mut carry = 0;
            loop {
                idx[carry] += 1;
                if idx[carry] < m {
                    break;
                }
                idx[carry] = 0;
                carry += 1;
                if carry == n {
                    return false;
                }
            }
        }
    }

    #[test]
    fn search_agrees_with_brute_force() {
        let zoo = [
            Graph::path(2).to_structure(),
            Graph::path(3).to_structure(),
            Graph::cycle(3).to_structure(),
            Graph::cycle(4).to_structure(),
            Graph::star(3).to_structure(),
            make_ln(2).restrict(&["1".into(), "2".into()].into_iter().collect()),
        ];
        for a in &zoo {
            for b in &zoo {
                if a.vocabulary() != b.vocabulary() {
                    continue;
                }
                assert_eq!(
                    find_homomorphism(a, b).unwrap().is_some(),
                    hom_exists_brute(a, b),
                );
            }
        }
    }

    #[test]
    fn preservation_finds_universal_violation() {
        let v = Vocabulary::of(&[("P", 1)]);
        let mut a = Structure::new(v.clone());
        a.add_element("1").unwrap();
        a.add_tuple("P", vec!["1".into()]).unwrap();
        let mut b = Structure::new(v);
        b.add_element("1").unwrap();
        b.add_element("2").unwrap();
        b.add_tuple("P", vec!["1".into()]).unwrap();
        let phi = parse_formula_untyped("A x P(x)").unwrap();
        assert_eq!(check_preservation(&phi, &[a, b]).unwrap(), vec![(0, 1)]);
    }

    #[test]
    fn preservation_clean_for_ep() {
        let phi = parse_formula_untyped("E x E y E(x,y)").unwrap();
        let sample = [
            Graph::path(2).to_structure(),
            Graph::path(4).to_structure(),
            Graph::cycle(5).to_structure(),
        ];
        assert!(check_preservation(&phi, &sample).unwrap().is_empty());
    }
}
