//! Ordered-path structures L_n, the class S of their substructures closed
//! under disjoint unions, the order-detection sentence, and executable
//! checks of the five facts that make S a counterexample to
//! homomorphism preservation.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::eval::models;
use crate::formula::{Formula, Term};
use crate::structure::{ElementId, Structure, Vocabulary};

pub fn ln_vocabulary() -> Vocabulary {
    Vocabulary::of(&[("O", 2), ("S", 2), ("P", 1)])
}

/// L_n: universe {1..n}, O the strict linear order, S the successor
/// relation, P the two endpoints.
pub fn make_ln(n: usize) -> Structure {
    assert!(n >= 1, "L_n needs n >= 1");
    let mut s = Structure::new(ln_vocabulary());
    let name = |i: usize| ElementId::new(i.to_string());
    for i in 1..=n {
        s.add_element(name(i)).unwrap();
    }
    for i in 1..=n {
        for j in i + 1..=n {
            s.add_tuple("O", vec![name(i), name(j)]).unwrap();
        }
    }
    for i in 1..n {
        s.add_tuple("S", vec![name(i), name(i + 1)]).unwrap();
    }
    s.add_tuple("P", vec![name(1)]).unwrap();
    if n >= 2 {
        s.add_tuple("P", vec![name(n)]).unwrap();
    }
    s
}

/// A member of the class S: a disjoint union of substructures of various
/// L_m, each kept with its original element names and tagged with its m.
#[derive(Clone, Debug)]
pub struct SClassMember {
    pub components: Vec<(Structure, usize)>,
}

impl SClassMember {
    /// Assembles the disjoint union, prefixing the i-th component's
    /// elements with `c{i}.`.
    pub fn structure(&self) -> Structure {
        let mut out = Structure::new(ln_vocabulary());
        for (i, (comp, _)) in self.components.iter().enumerate() {
            let tagged = comp.rename(|e| ElementId::new(format!("c{i}.{e}")));
            for e in tagged.universe() {
                out.add_element(e.clone()).unwrap();
            }
            for (sym, tuple) in tagged.all_tuples() {
                out.add_tuple(sym, tuple.clone()).unwrap();
            }
        }
        out
    }

    /// Checks each component against its tagged L_m.
    pub fn validate(&self) -> Result<()> {
        for (comp, m) in &self.components {
            if !comp.is_substructure_of(&make_ln(*m))? {
                return Err(Error::Domain(format!(
                    "component is not a substructure of L_{m}"
                )));
            }
        }
        Ok(())
    }
}

/// Deterministic pseudo-random member of S: up to `max_components`
/// components, each a random substructure of a random L_m with m ≤ max_n.
/// Elements and then surviving tuples are deleted independently.
pub fn sample_s(seed: u64, max_n: usize, max_components: usize) -> SClassMember {
    assert!(max_n >= 1 && max_components >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.gen_range(1..=max_components);
    let mut components = Vec::new();
    for _ in 0..count {
        let m = rng.gen_range(1..=max_n);
        let full = make_ln(m);
        let mut comp = full.clone();
        // Delete elements, but keep at least one.
        let mut universe: Vec<ElementId> = full.universe().to_vec();
        universe.shuffle(&mut rng);
        for e in &universe {
            if comp.universe().len() > 1 && rng.gen_bool(0.2) {
                comp = comp.without_element(e);
            }
        }
        // Delete surviving tuples.
        let tuples: Vec<(String, Vec<ElementId>)> = comp
            .all_tuples()
            .map(|(s, t)| (s.to_string(), t.clone()))
            .collect();
        for (sym, tuple) in tuples {
            if rng.gen_bool(0.2) {
                comp = comp.without_tuple(&sym, &tuple);
            }
        }
        components.push((comp, m));
    }
    SClassMember { components }
}

/// x ≤ y over the order vocabulary.
fn le(x: &str, y: &str) -> Formula {
    Formula::or(
        Formula::atom("O", vec![Term::var(x), Term::var(y)]),
        Formula::Eq(Term::var(x), Term::var(y)),
    )
}

/// β(x,y,z): z lies in the closed interval [x,y].
pub fn beta(x: &str, y: &str, z: &str) -> Formula {
    Formula::and(le(x, z), le(z, y))
}

/// λ(x,y): O(x,y) holds and ≤ linearly orders the interval [x,y].
pub fn lambda(x: &str, y: &str) -> Formula {
    Formula::and(
        Formula::atom("O", vec![Term::var(x), Term::var(y)]),
        Formula::forall(
            "z1",
            Formula::forall(
                "z2",
                Formula::implies(
                    Formula::and(beta(x, y, "z1"), beta(x, y, "z2")),
                    Formula::or(le("z1", "z2"), le("z2", "z1")),
                ),
            ),
        ),
    )
}

/// ν(z1,z2): O(z1,z2) with no element strictly between.
pub fn nu(z1: &str, z2: &str) -> Formula {
    Formula::and(
        Formula::atom("O", vec![Term::var(z1), Term::var(z2)]),
        Formula::forall(
            "w",
            Formula::not(Formula::and(
                Formula::atom("O", vec![Term::var(z1), Term::var("w")]),
                Formula::atom("O", vec![Term::var("w"), Term::var(z2)]),
            )),
        ),
    )
}

/// ν scoped to the interval [x,y]: O(z1,z2) with no element of the interval
/// strictly between. This is the "successive elements in that linear order"
/// reading; the global ν would let elements outside the interval mask a
/// missing S-link.
fn nu_interval(x: &str, y: &str, z1: &str, z2: &str) -> Formula {
    Formula::and(
        Formula::atom("O", vec![Term::var(z1), Term::var(z2)]),
        Formula::forall(
            "w",
            Formula::not(Formula::and_all(vec![
                beta(x, y, "w"),
                Formula::atom("O", vec![Term::var(z1), Term::var("w")]),
                Formula::atom("O", vec![Term::var("w"), Term::var(z2)]),
            ])),
        ),
    )
}

/// The order-detection sentence: there are P-endpoints x, y whose interval
/// is linearly ordered and whose successive elements are S-linked.
pub fn phi_order() -> Formula {
    let inner = Formula::forall(
        "z1",
        Formula::forall(
            "z2",
            Formula::implies(
                Formula::and_all(vec![
                    beta("x", "y", "z1"),
                    beta("x", "y", "z2"),
                    nu_interval("x", "y", "z1", "z2"),
                ]),
                Formula::atom("S", vec![Term::var("z1"), Term::var("z2")]),
            ),
        ),
    );
    Formula::exists(
        "x",
        Formula::exists(
            "y",
            Formula::and_all(vec![
                Formula::atom("P", vec![Term::var("x")]),
                Formula::atom("P", vec![Term::var("y")]),
                lambda("x", "y"),
                inner,
            ]),
        ),
    )
}

/// The library of §-defined formulas, keyed by conventional name.
pub struct FormulaLibrary {
    pub beta: Formula,
    pub lambda: Formula,
    pub nu: Formula,
    pub phi_order: Formula,
}

pub fn formula_library() -> FormulaLibrary {
    FormulaLibrary {
        beta: beta("x", "y", "z"),
        lambda: lambda("x", "y"),
        nu: nu("z1", "z2"),
        phi_order: phi_order(),
    }
}

/// Semantic check: does `a` contain some L_n (n ≥ 2) as a substructure?
///
/// Searches for an S-path between two P-elements a, b with O(a,b) whose
/// element set carries the complete order.
pub fn contains_complete_order(a: &Structure) -> bool {
    let p_elems: Vec<&ElementId> = a.tuples("P").map(|t| &t[0]).collect();
    for start in &p_elems {
        for end in &p_elems {
            if start == end || !a.holds("O", &[(*start).clone(), (*end).clone()]) {
                continue;
            }
            if let Some(chain) = s_path(a, start, end) {
                if chain_fully_ordered(a, &chain) {
                    return true;
                }
            }
        }
    }
    false
}

/// DFS along S-tuples from `start` to `end`, returning the first simple
/// path found.
fn s_path(a: &Structure, start: &ElementId, end: &ElementId) -> Option<Vec<ElementId>> {
    fn dfs(
        a: &Structure,
        here: &ElementId,
        end: &ElementId,
        path: &mut Vec<ElementId>,
        seen: &mut BTreeSet<ElementId>,
    ) -> bool {
        if here == end {
            return true;
        }
        let nexts: Vec<ElementId> = a
            .tuples("S")
            .filter(|t| &t[0] == here)
            .map(|t| t[1].clone())
            .collect();
        for n in nexts {
            if seen.insert(n.clone()) {
                path.push(n.clone());
                if dfs(a, &n, end, path, seen) {
                    return true;
                }
                path.pop();
                seen.remove(&n);
            }
        }
        false
    }
    let mut path = vec![start.clone()];
    let mut seen = BTreeSet::from([start.clone()]);
    if dfs(a, start, end, &mut path, &mut seen) {
        Some(path)
    } else {
        None
    }
}

fn chain_fully_ordered(a: &Structure, chain: &[ElementId]) -> bool {
    for i in 0..chain.len() {
        for j in i + 1..chain.len() {
            if !a.holds("O", &[chain[i].clone(), chain[j].clone()]) {
                return false;
            }
        }
    }
    true
}

/// Quick sanity harness used by unit tests below; the full five-fact sweep
/// lives in `check_lemmas`.
pub fn phi_matches_semantics(a: &Structure) -> Result<bool> {
    Ok(models(a, &phi_order())? == contains_complete_order(a))
}

/// Outcome of one lemma sweep: how many instances were examined and how
/// many contradicted the claimed fact.
#[derive(Clone, Copy, Debug, Default)]
pub struct FactCheck {
    pub checked: usize,
    pub violations: usize,
}

impl FactCheck {
    pub fn ok(&self) -> bool {
        self.checked > 0 && self.violations == 0
    }
}

/// Results of the five executable facts about S and the order sentence:
/// rigidity of homomorphisms into ordered-path substructures, forward
/// transfer of complete orders, the semantic characterization of the
/// sentence, its preservation under homomorphisms on samples, and the
/// minimality of every L_n.
#[derive(Clone, Copy, Debug, Default)]
pub struct LemmaReport {
    pub rigidity: FactCheck,
    pub transfer: FactCheck,
    pub characterization: FactCheck,
    pub preservation: FactCheck,
    pub minimality: FactCheck,
}

impl LemmaReport {
    pub fn all_ok(&self) -> bool {
        self.rigidity.ok()
            && self.transfer.ok()
            && self.characterization.ok()
            && self.preservation.ok()
            && self.minimality.ok()
    }
}

/// Every substructure of L_m on the given element subset (all tuple
/// subsets of the induced structure).
fn each_substructure_on(
    lm: &Structure,
    keep: &BTreeSet<ElementId>,
    f: &mut dyn FnMut(&Structure) -> Result<()>,
) -> Result<()> {
    let induced = lm.restrict(keep);
    let tuples: Vec<(String, Vec<ElementId>)> = induced
        .all_tuples()
        .map(|(s, t)| (s.to_string(), t.clone()))
        .collect();
    if tuples.len() > 24 {
        return Err(Error::TooLarge(
            "substructure sweep is exponential in the tuple count".into(),
        ));
    }
    for mask in 0u64..(1 << tuples.len()) {
        let mut s = Structure::new(lm.vocabulary().clone());
        for e in keep {
            s.add_element(e.clone())?;
        }
        for (b, (sym, tuple)) in tuples.iter().enumerate() {
            if mask & (1 << b) != 0 {
                s.add_tuple(sym, tuple.clone())?;
            }
        }
        f(&s)?;
    }
    Ok(())
}

const RIGIDITY_EXHAUSTIVE_BOUND: usize = 4;

/// Sweeps the five facts. `sample_size` controls the randomized parts,
/// `n_bound` the ordered-path sizes involved (capped at 7 where the
/// class-S enumerator is).
///
/// The rigidity fact needs n ≥ 2: L_1 is a single P-point and maps
/// homomorphically into any substructure retaining a P-tuple. The sweep
/// is exhaustive over all substructures of L_m for m ≤ 4 and randomized
/// above that.
pub fn check_lemmas(sample_size: usize, seed: u64, n_bound: usize) -> Result<LemmaReport> {
    use crate::hom::{check_preservation, find_homomorphism};
    use crate::minimal::{is_minimal_model, isomorphic, ClassSpec, Family};

    if !(2..=7).contains(&n_bound) {
        return Err(Error::Domain(format!(
            "n_bound must lie in 2..=7, got {n_bound}"
        )));
    }
    let phi = phi_order();
    let mut report = LemmaReport::default();

    // Rigidity: a homomorphism L_n → 𝔄 ⊆ L_m with n ≥ 2 forces
    // 𝔄 = L_m and n = m.
    let mut rigidity_case = |a: &Structure, m: usize| -> Result<()> {
        for n in 2..=n_bound {
            let ln = make_ln(n);
            if let Some(h) = find_homomorphism(&ln, a)? {
                report.rigidity.checked += 1;
                let rigid = n == m && isomorphic(a, &make_ln(m))?;
                if !rigid {
                    report.rigidity.violations += 1;
                }
                debug_assert!(crate::hom::is_hom(&ln, a, &h)?);
            }
        }
        Ok(())
    };
    for m in 2..=n_bound.min(RIGIDITY_EXHAUSTIVE_BOUND) {
        let lm = make_ln(m);
        let elems: Vec<ElementId> = lm.universe().to_vec();
        for emask in 1u32..(1 << m) {
            let keep: BTreeSet<ElementId> = elems
                .iter()
                .enumerate()
                .filter(|(i, _)| emask & (1 << i) != 0)
                .map(|(_, e)| e.clone())
                .collect();
            each_substructure_on(&lm, &keep, &mut |a| rigidity_case(a, m))?;
        }
    }
    if n_bound > RIGIDITY_EXHAUSTIVE_BOUND {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5151);
        for m in RIGIDITY_EXHAUSTIVE_BOUND + 1..=n_bound {
            for _ in 0..sample_size {
                let a = random_substructure(&make_ln(m), &mut rng);
                rigidity_case(&a, m)?;
            }
        }
    }

    // Transfer: along any homomorphism between members, a complete order
    // in the source forces one in the target. Inclusions into disjoint
    // unions supply guaranteed positive instances; random pairs add
    // independent ones when a homomorphism happens to exist.
    let mut transfer_case = |src: &Structure, dst: &Structure| -> Result<()> {
        if let Some(h) = find_homomorphism(src, dst)? {
            debug_assert!(crate::hom::is_hom(src, dst, &h)?);
            report.transfer.checked += 1;
            if contains_complete_order(src) && !contains_complete_order(dst) {
                report.transfer.violations += 1;
            }
        }
        Ok(())
    };
    for i in 0..sample_size as u64 {
        let a = sample_s(seed.wrapping_add(i), n_bound, 2).structure();
        let b = sample_s(seed.wrapping_add(i) ^ 0xabcd, n_bound, 2).structure();
        let union = a.disjoint_union(&b)?;
        transfer_case(&a, &union)?;
        transfer_case(&a, &b)?;
    }

    // Characterization: the sentence holds exactly on members containing
    // a complete order.
    for i in 0..sample_size as u64 {
        let a = sample_s(seed.wrapping_add(7919 * i), n_bound, 3).structure();
        report.characterization.checked += 1;
        if !phi_matches_semantics(&a)? {
            report.characterization.violations += 1;
        }
    }
    for n in 1..=n_bound {
        report.characterization.checked += 1;
        if !phi_matches_semantics(&make_ln(n))? {
            report.characterization.violations += 1;
        }
    }

    // Preservation on samples: no hom-related pair in the sample
    // witnesses a violation of preservation for the sentence.
    let mut sample: Vec<Structure> = (1..=n_bound).map(make_ln).collect();
    for i in 0..sample_size.min(40) as u64 {
        sample.push(sample_s(seed.wrapping_add(31 * i), n_bound, 2).structure());
    }
    report.preservation.checked = sample.len() * sample.len();
    report.preservation.violations = check_preservation(&phi, &sample)?.len();

    // Minimality: every ordered path from size 2 up is a minimal model.
    let cls = ClassSpec::new(Family::ClassS, n_bound);
    for n in 2..=n_bound {
        report.minimality.checked += 1;
        if !is_minimal_model(&make_ln(n), &phi, &cls)? {
            report.minimality.violations += 1;
        }
    }

    Ok(report)
}

/// A uniformly chosen element subset and tuple subset of `lm`.
fn random_substructure(lm: &Structure, rng: &mut ChaCha8Rng) -> Structure {
    let keep: BTreeSet<ElementId> = loop {
        let k: BTreeSet<ElementId> = lm
            .universe()
            .iter()
            .filter(|_| rng.gen_bool(0.5))
            .cloned()
            .collect();
        if !k.is_empty() {
            break k;
        }
    };
    let induced = lm.restrict(&keep);
    let mut s = Structure::new(lm.vocabulary().clone());
    for e in &keep {
        s.add_element(e.clone()).unwrap();
    }
    for (sym, tuple) in induced.all_tuples() {
        if rng.gen_bool(0.5) {
            s.add_tuple(sym, tuple.clone()).unwrap();
        }
    }
    s
}
