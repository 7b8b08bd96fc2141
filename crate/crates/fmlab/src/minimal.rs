//! Minimal models of a sentence relative to a class of structures, and the
//! reconstruction of an equivalent existential-positive sentence from them.

use std::collections::BTreeSet;

use crate::counterexample::{ln_vocabulary, make_ln};
use crate::error::{Error, Result};
use crate::eval::{evaluate, models, Assignment};
use crate::formula::{Formula, Term};
use crate::hom::{is_hom, HomCertificate};
use crate::locality::{dist_formula_between, relativize, BasicLocalSentence};
use crate::scattered::is_r_scattered;
use crate::structure::{ElementId, Structure, Vocabulary};

/// The families a class generator can draw from.
#[derive(Clone, Debug)]
pub enum Family {
    /// Symmetric loopless structures over {E/2}.
    Graphs,
    /// Disjoint unions of substructures of the ordered paths L_n.
    ClassS,
    /// Every structure over the given vocabulary.
    All(Vocabulary),
    /// An explicit list; closed under nothing unless stated.
    Corpus(Vec<Structure>),
}

#[derive(Clone, Debug)]
pub struct ClassSpec {
    pub family: Family,
    pub size_bound: usize,
}

const ISO_CAP: usize = 8;

impl ClassSpec {
    pub fn new(family: Family, size_bound: usize) -> Self {
        ClassSpec { family, size_bound }
    }

    /// Membership up to isomorphism.
    pub fn contains(&self, a: &Structure) -> Result<bool> {
        if a.universe().len() > self.size_bound {
            return Ok(false);
        }
        match &self.family {
            Family::Graphs => Ok(is_graph_structure(a)),
            Family::All(v) => Ok(a.vocabulary() == v),
            Family::ClassS => class_s_contains(a),
            Family::Corpus(list) => {
                for b in list {
                    if isomorphic(a, b)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }

    fn substructure_closed(&self) -> bool {
        matches!(
            self.family,
            Family::Graphs | Family::All(_) | Family::ClassS
        )
    }

    /// Streams every member with at most `size_bound` elements, one
    /// representative per isomorphism class for the generated families.
    /// The callback returns false to stop early.
    pub fn for_each_member(&self, f: &mut dyn FnMut(&Structure) -> Result<bool>) -> Result<()> {
        match &self.family {
            Family::Corpus(list) => {
                for a in list {
                    if a.universe().len() <= self.size_bound && !f(a)? {
                        return Ok(());
                    }
                }
                Ok(())
            }
            Family::Graphs => each_graph(self.size_bound, f),
            Family::All(v) => each_structure(v, self.size_bound, f),
            Family::ClassS => each_class_s_member(self.size_bound, f),
        }
    }
}

fn is_graph_structure(a: &Structure) -> bool {
    if a.vocabulary() != &Vocabulary::of(&[("E", 2)]) {
        return false;
    }
    a.tuples("E")
        .all(|t| t[0] != t[1] && a.holds("E", &[t[1].clone(), t[0].clone()]))
}

/// Every graph on ≤ bound vertices (one labeled representative per edge set;
/// isomorphic duplicates are tolerated, dedup happens at collection time).
fn each_graph(bound: usize, f: &mut dyn FnMut(&Structure) -> Result<bool>) -> Result<()> {
    let vocab = Vocabulary::of(&[("E", 2)]);
    for n in 1..=bound {
        let names: Vec<ElementId> = (1..=n).map(|i| ElementId::new(i.to_string())).collect();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        if pairs.len() > 20 {
            return Err(Error::TooLarge(format!(
                "graph family enumeration capped well below {n} vertices"
            )));
        }
        for mask in 0u32..(1 << pairs.len()) {
            let mut s = Structure::new(vocab.clone());
            for e in &names {
                s.add_element(e.clone()).unwrap();
            }
            for (b, (i, j)) in pairs.iter().enumerate() {
                if mask & (1 << b) != 0 {
                    s.add_tuple("E", vec![names[*i].clone(), names[*j].clone()])?;
                    s.add_tuple("E", vec![names[*j].clone(), names[*i].clone()])?;
                }
            }
            if !f(&s)? {
                return Ok(());
            }
        }
    }
    Ok(())
}

/// Every structure over `vocab` on ≤ bound elements (all tuple subsets).
fn each_structure(
    vocab: &Vocabulary,
    bound: usize,
    f: &mut dyn FnMut(&Structure) -> Result<bool>,
) -> Result<()> {
    for n in 1..=bound {
        let names: Vec<ElementId> = (1..=n).map(|i| ElementId::new(i.to_string())).collect();
        let mut all_tuples: Vec<(String, Vec<ElementId>)> = Vec::new();
        for (sym, arity) in vocab.symbols() {
            let mut idx = vec![0usize; arity];
            loop {
                all_tuples.push((
                    sym.to_string(),
                    idx.iter().map(|&i| names[i].clone()).collect(),
                ));
                if arity == 0 {
                    break;
                }
                let mut c = 0;
                loop {
                    idx[c] += 1;
                    if idx[c] < n {
                        break;
                    }
                    idx[c] = 0;
                    c += 1;
                    if c == arity {
                        break;
                    }
                }
                if c == arity {
                    break;
                }
            }
        }
        if all_tuples.len() > 24 {
            return Err(Error::TooLarge(
                "full-family enumeration is exponential in the tuple count; \
                 use a smaller bound or vocabulary"
                    .into(),
            ));
        }
        for mask in 0u64..(1 << all_tuples.len()) {
            let mut s = Structure::new(vocab.clone());
            for e in &names {
                s.add_element(e.clone()).unwrap();
            }
            for (b, (sym, tuple)) in all_tuples.iter().enumerate() {
                if mask & (1 << b) != 0 {
                    s.add_tuple(sym, tuple.clone())?;
                }
            }
            if !f(&s)? {
                return Ok(());
            }
        }
    }
    Ok(())
}

// --- the class-S enumerator ---------------------------------------------
//
// Up to isomorphism, a member with s elements is a disjoint union of
// connected components, and a connected substructure of any L_m on s
// elements is isomorphic to a connected *spanning* substructure of L_s
// (compacting the gaps preserves O-order, S-consecutiveness, and endpoint
// membership in P). So the members of size ≤ B are exactly the multisets
// of connected spanning tuple-subsets of L_t for t ≤ B.

fn lt_tuples(t: usize) -> Vec<(&'static str, Vec<usize>)> {
    let mut out = Vec::new();
    for i in 1..=t {
        for j in i + 1..=t {
            out.push(("O", vec![i, j]));
        }
    }
    for i in 1..t {
        out.push(("S", vec![i, i + 1]));
    }
    out.push(("P", vec![1]));
    if t >= 2 {
        out.push(("P", vec![t]));
    }
    out
}

/// Masks over `lt_tuples(t)` that touch every element and are connected
/// (single elements count as connected for t = 1).
fn spanning_connected_masks(t: usize) -> Vec<u32> {
    let tuples = lt_tuples(t);
    assert!(tuples.len() <= 31);
    let mut out = Vec::new();
    'mask: for mask in 0u32..(1 << tuples.len()) {
        if t == 1 {
            out.push(mask);
            continue;
        }
        // Union-find over {1..t} through the selected binary tuples.
        let mut parent: Vec<usize> = (0..=t).collect();
        fn root(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut covered = vec![false; t + 1];
        for (b, (sym, args)) in tuples.iter().enumerate() {
            if mask & (1 << b) == 0 {
                continue;
            }
            for &a in args {
                covered[a] = true;
            }
            if *sym != "P" {
                let (x, y) = (root(&mut parent, args[0]), root(&mut parent, args[1]));
                parent[x] = y;
            }
        }
        if covered[1..=t].iter().any(|c| !c) {
            continue;
        }
        let r0 = root(&mut parent, 1);
        for x in 2..=t {
            if root(&mut parent, x) != r0 {
                continue 'mask;
            }
        }
        out.push(mask);
    }
    out
}

fn component_structure(t: usize, mask: u32, prefix: &str) -> Structure {
    let mut s = Structure::new(ln_vocabulary());
    let name = |i: usize| ElementId::new(format!("{prefix}{i}"));
    for i in 1..=t {
        s.add_element(name(i)).unwrap();
    }
    for (b, (sym, args)) in lt_tuples(t).iter().enumerate() {
        if mask & (1 << b) != 0 {
            s.add_tuple(sym, args.iter().map(|&i| name(i)).collect())
                .unwrap();
        }
    }
    s
}

fn merge_components(parts: &[(usize, u32)]) -> Structure {
    let mut out = Structure::new(ln_vocabulary());
    for (ci, (t, mask)) in parts.iter().enumerate() {
        let comp = component_structure(*t, *mask, &format!("c{ci}."));
        for e in comp.universe() {
            out.add_element(e.clone()).unwrap();
        }
        for (sym, tuple) in comp.all_tuples() {
            out.add_tuple(sym, tuple.clone()).unwrap();
        }
    }
    out
}

fn each_class_s_member(bound: usize, f: &mut dyn FnMut(&Structure) -> Result<bool>) -> Result<()> {
    each_class_s_member_capped(bound, bound, f)
}

/// Streams the class-S members with at most `bound` elements in total and
/// at most `max_component` elements per connected component, one
/// representative per isomorphism class.
pub fn each_class_s_member_capped(
    bound: usize,
    max_component: usize,
    f: &mut dyn FnMut(&Structure) -> Result<bool>,
) -> Result<()> {
    let max_component = max_component.min(bound);
    if bound == 0 || max_component == 0 {
        return Ok(());
    }
    if bound > 7 {
        return Err(Error::TooLarge(format!(
            "class-S enumeration is exponential; bound {bound} exceeds the cap of 7"
        )));
    }
    let bound_for_masks = max_component;
    let masks: Vec<Vec<u32>> = (0..=bound_for_masks)
        .map(|t| if t == 0 { Vec::new() } else { spanning_connected_masks(t) })
        .collect();
    // Multisets of components, nonincreasing in (size, mask) to get one
    // representative per isomorphism class.
    fn rec(
        masks: &Vec<Vec<u32>>,
        remaining: usize,
        max_t: usize,
        max_mask_at_max_t: Option<u32>,
        parts: &mut Vec<(usize, u32)>,
        f: &mut dyn FnMut(&Structure) -> Result<bool>,
    ) -> Result<bool> {
        if !parts.is_empty() {
            let member = merge_components(parts);
            if !f(&member)? {
                return Ok(false);
            }
        }
        for t in (1..=remaining.min(max_t)).rev() {
            for &mask in &masks[t] {
                if t == max_t {
                    if let Some(limit) = max_mask_at_max_t {
                        if mask > limit {
                            continue;
                        }
                    }
                }
                parts.push((t, mask));
                let cont = rec(masks, remaining - t, t, Some(mask), parts, f)?;
                parts.pop();
                if !cont {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
    let mut parts = Vec::new();
    rec(&masks, bound, max_component, None, &mut parts, f)?;
    Ok(())
}

/// Is `a` (over the L_n vocabulary) isomorphic to a member of class S?
/// Each Gaifman component must embed, order-compactly, into some L_t.
fn class_s_contains(a: &Structure) -> Result<bool> {
    if a.vocabulary() != &ln_vocabulary() {
        return Ok(false);
    }
    let g = a.gaifman_graph();
    for comp in g.connected_components() {
        let sub = a.restrict(&comp);
        if !component_embeds_in_lt(&sub)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn component_embeds_in_lt(sub: &Structure) -> Result<bool> {
    let n = sub.universe().len();
    if n > ISO_CAP {
        return Err(Error::TooLarge(format!(
            "class-S membership test capped at {ISO_CAP} elements per component"
        )));
    }
    let lt = make_ln(n);
    let elems: Vec<ElementId> = sub.universe().to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    Ok(permute(&mut perm, 0, &mut |p: &[usize]| {
        // elems[i] ↦ position p[i]+1 of L_n; all tuples must survive.
        sub.all_tuples().all(|(sym, tuple)| {
            let image: Vec<ElementId> = tuple
                .iter()
                .map(|e| {
                    let i = elems.iter().position(|x| x == e).unwrap();
                    ElementId::new((p[i] + 1).to_string())
                })
                .collect();
            lt.holds(sym, &image)
        })
    }))
}

fn permute(perm: &mut Vec<usize>, at: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if at == perm.len() {
        return f(perm);
    }
    for i in at..perm.len() {
        perm.swap(at, i);
        if permute(perm, at + 1, f) {
            perm.swap(at, i);
            return true;
        }
        perm.swap(at, i);
    }
    false
}

/// Brute-force isomorphism test, capped at `ISO_CAP` elements.
pub fn isomorphic(a: &Structure, b: &Structure) -> Result<bool> {
    if a.vocabulary() != b.vocabulary()
        || a.universe().len() != b.universe().len()
        || a.tuple_count() != b.tuple_count()
    {
        return Ok(false);
    }
    let n = a.universe().len();
    if n > ISO_CAP {
        return Err(Error::TooLarge(format!(
            "isomorphism test capped at {ISO_CAP} elements"
        )));
    }
    let ae: Vec<ElementId> = a.universe().to_vec();
    let be: Vec<ElementId> = b.universe().to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    Ok(permute(&mut perm, 0, &mut |p: &[usize]| {
        a.all_tuples().all(|(sym, tuple)| {
            let image: Vec<ElementId> = tuple
                .iter()
                .map(|e| {
                    let i = ae.iter().position(|x| x == e).unwrap();
                    be[p[i]].clone()
                })
                .collect();
            b.holds(sym, &image)
        }) && b.all_tuples().count() == a.all_tuples().count()
    }))
}

/// One-step class members strictly below `a`: single-tuple deletions (a
/// symmetric pair for graphs) and single-element deletions.
fn immediate_class_children(a: &Structure, cls: &ClassSpec) -> Result<Vec<Structure>> {
    let mut out = Vec::new();
    let graph_family = matches!(cls.family, Family::Graphs);
    let mut seen_pairs: BTreeSet<(ElementId, ElementId)> = BTreeSet::new();
    for (sym, tuple) in a.all_tuples() {
        if graph_family && sym == "E" {
            let key = if tuple[0] <= tuple[1] {
                (tuple[0].clone(), tuple[1].clone())
            } else {
                (tuple[1].clone(), tuple[0].clone())
            };
            if !seen_pairs.insert(key.clone()) {
                continue;
            }
            let child = a
                .without_tuple("E", &[key.0.clone(), key.1.clone()])
                .without_tuple("E", &[key.1.clone(), key.0.clone()]);
            out.push(child);
        } else {
            out.push(a.without_tuple(sym, tuple));
        }
    }
    if a.universe().len() > 1 {
        for e in a.universe() {
            out.push(a.without_element(e));
        }
    }
    let mut kept = Vec::new();
    for c in out {
        if cls.contains(&c)? {
            kept.push(c);
        }
    }
    Ok(kept)
}

/// Is `a` a model of `phi` none of whose proper substructures within the
/// class models `phi`?
///
/// For the substructure-closed families the check walks only one deletion
/// step: when `phi` is preserved under homomorphisms on the class (the
/// setting this module targets), a deep sub-model forces a one-step
/// sub-model via the inclusion homomorphism, so the shortcut is exact.
/// Corpus classes are not substructure-closed and get the full budgeted
/// enumeration instead.
pub fn is_minimal_model(a: &Structure, phi: &Formula, cls: &ClassSpec) -> Result<bool> {
    if !models(a, phi)? {
        return Ok(false);
    }
    if cls.substructure_closed() {
        for child in immediate_class_children(a, cls)? {
            if models(&child, phi)? {
                return Ok(false);
            }
        }
        Ok(true)
    } else {
        for sub in a.proper_substructures(200_000) {
            if cls.contains(&sub)? && models(&sub, phi)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// All minimal models with at most `size_bound` elements, one per
/// isomorphism class, ordered by (size, tuple count).
pub fn enumerate_minimal_models(
    phi: &Formula,
    cls: &ClassSpec,
    size_bound: usize,
) -> Result<Vec<Structure>> {
    let bounded = ClassSpec::new(cls.family.clone(), size_bound.min(cls.size_bound));
    let mut found: Vec<Structure> = Vec::new();
    let mut err: Option<Error> = None;
    bounded.for_each_member(&mut |a| {
        if !models(a, phi)? {
            return Ok(true);
        }
        if !is_minimal_model(a, phi, &bounded)? {
            return Ok(true);
        }
        for seen in &found {
            match isomorphic(a, seen) {
                Ok(true) => return Ok(true),
                Ok(false) => {}
                Err(e) => {
                    err = Some(e);
                    return Ok(false);
                }
            }
        }
        found.push(a.clone());
        Ok(true)
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    found.sort_by_key(|s| (s.universe().len(), s.tuple_count()));
    Ok(found)
}

/// The canonical existential-positive sentence with exactly the given
/// models' homomorphic images: a disjunction of existentially closed
/// positive diagrams. Nested one quantifier at a time so evaluation can
/// fail early, like the homomorphism search it mirrors.
pub fn ep_from_minimal_models(models_list: &[Structure]) -> Formula {
    let mut disjuncts = Vec::new();
    for m in models_list {
        let elems: Vec<ElementId> = m.universe().to_vec();
        let var_of = |e: &ElementId| -> String {
            format!("v{}", elems.iter().position(|x| x == e).unwrap())
        };
        // Atoms are attached to the innermost variable they mention.
        let mut layer_atoms: Vec<Vec<Formula>> = vec![Vec::new(); elems.len() + 1];
        for (sym, tuple) in m.all_tuples() {
            let depth = tuple
                .iter()
                .map(|e| elems.iter().position(|x| x == e).unwrap() + 1)
                .max()
                .unwrap_or(0);
            layer_atoms[depth].push(Formula::atom(
                sym,
                tuple.iter().map(|e| Term::var(var_of(e))).collect(),
            ));
        }
        let mut body = Formula::and_all(layer_atoms[elems.len()].drain(..).collect());
        for i in (0..elems.len()).rev() {
            let mut conj = layer_atoms[i].drain(..).collect::<Vec<_>>();
            conj.push(Formula::exists(format!("v{i}"), body));
            body = Formula::and_all(conj);
        }
        disjuncts.push(body);
    }
    Formula::or_all(disjuncts)
}

// --- the density construction ---------------------------------------------

/// A list of basic local sentences Σ = φ_1..φ_s with the derived
/// parameters used by the construction: t = max radius, n = max width,
/// r = 2t and m = 2^s + 1.
#[derive(Clone, Debug)]
pub struct BasicLocalProfile {
    pub sentences: Vec<BasicLocalSentence>,
}

impl BasicLocalProfile {
    pub fn new(sentences: Vec<BasicLocalSentence>) -> Result<Self> {
        if sentences.is_empty() {
            return Err(Error::Domain("a profile needs at least one sentence".into()));
        }
        Ok(BasicLocalProfile { sentences })
    }

    pub fn s(&self) -> usize {
        self.sentences.len()
    }

    pub fn t(&self) -> usize {
        self.sentences.iter().map(|b| b.radius).max().unwrap_or(0)
    }

    pub fn n(&self) -> usize {
        self.sentences.iter().map(|b| b.width).max().unwrap_or(1)
    }

    pub fn r(&self) -> usize {
        2 * self.t()
    }

    pub fn m(&self) -> usize {
        (1usize << self.s()) + 1
    }

    /// The disjunction of the profile's sentences.
    pub fn disjunction(&self) -> Formula {
        Formula::or_all(self.sentences.iter().map(|b| b.sentence.clone()).collect())
    }
}

/// θ_i(y) = ∃x (δ(x,y) ≤ t_i ∧ ψ_i^{N_{t_i}(x)}(x)): "some point in the
/// t_i-ball of y satisfies the i-th local condition".
pub fn ag_theta(profile: &BasicLocalProfile, i: usize, vocab: &Vocabulary) -> Result<Formula> {
    let bls = profile
        .sentences
        .get(i)
        .ok_or_else(|| Error::Domain(format!("profile has no sentence {i}")))?;
    let psi = &bls.local_condition;
    let free: Vec<String> = psi.free_variables().into_iter().collect();
    if free.len() != 1 {
        return Err(Error::Domain(
            "local conditions must have exactly one free variable".into(),
        ));
    }
    let mut avoid: BTreeSet<String> = ["x".to_string(), "y".to_string()].into();
    avoid.extend(psi.all_variables());
    let psi = psi.well_named(&avoid).substitute(&free[0], &Term::var("x"));
    let near = dist_formula_between(vocab, bls.radius, "x", "y", &psi.all_variables());
    let local = relativize(&psi, "x", bls.radius, vocab)?;
    Ok(Formula::exists("x", Formula::and(near, local)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Branch {
    TupleRemoval { symbol: String, tuple: Vec<ElementId> },
    ElementDeletion(ElementId),
}

/// The full record of one run of the construction.
#[derive(Clone, Debug)]
pub struct ConstructionTrace {
    /// θ-values of every scattered element, in input order.
    pub theta_table: Vec<(ElementId, Vec<bool>)>,
    /// Two scattered elements with identical θ-rows.
    pub pair: (ElementId, ElementId),
    pub branch: Branch,
    /// a minus the chosen tuple (or element) at the first pair member.
    pub b: Structure,
    /// Number of disjoint copies of `b` taken.
    pub copies: usize,
    pub b_n: Structure,
    /// a ⊕ b_n.
    pub a_n: Structure,
    pub phi_on_a: bool,
    pub phi_on_b: bool,
    pub phi_on_b_n: bool,
    pub phi_on_a_n: bool,
    pub hom_a_to_a_n: HomCertificate,
    pub hom_b_n_to_b: HomCertificate,
    /// Whether a_n and b_n agree on φ, the empirically testable half of
    /// the agreement theorem. A false value on a precondition-respecting
    /// instance points at either an implementation bug or a profile that
    /// does not actually axiomatize φ; the trace cannot tell them apart.
    pub agreement: bool,
}

fn n_fold_union(b: &Structure, n: usize, prefix: &str) -> Result<Structure> {
    let mut out = Structure::new(b.vocabulary().clone());
    for i in 0..n {
        let copy = b.rename(|e| ElementId::new(format!("{prefix}{i}.{e}")));
        for e in copy.universe() {
            out.add_element(e.clone())?;
        }
        for (sym, tuple) in copy.all_tuples() {
            out.add_tuple(sym, tuple.clone())?;
        }
    }
    Ok(out)
}

/// Runs the density construction on `a` with the given r-scattered set of
/// size m: tabulate the θ_i over the scattered elements, pick a pigeonhole
/// pair with the same row, delete the lexicographically least tuple
/// through the first member (or the member itself when no tuple touches
/// it), and certify the two canonical homomorphisms a → a_n and b_n → b.
pub fn ag_construct(
    a: &Structure,
    phi: &Formula,
    profile: &BasicLocalProfile,
    scattered: &[ElementId],
) -> Result<ConstructionTrace> {
    let m = profile.m();
    if scattered.len() != m {
        return Err(Error::Domain(format!(
            "need exactly m = 2^s+1 = {m} scattered elements, got {}",
            scattered.len()
        )));
    }
    let g = a.gaifman_graph();
    let set: BTreeSet<ElementId> = scattered.iter().cloned().collect();
    if set.len() != m {
        return Err(Error::Domain("scattered elements must be distinct".into()));
    }
    if !is_r_scattered(&g, &set, profile.r())? {
        return Err(Error::Domain(format!(
            "the given set is not {}-scattered in the Gaifman graph",
            profile.r()
        )));
    }
    let phi_on_a = models(a, phi)?;
    if !phi_on_a {
        return Err(Error::Domain("the input structure must model φ".into()));
    }

    let thetas: Vec<Formula> = (0..profile.s())
        .map(|i| ag_theta(profile, i, a.vocabulary()))
        .collect::<Result<_>>()?;
    let mut theta_table = Vec::new();
    for c in scattered {
        let mut row = Vec::new();
        for th in &thetas {
            let asg: Assignment = [("y".to_string(), c.clone())].into();
            row.push(evaluate(a, th, &asg)?);
        }
        theta_table.push((c.clone(), row));
    }
    // 2^s possible rows over m = 2^s + 1 elements: a repeat must exist.
    let mut pair = None;
    'outer: for i in 0..theta_table.len() {
        for j in i + 1..theta_table.len() {
            if theta_table[i].1 == theta_table[j].1 {
                pair = Some((theta_table[i].0.clone(), theta_table[j].0.clone()));
                break 'outer;
            }
        }
    }
    let pair = pair.expect("pigeonhole: 2^s rows cannot fill 2^s+1 slots distinctly");
    let c = &pair.0;

    let chosen = a
        .all_tuples()
        .filter(|(_, tuple)| tuple.contains(c))
        .map(|(sym, tuple)| (sym.to_string(), tuple.clone()))
        .min();
    let (branch, b) = match chosen {
        Some((sym, tuple)) => {
            let b = a.without_tuple(&sym, &tuple);
            (Branch::TupleRemoval { symbol: sym, tuple }, b)
        }
        None => (Branch::ElementDeletion(c.clone()), a.without_element(c)),
    };

    let copies = profile.n();
    let prefix = "copy";
    if a.universe().iter().any(|e| e.as_str().starts_with(prefix)) {
        return Err(Error::Domain(format!(
            "element names starting with `{prefix}` collide with the construction's copy naming"
        )));
    }
    let b_n = n_fold_union(&b, copies, prefix)?;
    let mut a_n = a.clone();
    for e in b_n.universe() {
        a_n.add_element(e.clone())?;
    }
    for (sym, tuple) in b_n.all_tuples() {
        a_n.add_tuple(sym, tuple.clone())?;
    }

    let hom_a_to_a_n: HomCertificate = a
        .universe()
        .iter()
        .map(|e| (e.clone(), e.clone()))
        .collect();
    if !is_hom(a, &a_n, &hom_a_to_a_n)? {
        return Err(Error::Domain("inclusion a → a_n failed verification".into()));
    }
    let hom_b_n_to_b: HomCertificate = b_n
        .universe()
        .iter()
        .map(|e| {
            let stripped = e
                .as_str()
                .split_once('.')
                .map(|(_, rest)| rest)
                .unwrap_or(e.as_str());
            (e.clone(), ElementId::new(stripped))
        })
        .collect();
    if !is_hom(&b_n, &b, &hom_b_n_to_b)? {
        return Err(Error::Domain("fold b_n → b failed verification".into()));
    }

    let phi_on_b = models(&b, phi)?;
    let phi_on_b_n = models(&b_n, phi)?;
    let phi_on_a_n = models(&a_n, phi)?;
    Ok(ConstructionTrace {
        theta_table,
        pair,
        branch,
        b,
        copies,
        b_n,
        a_n,
        phi_on_a,
        phi_on_b,
        phi_on_b_n,
        phi_on_a_n,
        hom_a_to_a_n,
        hom_b_n_to_b,
        agreement: phi_on_a_n == phi_on_b_n,
    })
}
