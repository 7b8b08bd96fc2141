//! Locality toolkit: definable adjacency and distance in the Gaifman graph,
//! relativization of a formula to an r-neighborhood, and basic local
//! sentences.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::formula::{Formula, Term};
use crate::structure::Vocabulary;

/// Hands out variable names not yet in `used`.
struct FreshVars {
    used: BTreeSet<String>,
}

impl FreshVars {
    fn avoiding(used: BTreeSet<String>) -> Self {
        FreshVars { used }
    }

    fn fresh(&mut self, base: &str) -> String {
        if self.used.insert(base.to_string()) {
            return base.to_string();
        }
        for i in 1.. {
            let cand = format!("{base}{i}");
            if self.used.insert(cand.clone()) {
                return cand;
            }
        }
        unreachable!()
    }
}

/// Gaifman adjacency between `x` and `y`: a disjunction over every symbol of
/// arity ≥ 2 and every ordered pair of distinct positions, with the leftover
/// positions existentially closed. ⊥ when nothing can create an edge.
fn adjacency_between(vocab: &Vocabulary, x: &str, y: &str, names: &mut FreshVars) -> Formula {
    let mut disjuncts = Vec::new();
    for (symbol, arity) in vocab.symbols() {
        if arity < 2 {
            continue;
        }
        for i in 0..arity {
            for j in 0..arity {
                if i == j {
                    continue;
                }
                let mut terms: Vec<Option<Term>> = vec![None; arity];
                terms[i] = Some(Term::var(x));
                terms[j] = Some(Term::var(y));
                let mut quantified = Vec::new();
                for slot in terms.iter_mut() {
                    if slot.is_none() {
                        let v = names.fresh("w");
                        *slot = Some(Term::var(&v));
                        quantified.push(v);
                    }
                }
                let atom = Formula::atom(symbol, terms.into_iter().map(Option::unwrap).collect());
                let body = quantified
                    .into_iter()
                    .rev()
                    .fold(atom, |f, v| Formula::exists(v, f));
                disjuncts.push(body);
            }
        }
    }
    Formula::or_all(disjuncts)
}

/// Adjacency with free variables `x`, `y`.
pub fn adjacency_formula(vocab: &Vocabulary) -> Formula {
    let mut names = FreshVars::avoiding(["x".to_string(), "y".to_string()].into());
    adjacency_between(vocab, "x", "y", &mut names)
}

fn dist_between(
    vocab: &Vocabulary,
    r: usize,
    x: &str,
    y: &str,
    names: &mut FreshVars,
) -> Formula {
    if r == 0 {
        return Formula::Eq(Term::var(x), Term::var(y));
    }
    // δ≤r(x,y) := δ≤(r−1)(x,y) ∨ ∃z (adj(x,z) ∧ δ≤(r−1)(z,y))
    let shortcut = dist_between(vocab, r - 1, x, y, names);
    let z = names.fresh("z");
    let step = Formula::exists(
        z.clone(),
        Formula::and(
            adjacency_between(vocab, x, &z, names),
            dist_between(vocab, r - 1, &z, y, names),
        ),
    );
    Formula::or(shortcut, step)
}

/// δ(x,y) ≤ r with free variables `x`, `y`. For max arity ≤ 2 the quantifier
/// rank is r; an extra maxarity − 2 shows up past binary vocabularies from
/// closing leftover tuple positions.
pub fn dist_formula(vocab: &Vocabulary, r: usize) -> Formula {
    dist_formula_between(vocab, r, "x", "y", &BTreeSet::new())
}

/// Same, with chosen endpoint names and names to avoid for bound variables.
pub fn dist_formula_between(
    vocab: &Vocabulary,
    r: usize,
    x: &str,
    y: &str,
    avoid: &BTreeSet<String>,
) -> Formula {
    let mut used = avoid.clone();
    used.insert(x.to_string());
    used.insert(y.to_string());
    let mut names = FreshVars::avoiding(used);
    dist_between(vocab, r, x, y, &mut names)
}

/// ψ^{N_r(center)}: bounds every quantifier of `psi` to the r-ball around
/// `center` in the Gaifman graph. Renames bound variables of `psi` first so
/// no inserted distance formula is captured.
/// `center` may coincide with the free variable of `psi`; that is how the
/// conjuncts of a basic local sentence are built.
pub fn relativize(psi: &Formula, center: &str, r: usize, vocab: &Vocabulary) -> Result<Formula> {
    let mut avoid: BTreeSet<String> = psi.free_variables();
    avoid.insert(center.to_string());
    let psi = psi.well_named(&avoid);
    let mut used = psi.all_variables();
    used.insert(center.to_string());
    let mut names = FreshVars::avoiding(used);
    Ok(relativize_rec(&psi, center, r, vocab, &mut names))
}

fn relativize_rec(
    f: &Formula,
    center: &str,
    r: usize,
    vocab: &Vocabulary,
    names: &mut FreshVars,
) -> Formula {
    match f {
        Formula::Bool(_) | Formula::Atom { .. } | Formula::Eq(_, _) => f.clone(),
        Formula::Not(g) => Formula::not(relativize_rec(g, center, r, vocab, names)),
        Formula::And(a, b) => Formula::and(
            relativize_rec(a, center, r, vocab, names),
            relativize_rec(b, center, r, vocab, names),
        ),
        Formula::Or(a, b) => Formula::or(
            relativize_rec(a, center, r, vocab, names),
            relativize_rec(b, center, r, vocab, names),
        ),
        Formula::Exists(v, g) => {
            let guard = dist_between(vocab, r, v, center, names);
            Formula::exists(
                v.clone(),
                Formula::and(guard, relativize_rec(g, center, r, vocab, names)),
            )
        }
        Formula::Forall(v, g) => {
            let guard = dist_between(vocab, r, v, center, names);
            Formula::forall(
                v.clone(),
                Formula::implies(guard, relativize_rec(g, center, r, vocab, names)),
            )
        }
    }
}

/// A basic local sentence together with its parameters.
#[derive(Clone, Debug)]
pub struct BasicLocalSentence {
    pub sentence: Formula,
    /// Scatter width: the number of centers.
    pub width: usize,
    /// Locality radius of the local condition.
    pub radius: usize,
    pub local_condition: Formula,
}

/// ∃x_1…x_n ( ⋀_{i<j} ¬ δ(x_i,x_j) ≤ 2r  ∧  ⋀_i ψ^{N_r(x_i)}(x_i) ).
///
/// `psi` must have exactly one free variable, which plays the role of the
/// center in each conjunct.
pub fn basic_local_sentence(
    n: usize,
    r: usize,
    psi: &Formula,
    vocab: &Vocabulary,
) -> Result<BasicLocalSentence> {
    let free = psi.free_variables();
    if free.len() != 1 {
        return Err(Error::Domain(format!(
            "local condition must have exactly one free variable, found {}",
            free.len()
        )));
    }
    if n == 0 {
        return Err(Error::Domain("width must be at least 1".into()));
    }
    let hole = free.into_iter().next().unwrap();
    let centers: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let avoid: BTreeSet<String> = centers.iter().cloned().collect();

    let mut conjuncts = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            conjuncts.push(Formula::not(dist_formula_between(
                vocab,
                2 * r,
                &centers[i],
                &centers[j],
                &avoid,
            )));
        }
    }
    for c in &centers {
        let psi_c = psi.well_named(&avoid).substitute(&hole, &Term::var(c));
        conjuncts.push(relativize(&psi_c, c, r, vocab)?);
    }
    let body = Formula::and_all(conjuncts);
    let sentence = centers
        .into_iter()
        .rev()
        .fold(body, |f, c| Formula::exists(c, f));
    Ok(BasicLocalSentence {
        sentence,
        width: n,
        radius: r,
        local_condition: psi.clone(),
    })
}
