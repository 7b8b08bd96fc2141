//! Companion structures: eliminating a tuple of distinguished elements by
//! folding them into the vocabulary.
//!
//! Given a structure 𝔄 and distinguished elements ā = a_1,…,a_k, the
//! companion lives on the universe A ∖ {ā} and records, for every relation
//! R and every way μ of pinning some argument positions of R to entries of
//! ā, a derived relation R_μ holding on the remaining arguments. A formula
//! φ(x̄) mentioning the a_i as constants translates to a constant-free
//! formula φ̂ of the same quantifier rank with 𝔄 ⊨ φ iff companion ⊨ φ̂.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::eval::{evaluate, Assignment};
use crate::formula::{Formula, Term};
use crate::structure::{ElementId, Structure, Vocabulary};

/// A partial map from argument positions (1-based) to constant indices
/// (1-based into ā), kept sorted by position.
type PartialMap = Vec<(usize, usize)>;

/// Canonical name of the derived symbol: `R@p1:i1,p2:i2,…`.
fn derived_name(base: &str, mu: &PartialMap) -> String {
    let parts: Vec<String> = mu.iter().map(|(p, i)| format!("{p}:{i}")).collect();
    format!("{base}@{}", parts.join(","))
}

/// All non-empty partial maps from {1..arity} into {1..k}, positions
/// ascending.
fn partial_maps(arity: usize, k: usize) -> Vec<PartialMap> {
    let mut out = Vec::new();
    // Each position independently: unmapped (0) or mapped to 1..=k.
    let mut choice = vec![0usize; arity];
    loop {
        let mu: PartialMap = choice
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(p, &c)| (p + 1, c))
            .collect();
        if !mu.is_empty() {
            out.push(mu);
        }
        let mut c = 0;
        loop {
            if c == arity {
                return out;
            }
            choice[c] += 1;
            if choice[c] <= k {
                break;
            }
            choice[c] = 0;
            c += 1;
        }
    }
}

/// The companion vocabulary: every original symbol, plus one derived
/// symbol per relation and non-empty partial pinning of its positions.
pub fn companion_vocabulary(vocab: &Vocabulary, k: usize) -> Result<Vocabulary> {
    let mut symbols: Vec<(String, usize)> = vocab
        .symbols()
        .map(|(s, a)| (s.to_string(), a))
        .collect();
    for (sym, arity) in vocab.symbols() {
        for mu in partial_maps(arity, k) {
            symbols.push((derived_name(sym, &mu), arity - mu.len()));
        }
    }
    Vocabulary::new(symbols)
}

fn constant_index(constants: &[ElementId], e: &ElementId) -> Option<usize> {
    constants.iter().position(|c| c == e).map(|i| i + 1)
}

/// The companion of `a` with respect to the distinguished tuple
/// `constants` (which must be distinct elements of `a`). Original symbols
/// keep their tuples over the shrunken universe; each derived symbol R_μ
/// records the R-tuples that hit exactly the pinned constants at the
/// pinned positions and no constant anywhere else.
pub fn companion_structure(a: &Structure, constants: &[ElementId]) -> Result<Structure> {
    for c in constants {
        if !a.universe().contains(c) {
            return Err(Error::UnknownElement(c.to_string()));
        }
    }
    for i in 0..constants.len() {
        for j in i + 1..constants.len() {
            if constants[i] == constants[j] {
                return Err(Error::Domain(format!(
                    "distinguished elements must be distinct, `{}` repeats",
                    constants[i]
                )));
            }
        }
    }
    if a.universe().len() == constants.len() {
        return Err(Error::Domain(
            "companion universe would be empty; leave at least one element".into(),
        ));
    }
    let vocab = companion_vocabulary(a.vocabulary(), constants.len())?;
    let mut out = Structure::new(vocab);
    for e in a.universe() {
        if constant_index(constants, e).is_none() {
            out.add_element(e.clone())?;
        }
    }
    for (sym, tuple) in a.all_tuples() {
        let pins: PartialMap = tuple
            .iter()
            .enumerate()
            .filter_map(|(p, e)| constant_index(constants, e).map(|i| (p + 1, i)))
            .collect();
        let rest: Vec<ElementId> = tuple
            .iter()
            .filter(|e| constant_index(constants, e).is_none())
            .cloned()
            .collect();
        if pins.is_empty() {
            out.add_tuple(sym, rest)?;
        } else if rest.is_empty() {
            out.set_boolean(&derived_name(sym, &pins))?;
        } else {
            out.add_tuple(&derived_name(sym, &pins), rest)?;
        }
    }
    Ok(out)
}

/// Translates `phi`, which may mention the distinguished elements as
/// constants, into a constant-free formula over the companion vocabulary.
/// Quantifier rank is preserved; quantifiers split into the companion
/// branch plus one substitution branch per constant.
pub fn translate_formula(phi: &Formula, constants: &[ElementId]) -> Result<Formula> {
    let out = match phi {
        Formula::Bool(b) => Formula::Bool(*b),
        Formula::Atom { symbol, terms } => {
            let mut pins: PartialMap = Vec::new();
            let mut rest = Vec::new();
            for (p, t) in terms.iter().enumerate() {
                match t {
                    Term::Const(c) => match constant_index(constants, c) {
                        Some(i) => pins.push((p + 1, i)),
                        None => {
                            return Err(Error::UnknownElement(format!(
                                "constant `{c}` is not among the distinguished elements"
                            )))
                        }
                    },
                    Term::Var(_) => rest.push(t.clone()),
                }
            }
            if pins.is_empty() {
                phi.clone()
            } else {
                Formula::atom(derived_name(symbol, &pins), rest)
            }
        }
        Formula::Eq(s, t) => match (s, t) {
            (Term::Var(_), Term::Var(_)) => phi.clone(),
            (Term::Const(c), Term::Const(d)) => Formula::Bool(c == d),
            // Companion variables never range over the removed elements.
            _ => Formula::Bool(false),
        },
        Formula::Not(f) => Formula::not(translate_formula(f, constants)?),
        Formula::And(a, b) => Formula::and(
            translate_formula(a, constants)?,
            translate_formula(b, constants)?,
        ),
        Formula::Or(a, b) => Formula::or(
            translate_formula(a, constants)?,
            translate_formula(b, constants)?,
        ),
        Formula::Exists(v, f) => {
            let mut branches = vec![Formula::exists(v.clone(), translate_formula(f, constants)?)];
            for c in constants {
                let sub = f.substitute(v, &Term::Const(c.clone()));
                branches.push(translate_formula(&sub, constants)?);
            }
            Formula::or_all(branches)
        }
        Formula::Forall(v, f) => {
            let mut branches = vec![Formula::forall(v.clone(), translate_formula(f, constants)?)];
            for c in constants {
                let sub = f.substitute(v, &Term::Const(c.clone()));
                branches.push(translate_formula(&sub, constants)?);
            }
            Formula::and_all(branches)
        }
    };
    Ok(out)
}

/// Everything `verify_companion` certifies about a companion pair.
#[derive(Clone, Debug)]
pub struct CompanionReport {
    pub agreement_checked: usize,
    pub rank_preserved: bool,
    pub gaifman_matches: bool,
}

/// Re-derives the companion's guarantees for a concrete structure and
/// formula: semantic agreement of `phi` and its translation under every
/// assignment into the shrunken universe, quantifier-rank preservation,
/// and that the companion's Gaifman graph is the induced subgraph of the
/// original's on the surviving elements.
pub fn verify_companion(
    a: &Structure,
    constants: &[ElementId],
    phi: &Formula,
) -> Result<CompanionReport> {
    let comp = companion_structure(a, constants)?;
    let hat = translate_formula(phi, constants)?;
    let rank_preserved = hat.quantifier_rank() == phi.quantifier_rank();

    let survivors: Vec<ElementId> = comp.universe().to_vec();
    let free: Vec<String> = phi.free_variables().into_iter().collect();
    let mut agreement_checked = 0usize;
    let mut idx = vec![0usize; free.len()];
    loop {
        let asg: Assignment = free
            .iter()
            .zip(&idx)
            .map(|(v, &i)| (v.clone(), survivors[i].clone()))
            .collect();
        let lhs = evaluate(a, phi, &asg)?;
        let rhs = evaluate(&comp, &hat, &asg)?;
        if lhs != rhs {
            return Err(Error::Domain(format!(
                "translation disagrees with the original under {asg:?}"
            )));
        }
        agreement_checked += 1;
        let mut c = 0;
        loop {
            if c == free.len() {
                break;
            }
            idx[c] += 1;
            if idx[c] < survivors.len() {
                break;
            }
            idx[c] = 0;
            c += 1;
        }
        if c == free.len() {
            break;
        }
    }

    let mut keep = std::collections::BTreeSet::new();
    keep.extend(survivors.iter().cloned());
    let gaifman_matches = comp.gaifman_graph() == a.gaifman_graph().induced(&keep);

    Ok(CompanionReport {
        agreement_checked,
        rank_preserved,
        gaifman_matches,
    })
}

/// The (possibly renamed) derived symbols of a companion vocabulary,
/// grouped for display: `(derived, base, pinned positions)`.
pub fn derived_symbols(vocab: &Vocabulary) -> Vec<(String, String, BTreeMap<usize, usize>)> {
    let mut out = Vec::new();
    for (sym, _) in vocab.symbols() {
        if let Some(at) = sym.find('@') {
            let base = sym[..at].to_string();
            let mut pins = BTreeMap::new();
            for part in sym[at + 1..].split(',') {
                if let Some((p, i)) = part.split_once(':') {
                    if let (Ok(p), Ok(i)) = (p.parse(), i.parse()) {
                        pins.insert(p, i);
                    }
                }
            }
            out.push((sym.to_string(), base, pins));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::models;
    use crate::parser::parse_formula;
    use crate::structure::parse_structure;

    fn edge_vocab() -> Vocabulary {
        Vocabulary::of(&[("E", 2)])
    }

    fn path3() -> Structure {
        parse_structure(
            "vocab E/2\nelement a\nelement b\nelement c\n\
             rel E a b\nrel E b a\nrel E b c\nrel E c b\n",
        )
        .unwrap()
    }

    #[test]
    fn vocabulary_for_one_constant_over_edges() {
        let v = companion_vocabulary(&edge_vocab(), 1).unwrap();
        let syms: Vec<(String, usize)> =
            v.symbols().map(|(s, a)| (s.to_string(), a)).collect();
        assert!(syms.contains(&("E".into(), 2)));
        assert!(syms.contains(&("E@1:1".into(), 1)));
        assert!(syms.contains(&("E@2:1".into(), 1)));
        assert!(syms.contains(&("E@1:1,2:1".into(), 0)));
        assert_eq!(syms.len(), 4);
    }

    #[test]
    fn partial_map_counts() {
        // arity 2, k = 2: 3^2 - 1 = 8 non-empty pinnings.
        assert_eq!(partial_maps(2, 2).len(), 8);
        assert_eq!(partial_maps(0, 3).len(), 0);
    }

    #[test]
    fn companion_of_path_center() {
        let comp = companion_structure(&path3(), &["b".into()]).unwrap();
        assert_eq!(comp.universe().len(), 2);
        assert_eq!(comp.tuples("E").count(), 0);
        // a and c each see b on both sides.
        assert!(comp.holds("E@1:1", &["a".into()]));
        assert!(comp.holds("E@2:1", &["a".into()]));
        assert!(comp.holds("E@1:1", &["c".into()]));
        assert!(comp.holds("E@2:1", &["c".into()]));
        assert!(!comp.holds("E@1:1,2:1", &[]));
    }

    #[test]
    fn loop_at_constant_becomes_boolean() {
        let mut s = Structure::new(edge_vocab());
        s.add_element("a").unwrap();
        s.add_element("b").unwrap();
        s.add_tuple("E", vec!["a".into(), "a".into()]).unwrap();
        let comp = companion_structure(&s, &["a".into()]).unwrap();
        assert!(comp.holds("E@1:1,2:1", &[]));
    }

    #[test]
    fn translation_agrees_on_sentences() {
        let s = path3();
        let consts: Vec<ElementId> = vec!["b".into()];
        for text in [
            "E x E y E(x,y)",
            "A x E y (E(x,y) | E(y,x))",
            "E x A y (E(x,y) -> E(y,x))",
            "A x A y ((E(x,y) & E(y,x)) -> x=y)",
        ] {
            let phi = parse_formula(text, &edge_vocab()).unwrap();
            let report = verify_companion(&s, &consts, &phi).unwrap();
            assert!(report.rank_preserved, "{text}");
            assert!(report.gaifman_matches, "{text}");
        }
    }

    #[test]
    fn translation_agrees_with_free_variables() {
        let s = path3();
        let consts: Vec<ElementId> = vec!["b".into()];
        let phi = parse_formula("E y (E(x,y) & !x=y)", &edge_vocab()).unwrap();
        let report = verify_companion(&s, &consts, &phi).unwrap();
        assert_eq!(report.agreement_checked, 2);
    }

    #[test]
    fn constant_equalities_collapse() {
        let a: ElementId = "a".into();
        let phi = Formula::Eq(Term::Const(a.clone()), Term::Const(a.clone()));
        assert_eq!(translate_formula(&phi, &[a.clone()]).unwrap(), Formula::Bool(true));
        let phi = Formula::Eq(Term::var("x"), Term::Const(a.clone()));
        assert_eq!(translate_formula(&phi, &[a]).unwrap(), Formula::Bool(false));
    }

    #[test]
    fn quantifiers_split_over_constants() {
        // On path3 with b removed, "some element touches b" is only
        // expressible through the derived symbols; the translated sentence
        // must still see it.
        let s = path3();
        let consts: Vec<ElementId> = vec!["b".into()];
        let phi = parse_formula("E x E y E(x,y)", &edge_vocab()).unwrap();
        let comp = companion_structure(&s, &consts).unwrap();
        let hat = translate_formula(&phi, &consts).unwrap();
        assert!(models(&comp, &hat).unwrap());
        // The plain part alone is false: no surviving edge.
        let plain = parse_formula("E x E y E(x,y)", comp.vocabulary()).unwrap();
        assert!(!models(&comp, &plain).unwrap());
    }

    #[test]
    fn rejects_bad_constant_tuples() {
        let s = path3();
        assert!(companion_structure(&s, &["z".into()]).is_err());
        assert!(companion_structure(&s, &["a".into(), "a".into()]).is_err());
        assert!(companion_structure(&s, &["a".into(), "b".into(), "c".into()]).is_err());
    }

    #[test]
    fn derived_symbol_parsing_round_trip() {
        let v = companion_vocabulary(&edge_vocab(), 2).unwrap();
        let listed = derived_symbols(&v);
        assert_eq!(listed.len(), 8);
        assert!(listed
            .iter()
            .any(|(name, base, pins)| name == "E@1:2" && base == "E" && pins[&1] == 2));
    }
}
