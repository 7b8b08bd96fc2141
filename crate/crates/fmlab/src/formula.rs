//! First-order formula ASTs: construction, printing, quantifier rank,
//! fragment recognition and the well-naming normalization pass.
//!
//! Constants never appear in the concrete syntax; they arise internally
//! during the companion translation.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::structure::{ElementId, Vocabulary};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Term {
    Var(String),
    Const(ElementId),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Const(c) => write!(f, "<{c}>"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Formula {
    /// Canonical ⊤ / ⊥, used for empty conjunctions and disjunctions.
    Bool(bool),
    Atom { symbol: String, terms: Vec<Term> },
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
}

impl Formula {
    pub fn atom(symbol: impl Into<String>, terms: Vec<Term>) -> Formula {
        Formula::Atom {
            symbol: symbol.into(),
            terms,
        }
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::or(Formula::not(a), b)
    }

    pub fn exists(v: impl Into<String>, f: Formula) -> Formula {
        Formula::Exists(v.into(), Box::new(f))
    }

    pub fn forall(v: impl Into<String>, f: Formula) -> Formula {
        Formula::Forall(v.into(), Box::new(f))
    }

    /// Right-nested conjunction; ⊤ when empty.
    pub fn and_all(fs: Vec<Formula>) -> Formula {
        fs.into_iter()
            .rev()
            .fold(None, |acc, f| {
                Some(match acc {
                    None => f,
                    Some(rest) => Formula::and(f, rest),
                })
            })
            .unwrap_or(Formula::Bool(true))
    }

    /// Right-nested disjunction; ⊥ when empty.
    pub fn or_all(fs: Vec<Formula>) -> Formula {
        fs.into_iter()
            .rev()
            .fold(None, |acc, f| {
                Some(match acc {
                    None => f,
                    Some(rest) => Formula::or(f, rest),
                })
            })
            .unwrap_or(Formula::Bool(false))
    }

    /// Maximal depth of quantifier nesting.
    pub fn quantifier_rank(&self) -> usize {
        match self {
            Formula::Bool(_) | Formula::Atom { .. } | Formula::Eq(_, _) => 0,
            Formula::Not(f) => f.quantifier_rank(),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.quantifier_rank().max(b.quantifier_rank())
            }
            Formula::Exists(_, f) | Formula::Forall(_, f) => 1 + f.quantifier_rank(),
        }
    }

    /// True iff the formula contains no negation and no universal quantifier.
    pub fn is_existential_positive(&self) -> bool {
        match self {
            Formula::Bool(_) | Formula::Atom { .. } | Formula::Eq(_, _) => true,
            Formula::Not(_) | Formula::Forall(_, _) => false,
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.is_existential_positive() && b.is_existential_positive()
            }
            Formula::Exists(_, f) => f.is_existential_positive(),
        }
    }

    pub fn free_variables(&self) -> BTreeSet<String> {
        fn walk(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
            match f {
                Formula::Bool(_) => {}
                Formula::Atom { terms, .. } => {
                    for t in terms {
                        if let Term::Var(v) = t {
                            if !bound.contains(v) {
                                out.insert(v.clone());
                            }
                        }
                    }
                }
                Formula::Eq(a, b) => {
                    for t in [a, b] {
                        if let Term::Var(v) = t {
                            if !bound.contains(v) {
                                out.insert(v.clone());
                            }
                        }
                    }
                }
                Formula::Not(g) => walk(g, bound, out),
                Formula::And(a, b) | Formula::Or(a, b) => {
                    walk(a, bound, out);
                    walk(b, bound, out);
                }
                Formula::Exists(v, g) | Formula::Forall(v, g) => {
                    bound.push(v.clone());
                    walk(g, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = BTreeSet::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    /// Every variable name occurring anywhere (free or bound).
    pub fn all_variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Atom { terms, .. } => {
                for t in terms {
                    if let Term::Var(v) = t {
                        out.insert(v.clone());
                    }
                }
            }
            Formula::Eq(a, b) => {
                for t in [a, b] {
                    if let Term::Var(v) = t {
                        out.insert(v.clone());
                    }
                }
            }
            Formula::Exists(v, _) | Formula::Forall(v, _) => {
                out.insert(v.clone());
            }
            _ => {}
        });
        out
    }

    fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Not(g) => g.visit(f),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Formula::Exists(_, g) | Formula::Forall(_, g) => g.visit(f),
            _ => {}
        }
    }

    /// Substitutes `term` for every free occurrence of `var`.
    ///
    /// Assumes a well-named formula (no shadowing), so no capture check is
    /// needed when the substituted term is a constant; for variable terms the
    /// caller must guarantee freshness.
    pub fn substitute(&self, var: &str, term: &Term) -> Formula {
        let sub_term = |t: &Term| -> Term {
            match t {
                Term::Var(v) if v == var => term.clone(),
                other => other.clone(),
            }
        };
        match self {
            Formula::Bool(b) => Formula::Bool(*b),
            Formula::Atom { symbol, terms } => Formula::Atom {
                symbol: symbol.clone(),
                terms: terms.iter().map(sub_term).collect(),
            },
            Formula::Eq(a, b) => Formula::Eq(sub_term(a), sub_term(b)),
            Formula::Not(f) => Formula::not(f.substitute(var, term)),
            Formula::And(a, b) => Formula::and(a.substitute(var, term), b.substitute(var, term)),
            Formula::Or(a, b) => Formula::or(a.substitute(var, term), b.substitute(var, term)),
            Formula::Exists(v, f) if v != var => {
                Formula::exists(v.clone(), f.substitute(var, term))
            }
            Formula::Forall(v, f) if v != var => {
                Formula::forall(v.clone(), f.substitute(var, term))
            }
            // Bound occurrence shadows the substitution.
            q @ (Formula::Exists(_, _) | Formula::Forall(_, _)) => q.clone(),
        }
    }

    /// Alpha-renames bound variables so that no variable is both free and
    /// bound, no variable is bound twice, and none collides with `avoid`.
    pub fn well_named(&self, avoid: &BTreeSet<String>) -> Formula {
        let mut used: BTreeSet<String> = self.free_variables();
        used.extend(avoid.iter().cloned());
        fn fresh(base: &str, used: &mut BTreeSet<String>) -> String {
            if used.insert(base.to_string()) {
                return base.to_string();
            }
            for i in 1.. {
                let cand = format!("{base}_{i}");
                if used.insert(cand.clone()) {
                    return cand;
                }
            }
            unreachable!()
        }
        fn walk(
            f: &Formula,
            renames: &Vec<(String, String)>,
            used: &mut BTreeSet<String>,
        ) -> Formula {
            let rn = |t: &Term| -> Term {
                match t {
                    Term::Var(v) => {
                        for (from, to) in renames.iter().rev() {
                            if from == v {
                                return Term::Var(to.clone());
                            }
                        }
                        Term::Var(v.clone())
                    }
                    c => c.clone(),
                }
            };
            match f {
                Formula::Bool(b) => Formula::Bool(*b),
                Formula::Atom { symbol, terms } => Formula::Atom {
                    symbol: symbol.clone(),
                    terms: terms.iter().map(rn).collect(),
                },
                Formula::Eq(a, b) => Formula::Eq(rn(a), rn(b)),
                Formula::Not(g) => Formula::not(walk(g, renames, used)),
                Formula::And(a, b) => {
                    Formula::and(walk(a, renames, used), walk(b, renames, used))
                }
                Formula::Or(a, b) => Formula::or(walk(a, renames, used), walk(b, renames, used)),
                Formula::Exists(v, g) => {
                    let nv = fresh(v, used);
                    let mut r = renames.clone();
                    r.push((v.clone(), nv.clone()));
                    Formula::exists(nv, walk(g, &r, used))
                }
                Formula::Forall(v, g) => {
                    let nv = fresh(v, used);
                    let mut r = renames.clone();
                    r.push((v.clone(), nv.clone()));
                    Formula::forall(nv, walk(g, &r, used))
                }
            }
        }
        walk(self, &Vec::new(), &mut used)
    }

    /// Checks that every atom respects the arity of its symbol.
    pub fn validate_against(&self, vocab: &Vocabulary) -> Result<()> {
        let mut err = None;
        self.visit(&mut |f| {
            if err.is_some() {
                return;
            }
            if let Formula::Atom { symbol, terms } = f {
                match vocab.arity(symbol) {
                    None => err = Some(Error::UnknownSymbol(symbol.clone())),
                    Some(a) if a != terms.len() => {
                        err = Some(Error::ArityMismatch {
                            symbol: symbol.clone(),
                            expected: a,
                            found: terms.len(),
                        })
                    }
                    _ => {}
                }
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Bool(true) => f.write_str("true"),
            Formula::Bool(false) => f.write_str("false"),
            Formula::Atom { symbol, terms } => {
                f.write_str(symbol)?;
                if !terms.is_empty() {
                    write!(
                        f,
                        "({})",
                        terms
                            .iter()
                            .map(|t| t.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    )?;
                }
                Ok(())
            }
            Formula::Eq(a, b) => write!(f, "{a}={b}"),
            Formula::Not(g) => write!(f, "!{g}"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::Exists(v, g) => write!(f, "E {v} {g}"),
            Formula::Forall(v, g) => write!(f, "A {v} {g}"),
        }
    }
}
