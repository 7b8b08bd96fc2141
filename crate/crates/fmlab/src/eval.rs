//! Model checking by direct recursion on the formula.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::formula::{Formula, Term};
use crate::structure::{ElementId, Structure};

pub type Assignment = BTreeMap<String, ElementId>;

/// Decides `a ⊨ phi[asg]`.
///
/// `asg` must cover the free variables of `phi`; quantifiers range over the
/// whole universe. Exponential in quantifier rank, as expected.
pub fn evaluate(a: &Structure, phi: &Formula, asg: &Assignment) -> Result<bool> {
    for v in phi.free_variables() {
        match asg.get(&v) {
            None => return Err(Error::UncoveredVariable(v)),
            Some(e) if !a.universe().contains(e) => {
                return Err(Error::UnknownElement(e.to_string()))
            }
            _ => {}
        }
    }
    phi.validate_against(a.vocabulary())?;
    let mut asg = asg.clone();
    Ok(eval_rec(a, phi, &mut asg))
}

/// Closed-formula convenience wrapper.
pub fn models(a: &Structure, phi: &Formula) -> Result<bool> {
    evaluate(a, phi, &Assignment::new())
}

fn resolve(t: &Term, asg: &Assignment) -> ElementId {
    match t {
        Term::Var(v) => asg
            .get(v)
            .expect("free variables checked before recursion")
            .clone(),
        Term::Const(c) => c.clone(),
    }
}

fn eval_rec(a: &Structure, phi: &Formula, asg: &mut Assignment) -> bool {
    match phi {
        Formula::Bool(b) => *b,
        Formula::Atom { symbol, terms } => {
            let tuple: Vec<ElementId> = terms.iter().map(|t| resolve(t, asg)).collect();
            a.holds(symbol, &tuple)
        }
        Formula::Eq(s, t) => resolve(s, asg) == resolve(t, asg),
        Formula::Not(f) => !eval_rec(a, f, asg),
        Formula::And(f, g) => eval_rec(a, f, asg) && eval_rec(a, g, asg),
        Formula::Or(f, g) => eval_rec(a, f, asg) || eval_rec(a, g, asg),
        Formula::Exists(v, f) => {
            let saved = asg.get(v).cloned();
            let mut found = false;
            for e in a.universe() {
                asg.insert(v.clone(), e.clone());
                if eval_rec(a, f, asg) {
                    found = true;
                    break;
                }
            }
            restore(asg, v, saved);
            found
        }
        Formula::Forall(v, f) => {
            let saved = asg.get(v).cloned();
            let mut all = true;
            for e in a.universe() {
                asg.insert(v.clone(), e.clone());
                if !eval_rec(a, f, asg) {
                    all = false;
                    break;
                }
            }
            restore(asg, v, saved);
            all
        }
    }
}

fn restore(asg: &mut Assignment, v: &str, saved: Option<ElementId>) {
    match saved {
        Some(e) => {
            asg.insert(v.to_string(), e);
        }
        None => {
            asg.remove(v);
        }
    }
}
