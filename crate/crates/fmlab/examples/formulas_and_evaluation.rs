//! The formula pipeline: parsing, printing, quantifier rank, fragment
//! checks, well-naming and evaluation over finite structures.

use fmlab::eval::{evaluate, models, Assignment};
use fmlab::parser::parse_formula;
use fmlab::structure::{parse_structure, ElementId};

fn main() -> fmlab::Result<()> {
    let s = parse_structure(
        "vocab E/2\nvocab P/1\n\
         element a\nelement b\nelement c\n\
         rel E a b\nrel E b c\nrel P a\n",
    )?;

    // Mandatory parentheses on binary connectives keep printing exact:
    // parse → print → parse is the identity.
    let phi = parse_formula("A x (P(x) -> E y E(x,y))", s.vocabulary())?;
    println!("parsed:   {phi}");
    let reparsed = parse_formula(&phi.to_string(), s.vocabulary())?;
    assert_eq!(phi, reparsed);

    println!("rank:     {}", phi.quantifier_rank());
    println!("ep:       {}", phi.is_existential_positive());
    println!("models:   {}", models(&s, &phi)?);

    // Free variables are supplied by an assignment.
    let open = parse_formula("E y (E(x,y) & P(x))", s.vocabulary())?;
    for e in ["a", "b", "c"] {
        let asg: Assignment = [("x".to_string(), ElementId::new(e))].into();
        println!("{open} at x={e}: {}", evaluate(&s, &open, &asg)?);
    }

    // Shadowed binders are renamed apart before substitution-heavy passes.
    let shadowed = parse_formula("E x (P(x) & E x E(x,x))", s.vocabulary())?;
    println!("well-named: {}", shadowed.well_named(&Default::default()));

    // Arity errors are caught at parse time, with positions.
    match parse_formula("E x P(x,x)", s.vocabulary()) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
