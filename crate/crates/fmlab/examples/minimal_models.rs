//! Minimal models and the existential-positive reconstruction: a sentence
//! preserved under homomorphisms is pinned down by its minimal models,
//! whose positive diagrams rebuild an equivalent ep sentence.

use fmlab::eval::models;
use fmlab::minimal::{
    enumerate_minimal_models, ep_from_minimal_models, is_minimal_model, ClassSpec, Family,
};
use fmlab::parser::parse_formula_untyped;
use fmlab::structure::print_structure;

fn main() -> fmlab::Result<()> {
    let phi = parse_formula_untyped("E x E y E(x,y)")?;
    let cls = ClassSpec::new(Family::Graphs, 4);

    let minimal = enumerate_minimal_models(&phi, &cls, 4)?;
    println!("minimal models of ∃x∃y E(x,y) among graphs (≤ 4 vertices):");
    for m in &minimal {
        println!("{}", print_structure(m));
        assert!(is_minimal_model(m, &phi, &cls)?);
    }

    let ep = ep_from_minimal_models(&minimal);
    println!("reconstructed ep sentence: {ep}");
    assert!(ep.is_existential_positive());

    // The reconstruction agrees with the original on every class member.
    let mut agree = 0usize;
    cls.for_each_member(&mut |g| {
        assert_eq!(models(g, &phi)?, models(g, &ep)?);
        agree += 1;
        Ok(true)
    })?;
    println!("agreement verified on {agree} graphs");
    Ok(())
}
