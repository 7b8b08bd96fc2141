//! The ordered-path counterexample: a hom-preserved sentence on the class
//! of path substructures with infinitely many minimal models, so no single
//! existential-positive sentence can replace it.

use fmlab::counterexample::{
    check_lemmas, contains_complete_order, make_ln, phi_order, sample_s,
};
use fmlab::eval::models;
use fmlab::minimal::{enumerate_minimal_models, ClassSpec, Family};
use fmlab::scattered::classify_corpus;
use fmlab::structure::print_structure;

fn main() -> fmlab::Result<()> {
    let phi = phi_order();
    println!("L_3:\n{}", print_structure(&make_ln(3)));

    // The sentence detects exactly the members containing a complete order.
    for n in 1..=6 {
        let ln = make_ln(n);
        println!(
            "L_{n}: phi={} order-search={}",
            models(&ln, &phi)?,
            contains_complete_order(&ln)
        );
    }
    let gapped = make_ln(4).without_tuple("O", &["1".into(), "3".into()]);
    println!("L_4 minus O(1,3): phi={}", models(&gapped, &phi)?);

    // Seeded sampling of class members, stable across runs.
    let member = sample_s(42, 5, 2).structure();
    println!("sampled member (seed 42):\n{}", print_structure(&member));

    // Every L_n from 2 up is a minimal model: infinitely many in the limit.
    let cls = ClassSpec::new(Family::ClassS, 5);
    let minimal = enumerate_minimal_models(&phi, &cls, 5)?;
    println!("minimal models up to size 5: {}", minimal.len());

    // The Gaifman graphs of the L_n are cliques, so the class is as far
    // from quasi-wide as a class can be.
    let cliques: Vec<_> = (4..=8).map(|n| make_ln(n).gaifman_graph()).collect();
    for (i, c) in classify_corpus(&cliques, 1, 2, 2)?.iter().enumerate() {
        println!("Gaifman(L_{}): {c:?}", i + 4);
    }

    // The five-fact sweep in one call.
    let report = check_lemmas(50, 7, 4)?;
    println!("five-fact sweep clean: {}", report.all_ok());
    Ok(())
}
