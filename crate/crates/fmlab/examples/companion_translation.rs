//! Folding distinguished elements into the vocabulary: the companion
//! structure drops elements but loses no first-order information, at the
//! same quantifier rank.

use fmlab::parser::parse_formula;
use fmlab::plebeian::{companion_structure, translate_formula, verify_companion};
use fmlab::structure::{parse_structure, print_structure, ElementId};

fn main() -> fmlab::Result<()> {
    let s = parse_structure(
        "vocab E/2\n\
         element hub\nelement a\nelement b\nelement c\n\
         rel E hub a\nrel E a hub\nrel E hub b\nrel E b hub\n\
         rel E hub c\nrel E c hub\nrel E a b\nrel E b a\n",
    )?;
    let consts: Vec<ElementId> = vec!["hub".into()];

    let comp = companion_structure(&s, &consts)?;
    println!("companion after deleting `hub`:\n{}", print_structure(&comp));

    // "Every element has a neighbor" survives the translation verbatim in
    // meaning: E(x,hub) tuples become unary E@ atoms.
    let phi = parse_formula("A x E y (E(x,y) | E(y,x))", s.vocabulary())?;
    let hat = translate_formula(&phi, &consts)?;
    println!("translated sentence: {hat}");
    println!(
        "ranks: original {}, translated {}",
        phi.quantifier_rank(),
        hat.quantifier_rank()
    );

    let report = verify_companion(&s, &consts, &phi)?;
    println!(
        "agreement on {} assignment(s), rank preserved: {}, Gaifman graph matches: {}",
        report.agreement_checked, report.rank_preserved, report.gaifman_matches
    );
    Ok(())
}
