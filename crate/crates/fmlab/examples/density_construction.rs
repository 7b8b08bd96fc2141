//! The density construction: given a scattered set larger than the number
//! of distinct local types, two of its points look alike, and deleting a
//! tuple at one of them yields a smaller model — with both directions
//! certified by explicit homomorphisms.

use fmlab::locality::basic_local_sentence;
use fmlab::minimal::{ag_construct, ag_theta, BasicLocalProfile, Branch};
use fmlab::parser::parse_formula;
use fmlab::structure::{ElementId, Structure, Vocabulary};

fn main() -> fmlab::Result<()> {
    // Three isolated marked points; the profile has one basic local
    // sentence (s = 1), so m = 2^1 + 1 = 3 scattered points force a
    // pigeonhole pair.
    let vocab = Vocabulary::of(&[("E", 2), ("P", 1)]);
    let mut a = Structure::new(vocab.clone());
    for i in 0..3 {
        let e = ElementId::new(format!("p{i}"));
        a.add_element(e.clone())?;
        a.add_tuple("P", vec![e])?;
    }

    let psi = parse_formula("P(x)", &vocab)?;
    let profile = BasicLocalProfile::new(vec![basic_local_sentence(1, 1, &psi, &vocab)?])?;
    println!(
        "profile: s={} t={} r={} m={}",
        profile.s(),
        profile.t(),
        profile.r(),
        profile.m()
    );
    println!("theta_0(y) = {}", ag_theta(&profile, 0, &vocab)?);

    let phi = profile.disjunction();
    let scattered: Vec<ElementId> = vec!["p0".into(), "p1".into(), "p2".into()];
    let trace = ag_construct(&a, &phi, &profile, &scattered)?;

    println!("pigeonhole pair: ({}, {})", trace.pair.0, trace.pair.1);
    match &trace.branch {
        Branch::TupleRemoval { symbol, tuple } => {
            println!("removed tuple: {symbol}{tuple:?}");
        }
        Branch::ElementDeletion(e) => println!("deleted element: {e}"),
    }
    println!(
        "phi on a={} b={} b_n={} a_n={}",
        trace.phi_on_a, trace.phi_on_b, trace.phi_on_b_n, trace.phi_on_a_n
    );
    println!(
        "certified homs: a → a_n ({} entries), b_n → b ({} entries)",
        trace.hom_a_to_a_n.len(),
        trace.hom_b_n_to_b.len()
    );
    println!("agreement a_n ⊨ φ ⇔ b_n ⊨ φ: {}", trace.agreement);
    // b models φ while being a proper substructure of a: a is not minimal.
    assert!(trace.phi_on_b);
    Ok(())
}
