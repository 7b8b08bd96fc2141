//! Homomorphism search with certificates: a path maps onto an edge by
//! parity, an odd cycle provably does not, and budgets separate "no"
//! from "gave up".

use fmlab::graph::Graph;
use fmlab::hom::{
    find_homomorphism, find_homomorphism_budgeted, homomorphically_equivalent, is_hom, HomSearch,
};

fn main() -> fmlab::Result<()> {
    let p5 = Graph::path(5).to_structure();
    let c5 = Graph::cycle(5).to_structure();
    let k2 = Graph::complete(2).to_structure();

    match find_homomorphism(&p5, &k2)? {
        Some(h) => {
            assert!(is_hom(&p5, &k2, &h)?);
            println!("P5 -> K2 (2-coloring of a path):");
            for (x, y) in &h {
                println!("  {x} -> {y}");
            }
        }
        None => unreachable!("paths are bipartite"),
    }

    println!(
        "C5 -> K2: {}",
        match find_homomorphism(&c5, &k2)? {
            Some(_) => "found (bug!)",
            None => "NONE — odd cycles need three colors",
        }
    );

    // A tiny budget turns a definite answer into an honest UNKNOWN:
    // K7 -> K6 has no homomorphism, but proving it takes real search.
    let k7 = Graph::complete(7).to_structure();
    let k6 = Graph::complete(6).to_structure();
    match find_homomorphism_budgeted(&k7, &k6, 5)? {
        HomSearch::Unknown => println!("K7 -> K6 with budget 5: UNKNOWN"),
        other => println!("K7 -> K6 with budget 5: {other:?}"),
    }
    match find_homomorphism_budgeted(&k7, &k6, usize::MAX)? {
        HomSearch::None => println!("K7 -> K6 unbudgeted: NONE"),
        other => println!("K7 -> K6 unbudgeted: {other:?}"),
    }

    // A structure is homomorphically equivalent to its disjoint doubles.
    let doubled = p5.disjoint_union(&p5)?;
    println!(
        "P5 ~ P5 ⊕ P5: {}",
        homomorphically_equivalent(&p5, &doubled)?
    );
    Ok(())
}
