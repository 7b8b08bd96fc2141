//! Minor containment and greatest reduced average density: exact branch-set
//! certificates, depth bounds, and the ∇_r density hierarchy.

use fmlab::graph::Graph;
use fmlab::minor::{grad, is_minor, local_clique_scan, verify_minor};

fn main() -> fmlab::Result<()> {
    let k3 = Graph::complete(3);
    let c5 = Graph::cycle(5);

    // K3 is a minor of C5 (contract two edges) but not a subgraph (= depth 0).
    let emb = is_minor(&k3, &c5, None)?.expect("C5 contracts to a triangle");
    assert!(verify_minor(&c5, &emb)?);
    println!("K3 ⪯ C5 via branch sets:");
    for (v, set) in &emb.branch_sets {
        println!("  {v}: {set:?}");
    }
    println!("K3 ⪯_0 C5 (subgraph): {}", is_minor(&k3, &c5, Some(0))?.is_some());

    // Density: ∇_0 of a clique is (k−1)/2; contracting C4 raises it.
    for k in 2..=6 {
        let g = grad(&Graph::complete(k), 0)?;
        println!("∇_0(K{k}) = {}/{}", g.value.numer(), g.value.denom());
    }
    let c4 = Graph::cycle(4);
    let g0 = grad(&c4, 0)?;
    let g1 = grad(&c4, 1)?;
    println!(
        "C4: ∇_0 = {}/{}, ∇_1 = {}/{} (a depth-1 contraction makes a triangle)",
        g0.value.numer(),
        g0.value.denom(),
        g1.value.numer(),
        g1.value.denom()
    );

    // Local clique scan: cliques found inside balls of bounded radius.
    let found = local_clique_scan(&Graph::complete(5), 4, 0)?;
    println!("K4 inside some small ball of K5: {}", found.is_some());
    let none = local_clique_scan(&Graph::path(10), 3, 0)?;
    println!("K3 inside some small ball of P10: {}", none.is_some());
    Ok(())
}
