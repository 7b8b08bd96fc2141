//! Scattered sets and the scattered-or-shallow-clique dichotomy: deleting
//! few vertices either spreads a graph out or a dense clique minor was
//! hiding inside.

use fmlab::dichotomy::{scattered_or_shallow_clique, DichotomyOutcome};
use fmlab::graph::Graph;
use fmlab::minor::verify_minor;
use fmlab::scattered::{classify_graph, is_r_scattered, max_scattered_set, ScatterMode};

fn main() -> fmlab::Result<()> {
    let p9 = Graph::path(9);
    let exact = max_scattered_set(&p9, 1, ScatterMode::Exact { vertex_bound: 64 })?;
    println!("max 1-scattered set of P9: {exact:?} (size {})", exact.len());
    assert!(is_r_scattered(&p9, &exact, 1)?);

    // A star spreads out after deleting its center...
    let star = Graph::star(12);
    match scattered_or_shallow_clique(&star, 3, 2, 3)? {
        DichotomyOutcome::Scattered(w) => {
            println!(
                "K(1,12), k=3, r=2: deleted {:?}, {} leaves 2-scattered",
                w.deleted,
                w.scattered.len()
            );
        }
        other => println!("unexpected: {other:?}"),
    }

    // ...while a clique yields the minor branch, certificate included.
    let k6 = Graph::complete(6);
    match scattered_or_shallow_clique(&k6, 4, 0, 2)? {
        DichotomyOutcome::Minor(emb) => {
            assert!(verify_minor(&k6, &emb)?);
            println!("K6, k=4, r=0: K4 minor at depth 1, branch sets:");
            for (v, set) in &emb.branch_sets {
                println!("  {v}: {set:?}");
            }
        }
        other => println!("unexpected: {other:?}"),
    }

    // Classification: least deletion-set size for an r-scattered set.
    for (name, g) in [("star", Graph::star(8)), ("K6", Graph::complete(6))] {
        println!("{name}: {:?}", classify_graph(&g, 2, 3, 3)?);
    }
    Ok(())
}
