//! Gaifman graphs, neighborhoods, and first-order distance formulas:
//! builds a structure, extracts its Gaifman graph, and shows that the
//! definable distance predicates agree with BFS.

use fmlab::eval::{evaluate, Assignment};
use fmlab::locality::{basic_local_sentence, dist_formula, relativize};
use fmlab::parser::parse_formula;
use fmlab::structure::{parse_structure, ElementId};

fn main() -> fmlab::Result<()> {
    let s = parse_structure(
        "vocab E/2\nvocab P/1\n\
         element a\nelement b\nelement c\nelement d\n\
         rel E a b\nrel E b c\nrel E c d\nrel P a\n",
    )?;

    let g = s.gaifman_graph();
    println!("Gaifman graph edges:");
    for (u, v) in g.edges() {
        println!("  {u} -- {v}");
    }

    // δ≤r(x,y) is first-order definable; compare with graph distance.
    for r in 0..=3usize {
        let delta = dist_formula(s.vocabulary(), r);
        let asg: Assignment = [
            ("x".to_string(), ElementId::new("a")),
            ("y".to_string(), ElementId::new("d")),
        ]
        .into();
        let by_formula = evaluate(&s, &delta, &asg)?;
        let by_bfs = g.distance(&"a".into(), &"d".into())?.map(|d| d <= r) == Some(true);
        println!("dist(a,d) <= {r}: formula={by_formula} bfs={by_bfs}");
        assert_eq!(by_formula, by_bfs);
    }

    // Relativization bounds quantifiers to a ball: "some P-element"
    // restricted to the 1-ball of y.
    let psi = parse_formula("E z P(z)", s.vocabulary())?;
    let local = relativize(&psi, "y", 1, s.vocabulary())?;
    for e in ["a", "c", "d"] {
        let asg: Assignment = [("y".to_string(), ElementId::new(e))].into();
        println!(
            "P-element within distance 1 of {e}: {}",
            evaluate(&s, &local, &asg)?
        );
    }

    // A basic local sentence: two far-apart centers both near a P-element.
    let p_near = parse_formula("P(x)", s.vocabulary())?;
    let bls = basic_local_sentence(2, 1, &p_near, s.vocabulary())?;
    println!(
        "two 1-scattered centers with P in their 1-balls: {}",
        fmlab::eval::models(&s, &bls.sentence)?
    );
    Ok(())
}
