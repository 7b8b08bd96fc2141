//! r-scattered sets and the deletion-set classification that witnesses
//! wideness properties on concrete graphs.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::structure::ElementId;

/// A set is r-scattered when the r-neighborhoods of its members are
/// pairwise disjoint, i.e. all pairwise distances exceed 2r.
pub fn is_r_scattered(g: &Graph, s: &BTreeSet<ElementId>, r: usize) -> Result<bool> {
    let vs: Vec<&ElementId> = s.iter().collect();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if let Some(d) = g.distance(vs[i], vs[j])? {
                if d <= 2 * r {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScatterMode {
    /// Branch-and-bound maximum independent set in the distance-≤2r graph.
    Exact { vertex_bound: usize },
    /// Repeatedly take the least vertex and discard its 2r-ball.
    Greedy,
}

/// A largest (exact) or maximal (greedy) r-scattered set.
pub fn max_scattered_set(g: &Graph, r: usize, mode: ScatterMode) -> Result<BTreeSet<ElementId>> {
    match mode {
        ScatterMode::Greedy => {
            let mut out = BTreeSet::new();
            let mut remaining: BTreeSet<ElementId> = g.vertices().iter().cloned().collect();
            while let Some(v) = remaining.iter().next().cloned() {
                out.insert(v.clone());
                for (u, d) in g.bfs_from(&v) {
                    if d <= 2 * r {
                        remaining.remove(&u);
                    }
                }
                remaining.remove(&v);
            }
            Ok(out)
        }
        ScatterMode::Exact { vertex_bound } => {
            if g.vertex_count() > vertex_bound {
                return Err(Error::TooLarge(format!(
                    "exact scattered-set search capped at {vertex_bound} vertices, got {}",
                    g.vertex_count()
                )));
            }
            // Conflict graph: edge iff distance ≤ 2r; maximum independent set.
            let verts: Vec<ElementId> = g.vertices().to_vec();
            let n = verts.len();
            let mut conflict = vec![Vec::new(); n];
            for i in 0..n {
                for j in i + 1..n {
                    if let Some(d) = g.distance(&verts[i], &verts[j])? {
                        if d <= 2 * r {
                            conflict[i].push(j);
                            conflict[j].push(i);
                        }
                    }
                }
            }
            let mut best: Vec<usize> = Vec::new();
            let mut current: Vec<usize> = Vec::new();
            branch(&conflict, 0, n, &mut current, &mut best);
            Ok(best.into_iter().map(|i| verts[i].clone()).collect())
        }
    }
}

fn branch(
    conflict: &[Vec<usize>],
    from: usize,
    n: usize,
    current: &mut Vec<usize>,
    best: &mut Vec<usize>,
) {
    if current.len() + (n - from) <= best.len() {
        return; // cannot beat the incumbent
    }
    if from == n {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    let compatible = !conflict[from].iter().any(|j| current.contains(j));
    if compatible {
        current.push(from);
        branch(conflict, from + 1, n, current, best);
        current.pop();
    }
    branch(conflict, from + 1, n, current, best);
}

/// Per-graph classification: least deletion-set size k ≤ kmax whose removal
/// leaves an r-scattered set of size ≥ m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Least k, with a witnessing deletion set and scattered set.
    Width {
        k: usize,
        deleted: BTreeSet<ElementId>,
        scattered: BTreeSet<ElementId>,
    },
    NoneWithin { kmax: usize },
}

pub fn classify_graph(g: &Graph, r: usize, m: usize, kmax: usize) -> Result<Classification> {
    let verts: Vec<ElementId> = g.vertices().to_vec();
    for k in 0..=kmax.min(verts.len()) {
        let mut chosen = Vec::new();
        if let Some((deleted, scattered)) =
            try_deletion_sets(g, &verts, r, m, k, 0, &mut chosen)?
        {
            return Ok(Classification::Width {
                k,
                deleted,
                scattered,
            });
        }
    }
    Ok(Classification::NoneWithin { kmax })
}

fn try_deletion_sets(
    g: &Graph,
    verts: &[ElementId],
    r: usize,
    m: usize,
    k: usize,
    from: usize,
    chosen: &mut Vec<ElementId>,
) -> Result<Option<(BTreeSet<ElementId>, BTreeSet<ElementId>)>> {
    if chosen.len() == k {
        let deleted: BTreeSet<ElementId> = chosen.iter().cloned().collect();
        let rest = g.without(&deleted);
        let scattered = max_scattered_set(&rest, r, ScatterMode::Greedy)?;
        // Greedy is a sound shortcut for "yes"; fall back to the exact
        // search before concluding "no" on graphs small enough for it.
        let scattered = if scattered.len() >= m {
            scattered
        } else if rest.vertex_count() <= 26 {
            max_scattered_set(&rest, r, ScatterMode::Exact { vertex_bound: 26 })?
        } else {
            scattered
        };
        if scattered.len() >= m {
            return Ok(Some((deleted, scattered)));
        }
        return Ok(None);
    }
    for i in from..verts.len() {
        chosen.push(verts[i].clone());
        if let Some(hit) = try_deletion_sets(g, verts, r, m, k, i + 1, chosen)? {
            chosen.pop();
            return Ok(Some(hit));
        }
        chosen.pop();
    }
    Ok(None)
}

/// Classification of every graph in a corpus.
pub fn classify_corpus(
    graphs: &[Graph],
    r: usize,
    m: usize,
    kmax: usize,
) -> Result<Vec<Classification>> {
    graphs.iter().map(|g| classify_graph(g, r, m, kmax)).collect()
}
