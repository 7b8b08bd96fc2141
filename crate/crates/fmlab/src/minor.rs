//! Minors, minors at bounded depth, and greatest reduced average density.
//!
//! Everything here is exact and certificate-producing; the searches are
//! exponential and guarded by vertex bounds rather than pretending to scale.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::structure::ElementId;

/// A witnessed minor: each pattern vertex owns a branch set in the host.
#[derive(Clone, Debug)]
pub struct MinorEmbedding {
    pub pattern: Graph,
    pub branch_sets: BTreeMap<ElementId, BTreeSet<ElementId>>,
    /// When present: the depth bound r and a center per branch set with
    /// branch_set ⊆ N_r(center) in the host.
    pub depth: Option<(usize, BTreeMap<ElementId, ElementId>)>,
}

impl MinorEmbedding {
    pub fn order(&self) -> usize {
        self.branch_sets.len()
    }
}

/// Checks every invariant of the embedding against the host graph:
/// branch sets nonempty, pairwise disjoint, connected; every pattern edge
/// realized by a host edge between the two sets; and the depth/center
/// condition when present.
pub fn verify_minor(host: &Graph, emb: &MinorEmbedding) -> Result<bool> {
    if emb.branch_sets.len() != emb.pattern.vertex_count() {
        return Ok(false);
    }
    let mut seen: BTreeSet<ElementId> = BTreeSet::new();
    for (pv, set) in &emb.branch_sets {
        if !emb.pattern.has_vertex(pv) || set.is_empty() {
            return Ok(false);
        }
        for v in set {
            if !host.has_vertex(v) || !seen.insert(v.clone()) {
                return Ok(false);
            }
        }
        if !host.is_connected_on(set) {
            return Ok(false);
        }
    }
    for (u, v) in emb.pattern.edges().map(|(a, b)| (a.clone(), b.clone())).collect::<Vec<_>>() {
        let su = &emb.branch_sets[&u];
        let sv = &emb.branch_sets[&v];
        let linked = su
            .iter()
            .any(|a| host.neighbors(a).any(|n| sv.contains(n)));
        if !linked {
            return Ok(false);
        }
    }
    if let Some((r, centers)) = &emb.depth {
        for (pv, set) in &emb.branch_sets {
            let center = match centers.get(pv) {
                Some(c) => c,
                None => return Ok(false),
            };
            let ball = host.ball(center, *r)?;
            if !set.is_subset(&ball) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

const MINOR_SEARCH_VERTEX_BOUND: usize = 14;

/// Complete search for `pattern` as a minor of `host`, optionally at depth
/// r. Returns a verified embedding or None.
pub fn is_minor(pattern: &Graph, host: &Graph, depth: Option<usize>) -> Result<Option<MinorEmbedding>> {
    if host.vertex_count() > MINOR_SEARCH_VERTEX_BOUND {
        return Err(Error::TooLarge(format!(
            "exact minor search capped at {MINOR_SEARCH_VERTEX_BOUND} host vertices, got {}",
            host.vertex_count()
        )));
    }
    let k = pattern.vertex_count();
    if k == 0 {
        return Ok(Some(MinorEmbedding {
            pattern: pattern.clone(),
            branch_sets: BTreeMap::new(),
            depth: depth.map(|r| (r, BTreeMap::new())),
        }));
    }
    if k > host.vertex_count() {
        return Ok(None);
    }
    let pverts: Vec<ElementId> = pattern.vertices().to_vec();
    let hverts: Vec<ElementId> = host.vertices().to_vec();
    // blocks[i] = 0 means unused, j ≥ 1 assigns hverts[i] to pattern vertex j-1.
    let mut blocks = vec![0usize; hverts.len()];
    let found = assign_blocks(pattern, host, &pverts, &hverts, &mut blocks, 0, depth)?;
    Ok(found)
}

fn assign_blocks(
    pattern: &Graph,
    host: &Graph,
    pverts: &[ElementId],
    hverts: &[ElementId],
    blocks: &mut Vec<usize>,
    at: usize,
    depth: Option<usize>,
) -> Result<Option<MinorEmbedding>> {
    let k = pverts.len();
    if at == hverts.len() {
        let mut branch_sets: BTreeMap<ElementId, BTreeSet<ElementId>> = pverts
            .iter()
            .map(|p| (p.clone(), BTreeSet::new()))
            .collect();
        for (i, b) in blocks.iter().enumerate() {
            if *b > 0 {
                branch_sets
                    .get_mut(&pverts[*b - 1])
                    .unwrap()
                    .insert(hverts[i].clone());
            }
        }
        let depth_info = match depth {
            None => None,
            Some(r) => {
                let mut centers = BTreeMap::new();
                for (pv, set) in &branch_sets {
                    match find_center(host, set, r)? {
                        Some(c) => {
                            centers.insert(pv.clone(), c);
                        }
                        None => return Ok(None),
                    }
                }
                Some((r, centers))
            }
        };
        let emb = MinorEmbedding {
            pattern: pattern.clone(),
            branch_sets,
            depth: depth_info,
        };
        if verify_minor(host, &emb)? {
            return Ok(Some(emb));
        }
        return Ok(None);
    }
    // Prune: blocks still empty must fit in the remaining vertices.
    let mut used = vec![false; k];
    for b in blocks[..at].iter() {
        if *b > 0 {
            used[*b - 1] = true;
        }
    }
    let empty = used.iter().filter(|u| !**u).count();
    if empty > hverts.len() - at {
        return Ok(None);
    }
    for b in 0..=k {
        blocks[at] = b;
        if let Some(hit) = assign_blocks(pattern, host, pverts, hverts, blocks, at + 1, depth)? {
            return Ok(Some(hit));
        }
    }
    blocks[at] = 0;
    Ok(None)
}

/// Any host vertex whose r-ball covers `set`.
fn find_center(host: &Graph, set: &BTreeSet<ElementId>, r: usize) -> Result<Option<ElementId>> {
    for w in host.vertices() {
        if set.is_subset(&host.ball(w, r)?) {
            return Ok(Some(w.clone()));
        }
    }
    Ok(None)
}

/// Greatest reduced average density at radius r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradResult {
    pub value: Ratio<u64>,
    /// False when the vertex cap forced a lower-bound-only answer.
    pub exact: bool,
}

const GRAD_EXACT_VERTEX_BOUND: usize = 12;

/// ∇_r: the maximum |E|/|V| over minors of depth r. For r = 0 this is the
/// densest-subgraph sweep; for r ≥ 1 an exhaustive search over partial
/// partitions into connected, r-ball-bounded branch sets ("restricted
/// growth" enumeration). Above the cap the r ≥ 1 answer degrades to the
/// densest-subgraph lower bound, flagged inexact.
pub fn grad(host: &Graph, r: usize) -> Result<GradResult> {
    let n = host.vertex_count();
    if n == 0 {
        return Err(Error::Domain("grad of the empty graph is undefined".into()));
    }
    if n > 20 {
        return Err(Error::TooLarge(format!(
            "grad computation capped at 20 vertices, got {n}"
        )));
    }
    let zero = densest_subgraph(host);
    if r == 0 {
        return Ok(GradResult {
            value: zero,
            exact: true,
        });
    }
    if n > GRAD_EXACT_VERTEX_BOUND {
        return Ok(GradResult {
            value: zero,
            exact: false,
        });
    }
    let verts: Vec<ElementId> = host.vertices().to_vec();
    let mut assignment: Vec<usize> = vec![0; n];
    let mut best = zero;
    partitions(host, &verts, &mut assignment, 0, 0, r, &mut best)?;
    Ok(GradResult {
        value: best,
        exact: true,
    })
}

/// max |E(S)| / |S| over nonempty induced subgraphs.
fn densest_subgraph(g: &Graph) -> Ratio<u64> {
    let verts: Vec<ElementId> = g.vertices().to_vec();
    let n = verts.len();
    let mut best = Ratio::new(0, 1);
    for mask in 1u64..(1 << n) {
        let set: BTreeSet<ElementId> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| verts[i].clone())
            .collect();
        let sub = g.induced(&set);
        let d = Ratio::new(sub.edge_count() as u64, sub.vertex_count() as u64);
        if d > best {
            best = d;
        }
    }
    best
}

/// Restricted-growth enumeration of partial partitions into ≤ n blocks;
/// at completion, blocks must be connected and r-ball-bounded, and the
/// quotient density updates the incumbent.
fn partitions(
    host: &Graph,
    verts: &[ElementId],
    assignment: &mut Vec<usize>,
    at: usize,
    max_block: usize,
    r: usize,
    best: &mut Ratio<u64>,
) -> Result<()> {
    if at == verts.len() {
        if max_block == 0 {
            return Ok(());
        }
        let mut sets: Vec<BTreeSet<ElementId>> = vec![BTreeSet::new(); max_block];
        for (i, b) in assignment.iter().enumerate() {
            if *b > 0 {
                sets[*b - 1].insert(verts[i].clone());
            }
        }
        for s in &sets {
            if !host.is_connected_on(s) || find_center(host, s, r)?.is_none() {
                return Ok(());
            }
        }
        // Quotient edge count: pairs of blocks joined by a host edge.
        let mut edges = 0u64;
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                let linked = sets[i]
                    .iter()
                    .any(|a| host.neighbors(a).any(|x| sets[j].contains(x)));
                if linked {
                    edges += 1;
                }
            }
        }
        let d = Ratio::new(edges, max_block as u64);
        if d > *best {
            *best = d;
        }
        return Ok(());
    }
    for b in 0..=(max_block + 1) {
        assignment[at] = b;
        partitions(
            host,
            verts,
            assignment,
            at + 1,
            max_block.max(b),
            r,
            best,
        )?;
    }
    assignment[at] = 0;
    Ok(())
}

/// Scans every ball of radius 3r+4 for a K_k minor; the embedding returned
/// lies entirely inside one ball.
pub fn local_clique_scan(
    g: &Graph,
    k: usize,
    r: usize,
) -> Result<Option<(ElementId, MinorEmbedding)>> {
    let pattern = Graph::complete(k);
    for v in g.vertices() {
        let ball = g.ball(v, 3 * r + 4)?;
        let sub = g.induced(&ball);
        if sub.vertex_count() > MINOR_SEARCH_VERTEX_BOUND {
            return Err(Error::TooLarge(format!(
                "ball around {v} has {} vertices, above the exact-search cap",
                sub.vertex_count()
            )));
        }
        if let Some(emb) = is_minor(&pattern, &sub, None)? {
            debug_assert!(verify_minor(&sub, &emb)?);
            return Ok(Some((v.clone(), emb)));
        }
    }
    Ok(None)
}
