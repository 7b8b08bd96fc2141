//! Undirected loopless graphs, BFS distances and neighborhoods.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::structure::ElementId;

/// An undirected graph without loops or parallel edges. Edges are stored as
/// ordered pairs (min, max).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Graph {
    vertices: Vec<ElementId>,
    edges: BTreeSet<(ElementId, ElementId)>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    /// Complete graph on vertices named `1..=n`.
    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new();
        for i in 1..=n {
            g.add_vertex(ElementId::new(i.to_string()));
        }
        for i in 1..=n {
            for j in (i + 1)..=n {
                g.add_edge(
                    &ElementId::new(i.to_string()),
                    &ElementId::new(j.to_string()),
                )
                .unwrap();
            }
        }
        g
    }

    /// Path 1-2-...-n.
    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new();
        for i in 1..=n {
            g.add_vertex(ElementId::new(i.to_string()));
        }
        for i in 1..n {
            g.add_edge(
                &ElementId::new(i.to_string()),
                &ElementId::new((i + 1).to_string()),
            )
            .unwrap();
        }
        g
    }

    /// Cycle 1-2-...-n-1.
    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(&ElementId::new("1"), &ElementId::new(n.to_string()))
                .unwrap();
        }
        g
    }

    /// Star with center `c` and leaves `v1..vn`.
    pub fn star(leaves: usize) -> Graph {
        let mut g = Graph::new();
        g.add_vertex(ElementId::new("c"));
        for i in 1..=leaves {
            let v = ElementId::new(format!("v{i}"));
            g.add_vertex(v.clone());
            g.add_edge(&ElementId::new("c"), &v).unwrap();
        }
        g
    }

    /// Grid with `rows * cols` vertices named `r,c`.
    pub fn grid(rows: usize, cols: usize) -> Graph {
        let mut g = Graph::new();
        let name = |r: usize, c: usize| ElementId::new(format!("{r},{c}"));
        for r in 0..rows {
            for c in 0..cols {
                g.add_vertex(name(r, c));
            }
        }
        for r in 0..rows {
            for c in 0..cols {
                if r + 1 < rows {
                    g.add_edge(&name(r, c), &name(r + 1, c)).unwrap();
                }
                if c + 1 < cols {
                    g.add_edge(&name(r, c), &name(r, c + 1)).unwrap();
                }
            }
        }
        g
    }

    pub fn add_vertex(&mut self, v: ElementId) {
        if !self.vertices.contains(&v) {
            self.vertices.push(v);
        }
    }

    pub fn add_edge(&mut self, u: &ElementId, v: &ElementId) -> Result<()> {
        if u == v {
            return Err(Error::Domain(format!("loop at `{u}` is not allowed")));
        }
        if !self.vertices.contains(u) {
            return Err(Error::UnknownElement(u.to_string()));
        }
        if !self.vertices.contains(v) {
            return Err(Error::UnknownElement(v.to_string()));
        }
        let (a, b) = if u <= v { (u, v) } else { (v, u) };
        self.edges.insert((a.clone(), b.clone()));
        Ok(())
    }

    pub fn vertices(&self) -> &[ElementId] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = &(ElementId, ElementId)> {
        self.edges.iter()
    }

    pub fn has_vertex(&self, v: &ElementId) -> bool {
        self.vertices.contains(v)
    }

    pub fn has_edge(&self, u: &ElementId, v: &ElementId) -> bool {
        let (a, b) = if u <= v { (u, v) } else { (v, u) };
        self.edges.contains(&(a.clone(), b.clone()))
    }

    pub fn neighbors<'a>(&'a self, v: &'a ElementId) -> impl Iterator<Item = &'a ElementId> {
        self.edges.iter().filter_map(move |(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn degree(&self, v: &ElementId) -> usize {
        self.neighbors(v).count()
    }

    fn adjacency(&self) -> BTreeMap<&ElementId, Vec<&ElementId>> {
        let mut adj: BTreeMap<&ElementId, Vec<&ElementId>> =
            self.vertices.iter().map(|v| (v, Vec::new())).collect();
        for (a, b) in &self.edges {
            adj.get_mut(a).unwrap().push(b);
            adj.get_mut(b).unwrap().push(a);
        }
        adj
    }

    /// BFS shortest-path length; `None` when disconnected.
    pub fn distance(&self, u: &ElementId, v: &ElementId) -> Result<Option<usize>> {
        if !self.has_vertex(u) {
            return Err(Error::UnknownElement(u.to_string()));
        }
        if !self.has_vertex(v) {
            return Err(Error::UnknownElement(v.to_string()));
        }
        Ok(self.bfs_from(u).remove(v))
    }

    /// Distances from `u` to every reachable vertex.
    pub fn bfs_from(&self, u: &ElementId) -> BTreeMap<ElementId, usize> {
        let adj = self.adjacency();
        let mut dist = BTreeMap::new();
        dist.insert(u.clone(), 0usize);
        let mut queue = VecDeque::new();
        queue.push_back(u);
        while let Some(x) = queue.pop_front() {
            let d = dist[x];
            for &y in adj.get(x).into_iter().flatten() {
                if !dist.contains_key(y) {
                    dist.insert(y.clone(), d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// The set of vertices at distance at most `r` from `center`.
    pub fn ball(&self, center: &ElementId, r: usize) -> Result<BTreeSet<ElementId>> {
        if !self.has_vertex(center) {
            return Err(Error::UnknownElement(center.to_string()));
        }
        Ok(self
            .bfs_from(center)
            .into_iter()
            .filter(|(_, d)| *d <= r)
            .map(|(v, _)| v)
            .collect())
    }

    /// Induced subgraph on `keep`.
    pub fn induced(&self, keep: &BTreeSet<ElementId>) -> Graph {
        let mut g = Graph::new();
        for v in &self.vertices {
            if keep.contains(v) {
                g.add_vertex(v.clone());
            }
        }
        for (a, b) in &self.edges {
            if keep.contains(a) && keep.contains(b) {
                g.edges.insert((a.clone(), b.clone()));
            }
        }
        g
    }

    /// Induced subgraph after deleting `removed`.
    pub fn without(&self, removed: &BTreeSet<ElementId>) -> Graph {
        let keep: BTreeSet<ElementId> = self
            .vertices
            .iter()
            .filter(|v| !removed.contains(v))
            .cloned()
            .collect();
        self.induced(&keep)
    }

    /// Whether the induced subgraph on `set` is connected (and non-empty).
    pub fn is_connected_on(&self, set: &BTreeSet<ElementId>) -> bool {
        let Some(start) = set.iter().next() else {
            return false;
        };
        let sub = self.induced(set);
        sub.bfs_from(start).len() == set.len()
    }

    pub fn connected_components(&self) -> Vec<BTreeSet<ElementId>> {
        let mut remaining: BTreeSet<ElementId> = self.vertices.iter().cloned().collect();
        let mut out = Vec::new();
        while let Some(start) = remaining.iter().next().cloned() {
            let comp: BTreeSet<ElementId> = self.bfs_from(&start).into_keys().collect();
            for v in &comp {
                remaining.remove(v);
            }
            out.push(comp);
        }
        out
    }

    /// The graph as a structure over {E/2}, edges stored symmetrically.
    pub fn to_structure(&self) -> crate::structure::Structure {
        let mut s =
            crate::structure::Structure::new(crate::structure::Vocabulary::of(&[("E", 2)]));
        for v in &self.vertices {
            s.add_element(v.clone()).unwrap();
        }
        for (u, v) in &self.edges {
            s.add_tuple("E", vec![u.clone(), v.clone()]).unwrap();
            s.add_tuple("E", vec![v.clone(), u.clone()]).unwrap();
        }
        s
    }

    /// Reads a graph from a structure over {E/2}; the edge relation must
    /// be symmetric and loopless.
    pub fn from_structure(s: &crate::structure::Structure) -> Result<Graph> {
        if s.vocabulary() != &crate::structure::Vocabulary::of(&[("E", 2)]) {
            return Err(Error::VocabularyMismatch(
                "graph files use exactly the vocabulary {E/2}".into(),
            ));
        }
        let mut g = Graph::new();
        for v in s.universe() {
            g.add_vertex(v.clone());
        }
        for t in s.tuples("E") {
            if t[0] == t[1] {
                return Err(Error::Domain(format!("loop at `{}` is not a graph edge", t[0])));
            }
            if !s.holds("E", &[t[1].clone(), t[0].clone()]) {
                return Err(Error::Domain(format!(
                    "edge relation is not symmetric: E({},{}) lacks its reverse",
                    t[0], t[1]
                )));
            }
            g.add_edge(&t[0].clone(), &t[1].clone())?;
        }
        Ok(g)
    }
}
