//! Relational vocabularies and finite structures.
//!
//! A structure interprets every symbol of its vocabulary by a set of
//! arity-length tuples over the universe. Zero-ary symbols are stored as
//! the presence or absence of the empty tuple.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Opaque element token. Ordered and cheap to clone.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ElementId(Arc<str>);

impl ElementId {
    pub fn new(s: impl AsRef<str>) -> Self {
        ElementId(Arc::from(s.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ElementId {
    fn from(s: &str) -> Self {
        ElementId::new(s)
    }
}

impl From<String> for ElementId {
    fn from(s: String) -> Self {
        ElementId::new(s)
    }
}

/// A finite relational signature: an ordered list of (name, arity) pairs.
/// Arity 0 is allowed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vocabulary {
    symbols: Vec<(String, usize)>,
}

impl Vocabulary {
    pub fn new(symbols: Vec<(String, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (name, _) in &symbols {
            if !seen.insert(name.clone()) {
                return Err(Error::DuplicateSymbol(name.clone()));
            }
        }
        Ok(Vocabulary { symbols })
    }

    pub fn of(pairs: &[(&str, usize)]) -> Self {
        Vocabulary::new(pairs.iter().map(|(n, a)| (n.to_string(), *a)).collect()).unwrap()
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.symbols
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, a)| *a)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.arity(name).is_some()
    }

    pub fn symbols(&self) -> impl Iterator<Item = (&str, usize)> {
        self.symbols.iter().map(|(n, a)| (n.as_str(), *a))
    }

    pub fn max_arity(&self) -> usize {
        self.symbols.iter().map(|(_, a)| *a).max().unwrap_or(0)
    }
}

/// A structure invariant violation, reported as data rather than an error.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    ArityMismatch {
        symbol: String,
        tuple: Vec<ElementId>,
        expected: usize,
    },
    ElementNotInUniverse {
        symbol: String,
        tuple: Vec<ElementId>,
        element: ElementId,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ArityMismatch {
                symbol,
                tuple,
                expected,
            } => write!(
                f,
                "tuple {:?} under `{}` has length {}, expected {}",
                tuple.iter().map(|e| e.as_str()).collect::<Vec<_>>(),
                symbol,
                tuple.len(),
                expected
            ),
            Violation::ElementNotInUniverse {
                symbol,
                tuple,
                element,
            } => write!(
                f,
                "tuple {:?} under `{}` mentions `{}` which is not in the universe",
                tuple.iter().map(|e| e.as_str()).collect::<Vec<_>>(),
                symbol,
                element
            ),
        }
    }
}

/// A finite structure over a relational vocabulary.
///
/// Immutable by convention: all operations return new structures.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Structure {
    vocab: Vocabulary,
    universe: Vec<ElementId>,
    relations: BTreeMap<String, BTreeSet<Vec<ElementId>>>,
}

impl Structure {
    pub fn new(vocab: Vocabulary) -> Self {
        let relations = vocab
            .symbols()
            .map(|(n, _)| (n.to_string(), BTreeSet::new()))
            .collect();
        Structure {
            vocab,
            universe: Vec::new(),
            relations,
        }
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn universe(&self) -> &[ElementId] {
        &self.universe
    }

    pub fn size(&self) -> usize {
        self.universe.len()
    }

    pub fn has_element(&self, e: &ElementId) -> bool {
        self.universe.contains(e)
    }

    pub fn add_element(&mut self, e: impl Into<ElementId>) -> Result<()> {
        let e = e.into();
        if self.universe.contains(&e) {
            return Err(Error::DuplicateElement(e.to_string()));
        }
        self.universe.push(e);
        Ok(())
    }

    /// Adds a tuple, validating symbol, arity and element membership.
    pub fn add_tuple(&mut self, symbol: &str, tuple: Vec<ElementId>) -> Result<()> {
        let arity = self
            .vocab
            .arity(symbol)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))?;
        if tuple.len() != arity {
            return Err(Error::ArityMismatch {
                symbol: symbol.to_string(),
                expected: arity,
                found: tuple.len(),
            });
        }
        for e in &tuple {
            if !self.universe.contains(e) {
                return Err(Error::UnknownElement(e.to_string()));
            }
        }
        self.relations.get_mut(symbol).unwrap().insert(tuple);
        Ok(())
    }

    /// Sets a 0-ary symbol to true.
    pub fn set_boolean(&mut self, symbol: &str) -> Result<()> {
        self.add_tuple(symbol, vec![])
    }

    pub fn tuples(&self, symbol: &str) -> impl Iterator<Item = &Vec<ElementId>> {
        self.relations
            .get(symbol)
            .into_iter()
            .flat_map(|s| s.iter())
    }

    pub fn holds(&self, symbol: &str, tuple: &[ElementId]) -> bool {
        self.relations
            .get(symbol)
            .map(|s| s.contains(tuple))
            .unwrap_or(false)
    }

    /// All (symbol, tuple) pairs in deterministic order.
    pub fn all_tuples(&self) -> impl Iterator<Item = (&str, &Vec<ElementId>)> {
        self.relations
            .iter()
            .flat_map(|(n, ts)| ts.iter().map(move |t| (n.as_str(), t)))
    }

    pub fn tuple_count(&self) -> usize {
        self.relations.values().map(|s| s.len()).sum()
    }

    /// Checks the structure invariants; an empty list means well-formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let universe: HashSet<&ElementId> = self.universe.iter().collect();
        for (symbol, tuples) in &self.relations {
            let arity = self.vocab.arity(symbol).unwrap_or(usize::MAX);
            for tuple in tuples {
                if tuple.len() != arity {
                    out.push(Violation::ArityMismatch {
                        symbol: symbol.clone(),
                        tuple: tuple.clone(),
                        expected: arity,
                    });
                }
                for e in tuple {
                    if !universe.contains(e) {
                        out.push(Violation::ElementNotInUniverse {
                            symbol: symbol.clone(),
                            tuple: tuple.clone(),
                            element: e.clone(),
                        });
                    }
                }
            }
        }
        out
    }

    fn check_same_vocab(&self, other: &Structure) -> Result<()> {
        if self.vocab != other.vocab {
            return Err(Error::VocabularyMismatch(
                "structures are over different vocabularies".into(),
            ));
        }
        Ok(())
    }

    /// `self` is a substructure of `other`: universe and relation-wise containment.
    pub fn is_substructure_of(&self, other: &Structure) -> Result<bool> {
        self.check_same_vocab(other)?;
        let mine: HashSet<&ElementId> = self.universe.iter().collect();
        let theirs: HashSet<&ElementId> = other.universe.iter().collect();
        if !mine.is_subset(&theirs) {
            return Ok(false);
        }
        for (symbol, tuples) in &self.relations {
            let sup = &other.relations[symbol];
            if !tuples.is_subset(sup) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Substructure with the equality condition `R^B = R^A ∩ B^r`.
    pub fn is_induced_substructure_of(&self, other: &Structure) -> Result<bool> {
        if !self.is_substructure_of(other)? {
            return Ok(false);
        }
        let mine: HashSet<&ElementId> = self.universe.iter().collect();
        for (symbol, sup) in &other.relations {
            let sub = &self.relations[symbol];
            for tuple in sup {
                if tuple.iter().all(|e| mine.contains(e)) && !sub.contains(tuple) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The induced substructure on the given elements (order follows `self`).
    pub fn restrict(&self, keep: &BTreeSet<ElementId>) -> Structure {
        let mut s = Structure::new(self.vocab.clone());
        for e in &self.universe {
            if keep.contains(e) {
                s.universe.push(e.clone());
            }
        }
        for (symbol, tuples) in &self.relations {
            let target = s.relations.get_mut(symbol).unwrap();
            for tuple in tuples {
                if tuple.iter().all(|e| keep.contains(e)) {
                    target.insert(tuple.clone());
                }
            }
        }
        s
    }

    /// Removes one tuple; identity if absent.
    pub fn without_tuple(&self, symbol: &str, tuple: &[ElementId]) -> Structure {
        let mut s = self.clone();
        if let Some(ts) = s.relations.get_mut(symbol) {
            ts.remove(tuple);
        }
        s
    }

    /// Removes one element together with every tuple mentioning it.
    pub fn without_element(&self, e: &ElementId) -> Structure {
        let mut s = self.clone();
        s.universe.retain(|x| x != e);
        for ts in s.relations.values_mut() {
            ts.retain(|t| !t.contains(e));
        }
        s
    }

    /// Renames every element through `f`. The map must be injective on the universe.
    pub fn rename(&self, f: impl Fn(&ElementId) -> ElementId) -> Structure {
        let mut s = Structure::new(self.vocab.clone());
        s.universe = self.universe.iter().map(&f).collect();
        for (symbol, tuples) in &self.relations {
            let target = s.relations.get_mut(symbol).unwrap();
            for tuple in tuples {
                target.insert(tuple.iter().map(&f).collect());
            }
        }
        s
    }

    /// Disjoint union with deterministic renaming: left ids get prefix `l.`,
    /// right ids get prefix `r.`.
    pub fn disjoint_union(&self, other: &Structure) -> Result<Structure> {
        self.check_same_vocab(other)?;
        let left = self.rename(|e| ElementId::new(format!("l.{e}")));
        let right = other.rename(|e| ElementId::new(format!("r.{e}")));
        let mut s = Structure::new(self.vocab.clone());
        s.universe.extend(left.universe.iter().cloned());
        s.universe.extend(right.universe.iter().cloned());
        for part in [&left, &right] {
            for (symbol, tuples) in &part.relations {
                s.relations
                    .get_mut(symbol)
                    .unwrap()
                    .extend(tuples.iter().cloned());
            }
        }
        Ok(s)
    }

    /// The Gaifman graph: vertices are the universe, an edge joins two
    /// distinct elements that appear together in some tuple.
    pub fn gaifman_graph(&self) -> Graph {
        let mut g = Graph::new();
        for e in &self.universe {
            g.add_vertex(e.clone());
        }
        for tuples in self.relations.values() {
            for tuple in tuples {
                for i in 0..tuple.len() {
                    for j in (i + 1)..tuple.len() {
                        if tuple[i] != tuple[j] {
                            g.add_edge(&tuple[i], &tuple[j]).ok();
                        }
                    }
                }
            }
        }
        g
    }

    /// The r-neighborhood of `center` in the Gaifman graph, together with
    /// the induced substructure on it.
    pub fn neighborhood(&self, center: &ElementId, r: usize) -> Result<(BTreeSet<ElementId>, Structure)> {
        if !self.has_element(center) {
            return Err(Error::UnknownElement(center.to_string()));
        }
        let ball = self.gaifman_graph().ball(center, r)?;
        let induced = self.restrict(&ball);
        Ok((ball, induced))
    }

    /// Streams proper substructures in decreasing-size order: first all
    /// single-tuple deletions, then single-element deletions, recursively,
    /// deduplicated by identity of universe and tuple sets. Stops after
    /// `budget` structures.
    pub fn proper_substructures(&self, budget: usize) -> Vec<Structure> {
        let mut out = Vec::new();
        let mut seen: HashSet<(Vec<ElementId>, Vec<(String, Vec<ElementId>)>)> = HashSet::new();
        let key = |s: &Structure| {
            (
                s.universe.clone(),
                s.all_tuples()
                    .map(|(n, t)| (n.to_string(), t.clone()))
                    .collect::<Vec<_>>(),
            )
        };
        seen.insert(key(self));
        let mut queue = VecDeque::new();
        queue.push_back(self.clone());
        while let Some(current) = queue.pop_front() {
            if out.len() >= budget {
                break;
            }
            let mut children = Vec::new();
            for (symbol, tuple) in current.all_tuples() {
                children.push(current.without_tuple(symbol, tuple));
            }
            for e in &current.universe {
                children.push(current.without_element(e));
            }
            for child in children {
                if out.len() >= budget {
                    break;
                }
                if seen.insert(key(&child)) {
                    out.push(child.clone());
                    queue.push_back(child);
                }
            }
        }
        out
    }

    /// One-step proper substructures: every single-tuple deletion and every
    /// single-element deletion.
    pub fn immediate_substructures(&self) -> Vec<Structure> {
        let mut out = Vec::new();
        for (symbol, tuple) in self.all_tuples() {
            out.push(self.without_tuple(symbol, tuple));
        }
        for e in &self.universe {
            out.push(self.without_element(e));
        }
        out
    }
}

/// Parses the line-based structure text format.
///
/// ```text
/// vocab E/2
/// element a
/// element b
/// rel E a b
/// ```
pub fn parse_structure(text: &str) -> Result<Structure> {
    let mut symbols = Vec::new();
    let mut elements: Vec<String> = Vec::new();
    let mut rels: Vec<(usize, String, Vec<String>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let head = parts.next().unwrap();
        let err = |message: String| Error::Parse {
            line: idx + 1,
            column: 1,
            message,
        };
        match head {
            "vocab" => {
                let spec = parts
                    .next()
                    .ok_or_else(|| err("expected `vocab <Name>/<arity>`".into()))?;
                let (name, arity) = spec
                    .rsplit_once('/')
                    .ok_or_else(|| err(format!("malformed vocab entry `{spec}`")))?;
                let arity: usize = arity
                    .parse()
                    .map_err(|_| err(format!("bad arity in `{spec}`")))?;
                symbols.push((name.to_string(), arity));
            }
            "element" => {
                let id = parts
                    .next()
                    .ok_or_else(|| err("expected `element <id>`".into()))?;
                elements.push(id.to_string());
            }
            "rel" => {
                let name = parts
                    .next()
                    .ok_or_else(|| err("expected `rel <Name> <ids...>`".into()))?;
                rels.push((
                    idx + 1,
                    name.to_string(),
                    parts.map(|s| s.to_string()).collect(),
                ));
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    let vocab = Vocabulary::new(symbols)?;
    let mut s = Structure::new(vocab);
    for e in elements {
        s.add_element(e)?;
    }
    for (line, name, args) in rels {
        s.add_tuple(&name, args.into_iter().map(ElementId::from).collect())
            .map_err(|e| Error::Parse {
                line,
                column: 1,
                message: e.to_string(),
            })?;
    }
    Ok(s)
}

/// Serializes a structure in the text format accepted by [`parse_structure`].
pub fn print_structure(s: &Structure) -> String {
    let mut out = String::new();
    for (name, arity) in s.vocabulary().symbols() {
        out.push_str(&format!("vocab {name}/{arity}\n"));
    }
    for e in s.universe() {
        out.push_str(&format!("element {e}\n"));
    }
    for (name, tuple) in s.all_tuples() {
        out.push_str("rel ");
        out.push_str(name);
        for e in tuple {
            out.push(' ');
            out.push_str(e.as_str());
        }
        out.push('\n');
    }
    out
}
