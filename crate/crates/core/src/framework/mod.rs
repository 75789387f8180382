//! Framework syntax: arguments, attacks and supports, where attacks and
//! supports are themselves elements that can be attacked, supported, or act
//! as sources of further relations.
//!
//! A [`Hafs`] is immutable once built. Its universe is kept sorted by
//! [`ElementId`] (arguments, then attacks, then supports, each by name), and
//! every per-element view the rest of the crate uses is addressed by the
//! element's position in that sorted universe.

mod random;
mod text;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

pub use random::{generate_random, GenerateError, RandomSpec};
pub use text::{parse, ParseError, ParseErrorKind};

/// Which part of the universe an element belongs to.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Argument,
    Attack,
    Support,
}

impl Kind {
    /// Prefix used in tagged ids (`arg:a`, `att:r1`, `supp:t1`).
    pub fn tag(self) -> &'static str {
        match self {
            Kind::Argument => "arg",
            Kind::Attack => "att",
            Kind::Support => "supp",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Kind> {
        match tag {
            "arg" => Some(Kind::Argument),
            "att" => Some(Kind::Attack),
            "supp" => Some(Kind::Support),
            _ => None,
        }
    }
}

/// A member of the universe. Ordered by kind, then name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId {
    pub kind: Kind,
    pub name: String,
}

impl ElementId {
    pub fn new(kind: Kind, name: impl Into<String>) -> Self {
        ElementId {
            kind,
            name: name.into(),
        }
    }

    pub fn argument(name: impl Into<String>) -> Self {
        Self::new(Kind::Argument, name)
    }

    pub fn attack(name: impl Into<String>) -> Self {
        Self::new(Kind::Attack, name)
    }

    pub fn support(name: impl Into<String>) -> Self {
        Self::new(Kind::Support, name)
    }

    /// Parses the tagged form `kind:name`.
    pub fn parse_tagged(s: &str) -> Option<Self> {
        let (tag, name) = s.split_once(':')?;
        let kind = Kind::from_tag(tag)?;
        is_valid_name(name).then(|| ElementId::new(kind, name))
    }

    pub fn is_relation(&self) -> bool {
        self.kind != Kind::Argument
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind.tag(), self.name)
    }
}

/// `[a-zA-Z_][a-zA-Z0-9_]*`
pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// An attack or support declaration, endpoints given by element id.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Relation {
    pub id: ElementId,
    pub source: ElementId,
    pub target: ElementId,
}

/// An incoming relation of some element: `source` relates to the element
/// through the relation element `relation`. Both are universe positions.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Incoming {
    pub source: usize,
    pub relation: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameworkError {
    #[error("invalid element name `{0}`")]
    InvalidName(String),
    #[error("name `{0}` is declared more than once")]
    DuplicateName(String),
    #[error("{kind} `{second}` duplicates `{first}` ({source_name} -> {target_name})", kind = kind_word(*.kind))]
    DuplicateRelation {
        kind: Kind,
        first: String,
        second: String,
        source_name: String,
        target_name: String,
    },
    #[error("relation `{relation}` refers to undeclared element `{reference}`")]
    DanglingReference { relation: String, reference: String },
    #[error("relation `{0}` refers to itself")]
    SelfReference(String),
    #[error("relation `{0}` is part of a definitional cycle")]
    DefinitionCycle(String),
}

fn kind_word(kind: Kind) -> &'static str {
    match kind {
        Kind::Argument => "argument",
        Kind::Attack => "attack",
        Kind::Support => "support",
    }
}

/// Collects declarations by name; [`HafsBuilder::build`] resolves and
/// validates them all at once, so declaration order is irrelevant.
#[derive(Debug, Default, Clone)]
pub struct HafsBuilder {
    arguments: Vec<String>,
    relations: Vec<(Kind, String, String, String)>,
}

impl HafsBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn argument(&mut self, name: impl Into<String>) -> &mut Self {
        self.arguments.push(name.into());
        self
    }

    pub fn attack(
        &mut self,
        id: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> &mut Self {
        self.relations
            .push((Kind::Attack, id.into(), source.into(), target.into()));
        self
    }

    pub fn support(
        &mut self,
        id: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> &mut Self {
        self.relations
            .push((Kind::Support, id.into(), source.into(), target.into()));
        self
    }

    pub fn build(&self) -> Result<Hafs, FrameworkError> {
        let mut kinds: BTreeMap<&str, Kind> = BTreeMap::new();
        let declared = self
            .arguments
            .iter()
            .map(|n| (n.as_str(), Kind::Argument))
            .chain(self.relations.iter().map(|(k, n, _, _)| (n.as_str(), *k)));
        for (name, kind) in declared {
            if !is_valid_name(name) {
                return Err(FrameworkError::InvalidName(name.to_string()));
            }
            if kinds.insert(name, kind).is_some() {
                return Err(FrameworkError::DuplicateName(name.to_string()));
            }
        }

        let mut seen: BTreeMap<(Kind, &str, &str), &str> = BTreeMap::new();
        for (kind, id, source, target) in &self.relations {
            for endpoint in [source, target] {
                if endpoint == id {
                    return Err(FrameworkError::SelfReference(id.clone()));
                }
                if !kinds.contains_key(endpoint.as_str()) {
                    return Err(FrameworkError::DanglingReference {
                        relation: id.clone(),
                        reference: endpoint.clone(),
                    });
                }
            }
            if let Some(first) = seen.insert((*kind, source, target), id) {
                return Err(FrameworkError::DuplicateRelation {
                    kind: *kind,
                    first: first.to_string(),
                    second: id.clone(),
                    source_name: source.clone(),
                    target_name: target.clone(),
                });
            }
        }

        let mut universe: Vec<ElementId> = kinds
            .iter()
            .map(|(name, kind)| ElementId::new(*kind, *name))
            .collect();
        universe.sort();
        let position: BTreeMap<&str, usize> = universe
            .iter()
            .enumerate()
            .map(|(i, e)| (e.name.as_str(), i))
            .collect();

        let n = universe.len();
        let mut endpoints = vec![None; n];
        for (_, id, source, target) in &self.relations {
            endpoints[position[id.as_str()]] = Some((position[source.as_str()], position[target.as_str()]));
        }

        if let Some(culprit) = find_definition_cycle(&endpoints) {
            return Err(FrameworkError::DefinitionCycle(universe[culprit].name.clone()));
        }

        let mut attackers = vec![Vec::new(); n];
        let mut supporters = vec![Vec::new(); n];
        for (rel, ends) in endpoints.iter().enumerate() {
            if let Some((source, target)) = *ends {
                let incoming = Incoming {
                    source,
                    relation: rel,
                };
                match universe[rel].kind {
                    Kind::Attack => attackers[target].push(incoming),
                    _ => supporters[target].push(incoming),
                }
            }
        }
        // Relation positions are visited in increasing order, so the
        // incoming lists are already sorted by relation id.

        Ok(Hafs {
            universe,
            endpoints,
            attackers,
            supporters,
        })
    }
}

/// Returns a relation on a cycle of the "relation mentions relation" graph.
fn find_definition_cycle(endpoints: &[Option<(usize, usize)>]) -> Option<usize> {
    #[derive(Copy, Clone, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let mut mark = vec![Mark::New; endpoints.len()];
    for root in 0..endpoints.len() {
        if mark[root] != Mark::New || endpoints[root].is_none() {
            continue;
        }
        // iterative DFS: (node, next child slot)
        let mut stack = vec![(root, 0usize)];
        mark[root] = Mark::Active;
        while let Some(&mut (node, ref mut slot)) = stack.last_mut() {
            let (s, t) = endpoints[node].expect("only relations are pushed");
            let children = [s, t];
            if *slot < 2 {
                let child = children[*slot];
                *slot += 1;
                if endpoints[child].is_none() {
                    continue;
                }
                match mark[child] {
                    Mark::Active => return Some(child),
                    Mark::New => {
                        mark[child] = Mark::Active;
                        stack.push((child, 0));
                    }
                    Mark::Done => {}
                }
            } else {
                mark[node] = Mark::Done;
                stack.pop();
            }
        }
    }
    None
}

/// A validated framework.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hafs {
    universe: Vec<ElementId>,
    endpoints: Vec<Option<(usize, usize)>>,
    attackers: Vec<Vec<Incoming>>,
    supporters: Vec<Vec<Incoming>>,
}

impl Hafs {
    pub fn builder() -> HafsBuilder {
        HafsBuilder::new()
    }

    /// The sorted universe `A ∪ R ∪ T`.
    pub fn universe(&self) -> &[ElementId] {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    pub fn element(&self, ix: usize) -> &ElementId {
        &self.universe[ix]
    }

    pub fn position(&self, id: &ElementId) -> Option<usize> {
        self.universe.binary_search(id).ok()
    }

    /// Looks an element up by its bare name (names are unique across kinds).
    pub fn position_by_name(&self, name: &str) -> Option<usize> {
        self.universe.iter().position(|e| e.name == name)
    }

    /// `(source, target)` of a relation element, `None` for arguments.
    pub fn endpoints(&self, ix: usize) -> Option<(usize, usize)> {
        self.endpoints[ix]
    }

    /// Attackers of `ix` as `(b, r_b^ix)` pairs, sorted by relation id.
    pub fn attackers(&self, ix: usize) -> &[Incoming] {
        &self.attackers[ix]
    }

    /// Supporters of `ix` as `(c, t_c^ix)` pairs, sorted by relation id.
    pub fn supporters(&self, ix: usize) -> &[Incoming] {
        &self.supporters[ix]
    }

    /// `true` when the element has neither attackers nor supporters.
    pub fn is_unrelated(&self, ix: usize) -> bool {
        self.attackers[ix].is_empty() && self.supporters[ix].is_empty()
    }

    pub fn arguments(&self) -> impl Iterator<Item = &ElementId> + '_ {
        self.universe.iter().filter(|e| e.kind == Kind::Argument)
    }

    /// All relations of one kind, in id order.
    pub fn relations_of(&self, kind: Kind) -> impl Iterator<Item = Relation> + '_ {
        self.universe
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.kind == kind && kind != Kind::Argument)
            .map(move |(ix, e)| {
                let (s, t) = self.endpoints[ix].expect("relation element");
                Relation {
                    id: e.clone(),
                    source: self.universe[s].clone(),
                    target: self.universe[t].clone(),
                }
            })
    }

    pub fn attacks(&self) -> impl Iterator<Item = Relation> + '_ {
        self.relations_of(Kind::Attack)
    }

    pub fn supports(&self) -> impl Iterator<Item = Relation> + '_ {
        self.relations_of(Kind::Support)
    }

    /// Positions of all support elements.
    pub fn support_positions(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&ix| self.universe[ix].kind == Kind::Support)
    }

    /// Reconstructs a builder holding the same declarations.
    pub fn to_builder(&self) -> HafsBuilder {
        let mut b = HafsBuilder::new();
        for (ix, e) in self.universe.iter().enumerate() {
            match (e.kind, self.endpoints[ix]) {
                (Kind::Argument, _) => {
                    b.argument(e.name.clone());
                }
                (kind, Some((s, t))) => {
                    let (s, t) = (self.universe[s].name.clone(), self.universe[t].name.clone());
                    if kind == Kind::Attack {
                        b.attack(e.name.clone(), s, t);
                    } else {
                        b.support(e.name.clone(), s, t);
                    }
                }
                (_, None) => unreachable!("relations always have endpoints"),
            }
        }
        b
    }

    /// `true` iff the graph of support edges (source -> target) has no cycle.
    pub fn is_support_acyclic(&self) -> bool {
        let n = self.len();
        let mut succ = vec![Vec::new(); n];
        for t in self.support_positions() {
            let (s, d) = self.endpoints[t].expect("support element");
            succ[s].push(d);
        }
        // 0 = unvisited, 1 = on stack, 2 = finished
        let mut state = vec![0u8; n];
        for root in 0..n {
            if state[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            state[root] = 1;
            while let Some(&mut (node, ref mut next)) = stack.last_mut() {
                if let Some(&child) = succ[node].get(*next) {
                    *next += 1;
                    match state[child] {
                        1 => return false,
                        0 => {
                            state[child] = 1;
                            stack.push((child, 0));
                        }
                        _ => {}
                    }
                } else {
                    state[node] = 2;
                    stack.pop();
                }
            }
        }
        true
    }

    /// Stable content digest (hex SHA-256 of the canonical text form).
    pub fn digest(&self) -> String {
        use core::fmt::Write;
        use sha2::{Digest, Sha256};
        let hash = Sha256::digest(self.to_string().as_bytes());
        let mut out = String::with_capacity(64);
        for byte in hash {
            let _ = write!(out, "{byte:02x}");
        }
        out
    }
}

impl fmt::Display for Hafs {
    /// Canonical text form: arguments, attacks, supports, each sorted by id.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (ix, e) in self.universe.iter().enumerate() {
            match self.endpoints[ix] {
                None => writeln!(f, "arg({}).", e.name)?,
                Some((s, t)) => writeln!(
                    f,
                    "{}({},{},{}).",
                    if e.kind == Kind::Attack { "att" } else { "supp" },
                    e.name,
                    self.universe[s].name,
                    self.universe[t].name
                )?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("a support chain needs at least one edge")]
    Empty,
    #[error("element at position {0} is not a support")]
    NotASupport(usize),
    #[error("edge {0} does not end where edge {next} starts", next = .0 + 1)]
    Unlinked(usize),
}

/// Support edges `[(g_n, g_{n-1}), ..., (g_1, a)]`, each given by the
/// position of its support element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportChain {
    edges: Vec<usize>,
    nodes: Vec<usize>,
}

impl SupportChain {
    pub fn new(h: &Hafs, edges: Vec<usize>) -> Result<Self, ChainError> {
        if edges.is_empty() {
            return Err(ChainError::Empty);
        }
        let mut nodes = Vec::with_capacity(edges.len() + 1);
        for (i, &e) in edges.iter().enumerate() {
            if h.element(e).kind != Kind::Support {
                return Err(ChainError::NotASupport(e));
            }
            let (s, t) = h.endpoints(e).expect("support element");
            if i == 0 {
                nodes.push(s);
            } else if *nodes.last().expect("non-empty") != s {
                return Err(ChainError::Unlinked(i - 1));
            }
            nodes.push(t);
        }
        Ok(SupportChain { edges, nodes })
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    /// `[g_n, ..., g_1, a]`
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    /// The chain's first source `g_n`.
    pub fn head(&self) -> usize {
        self.nodes[0]
    }

    /// The supported element `a`.
    pub fn tail(&self) -> usize {
        *self.nodes.last().expect("non-empty")
    }

    /// `true` iff all nodes are pairwise distinct.
    pub fn is_acyclic(&self) -> bool {
        let set: BTreeSet<usize> = self.nodes.iter().copied().collect();
        set.len() == self.nodes.len()
    }
}
