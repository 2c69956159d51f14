//! Finite fuzzy labeled graphs and their text format.
//!
//! ```text
//! # comment
//! v a                      # vertex `a`, empty label
//! v b p:0.5 q:1            # vertex `b`, label {p ↦ 0.5, q ↦ 1}
//! e a r b 0.7              # edge a --r--> b with degree 0.7
//! ```
//!
//! Vertices must be declared before edges mention them. Edge degrees must be
//! positive; a missing edge already means degree 0.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::degree::{Degree, DegreeError};

/// Index of a vertex in declaration order.
pub type VertexIdx = usize;
/// Index of an edge label in sorted label order.
pub type LabelIdx = usize;
/// Index of a stored edge in input order.
pub type EdgeIdx = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Degree { line: usize, source: DegreeError },
    #[error("line {line}: unknown vertex `{id}`")]
    UnknownVertex { line: usize, id: String },
    #[error("line {line}: vertex `{id}` declared twice")]
    DuplicateVertex { line: usize, id: String },
    #[error("line {line}: duplicate edge {origin} {label} {dest}")]
    DuplicateEdge {
        line: usize,
        origin: String,
        label: String,
        dest: String,
    },
    #[error("line {line}: edge {origin} {label} {dest} has degree 0")]
    ZeroDegreeEdge {
        line: usize,
        origin: String,
        label: String,
        dest: String,
    },
    #[error("graph has no vertices")]
    NoVertices,
}

/// Fuzzy vertex label: a finite map from symbols to positive degrees.
/// Symbols that are absent have degree 0.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexLabel(BTreeMap<String, Degree>);

impl VertexLabel {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `symbol` to `degree`; a zero degree removes the symbol.
    pub fn set(&mut self, symbol: impl Into<String>, degree: Degree) {
        let symbol = symbol.into();
        if degree.is_zero() {
            self.0.remove(&symbol);
        } else {
            self.0.insert(symbol, degree);
        }
    }

    pub fn get(&self, symbol: &str) -> Degree {
        self.0.get(symbol).copied().unwrap_or(Degree::ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Degree)> {
        self.0.iter().map(|(s, d)| (s.as_str(), *d))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub origin: VertexIdx,
    pub label: LabelIdx,
    pub dest: VertexIdx,
    pub degree: Degree,
}

/// Compressed adjacency keyed by `(vertex, label)`.
#[derive(Debug, Clone, Default)]
struct Adjacency {
    offsets: Vec<usize>,
    edges: Vec<EdgeIdx>,
}

impl Adjacency {
    fn build(n: usize, labels: usize, edges: &[Edge], key: impl Fn(&Edge) -> VertexIdx) -> Self {
        let slots = n * labels;
        let mut offsets = vec![0usize; slots + 1];
        for e in edges {
            offsets[key(e) * labels + e.label + 1] += 1;
        }
        for i in 0..slots {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut list = vec![0; edges.len()];
        for (idx, e) in edges.iter().enumerate() {
            let slot = key(e) * labels + e.label;
            list[cursor[slot]] = idx;
            cursor[slot] += 1;
        }
        Adjacency {
            offsets,
            edges: list,
        }
    }

    fn get(&self, slot: usize) -> &[EdgeIdx] {
        &self.edges[self.offsets[slot]..self.offsets[slot + 1]]
    }
}

/// An immutable finite fuzzy labeled graph `⟨V, E, L, ΣV, ΣE⟩`.
///
/// Only edges with positive degree are stored, at most one per
/// `(origin, label, dest)` triple. Edge labels are interned in sorted order,
/// so label indices iterate alphabetically.
#[derive(Debug, Clone)]
pub struct FuzzyGraph {
    names: Vec<String>,
    index: HashMap<String, VertexIdx>,
    vertex_labels: Vec<VertexLabel>,
    edge_labels: Vec<String>,
    edges: Vec<Edge>,
    degree_of: HashMap<(VertexIdx, LabelIdx, VertexIdx), Degree>,
    outgoing: Adjacency,
    incoming: Adjacency,
}

/// Incremental constructor for [`FuzzyGraph`], shared by the parser and the
/// random generator.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    names: Vec<String>,
    index: HashMap<String, VertexIdx>,
    vertex_labels: Vec<VertexLabel>,
    raw_edges: Vec<(VertexIdx, String, VertexIdx, Degree)>,
    seen: BTreeSet<(VertexIdx, String, VertexIdx)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildError {
    DuplicateVertex,
    UnknownVertex(String),
    DuplicateEdge,
    ZeroDegree,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: &str, label: VertexLabel) -> Result<VertexIdx, BuildError> {
        if self.index.contains_key(id) {
            return Err(BuildError::DuplicateVertex);
        }
        let idx = self.names.len();
        self.names.push(id.to_owned());
        self.index.insert(id.to_owned(), idx);
        self.vertex_labels.push(label);
        Ok(idx)
    }

    pub fn add_edge(
        &mut self,
        origin: &str,
        label: &str,
        dest: &str,
        degree: Degree,
    ) -> Result<(), BuildError> {
        let o = *self
            .index
            .get(origin)
            .ok_or_else(|| BuildError::UnknownVertex(origin.to_owned()))?;
        let d = *self
            .index
            .get(dest)
            .ok_or_else(|| BuildError::UnknownVertex(dest.to_owned()))?;
        if degree.is_zero() {
            return Err(BuildError::ZeroDegree);
        }
        if !self.seen.insert((o, label.to_owned(), d)) {
            return Err(BuildError::DuplicateEdge);
        }
        self.raw_edges.push((o, label.to_owned(), d, degree));
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn build(self) -> Result<FuzzyGraph, GraphError> {
        if self.names.is_empty() {
            return Err(GraphError::NoVertices);
        }
        let edge_labels: Vec<String> = self
            .raw_edges
            .iter()
            .map(|(_, l, _, _)| l.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let label_index: HashMap<&str, LabelIdx> = edge_labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let edges: Vec<Edge> = self
            .raw_edges
            .iter()
            .map(|(o, l, d, deg)| Edge {
                origin: *o,
                label: label_index[l.as_str()],
                dest: *d,
                degree: *deg,
            })
            .collect();
        let n = self.names.len();
        let labels = edge_labels.len();
        let degree_of = edges
            .iter()
            .map(|e| ((e.origin, e.label, e.dest), e.degree))
            .collect();
        let outgoing = Adjacency::build(n, labels, &edges, |e| e.origin);
        let incoming = Adjacency::build(n, labels, &edges, |e| e.dest);
        Ok(FuzzyGraph {
            names: self.names,
            index: self.index,
            vertex_labels: self.vertex_labels,
            edge_labels,
            edges,
            degree_of,
            outgoing,
            incoming,
        })
    }
}

impl FuzzyGraph {
    /// Parses the line-oriented text format described in the module docs.
    pub fn parse(text: &str) -> Result<FuzzyGraph, GraphError> {
        let mut builder = GraphBuilder::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = content.split_whitespace();
            let Some(kind) = tokens.next() else {
                continue;
            };
            let syntax = |message: String| GraphError::Syntax { line, message };
            let degree = |text: &str| {
                text.parse::<Degree>()
                    .map_err(|source| GraphError::Degree { line, source })
            };
            match kind {
                "v" => {
                    let id = tokens
                        .next()
                        .ok_or_else(|| syntax("vertex line needs an id".into()))?;
                    let mut label = VertexLabel::new();
                    let mut symbols = BTreeSet::new();
                    for item in tokens {
                        let (symbol, value) = item.rsplit_once(':').ok_or_else(|| {
                            syntax(format!("expected <symbol>:<degree>, found `{item}`"))
                        })?;
                        if symbol.is_empty() {
                            return Err(syntax(format!("empty label symbol in `{item}`")));
                        }
                        if !symbols.insert(symbol) {
                            return Err(syntax(format!("label symbol `{symbol}` repeated")));
                        }
                        label.set(symbol, degree(value)?);
                    }
                    builder
                        .add_vertex(id, label)
                        .map_err(|_| GraphError::DuplicateVertex {
                            line,
                            id: id.to_owned(),
                        })?;
                }
                "e" => {
                    let fields: Vec<&str> = tokens.collect();
                    let [origin, label, dest, value] = fields[..] else {
                        return Err(syntax(format!(
                            "edge line needs 4 fields (origin label dest degree), found {}",
                            fields.len()
                        )));
                    };
                    let value = degree(value)?;
                    builder
                        .add_edge(origin, label, dest, value)
                        .map_err(|err| match err {
                            BuildError::UnknownVertex(id) => GraphError::UnknownVertex { line, id },
                            BuildError::ZeroDegree => GraphError::ZeroDegreeEdge {
                                line,
                                origin: origin.into(),
                                label: label.into(),
                                dest: dest.into(),
                            },
                            BuildError::DuplicateEdge | BuildError::DuplicateVertex => {
                                GraphError::DuplicateEdge {
                                    line,
                                    origin: origin.into(),
                                    label: label.into(),
                                    dest: dest.into(),
                                }
                            }
                        })?;
                }
                other => {
                    return Err(syntax(format!("unknown line kind `{other}`")));
                }
            }
        }
        builder.build()
    }

    /// Serializes back into the text format. Vertices and edges keep their
    /// input order, so `parse(to_text(g))` reproduces `g`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (idx, name) in self.names.iter().enumerate() {
            out.push_str("v ");
            out.push_str(name);
            for (symbol, degree) in self.vertex_labels[idx].iter() {
                let _ = write!(out, " {symbol}:{degree}");
            }
            out.push('\n');
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "e {} {} {} {}",
                self.names[e.origin], self.edge_labels[e.label], self.names[e.dest], e.degree
            );
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn label_count(&self) -> usize {
        self.edge_labels.len()
    }

    /// Number of distinct positive edge degrees.
    pub fn distinct_degree_count(&self) -> usize {
        self.edges
            .iter()
            .map(|e| e.degree)
            .collect::<BTreeSet<_>>()
            .len()
    }

    pub fn vertex_name(&self, v: VertexIdx) -> &str {
        &self.names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_index(&self, id: &str) -> Option<VertexIdx> {
        self.index.get(id).copied()
    }

    pub fn vertex_label(&self, v: VertexIdx) -> &VertexLabel {
        &self.vertex_labels[v]
    }

    pub fn edge_label(&self, r: LabelIdx) -> &str {
        &self.edge_labels[r]
    }

    pub fn edge_labels(&self) -> &[String] {
        &self.edge_labels
    }

    pub fn label_index(&self, label: &str) -> Option<LabelIdx> {
        self.edge_labels.iter().position(|l| l == label)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeIdx) -> &Edge {
        &self.edges[e]
    }

    /// `E(x, r, y)`, zero when no edge is stored.
    pub fn degree(&self, x: VertexIdx, r: LabelIdx, y: VertexIdx) -> Degree {
        self.degree_of
            .get(&(x, r, y))
            .copied()
            .unwrap_or(Degree::ZERO)
    }

    /// Stored `r`-edges leaving `x`.
    pub fn outgoing(&self, x: VertexIdx, r: LabelIdx) -> &[EdgeIdx] {
        self.outgoing.get(x * self.label_count() + r)
    }

    /// Stored `r`-edges entering `y`.
    pub fn incoming(&self, y: VertexIdx, r: LabelIdx) -> &[EdgeIdx] {
        self.incoming.get(y * self.label_count() + r)
    }

    /// `sup E(x, r, Y)` where `Y` is given by a membership test. Returns 0
    /// when `x` has no positive `r`-edge into `Y`.
    pub fn sup_degree(
        &self,
        x: VertexIdx,
        r: LabelIdx,
        in_y: impl Fn(VertexIdx) -> bool,
    ) -> Degree {
        self.outgoing(x, r)
            .iter()
            .map(|&e| &self.edges[e])
            .filter(|e| in_y(e.dest))
            .map(|e| e.degree)
            .max()
            .unwrap_or(Degree::ZERO)
    }

    /// `|{y ∈ Y : E(x, r, y) = d}|` for `d > 0`.
    pub fn count_at_degree(
        &self,
        x: VertexIdx,
        r: LabelIdx,
        d: Degree,
        in_y: impl Fn(VertexIdx) -> bool,
    ) -> usize {
        self.outgoing(x, r)
            .iter()
            .map(|&e| &self.edges[e])
            .filter(|e| e.degree == d && in_y(e.dest))
            .count()
    }

    /// Degree histogram of the `r`-edges from `x` into `Y`.
    pub fn degree_histogram(
        &self,
        x: VertexIdx,
        r: LabelIdx,
        in_y: impl Fn(VertexIdx) -> bool,
    ) -> BTreeMap<Degree, usize> {
        let mut hist = BTreeMap::new();
        for e in self.outgoing(x, r).iter().map(|&e| &self.edges[e]) {
            if in_y(e.dest) {
                *hist.entry(e.degree).or_insert(0) += 1;
            }
        }
        hist
    }
}

impl PartialEq for FuzzyGraph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
            && self.vertex_labels == other.vertex_labels
            && self.edge_labels == other.edge_labels
            && self.edges == other.edges
    }
}

impl Eq for FuzzyGraph {}
