//! Uniform hypergraphs: validation, degrees, connected components and
//! induced sub-hypergraphs.
//!
//! Vertices are 0-based inside the crate. Every external format (JSON, the
//! plain-text edge list, reports) uses 1-based ids.

use std::collections::BTreeSet;
use std::io::Read;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HypergraphError {
    #[error("uniformity must be at least 2, got k = {0}")]
    InvalidUniformity(usize),
    #[error("edge {edge:?} has {found} distinct vertices, expected k = {expected}")]
    NonUniformEdge {
        edge: Vec<usize>,
        found: usize,
        expected: usize,
    },
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),
    #[error("vertex id {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A simple undirected k-uniform hypergraph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

/// On-disk JSON layout, 1-based.
#[derive(Debug, Serialize, Deserialize)]
pub struct HypergraphFile {
    pub k: usize,
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Builds a hypergraph from 1-based edge lists.
    pub fn from_one_based(
        k: usize,
        n: usize,
        edges: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<Self, HypergraphError> {
        let mut zero_based = Vec::new();
        for edge in edges {
            if let Some(&bad) = edge.iter().find(|&&v| v == 0 || v > n) {
                return Err(HypergraphError::VertexOutOfRange { vertex: bad, n });
            }
            zero_based.push(edge.into_iter().map(|v| v - 1).collect());
        }
        Self::new(k, n, zero_based)
    }

    /// Builds a hypergraph from 0-based edge lists.
    pub fn new(k: usize, n: usize, edges: Vec<Vec<usize>>) -> Result<Self, HypergraphError> {
        if k < 2 {
            return Err(HypergraphError::InvalidUniformity(k));
        }
        let mut seen = BTreeSet::new();
        let mut stored = Vec::with_capacity(edges.len());
        for edge in edges {
            if let Some(&bad) = edge.iter().find(|&&v| v >= n) {
                return Err(HypergraphError::VertexOutOfRange { vertex: bad + 1, n });
            }
            let set: BTreeSet<usize> = edge.iter().copied().collect();
            if set.len() != k || edge.len() != k {
                return Err(HypergraphError::NonUniformEdge {
                    edge: edge.iter().map(|v| v + 1).collect(),
                    found: set.len(),
                    expected: k,
                });
            }
            let sorted: Vec<usize> = set.into_iter().collect();
            if !seen.insert(sorted.clone()) {
                return Err(HypergraphError::DuplicateEdge(
                    sorted.iter().map(|v| v + 1).collect(),
                ));
            }
            stored.push(sorted);
        }
        Ok(Self {
            k,
            n,
            edges: stored,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as sorted 0-based vertex lists, in input order.
    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Per-vertex lists of incident edge indices.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (idx, edge) in self.edges.iter().enumerate() {
            for &v in edge {
                inc[v].push(idx);
            }
        }
        inc
    }

    pub fn to_file(&self) -> HypergraphFile {
        HypergraphFile {
            k: self.k,
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| e.iter().map(|v| v + 1).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("hypergraph serializes")
    }

    /// Plain-text form: `k n` header, one space-separated edge per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.k, self.n);
        for edge in &self.edges {
            let ids: Vec<String> = edge.iter().map(|v| (v + 1).to_string()).collect();
            out.push_str(&ids.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Reads either format; JSON is detected by a leading `{`.
pub fn load_hypergraph<R: Read>(mut source: R) -> Result<Hypergraph, HypergraphError> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    if text.trim_start().starts_with('{') {
        parse_json(&text)
    } else {
        parse_text(&text)
    }
}

pub fn parse_json(text: &str) -> Result<Hypergraph, HypergraphError> {
    let file: HypergraphFile =
        serde_json::from_str(text).map_err(|e| HypergraphError::Parse(e.to_string()))?;
    Hypergraph::from_one_based(file.k, file.n, file.edges)
}

/// Blank lines and lines starting with `#` are ignored.
pub fn parse_text(text: &str) -> Result<Hypergraph, HypergraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let parse_ids = |lineno: usize, line: &str| -> Result<Vec<usize>, HypergraphError> {
        line.split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| {
                    HypergraphError::Parse(format!("line {lineno}: invalid integer {tok:?}"))
                })
            })
            .collect()
    };
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| HypergraphError::Parse("empty input".into()))?;
    let header = parse_ids(lineno, header)?;
    let [k, n] = header[..] else {
        return Err(HypergraphError::Parse(format!(
            "line {lineno}: header must be \"k n\""
        )));
    };
    let mut edges = Vec::new();
    for (lineno, line) in lines {
        edges.push(parse_ids(lineno, line)?);
    }
    Hypergraph::from_one_based(k, n, edges)
}

/// Number of edges containing each vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct DegreeVector(pub Vec<usize>);

impl DegreeVector {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.0[v] == 0
    }
}

pub fn degrees(h: &Hypergraph) -> DegreeVector {
    let mut d = vec![0; h.n()];
    for edge in h.edges() {
        for &v in edge {
            d[v] += 1;
        }
    }
    DegreeVector(d)
}

/// One connected component with the indices of its induced edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Sorted 0-based vertex ids.
    pub vertices: Vec<usize>,
    /// Indices into [`Hypergraph::edges`].
    pub edges: Vec<usize>,
}

impl Component {
    /// An isolated vertex.
    pub fn is_singleton(&self) -> bool {
        self.vertices.len() == 1 && self.edges.is_empty()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Position of a global vertex within `vertices`.
    pub fn local_index(&self, v: usize) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecomposition {
    /// Ordered by smallest vertex.
    pub components: Vec<Component>,
}

impl ComponentDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn singleton_count(&self) -> usize {
        self.components.iter().filter(|c| c.is_singleton()).count()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Component> {
        self.components.iter()
    }
}

struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Maximal connected vertex sets; isolated vertices are singleton components.
pub fn connected_components(h: &Hypergraph) -> ComponentDecomposition {
    let mut dsu = DisjointSets::new(h.n());
    for edge in h.edges() {
        for w in edge.windows(2) {
            dsu.union(w[0], w[1]);
        }
    }
    let mut slot_of_root = vec![usize::MAX; h.n()];
    let mut components: Vec<Component> = Vec::new();
    for v in 0..h.n() {
        let root = dsu.find(v);
        if slot_of_root[root] == usize::MAX {
            slot_of_root[root] = components.len();
            components.push(Component {
                vertices: Vec::new(),
                edges: Vec::new(),
            });
        }
        components[slot_of_root[root]].vertices.push(v);
    }
    for (idx, edge) in h.edges().iter().enumerate() {
        let root = dsu.find(edge[0]);
        components[slot_of_root[root]].edges.push(idx);
    }
    ComponentDecomposition { components }
}

/// Sub-hypergraph induced by a vertex set, relabeled to `0..|S|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubhypergraph {
    pub graph: Hypergraph,
    /// `vertex_map[new] = original`.
    pub vertex_map: Vec<usize>,
}

impl InducedSubhypergraph {
    pub fn original(&self, local: usize) -> usize {
        self.vertex_map[local]
    }
}

/// Keeps exactly the edges contained in `subset` (0-based ids).
pub fn induced_subhypergraph(
    h: &Hypergraph,
    subset: &[usize],
) -> Result<InducedSubhypergraph, HypergraphError> {
    if let Some(&bad) = subset.iter().find(|&&v| v >= h.n()) {
        return Err(HypergraphError::VertexOutOfRange {
            vertex: bad + 1,
            n: h.n(),
        });
    }
    let vertex_map: Vec<usize> = subset
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut local = vec![usize::MAX; h.n()];
    for (i, &v) in vertex_map.iter().enumerate() {
        local[v] = i;
    }
    let edges = h
        .edges()
        .iter()
        .filter(|e| e.iter().all(|&v| local[v] != usize::MAX))
        .map(|e| e.iter().map(|&v| local[v]).collect())
        .collect();
    let graph = Hypergraph::new(h.k(), vertex_map.len(), edges)?;
    Ok(InducedSubhypergraph { graph, vertex_map })
}
