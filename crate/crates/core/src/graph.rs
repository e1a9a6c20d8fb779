//! Finite simplicial graphs over string-labelled vertices.
//!
//! Vertices are kept in lexicographic order and edges are stored as index
//! pairs `(i, j)` with `i < j`, so two graphs compare equal exactly when they
//! have the same labelled vertex and edge sets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Subset of the vertices of some reference graph.
pub type VertexSet = BTreeSet<String>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),
    #[error("edge mentions unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex identifier `{0}`")]
    DuplicateVertex(String),
    #[error("vertex identifier sets overlap at `{0}`")]
    Overlap(String),
    #[error("{family} needs n >= {min}, got {n}")]
    TooSmall {
        family: &'static str,
        min: usize,
        n: usize,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A finite undirected graph with no loops and no multiple edges.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplicialGraph {
    vertices: Vec<String>,
    edges: BTreeSet<(usize, usize)>,
}

impl SimplicialGraph {
    /// Validates and builds a graph. Duplicate edges collapse and `(a, b)` is
    /// the same edge as `(b, a)`.
    pub fn new<V, E, S>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut seen = BTreeSet::new();
        for v in vertices {
            let v = v.as_ref().to_string();
            if !seen.insert(v.clone()) {
                return Err(GraphError::DuplicateVertex(v));
            }
        }
        let vertices: Vec<String> = seen.into_iter().collect();
        let index: BTreeMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut edge_set = BTreeSet::new();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            if a == b {
                return Err(GraphError::SelfLoop(a.to_string()));
            }
            let ia = *index
                .get(a)
                .ok_or_else(|| GraphError::UnknownVertex(a.to_string()))?;
            let ib = *index
                .get(b)
                .ok_or_else(|| GraphError::UnknownVertex(b.to_string()))?;
            edge_set.insert((ia.min(ib), ia.max(ib)));
        }
        Ok(Self {
            vertices,
            edges: edge_set,
        })
    }

    /// The graph with no vertices.
    pub fn empty() -> Self {
        Self {
            vertices: Vec::new(),
            edges: BTreeSet::new(),
        }
    }

    pub(crate) fn from_parts(vertices: Vec<String>, edges: BTreeSet<(usize, usize)>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|&(i, j)| i < j && j < vertices.len()));
        Self { vertices, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex labels in lexicographic order; a label's position is its index.
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Edges as label pairs, each pair ordered and the list sorted.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges
            .iter()
            .map(|&(i, j)| (self.vertices[i].as_str(), self.vertices[j].as_str()))
    }

    /// Edges as index pairs `(i, j)` with `i < j`.
    pub fn edge_indices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn index_of(&self, v: &str) -> Option<usize> {
        self.vertices
            .binary_search_by(|probe| probe.as_str().cmp(v))
            .ok()
    }

    pub fn contains(&self, v: &str) -> bool {
        self.index_of(v).is_some()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    pub fn adjacent_labels(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.adjacent(i, j),
            _ => false,
        }
    }

    pub fn degree(&self, i: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == i || b == i)
            .count()
    }

    /// Neighbour indices of every vertex.
    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    /// Dense row-major adjacency matrix.
    pub fn adjacency_matrix(&self) -> Vec<bool> {
        let n = self.vertices.len();
        let mut m = vec![false; n * n];
        for &(i, j) in &self.edges {
            m[i * n + j] = true;
            m[j * n + i] = true;
        }
        m
    }

    fn check_disjoint(&self, other: &Self) -> Result<(), GraphError> {
        match other.vertices.iter().find(|v| self.contains(v)) {
            Some(v) => Err(GraphError::Overlap(v.clone())),
            None => Ok(()),
        }
    }

    fn labelled_edges(&self) -> impl Iterator<Item = (String, String)> + '_ {
        self.edges().map(|(a, b)| (a.to_string(), b.to_string()))
    }
}

/// Vertices of degree exactly one.
pub fn pins(g: &SimplicialGraph) -> VertexSet {
    let mut degree = vec![0usize; g.vertex_count()];
    for (i, j) in g.edge_indices() {
        degree[i] += 1;
        degree[j] += 1;
    }
    degree
        .iter()
        .enumerate()
        .filter(|(_, &d)| d == 1)
        .map(|(i, _)| g.vertices[i].clone())
        .collect()
}

/// Adjoins `g2` to `g` and joins every vertex of `g2` to `v`.
pub fn pin_graph(
    g: &SimplicialGraph,
    v: &str,
    g2: &SimplicialGraph,
) -> Result<SimplicialGraph, GraphError> {
    if !g.contains(v) {
        return Err(GraphError::UnknownVertex(v.to_string()));
    }
    g.check_disjoint(g2)?;
    let vertices = g.vertices.iter().chain(&g2.vertices).cloned();
    let pin_edges = g2.vertices.iter().map(|w| (w.clone(), v.to_string()));
    let edges = g
        .labelled_edges()
        .chain(g2.labelled_edges())
        .chain(pin_edges)
        .collect::<Vec<_>>();
    SimplicialGraph::new(vertices, edges)
}

pub fn disjoint_union(
    g: &SimplicialGraph,
    g2: &SimplicialGraph,
) -> Result<SimplicialGraph, GraphError> {
    g.check_disjoint(g2)?;
    let vertices = g.vertices.iter().chain(&g2.vertices).cloned();
    let edges = g
        .labelled_edges()
        .chain(g2.labelled_edges())
        .collect::<Vec<_>>();
    SimplicialGraph::new(vertices, edges)
}

pub fn induced_subgraph(g: &SimplicialGraph, s: &VertexSet) -> Result<SimplicialGraph, GraphError> {
    let mut keep = Vec::with_capacity(s.len());
    for v in s {
        keep.push(
            g.index_of(v)
                .ok_or_else(|| GraphError::UnknownVertex(v.clone()))?,
        );
    }
    // `s` iterates in lexicographic order, so `keep` is ascending and the
    // new index of an old vertex is its position in `keep`.
    let mut remap = vec![usize::MAX; g.vertex_count()];
    for (new, &old) in keep.iter().enumerate() {
        remap[old] = new;
    }
    let edges = g
        .edges
        .iter()
        .filter(|&&(i, j)| remap[i] != usize::MAX && remap[j] != usize::MAX)
        .map(|&(i, j)| (remap[i], remap[j]))
        .collect();
    Ok(SimplicialGraph::from_parts(
        s.iter().cloned().collect(),
        edges,
    ))
}

/// Connected components, ordered by their least vertex.
pub fn connected_components(g: &SimplicialGraph) -> Vec<VertexSet> {
    let adj = g.adjacency_lists();
    let mut seen = vec![false; g.vertex_count()];
    let mut out = Vec::new();
    for start in 0..g.vertex_count() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut comp = VertexSet::new();
        while let Some(u) = stack.pop() {
            comp.insert(g.vertices[u].clone());
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// `K_n` on vertices `1..=n`.
pub fn complete_graph(n: usize) -> Result<SimplicialGraph, GraphError> {
    if n < 1 {
        return Err(GraphError::TooSmall {
            family: "complete graph",
            min: 1,
            n,
        });
    }
    let vs = labels(n);
    let edges: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| (vs[i].clone(), vs[j].clone()))
        .collect();
    SimplicialGraph::new(vs.clone(), edges)
}

/// Path `1 - 2 - ... - n`.
pub fn path_graph(n: usize) -> Result<SimplicialGraph, GraphError> {
    if n < 1 {
        return Err(GraphError::TooSmall {
            family: "path graph",
            min: 1,
            n,
        });
    }
    let vs = labels(n);
    let edges: Vec<_> = vs
        .windows(2)
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect();
    SimplicialGraph::new(vs.clone(), edges)
}

/// Cycle `1 - 2 - ... - n - 1`.
pub fn cycle_graph(n: usize) -> Result<SimplicialGraph, GraphError> {
    if n < 3 {
        return Err(GraphError::TooSmall {
            family: "cycle graph",
            min: 3,
            n,
        });
    }
    let vs = labels(n);
    let edges: Vec<_> = (0..n)
        .map(|i| (vs[i].clone(), vs[(i + 1) % n].clone()))
        .collect();
    SimplicialGraph::new(vs.clone(), edges)
}

/// Star on `n` vertices: centre `1` joined to leaves `2..=n`.
pub fn star_graph(n: usize) -> Result<SimplicialGraph, GraphError> {
    if n < 1 {
        return Err(GraphError::TooSmall {
            family: "star graph",
            min: 1,
            n,
        });
    }
    let vs = labels(n);
    let edges: Vec<_> = vs[1..].iter().map(|w| (vs[0].clone(), w.clone())).collect();
    SimplicialGraph::new(vs.clone(), edges)
}

/// Edgeless graph on `1..=n`.
pub fn edgeless_graph(n: usize) -> SimplicialGraph {
    SimplicialGraph::new(labels(n), Vec::<(String, String)>::new()).expect("distinct labels")
}

impl fmt::Display for SimplicialGraph {
    /// Line-oriented text form: vertices in lexicographic order, then edges in
    /// lexicographic pair order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            writeln!(f, "vertex {v}")?;
        }
        for (a, b) in self.edges() {
            writeln!(f, "edge {a} {b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SimplicialGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(
            f,
            "Graph{{{}; {}}}",
            self.vertices.join(","),
            edges.join(",")
        )
    }
}

impl FromStr for SimplicialGraph {
    type Err = GraphError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut vertices = BTreeSet::new();
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let parse_err = |msg: String| GraphError::Parse {
                line: lineno + 1,
                msg,
            };
            match tokens.as_slice() {
                [] => {}
                ["vertex", v] => {
                    vertices.insert(v.to_string());
                }
                ["edge", a, b] => {
                    if a == b {
                        return Err(parse_err(format!("self-loop at vertex `{a}`")));
                    }
                    vertices.insert(a.to_string());
                    vertices.insert(b.to_string());
                    edges.push((a.to_string(), b.to_string()));
                }
                ["vertex", ..] => {
                    return Err(parse_err("expected `vertex <id>`".into()));
                }
                ["edge", ..] => {
                    return Err(parse_err("expected `edge <id> <id>`".into()));
                }
                [other, ..] => {
                    return Err(parse_err(format!("unknown directive `{other}`")));
                }
            }
        }
        SimplicialGraph::new(vertices, edges)
    }
}
