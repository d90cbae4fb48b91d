//! Divisors on metric graphs with positive integer edge lengths.
//!
//! A metric graph is studied through a model at level `N`: every edge of
//! length `L` is replaced by a path of `N·L` unit edges, and divisors live
//! on the vertices of that combinatorial graph. Principal divisors are the
//! integer image of its Laplacian, i.e. the results of chip-firing.

mod enumerate;
mod iso;
mod laplacian;
mod rank;
mod reduce;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

pub use enumerate::small_multigraphs;
pub use iso::graph_isomorphic;
pub use laplacian::laplacian_equivalent;
pub use rank::{gonality, rank, rank_at_least, GonalityResult};
pub use reduce::{dhar_burn, divisors_equivalent, reduce, reduce_with, FiringStrategy};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("loop edge at {0:?}")]
    Loop(String),
    #[error("edge {0:?}-{1:?} has length zero")]
    ZeroLength(String, String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("subdivision level must be at least 1")]
    ZeroLevel,
    #[error("divisor is negative at {0:?}, away from the base vertex")]
    NegativeAwayFromBase(String),
    #[error("divisor has {got} coefficients, model has {expected} vertices")]
    SizeMismatch { expected: usize, got: usize },
    #[error("divisors have different degrees {0} and {1}")]
    DegreeMismatch(i64, i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub length: u64,
}

/// Connected loopless multigraph with labeled vertices and integer edge lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricGraph {
    labels: Vec<String>,
    edges: Vec<Edge>,
}

impl MetricGraph {
    pub fn new<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = (S, S, u64)>,
    ) -> Result<Self, GraphError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut indexed = Vec::new();
        for (a, b, len) in edges {
            let (a, b) = (a.into(), b.into());
            let u = *index.get(a.as_str()).ok_or_else(|| GraphError::UnknownVertex(a.clone()))?;
            let v = *index.get(b.as_str()).ok_or_else(|| GraphError::UnknownVertex(b.clone()))?;
            indexed.push((u, v, len));
        }
        Self::from_indices(labels, indexed)
    }

    pub fn from_indices(labels: Vec<String>, edges: Vec<(usize, usize, u64)>) -> Result<Self, GraphError> {
        if labels.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        let n = labels.len();
        let mut out = Vec::with_capacity(edges.len());
        for (u, v, length) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::UnknownVertex(format!("#{x}")));
                }
            }
            if u == v {
                return Err(GraphError::Loop(labels[u].clone()));
            }
            if length == 0 {
                return Err(GraphError::ZeroLength(labels[u].clone(), labels[v].clone()));
            }
            out.push(Edge { u, v, length });
        }
        let g = MetricGraph { labels, edges: out };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    fn is_connected(&self) -> bool {
        let n = self.labels.len();
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `|E| - |V| + 1`.
    pub fn first_betti_number(&self) -> usize {
        self.edges.len() + 1 - self.labels.len()
    }

    pub fn total_length(&self) -> u64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    /// Index of the vertex with the smallest label.
    pub fn base_vertex(&self) -> usize {
        (0..self.labels.len()).min_by(|&a, &b| self.labels[a].cmp(&self.labels[b])).expect("non-empty")
    }

    /// Graphviz rendering; an edge of length `L > 1` is drawn as a chain
    /// through `L - 1` point-shaped vertices.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n");
        for l in &self.labels {
            let _ = writeln!(s, "  {l:?};");
        }
        for (k, e) in self.edges.iter().enumerate() {
            let mut prev = self.labels[e.u].clone();
            for i in 1..e.length {
                let mid = format!("{}~{}#{k}/{i}", self.labels[e.u], self.labels[e.v]);
                let _ = writeln!(s, "  {mid:?} [shape=point];");
                let _ = writeln!(s, "  {prev:?} -- {mid:?};");
                prev = mid;
            }
            let _ = writeln!(s, "  {prev:?} -- {:?};", self.labels[e.v]);
        }
        s.push_str("}\n");
        s
    }
}

/// Path `v1 - v2 - ... - vr` with `i` parallel unit edges between `v(i-1)` and `vi`.
pub fn layered_path_graph(r: usize) -> MetricGraph {
    assert!(r >= 1, "need at least one vertex");
    let labels = (1..=r).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 2..=r {
        for _ in 0..i {
            edges.push((i - 2, i - 1, 1));
        }
    }
    MetricGraph::from_indices(labels, edges).expect("path is connected")
}

/// The unit-edge combinatorial graph of a metric graph at subdivision level `N`.
#[derive(Clone, Debug)]
pub struct Model {
    graph: MetricGraph,
    level: u64,
    labels: Vec<String>,
    /// Neighbors with edge multiplicities.
    adj: Vec<Vec<(usize, i64)>>,
    degree: Vec<i64>,
    base: usize,
}

/// Original vertices keep their indices; the `i`-th interior point of edge
/// `k = (u, v)` is labeled `u~v#k/i`.
pub fn expand_model(graph: &MetricGraph, level: u64) -> Result<Model, GraphError> {
    if level == 0 {
        return Err(GraphError::ZeroLevel);
    }
    let mut labels = graph.labels.clone();
    let mut pairs: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    let mut link = |a: usize, b: usize| *pairs.entry((a.min(b), a.max(b))).or_insert(0) += 1;
    for (k, e) in graph.edges.iter().enumerate() {
        let steps = level * e.length;
        let mut prev = e.u;
        for i in 1..steps {
            labels.push(format!("{}~{}#{k}/{i}", graph.labels[e.u], graph.labels[e.v]));
            let cur = labels.len() - 1;
            link(prev, cur);
            prev = cur;
        }
        link(prev, e.v);
    }
    let n = labels.len();
    let mut adj = vec![Vec::new(); n];
    for (&(a, b), &m) in &pairs {
        adj[a].push((b, m));
        adj[b].push((a, m));
    }
    let degree = adj.iter().map(|nb| nb.iter().map(|&(_, m)| m).sum()).collect();
    Ok(Model { graph: graph.clone(), level, labels, adj, degree, base: graph.base_vertex() })
}

impl Model {
    pub fn graph(&self) -> &MetricGraph {
        &self.graph
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, i64)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> i64 {
        self.degree[v]
    }

    /// Number of unit edges.
    pub fn edge_count(&self) -> usize {
        (self.degree.iter().sum::<i64>() / 2) as usize
    }

    /// The original vertex with the smallest label.
    pub fn base_vertex(&self) -> usize {
        self.base
    }

    /// The model as a metric graph with unit edges.
    pub fn to_graph(&self) -> MetricGraph {
        let mut edges = Vec::new();
        for a in 0..self.adj.len() {
            for &(b, m) in &self.adj[a] {
                if a < b {
                    edges.extend(std::iter::repeat_n((a, b, 1), m as usize));
                }
            }
        }
        MetricGraph::from_indices(self.labels.clone(), edges).expect("model of a connected graph")
    }

    /// BFS distance from `q` in unit edges.
    pub(crate) fn distances(&self, q: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.adj.len()];
        dist[q] = 0;
        let mut queue = VecDeque::from([q]);
        while let Some(x) = queue.pop_front() {
            for &(y, _) in &self.adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Fire every vertex of `set` `times` times: each sends one chip per edge leaving the set.
    pub fn fire(&self, d: &mut Divisor, set: &[bool], times: i64) {
        for v in 0..self.adj.len() {
            if !set[v] {
                continue;
            }
            for &(w, m) in &self.adj[v] {
                if !set[w] {
                    d.0[v] -= m * times;
                    d.0[w] += m * times;
                }
            }
        }
    }
}

/// Integer coefficients indexed by model vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor(pub Vec<i64>);

impl Divisor {
    pub fn zero(model: &Model) -> Self {
        Divisor(vec![0; model.vertex_count()])
    }

    /// Sum of unit chips at the given vertices.
    pub fn from_points(model: &Model, points: &[usize]) -> Self {
        let mut d = Self::zero(model);
        for &p in points {
            d.0[p] += 1;
        }
        d
    }

    pub fn from_labels<'a>(model: &Model, coeffs: impl IntoIterator<Item = (&'a str, i64)>) -> Result<Self, GraphError> {
        let mut d = Self::zero(model);
        for (l, c) in coeffs {
            let i = model.index_of(l).ok_or_else(|| GraphError::UnknownVertex(l.to_string()))?;
            d.0[i] += c;
        }
        Ok(d)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Nonzero coefficients by label.
    pub fn to_labeled(&self, model: &Model) -> BTreeMap<String, i64> {
        self.0.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (model.label(i).to_string(), c)).collect()
    }

    pub(crate) fn check(&self, model: &Model) -> Result<(), GraphError> {
        if self.0.len() != model.vertex_count() {
            return Err(GraphError::SizeMismatch { expected: model.vertex_count(), got: self.0.len() });
        }
        Ok(())
    }
}

impl std::ops::Sub for &Divisor {
    type Output = Divisor;

    fn sub(self, rhs: &Divisor) -> Divisor {
        Divisor(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl std::ops::Add for &Divisor {
    type Output = Divisor;

    fn add(self, rhs: &Divisor) -> Divisor {
        Divisor(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}
