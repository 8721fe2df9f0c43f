//! Simple undirected graphs on vertices `0..n`.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Graphs with at most this many vertices carry a bit-matrix mirror of the
/// adjacency lists for O(1) edge queries.
pub const DEFAULT_MATRIX_THRESHOLD: usize = 2048;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("seed set is empty")]
    EmptySeed,
    #[error("diameter {actual} exceeds the bound {bound}")]
    DiameterExceeded { bound: usize, actual: Distance },
    #[error("search budget of {0} steps exceeded")]
    BudgetExceeded(u64),
}

/// A non-negative length that may be infinite (distance between components,
/// diameter of a disconnected graph, girth of a forest).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    /// `true` when this length is finite and at most `bound`.
    pub fn at_most(self, bound: usize) -> bool {
        matches!(self, Distance::Finite(d) if d <= bound)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

// Infinite lengths serialize as JSON `null`.
impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Infinite => s.serialize_none(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct AdjMatrix {
    words: usize,
    bits: Vec<u64>,
}

impl AdjMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        AdjMatrix {
            words,
            bits: vec![0; words * n],
        }
    }

    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    fn get(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }
}

/// An immutable simple undirected graph.
///
/// Neighbour lists are kept sorted; small graphs additionally keep a bit
/// matrix so that `has_edge` is constant time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
    matrix: Option<AdjMatrix>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_edges(n, std::iter::empty()).expect("edgeless graph is valid")
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::with_matrix_threshold(n, edges, DEFAULT_MATRIX_THRESHOLD)
    }

    /// Builds a graph, rejecting self-loops, parallel edges and out-of-range
    /// endpoints. The bit matrix is built only when `n <= threshold`.
    pub fn with_matrix_threshold<I>(n: usize, edges: I, threshold: usize) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::InvalidVertex { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        let matrix = (n <= threshold).then(|| {
            let mut mat = AdjMatrix::new(n);
            for (u, list) in adj.iter().enumerate() {
                for &v in list {
                    mat.set(u, v);
                }
            }
            mat
        });
        Ok(Graph { adj, m, matrix })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex { vertex: v, n: self.n() })
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        match &self.matrix {
            Some(mat) => mat.get(u, v),
            None => self.adj[u].binary_search(&v).is_ok(),
        }
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// The subgraph induced by `vertices`; vertex `i` of the result is
    /// `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = vertices.iter().enumerate().flat_map(|(i, &v)| {
            let index = &index;
            self.adj[v]
                .iter()
                .filter_map(move |&w| (index[w] != usize::MAX && index[w] > i).then_some((i, index[w])))
        });
        Graph::from_edges(vertices.len(), edges.collect::<Vec<_>>()).expect("induced subgraph is simple")
    }

    /// Deletes one vertex; vertices above it shift down by one.
    pub fn remove_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = self.vertices().filter(|&u| u != v).collect();
        self.induced_subgraph(&keep)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.m + 1 == self.n() && self.is_connected()
    }

    /// Connected, 2-regular, at least three vertices.
    pub fn is_cycle(&self) -> bool {
        self.n() >= 3 && self.adj.iter().all(|l| l.len() == 2) && self.is_connected()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.m == n * n.saturating_sub(1) / 2
    }

    pub fn is_regular(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    /// A proper 2-colouring (sides 0/1), or `None` if an odd cycle exists.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut side = vec![u8::MAX; self.n()];
        let mut queue = Vec::new();
        for s in self.vertices() {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            queue.clear();
            queue.push(s);
            while let Some(u) = queue.pop() {
                for &w in &self.adj[u] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        queue.push(w);
                    } else if side[w] == side[u] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// The graph with one extra vertex `n` joined to every vertex.
    pub fn with_dominating_vertex(&self) -> Graph {
        let n = self.n();
        let edges = self.edges().chain((0..n).map(|v| (v, n)));
        Graph::from_edges(n + 1, edges.collect::<Vec<_>>()).expect("adding a dominating vertex keeps the graph simple")
    }

    /// Line graph: one vertex per edge (in `edges()` order), adjacent when
    /// the edges share an endpoint.
    pub fn line_graph(&self) -> Graph {
        let edges: Vec<(usize, usize)> = self.edges().collect();
        let mut out = Vec::new();
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let (a, b) = edges[i];
                let (c, d) = edges[j];
                if a == c || a == d || b == c || b == d {
                    out.push((i, j));
                }
            }
        }
        Graph::from_edges(edges.len(), out).expect("line graph is simple")
    }
}

/// Common named graphs.
pub mod named {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges.collect::<Vec<_>>()).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v)).collect::<Vec<_>>()).unwrap()
    }

    /// Cycle `0-1-...-(n-1)-0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let edges = (0..n).map(|v| (v, (v + 1) % n));
        Graph::from_edges(n, edges.collect::<Vec<_>>()).unwrap()
    }

    /// `K_{1,r}` with centre 0.
    pub fn star(r: usize) -> Graph {
        Graph::from_edges(r + 1, (1..=r).map(|v| (0, v)).collect::<Vec<_>>()).unwrap()
    }

    /// Outer 5-cycle 0..4, spokes `i - i+5`, inner pentagram on 5..9.
    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, edges).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Graph::from_edges(a + b, edges.collect::<Vec<_>>()).unwrap()
    }
}
