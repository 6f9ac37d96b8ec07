//! Simple undirected graphs with stable edge indices, the edge-list text
//! format, and the generators used for fixtures and experiments.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while reading the edge-list format. Line numbers are 1-based
/// and count every physical line, comments included.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected header \"n m\"")]
    BadHeader { line: usize },
    #[error("empty input: missing header \"n m\"")]
    MissingHeader,
    #[error("line {line}: expected two vertex ids \"u v\"")]
    BadEdgeLine { line: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: vertex id {vertex} out of range for n = {n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: header declares {expected} edges, found {found}")]
    WrongEdgeCount {
        line: usize,
        expected: usize,
        found: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex id {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("circulant offset {offset} outside 1..={max}")]
    OffsetOutOfRange { offset: usize, max: usize },
    #[error("duplicate circulant offset {0}")]
    DuplicateOffset(usize),
    #[error("edge probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error("minimum degree {delta_min} impossible with {n} vertices")]
    MinDegreeTooLarge { delta_min: usize, n: usize },
    #[error("no G(n, p) sample reached minimum degree {delta_min} in {attempts} attempts")]
    ResampleBudgetExhausted { delta_min: usize, attempts: usize },
}

/// One adjacency entry: the neighbouring vertex and the index of the shared edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Incidence {
    pub neighbor: usize,
    pub edge: usize,
}

/// Immutable simple undirected graph on vertices `0..n`.
///
/// Edges keep the index they were inserted with; every weighting in this crate
/// is keyed on that index. Adjacency lists are sorted by neighbour id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<Incidence>>,
}

impl Graph {
    /// Builds a graph from an edge sequence, rejecting loops, repeats and bad ids.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for (u, v) in edges {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { vertex, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            list.push((u, v));
        }
        Ok(Self::from_checked(n, list))
    }

    fn from_checked(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for (edge, &(u, v)) in edges.iter().enumerate() {
            adjacency[u].push(Incidence { neighbor: v, edge });
            adjacency[v].push(Incidence { neighbor: u, edge });
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph { n, edges, adjacency }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints of edge `e` in the order they were given.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[Incidence] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adjacency.first().map(Vec::len)?;
        self.adjacency.iter().all(|a| a.len() == d).then_some(d)
    }

    /// The other endpoint of edge `e` as seen from `v`.
    pub fn opposite(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Edge index joining `u` and `v`, if any.
    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        let list = &self.adjacency[u];
        list.binary_search_by_key(&v, |inc| inc.neighbor)
            .ok()
            .map(|i| list[i].edge)
    }

    /// Materializes `G[vertices]`. Vertices of the subgraph are numbered by
    /// their position in `vertices`; edges follow ascending parent edge index.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> InducedSubgraph {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        let mut edge_map = Vec::new();
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            if local[u] != usize::MAX && local[v] != usize::MAX {
                edges.push((local[u], local[v]));
                edge_map.push(e);
            }
        }
        InducedSubgraph {
            graph: Graph::from_checked(vertices.len(), edges),
            vertex_map: vertices.to_vec(),
            edge_map,
        }
    }

    /// Vertex order of a breadth-first search that restarts at the lowest
    /// unvisited id, so every vertex appears once.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for inc in &self.adjacency[v] {
                    if !seen[inc.neighbor] {
                        seen[inc.neighbor] = true;
                        queue.push_back(inc.neighbor);
                    }
                }
            }
        }
        order
    }

    /// BFS distances from `source`; unreachable vertices get `None`.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap_or(0);
            for inc in &self.adjacency[v] {
                if dist[inc.neighbor].is_none() {
                    dist[inc.neighbor] = Some(d + 1);
                    queue.push_back(inc.neighbor);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    /// Serializes to the edge-list text format accepted by [`parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// An induced subgraph together with the maps back to its parent.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `vertex_map[local] = parent vertex`.
    pub vertex_map: Vec<usize>,
    /// `edge_map[local edge] = parent edge index`.
    pub edge_map: Vec<usize>,
}

/// Parses the edge-list format: a header `n m`, then `m` lines `u v`.
/// Lines starting with `#` and blank lines are skipped; CRLF is accepted.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let (n, m) = parse_pair(header).ok_or(ParseError::BadHeader { line: header_line })?;

    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, body) in lines {
        last_line = line;
        if edges.len() == m {
            return Err(ParseError::WrongEdgeCount {
                line,
                expected: m,
                found: m + 1,
            });
        }
        let (u, v) = parse_pair(body).ok_or(ParseError::BadEdgeLine { line })?;
        for vertex in [u, v] {
            if vertex >= n {
                return Err(ParseError::VertexOutOfRange { line, vertex, n });
            }
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(ParseError::DuplicateEdge { line, u, v });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(ParseError::WrongEdgeCount {
            line: last_line,
            expected: m,
            found: edges.len(),
        });
    }
    Ok(Graph::from_checked(n, edges))
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

/// Complete graph `K_n`, edges in lexicographic pair order.
pub fn generate_complete(n: usize) -> Graph {
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_checked(n, edges)
}

/// The Petersen graph: outer cycle `0..5`, inner pentagram `5..10`, spokes `i - i+5`.
pub fn generate_petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
    }
    for i in 0..5 {
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    for i in 0..5 {
        edges.push((i, i + 5));
    }
    Graph::from_checked(10, edges)
}

/// Circulant graph on `0..n` joining `i` and `i ± o` for each offset `o`.
/// An offset of exactly `n/2` (n even) contributes one edge per vertex.
pub fn generate_circulant(n: usize, offsets: &[usize]) -> Result<Graph, GraphError> {
    let max = n / 2;
    let mut seen = HashSet::new();
    for &o in offsets {
        if o == 0 || o > max {
            return Err(GraphError::OffsetOutOfRange { offset: o, max });
        }
        if !seen.insert(o) {
            return Err(GraphError::DuplicateOffset(o));
        }
    }
    let mut edges = Vec::new();
    for &o in offsets {
        let half = n % 2 == 0 && 2 * o == n;
        let count = if half { n / 2 } else { n };
        for i in 0..count {
            edges.push((i, (i + o) % n));
        }
    }
    Ok(Graph::from_checked(n, edges))
}

/// Attempt budget for [`generate_min_degree_random`].
pub const DEFAULT_RESAMPLE_ATTEMPTS: usize = 1000;

/// Samples `G(n, p)` repeatedly until the minimum degree reaches `delta_min`.
/// Edges are listed in lexicographic pair order; the output depends only on
/// the arguments.
pub fn generate_min_degree_random(
    n: usize,
    p: f64,
    delta_min: usize,
    seed: u64,
    max_attempts: usize,
) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::BadProbability(p));
    }
    if delta_min >= n.max(1) {
        return Err(GraphError::MinDegreeTooLarge { delta_min, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..max_attempts {
        let mut edges = Vec::new();
        let mut degree = vec![0usize; n];
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                    degree[u] += 1;
                    degree[v] += 1;
                }
            }
        }
        if degree.iter().all(|&d| d >= delta_min) {
            return Ok(Graph::from_checked(n, edges));
        }
    }
    Err(GraphError::ResampleBudgetExhausted {
        delta_min,
        attempts: max_attempts,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodnessReport {
    pub is_good: bool,
    pub isolated_vertices: usize,
    pub isolated_edges: usize,
}

/// A graph has finite irregularity strength iff it has no isolated edge
/// (a `K_2` component) and at most one isolated vertex.
pub fn check_goodness(g: &Graph) -> GoodnessReport {
    let isolated_vertices = (0..g.n).filter(|&v| g.degree(v) == 0).count();
    let isolated_edges = g
        .edges
        .iter()
        .filter(|&&(u, v)| g.degree(u) == 1 && g.degree(v) == 1)
        .count();
    GoodnessReport {
        is_good: isolated_edges == 0 && isolated_vertices <= 1,
        isolated_vertices,
        isolated_edges,
    }
}
