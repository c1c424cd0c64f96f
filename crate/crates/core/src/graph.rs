//! The labeled edge-graph of the permutohedron.
//!
//! Vertices are all `n!` permutations; two are joined exactly when one is
//! obtained from the other by swapping two positions holding consecutive
//! values, and the edge is labeled by that position pair. Graph distance
//! equals the number of discordant pairs, so distance and betweenness queries
//! never need the materialized graph; it exists for verification and export.

use std::collections::VecDeque;

use thiserror::Error;

use crate::metric::{distance, WeightMatrix};
use crate::perm::{
    discordance_count, discordance_indicator, discordance_set, IndexPair, PairSet, Permutation,
};

/// Largest order materialized by default (40,320 vertices, 141,120 edges).
pub const DEFAULT_GRAPH_CAP: usize = 8;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("order {n} exceeds the graph cap {cap}")]
    OrderTooLarge { n: usize, cap: usize },
    #[error("order must be at least 1")]
    InvalidOrder,
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("points must be pairwise distinct")]
    NotDistinct,
    #[error("weights must all be positive for metric queries")]
    NotAMetric,
    #[error("permutation {0} is not a vertex of this graph")]
    VertexNotInGraph(String),
    #[error("a path needs at least one vertex")]
    EmptyPath,
    #[error("vertex repeated at position {position}")]
    RepeatedVertex { position: usize },
    #[error("vertices at positions {position} and {next} are not joined by an edge")]
    NotAdjacent { position: usize, next: usize },
    #[error("a cycle needs at least 3 vertices, got {len}")]
    TooShortCycle { len: usize },
    #[error("cycle length {len} is odd; opposite edges cannot be paired")]
    OddCycle { len: usize },
    #[error("the label sequence does not close back to the start")]
    NotClosed,
    #[error("permutation is not a vertex of the cycle")]
    NotOnCycle,
}

/// The materialized graph of one symmetric group, with labeled edges and
/// deterministic vertex order (lexicographic by value sequence).
pub struct LabeledGraph {
    n: usize,
    vertices: Vec<Permutation>,
    adjacency: Vec<Vec<(usize, IndexPair)>>,
    edges: Vec<(usize, usize, IndexPair)>,
}

impl LabeledGraph {
    pub fn build(n: usize) -> Result<Self, GraphError> {
        Self::build_with_cap(n, DEFAULT_GRAPH_CAP)
    }

    pub fn build_with_cap(n: usize, cap: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::InvalidOrder);
        }
        if n > cap {
            return Err(GraphError::OrderTooLarge { n, cap });
        }
        let vertices: Vec<Permutation> = Permutation::all(n).collect();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        let mut edges = Vec::new();
        for (index, p) in vertices.iter().enumerate() {
            for pair in IndexPair::all(n) {
                if let Ok(q) = p.adjacent_transposition(pair) {
                    let neighbor = q.lex_rank() as usize;
                    adjacency[index].push((neighbor, pair));
                    if index < neighbor {
                        edges.push((index, neighbor, pair));
                    }
                }
            }
        }
        Ok(LabeledGraph {
            n,
            vertices,
            adjacency,
            edges,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Permutation] {
        &self.vertices
    }

    pub fn vertex_index(&self, p: &Permutation) -> Result<usize, GraphError> {
        if p.order() != self.n {
            return Err(GraphError::VertexNotInGraph(p.to_string()));
        }
        Ok(p.lex_rank() as usize)
    }

    /// Neighbors of a vertex with edge labels, in lexicographic label order.
    pub fn neighbors(&self, index: usize) -> &[(usize, IndexPair)] {
        &self.adjacency[index]
    }

    pub fn degree(&self, index: usize) -> usize {
        self.adjacency[index].len()
    }

    /// Edges as `(u, v, label)` with `u < v`, in deterministic order.
    pub fn edges(&self) -> &[(usize, usize, IndexPair)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].iter().any(|&(w, _)| w == v)
    }

    /// Breadth-first-search distances from a source vertex.
    pub fn bfs_distances(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertices.len()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &self.adjacency[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Deterministic DOT export: vertices named by their value sequence,
    /// edges labeled by their position pair.
    pub fn to_dot(&self) -> String {
        let mut out = format!("graph permutohedron_{} {{\n", self.n);
        for v in &self.vertices {
            out.push_str(&format!("  \"{v}\";\n"));
        }
        for (u, v, label) in &self.edges {
            out.push_str(&format!(
                "  \"{}\" -- \"{}\" [label=\"{}\"];\n",
                self.vertices[*u], self.vertices[*v], label
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// Graph distance between two permutations: the number of discordant pairs.
/// Computed without materializing the graph.
pub fn graph_distance(p: &Permutation, q: &Permutation) -> Result<usize, GraphError> {
    discordance_count(p, q).map_err(|_| GraphError::OrderMismatch {
        left: p.order(),
        right: q.order(),
    })
}

/// Labels of the edges adjacent to `p` in the permutohedron graph: the pairs
/// of positions holding consecutive values.
pub fn adjacent_labels(p: &Permutation) -> PairSet {
    let n = p.order();
    PairSet::from_pairs(
        n,
        IndexPair::all(n)
            .filter(|pair| p.values()[pair.i() - 1].abs_diff(p.values()[pair.j() - 1]) == 1),
    )
    .expect("pairs are in range by construction")
}

/// A simple path: distinct vertices, consecutive ones graph-adjacent, with
/// `labels[k]` the label of the edge between vertices `k` and `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    vertices: Vec<Permutation>,
    labels: Vec<IndexPair>,
}

impl Path {
    pub fn new(vertices: Vec<Permutation>) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::EmptyPath);
        }
        for (k, v) in vertices.iter().enumerate() {
            if v.order() != vertices[0].order() {
                return Err(GraphError::OrderMismatch {
                    left: vertices[0].order(),
                    right: v.order(),
                });
            }
            if vertices[..k].contains(v) {
                return Err(GraphError::RepeatedVertex { position: k + 1 });
            }
        }
        let mut labels = Vec::with_capacity(vertices.len().saturating_sub(1));
        for k in 0..vertices.len().saturating_sub(1) {
            let label = edge_label(&vertices[k], &vertices[k + 1]).ok_or(
                GraphError::NotAdjacent {
                    position: k + 1,
                    next: k + 2,
                },
            )?;
            labels.push(label);
        }
        Ok(Path { vertices, labels })
    }

    pub fn vertices(&self) -> &[Permutation] {
        &self.vertices
    }

    pub fn labels(&self) -> &[IndexPair] {
        &self.labels
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// A path is a shortest path exactly when its labels are pairwise
    /// distinct.
    pub fn is_shortest_path(&self) -> bool {
        for (k, label) in self.labels.iter().enumerate() {
            if self.labels[..k].contains(label) {
                return false;
            }
        }
        true
    }
}

/// The label joining two adjacent vertices, or `None` when they are not
/// joined by an edge.
pub fn edge_label(p: &Permutation, q: &Permutation) -> Option<IndexPair> {
    if p.order() != q.order() {
        return None;
    }
    let diff: Vec<usize> = (0..p.order())
        .filter(|&k| p.values()[k] != q.values()[k])
        .collect();
    let [a, b] = diff[..] else {
        return None;
    };
    let pair = IndexPair::new(a + 1, b + 1).ok()?;
    match p.adjacent_transposition(pair) {
        Ok(swapped) if &swapped == q => Some(pair),
        _ => None,
    }
}

/// Lazy enumeration of all shortest paths between two vertices, in
/// lexicographic order of their label sequences.
pub struct ShortestPaths<'g> {
    graph: &'g LabeledGraph,
    target: usize,
    // Chain of (vertex, next adjacency slot to try); the path so far.
    stack: Vec<(usize, usize)>,
    labels: Vec<IndexPair>,
    yield_trivial: bool,
    done: bool,
}

pub fn shortest_paths<'g>(
    g: &'g LabeledGraph,
    p: &Permutation,
    q: &Permutation,
) -> Result<ShortestPaths<'g>, GraphError> {
    let source = g.vertex_index(p)?;
    let target = g.vertex_index(q)?;
    Ok(ShortestPaths {
        graph: g,
        target,
        stack: vec![(source, 0)],
        labels: Vec::new(),
        yield_trivial: source == target,
        done: false,
    })
}

impl ShortestPaths<'_> {
    fn path_from_stack(&self) -> Path {
        let vertices = self
            .stack
            .iter()
            .map(|&(v, _)| self.graph.vertices()[v].clone())
            .collect();
        Path {
            vertices,
            labels: self.labels.clone(),
        }
    }

    // A hop along an edge labeled by a discordant pair of (v, target) is
    // exactly a hop along some shortest path.
    fn advances(&self, v: usize, label: IndexPair) -> bool {
        discordance_indicator(
            &self.graph.vertices()[v],
            &self.graph.vertices()[self.target],
            label,
        )
        .unwrap_or(false)
    }
}

impl Iterator for ShortestPaths<'_> {
    type Item = Path;

    fn next(&mut self) -> Option<Path> {
        if self.done {
            return None;
        }
        if self.yield_trivial {
            self.done = true;
            return Some(self.path_from_stack());
        }
        loop {
            let &(v, slot) = self.stack.last()?;
            if v == self.target {
                let path = self.path_from_stack();
                self.stack.pop();
                self.labels.pop();
                return Some(path);
            }
            match self.graph.neighbors(v).get(slot) {
                Some(&(m, label)) => {
                    self.stack.last_mut().expect("stack nonempty").1 = slot + 1;
                    if self.advances(v, label) {
                        self.stack.push((m, 0));
                        self.labels.push(label);
                    }
                }
                None => {
                    self.stack.pop();
                    self.labels.pop();
                    if self.stack.is_empty() {
                        self.done = true;
                        return None;
                    }
                }
            }
        }
    }
}

/// Number of shortest paths, without materializing them.
pub fn count_shortest_paths(
    g: &LabeledGraph,
    p: &Permutation,
    q: &Permutation,
) -> Result<u128, GraphError> {
    let source = g.vertex_index(p)?;
    let target = g.vertex_index(q)?;
    let mut memo = vec![None; g.vertex_count()];
    Ok(count_paths_rec(g, source, target, &mut memo))
}

fn count_paths_rec(
    g: &LabeledGraph,
    v: usize,
    target: usize,
    memo: &mut [Option<u128>],
) -> u128 {
    if v == target {
        return 1;
    }
    if let Some(cached) = memo[v] {
        return cached;
    }
    let total = g
        .neighbors(v)
        .iter()
        .filter(|&&(_, label)| {
            discordance_indicator(&g.vertices()[v], &g.vertices()[target], label)
                .unwrap_or(false)
        })
        .map(|&(m, _)| count_paths_rec(g, m, target, memo))
        .sum();
    memo[v] = Some(total);
    total
}

fn check_triple(
    p: &Permutation,
    m: &Permutation,
    q: &Permutation,
) -> Result<(), GraphError> {
    if p.order() != m.order() || m.order() != q.order() {
        return Err(GraphError::OrderMismatch {
            left: p.order(),
            right: if p.order() != m.order() {
                m.order()
            } else {
                q.order()
            },
        });
    }
    if p == m || m == q || p == q {
        return Err(GraphError::NotDistinct);
    }
    Ok(())
}

/// Whether `m` lies on some shortest path between `p` and `q`: the
/// discordance sets of `(p, m)` and `(m, q)` are disjoint (equivalently,
/// their union is the discordance set of `(p, q)`).
pub fn lies_between_dsc(
    p: &Permutation,
    m: &Permutation,
    q: &Permutation,
) -> Result<bool, GraphError> {
    check_triple(p, m, q)?;
    let left = discordance_set(p, m).expect("orders checked");
    let right = discordance_set(m, q).expect("orders checked");
    Ok(left.is_disjoint(&right))
}

/// Metric betweenness under a strict weight: whether the distance from `p`
/// to `q` splits additively through `m`, as an exact rational identity. For
/// any strict weight this agrees with [`lies_between_dsc`].
pub fn lies_between_metric(
    w: &WeightMatrix,
    p: &Permutation,
    m: &Permutation,
    q: &Permutation,
) -> Result<bool, GraphError> {
    if !w.is_metric() {
        return Err(GraphError::NotAMetric);
    }
    check_triple(p, m, q)?;
    if w.order() != p.order() {
        return Err(GraphError::OrderMismatch {
            left: w.order(),
            right: p.order(),
        });
    }
    let to_graph_err = |_| GraphError::OrderMismatch {
        left: w.order(),
        right: p.order(),
    };
    let pq = distance(w, p, q).map_err(to_graph_err)?;
    let pm = distance(w, p, m).map_err(to_graph_err)?;
    let mq = distance(w, m, q).map_err(to_graph_err)?;
    Ok(pq == pm + mq)
}

/// Whether right composition by `t` maps every edge to an edge; a structural
/// self-test of vertex transitivity.
pub fn composition_preserves_edges(
    g: &LabeledGraph,
    t: &Permutation,
) -> Result<bool, GraphError> {
    if t.order() != g.order() {
        return Err(GraphError::OrderMismatch {
            left: g.order(),
            right: t.order(),
        });
    }
    for (u, v, _) in g.edges() {
        let cu = g.vertices()[*u].compose(t).expect("orders agree");
        let cv = g.vertices()[*v].compose(t).expect("orders agree");
        let iu = g.vertex_index(&cu)?;
        let iv = g.vertex_index(&cv)?;
        if !g.has_edge(iu, iv) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A simple cycle in the permutohedron graph. Cycles are always even; the
/// constructor rejects anything that does not close up correctly, so odd
/// cycles are unrepresentable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    vertices: Vec<Permutation>,
    labels: Vec<IndexPair>,
}

impl Cycle {
    /// Validates a cyclic vertex sequence: all distinct, cyclically adjacent,
    /// of even length at least 4. `labels()[k]` joins vertex `k` to vertex
    /// `k + 1 (mod len)`.
    pub fn new(vertices: Vec<Permutation>) -> Result<Self, GraphError> {
        let len = vertices.len();
        if len < 3 {
            return Err(GraphError::TooShortCycle { len });
        }
        for (k, v) in vertices.iter().enumerate() {
            if v.order() != vertices[0].order() {
                return Err(GraphError::OrderMismatch {
                    left: vertices[0].order(),
                    right: v.order(),
                });
            }
            if vertices[..k].contains(v) {
                return Err(GraphError::RepeatedVertex { position: k + 1 });
            }
        }
        let mut labels = Vec::with_capacity(len);
        for k in 0..len {
            let next = (k + 1) % len;
            let label = edge_label(&vertices[k], &vertices[next]).ok_or(
                GraphError::NotAdjacent {
                    position: k + 1,
                    next: next + 1,
                },
            )?;
            labels.push(label);
        }
        if !len.is_multiple_of(2) {
            return Err(GraphError::OddCycle { len });
        }
        Ok(Cycle { vertices, labels })
    }

    /// Builds the cycle obtained by applying a sequence of adjacent
    /// transpositions from `start`; the sequence must return to `start`.
    pub fn from_label_sequence(
        start: &Permutation,
        labels: &[IndexPair],
    ) -> Result<Self, GraphError> {
        let mut vertices = vec![start.clone()];
        let mut current = start.clone();
        for (k, &label) in labels.iter().enumerate() {
            current = current
                .adjacent_transposition(label)
                .map_err(|_| GraphError::NotAdjacent {
                    position: k + 1,
                    next: k + 2,
                })?;
            if k + 1 < labels.len() {
                vertices.push(current.clone());
            }
        }
        if &current != start {
            return Err(GraphError::NotClosed);
        }
        Cycle::new(vertices)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn half_length(&self) -> usize {
        self.vertices.len() / 2
    }

    pub fn vertices(&self) -> &[Permutation] {
        &self.vertices
    }

    pub fn labels(&self) -> &[IndexPair] {
        &self.labels
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.vertices.iter().position(|v| v == p)
    }

    pub fn opposite_index(&self, index: usize) -> usize {
        (index + self.half_length()) % self.len()
    }

    /// The vertex diametrically opposite `p` along the cycle.
    pub fn opposite(&self, p: &Permutation) -> Result<&Permutation, GraphError> {
        let index = self.index_of(p).ok_or(GraphError::NotOnCycle)?;
        Ok(&self.vertices[self.opposite_index(index)])
    }
}
