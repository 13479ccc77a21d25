//! Undirected simple graphs on a contiguous vertex index, stored as one
//! neighbor bitset per vertex, and the graph families built from subsets.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::combinatorics::{binomial, rank_subset, unrank_subset, SubsetLabel};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default limit on the number of vertices of generated graphs.
pub const DEFAULT_VERTEX_CAP: usize = 5000;

/// A set of vertex indices.
pub type VertexSet = FixedBitSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
    labels: Option<Vec<SubsetLabel>>,
}

/// Breadth-first layers `Γ_0(x), Γ_1(x), ...` around a source vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistancePartition {
    pub source: usize,
    pub layers: Vec<Vec<usize>>,
    /// Hop distance from `source`; `None` for vertices in other components.
    pub dist: Vec<Option<usize>>,
}

impl DistancePartition {
    /// Largest distance reached from the source.
    pub fn eccentricity(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    pub fn unreachable(&self) -> Vec<usize> {
        (0..self.dist.len())
            .filter(|&v| self.dist[v].is_none())
            .collect()
    }

    /// Layer `i` as a bitset; empty when `i` is past the last layer.
    pub fn layer_set(&self, i: usize) -> VertexSet {
        let mut s = FixedBitSet::with_capacity(self.dist.len());
        if let Some(layer) = self.layers.get(i) {
            for &v in layer {
                s.insert(v);
            }
        }
        s
    }
}

/// Line graph of a graph plus the edge behind each line vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineGraph {
    pub graph: Graph,
    /// `edges[i] = (u, v)` with `u < v`, in lexicographic order.
    pub edges: Vec<(usize, usize)>,
}

impl LineGraph {
    /// Line vertex of edge `{u, v}`, if it is an edge of the base graph.
    pub fn vertex_of(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }
}

fn check_cap(vertices: u128, cap: usize) -> Result<()> {
    if vertices > cap as u128 {
        Err(Error::CapExceeded { vertices, cap })
    } else {
        Ok(())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Graph {
        Graph {
            adj: vec![FixedBitSet::with_capacity(n); n],
            labels: None,
        }
    }

    /// Build from an edge list. Loops are rejected, repeated edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::IndexOutOfRange {
                    index: u.max(v),
                    size: n,
                });
            }
            if u == v {
                return Err(Error::Parameter(format!("self-loop at vertex {u}")));
            }
            g.link(u, v);
        }
        Ok(g)
    }

    fn link(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    /// Attach subset labels. They must be distinct and match the colex rank
    /// of their vertex.
    pub fn with_labels(mut self, labels: Vec<SubsetLabel>) -> Result<Graph> {
        if labels.len() != self.vertex_count() {
            return Err(Error::Parameter(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count()
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if rank_subset(l) != i as u64 || l.size() != labels[0].size() {
                return Err(Error::Parameter(format!(
                    "label {l} does not have colex rank {i}"
                )));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Neighbor bitset of `v`. Panics on a bad index.
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    /// Common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map(|r| r.count_ones(..)).unwrap_or(0);
        self.adj.iter().all(|r| r.count_ones(..) == d).then_some(d)
    }

    /// All edges `(u, v)` with `u < v`, lexicographically ordered.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.vertex_count() {
            out.extend(self.adj[u].ones().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn labels(&self) -> Option<&[SubsetLabel]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<SubsetLabel> {
        self.labels.as_ref().map(|l| l[v])
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0
            || distance_partition_unchecked(self, 0)
                .unreachable()
                .is_empty()
    }

    /// Same edge set, labels ignored.
    pub fn same_edges(&self, other: &Graph) -> bool {
        self.adj == other.adj
    }

    /// The graph with vertex `v` renamed to `p(v)`.
    pub fn permuted(&self, p: &Permutation) -> Result<Graph> {
        if p.degree() != self.vertex_count() {
            return Err(Error::DegreeMismatch {
                expected: self.vertex_count(),
                found: p.degree(),
            });
        }
        let mut g = Graph::empty(self.vertex_count());
        for (u, v) in self.edges() {
            g.link(p.apply(u), p.apply(v));
        }
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            Err(Error::IndexOutOfRange {
                index: v,
                size: self.vertex_count(),
            })
        } else {
            Ok(())
        }
    }
}

/// `K_n`.
pub fn complete_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Parameter("complete graph needs n >= 1".into()));
    }
    let mut g = Graph::empty(n);
    for u in 0..n {
        g.adj[u].insert_range(..);
        g.adj[u].set(u, false);
    }
    Ok(g)
}

/// `K_{s,t}`: side X is `0..s`, side Y is `s..s+t`.
pub fn complete_bipartite(s: usize, t: usize) -> Result<Graph> {
    if s == 0 || t == 0 {
        return Err(Error::Parameter(
            "complete bipartite graph needs both sides nonempty".into(),
        ));
    }
    let mut g = Graph::empty(s + t);
    for u in 0..s {
        g.adj[u].insert_range(s..s + t);
    }
    for v in s..s + t {
        g.adj[v].insert_range(0..s);
    }
    Ok(g)
}

/// Cycle `C_n`, `n >= 3`.
pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Parameter("cycle needs n >= 3".into()));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// Path on `n >= 1` vertices.
pub fn path_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Parameter("path needs n >= 1".into()));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

/// Disjoint union; vertices of `b` follow those of `a`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let off = a.vertex_count();
    let mut edges = a.edges();
    edges.extend(b.edges().into_iter().map(|(u, v)| (u + off, v + off)));
    Graph::from_edges(off + b.vertex_count(), &edges).expect("edges in range")
}

fn subset_vertices(n: usize, m: usize, cap: usize) -> Result<Vec<SubsetLabel>> {
    if m == 0 || m >= n {
        return Err(Error::Parameter(format!(
            "need 1 <= m <= n - 1, got n = {n}, m = {m}"
        )));
    }
    let count = binomial(n, m)?;
    check_cap(count as u128, cap)?;
    (0..count).map(|r| unrank_subset(r, n, m)).collect()
}

/// `J(n, m)` with the default vertex cap.
pub fn johnson_graph(n: usize, m: usize) -> Result<Graph> {
    johnson_graph_capped(n, m, DEFAULT_VERTEX_CAP)
}

/// `J(n, m)`: vertex `i` is the `m`-subset of colex rank `i`, and two
/// vertices are adjacent when they share exactly `m - 1` elements.
pub fn johnson_graph_capped(n: usize, m: usize, cap: usize) -> Result<Graph> {
    let labels = subset_vertices(n, m, cap)?;
    let mut g = Graph::empty(labels.len());
    for (u, l) in labels.iter().enumerate() {
        let inside = l.mask();
        let outside = l.complement().mask();
        // Swap one member out for one non-member.
        for a in (0..n).filter(|b| inside >> b & 1 == 1) {
            for b in (0..n).filter(|b| outside >> b & 1 == 1) {
                let mask = inside & !(1u64 << a) | 1u64 << b;
                let v = rank_subset(&SubsetLabel::new(mask, n)?) as usize;
                g.adj[u].insert(v);
            }
        }
    }
    g.labels = Some(labels);
    Ok(g)
}

/// `K(n, m)` with the default vertex cap.
pub fn kneser_graph(n: usize, m: usize) -> Result<Graph> {
    kneser_graph_capped(n, m, DEFAULT_VERTEX_CAP)
}

/// `K(n, m)`: same vertices as `J(n, m)`, adjacent when disjoint.
pub fn kneser_graph_capped(n: usize, m: usize, cap: usize) -> Result<Graph> {
    let labels = subset_vertices(n, m, cap)?;
    let mut g = Graph::empty(labels.len());
    for u in 0..labels.len() {
        for v in u + 1..labels.len() {
            if labels[u].mask() & labels[v].mask() == 0 {
                g.link(u, v);
            }
        }
    }
    g.labels = Some(labels);
    Ok(g)
}

/// `L(g)`: line vertices follow the lexicographic edge order of `g`.
pub fn line_graph(g: &Graph) -> Result<LineGraph> {
    let edges = g.edges();
    if edges.is_empty() {
        return Err(Error::Parameter("line graph of an edgeless graph".into()));
    }
    // Incidence lists: every endpoint knows the line vertices through it.
    let mut incident = vec![Vec::new(); g.vertex_count()];
    for (i, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(i);
        incident[v].push(i);
    }
    let mut line = Graph::empty(edges.len());
    for through in &incident {
        for (k, &a) in through.iter().enumerate() {
            for &b in &through[k + 1..] {
                line.link(a, b);
            }
        }
    }
    Ok(LineGraph { graph: line, edges })
}

/// Complement graph; labels are kept.
pub fn complement(g: &Graph) -> Graph {
    let mut adj = g.adj.clone();
    for (u, row) in adj.iter_mut().enumerate() {
        row.toggle_range(..);
        row.set(u, false);
    }
    Graph {
        adj,
        labels: g.labels.clone(),
    }
}

/// Induced subgraph on `s`, reindexed in ascending order of old index.
/// Returns the graph and the new-to-old index map.
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<(Graph, Vec<usize>)> {
    let old: Vec<usize> = s.ones().collect();
    if old.is_empty() {
        return Err(Error::Parameter("induced subgraph on an empty set".into()));
    }
    if let Some(&bad) = old.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            size: g.vertex_count(),
        });
    }
    let mut sub = Graph::empty(old.len());
    for (i, &u) in old.iter().enumerate() {
        for (j, &v) in old.iter().enumerate().skip(i + 1) {
            if g.has_edge(u, v) {
                sub.link(i, j);
            }
        }
    }
    Ok((sub, old))
}

/// Induced subgraph on a list of vertices (sorted and deduplicated first).
pub fn induced_on(g: &Graph, vertices: &[usize]) -> Result<(Graph, Vec<usize>)> {
    let mut s = FixedBitSet::with_capacity(g.vertex_count());
    for &v in vertices {
        g.check_vertex(v)?;
        s.insert(v);
    }
    induced_subgraph(g, &s)
}

/// Open neighborhood `N(v)`.
pub fn neighborhood(g: &Graph, v: usize) -> Result<VertexSet> {
    g.check_vertex(v)?;
    Ok(g.adj[v].clone())
}

/// BFS layers from `x`.
pub fn distance_partition(g: &Graph, x: usize) -> Result<DistancePartition> {
    g.check_vertex(x)?;
    Ok(distance_partition_unchecked(g, x))
}

fn distance_partition_unchecked(g: &Graph, x: usize) -> DistancePartition {
    let n = g.vertex_count();
    let mut dist = vec![None; n];
    let mut layers: Vec<Vec<usize>> = vec![vec![x]];
    dist[x] = Some(0);
    let mut queue = VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for v in g.adj[u].ones() {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                if layers.len() == du + 1 {
                    layers.push(Vec::new());
                }
                layers[du + 1].push(v);
                queue.push_back(v);
            }
        }
    }
    for layer in &mut layers {
        layer.sort_unstable();
    }
    DistancePartition {
        source: x,
        layers,
        dist,
    }
}
