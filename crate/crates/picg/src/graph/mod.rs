//! Mutable undirected multigraph with degree bookkeeping.
//!
//! Vertices are dense ids `0..n` assigned in creation order. Edges are stored
//! as an ordered list of unordered id pairs; parallel edges are distinct
//! entries so they can be sampled and subdivided individually. Loops are
//! rejected unless the graph was created in loop-permitting mode (only the
//! output of the preferential-attachment collapse uses that mode); a loop
//! contributes 2 to its endpoint's degree.

mod io;
mod kernels;
mod properties;

pub use io::{read_edge_list_csv, write_edge_list_csv, write_pajek};
pub use kernels::{
    kernel_by_name, kernel_names, sample_left_element, LeftElement, SelectionKernel,
    DEGREE_PROPORTIONAL, UNIFORM_EDGE, UNIFORM_NONADJACENT_PAIR, UNIFORM_PAIR, UNIFORM_VERTEX,
};
pub use properties::{check_property, GraphProperty};

use std::collections::HashMap;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("loop edge ({0},{0}) is not allowed in this graph")]
    LoopForbidden(usize),
    #[error("vertex id {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),
    #[error("edge index {0} out of range (m = {1})")]
    EdgeOutOfRange(usize, usize),
    #[error("no left element: {0}")]
    NoLeftElement(&'static str),
}

/// Undirected multigraph; see the module docs for the storage contract.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiGraph {
    degree: Vec<usize>,
    edges: Vec<(usize, usize)>,
    /// Multiplicity per normalized vertex pair, kept for O(1) adjacency tests.
    pair_multiplicity: HashMap<(usize, usize), usize>,
    /// Number of distinct adjacent pairs {u,v} with u != v.
    distinct_adjacent_pairs: usize,
    allow_loops: bool,
}

impl MultiGraph {
    pub fn new(allow_loops: bool) -> Self {
        Self::with_vertices(0, allow_loops)
    }

    pub fn with_vertices(n: usize, allow_loops: bool) -> Self {
        MultiGraph {
            degree: vec![0; n],
            edges: Vec::new(),
            pair_multiplicity: HashMap::new(),
            distinct_adjacent_pairs: 0,
            allow_loops,
        }
    }

    /// Builds a loopless graph from an explicit edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::with_vertices(n, false);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.degree.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn allows_loops(&self) -> bool {
        self.allow_loops
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degree[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> (usize, usize) {
        self.edges[index]
    }

    /// Sum of all degrees; equals `2m` at all times.
    pub fn total_degree(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.degree.push(0);
        self.degree.len() - 1
    }

    /// Appends edge {u,v} and returns its index.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize, GraphError> {
        let n = self.n();
        if u >= n {
            return Err(GraphError::VertexOutOfRange(u, n));
        }
        if v >= n {
            return Err(GraphError::VertexOutOfRange(v, n));
        }
        if u == v && !self.allow_loops {
            return Err(GraphError::LoopForbidden(u));
        }
        if u == v {
            self.degree[u] += 2;
        } else {
            self.degree[u] += 1;
            self.degree[v] += 1;
        }
        let key = normalize_pair(u, v);
        let slot = self.pair_multiplicity.entry(key).or_insert(0);
        if *slot == 0 && u != v {
            self.distinct_adjacent_pairs += 1;
        }
        *slot += 1;
        self.edges.push((u, v));
        self.debug_validate();
        Ok(self.edges.len() - 1)
    }

    /// Removes the edge at `index` (swap-remove; the last edge takes its
    /// index) and returns its endpoints.
    pub fn remove_edge(&mut self, index: usize) -> Result<(usize, usize), GraphError> {
        let m = self.m();
        if index >= m {
            return Err(GraphError::EdgeOutOfRange(index, m));
        }
        let (u, v) = self.edges.swap_remove(index);
        if u == v {
            self.degree[u] -= 2;
        } else {
            self.degree[u] -= 1;
            self.degree[v] -= 1;
        }
        let key = normalize_pair(u, v);
        let slot = self
            .pair_multiplicity
            .get_mut(&key)
            .expect("edge list and multiplicity map agree");
        *slot -= 1;
        if *slot == 0 {
            self.pair_multiplicity.remove(&key);
            if u != v {
                self.distinct_adjacent_pairs -= 1;
            }
        }
        self.debug_validate();
        Ok((u, v))
    }

    /// True when at least one edge joins u and v.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.pair_multiplicity.contains_key(&normalize_pair(u, v))
    }

    /// True when some pair of distinct vertices has no edge between them.
    pub fn has_nonadjacent_pair(&self) -> bool {
        let n = self.n();
        n >= 2 && self.distinct_adjacent_pairs < n * (n - 1) / 2
    }

    /// Map degree -> number of vertices with that degree.
    pub fn degree_histogram(&self) -> std::collections::BTreeMap<usize, usize> {
        let mut hist = std::collections::BTreeMap::new();
        for &d in &self.degree {
            *hist.entry(d).or_insert(0) += 1;
        }
        hist
    }

    /// Adjacency lists as (neighbor, edge index) pairs; loops appear twice.
    pub(crate) fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n()];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
        adj
    }

    /// Full consistency check: degrees recounted from the edge list, loop
    /// policy, and the adjacency index. Cheap O(1) pieces run after every
    /// mutation in debug builds; the full recount is reserved for small
    /// graphs and explicit calls from tests.
    pub fn validate(&self) {
        let mut recount = vec![0usize; self.n()];
        let mut pairs: HashMap<(usize, usize), usize> = HashMap::new();
        for &(u, v) in &self.edges {
            assert!(u < self.n() && v < self.n(), "edge endpoint out of range");
            assert!(u != v || self.allow_loops, "loop in loopless graph");
            if u == v {
                recount[u] += 2;
            } else {
                recount[u] += 1;
                recount[v] += 1;
            }
            *pairs.entry(normalize_pair(u, v)).or_insert(0) += 1;
        }
        assert_eq!(recount, self.degree, "degree array out of sync");
        assert_eq!(pairs, self.pair_multiplicity, "pair index out of sync");
        assert_eq!(
            pairs.keys().filter(|&&(u, v)| u != v).count(),
            self.distinct_adjacent_pairs,
            "distinct pair count out of sync"
        );
    }

    #[cfg(debug_assertions)]
    fn debug_validate(&self) {
        assert_eq!(
            self.degree.iter().sum::<usize>(),
            self.total_degree(),
            "degree sum diverged from 2m"
        );
        if self.n() + self.m() <= 512 {
            self.validate();
        }
    }

    #[cfg(not(debug_assertions))]
    fn debug_validate(&self) {}
}

fn normalize_pair(u: usize, v: usize) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}
