//! Structural property checks: connectivity, 2-vertex- and 2-edge-connectivity.
//!
//! One iterative depth-first traversal computes discovery and low-link values
//! over the multigraph, so every check runs in O(n + m). Parallel edges are
//! honored by excluding only the tree-edge *instance* (by edge id) when
//! scanning back edges: a doubled edge is never a bridge.

use super::MultiGraph;

/// Graph classes whose preservation the growth rules are checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphProperty {
    /// Exactly one connected component.
    Connected,
    /// n > 2, connected, and no articulation vertex.
    Biconnected,
    /// n > 1, connected, and no bridge.
    TwoEdgeConnected,
}

impl GraphProperty {
    pub fn name(&self) -> &'static str {
        match self {
            GraphProperty::Connected => "connected",
            GraphProperty::Biconnected => "biconnected",
            GraphProperty::TwoEdgeConnected => "two_edge_connected",
        }
    }
}

impl std::fmt::Display for GraphProperty {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

pub fn check_property(g: &MultiGraph, p: GraphProperty) -> bool {
    let scan = Scan::run(g);
    match p {
        GraphProperty::Connected => scan.connected,
        GraphProperty::Biconnected => g.n() > 2 && scan.connected && !scan.has_articulation,
        GraphProperty::TwoEdgeConnected => g.n() > 1 && scan.connected && !scan.has_bridge,
    }
}

struct Scan {
    connected: bool,
    has_articulation: bool,
    has_bridge: bool,
}

struct Frame {
    v: usize,
    parent_edge: usize,
    next: usize,
}

impl Scan {
    fn run(g: &MultiGraph) -> Scan {
        let n = g.n();
        if n == 0 {
            return Scan {
                connected: true,
                has_articulation: false,
                has_bridge: false,
            };
        }
        let adj = g.adjacency();
        const UNSEEN: usize = usize::MAX;
        let mut disc = vec![UNSEEN; n];
        let mut low = vec![UNSEEN; n];
        let mut has_articulation = false;
        let mut has_bridge = false;
        let mut root_children = 0usize;

        let mut stack: Vec<Frame> = Vec::with_capacity(n);
        disc[0] = 0;
        low[0] = 0;
        let mut time = 1usize;
        stack.push(Frame {
            v: 0,
            parent_edge: usize::MAX,
            next: 0,
        });

        while let Some(top) = stack.last_mut() {
            let v = top.v;
            if top.next < adj[v].len() {
                let (w, e) = adj[v][top.next];
                top.next += 1;
                if e == top.parent_edge {
                    continue;
                }
                if disc[w] == UNSEEN {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push(Frame {
                        v: w,
                        parent_edge: e,
                        next: 0,
                    });
                } else if disc[w] < low[v] {
                    low[v] = disc[w];
                }
            } else {
                stack.pop();
                if let Some(parent) = stack.last() {
                    let p = parent.v;
                    if low[v] < low[p] {
                        low[p] = low[v];
                    }
                    if low[v] > disc[p] {
                        has_bridge = true;
                    }
                    if parent.parent_edge == usize::MAX {
                        root_children += 1;
                    } else if low[v] >= disc[p] {
                        has_articulation = true;
                    }
                }
            }
        }
        if root_children >= 2 {
            has_articulation = true;
        }

        Scan {
            connected: time == n,
            has_articulation,
            has_bridge,
        }
    }
}
