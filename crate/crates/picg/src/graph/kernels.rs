//! Left-element selection kernels.
//!
//! Each kernel is a sampling strategy over a graph's vertices, vertex pairs,
//! or edges. Kernels are registered by name; the model language and the rule
//! catalog refer to them through [`kernel_by_name`].

use super::{GraphError, MultiGraph};
use crate::rng::RandomStream;

/// What a rule rewrites: a vertex, an unordered pair of distinct vertices,
/// or an edge (by index, so parallel edges stay distinguishable).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeftElement {
    Vertex(usize),
    Pair(usize, usize),
    Edge(usize),
}

impl std::fmt::Display for LeftElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LeftElement::Vertex(v) => write!(f, "v{v}"),
            LeftElement::Pair(u, v) => write!(f, "p{u}-{v}"),
            LeftElement::Edge(e) => write!(f, "e{e}"),
        }
    }
}

/// A named sampling law over left elements.
pub trait SelectionKernel: Sync {
    fn name(&self) -> &'static str;

    /// Count thresholds (min n, min m) under which the kernel is applicable.
    ///
    /// This is what the exact distribution oracle uses to decide
    /// applicability from counts alone. It is exact for every kernel except
    /// `uniform_nonadjacent_pair`, whose true precondition (some pair of
    /// distinct vertices is non-adjacent) depends on structure; growth runs
    /// always use [`SelectionKernel::applicable`], which is exact.
    fn min_counts(&self) -> (usize, usize);

    fn applicable(&self, g: &MultiGraph) -> bool;

    fn sample(&self, g: &MultiGraph, rng: &mut RandomStream) -> Result<LeftElement, GraphError>;
}

pub const UNIFORM_VERTEX: &str = "uniform_vertex";
pub const DEGREE_PROPORTIONAL: &str = "degree_proportional";
pub const UNIFORM_PAIR: &str = "uniform_pair";
pub const UNIFORM_NONADJACENT_PAIR: &str = "uniform_nonadjacent_pair";
pub const UNIFORM_EDGE: &str = "uniform_edge";

/// Every vertex with probability 1/n.
struct UniformVertex;

impl SelectionKernel for UniformVertex {
    fn name(&self) -> &'static str {
        UNIFORM_VERTEX
    }

    fn min_counts(&self) -> (usize, usize) {
        (1, 0)
    }

    fn applicable(&self, g: &MultiGraph) -> bool {
        g.n() >= 1
    }

    fn sample(&self, g: &MultiGraph, rng: &mut RandomStream) -> Result<LeftElement, GraphError> {
        if g.n() == 0 {
            return Err(GraphError::NoLeftElement("graph has no vertices"));
        }
        Ok(LeftElement::Vertex(rng.index(g.n())))
    }
}

/// Vertex i with probability d(i) / sum of degrees.
///
/// Implemented as a uniform edge followed by a uniform endpoint: every edge
/// holds two endpoint slots, so vertex i owns d(i) of the 2m slots and the
/// two-stage draw realizes the degree-proportional law exactly, in O(1).
struct DegreeProportionalVertex;

impl SelectionKernel for DegreeProportionalVertex {
    fn name(&self) -> &'static str {
        DEGREE_PROPORTIONAL
    }

    fn min_counts(&self) -> (usize, usize) {
        (1, 1)
    }

    fn applicable(&self, g: &MultiGraph) -> bool {
        g.total_degree() > 0
    }

    fn sample(&self, g: &MultiGraph, rng: &mut RandomStream) -> Result<LeftElement, GraphError> {
        if g.m() == 0 {
            return Err(GraphError::NoLeftElement("all degrees are zero"));
        }
        let (u, v) = g.edge(rng.index(g.m()));
        Ok(LeftElement::Vertex(if rng.coin() { u } else { v }))
    }
}

/// Every unordered pair of distinct vertices with probability 1/C(n,2),
/// adjacent or not.
struct UniformPair;

impl SelectionKernel for UniformPair {
    fn name(&self) -> &'static str {
        UNIFORM_PAIR
    }

    fn min_counts(&self) -> (usize, usize) {
        (2, 0)
    }

    fn applicable(&self, g: &MultiGraph) -> bool {
        g.n() >= 2
    }

    fn sample(&self, g: &MultiGraph, rng: &mut RandomStream) -> Result<LeftElement, GraphError> {
        let n = g.n();
        if n < 2 {
            return Err(GraphError::NoLeftElement("need at least two vertices"));
        }
        let i = rng.index(n);
        let j = rng.index(n - 1);
        let j = if j >= i { j + 1 } else { j };
        Ok(LeftElement::Pair(i.min(j), i.max(j)))
    }
}

/// Uniform over unordered pairs of distinct vertices with no edge between
/// them. Rejection-samples uniform pairs, falling back to exhaustive
/// enumeration after 64 misses so dense graphs terminate; both stages are
/// uniform over the non-adjacent pairs, so the mixture is too.
struct UniformNonadjacentPair;

impl SelectionKernel for UniformNonadjacentPair {
    fn name(&self) -> &'static str {
        UNIFORM_NONADJACENT_PAIR
    }

    fn min_counts(&self) -> (usize, usize) {
        (2, 0)
    }

    fn applicable(&self, g: &MultiGraph) -> bool {
        g.has_nonadjacent_pair()
    }

    fn sample(&self, g: &MultiGraph, rng: &mut RandomStream) -> Result<LeftElement, GraphError> {
        if !g.has_nonadjacent_pair() {
            return Err(GraphError::NoLeftElement("every vertex pair is adjacent"));
        }
        let n = g.n();
        for _ in 0..64 {
            let i = rng.index(n);
            let j = rng.index(n - 1);
            let j = if j >= i { j + 1 } else { j };
            if !g.adjacent(i, j) {
                return Ok(LeftElement::Pair(i.min(j), i.max(j)));
            }
        }
        let candidates: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.adjacent(u, v))
            .collect();
        let (u, v) = candidates[rng.index(candidates.len())];
        Ok(LeftElement::Pair(u, v))
    }
}

/// Every edge with probability 1/m; parallel edges count separately.
struct UniformEdge;

impl SelectionKernel for UniformEdge {
    fn name(&self) -> &'static str {
        UNIFORM_EDGE
    }

    fn min_counts(&self) -> (usize, usize) {
        (0, 1)
    }

    fn applicable(&self, g: &MultiGraph) -> bool {
        g.m() >= 1
    }

    fn sample(&self, g: &MultiGraph, rng: &mut RandomStream) -> Result<LeftElement, GraphError> {
        if g.m() == 0 {
            return Err(GraphError::NoLeftElement("graph has no edges"));
        }
        Ok(LeftElement::Edge(rng.index(g.m())))
    }
}

static KERNELS: &[&dyn SelectionKernel] = &[
    &UniformVertex,
    &DegreeProportionalVertex,
    &UniformPair,
    &UniformNonadjacentPair,
    &UniformEdge,
];

/// Looks a kernel up in the registry.
pub fn kernel_by_name(name: &str) -> Option<&'static dyn SelectionKernel> {
    KERNELS.iter().copied().find(|k| k.name() == name)
}

pub fn kernel_names() -> impl Iterator<Item = &'static str> {
    KERNELS.iter().map(|k| k.name())
}

/// Draws one left element according to `kernel`'s law.
pub fn sample_left_element(
    g: &MultiGraph,
    kernel: &dyn SelectionKernel,
    rng: &mut RandomStream,
) -> Result<LeftElement, GraphError> {
    kernel.sample(g, rng)
}
