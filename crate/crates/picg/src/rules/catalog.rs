//! The rewrite-rule catalog.
//!
//! Each growth rule is a strategy implementing [`RewriteRule`]: it declares
//! its effect sizes, which selection kernels may feed it, and how it rewrites
//! the graph at a chosen left element. Rules are registered by name and
//! looked up at runtime by the model language and the presets.

use super::RulesError;
use crate::graph::{
    LeftElement, MultiGraph, DEGREE_PROPORTIONAL, UNIFORM_EDGE, UNIFORM_NONADJACENT_PAIR,
    UNIFORM_PAIR, UNIFORM_VERTEX,
};

/// A graph rewriting step with a fixed left-element shape.
pub trait RewriteRule: Sync {
    fn name(&self) -> &'static str;

    /// Vertices added per application.
    fn delta_n(&self) -> usize;

    /// Edges added per application (net; subdivision removes one, adds two).
    fn delta_m(&self) -> usize;

    /// Kernel names this rule accepts.
    fn supported_kernels(&self) -> &'static [&'static str];

    fn default_kernel(&self) -> &'static str;

    /// Rewrites `g` in place at `left`; returns the created vertex ids.
    fn rewrite(&self, g: &mut MultiGraph, left: &LeftElement) -> Result<Vec<usize>, RulesError>;
}

pub const ADD_PENDANT: &str = "add_pendant";
pub const ADD_EDGE: &str = "add_edge";
pub const SUBDIVIDE_EDGE: &str = "subdivide_edge";
pub const ATTACH_TRIANGLE: &str = "attach_triangle";
pub const PA_ATTACH: &str = "pa_attach";

fn expect_vertex(rule: &'static str, left: &LeftElement) -> Result<usize, RulesError> {
    match left {
        LeftElement::Vertex(v) => Ok(*v),
        other => Err(RulesError::LeftElementMismatch {
            rule,
            left: other.to_string(),
        }),
    }
}

/// Hangs a new vertex off the selected vertex.
struct AddPendant;

impl RewriteRule for AddPendant {
    fn name(&self) -> &'static str {
        ADD_PENDANT
    }

    fn delta_n(&self) -> usize {
        1
    }

    fn delta_m(&self) -> usize {
        1
    }

    fn supported_kernels(&self) -> &'static [&'static str] {
        &[UNIFORM_VERTEX, DEGREE_PROPORTIONAL]
    }

    fn default_kernel(&self) -> &'static str {
        UNIFORM_VERTEX
    }

    fn rewrite(&self, g: &mut MultiGraph, left: &LeftElement) -> Result<Vec<usize>, RulesError> {
        let v = expect_vertex(ADD_PENDANT, left)?;
        let w = g.add_vertex();
        g.add_edge(v, w)?;
        Ok(vec![w])
    }
}

/// Joins the selected pair with a (possibly parallel) edge.
struct AddEdge;

impl RewriteRule for AddEdge {
    fn name(&self) -> &'static str {
        ADD_EDGE
    }

    fn delta_n(&self) -> usize {
        0
    }

    fn delta_m(&self) -> usize {
        1
    }

    fn supported_kernels(&self) -> &'static [&'static str] {
        &[UNIFORM_PAIR, UNIFORM_NONADJACENT_PAIR]
    }

    fn default_kernel(&self) -> &'static str {
        UNIFORM_PAIR
    }

    fn rewrite(&self, g: &mut MultiGraph, left: &LeftElement) -> Result<Vec<usize>, RulesError> {
        match left {
            LeftElement::Pair(u, v) => {
                g.add_edge(*u, *v)?;
                Ok(Vec::new())
            }
            other => Err(RulesError::LeftElementMismatch {
                rule: ADD_EDGE,
                left: other.to_string(),
            }),
        }
    }
}

/// Replaces the selected edge {u,v} by the path u-w-v through a new vertex.
struct SubdivideEdge;

impl RewriteRule for SubdivideEdge {
    fn name(&self) -> &'static str {
        SUBDIVIDE_EDGE
    }

    fn delta_n(&self) -> usize {
        1
    }

    fn delta_m(&self) -> usize {
        1
    }

    fn supported_kernels(&self) -> &'static [&'static str] {
        &[UNIFORM_EDGE]
    }

    fn default_kernel(&self) -> &'static str {
        UNIFORM_EDGE
    }

    fn rewrite(&self, g: &mut MultiGraph, left: &LeftElement) -> Result<Vec<usize>, RulesError> {
        match left {
            LeftElement::Edge(e) => {
                let (u, v) = g.remove_edge(*e)?;
                let w = g.add_vertex();
                g.add_edge(u, w)?;
                g.add_edge(w, v)?;
                Ok(vec![w])
            }
            other => Err(RulesError::LeftElementMismatch {
                rule: SUBDIVIDE_EDGE,
                left: other.to_string(),
            }),
        }
    }
}

/// Adds two interconnected vertices, both tied to the selected vertex:
/// the selected vertex gains degree 2, the new ones start at degree 2.
struct AttachTriangle;

impl RewriteRule for AttachTriangle {
    fn name(&self) -> &'static str {
        ATTACH_TRIANGLE
    }

    fn delta_n(&self) -> usize {
        2
    }

    fn delta_m(&self) -> usize {
        3
    }

    fn supported_kernels(&self) -> &'static [&'static str] {
        &[UNIFORM_VERTEX, DEGREE_PROPORTIONAL]
    }

    fn default_kernel(&self) -> &'static str {
        UNIFORM_VERTEX
    }

    fn rewrite(&self, g: &mut MultiGraph, left: &LeftElement) -> Result<Vec<usize>, RulesError> {
        let v = expect_vertex(ATTACH_TRIANGLE, left)?;
        let w1 = g.add_vertex();
        let w2 = g.add_vertex();
        g.add_edge(v, w1)?;
        g.add_edge(v, w2)?;
        g.add_edge(w1, w2)?;
        Ok(vec![w1, w2])
    }
}

/// Pendant attachment whose left vertex is drawn degree-proportionally.
struct PaAttach;

impl RewriteRule for PaAttach {
    fn name(&self) -> &'static str {
        PA_ATTACH
    }

    fn delta_n(&self) -> usize {
        1
    }

    fn delta_m(&self) -> usize {
        1
    }

    fn supported_kernels(&self) -> &'static [&'static str] {
        &[DEGREE_PROPORTIONAL]
    }

    fn default_kernel(&self) -> &'static str {
        DEGREE_PROPORTIONAL
    }

    fn rewrite(&self, g: &mut MultiGraph, left: &LeftElement) -> Result<Vec<usize>, RulesError> {
        let v = expect_vertex(PA_ATTACH, left)?;
        let w = g.add_vertex();
        g.add_edge(v, w)?;
        Ok(vec![w])
    }
}

static RULES: &[&dyn RewriteRule] = &[
    &AddPendant,
    &AddEdge,
    &SubdivideEdge,
    &AttachTriangle,
    &PaAttach,
];

/// Looks a rewrite rule up in the registry.
pub fn rule_by_name(name: &str) -> Option<&'static dyn RewriteRule> {
    RULES.iter().copied().find(|r| r.name() == name)
}

pub fn rule_names() -> impl Iterator<Item = &'static str> {
    RULES.iter().map(|r| r.name())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::kernel_by_name;

    #[test]
    fn registry_resolves_all_rules() {
        for name in rule_names() {
            let rule = rule_by_name(name).unwrap();
            assert_eq!(rule.name(), name);
            // every supported kernel resolves too
            for k in rule.supported_kernels() {
                assert!(kernel_by_name(k).is_some(), "kernel {k} missing");
            }
            assert!(rule.supported_kernels().contains(&rule.default_kernel()));
        }
        assert!(rule_by_name("shrink").is_none());
    }

    #[test]
    fn declared_deltas() {
        let expect = [
            (ADD_PENDANT, 1, 1),
            (ADD_EDGE, 0, 1),
            (SUBDIVIDE_EDGE, 1, 1),
            (ATTACH_TRIANGLE, 2, 3),
            (PA_ATTACH, 1, 1),
        ];
        for (name, dn, dm) in expect {
            let r = rule_by_name(name).unwrap();
            assert_eq!((r.delta_n(), r.delta_m()), (dn, dm), "{name}");
        }
    }

    #[test]
    fn wrong_left_element_is_rejected() {
        let mut g = MultiGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let rule = rule_by_name(SUBDIVIDE_EDGE).unwrap();
        let err = rule.rewrite(&mut g, &LeftElement::Vertex(0)).unwrap_err();
        assert!(matches!(err, RulesError::LeftElementMismatch { .. }));
    }
}
