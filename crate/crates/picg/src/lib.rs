//! Probabilistic inductive classes of graphs.
//!
//! A probabilistic inductive class of graphs (PICG) grows random graphs from
//! a weighted set of basis graphs by repeatedly applying weighted rewriting
//! rules, each of which picks its left element (a vertex, a vertex pair, or
//! an edge) by a named sampling kernel. This crate provides:
//!
//! - [`graph`]: the mutable undirected multigraph, selection kernels,
//!   structural property checks, and graph export formats;
//! - [`rules`]: the rewrite-rule catalog, model type, growth loop with
//!   per-step provenance, and the preferential-attachment block collapse;
//! - [`dsl`]: a small declarative language for model files plus the four
//!   built-in presets;
//! - [`analytics`]: exact order/size distribution oracles and the
//!   closed-form predictors for the preset families, including degree laws;
//! - [`ensemble`]: seeded multi-run simulation, per-degree statistics, and
//!   comparison metrics against predicted distributions.
//!
//! Everything stochastic is driven by [`rng::RandomStream`], a fixed,
//! documented generator, so results are reproducible across platforms.

pub mod analytics;
pub mod dsl;
pub mod ensemble;
pub mod graph;
pub mod rng;
pub mod rules;

pub use graph::{
    check_property, kernel_by_name, sample_left_element, GraphError, GraphProperty, LeftElement,
    MultiGraph, SelectionKernel,
};
pub use rng::RandomStream;
pub use rules::{
    applicable, apply_rule, basis_graph, collapse_pa, grow, grow_run, BasisKind, GrowthTrace,
    ModelError, MonitorConfig, PicgModel, Rule, RulesError, StepRecord, StopRule,
};
