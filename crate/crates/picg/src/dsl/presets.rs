//! The four built-in models, constructible by name with a parameter list.

use thiserror::Error;

use crate::graph::{
    GraphProperty, DEGREE_PROPORTIONAL, UNIFORM_EDGE, UNIFORM_PAIR, UNIFORM_VERTEX,
};
use crate::rules::{
    basis_graph, BasisKind, PicgModel, Rule, ADD_EDGE, ADD_PENDANT, ATTACH_TRIANGLE, PA_ATTACH,
    SUBDIVIDE_EDGE,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PresetError {
    #[error("unknown preset `{0}`")]
    Unknown(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
}

fn open_unit(name: &str, x: f64) -> Result<(), PresetError> {
    if x > 0.0 && x < 1.0 && x.is_finite() {
        Ok(())
    } else {
        Err(PresetError::BadParams(format!(
            "{name} = {x} must lie strictly inside (0, 1)"
        )))
    }
}

/// Pendant rule with weight `q`, uniform-pair edge rule with weight `1-q`,
/// grown from a single vertex.
pub fn connected(q: f64) -> Result<PicgModel, PresetError> {
    open_unit("q", q)?;
    Ok(PicgModel::new(
        "connected",
        vec![(basis_graph(BasisKind::SingleVertex).unwrap(), 1.0)],
        vec![
            (Rule::new(ADD_PENDANT, UNIFORM_VERTEX).unwrap(), q),
            (Rule::new(ADD_EDGE, UNIFORM_PAIR).unwrap(), 1.0 - q),
        ],
    )
    .expect("preset is valid"))
}

/// Edge rule with weight `q`, subdivision with weight `1-q`, grown from a
/// triangle. Both rules preserve biconnectivity.
pub fn two_vertex_connected(q: f64) -> Result<PicgModel, PresetError> {
    open_unit("q", q)?;
    Ok(PicgModel::new(
        "two_vertex_connected",
        vec![(basis_graph(BasisKind::Triangle).unwrap(), 1.0)],
        vec![
            (Rule::new(ADD_EDGE, UNIFORM_PAIR).unwrap(), q),
            (Rule::new(SUBDIVIDE_EDGE, UNIFORM_EDGE).unwrap(), 1.0 - q),
        ],
    )
    .expect("preset is valid"))
}

/// Edge (q), subdivision (r), and triangle attachment (s = 1-q-r), grown
/// from a triangle. All three preserve 2-edge-connectivity.
pub fn two_edge_connected(q: f64, r: f64) -> Result<PicgModel, PresetError> {
    open_unit("q", q)?;
    open_unit("r", r)?;
    let s = 1.0 - q - r;
    open_unit("s = 1 - q - r", s)?;
    Ok(PicgModel::new(
        "two_edge_connected",
        vec![(basis_graph(BasisKind::Triangle).unwrap(), 1.0)],
        vec![
            (Rule::new(ADD_EDGE, UNIFORM_PAIR).unwrap(), q),
            (Rule::new(SUBDIVIDE_EDGE, UNIFORM_EDGE).unwrap(), r),
            (Rule::new(ATTACH_TRIANGLE, UNIFORM_VERTEX).unwrap(), s),
        ],
    )
    .expect("preset is valid"))
}

/// Degree-proportional pendant attachment from two vertices joined by
/// `m_pa` parallel edges. Growing a multiple of `m_pa` steps and collapsing
/// blocks of that size recovers the multi-edge attachment process.
pub fn pa(m_pa: usize) -> Result<PicgModel, PresetError> {
    let basis = basis_graph(BasisKind::ParallelPair(m_pa))
        .map_err(|_| PresetError::BadParams("m_pa must be at least 1".into()))?;
    Ok(PicgModel::new(
        "pa",
        vec![(basis, 1.0)],
        vec![(Rule::new(PA_ATTACH, DEGREE_PROPORTIONAL).unwrap(), 1.0)],
    )
    .expect("preset is valid"))
}

/// Builds a preset from its name and parameter list, the form the CLI's
/// `preset:name:params` syntax uses.
pub fn by_name(name: &str, params: &[f64]) -> Result<PicgModel, PresetError> {
    let arity = |n: usize| -> Result<(), PresetError> {
        if params.len() == n {
            Ok(())
        } else {
            Err(PresetError::BadParams(format!(
                "preset `{name}` takes {n} parameter(s), got {}",
                params.len()
            )))
        }
    };
    match name {
        "connected" => {
            arity(1)?;
            connected(params[0])
        }
        "two_vertex_connected" => {
            arity(1)?;
            two_vertex_connected(params[0])
        }
        "two_edge_connected" => {
            arity(2)?;
            two_edge_connected(params[0], params[1])
        }
        "pa" => {
            let m_pa = match params {
                [] => 1,
                [m] if m.fract() == 0.0 && *m >= 1.0 && *m <= u32::MAX as f64 => *m as usize,
                [m] => {
                    return Err(PresetError::BadParams(format!(
                        "m_pa = {m} must be a positive integer"
                    )))
                }
                _ => {
                    return Err(PresetError::BadParams(
                        "preset `pa` takes at most one parameter".into(),
                    ))
                }
            };
            pa(m_pa)
        }
        other => Err(PresetError::Unknown(other.to_string())),
    }
}

pub fn preset_names() -> [&'static str; 4] {
    ["pa", "connected", "two_vertex_connected", "two_edge_connected"]
}

/// The structural class each preset's rules preserve, used by invariant
/// monitors. Keyed on the model name.
pub fn class_property(model_name: &str) -> Option<GraphProperty> {
    match model_name {
        "connected" | "pa" => Some(GraphProperty::Connected),
        "two_vertex_connected" => Some(GraphProperty::Biconnected),
        "two_edge_connected" => Some(GraphProperty::TwoEdgeConnected),
        _ => None,
    }
}
