//! The model description language and the built-in presets.
//!
//! Model files (extension `.picg`) are line-oriented, whitespace-separated
//! text; `#` starts a comment to end of line:
//!
//! ```text
//! model connected
//! basis {
//!   graph g0 prob 1 { vertices 1 edges [ ] }
//! }
//! rules {
//!   rule r0 kind add_pendant prob 1/2 select uniform_vertex
//!   rule r1 kind add_edge prob 1/2 select uniform_pair
//! }
//! ```
//!
//! Probabilities are decimal literals (scientific notation allowed) or
//! fractions `a/b`. `select` is optional and defaults to the rule kind's
//! default kernel; the `simple` modifier on an `add_edge` rule switches its
//! kernel to `uniform_nonadjacent_pair`, restricting the class to simple
//! graphs. Graph and rule names are labels for humans: they must be single
//! tokens but carry no semantics, and the canonical serializer regenerates
//! them as `g0, g1, ...` / `r0, r1, ...`.
//!
//! [`parse_model`] validates as it parses (weight sums within 1e-9 of 1,
//! strictly positive weights, kernel/rule compatibility, loopless in-range
//! basis edges) and returns either a complete model or a list of
//! position-bearing diagnostics, never a partial model. [`serialize_model`]
//! emits canonical text with 17-significant-digit weights, so parsing it
//! back reproduces the model exactly.

mod lexer;
mod parser;
pub mod presets;

pub use parser::parse_model;
pub use presets::PresetError;

use std::fmt::Write as _;

use crate::rules::PicgModel;

/// One parse or validation finding, with its 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

/// All findings for one source, in source order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagnosticList(pub Vec<Diagnostic>);

impl std::fmt::Display for DiagnosticList {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl std::error::Error for DiagnosticList {}

/// Canonical text form; `parse_model` reproduces the model exactly.
pub fn serialize_model(model: &PicgModel) -> String {
    let mut out = String::new();
    writeln!(out, "model {}", model.name()).unwrap();
    writeln!(out, "basis {{").unwrap();
    for (i, (g, w)) in model.basis().iter().enumerate() {
        write!(
            out,
            "  graph g{i} prob {} {{ vertices {} edges [",
            weight(*w),
            g.n()
        )
        .unwrap();
        for &(u, v) in g.edges() {
            write!(out, " {u}-{v}").unwrap();
        }
        writeln!(out, " ] }}").unwrap();
    }
    writeln!(out, "}}").unwrap();
    writeln!(out, "rules {{").unwrap();
    for (i, (rule, w)) in model.rules().iter().enumerate() {
        writeln!(
            out,
            "  rule r{i} kind {} prob {} select {}",
            rule.kind(),
            weight(*w),
            rule.kernel_name()
        )
        .unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

/// 17 significant digits: enough to reproduce any f64 exactly.
fn weight(w: f64) -> String {
    format!("{w:.16e}")
}

#[cfg(test)]
mod tests;
