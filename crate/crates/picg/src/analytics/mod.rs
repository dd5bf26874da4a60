//! Predictors and oracles for the growth models.
//!
//! Two independent routes answer every distribution question:
//!
//! - the *exact route*: a forward dynamic program over joint (order, size)
//!   states that works for any model and honors the inapplicable-rule
//!   renormalization policy of the growth loop ([`joint_order_size_exact`]);
//! - the *closed-form route*: the binomial and partial-fraction formulas for
//!   the four built-in model families ([`ModelFamily`]), kept literal so the
//!   places where a closed form and the exact route disagree stay visible.
//!   Where they disagree, the exact route is this crate's ground truth;
//!   regression tests pin both values.
//!
//! Degree laws additionally come in three flavors per family: the mean-field
//! stationary law, a corrected law that counts both endpoints of an edge
//! insertion, and a power-series oracle that expands the generating function
//! by its linear recurrence, independently of the partial-fraction algebra.

mod closed_form;
mod degree;
mod oracle;

pub use closed_form::ModelFamily;
pub use degree::DegreeLaw;
pub use oracle::{
    expected_order_exact, joint_order_size_exact, order_distribution_exact,
    size_distribution_exact, JointDistribution,
};

use thiserror::Error;

use crate::rules::PicgModel;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalyticsError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("no closed form for {0}")]
    NoClosedForm(&'static str),
    #[error("no rule is applicable in state (n={n}, m={m}) entering step {t}")]
    Stuck { t: u64, n: usize, m: usize },
    #[error("distribution is not normalized (mass {0})")]
    NotNormalized(f64),
}

/// Finite probability vector over consecutive integers starting at `offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    offset: usize,
    probs: Vec<f64>,
}

impl Distribution {
    pub fn from_parts(offset: usize, probs: Vec<f64>) -> Self {
        debug_assert!(probs.iter().all(|p| *p >= 0.0 && p.is_finite()));
        Distribution { offset, probs }
    }

    pub fn point_mass(value: usize) -> Self {
        Distribution {
            offset: value,
            probs: vec![1.0],
        }
    }

    pub fn from_map(map: &std::collections::BTreeMap<usize, f64>) -> Self {
        let Some((&first, _)) = map.iter().next() else {
            return Distribution {
                offset: 0,
                probs: Vec::new(),
            };
        };
        let &last = map.keys().next_back().expect("nonempty");
        let mut probs = vec![0.0; last - first + 1];
        for (&k, &p) in map {
            probs[k - first] = p;
        }
        Distribution {
            offset: first,
            probs,
        }
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Probability of value `k`; zero outside the stored support.
    pub fn prob(&self, k: usize) -> f64 {
        if k < self.offset {
            return 0.0;
        }
        self.probs.get(k - self.offset).copied().unwrap_or(0.0)
    }

    pub fn max_value(&self) -> usize {
        self.offset + self.probs.len().saturating_sub(1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, &p)| (self.offset + i, p))
    }

    pub fn total_mass(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.iter().map(|(k, p)| k as f64 * p).sum()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.total_mass() - 1.0).abs() <= tol
    }
}

/// Expected change per step in vertex and edge counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePair {
    pub dn: f64,
    pub dm: f64,
}

/// Asymptotic growth rates: the weighted sums of the declared rule deltas.
/// (Renormalization near small graphs affects finitely many steps and
/// vanishes in the limit.)
pub fn rate_limits(model: &PicgModel) -> RatePair {
    let mut dn = 0.0;
    let mut dm = 0.0;
    for (rule, w) in model.rules() {
        dn += w * rule.delta_n() as f64;
        dm += w * rule.delta_m() as f64;
    }
    RatePair { dn, dm }
}

/// Shared log-space binomial helpers.
pub(crate) mod math {
    use statrs::function::gamma::ln_gamma;

    /// ln C(a, b); negative infinity when C(a, b) = 0.
    pub fn ln_choose(a: usize, b: usize) -> f64 {
        if b > a {
            return f64::NEG_INFINITY;
        }
        ln_gamma(a as f64 + 1.0) - ln_gamma(b as f64 + 1.0) - ln_gamma((a - b) as f64 + 1.0)
    }

    /// C(a, b) evaluated through logarithms; exact zeros outside the range.
    pub fn choose(a: usize, b: usize) -> f64 {
        if b > a {
            return 0.0;
        }
        if b == 0 || b == a {
            return 1.0;
        }
        ln_choose(a, b).exp()
    }
}
