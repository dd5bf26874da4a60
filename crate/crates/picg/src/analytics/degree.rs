//! Stationary degree laws for the model families.
//!
//! Each family carries two predictors and one oracle:
//!
//! - [`DegreeLaw::MeanField`]: the stationary solution of the rate equation
//!   that credits a single endpoint per edge insertion, solved by generating
//!   functions (geometric for the one-root families, partial fractions for
//!   the three-rule family);
//! - [`DegreeLaw::Corrected`]: the same rate equation with both endpoints of
//!   an inserted edge counted, which doubles the edge-rule shift term; its
//!   mean equals `2 dm/dn`, the exact asymptotic edges-per-vertex ratio;
//! - the series oracle: coefficients extracted from the generating function
//!   by its denominator's linear recurrence, independent of the
//!   partial-fraction algebra.
//!
//! The preferential-attachment family has no degree law here.

use super::closed_form::ModelFamily;
use super::{AnalyticsError, Distribution};

/// Which endpoint accounting the predictor uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeLaw {
    MeanField,
    Corrected,
}

impl DegreeLaw {
    pub fn name(&self) -> &'static str {
        match self {
            DegreeLaw::MeanField => "mean_field",
            DegreeLaw::Corrected => "corrected",
        }
    }
}

/// Roots below this fraction apart are treated as one double root.
const CONFLUENT_EPS: f64 = 1e-13;

/// `[z^k]` of `A / (d0 - d1 z - d2 z^2)` through the roots of the reflected
/// denominator; switches to the confluent form `(A/d0)(k+1) rho^k` when the
/// two roots coincide.
fn two_root_coefficient(a: f64, d0: f64, d1: f64, d2: f64, k: usize) -> f64 {
    let disc = d1 * d1 + 4.0 * d2 * d0;
    let sq = disc.max(0.0).sqrt();
    if sq <= CONFLUENT_EPS * (d1.abs() + 1.0) {
        return confluent_coefficient(a, d0, d1 / (2.0 * d0), k);
    }
    let rho1 = (d1 + sq) / (2.0 * d0);
    let rho2 = (d1 - sq) / (2.0 * d0);
    (a / d0) * (rho1.powi(k as i32 + 1) - rho2.powi(k as i32 + 1)) / (rho1 - rho2)
}

/// `[z^k]` of `A / (d0 (1 - rho z)^2)`.
fn confluent_coefficient(a: f64, d0: f64, rho: f64, k: usize) -> f64 {
    a / d0 * (k as f64 + 1.0) * rho.powi(k as i32)
}

impl ModelFamily {
    /// Smallest degree with positive predicted probability.
    pub fn degree_support_min(&self) -> Result<usize, AnalyticsError> {
        match self {
            ModelFamily::Pa => Err(AnalyticsError::NoClosedForm(
                "degree law of the preferential-attachment family",
            )),
            ModelFamily::Connected { .. } => Ok(1),
            ModelFamily::TwoVertexConnected { .. } | ModelFamily::TwoEdgeConnected { .. } => Ok(2),
        }
    }

    /// Predicted probability of degree `d` under the chosen law.
    pub fn degree_probability(&self, law: DegreeLaw, d: usize) -> Result<f64, AnalyticsError> {
        match (law, *self) {
            (_, ModelFamily::Pa) => Err(AnalyticsError::NoClosedForm(
                "degree law of the preferential-attachment family",
            )),
            (DegreeLaw::MeanField, ModelFamily::Connected { q }) => {
                // q / (1+q)^d for d >= 1
                Ok(if d >= 1 {
                    q * (1.0 / (1.0 + q)).powi(d as i32)
                } else {
                    0.0
                })
            }
            (DegreeLaw::MeanField, ModelFamily::TwoVertexConnected { q }) => {
                // (1-q) q^(d-2) for d >= 2
                Ok(if d >= 2 {
                    (1.0 - q) * q.powi(d as i32 - 2)
                } else {
                    0.0
                })
            }
            (DegreeLaw::MeanField, ModelFamily::TwoEdgeConnected { q, r }) => {
                // a1 rho1^(d-2) + a2 rho2^(d-2) with
                // rho := (q ± sqrt(q^2 + 4s(1+2s))) / (2(1+2s))
                if d < 2 {
                    return Ok(0.0);
                }
                let s = 1.0 - q - r;
                let sq = (q * q + 4.0 * s * (1.0 + 2.0 * s)).sqrt();
                let denom = 2.0 * (1.0 + 2.0 * s);
                if sq <= CONFLUENT_EPS * (q + 1.0) {
                    return Ok(confluent_coefficient(
                        r + 2.0 * s,
                        1.0 + 2.0 * s,
                        q / denom,
                        d - 2,
                    ));
                }
                let rho1 = (q + sq) / denom;
                let rho2 = (q - sq) / denom;
                let a1 = (q + sq) * (r + 2.0 * s) / (denom * sq);
                let a2 = -(q - sq) * (r + 2.0 * s) / (denom * sq);
                Ok(a1 * rho1.powi(d as i32 - 2) + a2 * rho2.powi(d as i32 - 2))
            }
            (DegreeLaw::Corrected, ModelFamily::Connected { q }) => {
                // from q p_d = q [d=1] + (2-q)(p_{d-1} - p_d):
                // p_d = (q/2) ((2-q)/2)^(d-1)
                Ok(if d >= 1 {
                    q / 2.0 * ((2.0 - q) / 2.0).powi(d as i32 - 1)
                } else {
                    0.0
                })
            }
            (DegreeLaw::Corrected, ModelFamily::TwoVertexConnected { q }) => {
                // from r p_d = r [d=2] + 2q(p_{d-1} - p_d):
                // p_d = (r/(r+2q)) (2q/(r+2q))^(d-2)
                let r = 1.0 - q;
                Ok(if d >= 2 {
                    r / (r + 2.0 * q) * (2.0 * q / (r + 2.0 * q)).powi(d as i32 - 2)
                } else {
                    0.0
                })
            }
            (DegreeLaw::Corrected, ModelFamily::TwoEdgeConnected { q, r }) => {
                // generating function (r+2s) / ((1+q+2s) - 2qz - sz^2)
                if d < 2 {
                    return Ok(0.0);
                }
                let s = 1.0 - q - r;
                Ok(two_root_coefficient(
                    r + 2.0 * s,
                    1.0 + q + 2.0 * s,
                    2.0 * q,
                    s,
                    d - 2,
                ))
            }
        }
    }

    /// Table of [`ModelFamily::degree_probability`] values up to `d_max`.
    pub fn degree_table(
        &self,
        law: DegreeLaw,
        d_max: usize,
    ) -> Result<Distribution, AnalyticsError> {
        let min = self.degree_support_min()?;
        let probs = (min..=d_max.max(min))
            .map(|d| self.degree_probability(law, d))
            .collect::<Result<Vec<f64>, _>>()?;
        Ok(Distribution::from_parts(min, probs))
    }

    /// The series oracle: the same table computed solely from the
    /// generating function's denominator recurrence.
    pub fn degree_series(
        &self,
        law: DegreeLaw,
        d_max: usize,
    ) -> Result<Distribution, AnalyticsError> {
        let min = self.degree_support_min()?;
        let d_max = d_max.max(min);
        let coefficients = |d0: f64, d1: f64, d2: f64, c0: f64, len: usize| -> Vec<f64> {
            let mut c = Vec::with_capacity(len);
            for k in 0..len {
                let value = match k {
                    0 => c0,
                    1 => d1 * c[0] / d0,
                    _ => (d1 * c[k - 1] + d2 * c[k - 2]) / d0,
                };
                c.push(value);
            }
            c
        };
        let len = d_max - min + 1;
        let probs = match (law, *self) {
            (_, ModelFamily::Pa) => {
                return Err(AnalyticsError::NoClosedForm(
                    "degree law of the preferential-attachment family",
                ))
            }
            // (1+q) p_d = p_{d-1} + q [d=1]
            (DegreeLaw::MeanField, ModelFamily::Connected { q }) => {
                coefficients(1.0 + q, 1.0, 0.0, q / (1.0 + q), len)
            }
            // p_d = q p_{d-1} + (1-q) [d=2]
            (DegreeLaw::MeanField, ModelFamily::TwoVertexConnected { q }) => {
                coefficients(1.0, q, 0.0, 1.0 - q, len)
            }
            // (1+2s) c_k = q c_{k-1} + s c_{k-2} + (r+2s) [k=0]
            (DegreeLaw::MeanField, ModelFamily::TwoEdgeConnected { q, r }) => {
                let s = 1.0 - q - r;
                coefficients(
                    1.0 + 2.0 * s,
                    q,
                    s,
                    (r + 2.0 * s) / (1.0 + 2.0 * s),
                    len,
                )
            }
            // 2 p_d = (2-q) p_{d-1} + q [d=1]
            (DegreeLaw::Corrected, ModelFamily::Connected { q }) => {
                coefficients(2.0, 2.0 - q, 0.0, q / 2.0, len)
            }
            // (r+2q) p_d = 2q p_{d-1} + r [d=2]
            (DegreeLaw::Corrected, ModelFamily::TwoVertexConnected { q }) => {
                let r = 1.0 - q;
                coefficients(r + 2.0 * q, 2.0 * q, 0.0, r / (r + 2.0 * q), len)
            }
            // (1+q+2s) c_k = 2q c_{k-1} + s c_{k-2} + (r+2s) [k=0]
            (DegreeLaw::Corrected, ModelFamily::TwoEdgeConnected { q, r }) => {
                let s = 1.0 - q - r;
                coefficients(
                    1.0 + q + 2.0 * s,
                    2.0 * q,
                    s,
                    (r + 2.0 * s) / (1.0 + q + 2.0 * s),
                    len,
                )
            }
        };
        Ok(Distribution::from_parts(min, probs))
    }

    /// Largest-magnitude geometric ratio of the law's tail; `ratio^k` bounds
    /// the mass beyond `support_min + k` up to a bounded prefactor.
    pub fn degree_tail_ratio(&self, law: DegreeLaw) -> Result<f64, AnalyticsError> {
        match (law, *self) {
            (_, ModelFamily::Pa) => Err(AnalyticsError::NoClosedForm(
                "degree law of the preferential-attachment family",
            )),
            (DegreeLaw::MeanField, ModelFamily::Connected { q }) => Ok(1.0 / (1.0 + q)),
            (DegreeLaw::MeanField, ModelFamily::TwoVertexConnected { q }) => Ok(q),
            (DegreeLaw::MeanField, ModelFamily::TwoEdgeConnected { q, r }) => {
                let s = 1.0 - q - r;
                let sq = (q * q + 4.0 * s * (1.0 + 2.0 * s)).sqrt();
                Ok((q + sq) / (2.0 * (1.0 + 2.0 * s)))
            }
            (DegreeLaw::Corrected, ModelFamily::Connected { q }) => Ok((2.0 - q) / 2.0),
            (DegreeLaw::Corrected, ModelFamily::TwoVertexConnected { q }) => {
                let r = 1.0 - q;
                Ok(2.0 * q / (r + 2.0 * q))
            }
            (DegreeLaw::Corrected, ModelFamily::TwoEdgeConnected { q, r }) => {
                let s = 1.0 - q - r;
                let d0 = 1.0 + q + 2.0 * s;
                let sq = (4.0 * q * q + 4.0 * s * d0).sqrt();
                Ok((2.0 * q + sq) / (2.0 * d0))
            }
        }
    }
}
