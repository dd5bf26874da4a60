//! Exact order/size distributions by forward dynamic programming.
//!
//! The state is the joint pair (n, m). One step maps each state through the
//! model's rules, restricted to the rules applicable there and renormalized,
//! mirroring the growth loop's redraw policy exactly. Applicability is
//! decided from each kernel's count thresholds, which is exact for every
//! built-in kernel except `uniform_nonadjacent_pair` (treated as needing
//! n >= 2; see `SelectionKernel::min_counts`).

use std::collections::BTreeMap;

use super::{AnalyticsError, Distribution};
use crate::rules::PicgModel;

/// Joint probability table over (order, size) pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    states: BTreeMap<(usize, usize), f64>,
}

impl JointDistribution {
    pub fn states(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.states
    }

    pub fn marginal_order(&self) -> Distribution {
        let mut map = BTreeMap::new();
        for (&(n, _), &p) in &self.states {
            *map.entry(n).or_insert(0.0) += p;
        }
        Distribution::from_map(&map)
    }

    pub fn marginal_size(&self) -> Distribution {
        let mut map = BTreeMap::new();
        for (&(_, m), &p) in &self.states {
            *map.entry(m).or_insert(0.0) += p;
        }
        Distribution::from_map(&map)
    }

    pub fn total_mass(&self) -> f64 {
        self.states.values().sum()
    }
}

/// Runs the DP for `t` steps from the model's basis distribution.
pub fn joint_order_size_exact(
    model: &PicgModel,
    t: u64,
) -> Result<JointDistribution, AnalyticsError> {
    struct RuleStep {
        min_n: usize,
        min_m: usize,
        dn: usize,
        dm: usize,
        weight: f64,
    }
    let rules: Vec<RuleStep> = model
        .rules()
        .iter()
        .map(|(rule, w)| {
            let (min_n, min_m) = rule.kernel().min_counts();
            RuleStep {
                min_n,
                min_m,
                dn: rule.delta_n(),
                dm: rule.delta_m(),
                weight: *w,
            }
        })
        .collect();

    let mut states: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for (g, w) in model.basis() {
        *states.entry((g.n(), g.m())).or_insert(0.0) += w;
    }

    for step in 1..=t {
        let mut next: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (&(n, m), &p) in &states {
            let applicable: Vec<&RuleStep> = rules
                .iter()
                .filter(|r| n >= r.min_n && m >= r.min_m)
                .collect();
            if applicable.is_empty() {
                return Err(AnalyticsError::Stuck { t: step, n, m });
            }
            let total: f64 = applicable.iter().map(|r| r.weight).sum();
            for r in applicable {
                *next.entry((n + r.dn, m + r.dm)).or_insert(0.0) += p * r.weight / total;
            }
        }
        states = next;
    }
    Ok(JointDistribution { states })
}

/// Distribution of the order after `t` steps.
pub fn order_distribution_exact(
    model: &PicgModel,
    t: u64,
) -> Result<Distribution, AnalyticsError> {
    Ok(joint_order_size_exact(model, t)?.marginal_order())
}

/// Distribution of the size after `t` steps.
pub fn size_distribution_exact(model: &PicgModel, t: u64) -> Result<Distribution, AnalyticsError> {
    Ok(joint_order_size_exact(model, t)?.marginal_size())
}

/// Expected order after `t` steps, summed from the exact distribution.
pub fn expected_order_exact(model: &PicgModel, t: u64) -> Result<f64, AnalyticsError> {
    Ok(order_distribution_exact(model, t)?.mean())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::presets;

    const TOL: f64 = 1e-12;

    #[test]
    fn connected_two_steps_split_evenly() {
        // After the forced pendant step, each of the two rule choices at
        // step 2 keeps or grows the order: P(n=2) = P(n=3) = 1/2.
        let model = presets::connected(0.5).unwrap();
        let d = order_distribution_exact(&model, 2).unwrap();
        assert!((d.prob(2) - 0.5).abs() < TOL);
        assert!((d.prob(3) - 0.5).abs() < TOL);
        assert!(d.is_normalized(TOL));
    }

    #[test]
    fn two_edge_connected_exact_values_by_enumeration() {
        // All 9 equally likely length-2 rule sequences over (edge, subdivide,
        // triangle): n=5 from (subdivide,subdivide), (edge,triangle),
        // (triangle,edge); n=7 only from (triangle,triangle).
        let model = presets::two_edge_connected(1.0 / 3.0, 1.0 / 3.0).unwrap();
        let d = order_distribution_exact(&model, 2).unwrap();
        assert!((d.prob(3) - 1.0 / 9.0).abs() < TOL);
        assert!((d.prob(4) - 2.0 / 9.0).abs() < TOL);
        assert!((d.prob(5) - 3.0 / 9.0).abs() < TOL);
        assert!((d.prob(6) - 2.0 / 9.0).abs() < TOL);
        assert!((d.prob(7) - 1.0 / 9.0).abs() < TOL);
        assert!(d.is_normalized(TOL));
    }

    #[test]
    fn basis_only_at_zero_steps() {
        let model = presets::two_vertex_connected(0.7).unwrap();
        let d = order_distribution_exact(&model, 0).unwrap();
        assert_eq!(d.prob(3), 1.0);
    }

    #[test]
    fn size_is_deterministic_for_single_delta_models() {
        let model = presets::connected(0.3).unwrap();
        let d = size_distribution_exact(&model, 5).unwrap();
        assert!((d.prob(5) - 1.0).abs() < TOL);

        let model = presets::two_vertex_connected(0.3).unwrap();
        let d = size_distribution_exact(&model, 5).unwrap();
        assert!((d.prob(8) - 1.0).abs() < TOL);
    }

    #[test]
    fn two_edge_connected_size_after_one_step() {
        // edge and subdivide add one edge, triangle adds three
        let model = presets::two_edge_connected(1.0 / 3.0, 1.0 / 3.0).unwrap();
        let d = size_distribution_exact(&model, 1).unwrap();
        assert!((d.prob(4) - 2.0 / 3.0).abs() < TOL);
        assert!((d.prob(6) - 1.0 / 3.0).abs() < TOL);
    }

    #[test]
    fn expected_order_small_cases() {
        let model = presets::connected(0.5).unwrap();
        // by enumeration: 3q + 2(1-q)
        assert!((expected_order_exact(&model, 2).unwrap() - 2.5).abs() < TOL);

        let model = presets::two_vertex_connected(0.5).unwrap();
        assert!((expected_order_exact(&model, 4).unwrap() - 5.0).abs() < TOL);

        let model = presets::pa(1).unwrap();
        assert!((expected_order_exact(&model, 7).unwrap() - 9.0).abs() < TOL);
        let sizes = size_distribution_exact(&model, 7).unwrap();
        assert!((sizes.mean() - 8.0).abs() < TOL);
    }

    #[test]
    fn joint_mass_stays_normalized() {
        let model = presets::two_edge_connected(0.2, 0.5).unwrap();
        let joint = joint_order_size_exact(&model, 40).unwrap();
        assert!((joint.total_mass() - 1.0).abs() < 1e-11);
    }

    #[test]
    fn mean_order_converges_at_rate_one_over_t() {
        // For every preset E_t[n] is exactly affine in t beyond the first
        // step, so |E_t[n]/t - dn| = C/t with C the affine intercept. The
        // oracle pins the affine law at moderate t; the t = 10^4 point then
        // follows from the formula itself.
        use crate::analytics::rate_limits;
        // the three-rule model's joint state space is quadratic in t, so its
        // DP grid stays smaller
        let cases = [
            (presets::connected(0.3).unwrap(), vec![100u64, 1000]),
            (presets::two_vertex_connected(0.6).unwrap(), vec![100, 1000]),
            (presets::two_edge_connected(0.25, 0.3).unwrap(), vec![50, 100, 200]),
            (presets::pa(1).unwrap(), vec![100, 1000]),
        ];
        for (model, grid) in cases {
            let dn = rate_limits(&model).dn;
            let intercept_at = |t: u64| -> f64 {
                expected_order_exact(&model, t).unwrap() - dn * t as f64
            };
            let c = intercept_at(grid[0]);
            for &t in &grid {
                let drift = (intercept_at(t) - c).abs();
                assert!(drift < 1e-8, "{} t={t}: intercept drift {drift:e}", model.name());
                let err = (expected_order_exact(&model, t).unwrap() / t as f64 - dn).abs();
                assert!(
                    err <= (c.abs() + 1e-6) / t as f64,
                    "{} t={t}: rate error {err} above C/t",
                    model.name()
                );
            }
            // affine extrapolation to t = 10^4
            let t = 10_000f64;
            assert!((c + dn * t) / t - dn <= (c.abs() + 1e-6) / t);
        }
    }

    #[test]
    fn stuck_models_are_reported() {
        use crate::rules::{basis_graph, BasisKind, PicgModel, Rule, ADD_EDGE};
        let model = PicgModel::new(
            "stuck",
            vec![(basis_graph(BasisKind::SingleVertex).unwrap(), 1.0)],
            vec![(Rule::with_default_kernel(ADD_EDGE).unwrap(), 1.0)],
        )
        .unwrap();
        assert!(matches!(
            joint_order_size_exact(&model, 1),
            Err(AnalyticsError::Stuck { t: 1, n: 1, m: 0 })
        ));
    }
}
