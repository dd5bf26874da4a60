//! Seeded ensembles: many independent growth runs, per-degree statistics,
//! expectation trajectories, and comparison against predicted distributions.
//!
//! Run `k` of an ensemble draws from stream `k` of the master seed, so the
//! ensemble is deterministic as a whole and individual runs can be replayed
//! in isolation. Runs execute in parallel (rayon); results are collected in
//! run order and aggregation is a pure order-independent fold, so the
//! statistics do not depend on scheduling.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{self, Write};

use rayon::prelude::*;
use thiserror::Error;

use crate::analytics::Distribution;
use crate::rules::{grow_run, GrowthTrace, MonitorConfig, PicgModel, RulesError, StopRule};

#[derive(Debug, Error)]
pub enum EnsembleError {
    #[error(transparent)]
    Rules(#[from] RulesError),
    #[error("distribution is not normalized (mass {0})")]
    NotNormalized(f64),
    #[error("checkpoints must be ascending")]
    BadCheckpoints,
}

/// Five-number summary plus mean of one degree's density across runs.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeSummary {
    pub degree: usize,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub mean: f64,
}

/// Ensemble means of n and m after `t` steps.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryPoint {
    pub t: u64,
    pub mean_n: f64,
    pub mean_m: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleStats {
    pub runs: usize,
    pub stop: StopRule,
    /// One summary per degree occurring in any run, ascending; runs where
    /// the degree is absent contribute density 0.
    pub degree_summaries: Vec<DegreeSummary>,
    /// Final (n, m) per run, in run order.
    pub finals: Vec<(usize, usize)>,
    /// Ensemble mean (n, m) at the requested step checkpoints.
    pub trajectory: Option<Vec<TrajectoryPoint>>,
}

impl EnsembleStats {
    /// The mean empirical degree density across runs, a distribution in its
    /// own right (each run's densities sum to one).
    pub fn mean_degree_density(&self) -> Distribution {
        let map: BTreeMap<usize, f64> = self
            .degree_summaries
            .iter()
            .map(|s| (s.degree, s.mean))
            .collect();
        Distribution::from_map(&map)
    }

    /// Mean over runs of each final graph's mean degree 2m/n.
    pub fn mean_final_degree(&self) -> f64 {
        let total: f64 = self
            .finals
            .iter()
            .map(|&(n, m)| 2.0 * m as f64 / n as f64)
            .sum();
        total / self.finals.len() as f64
    }

    /// CSV `degree,min,q1,median,q3,max,mean`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "degree,min,q1,median,q3,max,mean")?;
        for s in &self.degree_summaries {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                s.degree,
                csv_float(s.min),
                csv_float(s.q1),
                csv_float(s.median),
                csv_float(s.q3),
                csv_float(s.max),
                csv_float(s.mean)
            )?;
        }
        Ok(())
    }
}

/// Float formatting used by every CSV this crate emits: 17 significant
/// digits, so values survive a round trip through text.
pub fn csv_float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EnsembleOptions<'a> {
    /// Structural invariant to check during each run. Checks are read-only
    /// and never change the random stream.
    pub monitor: Option<&'a MonitorConfig>,
    /// Ascending step counts at which to record ensemble mean n and m
    /// (recovered from the traces; meaningful when growth runs at least that
    /// many steps).
    pub checkpoints: Option<&'a [u64]>,
}

struct RunResult {
    densities: BTreeMap<usize, f64>,
    n: usize,
    m: usize,
    checkpoint_counts: Vec<(usize, usize)>,
}

/// Grows `runs` independent graphs and aggregates their statistics.
pub fn run_ensemble(
    model: &PicgModel,
    runs: usize,
    stop: StopRule,
    master_seed: u64,
) -> Result<EnsembleStats, EnsembleError> {
    run_ensemble_with(model, runs, stop, master_seed, EnsembleOptions::default())
}

pub fn run_ensemble_with(
    model: &PicgModel,
    runs: usize,
    stop: StopRule,
    master_seed: u64,
    options: EnsembleOptions<'_>,
) -> Result<EnsembleStats, EnsembleError> {
    assert!(runs >= 1, "an ensemble needs at least one run");
    if let Some(cp) = options.checkpoints {
        if cp.is_empty() || cp.windows(2).any(|w| w[0] >= w[1]) {
            return Err(EnsembleError::BadCheckpoints);
        }
    }
    let results: Vec<RunResult> = (0..runs as u64)
        .into_par_iter()
        .map(|run| -> Result<RunResult, EnsembleError> {
            let (g, trace) = grow_run(model, stop, master_seed, run, options.monitor)?;
            let n = g.n();
            let densities = g
                .degree_histogram()
                .into_iter()
                .map(|(d, c)| (d, c as f64 / n as f64))
                .collect();
            let checkpoint_counts = options
                .checkpoints
                .map(|cp| counts_at_checkpoints(&g, &trace, cp))
                .unwrap_or_default();
            Ok(RunResult {
                densities,
                n,
                m: g.m(),
                checkpoint_counts,
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(aggregate(stop, options.checkpoints, &results))
}

/// (n, m) after each checkpoint step, replayed from the trace deltas.
fn counts_at_checkpoints(
    g: &crate::graph::MultiGraph,
    trace: &GrowthTrace,
    checkpoints: &[u64],
) -> Vec<(usize, usize)> {
    let mut n = g.n() - trace.total_delta_n();
    let mut m = g.m() - trace.total_delta_m();
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut i = 0;
    for &cp in checkpoints {
        while i < trace.steps.len() && trace.steps[i].t <= cp {
            n += trace.steps[i].delta_n;
            m += trace.steps[i].delta_m;
            i += 1;
        }
        out.push((n, m));
    }
    out
}

fn aggregate(stop: StopRule, checkpoints: Option<&[u64]>, results: &[RunResult]) -> EnsembleStats {
    let runs = results.len();
    let degrees: BTreeSet<usize> = results
        .iter()
        .flat_map(|r| r.densities.keys().copied())
        .collect();
    let degree_summaries = degrees
        .into_iter()
        .map(|degree| {
            let mut samples: Vec<f64> = results
                .iter()
                .map(|r| r.densities.get(&degree).copied().unwrap_or(0.0))
                .collect();
            samples.sort_by(|a, b| a.partial_cmp(b).expect("densities are finite"));
            DegreeSummary {
                degree,
                min: samples[0],
                q1: quantile(&samples, 0.25),
                median: quantile(&samples, 0.5),
                q3: quantile(&samples, 0.75),
                max: samples[samples.len() - 1],
                mean: samples.iter().sum::<f64>() / runs as f64,
            }
        })
        .collect();
    let trajectory = checkpoints.map(|cp| {
        cp.iter()
            .enumerate()
            .map(|(i, &t)| {
                let (sum_n, sum_m) = results
                    .iter()
                    .map(|r| r.checkpoint_counts[i])
                    .fold((0usize, 0usize), |acc, (n, m)| (acc.0 + n, acc.1 + m));
                TrajectoryPoint {
                    t,
                    mean_n: sum_n as f64 / runs as f64,
                    mean_m: sum_m as f64 / runs as f64,
                }
            })
            .collect()
    });
    EnsembleStats {
        runs,
        stop,
        degree_summaries,
        finals: results.iter().map(|r| (r.n, r.m)).collect(),
        trajectory,
    }
}

/// Linear-interpolation quantile of an ascending sample.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let k = sorted.len();
    if k == 1 {
        return sorted[0];
    }
    let pos = p * (k - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] + frac * (sorted[hi] - sorted[lo])
}

/// Ensemble means of n and m after each checkpoint step.
pub fn trajectory(
    model: &PicgModel,
    checkpoints: &[u64],
    runs: usize,
    master_seed: u64,
) -> Result<Vec<TrajectoryPoint>, EnsembleError> {
    let last = *checkpoints.last().ok_or(EnsembleError::BadCheckpoints)?;
    let stats = run_ensemble_with(
        model,
        runs,
        StopRule::Steps(last),
        master_seed,
        EnsembleOptions {
            monitor: None,
            checkpoints: Some(checkpoints),
        },
    )?;
    Ok(stats.trajectory.expect("requested checkpoints"))
}

/// Scalar measures of fit between an empirical and a predicted distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonMetrics {
    /// Total variation distance over the union support, in [0, 1].
    pub tv: f64,
    pub max_abs_dev: f64,
    pub mean_empirical: f64,
    pub mean_predicted: f64,
}

const NORMALIZATION_TOLERANCE: f64 = 1e-6;

/// Compares two normalized distributions over their union support.
pub fn compare_distributions(
    empirical: &Distribution,
    predicted: &Distribution,
) -> Result<ComparisonMetrics, EnsembleError> {
    for dist in [empirical, predicted] {
        let mass = dist.total_mass();
        if (mass - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(EnsembleError::NotNormalized(mass));
        }
    }
    let lo = empirical.offset().min(predicted.offset());
    let hi = empirical.max_value().max(predicted.max_value());
    let mut abs_sum = 0.0;
    let mut max_abs = 0.0f64;
    for k in lo..=hi {
        let diff = (empirical.prob(k) - predicted.prob(k)).abs();
        abs_sum += diff;
        max_abs = max_abs.max(diff);
    }
    Ok(ComparisonMetrics {
        tv: 0.5 * abs_sum,
        max_abs_dev: max_abs,
        mean_empirical: empirical.mean(),
        mean_predicted: predicted.mean(),
    })
}

/// CSV `predictor,tv,max_abs_dev,mean_emp,mean_pred`, one row per predictor.
pub fn write_comparison_csv<W: Write>(
    rows: &[(&str, ComparisonMetrics)],
    mut w: W,
) -> io::Result<()> {
    writeln!(w, "predictor,tv,max_abs_dev,mean_emp,mean_pred")?;
    for (name, m) in rows {
        writeln!(
            w,
            "{},{},{},{},{}",
            name,
            csv_float(m.tv),
            csv_float(m.max_abs_dev),
            csv_float(m.mean_empirical),
            csv_float(m.mean_predicted)
        )?;
    }
    Ok(())
}
