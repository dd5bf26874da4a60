//! `picg`: grow random graphs from declarative models, run seeded ensembles,
//! print predictor tables, and compare empirical against predicted
//! distributions.
//!
//! Exit status: 0 on success, 1 on validation/runtime failures, 2 on flag
//! errors. All stochastic commands require a seed (`--seed` or the
//! `PICG_SEED` environment variable; the flag wins) and are fully
//! deterministic given their flags: identical invocations produce
//! byte-identical output files.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

use picg::analytics::{
    joint_order_size_exact, rate_limits, DegreeLaw, Distribution, ModelFamily,
};
use picg::dsl::{parse_model, presets};
use picg::ensemble::{
    compare_distributions, csv_float, run_ensemble_with, write_comparison_csv, EnsembleOptions,
};
use picg::graph::{write_edge_list_csv, write_pajek};
use picg::rules::{grow, MonitorConfig, PicgModel, StopRule};

#[derive(Parser)]
#[command(name = "picg", version, about = "Probabilistic inductive graph models: grow, simulate, predict")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Edgelist,
    Pajek,
}

#[derive(Clone, Copy, ValueEnum)]
enum PredictWhat {
    Degree,
    Order,
    Size,
    Rates,
}

#[derive(Subcommand)]
enum Command {
    /// Grow one graph and export it
    Grow {
        /// Model file path or inline `preset:name[:p1[:p2]]`
        #[arg(long)]
        model: String,
        /// Number of rule applications
        #[arg(long, conflicts_with = "vertices")]
        steps: Option<u64>,
        /// Grow until the graph first reaches this many vertices
        #[arg(long)]
        vertices: Option<usize>,
        /// Random seed (falls back to PICG_SEED)
        #[arg(long)]
        seed: Option<u64>,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ExportFormat::Edgelist)]
        format: ExportFormat,
        /// Also write the growth trace CSV here
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Run a seeded ensemble and write per-degree statistics
    Ensemble {
        #[arg(long)]
        model: String,
        #[arg(long)]
        runs: usize,
        #[arg(long, conflicts_with = "steps")]
        vertices: Option<usize>,
        #[arg(long)]
        steps: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Where to write the `degree,min,q1,median,q3,max,mean` report
        #[arg(long)]
        report: PathBuf,
        /// Check the model's structural invariant every 100 steps
        #[arg(long)]
        check_invariants: bool,
        /// Worker threads for the runs (defaults to all cores)
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print predictor tables (closed forms, corrected forms, oracles)
    Predict {
        #[arg(long)]
        model: String,
        #[arg(long, value_enum)]
        what: PredictWhat,
        /// Step count for order/size tables
        #[arg(long)]
        t: Option<u64>,
        /// Largest degree for degree tables
        #[arg(long, default_value_t = 50)]
        dmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare an empirical distribution CSV against a predicted one
    Compare {
        /// Two-column CSV (header, then `value,probability` rows)
        #[arg(long)]
        empirical: PathBuf,
        #[arg(long)]
        predicted: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parse and validate a model file; exit 0 if it is well-formed
    Validate {
        #[arg(long)]
        model: PathBuf,
    },
}

enum CliError {
    Usage(String),
    Failure(anyhow::Error),
    /// Diagnostics already printed; just set the exit status.
    Reported,
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Failure(e)
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => {}
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(CliError::Failure(e)) => {
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
        Err(CliError::Reported) => std::process::exit(1),
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Grow {
            model,
            steps,
            vertices,
            seed,
            out,
            format,
            trace,
        } => {
            let model = load_model(&model)?;
            let stop = resolve_stop(steps, vertices)?;
            let seed = resolve_seed(seed)?;
            let (graph, growth) =
                grow(&model, stop, seed).map_err(|e| CliError::Failure(e.into()))?;
            let mut bytes = Vec::new();
            match format {
                ExportFormat::Edgelist => write_edge_list_csv(&graph, &mut bytes),
                ExportFormat::Pajek => write_pajek(&graph, &mut bytes),
            }
            .context("serializing the graph")?;
            write_output(out.as_deref(), &bytes)?;
            if let Some(path) = trace {
                let mut bytes = Vec::new();
                growth.write_csv(&mut bytes).context("serializing the trace")?;
                write_output(Some(&path), &bytes)?;
            }
            Ok(())
        }
        Command::Ensemble {
            model,
            runs,
            vertices,
            steps,
            seed,
            report,
            check_invariants,
            jobs,
        } => {
            if runs == 0 {
                return Err(CliError::Usage("--runs must be at least 1".into()));
            }
            let model = load_model(&model)?;
            let stop = resolve_stop(steps, vertices)?;
            let seed = resolve_seed(seed)?;
            let monitor = if check_invariants {
                Some(invariant_monitor(&model)?)
            } else {
                None
            };
            let options = EnsembleOptions {
                monitor: monitor.as_ref(),
                checkpoints: None,
            };
            let stats = run_in_pool(jobs, || {
                run_ensemble_with(&model, runs, stop, seed, options)
            })?
            .map_err(|e| CliError::Failure(e.into()))?;
            let mut bytes = Vec::new();
            stats.write_csv(&mut bytes).context("serializing the report")?;
            write_output(Some(&report), &bytes)?;
            Ok(())
        }
        Command::Predict {
            model,
            what,
            t,
            dmax,
            out,
        } => {
            let model = load_model(&model)?;
            let table = predict_table(&model, what, t, dmax)?;
            write_output(out.as_deref(), table.as_bytes())?;
            Ok(())
        }
        Command::Compare {
            empirical,
            predicted,
            out,
        } => {
            let emp = read_distribution_csv(&empirical)?;
            let pred = read_distribution_csv(&predicted)?;
            let metrics =
                compare_distributions(&emp, &pred).map_err(|e| CliError::Failure(e.into()))?;
            let name = predicted
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "predicted".into());
            let mut bytes = Vec::new();
            write_comparison_csv(&[(name.as_str(), metrics)], &mut bytes)
                .context("serializing the comparison")?;
            write_output(out.as_deref(), &bytes)?;
            Ok(())
        }
        Command::Validate { model } => {
            let text = fs::read_to_string(&model)
                .with_context(|| format!("reading {}", model.display()))?;
            match parse_model(&text) {
                Ok(parsed) => {
                    println!(
                        "ok: model `{}` with {} basis graph(s) and {} rule(s)",
                        parsed.name(),
                        parsed.basis().len(),
                        parsed.rules().len()
                    );
                    Ok(())
                }
                Err(diags) => {
                    for d in &diags.0 {
                        eprintln!("{}:{d}", model.display());
                    }
                    Err(CliError::Reported)
                }
            }
        }
    }
}

/// `preset:name[:p1[:p2]]` or a `.picg` file path.
fn load_model(spec: &str) -> Result<PicgModel, CliError> {
    if let Some(rest) = spec.strip_prefix("preset:") {
        let mut parts = rest.split(':');
        let name = parts.next().unwrap_or_default();
        let params: Vec<f64> = parts
            .map(parse_number)
            .collect::<Result<_, _>>()
            .map_err(CliError::Usage)?;
        return presets::by_name(name, &params).map_err(|e| CliError::Usage(e.to_string()));
    }
    let text = fs::read_to_string(spec)
        .with_context(|| format!("reading model file {spec}"))
        .map_err(CliError::Failure)?;
    parse_model(&text).map_err(|diags| {
        for d in &diags.0 {
            eprintln!("{spec}:{d}");
        }
        CliError::Reported
    })
}

/// Decimal or `a/b`, the same literal forms the model language accepts.
fn parse_number(word: &str) -> Result<f64, String> {
    let value = if let Some((a, b)) = word.split_once('/') {
        match (a.parse::<f64>(), b.parse::<f64>()) {
            (Ok(a), Ok(b)) if b != 0.0 => a / b,
            _ => return Err(format!("`{word}` is not a valid number")),
        }
    } else {
        word.parse::<f64>()
            .map_err(|_| format!("`{word}` is not a valid number"))?
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("`{word}` is not finite"))
    }
}

fn resolve_stop(steps: Option<u64>, vertices: Option<usize>) -> Result<StopRule, CliError> {
    match (steps, vertices) {
        (Some(t), None) => Ok(StopRule::Steps(t)),
        (None, Some(n)) => Ok(StopRule::Vertices(n)),
        _ => Err(CliError::Usage(
            "exactly one of --steps or --vertices is required".into(),
        )),
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("PICG_SEED") {
        Ok(value) => value.trim().parse().map_err(|_| {
            CliError::Usage(format!("PICG_SEED=`{value}` is not a valid integer seed"))
        }),
        Err(_) => Err(CliError::Usage(
            "--seed is required (or set PICG_SEED)".into(),
        )),
    }
}

fn invariant_monitor(model: &PicgModel) -> Result<MonitorConfig, CliError> {
    match presets::class_property(model.name()) {
        Some(property) => Ok(MonitorConfig::new(property)),
        None => Err(CliError::Failure(anyhow!(
            "cannot infer a structural invariant for model `{}`; known model names: {}",
            model.name(),
            presets::preset_names().join(", ")
        ))),
    }
}

fn run_in_pool<T: Send>(
    jobs: Option<usize>,
    work: impl FnOnce() -> T + Send,
) -> Result<T, CliError> {
    match jobs {
        None => Ok(work()),
        Some(n) => {
            if n == 0 {
                return Err(CliError::Usage("--jobs must be at least 1".into()));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .context("building the worker pool")
                .map_err(CliError::Failure)?;
            Ok(pool.install(work))
        }
    }
}

fn predict_table(
    model: &PicgModel,
    what: PredictWhat,
    t: Option<u64>,
    dmax: usize,
) -> Result<String, CliError> {
    let family = ModelFamily::from_model(model);
    let mut out = String::new();
    match what {
        PredictWhat::Rates => {
            let rates = rate_limits(model);
            writeln!(out, "dn,dm").unwrap();
            writeln!(out, "{},{}", csv_float(rates.dn), csv_float(rates.dm)).unwrap();
        }
        PredictWhat::Order => {
            let t = t.ok_or_else(|| CliError::Usage("--t is required for order tables".into()))?;
            let exact = joint_order_size_exact(model, t)
                .map_err(|e| CliError::Failure(e.into()))?
                .marginal_order();
            match family {
                Some(fam) => {
                    writeln!(out, "n,closed_form,adjusted,exact").unwrap();
                    for (n, p) in exact.iter() {
                        writeln!(
                            out,
                            "{n},{},{},{}",
                            csv_float(fam.order_probability_closed_form(t, n)),
                            csv_float(fam.order_probability_adjusted(t, n)),
                            csv_float(p)
                        )
                        .unwrap();
                    }
                }
                None => {
                    writeln!(out, "n,exact").unwrap();
                    for (n, p) in exact.iter() {
                        writeln!(out, "{n},{}", csv_float(p)).unwrap();
                    }
                }
            }
        }
        PredictWhat::Size => {
            let t = t.ok_or_else(|| CliError::Usage("--t is required for size tables".into()))?;
            let exact = joint_order_size_exact(model, t)
                .map_err(|e| CliError::Failure(e.into()))?
                .marginal_size();
            let closed = family.filter(|f| f.size_probability_closed_form(t, 0).is_ok());
            match closed {
                Some(fam) => {
                    writeln!(out, "m,closed_form,exact").unwrap();
                    for (m, p) in exact.iter() {
                        writeln!(
                            out,
                            "{m},{},{}",
                            csv_float(fam.size_probability_closed_form(t, m).expect("checked")),
                            csv_float(p)
                        )
                        .unwrap();
                    }
                }
                None => {
                    writeln!(out, "m,exact").unwrap();
                    for (m, p) in exact.iter() {
                        writeln!(out, "{m},{}", csv_float(p)).unwrap();
                    }
                }
            }
        }
        PredictWhat::Degree => {
            let fam = family.ok_or_else(|| {
                CliError::Failure(anyhow!(
                    "degree predictions need one of the built-in model families"
                ))
            })?;
            let min = fam
                .degree_support_min()
                .map_err(|e| CliError::Failure(e.into()))?;
            let series = fam
                .degree_series(DegreeLaw::MeanField, dmax)
                .map_err(|e| CliError::Failure(e.into()))?;
            writeln!(out, "d,mean_field,corrected,series").unwrap();
            for d in min..=dmax.max(min) {
                let mf = fam
                    .degree_probability(DegreeLaw::MeanField, d)
                    .map_err(|e| CliError::Failure(e.into()))?;
                let corrected = fam
                    .degree_probability(DegreeLaw::Corrected, d)
                    .map_err(|e| CliError::Failure(e.into()))?;
                writeln!(
                    out,
                    "{d},{},{},{}",
                    csv_float(mf),
                    csv_float(corrected),
                    csv_float(series.prob(d))
                )
                .unwrap();
            }
        }
    }
    Ok(out)
}

/// Distribution CSV: a header row, then `value,probability` rows. Extra
/// columns are ignored, so `predict` output can be compared directly (its
/// first probability column).
fn read_distribution_csv(path: &Path) -> Result<Distribution, CliError> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(CliError::Failure)?;
    let mut map = std::collections::BTreeMap::new();
    for (i, line) in text.lines().enumerate().skip(1) {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let parse = || -> Option<(usize, f64)> {
            let mut cols = line.split(',');
            let value = cols.next()?.trim().parse().ok()?;
            let prob = cols.next()?.trim().parse().ok()?;
            Some((value, prob))
        };
        let (value, prob) = parse().ok_or_else(|| {
            CliError::Failure(anyhow!(
                "{}:{}: expected `value,probability`",
                path.display(),
                i + 1
            ))
        })?;
        map.insert(value, prob);
    }
    if map.is_empty() {
        return Err(CliError::Failure(anyhow!(
            "{}: no distribution rows",
            path.display()
        )));
    }
    Ok(Distribution::from_map(&map))
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match path {
        Some(path) => fs::write(path, bytes)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(CliError::Failure),
        None => {
            io::stdout()
                .write_all(bytes)
                .context("writing to stdout")
                .map_err(CliError::Failure)?;
            Ok(())
        }
    }
}
