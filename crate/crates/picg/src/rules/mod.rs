//! The growth engine: configured rules, models, traces, and the grow loop.
//!
//! A model owns a weighted basis distribution and a weighted rule list. One
//! growth step draws a rule; when the drawn rule has no left element in the
//! current graph, the step redraws once among the applicable rules with
//! renormalized weights, which realizes the law `r_i / sum of applicable r_j`
//! (a single-vertex start therefore forces the pendant rule on step one).
//! Growth is a pure function of (model, stop condition, seed).

mod catalog;

pub use catalog::{
    rule_by_name, rule_names, RewriteRule, ADD_EDGE, ADD_PENDANT, ATTACH_TRIANGLE, PA_ATTACH,
    SUBDIVIDE_EDGE,
};

use std::io::{self, Write};

use thiserror::Error;

use crate::graph::{
    check_property, kernel_by_name, GraphError, GraphProperty, LeftElement, MultiGraph,
    SelectionKernel,
};
use crate::rng::RandomStream;

#[derive(Debug, Error)]
pub enum RulesError {
    #[error("rule {0} is not applicable to the current graph")]
    NotApplicable(&'static str),
    #[error("no rule is applicable at step {step}")]
    Stuck { step: u64 },
    #[error("rule {rule} cannot rewrite left element {left}")]
    LeftElementMismatch { rule: &'static str, left: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("unknown rule kind `{0}`")]
    UnknownRule(String),
    #[error("unknown kernel `{0}`")]
    UnknownKernel(String),
    #[error("rule {rule} does not accept kernel {kernel}")]
    IncompatibleKernel { rule: &'static str, kernel: &'static str },
    #[error("trace has {steps} steps, not a multiple of block size {m_pa}")]
    BadBlockSize { steps: usize, m_pa: usize },
    #[error("trace does not describe this graph: {0}")]
    TraceMismatch(String),
    #[error("graph lost property {property} at step {step}")]
    InvariantViolated { property: GraphProperty, step: u64 },
    #[error("basis block size must be at least 1")]
    BadBasisParameter,
}

/// The basis graphs the growth models start from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    /// One isolated vertex.
    SingleVertex,
    /// The triangle.
    Triangle,
    /// Two vertices joined by the given number of parallel edges.
    ParallelPair(usize),
}

/// Builds a basis graph.
pub fn basis_graph(kind: BasisKind) -> Result<MultiGraph, RulesError> {
    match kind {
        BasisKind::SingleVertex => Ok(MultiGraph::with_vertices(1, false)),
        BasisKind::Triangle => {
            Ok(MultiGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).expect("triangle is loopless"))
        }
        BasisKind::ParallelPair(k) => {
            if k == 0 {
                return Err(RulesError::BadBasisParameter);
            }
            let mut g = MultiGraph::with_vertices(2, false);
            for _ in 0..k {
                g.add_edge(0, 1).expect("pair edge is loopless");
            }
            Ok(g)
        }
    }
}

/// A rewrite rule paired with the kernel that picks its left elements.
#[derive(Clone, Copy)]
pub struct Rule {
    behavior: &'static dyn RewriteRule,
    kernel: &'static dyn SelectionKernel,
}

impl Rule {
    pub fn new(kind: &str, kernel: &str) -> Result<Rule, RulesError> {
        let behavior =
            rule_by_name(kind).ok_or_else(|| RulesError::UnknownRule(kind.to_string()))?;
        let kernel =
            kernel_by_name(kernel).ok_or_else(|| RulesError::UnknownKernel(kernel.to_string()))?;
        if !behavior.supported_kernels().contains(&kernel.name()) {
            return Err(RulesError::IncompatibleKernel {
                rule: behavior.name(),
                kernel: kernel.name(),
            });
        }
        Ok(Rule { behavior, kernel })
    }

    pub fn with_default_kernel(kind: &str) -> Result<Rule, RulesError> {
        let behavior =
            rule_by_name(kind).ok_or_else(|| RulesError::UnknownRule(kind.to_string()))?;
        Rule::new(kind, behavior.default_kernel())
    }

    pub fn kind(&self) -> &'static str {
        self.behavior.name()
    }

    pub fn kernel_name(&self) -> &'static str {
        self.kernel.name()
    }

    pub fn kernel(&self) -> &'static dyn SelectionKernel {
        self.kernel
    }

    pub fn delta_n(&self) -> usize {
        self.behavior.delta_n()
    }

    pub fn delta_m(&self) -> usize {
        self.behavior.delta_m()
    }
}

impl PartialEq for Rule {
    fn eq(&self, other: &Self) -> bool {
        self.kind() == other.kind() && self.kernel_name() == other.kernel_name()
    }
}

impl std::fmt::Debug for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Rule({} via {})", self.kind(), self.kernel_name())
    }
}

/// Weighted basis distribution plus weighted rule list.
///
/// Weight vectors are validated to sum to 1 within 1e-9 and then
/// renormalized exactly; every weight must be strictly positive, so the
/// class coincides with its deterministic counterpart.
#[derive(Debug, Clone, PartialEq)]
pub struct PicgModel {
    name: String,
    basis: Vec<(MultiGraph, f64)>,
    rules: Vec<(Rule, f64)>,
}

pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("model has no basis graphs")]
    EmptyBasis,
    #[error("model has no rules")]
    EmptyRules,
    #[error("{what} weights sum to {sum}, expected 1")]
    BadWeightSum { what: &'static str, sum: f64 },
    #[error("{what} weight {value} must be strictly positive")]
    NonPositiveWeight { what: &'static str, value: f64 },
    #[error("basis graph {index} is invalid: {message}")]
    BadBasisGraph { index: usize, message: String },
}

fn validated_weights(
    what: &'static str,
    mut items: Vec<f64>,
) -> Result<Vec<f64>, ModelError> {
    for &w in &items {
        if w <= 0.0 || !w.is_finite() {
            return Err(ModelError::NonPositiveWeight { what, value: w });
        }
    }
    let sum: f64 = items.iter().sum();
    if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
        return Err(ModelError::BadWeightSum { what, sum });
    }
    // Renormalize exactly, but leave sums already at 1 up to rounding noise
    // untouched so that normalization is idempotent (round-trip stability).
    if (sum - 1.0).abs() > 16.0 * f64::EPSILON {
        for w in &mut items {
            *w /= sum;
        }
    }
    Ok(items)
}

impl PicgModel {
    pub fn new(
        name: impl Into<String>,
        basis: Vec<(MultiGraph, f64)>,
        rules: Vec<(Rule, f64)>,
    ) -> Result<Self, ModelError> {
        if basis.is_empty() {
            return Err(ModelError::EmptyBasis);
        }
        if rules.is_empty() {
            return Err(ModelError::EmptyRules);
        }
        for (i, (g, _)) in basis.iter().enumerate() {
            if g.n() == 0 {
                return Err(ModelError::BadBasisGraph {
                    index: i,
                    message: "basis graph has no vertices".into(),
                });
            }
            if g.allows_loops() {
                return Err(ModelError::BadBasisGraph {
                    index: i,
                    message: "basis graphs must be loopless".into(),
                });
            }
        }
        let basis_weights =
            validated_weights("basis", basis.iter().map(|(_, w)| *w).collect())?;
        let rule_weights = validated_weights("rule", rules.iter().map(|(_, w)| *w).collect())?;
        Ok(PicgModel {
            name: name.into(),
            basis: basis
                .into_iter()
                .zip(basis_weights)
                .map(|((g, _), w)| (g, w))
                .collect(),
            rules: rules
                .into_iter()
                .zip(rule_weights)
                .map(|((r, _), w)| (r, w))
                .collect(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis(&self) -> &[(MultiGraph, f64)] {
        &self.basis
    }

    pub fn rules(&self) -> &[(Rule, f64)] {
        &self.rules
    }

    pub fn max_basis_order(&self) -> usize {
        self.basis.iter().map(|(g, _)| g.n()).max().unwrap_or(0)
    }
}

/// When to stop growing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopRule {
    /// Apply exactly this many rules.
    Steps(u64),
    /// Stop after the step that first reaches this many vertices
    /// (a two-vertex rule may overshoot by one).
    Vertices(usize),
}

/// Provenance of one growth step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    /// 1-based step number.
    pub t: u64,
    /// Index into the model's rule list.
    pub rule_index: usize,
    pub left: LeftElement,
    /// Ids of the vertices this step created, in creation order.
    pub created: Vec<usize>,
    pub delta_n: usize,
    pub delta_m: usize,
}

/// Full per-run provenance; replayable given the model.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthTrace {
    pub seed: u64,
    pub stream: u64,
    pub model: String,
    pub steps: Vec<StepRecord>,
}

impl GrowthTrace {
    pub fn total_delta_n(&self) -> usize {
        self.steps.iter().map(|s| s.delta_n).sum()
    }

    pub fn total_delta_m(&self) -> usize {
        self.steps.iter().map(|s| s.delta_m).sum()
    }

    /// CSV `t,rule,left,dn,dm`; `rule` is the model's rule index.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "t,rule,left,dn,dm")?;
        for s in &self.steps {
            writeln!(
                w,
                "{},{},{},{},{}",
                s.t, s.rule_index, s.left, s.delta_n, s.delta_m
            )?;
        }
        Ok(())
    }
}

/// True when the rule's kernel can find a left element in `g`.
pub fn applicable(g: &MultiGraph, rule: &Rule) -> bool {
    rule.kernel().applicable(g)
}

/// Outcome of one rule application.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleApplication {
    pub left: LeftElement,
    pub created: Vec<usize>,
    pub delta_n: usize,
    pub delta_m: usize,
}

/// Samples a left element with the rule's kernel and rewrites `g` in place.
pub fn apply_rule(
    g: &mut MultiGraph,
    rule: &Rule,
    rng: &mut RandomStream,
) -> Result<RuleApplication, RulesError> {
    if !applicable(g, rule) {
        return Err(RulesError::NotApplicable(rule.kind()));
    }
    let (n0, m0) = (g.n(), g.m());
    let left = rule.kernel().sample(g, rng)?;
    let created = rule.behavior.rewrite(g, &left)?;
    let (delta_n, delta_m) = (g.n() - n0, g.m() - m0);
    assert_eq!(
        (delta_n, delta_m),
        (rule.delta_n(), rule.delta_m()),
        "rule {} realized deltas diverge from its declaration",
        rule.kind()
    );
    Ok(RuleApplication {
        left,
        created,
        delta_n,
        delta_m,
    })
}

/// Periodic structural check during growth. Checks are read-only and draw
/// no randomness, so enabling one never changes the run.
#[derive(Debug, Clone, Copy)]
pub struct MonitorConfig {
    pub property: GraphProperty,
    /// Check after every `period`-th step; the final graph is always checked.
    pub period: u64,
}

impl MonitorConfig {
    /// The default cadence: every 100 steps plus the final graph.
    pub fn new(property: GraphProperty) -> Self {
        MonitorConfig {
            property,
            period: 100,
        }
    }

    pub fn every(property: GraphProperty, period: u64) -> Self {
        MonitorConfig {
            property,
            period: period.max(1),
        }
    }
}

/// Grows one graph; stream 0 of `seed`.
pub fn grow(
    model: &PicgModel,
    stop: StopRule,
    seed: u64,
) -> Result<(MultiGraph, GrowthTrace), RulesError> {
    grow_run(model, stop, seed, 0, None)
}

/// Grows one graph on an explicit (seed, stream) pair, optionally monitored.
///
/// Draw order is fixed: one weighted draw for the basis, then per step one
/// weighted draw for the rule (plus one redraw among applicable rules when
/// the first draw is inapplicable) followed by the kernel's draws.
pub fn grow_run(
    model: &PicgModel,
    stop: StopRule,
    seed: u64,
    stream: u64,
    monitor: Option<&MonitorConfig>,
) -> Result<(MultiGraph, GrowthTrace), RulesError> {
    let mut rng = RandomStream::for_run(seed, stream);
    let basis_weights: Vec<f64> = model.basis().iter().map(|(_, w)| *w).collect();
    let basis_index = rng.weighted_index(&basis_weights);
    let mut g = model.basis()[basis_index].0.clone();

    let mut trace = GrowthTrace {
        seed,
        stream,
        model: model.name().to_string(),
        steps: Vec::new(),
    };
    let rule_weights: Vec<f64> = model.rules().iter().map(|(_, w)| *w).collect();

    let mut t: u64 = 0;
    loop {
        let done = match stop {
            StopRule::Steps(limit) => t >= limit,
            StopRule::Vertices(target) => g.n() >= target,
        };
        if done {
            break;
        }

        let mut index = rng.weighted_index(&rule_weights);
        if !applicable(&g, &model.rules()[index].0) {
            let candidates: Vec<usize> = (0..model.rules().len())
                .filter(|&i| applicable(&g, &model.rules()[i].0))
                .collect();
            if candidates.is_empty() {
                return Err(RulesError::Stuck { step: t + 1 });
            }
            let weights: Vec<f64> = candidates.iter().map(|&i| rule_weights[i]).collect();
            index = candidates[rng.weighted_index(&weights)];
        }

        let application = apply_rule(&mut g, &model.rules()[index].0, &mut rng)?;
        t += 1;
        trace.steps.push(StepRecord {
            t,
            rule_index: index,
            left: application.left,
            created: application.created,
            delta_n: application.delta_n,
            delta_m: application.delta_m,
        });

        if let Some(mc) = monitor {
            if t.is_multiple_of(mc.period) && !check_property(&g, mc.property) {
                return Err(RulesError::InvariantViolated {
                    property: mc.property,
                    step: t,
                });
            }
        }
    }

    if let Some(mc) = monitor {
        if !check_property(&g, mc.property) {
            return Err(RulesError::InvariantViolated {
                property: mc.property,
                step: t,
            });
        }
    }
    Ok((g, trace))
}

/// Merges each consecutive block of `m_pa` created vertices into one vertex,
/// keeping the two basis vertices as-is. Edges are all retained; edges
/// internal to a block become loops (degree contribution 2), so the output
/// graph permits loops. The result has `2 + steps / m_pa` vertices.
pub fn collapse_pa(
    g: &MultiGraph,
    trace: &GrowthTrace,
    m_pa: usize,
) -> Result<MultiGraph, RulesError> {
    if m_pa == 0 {
        return Err(RulesError::BadBasisParameter);
    }
    let steps = trace.steps.len();
    if !steps.is_multiple_of(m_pa) {
        return Err(RulesError::BadBlockSize { steps, m_pa });
    }
    let mut collapsed_id = vec![usize::MAX; g.n()];
    let mut created_total = 0usize;
    for record in &trace.steps {
        if record.created.len() != 1 {
            return Err(RulesError::TraceMismatch(format!(
                "step {} created {} vertices; expected single-vertex attachment steps",
                record.t,
                record.created.len()
            )));
        }
        let id = record.created[0];
        if id >= g.n() || collapsed_id[id] != usize::MAX {
            return Err(RulesError::TraceMismatch(format!(
                "step {} claims vertex {id} twice or out of range",
                record.t
            )));
        }
        collapsed_id[id] = 2 + (record.t as usize - 1) / m_pa;
        created_total += 1;
    }
    if g.n() != created_total + 2 {
        return Err(RulesError::TraceMismatch(format!(
            "graph has {} vertices but the trace accounts for {} plus a 2-vertex basis",
            g.n(),
            created_total
        )));
    }
    for (v, slot) in collapsed_id.iter_mut().enumerate() {
        if *slot == usize::MAX {
            if v >= 2 {
                return Err(RulesError::TraceMismatch(format!(
                    "vertex {v} is neither a basis vertex nor created by the trace"
                )));
            }
            *slot = v;
        }
    }
    let mut out = MultiGraph::with_vertices(2 + steps / m_pa, true);
    for &(u, v) in g.edges() {
        out.add_edge(collapsed_id[u], collapsed_id[v])?;
    }
    Ok(out)
}
