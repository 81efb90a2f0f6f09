//! Uniform experiment execution and record plumbing.
//!
//! Every algorithm in the crate runs through one entry point that selects
//! parameters, executes against a fresh ledger, checks the result against
//! its brute-force oracle when the instance is small enough, and packages
//! everything into a serializable [`ExperimentRecord`]. Records are stable:
//! fixed field order, no timestamps (wall time is opt-in), so identical
//! inputs produce byte-identical JSON, and growth-law fits can be re-run
//! from archived records alone.
//!
//! The two product tasks need a right-hand operand in addition to the
//! instance: a dense matrix of uniform random integer weights derived
//! deterministically from the instance seed on an RNG stream disjoint from
//! the generators' streams. A dense operand keeps every bucket and cell of
//! the left operand's structure occupied, so measured charges follow the
//! predicted growth law instead of collapsing on empty searches.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::apsp::{
    apnp, apsp_geometric, apsp_geometric_bounded, apsp_node_weighted, apsp_small_l,
    min_triangle_quantum, strategy_for, NodeWeightedVariant,
};
use crate::error::{Error, Result};
use crate::gen::MAX_INTEGER_WEIGHT;
use crate::graph::WeightedGraph;
use crate::ledger::{CostLedger, Totals};
use crate::matprod::{bucketed_bool_min_product, geometric_star_product, MinleMode};
use crate::matrix::{MatmulKernel, Matrix};
use crate::oracle::{self, Triangle};
use crate::params::{select_parameters, ParameterPlan, Task, OMEGA_MODEL_DEFAULT};
use crate::qmodel::GroverConfig;
use crate::weight::Weight;

/// Instances at most this large are checked against their oracle by
/// default.
pub const DEFAULT_ORACLE_CAP: usize = 128;

/// RNG stream for [`dense_integer_operand`], disjoint from the instance
/// generators' streams.
const OPERAND_STREAM: u64 = 7;

/// Knobs shared by every run; defaults match the command-line defaults.
#[derive(Debug, Clone)]
pub struct RunOptions {
    pub omega_model: f64,
    pub kappa: u32,
    pub grover_constant: f64,
    pub delta: f64,
    pub repetitions: u32,
    pub mode: MinleMode,
    pub kernel: MatmulKernel,
    pub variant: NodeWeightedVariant,
    pub oracle_cap: usize,
    /// Record wall-clock time. Off by default so outputs stay
    /// byte-deterministic.
    pub timings: bool,
    /// Keep the full result table in the record.
    pub emit_table: bool,
    pub override_r: Option<usize>,
    pub override_d: Option<usize>,
    pub override_s: Option<usize>,
    pub override_ell: Option<usize>,
}

impl Default for RunOptions {
    fn default() -> RunOptions {
        RunOptions {
            omega_model: OMEGA_MODEL_DEFAULT,
            kappa: 1,
            grover_constant: 1.0,
            delta: 0.0,
            repetitions: 1,
            mode: MinleMode::Analytic,
            kernel: MatmulKernel::NaiveCubic,
            variant: NodeWeightedVariant::GroverCombine,
            oracle_cap: DEFAULT_ORACLE_CAP,
            timings: false,
            emit_table: true,
            override_r: None,
            override_d: None,
            override_s: None,
            override_ell: None,
        }
    }
}

/// Name used in records and on the command line for a billing mode.
pub fn mode_name(mode: MinleMode) -> &'static str {
    match mode {
        MinleMode::Analytic => "analytic",
        MinleMode::Trivial => "trivial",
    }
}

/// Parses [`mode_name`] output.
pub fn parse_mode(s: &str) -> Result<MinleMode> {
    match s {
        "analytic" => Ok(MinleMode::Analytic),
        "trivial" => Ok(MinleMode::Trivial),
        other => Err(Error::InvalidParameter(format!(
            "unknown billing mode `{other}` (expected analytic or trivial)"
        ))),
    }
}

/// Name used in records and on the command line for a matmul kernel.
pub fn kernel_name(kernel: MatmulKernel) -> &'static str {
    match kernel {
        MatmulKernel::NaiveCubic => "naive-cubic",
        MatmulKernel::Strassen => "strassen",
    }
}

/// Parses [`kernel_name`] output.
pub fn parse_kernel(s: &str) -> Result<MatmulKernel> {
    match s {
        "naive-cubic" => Ok(MatmulKernel::NaiveCubic),
        "strassen" => Ok(MatmulKernel::Strassen),
        other => Err(Error::InvalidParameter(format!(
            "unknown kernel `{other}` (expected naive-cubic or strassen)"
        ))),
    }
}

/// The instance metadata a record keeps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceDescriptor {
    pub kind: String,
    pub n: usize,
    pub seed: u64,
    pub directed: bool,
    pub edges: usize,
}

impl InstanceDescriptor {
    fn of(g: &WeightedGraph) -> InstanceDescriptor {
        InstanceDescriptor {
            kind: g.kind.name().to_owned(),
            n: g.n,
            seed: g.seed,
            directed: g.directed,
            edges: g.edge_count(),
        }
    }
}

/// Everything one run produces, in stable serialization order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub algorithm: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub instance: InstanceDescriptor,
    pub plan: ParameterPlan,
    pub grover_constant: f64,
    pub delta: f64,
    pub repetitions: u32,
    pub mode: String,
    pub kernel: String,
    pub totals: Totals,
    /// The fit counter: simulated quantum queries plus analytic charges.
    pub charged_total: u64,
    /// `"match"` or `"mismatch"` when the oracle ran, absent above the cap.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
    pub ledger: CostLedger,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triangle: Option<Triangle>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Matrix>,
}

impl ExperimentRecord {
    /// Stable pretty JSON; identical runs serialize identically.
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<ExperimentRecord> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Dense square matrix of uniform integers in `[1, 2^16]`, derived from
/// `seed` on a stream disjoint from the instance generators.
pub fn dense_integer_operand(n: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(OPERAND_STREAM);
    Matrix::from_fn(n, n, |_, _| {
        Weight::finite(rng.gen_range(1..=MAX_INTEGER_WEIGHT) as f64)
    })
}

/// Largest per-vertex count of distinct outgoing weights, at least 1.
fn derived_palette_bound(g: &WeightedGraph) -> usize {
    let mut bound = 1;
    for u in 0..g.n {
        let mut row: Vec<f64> = (0..g.n)
            .filter(|&v| v != u && g.weight(u, v).is_finite())
            .map(|v| g.weight(u, v).raw())
            .collect();
        row.sort_by(|a, b| a.partial_cmp(b).expect("finite weights"));
        row.dedup();
        bound = bound.max(row.len());
    }
    bound
}

/// Largest finite edge weight, at least 1.
fn derived_weight_bound(g: &WeightedGraph) -> f64 {
    let mut bound = 1.0f64;
    for u in 0..g.n {
        for v in 0..g.n {
            let w = g.weight(u, v);
            if u != v && w.is_finite() {
                bound = bound.max(w.raw());
            }
        }
    }
    bound
}

fn apply_overrides(plan: &mut ParameterPlan, opts: &RunOptions) {
    let slots: [(&str, Option<usize>, &mut Option<usize>); 4] = [
        ("r", opts.override_r, &mut plan.r),
        ("d", opts.override_d, &mut plan.d),
        ("s", opts.override_s, &mut plan.s),
        ("l", opts.override_ell, &mut plan.ell),
    ];
    for (name, value, slot) in slots {
        if let Some(v) = value {
            if slot.is_some() {
                *slot = Some(v);
                plan.warnings.push(format!("{name} overridden to {v}"));
            }
        }
    }
}

/// Runs `task` on `g` per `opts`: parameter selection (plus overrides), the
/// algorithm itself against a fresh ledger, and an oracle check when
/// `g.n <= opts.oracle_cap`.
pub fn run_experiment(
    task: Task,
    g: &WeightedGraph,
    opts: &RunOptions,
) -> Result<ExperimentRecord> {
    let (l, c) = (derived_palette_bound(g), derived_weight_bound(g));
    let mut plan = select_parameters(task, g.n, opts.kappa, l, c, opts.omega_model)?;
    apply_overrides(&mut plan, opts);

    let cfg = GroverConfig::new(g.seed)
        .with_constant(opts.grover_constant)
        .with_delta(opts.delta)
        .with_repetitions(opts.repetitions);
    let mut ledger = CostLedger::new();
    let kernel = opts.kernel;
    let started = Instant::now();

    let check = g.n <= opts.oracle_cap;
    let mut variant = None;
    let mut triangle = None;
    let mut result = None;
    let verdict: Option<bool> = match task {
        Task::NodeWeightedApsp => {
            variant = Some(opts.variant.name().to_owned());
            let table = apsp_node_weighted(g, opts.variant, &plan, kernel, &mut ledger, &cfg)?;
            let verdict = check.then(|| table == oracle::brute_apsp(g));
            result = Some(table);
            verdict
        }
        Task::GeometricApsp => {
            let table = apsp_geometric(g, &plan, kernel, &mut ledger, &cfg)?;
            let verdict = check.then(|| table == oracle::brute_apsp(g));
            result = Some(table);
            verdict
        }
        Task::BoundedApsp => {
            let table = apsp_geometric_bounded(g, &plan, kernel, &mut ledger, &cfg)?;
            let verdict = check.then(|| table == oracle::brute_apsp(g));
            result = Some(table);
            verdict
        }
        Task::SmallLApsp => {
            let table = apsp_small_l(g, &plan, kernel, &mut ledger, &cfg)?;
            let verdict = check.then(|| table == oracle::brute_apsp(g));
            result = Some(table);
            verdict
        }
        Task::Apnp => {
            let out = apnp(g, &plan, opts.mode, &mut ledger, &cfg)?;
            let verdict = check.then(|| out.table == oracle::brute_apnp(g));
            result = Some(out.table);
            verdict
        }
        Task::MinTriangle => {
            let found = min_triangle_quantum(g, &mut ledger, &cfg)?;
            let verdict = check.then(|| Ok::<_, Error>(found == oracle::brute_min_triangle(g)?));
            triangle = found;
            verdict.transpose()?
        }
        Task::StarProduct => {
            let geo = g.geometry.as_ref().ok_or_else(|| {
                Error::UnsupportedInstance("star product needs instance geometry".into())
            })?;
            let r = plan.r.expect("star plans derive r");
            let b = dense_integer_operand(g.n, g.seed);
            let mask = g.adjacency();
            let prod = geometric_star_product(
                geo,
                &mask,
                &b,
                r,
                strategy_for(geo),
                kernel,
                &mut ledger,
                &cfg,
            )?;
            ledger.snapshot("product");
            let verdict = check
                .then(|| Ok::<_, Error>(prod == oracle::brute_distance_product(&g.weights, &b)?));
            result = Some(prod);
            verdict.transpose()?
        }
        Task::BucketedProduct => {
            let d = plan.d.expect("bucketed plans derive d");
            let b = dense_integer_operand(g.n, g.seed);
            let mask = g.adjacency();
            let prod = bucketed_bool_min_product(&mask, &b, d, kernel, &mut ledger, &cfg)?;
            ledger.snapshot("product");
            let verdict =
                check.then(|| Ok::<_, Error>(prod == oracle::brute_bool_min_product(&mask, &b)?));
            result = Some(prod);
            verdict.transpose()?
        }
    };

    let wall_time_ms = opts
        .timings
        .then(|| started.elapsed().as_millis().min(u64::MAX as u128) as u64);
    let totals = ledger.totals();
    Ok(ExperimentRecord {
        algorithm: task.name().to_owned(),
        variant,
        instance: InstanceDescriptor::of(g),
        plan,
        grover_constant: opts.grover_constant,
        delta: opts.delta,
        repetitions: opts.repetitions,
        mode: mode_name(opts.mode).to_owned(),
        kernel: kernel_name(opts.kernel).to_owned(),
        totals,
        charged_total: totals.charged_total(),
        verdict: verdict.map(|ok| if ok { "match" } else { "mismatch" }.to_owned()),
        wall_time_ms,
        ledger,
        triangle,
        result: opts.emit_table.then_some(()).and(result),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{generate_instance, GenOptions};
    use crate::graph::InstanceKind;

    fn instance(kind: InstanceKind, n: usize, seed: u64) -> WeightedGraph {
        generate_instance(kind, n, seed, &GenOptions::default()).unwrap()
    }

    #[test]
    fn every_task_yields_a_matching_verdict_on_its_kind() {
        let cases = [
            (Task::NodeWeightedApsp, InstanceKind::NodeWeighted),
            (Task::GeometricApsp, InstanceKind::NodeWeighted),
            (Task::BoundedApsp, InstanceKind::BoundedWeight),
            (Task::SmallLApsp, InstanceKind::SmallL),
            (Task::Apnp, InstanceKind::Apnp),
            (Task::MinTriangle, InstanceKind::General),
            (Task::StarProduct, InstanceKind::NodeWeighted),
            (Task::BucketedProduct, InstanceKind::General),
        ];
        for (task, kind) in cases {
            let g = instance(kind, 16, 3);
            let record = run_experiment(task, &g, &RunOptions::default()).unwrap();
            assert_eq!(
                record.verdict.as_deref(),
                Some("match"),
                "{} on {}",
                task.name(),
                kind.name()
            );
            assert_eq!(record.charged_total, record.totals.charged_total());
        }
    }

    #[test]
    fn geometric_handles_the_planar_kind_at_kappa_three() {
        let g = instance(InstanceKind::EuclideanPlanar, 16, 1);
        let opts = RunOptions {
            kappa: 3,
            ..RunOptions::default()
        };
        let record = run_experiment(Task::GeometricApsp, &g, &opts).unwrap();
        assert_eq!(record.verdict.as_deref(), Some("match"));
        assert_eq!(record.plan.kappa, 3);
    }

    #[test]
    fn records_are_byte_deterministic() {
        let g = instance(InstanceKind::NodeWeighted, 12, 9);
        let opts = RunOptions::default();
        let a = run_experiment(Task::NodeWeightedApsp, &g, &opts).unwrap();
        let b = run_experiment(Task::NodeWeightedApsp, &g, &opts).unwrap();
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    }

    #[test]
    fn timings_are_opt_in_and_absent_from_stable_output() {
        let g = instance(InstanceKind::Apnp, 10, 2);
        let plain = run_experiment(Task::Apnp, &g, &RunOptions::default()).unwrap();
        assert!(plain.wall_time_ms.is_none());
        assert!(!plain.to_json().unwrap().contains("wall_time_ms"));
        let timed = run_experiment(
            Task::Apnp,
            &g,
            &RunOptions {
                timings: true,
                ..RunOptions::default()
            },
        )
        .unwrap();
        assert!(timed.wall_time_ms.is_some());
    }

    #[test]
    fn oracle_cap_suppresses_the_verdict() {
        let g = instance(InstanceKind::NodeWeighted, 12, 4);
        let opts = RunOptions {
            oracle_cap: 8,
            ..RunOptions::default()
        };
        let record = run_experiment(Task::NodeWeightedApsp, &g, &opts).unwrap();
        assert!(record.verdict.is_none());
    }

    #[test]
    fn overrides_replace_derived_parameters_with_a_warning() {
        let g = instance(InstanceKind::NodeWeighted, 16, 5);
        let opts = RunOptions {
            override_r: Some(1),
            ..RunOptions::default()
        };
        let record = run_experiment(Task::StarProduct, &g, &opts).unwrap();
        assert_eq!(record.plan.r, Some(1));
        assert!(record
            .plan
            .warnings
            .iter()
            .any(|w| w.contains("overridden")));
        assert_eq!(record.verdict.as_deref(), Some("match"));
    }

    #[test]
    fn incompatible_pairs_error_instead_of_guessing() {
        let g = instance(InstanceKind::General, 12, 0);
        assert!(run_experiment(Task::GeometricApsp, &g, &RunOptions::default()).is_err());
        let directed = instance(InstanceKind::Apnp, 12, 0);
        assert!(run_experiment(Task::MinTriangle, &directed, &RunOptions::default()).is_err());
    }

    #[test]
    fn records_round_trip_through_json() {
        let g = instance(InstanceKind::SmallL, 10, 7);
        let record = run_experiment(Task::SmallLApsp, &g, &RunOptions::default()).unwrap();
        let text = record.to_json().unwrap();
        let back = ExperimentRecord::from_json(&text).unwrap();
        assert_eq!(back.to_json().unwrap(), text);
        assert_eq!(back.charged_total, record.charged_total);
    }
}
