//! Command-line driver: generate instances, run algorithms against their
//! oracles, fit growth laws over archived records, and run the acceptance
//! suite.
//!
//! Outputs are byte-deterministic for identical command lines: records and
//! instances serialize with stable field order, ledgers export stable CSV,
//! and wall-clock timings are opt-in. Exit codes: 0 on success, 1 when an
//! acceptance check or oracle verdict fails, 2 on usage errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use qapsp::acceptance::{run_suite, AcceptanceConfig, Suite, DEFAULT_CONFIG_PATH};
use qapsp::apsp::NodeWeightedVariant;
use qapsp::experiment::{
    parse_kernel, parse_mode, run_experiment, ExperimentRecord, RunOptions, DEFAULT_ORACLE_CAP,
};
use qapsp::fitting::{fit_power_law, FitResult};
use qapsp::gen::{generate_instance, GenOptions};
use qapsp::graph::{InstanceKind, WeightedGraph};
use qapsp::matprod::MinleMode;
use qapsp::matrix::MatmulKernel;
use qapsp::params::Task;

#[derive(Parser)]
#[command(
    name = "qapsp",
    version,
    about = "Shortest-path algorithm laboratory under a simulated quantum query-cost model"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a benchmark instance and write it as JSON.
    Gen(GenArgs),
    /// Run one algorithm on an instance; write a record and a ledger CSV.
    Run(Box<RunArgs>),
    /// Fit a power law to a counter across archived records.
    Fit(FitArgs),
    /// Run an acceptance suite and print one line per criterion.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Instance kind: node_weighted, euclidean_planar, small_l,
    /// bounded_weight, general, or apnp.
    #[arg(long, value_parser = InstanceKind::parse)]
    kind: InstanceKind,
    /// Vertex count.
    #[arg(long)]
    n: usize,
    #[arg(long, env = "QAPSP_SEED", default_value_t = 0)]
    seed: u64,
    /// Probability that a candidate edge is present.
    #[arg(long, default_value_t = GenOptions::default().density)]
    density: f64,
    /// Distinct out-weights per vertex (small_l instances).
    #[arg(long, default_value_t = GenOptions::default().distinct_weights)]
    distinct_weights: usize,
    /// Largest node weight (bounded_weight instances).
    #[arg(long, default_value_t = GenOptions::default().weight_bound)]
    weight_bound: f64,
    /// Output path for the instance JSON.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ModelArgs {
    /// Matmul exponent used by parameter selection.
    #[arg(long, env = "QAPSP_OMEGA_MODEL", default_value_t = qapsp::params::OMEGA_MODEL_DEFAULT)]
    omega_model: f64,
    /// Partition quality constant.
    #[arg(long, env = "QAPSP_KAPPA", default_value_t = 1)]
    kappa: u32,
    /// Constant factor on every search charge.
    #[arg(long, env = "QAPSP_GROVER_CONSTANT", default_value_t = 1.0)]
    grover_constant: f64,
    /// Per-search failure probability, in [0, 1).
    #[arg(long, env = "QAPSP_DELTA", default_value_t = 0.0)]
    delta: f64,
    /// Independent repetitions per search; the best result wins.
    #[arg(long, env = "QAPSP_REPETITIONS", default_value_t = 1)]
    repetitions: u32,
    /// Billing mode of the threshold product: analytic or trivial.
    #[arg(long, env = "QAPSP_MODE", value_parser = parse_mode, default_value = "analytic")]
    mode: MinleMode,
    /// Matmul kernel: naive-cubic or strassen.
    #[arg(long, env = "QAPSP_KERNEL", value_parser = parse_kernel, default_value = "naive-cubic")]
    kernel: MatmulKernel,
    /// Largest instance checked against its brute-force oracle.
    #[arg(long, env = "QAPSP_ORACLE_CAP", default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
}

#[derive(Args)]
struct RunArgs {
    /// Algorithm: node-weighted, geometric, bounded, small-l, apnp,
    /// min-triangle, star-product, or bucketed-product.
    #[arg(long, value_parser = Task::parse)]
    algorithm: Task,
    /// Instance JSON produced by `gen`.
    #[arg(long)]
    instance: PathBuf,
    /// Output path for the record JSON.
    #[arg(long)]
    out: PathBuf,
    /// Output path for the ledger CSV; defaults to the record path with a
    /// .csv extension.
    #[arg(long)]
    ledger: Option<PathBuf>,
    /// Combine stage of the node-weighted pipeline: grover-combine or
    /// product-combine.
    #[arg(long, value_parser = NodeWeightedVariant::parse, default_value = "grover-combine")]
    variant: NodeWeightedVariant,
    /// Re-seed the run's search randomness, overriding the instance seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Record wall-clock time (makes output non-deterministic).
    #[arg(long)]
    timings: bool,
    /// Omit the result table from the record.
    #[arg(long)]
    no_table: bool,
    /// Force the cell count of star products.
    #[arg(long)]
    override_r: Option<usize>,
    /// Force the bucket width of bucketed products.
    #[arg(long)]
    override_d: Option<usize>,
    /// Force the short-stage count / hitting path length.
    #[arg(long)]
    override_s: Option<usize>,
    /// Force the power horizon.
    #[arg(long)]
    override_ell: Option<usize>,
    #[command(flatten)]
    model: ModelArgs,
}

#[derive(Args)]
struct FitArgs {
    /// Record JSON paths (pass a shell-expanded glob), at least four.
    #[arg(long, num_args = 1.., required = true)]
    records: Vec<PathBuf>,
    /// Counter to regress: charged, quantum, classical, or matmul.
    #[arg(long, default_value = "charged")]
    counter: String,
    /// Output path for the regression table CSV.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite: oracles, charges, exponents, formulas, or all.
    #[arg(long, value_parser = Suite::parse, default_value = "all")]
    suite: Suite,
    /// Acceptance configuration file.
    #[arg(long, env = "QAPSP_ACCEPTANCE_CONFIG", default_value = DEFAULT_CONFIG_PATH)]
    config: PathBuf,
}

/// Whether the command's checks all held; `Failed` maps to exit code 1.
enum Outcome {
    Clean,
    Failed,
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<Outcome> {
    match cli.cmd {
        Cmd::Gen(args) => cmd_gen(args),
        Cmd::Run(args) => cmd_run(*args),
        Cmd::Fit(args) => cmd_fit(args),
        Cmd::Verify(args) => cmd_verify(args),
    }
}

fn cmd_gen(args: GenArgs) -> Result<Outcome> {
    let opts = GenOptions {
        density: args.density,
        distinct_weights: args.distinct_weights,
        weight_bound: args.weight_bound,
    };
    let g = generate_instance(args.kind, args.n, args.seed, &opts)?;
    g.save(&args.out)
        .with_context(|| format!("writing {}", args.out.display()))?;
    println!(
        "wrote {} ({} n={} seed={} edges={})",
        args.out.display(),
        g.kind.name(),
        g.n,
        g.seed,
        g.edge_count()
    );
    Ok(Outcome::Clean)
}

fn cmd_run(args: RunArgs) -> Result<Outcome> {
    let mut g = WeightedGraph::load(&args.instance)
        .with_context(|| format!("loading {}", args.instance.display()))?;
    if let Some(seed) = args.seed {
        g.seed = seed;
    }
    let opts = RunOptions {
        omega_model: args.model.omega_model,
        kappa: args.model.kappa,
        grover_constant: args.model.grover_constant,
        delta: args.model.delta,
        repetitions: args.model.repetitions,
        mode: args.model.mode,
        kernel: args.model.kernel,
        variant: args.variant,
        oracle_cap: args.model.oracle_cap,
        timings: args.timings,
        emit_table: !args.no_table,
        override_r: args.override_r,
        override_d: args.override_d,
        override_s: args.override_s,
        override_ell: args.override_ell,
    };
    let record = run_experiment(args.algorithm, &g, &opts)?;

    let ledger_path = args
        .ledger
        .clone()
        .unwrap_or_else(|| args.out.with_extension("csv"));
    std::fs::write(&args.out, record.to_json()? + "\n")
        .with_context(|| format!("writing {}", args.out.display()))?;
    std::fs::write(&ledger_path, record.ledger.to_csv())
        .with_context(|| format!("writing {}", ledger_path.display()))?;

    for warning in &record.plan.warnings {
        eprintln!("warning: {warning}");
    }
    let verdict = record.verdict.as_deref().unwrap_or("unchecked");
    println!(
        "{} on {} n={} seed={}: verdict {verdict}; charged {} (quantum {}, analytic {}, classical {}, matmul {})",
        record.algorithm,
        record.instance.kind,
        record.instance.n,
        record.instance.seed,
        record.charged_total,
        record.totals.quantum_queries,
        record.totals.analytic_total,
        record.totals.classical_ops,
        record.totals.matmul_ops,
    );
    if record.verdict.as_deref() == Some("mismatch") {
        eprintln!("oracle mismatch; see {}", args.out.display());
        return Ok(Outcome::Failed);
    }
    Ok(Outcome::Clean)
}

fn counter_of(record: &ExperimentRecord, counter: &str) -> Result<u64> {
    Ok(match counter {
        "charged" => record.charged_total,
        "quantum" => record.totals.quantum_queries,
        "classical" => record.totals.classical_ops,
        "matmul" => record.totals.matmul_ops,
        other => {
            bail!("unknown counter `{other}` (expected charged, quantum, classical, or matmul)")
        }
    })
}

fn regression_csv(samples: &[(u64, u64)], fit: &FitResult) -> String {
    let mut csv = String::from("n,counter,ln_n,ln_counter,fitted_ln_counter,residual\n");
    for &(n, counter) in samples {
        let x = (n as f64).ln();
        let y = (counter as f64).ln();
        let fitted = fit.intercept + fit.slope * x;
        csv.push_str(&format!(
            "{n},{counter},{x:.6},{y:.6},{fitted:.6},{:.6}\n",
            y - fitted
        ));
    }
    csv
}

fn cmd_fit(args: FitArgs) -> Result<Outcome> {
    let mut records = Vec::new();
    for path in &args.records {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        records.push(
            ExperimentRecord::from_json(&text)
                .with_context(|| format!("parsing {}", path.display()))?,
        );
    }
    let head = &records[0];
    for r in &records[1..] {
        let same_policy = r.algorithm == head.algorithm
            && r.mode == head.mode
            && r.kernel == head.kernel
            && r.plan.kappa == head.plan.kappa
            && r.plan.omega_model == head.plan.omega_model
            && r.grover_constant == head.grover_constant
            && r.delta == head.delta;
        if !same_policy {
            bail!(
                "records mix algorithms or parameter policies: {} vs {}",
                head.algorithm,
                r.algorithm
            );
        }
    }

    let mut samples: Vec<(u64, u64)> = records
        .iter()
        .map(|r| Ok((r.instance.n as u64, counter_of(r, &args.counter)?)))
        .collect::<Result<_>>()?;
    samples.sort_unstable();
    let fit = fit_power_law(&samples)?;

    std::fs::write(&args.out, regression_csv(&samples, &fit))
        .with_context(|| format!("writing {}", args.out.display()))?;
    println!(
        "{} {} over {} records (n {}..{}): slope {:.4} (95% CI [{:.4}, {:.4}]), \
         intercept {:.4}, residual rms {:.4}",
        head.algorithm,
        args.counter,
        samples.len(),
        samples.first().map(|s| s.0).unwrap_or(0),
        samples.last().map(|s| s.0).unwrap_or(0),
        fit.slope,
        fit.ci95.0,
        fit.ci95.1,
        fit.intercept,
        fit.residual_rms,
    );
    Ok(Outcome::Clean)
}

fn cmd_verify(args: VerifyArgs) -> Result<Outcome> {
    let cfg = AcceptanceConfig::from_path(Path::new(&args.config))?;
    let reports = run_suite(args.suite, &cfg)?;
    let mut all = true;
    for report in &reports {
        println!("{report}");
        all &= report.passed;
    }
    if all {
        println!("suite {}: ok", args.suite.name());
        Ok(Outcome::Clean)
    } else {
        eprintln!("suite {}: failed", args.suite.name());
        Ok(Outcome::Failed)
    }
}
