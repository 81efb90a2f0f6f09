//! The acceptance suite: seven checks that gate the crate.
//!
//! 1. Oracle equivalence: every pipeline matches its brute-force oracle
//!    exactly across a seeded instance grid.
//! 2. Charge exactness: the search primitives and analytic black boxes bill
//!    their closed-form costs to the query, with zero tolerance.
//! 3. Slope fits: measured query counts over a geometric size grid regress
//!    to the predicted growth exponents within configured bands.
//! 4. Exponent reproduction: parameter selection reproduces the eight
//!    headline exponents to four decimals.
//! 5. Hitting guarantee: sampled hitting sets cover explicit path families
//!    at the configured rate, and repair always terminates verified.
//! 6. Threshold-pipeline ledger identity: the earliest-arrival pipeline's
//!    charge decomposes exactly into its closed-form product cost plus the
//!    per-call sweep costs recomputed from traces.
//! 7. Failure robustness: with failure injection at `delta = 0.2` and
//!    repetition-min, the node-weighted pipeline still matches its oracle
//!    on the configured fraction of instances.
//!
//! Targets, tolerance bands, and grid definitions live in
//! `config/acceptance.toml`, not in code. Each criterion returns a
//! [`CriterionReport`] with its measurements so a harness can print one
//! line per criterion.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::apsp::{apnp, NodeWeightedVariant};
use crate::error::{Error, Result};
use crate::experiment::{dense_integer_operand, run_experiment, RunOptions};
use crate::fitting::fit_power_law;
use crate::gen::{generate_instance, GenOptions};
use crate::graph::InstanceKind;
use crate::hitting::{hits_all, sample_hitting_set, verify_and_repair};
use crate::ledger::CostLedger;
use crate::matprod::{minle_product_with_witness, MinleMode};
use crate::params::{select_parameters, Task, EXPONENT_ANCHORS, OMEGA_MODEL_DEFAULT};
use crate::qmodel::{qmin, qsearch, GroverConfig};
use crate::sssp::quantum_dijkstra;
use crate::weight::Weight;

/// Path of the checked-in acceptance configuration for this source tree.
pub const DEFAULT_CONFIG_PATH: &str =
    concat!(env!("CARGO_MANIFEST_DIR"), "/../../config/acceptance.toml");

/// RNG stream for path families in the hitting criterion, disjoint from
/// instance generators and operand streams.
const PATH_FAMILY_STREAM: u64 = 9;

#[derive(Debug, Clone, Deserialize)]
pub struct OracleBlock {
    pub sizes: Vec<usize>,
    pub seeds_per_size: u64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ChargeBlock {
    pub search_cases: usize,
}

#[derive(Debug, Clone, Deserialize)]
pub struct SlopeBand {
    pub target: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct SlopeBlock {
    pub sizes: Vec<usize>,
    pub seed: u64,
    #[serde(rename = "bucketed-product")]
    pub bucketed_product: SlopeBand,
    #[serde(rename = "star-product")]
    pub star_product: SlopeBand,
    pub geometric: SlopeBand,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ExponentBlock {
    pub tolerance: f64,
    pub targets: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct HittingBlock {
    pub trials: u64,
    pub n: usize,
    pub s: usize,
    pub paths_per_trial: usize,
    pub min_all_hit_rate: f64,
    pub repair_s: usize,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ApnpBlock {
    pub sizes: Vec<usize>,
    pub seeds_per_size: u64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct RobustnessBlock {
    pub delta: f64,
    pub repetitions: u32,
    pub instances: u64,
    pub n: usize,
    pub min_matches: u64,
}

/// Deserialized `config/acceptance.toml`.
#[derive(Debug, Clone, Deserialize)]
pub struct AcceptanceConfig {
    pub oracles: OracleBlock,
    pub charges: ChargeBlock,
    pub slopes: SlopeBlock,
    pub exponents: ExponentBlock,
    pub hitting: HittingBlock,
    pub apnp: ApnpBlock,
    pub robustness: RobustnessBlock,
}

impl AcceptanceConfig {
    pub fn from_path(path: &Path) -> Result<AcceptanceConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("reading {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Loads the checked-in configuration of this source tree.
    pub fn load_default() -> Result<AcceptanceConfig> {
        AcceptanceConfig::from_path(Path::new(DEFAULT_CONFIG_PATH))
    }
}

/// Outcome of one criterion, with its measurements spelled out.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    /// 1-based criterion number.
    pub index: usize,
    pub id: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} ({}): {} - {}",
            self.index,
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.detail
        )
    }
}

/// The suites the `verify` command exposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Oracles,
    Charges,
    Exponents,
    Formulas,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Suite> {
        match s {
            "oracles" => Ok(Suite::Oracles),
            "charges" => Ok(Suite::Charges),
            "exponents" => Ok(Suite::Exponents),
            "formulas" => Ok(Suite::Formulas),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidParameter(format!(
                "unknown suite `{other}` (expected oracles, charges, exponents, formulas, or all)"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Oracles => "oracles",
            Suite::Charges => "charges",
            Suite::Exponents => "exponents",
            Suite::Formulas => "formulas",
            Suite::All => "all",
        }
    }

    /// Criterion numbers this suite runs, in order.
    pub fn criteria(self) -> &'static [usize] {
        match self {
            Suite::Oracles => &[1],
            Suite::Charges => &[2],
            Suite::Exponents => &[3],
            Suite::Formulas => &[4],
            Suite::All => &[1, 2, 3, 4, 5, 6, 7],
        }
    }
}

/// Runs one criterion by number (1 through 7).
pub fn run_criterion(index: usize, cfg: &AcceptanceConfig) -> Result<CriterionReport> {
    match index {
        1 => oracle_equivalence(cfg),
        2 => charge_exactness(cfg),
        3 => slope_fits(cfg),
        4 => exponent_reproduction(cfg),
        5 => hitting_guarantee(cfg),
        6 => apnp_ledger_identity(cfg),
        7 => failure_robustness(cfg),
        other => Err(Error::InvalidParameter(format!(
            "criterion {other} does not exist (expected 1 through 7)"
        ))),
    }
}

/// Runs every criterion of `suite`, in order.
pub fn run_suite(suite: Suite, cfg: &AcceptanceConfig) -> Result<Vec<CriterionReport>> {
    suite
        .criteria()
        .iter()
        .map(|&index| run_criterion(index, cfg))
        .collect()
}

fn instance_seed(n: usize, i: u64) -> u64 {
    n as u64 * 1009 + i
}

fn ceil_pow(n: usize, exponent: f64) -> u64 {
    (n as f64).powf(exponent).ceil() as u64
}

/// Criterion 1: every pipeline equals its brute-force oracle on the grid.
pub fn oracle_equivalence(cfg: &AcceptanceConfig) -> Result<CriterionReport> {
    let nw = |variant| RunOptions {
        variant,
        ..RunOptions::default()
    };
    let planar = RunOptions {
        kappa: 3,
        ..RunOptions::default()
    };
    let pipelines: [(&str, Task, InstanceKind, RunOptions); 8] = [
        (
            "node-weighted/grover-combine",
            Task::NodeWeightedApsp,
            InstanceKind::NodeWeighted,
            nw(NodeWeightedVariant::GroverCombine),
        ),
        (
            "node-weighted/product-combine",
            Task::NodeWeightedApsp,
            InstanceKind::NodeWeighted,
            nw(NodeWeightedVariant::ProductCombine),
        ),
        (
            "geometric",
            Task::GeometricApsp,
            InstanceKind::NodeWeighted,
            RunOptions::default(),
        ),
        (
            "geometric-planar",
            Task::GeometricApsp,
            InstanceKind::EuclideanPlanar,
            planar,
        ),
        (
            "bounded",
            Task::BoundedApsp,
            InstanceKind::BoundedWeight,
            RunOptions::default(),
        ),
        (
            "small-l",
            Task::SmallLApsp,
            InstanceKind::SmallL,
            RunOptions::default(),
        ),
        (
            "apnp",
            Task::Apnp,
            InstanceKind::Apnp,
            RunOptions::default(),
        ),
        (
            "min-triangle",
            Task::MinTriangle,
            InstanceKind::General,
            RunOptions::default(),
        ),
    ];

    let mut runs = 0u64;
    let mut failures: Vec<String> = Vec::new();
    for (label, task, kind, opts) in &pipelines {
        for &n in &cfg.oracles.sizes {
            for i in 0..cfg.oracles.seeds_per_size {
                let seed = instance_seed(n, i);
                let g = generate_instance(*kind, n, seed, &GenOptions::default())?;
                let record = run_experiment(*task, &g, opts)?;
                runs += 1;
                match record.verdict.as_deref() {
                    Some("match") => {}
                    other => failures.push(format!(
                        "{label} n={n} seed={seed}: {}",
                        other.unwrap_or("no verdict")
                    )),
                }
            }
        }
    }
    let passed = failures.is_empty();
    let detail = if passed {
        format!(
            "{runs} runs across {} pipelines, sizes {:?}, all match",
            pipelines.len(),
            cfg.oracles.sizes
        )
    } else {
        format!(
            "{} of {runs} runs diverged: {}",
            failures.len(),
            failures.join("; ")
        )
    };
    Ok(CriterionReport {
        index: 1,
        id: "oracle-equivalence",
        passed,
        detail,
    })
}

/// Criterion 2: search and black-box charges equal their closed forms.
pub fn charge_exactness(cfg: &AcceptanceConfig) -> Result<CriterionReport> {
    let mut failures: Vec<String> = Vec::new();
    let mut note = |cond: bool, msg: String| {
        if !cond && failures.len() < 8 {
            failures.push(msg);
        }
    };

    for n in 1..=cfg.charges.search_cases {
        let expected = ceil_pow(n, 0.5);
        let mut ledger = CostLedger::new();
        let grover = GroverConfig::new(n as u64);
        qmin(n, |i| Weight::finite((i % 97) as f64), &mut ledger, &grover)?;
        note(
            ledger.totals().quantum_queries == expected,
            format!(
                "qmin N={n}: {} != {expected}",
                ledger.totals().quantum_queries
            ),
        );
        let mut ledger = CostLedger::new();
        qsearch(n, |i| i + 1 == n, &mut ledger, &grover)?;
        note(
            ledger.totals().quantum_queries == expected,
            format!(
                "qsearch N={n}: {} != {expected}",
                ledger.totals().quantum_queries
            ),
        );
    }

    for c in [0.5, 1.5, 2.75] {
        for n in [1usize, 10, 100, 4096] {
            let expected = (c * (n as f64).sqrt()).ceil() as u64;
            let mut ledger = CostLedger::new();
            let grover = GroverConfig::new(0).with_constant(c);
            qmin(n, |i| Weight::finite(i as f64), &mut ledger, &grover)?;
            note(
                ledger.totals().quantum_queries == expected,
                format!(
                    "qmin c={c} N={n}: {} != {expected}",
                    ledger.totals().quantum_queries
                ),
            );
        }
    }
    for reps in [2u32, 5] {
        for n in [10usize, 1000] {
            let expected = reps as u64 * ceil_pow(n, 0.5);
            let mut ledger = CostLedger::new();
            let grover = GroverConfig::new(0).with_repetitions(reps);
            qmin(n, |i| Weight::finite(i as f64), &mut ledger, &grover)?;
            note(
                ledger.totals().quantum_queries == expected,
                format!(
                    "qmin reps={reps} N={n}: {} != {expected}",
                    ledger.totals().quantum_queries
                ),
            );
        }
    }

    let dijkstra_sizes = [2usize, 27, 49, 100, 1000];
    for n in dijkstra_sizes {
        let g = generate_instance(InstanceKind::NodeWeighted, n, 11, &GenOptions::default())?;
        let mut ledger = CostLedger::new();
        quantum_dijkstra(&g, 0, &mut ledger)?;
        let totals = ledger.totals();
        let expected = ceil_pow(n, 1.5);
        note(
            totals.analytic_total == expected && totals.quantum_queries == 0,
            format!("dijkstra n={n}: {} != {expected}", totals.analytic_total),
        );
    }

    let triangle_sizes = [3usize, 10, 27, 49];
    for n in triangle_sizes {
        let g = generate_instance(InstanceKind::General, n, 5, &GenOptions::default())?;
        let mut ledger = CostLedger::new();
        crate::apsp::min_triangle_quantum(&g, &mut ledger, &GroverConfig::new(g.seed))?;
        let expected = ceil_pow(n, 1.5);
        note(
            ledger.totals().quantum_queries == expected,
            format!(
                "triangle n={n}: {} != {expected}",
                ledger.totals().quantum_queries
            ),
        );
    }

    let minle_sizes = [1usize, 2, 10, 31, 64];
    for n in minle_sizes {
        let x = dense_integer_operand(n, 3);
        let y = dense_integer_operand(n, 4);
        let mut ledger = CostLedger::new();
        minle_product_with_witness(
            &x,
            &y,
            MinleMode::Analytic,
            &mut ledger,
            &GroverConfig::new(0),
        )?;
        let totals = ledger.totals();
        let expected = ceil_pow(n, 2.473);
        note(
            totals.analytic_total == expected && totals.quantum_queries == 0,
            format!("threshold n={n}: {} != {expected}", totals.analytic_total),
        );
    }

    let passed = failures.is_empty();
    let detail = if passed {
        format!(
            "search domains 1..={}, {} black-box sizes, {} triangle sizes, {} threshold sizes: all charges exact",
            cfg.charges.search_cases,
            dijkstra_sizes.len(),
            triangle_sizes.len(),
            minle_sizes.len()
        )
    } else {
        failures.join("; ")
    };
    Ok(CriterionReport {
        index: 2,
        id: "charge-exactness",
        passed,
        detail,
    })
}

/// Criterion 3: measured query slopes land in the configured bands.
pub fn slope_fits(cfg: &AcceptanceConfig) -> Result<CriterionReport> {
    let specs: [(&str, Task, &SlopeBand); 3] = [
        (
            "bucketed-product",
            Task::BucketedProduct,
            &cfg.slopes.bucketed_product,
        ),
        ("star-product", Task::StarProduct, &cfg.slopes.star_product),
        ("geometric", Task::GeometricApsp, &cfg.slopes.geometric),
    ];
    let mut passed = true;
    let mut parts: Vec<String> = Vec::new();
    for (label, task, band) in specs {
        let mut samples: Vec<(u64, u64)> = Vec::new();
        for &n in &cfg.slopes.sizes {
            let g = generate_instance(
                InstanceKind::NodeWeighted,
                n,
                cfg.slopes.seed,
                &GenOptions::default(),
            )?;
            let record = run_experiment(task, &g, &RunOptions::default())?;
            if let Some(v) = record.verdict.as_deref() {
                if v != "match" {
                    passed = false;
                    parts.push(format!("{label} n={n}: oracle mismatch"));
                }
            }
            samples.push((n as u64, record.totals.quantum_queries));
        }
        let fit = fit_power_law(&samples)?;
        let ok = (fit.slope - band.target).abs() <= band.tolerance;
        passed &= ok;
        parts.push(format!(
            "{label} slope {:.4} (target {} +- {}, ci [{:.4}, {:.4}])",
            fit.slope, band.target, band.tolerance, fit.ci95.0, fit.ci95.1
        ));
    }
    Ok(CriterionReport {
        index: 3,
        id: "slope-fits",
        passed,
        detail: parts.join("; "),
    })
}

/// Criterion 4: the eight headline exponents reproduce to four decimals.
pub fn exponent_reproduction(cfg: &AcceptanceConfig) -> Result<CriterionReport> {
    let mut failures: Vec<String> = Vec::new();
    for anchor in EXPONENT_ANCHORS {
        let Some(&target) = cfg.exponents.targets.get(anchor.id) else {
            failures.push(format!("{}: no target configured", anchor.id));
            continue;
        };
        let plan = select_parameters(anchor.task, 256, anchor.kappa, 2, 4.0, OMEGA_MODEL_DEFAULT)?;
        if (plan.predicted_exponent - target).abs() >= cfg.exponents.tolerance {
            failures.push(format!(
                "{}: predicted {:.5} vs {target}",
                anchor.id, plan.predicted_exponent
            ));
        }
    }
    let passed = failures.is_empty();
    let detail = if passed {
        format!(
            "{} exponents within {:.0e}",
            EXPONENT_ANCHORS.len(),
            cfg.exponents.tolerance
        )
    } else {
        failures.join("; ")
    };
    Ok(CriterionReport {
        index: 4,
        id: "exponent-reproduction",
        passed,
        detail,
    })
}

fn random_path_family(
    rng: &mut ChaCha8Rng,
    n: usize,
    nodes_per_path: usize,
    paths: usize,
) -> Vec<Vec<usize>> {
    (0..paths)
        .map(|_| rand::seq::index::sample(rng, n, nodes_per_path).into_vec())
        .collect()
}

/// Criterion 5: sampled hitting sets cover explicit path families, and
/// repair always terminates verified.
pub fn hitting_guarantee(cfg: &AcceptanceConfig) -> Result<CriterionReport> {
    let block = &cfg.hitting;
    let mut all_hit = 0u64;
    let mut repaired_ok = 0u64;
    for trial in 0..block.trials {
        let mut rng = ChaCha8Rng::seed_from_u64(trial);
        rng.set_stream(PATH_FAMILY_STREAM);
        let paths = random_path_family(&mut rng, block.n, block.s, block.paths_per_trial);
        let hs = sample_hitting_set(block.n, block.s, trial)?;
        if hits_all(&hs, &paths) {
            all_hit += 1;
        }
        let repaired = verify_and_repair(block.n, block.s, trial, &paths)?;
        if hits_all(&repaired, &paths) {
            repaired_ok += 1;
        }
    }

    // Adversarial repair battery: a window short enough that the sample is
    // a strict subset, with one path built entirely outside the first
    // sample so verification must resample or repair.
    let mut adversarial_ok = 0u64;
    let adversarial_trials = block.trials.min(20);
    for trial in 0..adversarial_trials {
        let first = sample_hitting_set(block.n, block.repair_s, trial)?;
        let outside: Vec<usize> = (0..block.n)
            .filter(|v| first.vertices.binary_search(v).is_err())
            .take(block.repair_s)
            .collect();
        if outside.len() < block.repair_s {
            return Err(Error::InvalidParameter(
                "repair battery needs the sample to be a strict subset".into(),
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(trial);
        rng.set_stream(PATH_FAMILY_STREAM);
        let mut paths =
            random_path_family(&mut rng, block.n, block.repair_s, block.paths_per_trial);
        paths.push(outside);
        let repaired = verify_and_repair(block.n, block.repair_s, trial, &paths)?;
        if hits_all(&repaired, &paths) && repaired.attempts > 0 {
            adversarial_ok += 1;
        }
    }

    let rate = all_hit as f64 / block.trials as f64;
    let sample_size = sample_hitting_set(block.n, block.s, 0)?.len();
    let passed = rate >= block.min_all_hit_rate
        && repaired_ok == block.trials
        && adversarial_ok == adversarial_trials;
    let detail = format!(
        "all-hit {all_hit}/{} (rate {rate:.3} >= {}; sample size {sample_size} of n={}), \
         repair verified {repaired_ok}/{}, adversarial repair {adversarial_ok}/{adversarial_trials}",
        block.trials, block.min_all_hit_rate, block.n, block.trials
    );
    Ok(CriterionReport {
        index: 5,
        id: "hitting-guarantee",
        passed,
        detail,
    })
}

/// Criterion 6: the earliest-arrival pipeline's ledger decomposes exactly.
pub fn apnp_ledger_identity(cfg: &AcceptanceConfig) -> Result<CriterionReport> {
    let mut runs = 0u64;
    let mut failures: Vec<String> = Vec::new();
    for &n in &cfg.apnp.sizes {
        for i in 0..cfg.apnp.seeds_per_size {
            let seed = instance_seed(n, i);
            let g = generate_instance(InstanceKind::Apnp, n, seed, &GenOptions::default())?;
            let plan = select_parameters(Task::Apnp, n, 1, 1, 1.0, OMEGA_MODEL_DEFAULT)?;
            let mut ledger = CostLedger::new();
            let grover = GroverConfig::new(g.seed);
            let out = apnp(&g, &plan, MinleMode::Analytic, &mut ledger, &grover)?;
            runs += 1;

            if out.table != crate::oracle::brute_apnp(&g) {
                failures.push(format!("n={n} seed={seed}: table diverges"));
                continue;
            }
            let s = plan.s.expect("earliest-arrival plans derive s") as u64;
            let sweep_cost: u64 = out
                .passes
                .iter()
                .flat_map(|pass| pass.calls.iter())
                .map(|&(_, settled)| ceil_pow(settled, 1.5))
                .sum();
            let expected = s * ceil_pow(n, 2.473) + sweep_cost;
            let totals = ledger.totals();
            if totals.charged_total() != expected || totals.quantum_queries != 0 {
                failures.push(format!(
                    "n={n} seed={seed}: charged {} vs {} decomposed",
                    totals.charged_total(),
                    expected
                ));
            }
        }
    }
    let passed = failures.is_empty();
    let detail = if passed {
        format!(
            "{runs} runs, sizes {:?}: tables match and charges decompose exactly",
            cfg.apnp.sizes
        )
    } else {
        failures.join("; ")
    };
    Ok(CriterionReport {
        index: 6,
        id: "apnp-ledger-identity",
        passed,
        detail,
    })
}

/// Criterion 7: failure injection with repetition-min stays above the
/// configured oracle-match rate.
pub fn failure_robustness(cfg: &AcceptanceConfig) -> Result<CriterionReport> {
    let block = &cfg.robustness;
    let opts = RunOptions {
        delta: block.delta,
        repetitions: block.repetitions,
        ..RunOptions::default()
    };
    let mut matches = 0u64;
    for i in 0..block.instances {
        let g = generate_instance(
            InstanceKind::NodeWeighted,
            block.n,
            instance_seed(block.n, i),
            &GenOptions::default(),
        )?;
        let record = run_experiment(Task::NodeWeightedApsp, &g, &opts)?;
        if record.verdict.as_deref() == Some("match") {
            matches += 1;
        }
    }
    let passed = matches >= block.min_matches;
    let detail = format!(
        "delta {} with {}-fold repetition: {matches}/{} matched (threshold {})",
        block.delta, block.repetitions, block.instances, block.min_matches
    );
    Ok(CriterionReport {
        index: 7,
        id: "failure-robustness",
        passed,
        detail,
    })
}
