//! Simulated quantum search primitives.
//!
//! Grover search finds a marked item among `N` candidates in `O(sqrt(N))`
//! oracle queries; minimum finding over `N` values has the same bound. This
//! module simulates those primitives: every call scans its whole domain
//! classically and computes the true answer, but charges the ledger what the
//! quantum routine would have spent, `ceil(c * sqrt(N))` queries per
//! repetition (`c` is [`GroverConfig::grover_constant`], default 1; a domain
//! of 1000 costs 32 queries).
//!
//! Failure injection makes the bounded-error nature of the primitives
//! observable. With failure probability `delta > 0`, each repetition of a
//! call independently fails with probability `delta`: a failed minimum search
//! returns a uniformly random candidate that does not attain the minimum (if
//! every candidate does, the call cannot go wrong and returns correctly), and
//! a failed existence search reports a miss. Running `repetitions = k > 1`
//! charges `k` times and keeps the best repetition, driving the effective
//! failure rate to `delta^k`.
//!
//! Determinism: outcomes depend only on the configuration seed and the
//! position of the call in the run. Each call takes the next value of an
//! internal counter and uses it as the stream index of a counter-mode RNG, so
//! re-running a pipeline with the same seed reproduces every injected failure
//! exactly.
//!
//! Tie-breaking is deterministic throughout: the smallest index attaining the
//! optimum wins.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ledger::CostLedger;
use crate::weight::Weight;

/// Tunables for the simulated search primitives.
#[derive(Debug)]
pub struct GroverConfig {
    /// Constant `c` in the per-call charge `ceil(c * sqrt(N))`.
    pub grover_constant: f64,
    /// Per-repetition failure probability, in `[0, 1)`.
    pub delta: f64,
    /// Independent repetitions per call; each is charged, the best wins.
    pub repetitions: u32,
    /// Seed for failure injection.
    pub seed: u64,
    calls: AtomicU64,
}

impl GroverConfig {
    pub fn new(seed: u64) -> GroverConfig {
        GroverConfig {
            grover_constant: 1.0,
            delta: 0.0,
            repetitions: 1,
            seed,
            calls: AtomicU64::new(0),
        }
    }

    pub fn with_constant(mut self, c: f64) -> GroverConfig {
        assert!(c > 0.0 && c.is_finite(), "grover constant must be positive");
        self.grover_constant = c;
        self
    }

    pub fn with_delta(mut self, delta: f64) -> GroverConfig {
        assert!((0.0..1.0).contains(&delta), "delta must lie in [0, 1)");
        self.delta = delta;
        self
    }

    pub fn with_repetitions(mut self, repetitions: u32) -> GroverConfig {
        assert!(repetitions >= 1, "at least one repetition is required");
        self.repetitions = repetitions;
        self
    }

    /// Number of simulated calls issued so far (repetitions count once).
    pub fn calls_issued(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    /// Reserves the next call id. Ids advance on every simulated call, so a
    /// call's failure stream depends only on the seed and its position.
    fn next_call_id(&self) -> u64 {
        self.calls.fetch_add(1, Ordering::Relaxed)
    }

    /// Failure RNG for the call with this id, or `None` when `delta == 0`
    /// (exact mode draws nothing, so the RNG setup is skipped).
    fn failure_rng(&self, call_id: u64) -> Option<ChaCha8Rng> {
        if self.delta > 0.0 {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
            rng.set_stream(call_id);
            Some(rng)
        } else {
            None
        }
    }
}

impl Default for GroverConfig {
    fn default() -> GroverConfig {
        GroverConfig::new(0)
    }
}

impl Clone for GroverConfig {
    fn clone(&self) -> GroverConfig {
        GroverConfig {
            grover_constant: self.grover_constant,
            delta: self.delta,
            repetitions: self.repetitions,
            seed: self.seed,
            calls: AtomicU64::new(self.calls.load(Ordering::Relaxed)),
        }
    }
}

/// Queries charged for one repetition over a domain of size `n`.
pub fn grover_charge(grover_constant: f64, n: u64) -> u64 {
    if n == 0 {
        0
    } else {
        (grover_constant * (n as f64).sqrt()).ceil() as u64
    }
}

/// Minimum finding: returns the smallest index attaining the minimum of
/// `value_at` over `0..n`, charging `repetitions * ceil(c * sqrt(n))`.
///
/// Errors with [`Error::EmptyDomain`] when `n == 0`.
pub fn qmin(
    n: usize,
    mut value_at: impl FnMut(usize) -> Weight,
    ledger: &mut CostLedger,
    cfg: &GroverConfig,
) -> Result<(usize, Weight)> {
    match qmin_filtered(n, |_| true, &mut value_at, ledger, cfg)? {
        Some(hit) => Ok(hit),
        None => unreachable!("unfiltered minimum over a non-empty domain always exists"),
    }
}

/// Existence search: returns the smallest index in `0..n` satisfying `pred`,
/// or `None`, charging `repetitions * ceil(c * sqrt(n))`. An injected failure
/// reports a miss; repetitions rescue the call if any repetition succeeds.
///
/// Errors with [`Error::EmptyDomain`] when `n == 0`.
pub fn qsearch(
    n: usize,
    mut pred: impl FnMut(usize) -> bool,
    ledger: &mut CostLedger,
    cfg: &GroverConfig,
) -> Result<Option<usize>> {
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    ledger.charge_quantum(cfg.repetitions as u64 * grover_charge(cfg.grover_constant, n as u64));
    let mut rng = cfg.failure_rng(cfg.next_call_id());
    let truth = (0..n).find(|&i| pred(i));
    let mut found = None;
    for _ in 0..cfg.repetitions {
        let failed = match rng.as_mut() {
            Some(r) => r.gen::<f64>() < cfg.delta,
            None => false,
        };
        if !failed {
            found = truth;
        }
    }
    Ok(found)
}

/// Filtered minimum finding: the minimum of `value_at` over the indices in
/// `0..n` satisfying `pred`, smallest index winning ties. Returns `None` if
/// no index satisfies `pred`; the charge `repetitions * ceil(c * sqrt(n))`
/// applies either way, since the search still inspects the domain.
///
/// An injected failure returns a uniformly random satisfying index that does
/// not attain the minimum; when no such index exists the call returns the
/// correct answer. With several repetitions the best (smallest value, then
/// smallest index) across repetitions wins.
///
/// Errors with [`Error::EmptyDomain`] when `n == 0`.
pub fn qmin_filtered(
    n: usize,
    mut pred: impl FnMut(usize) -> bool,
    mut value_at: impl FnMut(usize) -> Weight,
    ledger: &mut CostLedger,
    cfg: &GroverConfig,
) -> Result<Option<(usize, Weight)>> {
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    ledger.charge_quantum(cfg.repetitions as u64 * grover_charge(cfg.grover_constant, n as u64));
    let mut rng = cfg.failure_rng(cfg.next_call_id());

    let mut best: Option<(usize, Weight)> = None;
    let mut satisfying = 0usize;
    for i in 0..n {
        if !pred(i) {
            continue;
        }
        satisfying += 1;
        let v = value_at(i);
        match best {
            Some((_, bv)) if bv <= v => {}
            _ => best = Some((i, v)),
        }
    }
    let Some((best_idx, best_val)) = best else {
        return Ok(None);
    };
    // Failure injection needs the count of satisfying candidates that do not
    // attain the minimum; exact mode skips this second pass.
    let non_minimal = if rng.is_some() {
        let mut minimal = 0usize;
        let mut seen = 0usize;
        for i in 0..n {
            if seen == satisfying {
                break;
            }
            if pred(i) {
                seen += 1;
                if value_at(i) == best_val {
                    minimal += 1;
                }
            }
        }
        satisfying - minimal
    } else {
        0
    };

    let mut outcome: Option<(usize, Weight)> = None;
    for _ in 0..cfg.repetitions {
        let failed = match rng.as_mut() {
            Some(r) => r.gen::<f64>() < cfg.delta,
            None => false,
        };
        let this = if !failed || non_minimal == 0 {
            (best_idx, best_val)
        } else {
            // Pick the `target`-th satisfying non-minimal index.
            let target = rng
                .as_mut()
                .expect("failures imply delta > 0")
                .gen_range(0..non_minimal);
            let mut seen = 0usize;
            let mut pick = None;
            for i in 0..n {
                if pred(i) && value_at(i) != best_val {
                    if seen == target {
                        pick = Some((i, value_at(i)));
                        break;
                    }
                    seen += 1;
                }
            }
            pick.expect("non-minimal candidate counted above")
        };
        outcome = Some(match outcome {
            None => this,
            Some(prev) if this.1 < prev.1 || (this.1 == prev.1 && this.0 < prev.0) => this,
            Some(prev) => prev,
        });
    }
    Ok(outcome)
}
